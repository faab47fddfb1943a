"""Command-line front end.

Event files are UTF-8 text, one event per line, ``#`` starting a comment:

    I <u> <v>      insert an edge
    D <u> <v>      delete one copy of the edge (FIFO: the oldest open
                   occurrence with these endpoints is the one removed)
    Q2E <u> <v>    2-edge connectivity query        (also Q3E, QBC, QTC)

with u, v unsigned 64-bit integers, u != v.  Exit codes: 0 ok,
1 verification mismatch, 2 parse error, 3 semantic error.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from typing import Iterable, Sequence

from .oracle import naive_answer
from .static_query import MODES_BY_CODE
from .timeline import EngineConfig, EventError, RawEvent, RunStats, run

_MAX_VERTEX = 2**64 - 1


class ParseError(ValueError):
    def __init__(self, line_no: int, reason: str) -> None:
        super().__init__(f"parse error at line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


def parse_events(lines: Iterable[str]) -> list[RawEvent]:
    events: list[RawEvent] = []
    for line_no, line in enumerate(lines, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        parts = text.split()
        op = parts[0]
        if op in ("I", "D"):
            expected = 3
        elif op.startswith("Q") and op[1:] in MODES_BY_CODE:
            expected = 3
        else:
            raise ParseError(line_no, f"unknown operation {op!r}")
        if len(parts) != expected:
            raise ParseError(line_no, f"expected '{op} <u> <v>'")
        try:
            u, v = int(parts[1]), int(parts[2])
        except ValueError:
            raise ParseError(line_no, "vertices must be integers") from None
        if not (0 <= u <= _MAX_VERTEX and 0 <= v <= _MAX_VERTEX):
            raise ParseError(line_no, "vertices must fit in 64 unsigned bits")
        if u == v:
            raise ParseError(line_no, "endpoints must differ")
        if op in ("I", "D"):
            events.append((op, u, v))
        else:
            events.append(("Q", op[1:], u, v))
    return events


def format_event(ev: RawEvent) -> str:
    if ev[0] == "Q":
        return f"Q{ev[1]} {ev[2]} {ev[3]}"
    return f"{ev[0]} {ev[1]} {ev[2]}"


def generate_events(seed: int, t: int, n: int, modes: Sequence[str]) -> list[RawEvent]:
    """Deterministic pseudo-random timeline.

    Roughly a quarter of the events are queries over the configured mode
    mix; updates are biased toward insertion so the standing graph grows
    with the timeline, and deletes always name a live edge.
    """
    rng = random.Random(seed)
    alive: list[tuple[int, int]] = []
    events: list[RawEvent] = []
    for _ in range(t):
        roll = rng.random()
        if roll < 0.25:
            code = modes[rng.randrange(len(modes))]
            u, v = rng.sample(range(n), 2)
            events.append(("Q", code, u, v))
        elif alive and roll < 0.25 + 0.30:
            u, v = alive.pop(rng.randrange(len(alive)))
            events.append(("D", u, v))
        else:
            u, v = rng.sample(range(n), 2)
            alive.append((u, v))
            events.append(("I", u, v))
    return events


def _read_file(path: str) -> list[str]:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.readlines()


def cmd_answer(path: str) -> int:
    try:
        events = parse_events(_read_file(path))
        sheet = run(events)
    except ParseError as exc:
        print(exc, file=sys.stderr)
        return 2
    except EventError as exc:
        print(f"semantic error at {exc}", file=sys.stderr)
        return 3
    for idx in sorted(sheet):
        print("YES" if sheet[idx] else "NO")
    return 0


def cmd_verify(path: str) -> int:
    try:
        events = parse_events(_read_file(path))
        offline = run(events)
        naive = naive_answer(events)
    except ParseError as exc:
        print(exc, file=sys.stderr)
        return 2
    except EventError as exc:
        print(f"semantic error at {exc}", file=sys.stderr)
        return 3
    for idx in sorted(naive):
        a, b = offline.get(idx), naive[idx]
        if a != b:
            print(
                f"MISMATCH at event {idx}: "
                f"offline={'YES' if a else 'NO'} naive={'YES' if b else 'NO'}"
            )
            return 1
    print(f"OK {len(naive)} queries")
    return 0


def cmd_gen(seed: int, t: int, n: int, modes: list[str]) -> int:
    if t < 0 or n < 2:
        print("gen requires t >= 0 and n >= 2", file=sys.stderr)
        return 2
    for code in modes:
        if code not in MODES_BY_CODE:
            print(f"unknown mode {code!r}", file=sys.stderr)
            return 2
    print(f"# offcon gen seed={seed} t={t} n={n} modes={','.join(modes)}")
    for ev in generate_events(seed, t, n, modes):
        print(format_event(ev))
    return 0


def cmd_bench(mode: str, t_values: list[int], seed: int, n: int) -> int:
    if mode not in MODES_BY_CODE:
        print(f"unknown mode {mode!r}", file=sys.stderr)
        return 2
    print("t,mode,engine,millis,max_reduced_size")
    for t in t_values:
        events = generate_events(seed, t, n, [mode])
        stats = RunStats()
        start = time.perf_counter()
        run(events, EngineConfig(), stats)
        offline_ms = (time.perf_counter() - start) * 1000.0
        print(f"{t},{mode},offline,{offline_ms:.0f},{stats.max_reduced_size}")
        start = time.perf_counter()
        naive_answer(events)
        naive_ms = (time.perf_counter() - start) * 1000.0
        print(f"{t},{mode},naive,{naive_ms:.0f},0")
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="offcon",
        description=(
            "Answer 2-edge/3-edge/bi/tri-connectivity queries over an "
            "offline timeline of edge updates.  Deletions match the oldest "
            "open insertion with the same endpoints (FIFO)."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_answer = sub.add_parser("answer", help="print YES/NO per query in event order")
    p_answer.add_argument("file")

    p_verify = sub.add_parser("verify", help="cross-check against the naive engine")
    p_verify.add_argument("file")

    p_gen = sub.add_parser("gen", help="emit a deterministic random timeline")
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument("--t", type=int, required=True)
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument(
        "--modes",
        default="2E,3E,BC,TC",
        help="comma-separated query mode mix (default: all four)",
    )

    p_bench = sub.add_parser("bench", help="time both engines, CSV on stdout")
    p_bench.add_argument("--mode", required=True)
    p_bench.add_argument("--t", required=True, help="comma-separated event counts")
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--n", type=int, default=1024)

    args = parser.parse_args(argv)
    if args.command == "answer":
        return cmd_answer(args.file)
    if args.command == "verify":
        return cmd_verify(args.file)
    if args.command == "gen":
        return cmd_gen(args.seed, args.t, args.n, args.modes.split(","))
    if args.command == "bench":
        t_values = [int(x) for x in args.t.split(",")]
        return cmd_bench(args.mode, t_values, args.seed, args.n)
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
