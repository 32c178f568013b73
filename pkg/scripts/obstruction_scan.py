"""Scan the corner obstruction over the (t, r) grid.

Usage: python3 scripts/obstruction_scan.py [--p P] [--tmax T] [--span S]

For base rank d = 2 (with the d2-killed hypothesis) and d = 3, prints a
grid of verdicts: 'X' where the cardinality ledger rules out a free
action, '.' where it is inconclusive.  The d = 2 column where the flip
happens should track the least integer r > 5t/3.
"""

import argparse
import sys

sys.path.insert(0, "src")

from actionlab.spectral import free_action_obstruction


def scan(p, d, tmax, span, killed):
    print(f"d = {d}{' (d2 killed)' if killed else ''}, p = {p}")
    print("  t\\r " + "".join(f"{r:>4}" for r in range(1, tmax + span + 1)))
    for t in range(tmax + 1):
        cells = []
        for r in range(1, tmax + span + 1):
            if r <= t:
                cells.append("   -")
                continue
            v = free_action_obstruction(p, r, t, d, d2_killed=killed)
            cells.append("   X" if v.obstructed else "   .")
        flip = 5 * t // 3 + 1
        note = f"  flip at r = {flip}" if d == 2 and killed else ""
        print(f"{t:>4} " + "".join(cells) + note)
    print()


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--tmax", type=int, default=6)
    ap.add_argument("--span", type=int, default=6)
    args = ap.parse_args()

    scan(args.p, 2, args.tmax, args.span, killed=True)
    scan(args.p, 2, args.tmax, args.span, killed=False)
    scan(args.p, 3, args.tmax, args.span, killed=False)


if __name__ == "__main__":
    main()
