#!/usr/bin/env python3
"""Recompute the rank ratio catalogue and print the comparison table."""

import argparse

from rspacelab import atlas


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--full", action="store_true",
                    help="sweep extra parameter choices per row")
    args = ap.parse_args()

    entries = atlas.list_entries() if args.full else atlas.default_entries()
    records = atlas.verify_table(entries)

    w = max(len(r["space"]) for r in records) + 2
    print(f"{'space':<{w}}{'row':<5}{'pi1':<12}{'ratio':>6}  status")
    bad = 0
    for r in records:
        if r["skipped"]:
            print(f"{r['space']:<{w}}{r['row']:<5}{r['pi1']:<12}{'-':>6}  "
                  "skip (no matrix model)")
            continue
        mark = "ok" if r["ok"] else "MISMATCH"
        bad += not r["ok"]
        print(f"{r['space']:<{w}}{r['row']:<5}{r['pi1']:<12}"
              f"{r['computed_ratio']:>6}  {mark}")
    live = sum(not r["skipped"] for r in records)
    print(f"\n{live} instances checked, {bad} mismatches")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
