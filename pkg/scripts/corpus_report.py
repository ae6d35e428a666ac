"""Sweep the standard corpus and tabulate simpleness flags per base group.

Usage: python scripts/corpus_report.py [--max-order N] [--arities 3,4,5]
"""

import argparse
import sys
import time
from collections import Counter

from pglab.corpus import standard_corpus
from pglab.simplicity import simplicity_report


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-order", type=int, default=8)
    parser.add_argument("--arities", default="3,4,5")
    args = parser.parse_args(argv)
    arities = tuple(int(x) for x in args.arities.split(","))

    start = time.monotonic()
    corpus = standard_corpus(max_order=args.max_order, arities=arities)
    tallies: Counter = Counter()
    rows: dict = {}
    for p in corpus:
        rep = simplicity_report(p)
        key = (p.presentation.base.name, p.arity)
        row = rows.setdefault(key, Counter())
        row["structures"] += 1
        for flag in ("uas", "gts", "gts_star", "reduced"):
            if getattr(rep, flag):
                row[flag] += 1
                tallies[flag] += 1
    elapsed = time.monotonic() - start

    print(f"{'base':>10} {'n':>2} {'count':>6} {'UAS':>5} {'GTS':>5} {'GTS*':>5} {'red':>5}")
    for (base, arity), row in sorted(rows.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        print(
            f"{base:>10} {arity:>2} {row['structures']:>6} {row['uas']:>5} "
            f"{row['gts']:>5} {row['gts_star']:>5} {row['reduced']:>5}"
        )
    print(
        f"\n{len(corpus)} structures in {elapsed:.1f}s; totals: "
        + ", ".join(f"{k}={v}" for k, v in sorted(tallies.items()))
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
