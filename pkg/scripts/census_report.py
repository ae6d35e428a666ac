"""Count isomorphism classes of n-ary groups over small catalog orders.

Usage: python scripts/census_report.py [--orders 1,2,3,4] [--arities 3,4]
"""

import argparse
import sys

from pglab.simplicity import census


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--orders", default="1,2,3,4")
    parser.add_argument("--arities", default="3,4")
    args = parser.parse_args(argv)

    print(f"{'order':>5} {'arity':>5} {'classes':>8} {'reduced':>8} {'GTS*':>5}")
    for order in (int(x) for x in args.orders.split(",")):
        for arity in (int(x) for x in args.arities.split(",")):
            entries = census(order, arity, "derived")
            reduced = sum(1 for e in entries if e.report.reduced)
            star = sum(1 for e in entries if e.report.gts_star)
            print(f"{order:>5} {arity:>5} {len(entries):>8} {reduced:>8} {star:>5}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
