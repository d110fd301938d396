#!/usr/bin/env python3
"""Run both dual-path verification campaigns (fast route vs oracle).

Equivalent to `hnzz verify --theorem a` followed by `--theorem b`, with a
shared seed; exits nonzero if any case disagrees.
"""

import argparse
import sys

from hnzz.cli import main as hnzz_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--cases-a", type=int, default=200)
    parser.add_argument("--cases-b", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rc_a = hnzz_main(
        ["verify", "--theorem", "a", "--cases", str(args.cases_a), "--seed", str(args.seed)]
    )
    rc_b = hnzz_main(
        ["verify", "--theorem", "b", "--cases", str(args.cases_b), "--seed", str(args.seed)]
    )
    return rc_a or rc_b


if __name__ == "__main__":
    sys.exit(main())
