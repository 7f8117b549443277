"""Splitting frequencies of random curves over a large prime field.

A random map is expected to have the most balanced normal bundle its degree
allows.  This tallies what actually comes out for a few small (n, e).
"""

import argparse
import random
from collections import Counter

from ratcurves.construct import random_curve
from ratcurves.curve import is_basepoint_free, is_unramified
from ratcurves.syzygy import normal_splitting


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    for n, e in ((3, 5), (4, 7), (5, 9), (6, 8)):
        tally = Counter()
        for _ in range(args.count):
            f = random_curve(n, e, rng)
            if is_basepoint_free(f) and is_unramified(f):
                tally[normal_splitting(f).twists] += 1
        common = ", ".join(f"{list(t)} x{c}" for t, c in tally.most_common())
        print(f"(n={n}, e={e}): {common}")


if __name__ == "__main__":
    main()
