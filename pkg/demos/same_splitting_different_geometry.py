"""Two curves in P^8 with the same normal bundle but different conic relations.

Both curves have twists (2,2,2,3,3,4,4).  In the first the three conic
relations sit on pairwise far-apart coordinates; in the second two of them
share a tangent direction and their planes meet in a line.  The splitting
type alone does not determine how the low-degree relations sit.
"""

import argparse

from ratcurves.construct import delta_seq_conics, from_delta_sequence
from ratcurves.field import FieldCtx
from ratcurves.strata import analyze_curve, conic_tangency_pairs


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    n, e, k = 8, 11, 3
    for j in (1, 2):
        gaps = delta_seq_conics(n, e, k, j)
        f, _ = from_delta_sequence(n, e, gaps, seed=args.seed, field=FieldCtx.prime())
        a = analyze_curve(f)
        planes = sorted({x.value for row in a.plane_matrix for x in row if x})
        print(f"chain length {j}: gaps {list(gaps)}")
        print(f"  N_f = {a.normal.summands()}")
        print(f"  conic relations: {len(a.conic_kinds)}, tangent pairs among them: {len(conic_tangency_pairs(a))}")
        print(f"  plane meetings: {', '.join(planes)}")


if __name__ == "__main__":
    main()
