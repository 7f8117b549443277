"""A splitting type whose expected dimension is negative but which still occurs.

For curves in P^n with n - 2 twists equal to 2, the codimension h^1(End N)
grows like 2(n-2)e while the space of maps grows like (n+1)e.  Past a
threshold the expected dimension is negative, yet the gap construction still
produces a curve.
"""

import argparse

from ratcurves.construct import b_spec_dk, curve_with_splitting
from ratcurves.strata import dim_mor, h1_end, negative_dim_threshold
from ratcurves.syzygy import normal_splitting


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=10)
    args = parser.parse_args()

    n = args.n
    e = negative_dim_threshold(n)
    spec = b_spec_dk(n, e, 2, n - 2)
    f = curve_with_splitting(spec.twists)
    got = normal_splitting(f)
    print(f"n={n}: first degree with negative expected dimension is e={e}")
    print(f"twists {list(spec.twists)}: dim Mor {dim_mor(n, e)}, codim {h1_end(spec)}, "
          f"expected dim {dim_mor(n, e) - h1_end(spec)}")
    print(f"constructed curve has twists {list(got.twists)}: {'match' if got == spec else 'MISMATCH'}")


if __name__ == "__main__":
    main()
