"""Trapezoidal-rule convergence: dense error and the a-priori bound versus M.

Writes a CSV with one row per (matrix, M). Example:

    python scripts/convergence_sweep.py --function exp --out sweep.csv
"""

import argparse
import csv
import sys

import numpy as np

from blockfunc.linalg import spectral_norm
from blockfunc.matfunc import CircleContour, exact_matrix_function, f_M_dense, get_function, trapezoid_error_bound

MATRICES = {
    "diag": np.diag([0.1, 0.2]),
    "non-normal": np.array([[0.1, 0.3], [0.0, 0.2]]),
    "skewed": np.array([[0.2, 0.6], [0.0, -0.1]]),
}


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--function", default="exp")
    p.add_argument("--z0", type=float, default=0.0)
    p.add_argument("--r", type=float, default=1.0)
    p.add_argument("--R", type=float, default=2.0)
    p.add_argument("--M", default="2,4,8,16,32,64")
    p.add_argument("--out", default=None)
    args = p.parse_args(argv)

    f = get_function(args.function)
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["matrix", "M", "error", "eps_M"])
    for name, a in MATRICES.items():
        a = a + args.z0 * np.eye(2)
        s = spectral_norm(a - args.z0 * np.eye(2))
        if s >= args.r:
            print(f"skipping {name}: ||A - z0 I|| = {s:.3f} >= r", file=sys.stderr)
            continue
        exact = exact_matrix_function(a, f)
        for M in map(int, args.M.split(",")):
            c = CircleContour(args.z0, args.r, args.R, M)
            err = spectral_norm(exact - f_M_dense(a, f, c))
            w.writerow([name, M, f"{err:.6e}", f"{trapezoid_error_bound(c, f, s):.6e}"])
    if args.out:
        fh.close()


if __name__ == "__main__":
    main()
