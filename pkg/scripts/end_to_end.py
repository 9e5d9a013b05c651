"""Block-encode exp(A) for a random non-normal 1-qubit A and report the error budget."""

import argparse
import json

import numpy as np

from blockfunc.blockenc import from_matrix
from blockfunc.matfunc import CircleContour, build_fM_encoding


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--norm", type=float, default=0.4)
    p.add_argument("--M", type=int, default=8)
    p.add_argument("--L", type=int, default=16)
    p.add_argument("--delta", type=float, default=1e-3)
    args = p.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    a = args.norm * g / np.linalg.norm(g, 2)
    be, rep = build_fM_encoding(from_matrix(a, alpha=1.0), "exp", CircleContour(0, 1.0, 2.0, args.M, args.L), args.delta)
    print(json.dumps({"qubits": be.qubits, **rep.to_dict()}, indent=2))


if __name__ == "__main__":
    main()
