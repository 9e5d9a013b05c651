"""Degree of the odd inverse polynomial against (1/sigma) log(1/delta).

Prints sigma, delta, degree, the ratio to (1/sigma) log(1/delta) and the
measured sup error on [sigma, 1].
"""

import argparse
import math

import numpy as np

from blockfunc.inversion import inv_poly


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sigmas", default="0.5,0.25,0.125,0.0625")
    p.add_argument("--deltas", default="1e-2,1e-4,1e-6")
    args = p.parse_args(argv)

    print(f"{'sigma':>8} {'delta':>8} {'degree':>7} {'ratio':>7} {'sup err':>9}")
    for sigma in map(float, args.sigmas.split(",")):
        for delta in map(float, args.deltas.split(",")):
            poly = inv_poly(sigma, delta)
            x = np.linspace(sigma, 1.0, 20001)
            err = np.max(np.abs(poly(x) - 0.75 * sigma / x))
            ratio = poly.degree / ((1 / sigma) * math.log(1 / delta))
            print(f"{sigma:8.4f} {delta:8.0e} {poly.degree:7d} {ratio:7.2f} {err:9.2e}")


if __name__ == "__main__":
    main()
