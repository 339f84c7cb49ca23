"""Survey the oscillation functional against its known closed forms.

Three panels: single zeros across the radius range (closed form via arctan),
an aligned needle approaching the boundary (limit 2 - 2d/pi), and random
products checked against the 2n cap.
"""

import argparse
import math

import numpy as np

from toeplitz_bounds import BlaschkeProduct, QuadratureSpec, lambda_functional


def aligned_single_zero_closed_form(a: float) -> float:
    """Peak rotation value for one zero at a in (0, 1): quadrature ground truth."""
    if a == 0.0:
        return 4.0 / math.pi
    return (2.0 * (1.0 + a) / (math.pi * math.sqrt(a))) * math.atan(2.0 * math.sqrt(a) / (1.0 - a))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--tolerance", type=float, default=1e-10)
    parser.add_argument("--products", type=int, default=12, help="random products in the cap panel")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    spec = QuadratureSpec(tolerance=args.tolerance)

    print("single zeros: computed vs closed form")
    for a in (0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99):
        res = lambda_functional(BlaschkeProduct(zeros=(a,)), spec)
        exact = aligned_single_zero_closed_form(a)
        print(f"  a={a:<5} Lambda={res.value:.12f}  closed={exact:.12f}  gap={res.value - exact:+.2e}")

    print("needle: zero at 1 - d, limit is 2 - 2d/pi")
    for d in (1e-3, 1e-6, 1e-9):
        res = lambda_functional(BlaschkeProduct(zeros=(1.0 - d,)), spec)
        exact = 2.0 - 2.0 * d / math.pi
        print(f"  d={d:<6} Lambda={res.value:.12f}  closed={exact:.12f}  gap={res.value - exact:+.2e}")

    print(f"random products: Lambda vs the 2n cap ({args.products} draws)")
    rng = np.random.default_rng(args.seed)
    for _ in range(args.products):
        n = int(rng.integers(2, 7))
        zeros = rng.uniform(0.05, 0.9, n) * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, n))
        res = lambda_functional(BlaschkeProduct(zeros=tuple(zeros)), spec)
        print(f"  n={n}  Lambda={res.value:.9f}  cap={2 * n}  slack={2 * n - res.value:.4f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
