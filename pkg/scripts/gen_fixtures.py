#!/usr/bin/env python3
"""Generate high-precision oracle fixtures for the test suite.

Two fixture files are produced under tests/data/, both computed with
exact big-integer binomials and 50-digit mpmath logarithms so the test
suite can check the library's double-precision arithmetic against an
independent route:

* ratio_bound.json — for a grid of (t, k, alpha) with t/k = 100, the
  log2 of the subset-drawing ratio C(T, alpha*k)/C(T-k, alpha*k-k), the
  log2 of the target e^(-k/4.01) * C(t, k), and whether the bound holds.
* entropy.json — binary entropy at 20 double-representable points.

Run from the repository root:  python3 scripts/gen_fixtures.py
"""

import json
import math
from pathlib import Path

import mpmath

mpmath.mp.dps = 50

DATA_DIR = Path(__file__).resolve().parent.parent / "tests" / "data"

RATIO_GRID = [
    (100 * k, k, alpha)
    for k in (5, 10, 20)
    for alpha in (8, 16, 32)
]

ENTROPY_POINTS = [
    0.001, 0.005, 0.01, 0.015, 0.025, 0.05, 0.075, 0.1, 0.125, 0.15,
    0.2, 0.25, 0.3, 1.0 / 3.0, 0.375, 0.4, 0.45, 0.475, 0.499, 0.5,
]


def log2_binom(x: int, y: int) -> mpmath.mpf:
    return mpmath.log(mpmath.mpf(math.comb(x, y)), 2)


def ratio_rows():
    rows = []
    for t, k, alpha in RATIO_GRID:
        T = alpha * t
        ak = alpha * k
        ratio_log2 = log2_binom(T, ak) - log2_binom(T - k, ak - k)
        rhs_log2 = -k / mpmath.mpf("4.01") / mpmath.log(2) + log2_binom(t, k)
        margin = rhs_log2 - ratio_log2
        if abs(margin) < mpmath.mpf("1e-40"):
            raise RuntimeError(
                f"grid point t={t} k={k} alpha={alpha} sits on the bound "
                "boundary; the boolean would not be trustworthy"
            )
        rows.append(
            {
                "t": t,
                "k": k,
                "alpha": alpha,
                "ratio_log2": mpmath.nstr(ratio_log2, 40),
                "rhs_log2": mpmath.nstr(rhs_log2, 40),
                "trivial_log2": mpmath.nstr(log2_binom(t, k), 40),
                "holds": bool(margin > 0),
            }
        )
    return rows


def entropy_rows():
    rows = []
    for p in ENTROPY_POINTS:
        x = mpmath.mpf(p)  # exact binary value of the double
        if x in (0, 1):
            h = mpmath.mpf(0)
        else:
            h = -x * mpmath.log(x, 2) - (1 - x) * mpmath.log(1 - x, 2)
        rows.append({"p": repr(p), "entropy": mpmath.nstr(h, 40)})
    return rows


def main():
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    ratio_path = DATA_DIR / "ratio_bound.json"
    entropy_path = DATA_DIR / "entropy.json"
    ratio_path.write_text(json.dumps(ratio_rows(), indent=2) + "\n")
    entropy_path.write_text(json.dumps(entropy_rows(), indent=2) + "\n")
    print(f"wrote {ratio_path}")
    print(f"wrote {entropy_path}")


if __name__ == "__main__":
    main()
