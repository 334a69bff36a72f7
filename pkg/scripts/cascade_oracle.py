"""Closed-form reference values for the binomial multiplicative cascade.

Standalone on purpose: it imports nothing from ``fracten`` so the numbers it
prints can be frozen into the test-suite as an independent oracle.

    python scripts/cascade_oracle.py --p 0.6
"""
import argparse
import math


def h_analytic(q, p):
    if q == 0:
        # limit q -> 0 of 1/q - log2(p^q + (1-p)^q)/q
        return -(math.log2(p) + math.log2(1 - p)) / 2.0
    return 1.0 / q - math.log2(p**q + (1 - p) ** q) / q


def alpha_analytic(q, p):
    """d/dq [q h(q) - 1] = -d/dq log2(p^q + (1-p)^q)."""
    a, b = p**q, (1 - p) ** q
    return -(a * math.log(p) + b * math.log(1 - p)) / ((a + b) * math.log(2))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=float, default=0.6)
    ap.add_argument("--q-max", type=int, default=5)
    args = ap.parse_args()

    p = args.p
    print(f"# binomial cascade p={p}")
    print("q,h,alpha")
    for q in range(-args.q_max, args.q_max + 1):
        print(f"{q},{h_analytic(q, p):.12f},{alpha_analytic(q, p):.12f}")
    width = alpha_analytic(-args.q_max, p) - alpha_analytic(args.q_max, p)
    print(f"# finite-q width alpha(-{args.q_max}) - alpha({args.q_max}) = {width:.12f}")
    print(f"# asymptotic width log2(p/(1-p)) = {math.log2(p / (1 - p)):.12f}")


if __name__ == "__main__":
    main()
