#!/usr/bin/env python3
"""Tabulate the convex-configuration growth: t(H), the box side Q_t, and the
exact ratios against the H^2 lower and 32 N^2 upper bound forms."""

import argparse
from fractions import Fraction

from latcurve import convex_slope_check, jarnik_construct, verify_smoothing


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-H", type=int, default=30)
    ap.add_argument("--smoothing", action="store_true", help="also verify the smoothed graphs")
    args = ap.parse_args()

    print(f"{'H':>4} {'t':>6} {'Q_t':>8} {'t/H^2':>8} {'t^3/(32 Q_t^2)':>16} {'convex':>7}")
    for h in range(1, args.max_H + 1):
        cfg = jarnik_construct(h)
        ratio = Fraction(cfg.t, h * h)
        upper = Fraction(cfg.t**3, 32 * cfg.q_total**2)
        convex = convex_slope_check(cfg.points)
        if args.smoothing:
            convex = convex and verify_smoothing(cfg)
        print(
            f"{h:>4} {cfg.t:>6} {cfg.q_total:>8} {float(ratio):>8.3f} "
            f"{float(upper):>16.5f} {'yes' if convex else 'NO':>7}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
