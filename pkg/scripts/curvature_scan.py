"""Scan curvature summaries along the transverse coordinate of a profile.

Prints, for each t, the extreme normalized bisectional values over random
vector pairs and the closed-form Ricci eigenvalues.  A sanity companion to
`cuspforge sweep t`; useful when eyeballing how fast the metric leaves the
cosh regime.
"""

import argparse

import numpy as np

from cuspforge.curvature import MetricPoint, bisectional, random_frame_vector
from cuspforge.profile import build_cutoff


def scan(t: float, p, n: int, draws: int, rng) -> tuple[float, float, float, float]:
    mp = MetricPoint.from_profile(p, t, n)
    vals = []
    for _ in range(draws):
        Y = random_frame_vector(rng, n)
        Xi = random_frame_vector(rng, n)
        denom = Y.norm_sq(mp) * Xi.norm_sq(mp)
        vals.append(bisectional(Y, Xi, mp) / denom)
    coef_h = 2.0 * mp.f * mp.fpp + 4.0 * mp.fp**2 + 2.0 * (n - 2) * mp.fp**2
    coef_z = (2 * n + 1) * mp.f * mp.fp**2 * mp.fpp + mp.f**2 * mp.fp * mp.fppp
    return min(vals), max(vals), -coef_h / mp.f**2, -coef_z / mp.g**2


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--A", type=float, default=6.0)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--steps", type=int, default=12)
    ap.add_argument("--draws", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    p = build_cutoff(args.A, (args.A / 6.0, 5.0 * args.A / 6.0))
    rng = np.random.default_rng(args.seed)
    print(f"{'t':>6} {'hbc min':>12} {'hbc max':>12} {'ricci_h':>12} {'ricci_z':>12}")
    for t in np.linspace(0.2, args.A, args.steps):
        lo, hi, rh, rz = scan(float(t), p, args.n, args.draws, rng)
        print(f"{t:6.2f} {lo:12.5f} {hi:12.5f} {rh:12.5f} {rz:12.5f}")


if __name__ == "__main__":
    main()
