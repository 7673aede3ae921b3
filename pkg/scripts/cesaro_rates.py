"""Cesaro and Riesz error slopes for cusp data gamma in {0.3, 0.5, 0.7} at delta*."""
import argparse

from symharm.regularity import cesaro_errors, make_test_profile, rate_fit, riesz_errors, riesz_radii
from symharm.spaces import space_params

NS = (16, 32, 64, 128, 256, 512)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--space", default="sphere")
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--M", type=int, default=4096)
    args = ap.parse_args()
    p = space_params(args.space, args.d)
    print("gamma  cesaro_slope  r2     riesz_slope")
    for g in (0.3, 0.5, 0.7):
        data = make_test_profile(p, "cusp", g, 1.0, M=args.M, G=8192)
        ces = rate_fit(NS, cesaro_errors(data, p.delta_star, NS, G=8192))
        rsz = rate_fit(NS, riesz_errors(data, p.delta_star, riesz_radii(p, NS), G=8192))
        print(f"{g:<6} {ces.slope:<13.3f} {ces.r2:<6.3f} {rsz.slope:.3f}")


if __name__ == "__main__":
    main()
