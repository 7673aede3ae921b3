"""Amplitude and difference constants and residual slopes of the one-term expansion."""
import numpy as np

from symharm.oscillatory import (amplitude_constant, difference_constant, region_grid,
                                 residual_exponent, residual_table)
from symharm.regularity import decay_fit
from symharm.spaces import space_params

NS = (8, 16, 32, 64, 128, 256, 512)

if __name__ == "__main__":
    for key in (("sphere", 3), ("cproj", 4), ("hproj", 8), ("cayley", 16)):
        p = space_params(*key)
        for region in ("origin", "cutlocus"):
            th = region_grid(p, region, 2048)
            amp = [amplitude_constant(p, n, th, region) for n in NS]
            print(f"{key[0]}{key[1]} {region}: amplitude " + " ".join(f"{a:.3g}" for a in amp))
            if region == "origin":
                dif = [difference_constant(p, n, th) for n in NS]
                print(f"{'':>{len(key[0]) + 2}}         difference " + " ".join(f"{a:.3g}" for a in dif))
            table = residual_table(p, NS[1:], region, 2048)
            slope = decay_fit(*zip(*table)).slope if min(r for _, r in table) > 0 else np.nan
            print(f"    residual slope {slope:.2f} (expected <= {residual_exponent(p, region):.1f})")
