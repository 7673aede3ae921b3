"""Weyl-sum growth at the golden time and block-kernel constants per reference space."""
from symharm.regularity import decay_fit
from symharm.schrodinger import TimeSpec, kernel_constants, weyl_sum_probe
from symharm.spaces import all_reference_spaces

if __name__ == "__main__":
    t = TimeSpec("golden")
    Ns = (16, 32, 64, 128, 256, 512, 1024)
    for pg in (0, 1):
        fit = decay_fit(Ns, [weyl_sum_probe(pg, N, t) for N in Ns])
        print(f"n^{pg} weights: slope {fit.slope:.3f}")
    for p in all_reference_spaces():
        c = [kernel_constants(p, N, t) for N in (8, 16, 32, 64, 128)]
        print(f"{p.kind}{p.d}: origin " + " ".join(f"{a:.3g}" for a, _ in c)
              + " | cut locus " + " ".join(f"{b:.3g}" for _, b in c))
