"""Cesaro kernel weighted-sup constants at delta* and their spread over N, per reference space."""
from symharm.spaces import all_reference_spaces
from symharm.spectral import cesaro_kernel_constant

NS = (16, 32, 64, 128, 256)

if __name__ == "__main__":
    print("space     " + "  ".join(f"N={N:<6}" for N in NS) + "  spread")
    for p in all_reference_spaces():
        c = [cesaro_kernel_constant(p, N) for N in NS]
        print(f"{p.kind + str(p.d):<9} " + "  ".join(f"{v:<8.4g}" for v in c) + f"  x{max(c) / min(c):.2f}")
