"""Box-counting sanity: smooth graph, Weierstrass graphs, bi-Lipschitz image and union."""
import numpy as np

from symharm.fractal import bilipschitz_probe, graph_dimension, union_probe, weierstrass_series

if __name__ == "__main__":
    th = np.linspace(0, np.pi, 2**17 + 1)
    levels = [np.pi / 2**j for j in range(3, 11)]
    print(f"smooth: {graph_dimension(th, np.sin(3 * th), levels).dimension:.3f}")
    for g in (0.3, 0.5, 0.7):
        print(f"W_{g}: {graph_dimension(th, weierstrass_series(g, th, K=20), levels).dimension:.3f} "
              f"(2 - gamma = {2 - g})")
    pts = np.stack([th[::4], weierstrass_series(0.5, th[::4], K=20)], axis=1)
    print("bi-Lipschitz:", bilipschitz_probe(pts, lambda x, y: (x + 0.3 * y, 0.8 * y), levels[:-1]))
    other = np.stack([th[::4], np.sin(th[::4]) + 4.0], axis=1)
    print("union:", union_probe(pts, other, levels[:-1]))
