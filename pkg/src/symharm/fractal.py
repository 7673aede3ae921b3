"""Box-counting (upper Minkowski) dimension of sampled graphs and planar
point sets, with probes for bi-Lipschitz invariance and finite unions."""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .regularity import decay_fit


@dataclass(frozen=True)
class BoxCountEstimate:
    epsilons: tuple
    counts: tuple
    dimension: float | None = None
    r2: float | None = None
    window: tuple | None = None

    def to_json(self):
        return {"epsilons": [float(e) for e in self.epsilons],
                "counts": [int(c) for c in self.counts],
                "dimension": self.dimension, "r2": self.r2,
                "window": None if self.window is None else [float(w) for w in self.window]}


def dyadic_levels(span, floor, j0=3):
    """epsilon_j = span / 2^j for j >= j0 while epsilon_j >= floor."""
    out, j = [], j0
    while span / 2**j >= floor * (1 - 1e-12):
        out.append(span / 2**j)
        j += 1
    return out


def _sorted_levels(eps_levels):
    eps = np.sort(np.asarray(eps_levels, dtype=float))[::-1]
    if eps.size < 2:
        raise ValueError("need at least 2 epsilon levels")
    if np.any(eps <= 0):
        raise ValueError("epsilon levels must be positive")
    return eps


def graph_count(thetas, values, eps):
    """Column-stack count of the sampled graph for a single epsilon.

    Each column [x0 + k eps, x0 + (k+1) eps] also sees the first sample of the
    next column, so the count covers the polyline through the samples.
    """
    x = np.asarray(thetas, dtype=float)
    y = np.real(np.asarray(values))
    ncol = max(1, int(np.ceil((x[-1] - x[0]) / eps - 1e-9)))
    col = np.minimum(np.floor((x - x[0]) / eps + 1e-12).astype(np.int64), ncol - 1)
    starts = np.flatnonzero(np.r_[True, col[1:] != col[:-1]])
    hi = np.maximum.reduceat(y, starts)
    lo = np.minimum.reduceat(y, starts)
    nxt = starts[1:]
    hi[:-1] = np.maximum(hi[:-1], y[nxt])
    lo[:-1] = np.minimum(lo[:-1], y[nxt])
    boxes = np.floor(hi / eps) - np.floor(lo / eps) + 1
    return int(boxes.sum())


def box_count(thetas, values, eps_levels) -> BoxCountEstimate:
    """Column-stack counts N_eps of the graph theta -> values at each level."""
    x = np.asarray(thetas, dtype=float)
    if x.size < 2 or np.any(np.diff(x) <= 0):
        raise ValueError("graph abscissae must be strictly increasing")
    eps = _sorted_levels(eps_levels)
    h = float(np.max(np.diff(x)))
    if eps[-1] < 2 * h * (1 - 1e-9):
        raise ValueError(f"epsilon {eps[-1]:.3g} below resolution: need >= {2 * h:.3g} (2x sample spacing)")
    counts = tuple(graph_count(x, values, e) for e in eps)
    return BoxCountEstimate(tuple(float(e) for e in eps), counts)


def _densify(points, step):
    """Insert samples along consecutive segments so gaps are <= step."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("points must be an (K, 2) array")
    seg = np.diff(pts, axis=0)
    length = np.hypot(seg[:, 0], seg[:, 1])
    reps = np.maximum(1, np.ceil(length / step).astype(np.int64))
    idx = np.repeat(np.arange(len(seg)), reps)
    frac = np.concatenate([np.arange(r) / r for r in reps]) if len(reps) else np.empty(0)
    dense = pts[idx] + frac[:, None] * seg[idx]
    return np.vstack([dense, pts[-1:]])


def point_count(points, eps, connected=True):
    """Number of grid boxes of side eps met by a planar point set (or polyline)."""
    pts = _densify(points, eps / 4) if connected else np.asarray(points, dtype=float)
    cells = np.floor(pts / eps).astype(np.int64)
    return int(np.unique(cells, axis=0).shape[0])


def box_count_points(points, eps_levels, connected=True) -> BoxCountEstimate:
    eps = _sorted_levels(eps_levels)
    counts = tuple(point_count(points, e, connected) for e in eps)
    return BoxCountEstimate(tuple(float(e) for e in eps), counts)


def minkowski_fit(est: BoxCountEstimate, window=None, drop=2) -> BoxCountEstimate:
    """Slope of log N_eps against log(1/eps).

    ``window`` = (eps_min, eps_max) selects levels; by default the ``drop``
    coarsest levels are excluded.
    """
    eps = np.asarray(est.epsilons)
    counts = np.asarray(est.counts, dtype=float)
    if window is None:
        order = np.argsort(eps)[::-1]
        keep = np.zeros(eps.size, bool)
        keep[order[drop:]] = True
    else:
        lo, hi = window
        keep = (eps >= lo * (1 - 1e-12)) & (eps <= hi * (1 + 1e-12))
    if keep.sum() < 4:
        raise ValueError(f"degenerate window: {int(keep.sum())} levels, need >= 4")
    fit = decay_fit(1.0 / eps[keep], counts[keep])
    return replace(est, dimension=fit.slope, r2=fit.r2,
                   window=(float(eps[keep].min()), float(eps[keep].max())))


def graph_dimension(thetas, values, eps_levels, window=None) -> BoxCountEstimate:
    return minkowski_fit(box_count(thetas, values, eps_levels), window)


def points_dimension(points, eps_levels, window=None) -> BoxCountEstimate:
    return minkowski_fit(box_count_points(points, eps_levels), window)


# ---------------------------------------------------------------- probes

def distortion(mapping, points, grid=32, h=1e-6):
    """max(sigma_max, 1/sigma_min) of the Jacobian over the bounding box of ``points``."""
    pts = np.asarray(points, dtype=float)
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    gx, gy = np.meshgrid(np.linspace(lo[0], hi[0], grid), np.linspace(lo[1], hi[1], grid))
    x, y = gx.ravel(), gy.ravel()
    fx = (np.asarray(mapping(x + h, y)) - np.asarray(mapping(x - h, y))) / (2 * h)
    fy = (np.asarray(mapping(x, y + h)) - np.asarray(mapping(x, y - h))) / (2 * h)
    jac = np.stack([fx, fy], axis=-1).transpose(1, 0, 2)   # (K, 2, 2)
    sv = np.linalg.svd(jac, compute_uv=False)
    return float(max(sv[:, 0].max(), 1.0 / sv[:, 1].min()))


def bilipschitz_probe(points, mapping, eps_levels, max_distortion=10.0):
    """(dim_before, dim_after) of a point set and its image under ``mapping``."""
    pts = np.asarray(points, dtype=float)
    dist = distortion(mapping, pts)
    if dist > max_distortion:
        raise ValueError(f"map distortion {dist:.3g} exceeds {max_distortion}")
    img = np.stack(mapping(pts[:, 0], pts[:, 1]), axis=-1)
    before = points_dimension(pts, eps_levels).dimension
    after = points_dimension(img, eps_levels).dimension
    return before, after


def union_probe(points_a, points_b, eps_levels):
    """(dim_a, dim_b, dim_union); the union is counted as one set of boxes."""
    eps = _sorted_levels(eps_levels)
    ca = [set(map(tuple, np.floor(_densify(points_a, e / 4) / e).astype(np.int64))) for e in eps]
    cb = [set(map(tuple, np.floor(_densify(points_b, e / 4) / e).astype(np.int64))) for e in eps]
    def fit(counts):
        return minkowski_fit(BoxCountEstimate(tuple(eps), tuple(counts))).dimension
    return (fit([len(a) for a in ca]), fit([len(b) for b in cb]),
            fit([len(a | b) for a, b in zip(ca, cb)]))


def weierstrass_series(gamma, thetas, K=14):
    """W(theta) = sum_{k<K} 2^{-k gamma} cos(2^k theta)."""
    thetas = np.asarray(thetas, dtype=float)
    out = np.zeros_like(thetas)
    for k in range(K):
        out += 2.0 ** (-k * gamma) * np.cos(2.0**k * thetas)
    return out
