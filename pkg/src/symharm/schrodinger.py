"""Periodic Schroedinger flow on radial data: exact-phase propagation, Weyl
sums and block kernels, Besov-decay random data, and the Talbot pipeline."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .fractal import dyadic_levels, graph_dimension
from .regularity import decay_fit, holder_exponent
from .spaces import SpaceParams, eigenvalue
from .spectral import (SpectralCoeffs, block_norms, dyadic_blocks, is_dyadic, lp_block,
                       radial_rule, synthesize, synthesize_array, uniform_grid)

GOLDEN = (np.sqrt(5.0) - 1) / 2


@dataclass(frozen=True)
class TimeSpec:
    """t = 2 pi tau with tau exact (rational), golden, random on (0, 1), or a given real."""
    kind: str
    value: float = 0.0
    p: int = 0
    q: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("exact", "rational", "golden", "random"):
            raise ValueError(f"unknown time kind {self.kind!r}")
        if self.kind == "rational" and (self.q < 1 or gcd(self.p, self.q) != 1):
            raise ValueError("rational time needs q >= 1 and gcd(p, q) = 1")

    @classmethod
    def parse(cls, text: str, seed: int = 0):
        """'golden', 'random', 'random:<seed>', 'p/q' (t = 2 pi p/q) or a real t."""
        if text == "golden":
            return cls("golden")
        if text.startswith("random"):
            _, _, s = text.partition(":")
            return cls("random", seed=int(s) if s else seed)
        if "/" in text:
            fr = Fraction(text)
            return cls("rational", p=fr.numerator, q=fr.denominator)
        return cls("exact", value=float(text))

    @property
    def tau(self):
        """t / (2 pi)."""
        if self.kind == "exact":
            return self.value / (2 * np.pi)
        if self.kind == "rational":
            return self.p / self.q
        if self.kind == "golden":
            return GOLDEN
        return float(np.random.default_rng(self.seed).uniform(0.0, 1.0))

    @property
    def t(self):
        return 2 * np.pi * self.tau

    def label(self):
        if self.kind == "rational":
            return f"2pi*{self.p}/{self.q}"
        if self.kind == "random":
            return f"random:{self.seed}"
        return self.kind if self.kind == "golden" else repr(self.value)

    def to_json(self):
        return {"kind": self.kind, "label": self.label(), "t": self.t}


def _as_time(t):
    return t if isinstance(t, TimeSpec) else TimeSpec("exact", value=float(t))


def phases(lam2, t) -> np.ndarray:
    """e^{i t lambda^2}, reduced modulo the period so t = 2 pi is exactly 1."""
    ts = _as_time(t)
    lam2 = np.asarray(lam2, dtype=np.int64)
    if ts.kind == "rational":
        frac = (ts.p * lam2) % ts.q / ts.q
    else:
        frac = np.mod(ts.tau * lam2.astype(float), 1.0)
    return np.exp(2j * np.pi * frac)


def propagate(coeffs: SpectralCoeffs, t) -> SpectralCoeffs:
    """c_n -> e^{i t lambda_n^2} c_n."""
    lam2 = eigenvalue(coeffs.space, np.arange(coeffs.M + 1))
    return coeffs.with_c(coeffs.c * phases(lam2, t))


def weyl_kernel(p: SpaceParams, N: int, t, thetas):
    """H_{N,t}(theta) = sum_{n=N+1}^{2N} e^{i t lambda_n^2} Z_n(theta)."""
    if not is_dyadic(N):
        raise ValueError(f"N must be dyadic, got {N}")
    c = np.zeros(2 * N + 1, dtype=complex)
    n = np.arange(N + 1, 2 * N + 1)
    c[n] = phases(eigenvalue(p, n), t)
    return synthesize_array(p, c, thetas)


def kernel_constants(p: SpaceParams, N: int, t, G=4096):
    """Weighted sups of |H_{N,t}| near the origin and near the cut locus."""
    th = np.linspace(0, np.pi, G)
    H = np.abs(weyl_kernel(p, N, t, th))
    near = th <= np.pi / 2
    c0 = np.max(H[near] * np.sqrt(1 + (N * th[near]) ** 2) ** ((p.d - 1) / 2)) / N ** (p.d - 0.5)
    far = ~near
    dist = np.pi - th[far]
    c1 = np.max(H[far] * np.sqrt(1 + (N * dist) ** 2) ** (p.beta + 0.5)) / N ** (p.beta + (p.d + 1) / 2)
    return float(c0), float(c1)


def weyl_sum_probe(p_growth, N: int, t, x_grid=None):
    """sup over x and N < u <= 2N of |sum_{n=N+1}^{u} e^{i n^2 t + i n x} n^p|."""
    if x_grid is None:
        x_grid = np.linspace(0, 2 * np.pi, 8 * N, endpoint=False)
    x_grid = np.asarray(x_grid, dtype=float)
    if x_grid.size < 8 * N:
        raise ValueError(f"x grid too coarse: need >= {8 * N} points on [0, 2 pi]")
    tau = _as_time(t).tau
    acc = np.zeros(x_grid.shape, dtype=complex)
    best = 0.0
    for n in range(N + 1, 2 * N + 1):
        ph = 2 * np.pi * np.mod(tau * n * n, 1.0)
        acc += float(n) ** p_growth * np.exp(1j * (ph + n * x_grid))
        best = max(best, float(np.max(np.abs(acc))))
    return best


# ---------------------------------------------------------------- data

def besov_random_data(p: SpaceParams, s_reg, p_exp, M: int, seed=0, G=8192) -> SpectralCoeffs:
    """Real random data with ||P_N f||_p = N^{-(d/2 + s)} for every dyadic N <= M/2.

    Mode n receives cos(2 pi U_n) / sqrt(d_n) with U_n drawn in mode order,
    so the first modes agree when M is doubled under the same seed.
    """
    if not is_dyadic(M) or M < 2:
        raise ValueError("M must be a power of two >= 2")
    from .spaces import eigenspace_dims
    rng = np.random.default_rng(seed)
    u = rng.random(M + 1)
    c = np.cos(2 * np.pi * u) / np.sqrt(eigenspace_dims(p, M))
    coeffs = SpectralCoeffs(p, c)
    norms = block_norms(coeffs, p_exp, G)
    for N, v in norms.items():
        lo, hi = lp_block(N)
        c[lo: hi + 1] *= N ** (-(p.d / 2 + s_reg)) / v
    # modes above the last full block are dropped
    top = lp_block(dyadic_blocks(M)[-1])[1]
    c[top + 1:] = 0
    return SpectralCoeffs(p, c)


# ---------------------------------------------------------------- Talbot pipeline

def _single_time(coeffs: SpectralCoeffs, ts: TimeSpec, G, eps_levels, scales):
    u = propagate(coeffs, ts)
    norms = block_norms(u, np.inf, G)
    Ns = [N for N in sorted(norms) if N >= 2]
    besov = decay_fit(Ns, [norms[N] for N in Ns])
    prof = synthesize(u, uniform_grid(G), grid="uniform")
    prof.values = prof.values.real
    holder = holder_exponent(prof, scales)
    dim = graph_dimension(prof.thetas, prof.values, eps_levels)
    return besov, holder, dim


@dataclass(frozen=True)
class DataSpec:
    """Initial data: Besov-decay random data or a geodesic-ball indicator."""
    kind: str = "besov_random"
    s: float = 0.5
    p: float = np.inf
    seed: int = 0
    theta0: float = 1.0

    def build(self, space: SpaceParams, M: int, G: int = 8192) -> SpectralCoeffs:
        if self.kind == "besov_random":
            return besov_random_data(space, self.s, self.p, M, self.seed, G)
        if self.kind == "ball":
            from .regularity import make_test_profile
            return make_test_profile(space, "ball", theta0=self.theta0, M=M).coeffs
        raise ValueError(f"unknown data kind {self.kind!r}")

    def to_json(self, M):
        out = {"kind": self.kind, "s": self.s, "p": _p_json(self.p), "M": M, "seed": self.seed}
        if self.kind == "ball":
            out["theta0"] = self.theta0
        return out


def talbot_experiment(p: SpaceParams, data: DataSpec, times, M, G=8192, check_convergence=True):
    """Per-time smoothing, Hoelder and graph-dimension measurements of Re u(., t).

    The convergence check rebuilds the data with 2M modes and recounts on the
    same epsilon levels; |change in dimension| < 0.1 marks the time converged.
    """
    if not times:
        raise ValueError("times must be nonempty")
    if not is_dyadic(M):
        raise ValueError("M must be a power of two")
    coeffs = data.build(p, M, G)
    coeffs2 = data.build(p, 2 * M, G) if check_convergence else None
    eps_levels = dyadic_levels(np.pi, 4 * np.pi / M)
    scales = np.geomspace(max(4 * np.pi / M, 2 * np.pi / (G - 1)), 0.25, 6)
    rows = []
    for ts in sorted(times, key=lambda s: (s.t, s.label())):
        besov, holder, dim = _single_time(coeffs, ts, G, eps_levels, scales)
        row = {"t_spec": ts.to_json(),
               "besov_fit": besov.to_json("block sup norm", *zip(*sorted(
                   (N, v) for N, v in block_norms(propagate(coeffs, ts), np.inf, G).items() if N >= 2))),
               "besov_exponent": -besov.slope,
               "holder_fit": holder.to_json("modulus of continuity"),
               "holder_exponent": holder.slope,
               "dimension": dim.to_json()}
        if coeffs2 is not None:
            # same epsilon levels, twice the modes
            d2 = _single_time(coeffs2, ts, G, eps_levels, scales)[2]
            row["dimension_2M"] = d2.dimension
            row["converged"] = bool(abs(d2.dimension - dim.dimension) < 0.1)
        else:
            row["converged"] = None
        rows.append(row)
    med_gamma = float(np.median([r["besov_exponent"] for r in rows]))
    med_dim = float(np.median([r["dimension"]["dimension"] for r in rows]))
    conv = [r["converged"] for r in rows if r["converged"] is not None]
    return {
        "space": p.kind, "d": p.d,
        "data": data.to_json(M),
        "grid": G,
        "times": rows,
        "aggregates": {"median_gamma": med_gamma,
                       "median_holder": float(np.median([r["holder_exponent"] for r in rows])),
                       "median_dim": med_dim,
                       "converged": bool(all(conv)) if conv else None,
                       "converged_fraction": float(np.mean(conv)) if conv else None},
    }


def _p_json(p_exp):
    return "inf" if np.isinf(p_exp) else float(p_exp)


def revival_error(coeffs: SpectralCoeffs, G=4096):
    """sup |u(., 2 pi) - f| on a uniform grid."""
    th = uniform_grid(G)
    u = synthesize_array(coeffs.space, propagate(coeffs, TimeSpec("rational", p=1, q=1)).c, th)
    f = synthesize_array(coeffs.space, coeffs.c, th)
    return float(np.max(np.abs(u - f)))


def mass(coeffs: SpectralCoeffs):
    return coeffs.l2_mass()


def quadrature_grid(p: SpaceParams, M: int):
    return radial_rule(p, 2 * M + 64)
