"""Radial spectral calculus: analysis/synthesis in the zonal basis and the
diagonal summation operators built on it.

Coefficients follow c_n = <f, phi_n> with phi_n = Z_n / d_n, so that
proj_n f = c_n Z_n and every summation method is a diagonal multiplier.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from . import _dd
from .spaces import (SpaceParams, RadialRule, density, eigenspace_dim_exact, eigenspace_dims,
                     eigenvalue, iter_phi, radial_rule)
from .specfun import cesaro_binomial, gauss_jacobi_rule

MIN_SUP_GRID = 4096


@dataclass
class RadialProfile:
    space: SpaceParams
    thetas: np.ndarray
    values: np.ndarray
    weights: np.ndarray | None = None    # set for quadrature grids
    grid: str = "custom"                 # "uniform" | "quadrature" | "custom"

    def __post_init__(self):
        self.thetas = np.asarray(self.thetas, dtype=float)
        self.values = np.asarray(self.values)
        if self.values.shape[-1] != self.thetas.shape[0]:
            raise ValueError("values and thetas lengths differ")
        if self.thetas.size > 1 and np.any(np.diff(self.thetas) <= 0):
            raise ValueError("thetas must be strictly increasing")


@dataclass
class SpectralCoeffs:
    space: SpaceParams
    c: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=complex)
        if self.c.ndim != 1 or self.c.size < 1:
            raise ValueError("coefficients must be a non-empty 1-d array")

    @property
    def M(self):
        return self.c.size - 1

    def with_c(self, c):
        return replace(self, c=np.asarray(c, dtype=complex))

    def padded(self, M):
        out = np.zeros(M + 1, dtype=complex)
        k = min(M, self.M) + 1
        out[:k] = self.c[:k]
        return self.with_c(out)

    def l2_mass(self):
        """Parseval mass sum |c_n|^2 d_n = ||f||_2^2."""
        return float(np.sum(np.abs(self.c) ** 2 * eigenspace_dims(self.space, self.M)))


# ---------------------------------------------------------------- grids

def uniform_grid(G: int) -> np.ndarray:
    return np.linspace(0.0, np.pi, int(G))


def uniform_profile(p, values, G=None):
    values = np.asarray(values)
    return RadialProfile(p, uniform_grid(values.shape[-1]), values, grid="uniform")


def piecewise_rule(p: SpaceParams, breaks=(), Q=128, exponents=None):
    """Composite Gauss rule on [0, pi] for A(theta) dtheta, split at ``breaks``.

    ``exponents`` maps a breakpoint to gamma; the factor |theta - b|^gamma is
    then folded into the weights next to b (Gauss-Jacobi in theta), so the
    rule integrates g(theta) |theta - b|^gamma A(theta) for smooth g.
    """
    exponents = exponents or {}
    edges = [0.0, *sorted(breaks), np.pi]
    thetas, weights = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        ea, eb = exponents.get(a, 0.0), exponents.get(b, 0.0)
        # Jacobi weight (1 - x)^eb (1 + x)^ea ~ (b - theta)^eb (theta - a)^ea
        rule = gauss_jacobi_rule(eb, ea, Q)
        half = (b - a) / 2
        th = a + half * (rule.nodes + 1)
        w = rule.weights * half ** (1 + ea + eb) * density(p, th)
        thetas.append(th)
        weights.append(w)
    return np.concatenate(thetas), np.concatenate(weights)


# ---------------------------------------------------------------- analysis / synthesis

def zonal_eval(p: SpaceParams, n: int, thetas):
    """Z_n(theta) = d_n P_{sn}(cos(theta/s)) / P_{sn}(1)."""
    thetas = np.asarray(thetas, dtype=float)
    if np.any((thetas < 0) | (thetas > np.pi)):
        raise ValueError("theta must lie in [0, pi]")
    for m, phi in iter_phi(p, n, thetas):
        pass
    return eigenspace_dims(p, n)[n] * phi


def project(p: SpaceParams, M: int, thetas, weighted_values):
    """c_n = sum_i wv_i phi_n(theta_i) for n <= M; wv already carries A and weights."""
    wv = np.asarray(weighted_values)
    out = np.empty(wv.shape[:-1] + (M + 1,), dtype=complex)
    for n, phi in iter_phi(p, M, thetas):
        out[..., n] = wv @ phi
    return out


def analyze(p: SpaceParams, f, M: int, Q: int | None = None, rule: RadialRule | None = None):
    """Spectral coefficients c_0..c_M of a radial function.

    ``f`` is a callable of theta or a RadialProfile sampled on a quadrature grid.
    """
    if isinstance(f, RadialProfile):
        if f.grid != "quadrature" or f.weights is None:
            raise ValueError("analyze needs a profile on a quadrature grid")
        if f.thetas.size < M + 1:
            raise ValueError(f"quadrature too small: need >= {M + 1} nodes, got {f.thetas.size}")
        return SpectralCoeffs(p, project(p, M, f.thetas, f.weights * f.values))
    if rule is None:
        rule = radial_rule(p, Q if Q is not None else 2 * M + 64)
    if rule.max_degree < M:
        raise ValueError(f"quadrature too small: need size >= {M + 1}, got {rule.max_degree + 1}")
    vals = np.asarray(f(rule.thetas))
    return SpectralCoeffs(p, project(p, M, rule.thetas, rule.weights * vals))


def quadrature_profile(p: SpaceParams, f, Q: int) -> RadialProfile:
    rule = radial_rule(p, Q)
    return RadialProfile(p, rule.thetas, np.asarray(f(rule.thetas)), rule.weights, "quadrature")


def synthesize_array(p: SpaceParams, c, thetas):
    """sum_n c_n Z_n(theta); ``c`` may carry leading batch axes."""
    c = np.asarray(c)
    M = c.shape[-1] - 1
    dims = eigenspace_dims(p, M)
    scaled = c * dims
    thetas = np.asarray(thetas, dtype=float)
    out = np.zeros(c.shape[:-1] + thetas.shape, dtype=np.result_type(c.dtype, float))
    for n, phi in iter_phi(p, M, thetas):
        cn = scaled[..., n]
        if np.ndim(cn):
            out += cn[..., None] * phi
        elif cn != 0:
            out += cn * phi
    return out


def synthesize(coeffs: SpectralCoeffs, thetas, grid=None) -> RadialProfile:
    thetas = np.asarray(thetas, dtype=float)
    if grid is None:
        grid = "uniform" if _is_uniform(thetas) else "custom"
    return RadialProfile(coeffs.space, thetas, synthesize_array(coeffs.space, coeffs.c, thetas), grid=grid)


def _is_uniform(thetas):
    if thetas.size < 3:
        return False
    h = np.diff(thetas)
    return abs(thetas[0]) < 1e-15 and abs(thetas[-1] - np.pi) < 1e-12 and np.ptp(h) < 1e-9 * h.mean()


# ---------------------------------------------------------------- summation methods

def partial_sum(coeffs: SpectralCoeffs, N: int) -> SpectralCoeffs:
    if N < 0:
        raise ValueError("N must be >= 0")
    return coeffs.with_c(coeffs.c[: N + 1].copy())


def cesaro_weights(delta, N):
    """A^delta_{N-n} / A^delta_N for n = 0..N."""
    if delta < 0:
        raise ValueError("delta must be >= 0")
    n = np.arange(N + 1)
    return cesaro_binomial(N - n, delta) / cesaro_binomial(N, delta)


def cesaro_mean(coeffs: SpectralCoeffs, delta, N: int) -> SpectralCoeffs:
    w = cesaro_weights(float(delta), N)
    c = np.zeros(N + 1, dtype=complex)
    k = min(N, coeffs.M) + 1
    c[:k] = coeffs.c[:k] * w[:k]
    return coeffs.with_c(c)


def riesz_weights(p: SpaceParams, delta, R, M):
    if R <= 0:
        raise ValueError("R must be positive")
    lam = np.sqrt(eigenvalue(p, np.arange(M + 1)).astype(float))
    w = np.zeros(M + 1)
    inside = lam < R
    w[inside] = (1 - lam[inside] / R) ** delta
    return w


def riesz_mean(coeffs: SpectralCoeffs, delta, R) -> SpectralCoeffs:
    return coeffs.with_c(coeffs.c * riesz_weights(coeffs.space, delta, R, coeffs.M))


def is_dyadic(N):
    return N >= 1 and (int(N) & (int(N) - 1)) == 0


def lp_block(N):
    """Spectral indices (lo, hi) inclusive of the Littlewood-Paley block P_N."""
    if not is_dyadic(N):
        raise ValueError(f"Littlewood-Paley index must be dyadic, got {N}")
    return (0, 2) if N == 1 else (N + 1, 2 * N)


def littlewood_paley(coeffs: SpectralCoeffs, N: int) -> SpectralCoeffs:
    lo, hi = lp_block(N)
    c = np.zeros(hi + 1, dtype=complex)
    top = min(hi, coeffs.M)
    if top >= lo:
        c[lo: top + 1] = coeffs.c[lo: top + 1]
    return coeffs.with_c(c)


def dyadic_blocks(M):
    """Dyadic N with P_N fully resolved by modes <= M (N <= M/2)."""
    out, N = [], 1
    while 2 * N <= M:
        out.append(N)
        N *= 2
    return out


def block_profiles(coeffs: SpectralCoeffs, thetas, Ns=None):
    """Synthesized P_N f for each dyadic N, in one streaming pass over modes."""
    p = coeffs.space
    Ns = dyadic_blocks(coeffs.M) if Ns is None else list(Ns)
    if not Ns:
        return {}
    top = min(coeffs.M, lp_block(max(Ns))[1])
    owner = {}
    for i, N in enumerate(Ns):
        lo, hi = lp_block(N)
        for n in range(lo, min(hi, top) + 1):
            owner[n] = i
    dims = eigenspace_dims(p, top)
    thetas = np.asarray(thetas, dtype=float)
    out = np.zeros(coeffs.c.shape[:-1] + (len(Ns),) + thetas.shape, dtype=complex)
    for n, phi in iter_phi(p, top, thetas):
        i = owner.get(n)
        if i is not None and coeffs.c[n] != 0:
            out[i] += coeffs.c[n] * dims[n] * phi
    return {N: out[i] for i, N in enumerate(Ns)}


# ---------------------------------------------------------------- norms

def lp_norm(p_exp, obj, G: int = 8192, Q: int | None = None) -> float:
    """L^p(X) norm of a radial function; p_exp may be float('inf')."""
    if isinstance(obj, SpectralCoeffs):
        if np.isinf(p_exp):
            obj = synthesize(obj, uniform_grid(G))
        else:
            rule = radial_rule(obj.space, Q or 2 * obj.M + 64)
            vals = synthesize_array(obj.space, obj.c, rule.thetas)
            obj = RadialProfile(obj.space, rule.thetas, vals, rule.weights, "quadrature")
    vals = np.abs(obj.values)
    if np.isinf(p_exp):
        if obj.grid != "uniform" or obj.thetas.size < MIN_SUP_GRID:
            raise ValueError(f"sup norm needs a uniform grid with >= {MIN_SUP_GRID} points")
        return float(vals.max())
    if p_exp < 1:
        raise ValueError("p must be in [1, inf]")
    if obj.grid != "quadrature" or obj.weights is None:
        raise ValueError("L^p norm with p < inf needs a quadrature grid")
    return float(np.dot(obj.weights, vals**p_exp) ** (1.0 / p_exp))


def block_norms(coeffs: SpectralCoeffs, p_exp=np.inf, G=8192, Ns=None):
    """{N: ||P_N f||_p} over the resolved dyadic blocks."""
    p = coeffs.space
    if np.isinf(p_exp):
        thetas, w = uniform_grid(G), None
    else:
        rule = radial_rule(p, 2 * coeffs.M + 64)
        thetas, w = rule.thetas, rule.weights
    blocks = block_profiles(coeffs, thetas, Ns)
    out = {}
    for N, vals in blocks.items():
        a = np.abs(vals)
        out[N] = float(a.max()) if w is None else float(np.dot(w, a**p_exp) ** (1 / p_exp))
    return out


def besov_norm(coeffs: SpectralCoeffs, gamma, p_exp=np.inf, G=8192) -> float:
    """sup over dyadic N <= M/2 of N^gamma ||P_N f||_p."""
    norms = block_norms(coeffs, p_exp, G)
    return max((N**gamma * v for N, v in norms.items()), default=0.0)


# ---------------------------------------------------------------- kernels

def cesaro_kernel(p: SpaceParams, delta, N: int, thetas, extended=None):
    """K^delta_N(theta) = (1/A_N) sum_n A_{N-n} Z_n(theta).

    For rational delta the sum is carried out in double-double by default:
    the kernel is tiny near the cut locus while individual terms grow like
    N^(d-1), which defeats plain double precision in high dimension.
    """
    q = _rational_delta(delta)
    if extended is None:
        extended = q is not None
    if extended:
        if q is None:
            raise ValueError("extended precision needs a rational delta")
        return synthesize_rational(p, cesaro_weights_exact(q, N), thetas)
    return synthesize_array(p, cesaro_weights(float(delta), N), thetas)


def cesaro_kernel_constant(p: SpaceParams, N: int, G: int = 4097, delta=None):
    """sup_theta K^delta_N(theta) N (1 - cos theta + N^-2)^{(d+1)/2} at delta = delta* by default."""
    delta = p.delta_star if delta is None else delta
    th = uniform_grid(G)
    K = cesaro_kernel(p, delta, N, th)
    return float(np.max(np.abs(K) * N * (1 - np.cos(th) + N**-2.0) ** ((p.d + 1) / 2)))


def radial_convolve(f: SpectralCoeffs, g: SpectralCoeffs) -> SpectralCoeffs:
    """Coefficients of f * g for radial g: (f * g)_n = c_n(f) c_n(g)."""
    M = min(f.M, g.M)
    return f.with_c(f.c[: M + 1] * g.c[: M + 1])


def _normalized_jacobi_coeffs(a, b, k):
    """Exact (a_k, b_k, c_k) with q_k = (a_k x + b_k) q_{k-1} - c_k q_{k-2}, q = P / P(1)."""
    s = 2 * k + a + b
    den = 2 * k * (k + a + b) * (s - 2)
    r1 = Fraction(k) / (k + a)
    r2 = r1 * (k - 1) / (k - 1 + a)
    A = (s - 1) * s * (s - 2) / den
    B = (s - 1) * (a * a - b * b) / den
    C = 2 * (k + a - 1) * (k + b - 1) * s / den
    return A * r1, B * r1, C * r2


def synthesize_rational(p: SpaceParams, c, thetas):
    """sum_n c_n Z_n(theta) for rational c_n, evaluated in double-double.

    Used where the sum is many orders of magnitude smaller than its terms,
    e.g. Cesaro kernels near the cut locus of the high-dimensional spaces.
    """
    a, b = Fraction(p.alpha), Fraction(p.beta)
    c = [Fraction(v) for v in c]
    M = len(c) - 1
    x = (np.cos(np.asarray(thetas, dtype=float) / p.s), np.zeros(np.shape(thetas)))
    one = (np.ones_like(x[0]), np.zeros_like(x[0]))

    def coef(n):
        return _dd.from_fraction(c[n] * eigenspace_dim_exact(p, n))

    def affine(ca, cb, v):
        return _dd.add(_dd.mul(ca, v), cb)

    acc = _dd.mul(coef(0), one)
    q0 = one
    if M == 0 and p.s == 1:
        return _dd.to_float(acc)
    slope = (a + b + 2) / (2 * (a + 1))
    q1 = affine(_dd.from_fraction(slope), _dd.from_fraction(1 - slope), x)
    if p.s == 1:
        acc = _dd.add(acc, _dd.mul(coef(1), q1))
    for k in range(2, p.s * M + 1):
        ak, bk, ck = (_dd.from_fraction(v) for v in _normalized_jacobi_coeffs(a, b, k))
        lead = _dd.mul(affine(ak, bk, x), q1)
        q0, q1 = q1, _dd.add(lead, _dd.neg(_dd.mul(ck, q0)))
        if k % p.s == 0:
            acc = _dd.add(acc, _dd.mul(coef(k // p.s), q1))
    return _dd.to_float(acc)


def _rational_delta(delta):
    q = Fraction(delta).limit_denominator(64)
    return q if float(q) == float(delta) else None


def cesaro_weights_exact(delta, N):
    """A^delta_{N-n} / A^delta_N as Fractions for rational delta."""
    q = Fraction(delta)
    A = [Fraction(1)]
    for m in range(1, N + 1):
        A.append(A[-1] * (m + q) / m)
    return [A[N - n] / A[N] for n in range(N + 1)]
