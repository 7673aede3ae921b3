"""Hoelder machinery: test profiles, moduli of continuity, log-log rate fits,
spherical-mean deviation and the Bernstein gradient probe."""
from __future__ import annotations

from dataclasses import dataclass, asdict
from typing import Callable

import numpy as np
from scipy.ndimage import maximum_filter1d, minimum_filter1d

from .spaces import SpaceParams, eigenspace_dims, eigenvalue, iter_phi
from .spectral import (RadialProfile, SpectralCoeffs, cesaro_mean, is_dyadic, piecewise_rule,
                       project, riesz_mean, synthesize_array, uniform_grid)


@dataclass(frozen=True)
class DecayFit:
    slope: float
    intercept: float
    r2: float
    window: tuple

    def to_json(self, quantity="", xs=(), ys=()):
        out = asdict(self)
        out["window"] = list(self.window)
        return {"quantity": quantity, "xs": [float(x) for x in xs],
                "ys": [float(y) for y in ys], **out}


def decay_fit(xs, ys) -> DecayFit:
    """Least-squares line through (log x, log y)."""
    xs, ys = np.asarray(xs, dtype=float), np.asarray(ys, dtype=float)
    if xs.shape != ys.shape or xs.size < 4:
        raise ValueError("decay_fit needs at least 4 paired points")
    if np.any(xs <= 0) or np.any(ys <= 0):
        raise ValueError("decay_fit needs positive inputs")
    lx, ly = np.log(xs), np.log(ys)
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0 else max(0.0, 1.0 - float(np.sum(resid**2)) / ss_tot)
    return DecayFit(float(slope), float(intercept), r2, (float(xs.min()), float(xs.max())))


# ---------------------------------------------------------------- test data

@dataclass
class TestProfile:
    kind: str
    gamma: float
    theta0: float
    coeffs: SpectralCoeffs
    profile: RadialProfile
    exact: Callable | None     # pointwise evaluation, None for series data


def _check_gamma_theta(gamma, theta0):
    if not 0 < gamma < 1:
        raise ValueError(f"gamma must lie in (0, 1), got {gamma}")
    if not 0 < theta0 < np.pi:
        raise ValueError(f"theta0 must lie in (0, pi), got {theta0}")


def cusp_function(gamma, theta0):
    return lambda th: np.abs(np.asarray(th, dtype=float) - theta0) ** gamma


def ball_function(theta0):
    return lambda th: (np.asarray(th, dtype=float) < theta0).astype(float)


def make_test_profile(p: SpaceParams, kind: str, gamma=0.5, theta0=1.0, M=512,
                      seed=0, G=8192) -> TestProfile:
    """Cusp |theta - theta0|^gamma, geodesic-ball indicator, or a lacunary
    series sum_k 2^{-k gamma} Z_{2^k} / ||Z_{2^k}||_inf.

    Cusp and ball coefficients come from a composite Gauss rule split at
    theta0, so they are accurate for every n <= M.  ``seed`` is accepted for
    interface uniformity; all three generators are deterministic.
    """
    thetas = uniform_grid(G)
    if kind == "weierstrass":
        if not 0 < gamma < 1:
            raise ValueError(f"gamma must lie in (0, 1), got {gamma}")
        if not is_dyadic(M):
            raise ValueError("weierstrass data needs M a power of two")
        dims = eigenspace_dims(p, M)
        c = np.zeros(M + 1, dtype=complex)
        k = 0
        while 2**k <= M:
            # sup |Z_n| = Z_n(0) = d_n
            c[2**k] = 2.0 ** (-k * gamma) / dims[2**k]
            k += 1
        coeffs = SpectralCoeffs(p, c)
        vals = synthesize_array(p, c, thetas)
        return TestProfile(kind, gamma, float("nan"), coeffs,
                           RadialProfile(p, thetas, vals, grid="uniform"), None)
    if kind == "cusp":
        _check_gamma_theta(gamma, theta0)
        f = cusp_function(gamma, theta0)
        th, w = piecewise_rule(p, (theta0,), M + 64, {theta0: gamma})
        wv = w
    elif kind == "ball":
        if not 0 < theta0 < np.pi:
            raise ValueError(f"theta0 must lie in (0, pi), got {theta0}")
        f = ball_function(theta0)
        th, w = piecewise_rule(p, (theta0,), M + 64)
        wv = w * f(th)
    else:
        raise ValueError(f"unknown test profile kind {kind!r}")
    coeffs = SpectralCoeffs(p, project(p, M, th, wv))
    return TestProfile(kind, gamma, theta0, coeffs,
                       RadialProfile(p, thetas, f(thetas), grid="uniform"), f)


# ---------------------------------------------------------------- moduli

def _grid_step(profile: RadialProfile):
    th = profile.thetas
    h = np.diff(th)
    if th.size < 3 or np.ptp(h) > 1e-9 * h.mean():
        raise ValueError("modulus of continuity needs a uniform grid")
    return float(h.mean())


def modulus_of_continuity(profile: RadialProfile, scales):
    """Table of (delta, omega(delta)) with omega the sampled modulus."""
    h = _grid_step(profile)
    scales = np.asarray(scales, dtype=float)
    if np.any(scales < 2 * h * (1 - 1e-12)):
        raise ValueError(f"delta below resolution: need delta >= {2 * h:.3g} (2 grid spacings)")
    v = profile.values
    out = []
    for delta in scales:
        L = int(np.floor(delta / h + 1e-9))
        if np.isrealobj(v) or np.all(np.imag(v) == 0):
            vr = np.real(v)
            # every window of L + 1 samples appears once; edge-padded windows are sub-windows
            hi = maximum_filter1d(vr, L + 1, mode="nearest")
            lo = minimum_filter1d(vr, L + 1, mode="nearest")
            om = float(np.max(hi - lo))
        else:
            om = max((float(np.max(np.abs(v[j:] - v[:-j]))) for j in range(1, min(L, v.size - 1) + 1)),
                     default=0.0)
        out.append((float(delta), om))
    # running max guards against floating ties
    om = np.maximum.accumulate([o for _, o in out])
    return [(d, float(o)) for (d, _), o in zip(out, om)]


def holder_exponent(profile: RadialProfile, scales) -> DecayFit:
    table = modulus_of_continuity(profile, scales)
    d, om = zip(*table)
    return decay_fit(d, om)


def default_scales(G, M, count=6):
    """Dyadic scales between the spectral resolution ~pi/M and 1/4."""
    h = np.pi / (G - 1)
    lo = max(4 * np.pi / M, 2 * h)
    hi = 0.25
    return np.geomspace(lo, hi, count)


# ---------------------------------------------------------------- rates

def _sup_error(coeffs_approx, exact_vals, thetas):
    approx = synthesize_array(coeffs_approx.space, coeffs_approx.c, thetas)
    return float(np.max(np.abs(approx - exact_vals)))


def cesaro_errors(data: TestProfile, delta, Ns, G=8192):
    """sup |C^delta_N f - f| on a uniform grid for each N."""
    thetas = uniform_grid(G)
    exact = data.exact(thetas) if data.exact else synthesize_array(data.coeffs.space, data.coeffs.c, thetas)
    return [_sup_error(cesaro_mean(data.coeffs, delta, N), exact, thetas) for N in Ns]


def riesz_errors(data: TestProfile, delta, Rs, G=8192):
    thetas = uniform_grid(G)
    exact = data.exact(thetas) if data.exact else synthesize_array(data.coeffs.space, data.coeffs.c, thetas)
    return [_sup_error(riesz_mean(data.coeffs, delta, R), exact, thetas) for R in Rs]


def riesz_radii(p: SpaceParams, Ns):
    """R = lambda_N, so the Riesz cutoff sits at the same spectral index."""
    return [float(np.sqrt(eigenvalue(p, N))) + 1e-9 for N in Ns]


def rate_fit(xs, ys, drop=2) -> DecayFit:
    """Log-log fit with the ``drop`` smallest abscissae excluded as pre-asymptotic."""
    order = np.argsort(xs)
    xs, ys = np.asarray(xs, float)[order], np.asarray(ys, float)[order]
    return decay_fit(xs[drop:], ys[drop:])


# ---------------------------------------------------------------- spherical means

def spherical_mean_deviation(coeffs: SpectralCoeffs, t, r_samples=8, G=8192, exact=None,
                             smoothing=None):
    """sup over r in (0, t] of || (I - tau_r)^{1/2} f ||_inf.

    tau_r acts diagonally with multiplier phi_n(r); the nonnegative branch
    (1 - phi_n(r))^{1/2} is used.

    For band-limited data the multiplier is applied directly.  For rough
    data with a pointwise ``exact`` evaluator the operator is written as
    f - L_r f with the low-pass multiplier 1 - (1 - phi_n(r))^{1/2}; L_r f is
    smooth at scale r, so its truncated expansion (tapered by a Cesaro mean
    of order ``smoothing``) converges fast, unlike the partial sums of f.
    """
    if not 0 < t < np.pi:
        raise ValueError(f"t must lie in (0, pi), got {t}")
    if r_samples < 1:
        raise ValueError("r_samples must be >= 1")
    p = coeffs.space
    c = coeffs.c
    if smoothing is not None:
        c = cesaro_mean(coeffs, smoothing, coeffs.M).c
    rs = np.linspace(t / r_samples, t, r_samples)
    phi = np.empty((r_samples, coeffs.M + 1))
    for n, v in iter_phi(p, coeffs.M, rs):
        phi[:, n] = v
    mult = np.sqrt(np.clip(1.0 - phi, 0.0, None))
    thetas = uniform_grid(G)
    if exact is None:
        vals = synthesize_array(p, mult * c, thetas)
    else:
        vals = exact(thetas) - synthesize_array(p, (1.0 - mult) * c, thetas)
    return float(np.max(np.abs(vals)))


# ---------------------------------------------------------------- Bernstein

def bernstein_ratio(p: SpaceParams, coeffs: SpectralCoeffs, thetas=None, G=8192):
    """max |d/dtheta Phi| / (m ||Phi||_inf) for a spherical polynomial of degree m."""
    m = coeffs.M
    if m < 1:
        raise ValueError("band limit m must be >= 1")
    thetas = uniform_grid(G) if thetas is None else np.asarray(thetas, dtype=float)
    h = np.diff(thetas)
    if np.ptp(h) > 1e-9 * h.mean():
        raise ValueError("bernstein_ratio needs a uniform grid")
    # wavelength of mode m in theta is 2 pi / m
    if 2 * np.pi / m / h.mean() < 8:
        raise ValueError(f"grid too coarse: need >= 8 points per wavelength at mode {m}, "
                         f"i.e. >= {int(np.ceil(4 * m)) + 1} points on [0, pi]")
    vals = synthesize_array(p, coeffs.c, thetas)
    sup = float(np.max(np.abs(vals)))
    if sup == 0:
        return 0.0
    deriv = np.gradient(vals, thetas, edge_order=2)
    return float(np.max(np.abs(deriv))) / (m * sup)


def random_polynomial(p: SpaceParams, m: int, rng: np.random.Generator) -> SpectralCoeffs:
    """Real band-m polynomial with unit-variance projections in L^2."""
    dims = eigenspace_dims(p, m)
    return SpectralCoeffs(p, rng.standard_normal(m + 1) / np.sqrt(dims))


def bernstein_probe(p: SpaceParams, m: int, count=100, seed=0, G=8192):
    """max over ``count`` random degree-m polynomials of bernstein_ratio, in one batched pass."""
    thetas = uniform_grid(G)
    if 2 * np.pi / m / thetas[1] < 8:
        raise ValueError(f"grid too coarse: need >= {4 * m + 1} points on [0, pi] at degree {m}")
    rng = np.random.default_rng(seed)
    c = rng.standard_normal((count, m + 1)) / np.sqrt(eigenspace_dims(p, m))
    vals = synthesize_array(p, c, thetas)
    deriv = np.gradient(vals, thetas, axis=-1, edge_order=2)
    return float(np.max(np.max(np.abs(deriv), axis=-1) / (m * np.max(np.abs(vals), axis=-1))))
