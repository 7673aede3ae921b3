"""Scalar special functions: Jacobi polynomials, Bessel functions, gamma
ratios and Gauss-Jacobi quadrature."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gamma, lgamma, exp, sqrt

import numpy as np
from scipy import linalg, special


def _check_halfint(name, v, lower=0.0):
    if v < lower or abs(2 * v - round(2 * v)) > 1e-12:
        raise ValueError(f"{name} must be a half-integer >= {lower}, got {v}")


# ---------------------------------------------------------------- Jacobi

def _recurrence_coeffs(k, a, b):
    """Coefficients (A, B, C) with P_k = (A x + B) P_{k-1} - C P_{k-2}, k >= 2."""
    s = 2 * k + a + b
    den = 2 * k * (k + a + b) * (s - 2)
    A = (s - 1) * s * (s - 2) / den
    B = (s - 1) * (a * a - b * b) / den
    C = 2 * (k + a - 1) * (k + b - 1) * s / den
    return A, B, C


def jacobi_eval(alpha, beta, n, x):
    """P_n^{(alpha, beta)}(x) by the three-term recurrence.

    Vectorized over ``x``; values outside [-1, 1] are rejected.
    """
    if n < 0:
        raise ValueError("degree must be >= 0")
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1 + 1e-14):
        raise ValueError("jacobi_eval only supports x in [-1, 1]")
    p0 = np.ones_like(x)
    if n == 0:
        return p0
    p1 = (alpha + 1) + (alpha + beta + 2) * (x - 1) / 2
    for k in range(2, n + 1):
        A, B, C = _recurrence_coeffs(k, alpha, beta)
        p0, p1 = p1, (A * x + B) * p1 - C * p0
    return p1


def jacobi_at_one(alpha, n):
    """P_n^{(alpha, beta)}(1) = binom(n + alpha, n)."""
    return exp(lgamma(n + alpha + 1) - lgamma(n + 1) - lgamma(alpha + 1))


def iter_normalized_jacobi(alpha, beta, kmax, x):
    """Yield (k, P_k(x) / P_k(1)) for k = 0..kmax.

    The normalized values stay in [-1, 1] for alpha >= beta, so no growth
    control is needed at high degree.
    """
    x = np.asarray(x, dtype=float)
    q0 = np.ones_like(x)
    yield 0, q0
    if kmax == 0:
        return
    q1 = ((alpha + 1) + (alpha + beta + 2) * (x - 1) / 2) / (alpha + 1)
    yield 1, q1
    for k in range(2, kmax + 1):
        A, B, C = _recurrence_coeffs(k, alpha, beta)
        r1 = k / (k + alpha)                      # P_{k-1}(1) / P_k(1)
        r2 = r1 * (k - 1) / (k - 1 + alpha)       # P_{k-2}(1) / P_k(1)
        q0, q1 = q1, (A * x + B) * r1 * q1 - C * r2 * q0
        yield k, q1


# ---------------------------------------------------------------- gamma

# Gamma(x + 1/2) / Gamma(x) = sqrt(x) * sum_i c_i x^{-i}
_HALF_SERIES = (1.0, -1 / 8, 1 / 128, 5 / 1024, -21 / 32768, -399 / 262144,
                869 / 4194304)


def _half_ratio(x):
    """Gamma(x + 1/2) / Gamma(x) for x >= 1."""
    if x >= 40:
        return sqrt(x) * sum(c / x**i for i, c in enumerate(_HALF_SERIES))
    # short product from Gamma(3/2)/Gamma(1); exact to a few ulp below 40 terms
    k = int(round(x))
    out = gamma(1.5)
    for j in range(1, k):
        out *= (j + 0.5) / j
    return out


def gamma_ratio(n, alpha):
    """Gamma(n + alpha + 1) / n! for integer n >= 0 and half-integer alpha >= 0.

    The integer part of alpha is a short exact product; a half-integer
    remainder goes through an asymptotic series for large n.  Plain
    log-gamma differences lose ~1e-9 relative accuracy at n ~ 1e6.
    """
    _check_halfint("alpha", alpha)
    if np.ndim(n):
        return np.array([gamma_ratio(int(m), alpha) for m in np.ravel(n)]).reshape(np.shape(n))
    n = int(n)
    if n < 0:
        raise ValueError("n must be >= 0")
    k = int(alpha)
    frac = alpha - k
    if frac:
        # Gamma(n + 1 + 1/2) / Gamma(n + 1), then multiply up by (n + 1/2 + j)
        base = _half_ratio(n + 1)
        for j in range(1, k + 1):
            base *= n + 0.5 + j
        return base
    out = 1.0
    for j in range(1, k + 1):
        out *= n + j
    return out


def cesaro_binomial(m, delta):
    """A^delta_m = binom(m + delta, m) for real delta >= 0 (vectorized in m)."""
    m = np.asarray(m, dtype=float)
    return np.exp(special.gammaln(m + delta + 1) - special.gammaln(delta + 1)
                  - special.gammaln(m + 1))


# ---------------------------------------------------------------- Bessel

def bessel(kind, nu, r):
    """Bessel J_nu(r) or Y_nu(r) for half-integer order nu >= 0."""
    _check_halfint("nu", nu)
    r = np.asarray(r, dtype=float)
    if kind == "J":
        if np.any(r < 0):
            raise ValueError("bessel J requires r >= 0")
        return special.jv(nu, r)
    if kind == "Y":
        if np.any(r <= 0):
            raise ValueError("bessel Y is singular at r = 0; need r > 0")
        return special.yv(nu, r)
    raise ValueError(f"kind must be 'J' or 'Y', got {kind!r}")


def bessel_jy(nu, r):
    """(J_nu(r), Y_nu(r)) with Y set to -inf where r == 0."""
    r = np.asarray(r, dtype=float)
    j = special.jv(nu, r)
    with np.errstate(divide="ignore", invalid="ignore"):
        y = np.where(r > 0, special.yv(nu, np.where(r > 0, r, 1.0)), -np.inf)
    return j, y


# ---------------------------------------------------------------- quadrature

@dataclass(frozen=True)
class QuadratureRule:
    alpha_w: float
    beta_w: float
    Q: int
    nodes: np.ndarray
    weights: np.ndarray


def jacobi_mass(a, b):
    """Total mass of (1 - x)^a (1 + x)^b on [-1, 1]."""
    return exp((a + b + 1) * np.log(2.0) + lgamma(a + 1) + lgamma(b + 1) - lgamma(a + b + 2))


@lru_cache(maxsize=64)
def _gauss_jacobi_cached(a, b, Q):
    k = np.arange(Q, dtype=float)
    s = 2 * k + a + b
    with np.errstate(divide="ignore", invalid="ignore"):
        diag = (b * b - a * a) / (s * (s + 2))
    diag[0] = (b - a) / (a + b + 2)
    off = np.empty(max(Q - 1, 0))
    if Q > 1:
        off[0] = np.sqrt(4 * (1 + a) * (1 + b) / ((2 + a + b) ** 2 * (3 + a + b)))
        m = np.arange(2, Q, dtype=float)
        sm = 2 * m + a + b
        off[1:] = np.sqrt(4 * m * (m + a) * (m + b) * (m + a + b)
                          / (sm**2 * (sm + 1) * (sm - 1)))
    if Q == 1:
        nodes, vecs = diag.copy(), np.ones((1, 1))
    else:
        try:
            nodes, vecs = linalg.eigh_tridiagonal(diag, off)
        except linalg.LinAlgError as exc:
            raise RuntimeError(f"tridiagonal eigensolve failed for Q={Q}, a={a}, b={b}: {exc}")
    weights = jacobi_mass(a, b) * vecs[0, :] ** 2
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_jacobi_rule(alpha_w, beta_w, Q):
    """Gauss rule for the weight (1 - x)^alpha_w (1 + x)^beta_w (Golub-Welsch)."""
    if alpha_w <= -1 or beta_w <= -1:
        raise ValueError("weight exponents must exceed -1")
    if Q < 1:
        raise ValueError("Q must be >= 1")
    nodes, weights = _gauss_jacobi_cached(float(alpha_w), float(beta_w), int(Q))
    return QuadratureRule(alpha_w, beta_w, int(Q), nodes, weights)
