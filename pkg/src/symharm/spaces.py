"""Catalog of the compact rank-one symmetric spaces and their radial data.

Every space is described by the Jacobi pair (alpha, beta), the scale ``s``
and the density exponents (M1, M2).  Radial functions live on the geodesic
radius theta in [0, pi].

Zonal functions are evaluated through Jacobi polynomials of degree ``s*n``
in ``cos(theta/s)``.  For s = 1 this is the usual P_n^{(alpha,beta)}(cos theta);
for the real projective space it is the even spherical harmonic of degree
2n restricted to the half-sphere, which matches the eigenvalue 2n(2n+d-1).
"""
from __future__ import annotations

from dataclasses import dataclass, asdict
from fractions import Fraction
from functools import lru_cache
from math import lgamma, log, exp

import numpy as np

from .specfun import gauss_jacobi_rule, iter_normalized_jacobi, jacobi_mass

KINDS = ("sphere", "rproj", "cproj", "hproj", "cayley")

ADMISSIBLE = {
    "sphere": "d >= 2",
    "rproj": "d >= 2",
    "cproj": "d must be even and >= 4",
    "hproj": "d must be a multiple of 4 and >= 8",
    "cayley": "d must be 16",
}

REFERENCE_DIMS = {
    "sphere": (2, 3, 5),
    "rproj": (2, 3),
    "cproj": (4, 6),
    "hproj": (8, 12),
    "cayley": (16,),
}


@dataclass(frozen=True)
class SpaceParams:
    kind: str
    d: int
    M1: int
    M2: int
    alpha: float
    beta: float
    s: int
    delta_star: Fraction
    density_const: float

    @property
    def degree_scale(self):
        """Jacobi degree per spectral index n."""
        return self.s

    def to_json(self):
        out = asdict(self)
        out["delta_star"] = str(self.delta_star)
        return out


def _admissible(kind, d):
    if kind in ("sphere", "rproj"):
        return d >= 2
    if kind == "cproj":
        return d >= 4 and d % 2 == 0
    if kind == "hproj":
        return d >= 8 and d % 4 == 0
    if kind == "cayley":
        return d == 16
    raise ValueError(f"unknown space kind {kind!r}; expected one of {KINDS}")


@lru_cache(maxsize=None)
def space_params(kind, d):
    d = int(d)
    if not _admissible(kind, d):
        raise ValueError(f"inadmissible dimension d={d} for {kind}: {ADMISSIBLE[kind]}")
    alpha = (d - 2) / 2
    s = 2 if kind == "rproj" else 1
    if kind in ("sphere", "rproj"):
        beta = alpha
        delta_star = Fraction(d)
    elif kind == "cproj":
        beta = 0.0
        delta_star = Fraction(d + 2, 2)
    elif kind == "hproj":
        beta = 1.0
        delta_star = Fraction(d + 4, 2)
    else:
        alpha, beta = 7.0, 3.0
        delta_star = Fraction(12)
    if kind == "rproj":
        M1, M2 = d - 1, 0
    else:
        M2 = int(2 * beta + 1)
        M1 = d - 1 - M2
    # int_0^pi sin^M1(t/2) sin^M2(t) dt = 2^M2 B((M1+M2+1)/2, (M2+1)/2)
    a, b = (M1 + M2 + 1) / 2, (M2 + 1) / 2
    log_int = M2 * log(2.0) + lgamma(a) + lgamma(b) - lgamma(a + b)
    return SpaceParams(kind, d, M1, M2, alpha, beta, s, delta_star, exp(-log_int))


def all_reference_spaces():
    return [space_params(k, d) for k in KINDS for d in REFERENCE_DIMS[k]]


def density(p: SpaceParams, theta):
    theta = np.asarray(theta, dtype=float)
    if np.any((theta < 0) | (theta > np.pi)):
        raise ValueError("theta must lie in [0, pi]")
    return p.density_const * np.sin(theta / 2) ** p.M1 * np.sin(theta) ** p.M2


def eigenvalue(p: SpaceParams, n):
    """lambda_n^2 = s n (s n + alpha + beta + 1); integer for all kinds."""
    n = np.asarray(n)
    if np.any(n < 0):
        raise ValueError("n must be >= 0")
    k = p.s * n
    out = k * (2 * k + 2 * p.alpha + 2 * p.beta + 2) / 2
    return np.rint(out).astype(np.int64) if np.ndim(out) else int(round(float(out)))


# ---------------------------------------------------------------- quadrature

@dataclass(frozen=True)
class RadialRule:
    """Nodes in theta and weights of the probability measure A(theta) dtheta."""
    thetas: np.ndarray
    weights: np.ndarray
    max_degree: int   # spectral index up to which products Z_n Z_m integrate exactly


@lru_cache(maxsize=32)
def radial_rule(p: SpaceParams, Q: int) -> RadialRule:
    """Gauss rule on [0, pi] for A(theta) dtheta, exact for Z_n Z_m with n + m <= 2Q - 1.

    With x = cos(theta / s) the measure is the normalized Jacobi weight.  For
    the real projective space only x > 0 is used and integrands are even in x.
    """
    if Q < 1:
        raise ValueError("Q must be >= 1")
    if p.s == 1:
        rule = gauss_jacobi_rule(p.alpha, p.beta, Q)
        x, w = rule.nodes, rule.weights / jacobi_mass(p.alpha, p.beta)
    else:
        # 2Q symmetric nodes; even integrands of degree <= 4Q-1 in x are exact
        rule = gauss_jacobi_rule(p.alpha, p.alpha, 2 * Q)
        keep = rule.nodes > 0
        x = rule.nodes[keep]
        w = 2 * rule.weights[keep] / jacobi_mass(p.alpha, p.alpha)
    thetas = p.s * np.arccos(np.clip(x, -1, 1))
    order = np.argsort(thetas)
    thetas, w = thetas[order], w[order]
    thetas.setflags(write=False)
    w.setflags(write=False)
    return RadialRule(thetas, w, Q - 1)


def iter_phi(p: SpaceParams, nmax: int, thetas):
    """Yield (n, phi_n(theta)) with phi_n = Z_n / d_n = P_{sn}(cos(theta/s)) / P_{sn}(1)."""
    thetas = np.asarray(thetas, dtype=float)
    x = np.cos(thetas / p.s)
    origin = thetas == 0
    for k, q in iter_normalized_jacobi(p.alpha, p.beta, p.s * nmax, x):
        if k % p.s == 0:
            # phi_n(0) = 1 exactly; the recurrence drifts by a few ulp there
            yield k // p.s, np.where(origin, 1.0, q) if origin.any() else q


def _dim_cap(n):
    cap = 256
    while cap < n:
        cap *= 2
    return cap


@lru_cache(maxsize=32)
def _dims_table(p: SpaceParams, cap: int):
    rule = radial_rule(p, cap + 1)
    out = np.empty(cap + 1)
    for n, phi in iter_phi(p, cap, rule.thetas):
        out[n] = 1.0 / np.dot(rule.weights, phi * phi)
    snapped = np.rint(out)
    rel = np.abs(out - snapped) / snapped
    bad = np.nonzero(rel > 1e-9)[0]
    if bad.size:
        raise ArithmeticError(f"eigenspace dimension not integral for {p.kind} d={p.d} at n={bad[0]}")
    # past ~1e13 quadrature round-off can move the nearest integer; the closed
    # form supplies the digits once the quadrature value has confirmed it
    exact = np.array([float(v) for v in _exact_dims(p, cap)])
    if np.any(np.abs(exact - out) > 1e-9 * exact):
        raise ArithmeticError(f"closed-form dimension disagrees with quadrature for {p.kind} d={p.d}")
    snapped = exact
    snapped.setflags(write=False)
    return snapped


def eigenspace_dims(p: SpaceParams, nmax: int) -> np.ndarray:
    """d_0..d_nmax from the reproducing identity d_n = 1 / int phi_n^2 A."""
    return _dims_table(p, _dim_cap(nmax))[: nmax + 1]


def eigenspace_dim(p: SpaceParams, n: int, rule: RadialRule | None = None) -> float:
    if n < 0:
        raise ValueError("n must be >= 0")
    if rule is None:
        return float(eigenspace_dims(p, n)[n])
    if rule.max_degree < n:
        raise ValueError(f"quadrature under-resolved: need size >= {n + 1}, got {rule.max_degree + 1}")
    for m, phi in iter_phi(p, n, rule.thetas):
        pass
    return 1.0 / float(np.dot(rule.weights, phi * phi))


@lru_cache(maxsize=32)
def _exact_dims(p: SpaceParams, nmax: int):
    """Closed-form d_0..d_nmax as exact integers, by a running Pochhammer product.

    d_n = (2k+a+b+1)/(a+b+1) * (a+b+1)_k (a+1)_k / ((b+1)_k k!),  k = s n.
    """
    a, b = Fraction(p.alpha), Fraction(p.beta)
    out, prod = [], Fraction(1)
    for k in range(p.s * nmax + 1):
        if k:
            prod *= (a + b + k) * (a + k) / ((b + k) * k)
        if k % p.s == 0:
            q = (2 * k + a + b + 1) / (a + b + 1) * prod
            if q.denominator != 1:
                raise ArithmeticError(f"non-integral dimension {q} for {p.kind} d={p.d} n={k // p.s}")
            out.append(int(q))
    return tuple(out)


def eigenspace_dim_exact(p: SpaceParams, n: int) -> int:
    """Closed-form d_n as an exact integer (cross-check and extended-precision sums)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return _exact_dims(p, _dim_cap(n))[n]
