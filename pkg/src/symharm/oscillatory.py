"""One-term (Hilb-type) oscillatory expansions of zonal functions near the
origin and near the cut locus, built on a Hankel splitting of Bessel functions.

With k = s n and eta = theta / s, the main term of Z_n is

    psi^+_n(theta) e^{i n theta} + psi^-_n(theta) e^{-i n theta},

so the phase rate in theta is 1 for every kind (for the real projective
space the Jacobi degree 2n in cos(theta/2) gives e^{i 2n theta/2}).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spaces import SpaceParams, eigenspace_dims
from .specfun import bessel_jy, gamma_ratio, jacobi_at_one
from .spectral import zonal_eval


@dataclass
class AmplitudePair:
    thetas: np.ndarray
    plus: np.ndarray
    minus: np.ndarray
    phase_rate: float
    region: str = "origin"

    def main_term(self, n):
        ph = np.exp(1j * self.phase_rate * n * self.thetas)
        return self.plus * ph + self.minus / ph


# ---------------------------------------------------------------- Hankel splitting

def _smooth_step(x):
    """C-infinity step: 0 for x <= 0, 1 for x >= 1."""
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", over="ignore"):
        a = np.where(x > 0, np.exp(-1.0 / np.where(x > 0, x, 1.0)), 0.0)
        b = np.where(x < 1, np.exp(-1.0 / np.where(x < 1, 1.0 - x, 1.0)), 0.0)
    return a / (a + b)


def blend_start(D):
    """Left end of the blend interval; the Y-part switches on over [r0, r0 + 1].

    Below r ~ nu the function Y_nu(r) / r^nu grows like r^{-2 nu}, so the
    blend waits until the Bessel functions have entered their oscillatory
    regime; this keeps <r>^{(D-1)/2} |omega| uniformly bounded.
    """
    return max(1.0, (D - 2) / 2)


def hankel_split(D: int, r):
    """(omega^+, omega^-) with omega^+ e^{ir} + omega^- e^{-ir} = (2 pi)^{D/2} J_nu(r) / r^nu."""
    if D < 2:
        raise ValueError("D must be >= 2")
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("hankel_split needs r > 0")
    nu = (D - 2) / 2
    chi = _smooth_step(r - blend_start(D))
    j = bessel_jy(nu, r)[0]
    y = np.zeros_like(r)
    on = chi > 0
    if np.any(on):
        y[on] = bessel_jy(nu, r[on])[1]
    scale = (2 * np.pi) ** (D / 2) / (2 * r**nu)
    plus = scale * np.exp(-1j * r) * (j + 1j * chi * y)
    minus = scale * np.exp(1j * r) * (j - 1j * chi * y)
    return plus, minus


# ---------------------------------------------------------------- amplitudes

def _hilb_amplitudes(a, b, k, eta):
    """Psi^pm(eta) with P_k^{(a,b)}(cos eta) ~ Psi^+ e^{ik eta} + Psi^- e^{-ik eta}."""
    N = k + (a + b + 1) / 2
    w_plus, w_minus = hankel_split(int(round(2 * a + 2)), N * eta)
    # (sin eta/2)^{-a} eta^a written as a ratio to stay finite near 0
    env = (gamma_ratio(k, a) * (eta / np.sin(eta / 2)) ** a * np.cos(eta / 2) ** (-b)
           * np.sqrt(eta / np.sin(eta)) * (2 * np.pi) ** (-(a + 1)))
    rot = np.exp(1j * (a + b + 1) * eta / 2)
    return env * w_plus * rot, env * w_minus / rot


def leading_amplitudes(p: SpaceParams, n: int, thetas) -> AmplitudePair:
    """psi^pm_n on theta / s in (0, pi/2] (origin region)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    thetas = np.asarray(thetas, dtype=float)
    eta = thetas / p.s
    if np.any(eta <= 0) or np.any(eta > np.pi / 2 + 1e-15):
        raise ValueError(f"origin expansion needs theta/s in (0, pi/2]; for {p.kind} theta in (0, {p.s * np.pi / 2:.6g}]")
    k = p.s * n
    scale = eigenspace_dims(p, n)[n] / jacobi_at_one(p.alpha, k)
    plus, minus = _hilb_amplitudes(p.alpha, p.beta, k, eta)
    return AmplitudePair(thetas, scale * plus, scale * minus, 1.0, "origin")


def cutlocus_amplitudes(p: SpaceParams, n: int, thetas) -> AmplitudePair:
    """lambda^pm_n on theta in [pi/2, pi) from the (beta, alpha)-swapped expansion at pi - theta."""
    if p.s != 1:
        raise ValueError("cut-locus expansion covers s = 1 kinds only; use leading_amplitudes "
                         "on (0, pi] for the real projective space")
    if n < 1:
        raise ValueError("n must be >= 1")
    thetas = np.asarray(thetas, dtype=float)
    if np.any(thetas < np.pi / 2 - 1e-15) or np.any(thetas >= np.pi):
        raise ValueError("cut-locus expansion needs theta in [pi/2, pi)")
    scale = eigenspace_dims(p, n)[n] / jacobi_at_one(p.alpha, n)
    tp, tm = _hilb_amplitudes(p.beta, p.alpha, n, np.pi - thetas)
    # (-1)^n e^{pm i n (pi - theta)} = e^{-+ i n theta}
    return AmplitudePair(thetas, scale * tm, scale * tp, 1.0, "cutlocus")


def amplitudes(p: SpaceParams, n: int, thetas, region: str) -> AmplitudePair:
    if region == "origin":
        return leading_amplitudes(p, n, thetas)
    if region == "cutlocus":
        return cutlocus_amplitudes(p, n, thetas)
    raise ValueError(f"region must be 'origin' or 'cutlocus', got {region!r}")


def region_grid(p: SpaceParams, region: str, G: int = 2048):
    """Uniform grid covering the region without its singular endpoint."""
    if region == "origin":
        top = p.s * np.pi / 2
        return np.linspace(top / G, top, G)
    return np.linspace(np.pi / 2, np.pi, G + 1)[:-1]


def _distance_to_base(p, thetas, region):
    return thetas if region == "origin" else np.pi - thetas


def expansion_residual(p: SpaceParams, n: int, thetas, region: str = "origin") -> float:
    """sup |Z_n - main term| over grid points at distance >= 1/n from the expansion point."""
    thetas = np.asarray(thetas, dtype=float)
    amp = amplitudes(p, n, thetas, region)
    keep = _distance_to_base(p, thetas, region) >= 1.0 / n
    if not np.any(keep):
        raise ValueError("no grid points at distance >= 1/n from the expansion point")
    resid = zonal_eval(p, n, thetas[keep]) - amp.main_term(n)[keep].real
    return float(np.max(np.abs(resid)))


def residual_table(p: SpaceParams, ns, region="origin", G=2048):
    thetas = region_grid(p, region, G)
    return [(int(n), expansion_residual(p, n, thetas, region)) for n in ns]


def residual_exponent(p: SpaceParams, region: str) -> float:
    """Expected residual growth exponent at expansion order one."""
    return p.d - 2 if region == "origin" else p.beta + p.d / 2 - 1


# ---------------------------------------------------------------- bound constants

def _bracket(x):
    return np.sqrt(1.0 + np.asarray(x) ** 2)


def amplitude_constant(p: SpaceParams, n: int, thetas, region="origin") -> float:
    """sup |amp^pm_n| <n dist>^e / n^g with the exponents of the matching region."""
    amp = amplitudes(p, n, thetas, region)
    dist = _distance_to_base(p, thetas, region)
    if region == "origin":
        e, g = (p.d - 1) / 2, p.d - 1
    else:
        e, g = p.beta + 0.5, p.beta + p.d / 2
    w = _bracket(n * dist) ** e / float(n) ** g
    return float(max(np.max(np.abs(amp.plus) * w), np.max(np.abs(amp.minus) * w)))


def difference_constant(p: SpaceParams, n: int, thetas) -> float:
    """sup |psi^pm_n - psi^pm_{n-1}| <n theta>^{(d-1)/2} / n^{d-2}."""
    a = leading_amplitudes(p, n, thetas)
    b = leading_amplitudes(p, n - 1, thetas)
    w = _bracket(n * thetas) ** ((p.d - 1) / 2) / float(n) ** (p.d - 2)
    return float(max(np.max(np.abs(a.plus - b.plus) * w), np.max(np.abs(a.minus - b.minus) * w)))


def hankel_constants(D: int, r):
    """(sup <r>^{(D-1)/2} |omega^pm|, its value at the largest r) for a bound probe."""
    plus, minus = hankel_split(D, r)
    w = _bracket(r) ** ((D - 1) / 2)
    vals = np.maximum(np.abs(plus), np.abs(minus)) * w
    return float(vals.max()), float(vals[-1])

