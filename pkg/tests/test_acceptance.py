"""Acceptance criteria 1-10 at their stated tolerances.

Each test prints one PASS/FAIL line (collected into the pytest terminal
summary) and then asserts the criterion; nothing is loosened to make a line
pass.  Run directly with ``python tests/test_acceptance.py`` for the lines alone.
"""
from fractions import Fraction

import numpy as np
import pytest

from symharm.fractal import (bilipschitz_probe, dyadic_levels, graph_dimension, union_probe,
                             weierstrass_series)
from symharm.oscillatory import (amplitude_constant, difference_constant, hankel_split,
                                 region_grid, residual_exponent, residual_table)
from symharm.regularity import (bernstein_probe, cesaro_errors, decay_fit, default_scales,
                                holder_exponent, make_test_profile, rate_fit, riesz_errors,
                                riesz_radii, spherical_mean_deviation)
from symharm.schrodinger import (DataSpec, TimeSpec, kernel_constants, revival_error,
                                 talbot_experiment, weyl_sum_probe)
from symharm.spaces import all_reference_spaces, eigenspace_dims, eigenvalue, radial_rule, space_params
from symharm.specfun import bessel
from symharm.spectral import (SpectralCoeffs, analyze, cesaro_kernel, cesaro_kernel_constant,
                              quadrature_profile, synthesize_array, uniform_grid, zonal_eval)

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:                      # direct script run
    ACCEPTANCE_LINES = []

pytestmark = [pytest.mark.acceptance, pytest.mark.slow]
SPACES = all_reference_spaces()
RATE_SPACES = [("sphere", 2), ("cproj", 4), ("hproj", 8)]
GAMMAS = (0.3, 0.5, 0.7)


def report(k, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def _name(p):
    return f"{p.kind}{p.d}"


def _spread(vals):
    return max(vals) / min(vals)


# ---------------------------------------------------------------- 1

TABLE = {  # (alpha, beta, M1, M2, delta*), lambda_n^2 as a function of (n, d)
    "sphere": (lambda d: ((d - 2) / 2, (d - 2) / 2, 0, d - 1, Fraction(d)), lambda n, d: n * (n + d - 1)),
    "rproj": (lambda d: ((d - 2) / 2, (d - 2) / 2, d - 1, 0, Fraction(d)), lambda n, d: 2 * n * (2 * n + d - 1)),
    "cproj": (lambda d: ((d - 2) / 2, 0, d - 2, 1, Fraction(d + 2, 2)), lambda n, d: n * (n + d // 2)),
    "hproj": (lambda d: ((d - 2) / 2, 1, d - 4, 3, Fraction(d + 4, 2)), lambda n, d: n * (n + d // 2 + 1)),
    "cayley": (lambda d: (7, 3, 8, 7, Fraction(12)), lambda n, d: n * (n + 11)),
}


def test_criterion_1_structure_tables():
    bad = []
    n = np.arange(200)
    for p in SPACES:
        consts, lam = TABLE[p.kind]
        if (p.alpha, p.beta, p.M1, p.M2, p.delta_star) != consts(p.d):
            bad.append(_name(p))
        if not np.array_equal(eigenvalue(p, n), lam(n, p.d)):
            bad.append(_name(p) + ":eigenvalues")
    ok = not bad
    report(1, ok, f"{len(SPACES)} reference spaces, all (M1, M2, alpha, beta, lambda_n^2, delta*) exact"
           if ok else f"mismatch in {bad}")
    assert ok


# ---------------------------------------------------------------- 2

def test_criterion_2_spectral_soundness():
    worst = {"orth": 0.0, "roundtrip": 0.0, "parseval": 0.0}
    for p in SPACES:
        rule = radial_rule(p, 256)
        Z = np.array([zonal_eval(p, n, rule.thetas) for n in range(65)])
        d = eigenspace_dims(p, 64)
        gram = (Z * rule.weights) @ Z.T
        worst["orth"] = max(worst["orth"], float(np.max(np.abs(gram - np.diag(d)) / np.sqrt(np.outer(d, d)))))
        rng = np.random.default_rng(11)
        c = rng.standard_normal(65) / np.sqrt(d)
        prof = quadrature_profile(p, lambda th: synthesize_array(p, c, th), 200)
        back = analyze(p, prof, 64).c
        worst["roundtrip"] = max(worst["roundtrip"], float(np.max(np.abs(back - c))))
        mass = float(np.dot(prof.weights, prof.values**2))
        worst["parseval"] = max(worst["parseval"], abs(SpectralCoeffs(p, c).l2_mass() - mass) / mass)
    ok = worst["orth"] < 1e-9 and worst["roundtrip"] < 1e-10 and worst["parseval"] < 1e-10
    report(2, ok, "orthogonality {orth:.1e} (<1e-9, relative to sqrt(d_n d_m)), roundtrip {roundtrip:.1e} "
                  "(<1e-10), Parseval {parseval:.1e} (<1e-10, relative)".format(**worst))
    assert ok


# ---------------------------------------------------------------- 3

def test_criterion_3_cesaro_kernel():
    Ns = (16, 32, 64, 128, 256)
    rows, ok = [], True
    for p in SPACES:
        rule = radial_rule(p, 200)
        mass_err = max(abs(float(np.dot(rule.weights, cesaro_kernel(p, p.delta_star, N, rule.thetas))) - 1)
                       for N in Ns)
        K = cesaro_kernel(p, p.delta_star, 256, uniform_grid(4097))
        neg = float(K.min() / K.max())
        spread = _spread([cesaro_kernel_constant(p, N) for N in Ns])
        good = mass_err < 1e-10 and neg >= -1e-9 and spread < 4
        ok &= good
        rows.append(f"{_name(p)} x{spread:.2f}" + ("" if good else f" [mass {mass_err:.1e}, min/max {neg:.1e}]"))
    report(3, ok, "mass 1 within 1e-10, min/max >= -1e-9 at delta*, weighted-sup constant spread "
                  "over N=16..256 (limit x4): " + ", ".join(rows))
    assert ok


# ---------------------------------------------------------------- 4

@pytest.fixture(scope="module")
def cusp_data():
    # one coefficient set per (space, gamma), shared by criteria 4 and 5
    out = {}
    for key in RATE_SPACES:
        p = space_params(*key)
        for g in GAMMAS:
            out[key, g] = make_test_profile(p, "cusp", g, 1.0, M=4096, G=8192)
    return out


NS = (16, 32, 64, 128, 256, 512)


def _cesaro_fit(data):
    p = data.coeffs.space
    return rate_fit(NS, cesaro_errors(data, p.delta_star, NS, G=8192))


def test_criterion_4_cesaro_rates(cusp_data):
    rows, ok = [], True
    for (key, g), data in cusp_data.items():
        fit = _cesaro_fit(data)
        good = abs(fit.slope + g) <= 0.1 and fit.r2 >= 0.95
        ok &= good
        rows.append(f"{key[0]}{key[1]}/g{g} {fit.slope:.3f} (r2 {fit.r2:.3f})")
    for key in RATE_SPACES:
        p = space_params(*key)
        for g in GAMMAS:
            w = make_test_profile(p, "weierstrass", g, M=1024, G=8192)
            h = holder_exponent(w.profile, default_scales(8192, 1024)).slope
            good = h >= g - 0.1
            ok &= good
            rows.append(f"W {key[0]}{key[1]}/g{g} holder {h:.3f}")
    report(4, ok, "Cesaro slope -gamma +-0.1, r2 >= 0.95, N=16..512; Weierstrass Hoelder >= gamma-0.1: "
           + "; ".join(rows))
    assert ok


# ---------------------------------------------------------------- 5

def test_criterion_5_cross_checks(cusp_data):
    ts = 2.0 ** -np.arange(2, 7)
    rows, ok = [], True
    for (key, g), data in cusp_data.items():
        p = data.coeffs.space
        ces = _cesaro_fit(data).slope
        rsz = rate_fit(NS, riesz_errors(data, p.delta_star, riesz_radii(p, NS), G=8192)).slope
        dev = [spherical_mean_deviation(data.coeffs, t, exact=data.exact, smoothing=p.delta_star) for t in ts]
        sm = decay_fit(ts, dev).slope
        # deviation ~ t^gamma and Cesaro error ~ N^-gamma: compare gamma estimates
        good = abs(rsz - ces) <= 0.1 and abs(sm + ces) <= 0.1
        ok &= good
        rows.append(f"{key[0]}{key[1]}/g{g} cesaro {ces:.3f} riesz {rsz:.3f} mean-dev {sm:.3f}")
    report(5, ok, "Riesz slope and spherical-mean slope (t = 2^-2..2^-6, sign-flipped) within 0.1 of "
                  "Cesaro: " + "; ".join(rows))
    assert ok


# ---------------------------------------------------------------- 6

def test_criterion_6_bernstein():
    rows, ok = [], True
    for p in SPACES:
        spread = _spread([bernstein_probe(p, m, count=100, seed=m) for m in (8, 16, 32, 64, 128, 256)])
        ok &= spread < 3
        rows.append(f"{_name(p)} x{spread:.2f}")
    report(6, ok, "max Bernstein ratio over 100 random polynomials, spread over m=8..256 (limit x3): "
           + ", ".join(rows))
    assert ok


# ---------------------------------------------------------------- 7

OSC_SPACES = [("sphere", 3), ("cproj", 4), ("cayley", 16)]


def test_criterion_7_oscillatory():
    rows, ok = [], True
    recon = 0.0
    for D in range(2, 18):
        r = np.array([0.01, 0.5, 1.5, 5.0, 50.0])
        plus, minus = hankel_split(D, r)
        nu = (D - 2) / 2
        target = (2 * np.pi) ** (D / 2) * bessel("J", nu, r) / r**nu
        recon = max(recon, float(np.max(np.abs(plus * np.exp(1j * r) + minus * np.exp(-1j * r) - target)
                                        / np.abs(target))))
    ok &= recon < 1e-12
    rows.append(f"Hankel reconstruction rel {recon:.1e}")
    ns = (8, 16, 32, 64, 128, 256, 512)
    for key in OSC_SPACES:
        p = space_params(*key)
        for region in ("origin", "cutlocus"):
            th = region_grid(p, region, 2048)
            amp = _spread([amplitude_constant(p, n, th, region) for n in ns])
            good = amp < 5
            extra = ""
            if region == "origin":
                dif = _spread([difference_constant(p, n, th) for n in ns])
                good &= dif < 5
                extra = f" diff x{dif:.2f}"
            table = residual_table(p, ns[1:], region, 2048)
            limit = residual_exponent(p, region) + 0.3
            rel = max(r / np.max(np.abs(zonal_eval(p, n, th))) for n, r in table)
            if rel <= 1e-10:
                # one-term expansion exact for this (alpha, beta); residual is round-off
                slope_txt, slope_ok = f"round-off only (rel {rel:.0e} of sup|Z_n| on region)", True
            else:
                slope = decay_fit(*zip(*table)).slope
                slope_txt, slope_ok = f"slope {slope:.2f} (limit {limit:.1f})", slope <= limit
            good &= slope_ok
            ok &= good
            rows.append(f"{key[0]}{key[1]}/{region} amp x{amp:.2f}{extra} {slope_txt}")
    report(7, ok, "bound constants over n=8..512 (limit x5), residual slopes n=16..512: " + "; ".join(rows))
    assert ok


# ---------------------------------------------------------------- 8

def test_criterion_8_weyl():
    rows, ok = [], True
    Ns = (16, 32, 64, 128, 256, 512, 1024)
    golden = TimeSpec("golden")
    for pg in (0, 1):
        slope = decay_fit(Ns, [weyl_sum_probe(pg, N, golden) for N in Ns]).slope
        ok &= slope <= pg + 0.5 + 0.15
        rows.append(f"probe p={pg} slope {slope:.3f} (limit {pg + 0.65:.2f})")
    for p in SPACES:
        c = np.array([kernel_constants(p, N, golden) for N in (8, 16, 32, 64, 128)])
        s0, s1 = c[:, 0].max() / c[:, 0].min(), c[:, 1].max() / c[:, 1].min()
        ok &= s0 < 10 and s1 < 10
        rows.append(f"{_name(p)} x{s0:.2f}/x{s1:.2f}")
    report(8, ok, "golden t; kernel constants origin/cut-locus over N=8..128 (limit x10): " + ", ".join(rows))
    assert ok


# ---------------------------------------------------------------- 9

def test_criterion_9_talbot():
    p = space_params("sphere", 2)
    data = DataSpec("besov_random", 0.5, np.inf, seed=7)
    f = data.build(p, 1024)
    rev = revival_error(f, G=8192)
    times = [TimeSpec("random", seed=k) for k in range(20)]
    rep = talbot_experiment(p, data, times, 1024, G=8192)
    agg = rep["aggregates"]
    ok = rev <= 1e-10 and agg["median_gamma"] >= 0.35 and agg["median_dim"] <= 1.7 and agg["converged"]
    report(9, ok, f"revival {rev:.1e} (<=1e-10); 20 random times: median Besov exponent "
                  f"{agg['median_gamma']:.3f} (>=0.35), median dimension {agg['median_dim']:.3f} (<=1.7), "
                  f"converged {agg['converged_fraction']:.2f}")
    assert ok


# ---------------------------------------------------------------- 10

def test_criterion_10_fractal():
    th = np.linspace(0, np.pi, 2**17 + 1)
    levels = [np.pi / 2**j for j in range(3, 11)]
    smooth = graph_dimension(th, np.sin(3 * th) + 0.5 * np.cos(th), dyadic_levels(np.pi, 4 * th[1])).dimension
    ok = abs(smooth - 1) <= 0.05
    rows = [f"smooth {smooth:.3f}"]
    for g in (0.3, 0.5):
        dim = graph_dimension(th, weierstrass_series(g, th, K=20), levels).dimension
        ok &= abs(dim - (2 - g)) <= 0.15
        rows.append(f"W{g} {dim:.3f} (target {2 - g})")
    pts = np.stack([th[::4], weierstrass_series(0.5, th[::4], K=20)], axis=1)
    lv = levels[:-1]
    shear = lambda x, y: (x + 0.3 * y, 0.8 * y + 0.1 * np.sin(x))
    b0, b1 = bilipschitz_probe(pts, shear, lv)
    ok &= abs(b0 - b1) <= 0.1
    rows.append(f"bi-Lipschitz diff {abs(b0 - b1):.3f}")
    other = np.stack([th[::4], np.sin(th[::4]) + 4.0], axis=1)
    da, db, du = union_probe(pts, other, lv)
    ok &= abs(du - max(da, db)) <= 0.05
    rows.append(f"union {du:.3f} vs max {max(da, db):.3f}")
    report(10, ok, "; ".join(rows))
    assert ok


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
