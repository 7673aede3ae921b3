from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from symharm.spaces import (KINDS, REFERENCE_DIMS, all_reference_spaces, density, eigenspace_dim,
                            eigenspace_dim_exact, eigenspace_dims, eigenvalue, radial_rule,
                            space_params)

# (kind, d) -> (alpha, beta, s, M1, M2, delta_star), typed in from the structure tables
TABLE = {
    ("sphere", 2): (0, 0, 1, 0, 1, 2), ("sphere", 3): (0.5, 0.5, 1, 0, 2, 3),
    ("sphere", 5): (1.5, 1.5, 1, 0, 4, 5),
    ("rproj", 2): (0, 0, 2, 1, 0, 2), ("rproj", 3): (0.5, 0.5, 2, 2, 0, 3),
    ("cproj", 4): (1, 0, 1, 2, 1, 3), ("cproj", 6): (2, 0, 1, 4, 1, 4),
    ("hproj", 8): (3, 1, 1, 4, 3, 6), ("hproj", 12): (5, 1, 1, 8, 3, 8),
    ("cayley", 16): (7, 3, 1, 8, 7, 12),
}

# eigenvalue forms per kind, as functions of (n, d)
EIGEN = {
    "sphere": lambda n, d: n * (n + d - 1),
    "rproj": lambda n, d: 2 * n * (2 * n + d - 1),
    "cproj": lambda n, d: n * (n + d // 2),
    "hproj": lambda n, d: n * (n + d // 2 + 1),
    "cayley": lambda n, d: n * (n + 11),
}


@pytest.mark.parametrize("key", sorted(TABLE))
def test_structure_table(key):
    p = space_params(*key)
    a, b, s, m1, m2, ds = TABLE[key]
    assert (p.alpha, p.beta, p.s, p.M1, p.M2) == (a, b, s, m1, m2)
    assert p.delta_star == Fraction(ds)
    assert p.M1 + p.M2 + 1 == p.d
    n = np.arange(50)
    assert np.array_equal(eigenvalue(p, n), EIGEN[p.kind](n, p.d))


@pytest.mark.parametrize("kind,d,msg", [("cproj", 3, "even"), ("cproj", 2, "even"), ("hproj", 10, "multiple of 4"),
                                        ("cayley", 8, "16"), ("sphere", 1, ">= 2")])
def test_inadmissible(kind, d, msg):
    with pytest.raises(ValueError, match=msg):
        space_params(kind, d)


def test_unknown_kind():
    with pytest.raises(ValueError, match="unknown space kind"):
        space_params("torus", 2)


def test_reference_catalog():
    got = {(p.kind, p.d) for p in all_reference_spaces()}
    assert got == {(k, d) for k in KINDS for d in REFERENCE_DIMS[k]}


@pytest.mark.parametrize("p", all_reference_spaces(), ids=lambda p: f"{p.kind}{p.d}")
def test_density_normalized(p):
    x, w = np.polynomial.legendre.leggauss(200)
    val = np.pi / 2 * np.dot(w, density(p, np.pi / 2 * (x + 1)))
    assert abs(val - 1) < 1e-12
    assert density(p, 0.0) == 0.0


def test_density_sphere2_closed_form():
    p = space_params("sphere", 2)
    th = np.linspace(0, np.pi, 17)
    assert np.allclose(density(p, th), np.sin(th) / 2, atol=1e-15)


def test_density_domain():
    with pytest.raises(ValueError):
        density(space_params("sphere", 2), 4.0)


@pytest.mark.parametrize("p", all_reference_spaces(), ids=lambda p: f"{p.kind}{p.d}")
def test_dimensions_match_closed_form(p):
    dims = eigenspace_dims(p, 200)
    assert dims[0] == 1
    exact = [eigenspace_dim_exact(p, n) for n in range(201)]
    assert np.array_equal(dims, np.array(exact, dtype=float))
    # d_n ~ c (1 + n)^{d-1}: the ratio settles, though c is tiny for large alpha + beta
    ratio = dims[1:] / (1.0 + np.arange(1, 201)) ** (p.d - 1)
    tail = ratio[99:]
    assert np.all(ratio > 0) and tail.max() / tail.min() < 1.5


def test_dimension_examples():
    assert eigenspace_dim(space_params("sphere", 2), 1) == 3
    # degree-2n harmonics on S^2: 4n + 1
    assert [int(v) for v in eigenspace_dims(space_params("rproj", 2), 4)] == [1, 5, 9, 13, 17]


def test_dimension_with_explicit_rule():
    p = space_params("hproj", 8)
    assert eigenspace_dim(p, 10, radial_rule(p, 40)) == pytest.approx(eigenspace_dim_exact(p, 10), rel=1e-12)
    with pytest.raises(ValueError, match="under-resolved"):
        eigenspace_dim(p, 10, radial_rule(p, 5))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(all_reference_spaces()), st.integers(0, 120))
def test_reproducing_identity(p, n):
    rule = radial_rule(p, n + 8)
    from symharm.spectral import zonal_eval
    phi = zonal_eval(p, n, rule.thetas) / eigenspace_dims(p, n)[n]
    assert abs(np.dot(rule.weights, phi**2) * eigenspace_dims(p, n)[n] - 1) < 1e-9


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(KINDS), st.integers(2, 40))
def test_admissible_invariants(kind, d):
    try:
        p = space_params(kind, d)
    except ValueError:
        return
    assert p.M1 + p.M2 + 1 == d
    if kind != "cayley":
        assert p.alpha == (d - 2) / 2
    lam = eigenvalue(p, np.arange(30))
    assert lam[0] == 0 and np.all(np.diff(lam) > 0)
