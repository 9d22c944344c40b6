import cmath
import random
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eckardt.covers import (
    CoverError,
    CoverSpec,
    all_orderings_j,
    base_genus,
    binary_quartic_j,
    elliptic_curve_j,
    elliptic_j,
    find_rational_point,
    fixed_point_count,
    j_from_lambda,
    klein_tower,
    mumford_match,
    quotient_sextic,
    riemann_hurwitz,
)
from eckardt.exactpoly import BinForm, Poly, is_squarefree, variables
from eckardt.fibrations import eckardt_project_pointwise
from eckardt.fixtures import POINTWISE_LINE, pointwise_collision_pair, pointwise_generic_pair
from eckardt.geometry import make_eckardt


def binform_from_roots(roots) -> BinForm:
    """Product of (v*r - u) over finite roots and v over infinite ones."""
    u, v = variables(2)
    p = Poly.monomial((0, 0))
    for r in roots:
        p = p * (v if r is None else (v.scale(r) - u))
    return BinForm.from_poly(p, len(roots))


@pytest.fixture(scope="module")
def generic_proj():
    return eckardt_project_pointwise(make_eckardt(pointwise_generic_pair()), POINTWISE_LINE)


def test_riemann_hurwitz_examples():
    assert riemann_hurwitz(6, 2, 0) == 11
    assert riemann_hurwitz(2, 2, 6) == 6
    assert riemann_hurwitz(3, 2, 4) == 7
    assert riemann_hurwitz(3, 2, 4) - 3 == 4
    with pytest.raises(CoverError):
        riemann_hurwitz(0, 2, 1)
    with pytest.raises(CoverError):
        riemann_hurwitz(0, 3, 0)


def test_base_genus_inverts():
    assert base_genus(11, 2, 0) == 6
    assert base_genus(6, 2, 6) == 2
    with pytest.raises(CoverError):
        base_genus(2, 2, 1)


def test_cover_spec():
    spec = CoverSpec(3, branch_count=4)
    assert (spec.genus, spec.prym_dimension) == (7, 4)
    with pytest.raises(CoverError):
        CoverSpec(0, branch_count=3)


def test_klein_tower_counts():
    assert klein_tower().as_tuple() == (11, 3, 6, 6, 2)


def test_klein_tower_rejects_all_etale():
    with pytest.raises(CoverError):
        klein_tower(branch_asigma=0, branch_bi=0, branch_bsigmaiota=0)


def test_dimension_sum():
    t = klein_tower()
    assert 1 + (t.g_Dsigmaiota - t.g_Dbar) == 5


@given(st.integers(1, 20), st.integers(0, 10))
def test_riemann_hurwitz_round_trip(g, half_ram):
    g_cover = riemann_hurwitz(g, 2, 2 * half_ram)
    assert 2 * g_cover - 2 == 2 * (2 * g - 2) + 2 * half_ram
    assert base_genus(g_cover, 2, 2 * half_ram) == g


def test_tower_edges_satisfy_riemann_hurwitz():
    t = klein_tower()
    edges = [
        (t.g_Dtilde, t.g_D, 0),
        (t.g_Dtilde, t.g_Dsigma, 12),
        (t.g_Dtilde, t.g_Dsigmaiota, 0),
        (t.g_D, t.g_Dbar, 6),
        (t.g_Dsigma, t.g_Dbar, 0),
        (t.g_Dsigmaiota, t.g_Dbar, 6),
    ]
    for top, bottom, ram in edges:
        assert 2 * top - 2 == 2 * (2 * bottom - 2) + ram


def test_sextic_of_generic_fixture(generic_proj):
    p = generic_proj
    delta = quotient_sextic(p.l3, p.m, p.n)
    assert delta.degree == 6
    assert delta.to_poly() == p.m * p.m + p.l3 * p.n
    assert len(delta.roots()) == 6
    assert is_squarefree(delta)


def test_sextic_of_collision_fixture_is_degenerate():
    p = eckardt_project_pointwise(make_eckardt(pointwise_collision_pair()), POINTWISE_LINE)
    assert not is_squarefree(quotient_sextic(p.l3, p.m, p.n))


def test_sextic_degree_errors():
    s, t = variables(2)
    with pytest.raises(CoverError):
        quotient_sextic(s * s, s**3, s**5)


def test_fixed_points_generic(generic_proj):
    assert fixed_point_count(generic_proj.D, generic_proj.slice) == 6
    assert generic_proj.D.evaluate((0, 0, 1)) == 0
    with pytest.raises(CoverError):
        fixed_point_count(generic_proj.D, binform_from_roots([0, 0, 1, 2, 3]))


def test_j_special_values():
    assert j_from_lambda(-1) == pytest.approx(1728)
    assert elliptic_j([0, 1, -1, None]) == pytest.approx(1728)
    w = cmath.exp(2j * cmath.pi / 3)
    assert abs(elliptic_j([1, w, w * w, None])) < 1e-9
    with pytest.raises(CoverError):
        elliptic_j([0, 1, 1, 2])


@settings(max_examples=30)
@given(st.lists(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False), min_size=4, max_size=4))
def test_j_is_ordering_invariant(pts):
    if min(abs(a - b) for a, b in combinations(pts, 2)) < 1e-2:
        return
    js = all_orderings_j(pts)
    ref = js[0]
    assert all(abs(j - ref) <= 1e-7 * max(1.0, abs(ref)) for j in js)


@settings(max_examples=100)
@given(st.integers(0, 2**32 - 1))
def test_j_is_mobius_invariant(seed):
    rng = np.random.default_rng(seed)
    pts = list(rng.standard_normal(4) + 1j * rng.standard_normal(4))
    a, b, c, d = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    if abs(a * d - b * c) < 1e-2 or min(abs(x - y) for x, y in combinations(pts, 2)) < 1e-2:
        return
    moved = [((a * z + b), (c * z + d)) for z in pts]
    j0, j1 = elliptic_j(pts), elliptic_j(moved)
    assert abs(j0 - j1) <= 1e-9 * max(1.0, abs(j0))


def test_binary_quartic_j():
    assert binary_quartic_j(binform_from_roots([0, 1, -1, None])) == pytest.approx(1728)
    with pytest.raises(CoverError):
        binary_quartic_j(binform_from_roots([0, 0, 1, 2]))


def test_plane_cubic_j_legendre():
    # y^2 z = x (x - z)(x + z) inside x0 = 0, with y = x1, x = x2, z = x3
    x = variables(4)
    f = x[1] ** 2 * x[3] - x[2] ** 3 + x[2] * x[3] ** 2
    for e in [(0, 1, 0, 0), (0, 0, 0, 1), (0, 0, 1, 1)]:
        assert elliptic_curve_j(f, x[0], e) == pytest.approx(1728)


def test_plane_cubic_j_fermat_like(X3):
    e = find_rational_point(X3.f, X3.l)
    assert X3.f.evaluate(e) == 0 and X3.l.evaluate(e) == 0
    assert abs(elliptic_curve_j(X3.f, X3.l, e)) < 1e-6


def test_plane_cubic_rejects_point_off_curve(X3):
    with pytest.raises(CoverError):
        elliptic_curve_j(X3.f, X3.l, (1, 0, 0, 0))


def test_mumford_synthetic():
    # four roots with j = 1728 and two extra roots
    delta = binform_from_roots([0, 1, -1, None, 2, 3])
    rep = mumford_match(delta, 1728.0)
    assert len(rep.splits) == 15
    assert rep.matching
    for s in rep.matching:
        quartet = {rep.roots[i] for i in s.quartet}
        assert abs(elliptic_j(list(quartet)) - 1728) < 1e-6 * 1728


def test_mumford_generic_fixture(generic_proj):
    p = generic_proj
    delta = quotient_sextic(p.l3, p.m, p.n)
    X = make_eckardt(pointwise_generic_pair())
    e = find_rational_point(X.f, X.l, avoid=[(1, 0, 0, 0)])
    rep = mumford_match(delta, elliptic_curve_j(X.f, X.l, e))
    assert 1 <= len(rep.matching) <= 15


def test_mumford_rejects_repeated_roots():
    with pytest.raises(CoverError):
        mumford_match(binform_from_roots([0, 0, 1, 2, 3, 4]), 0.0)


def _affine(root) -> complex | None:
    u, v = root
    return None if abs(v) < 1e-12 else complex(np.round(u / v, 6))


def _matching_subsets(rep) -> set[frozenset]:
    return {frozenset(_affine(rep.roots[i]) for i in s.quartet) for s in rep.matching}


def test_mumford_relabeling_invariant():
    roots = [0, 1, -1, None, 2, 3]
    base = _matching_subsets(mumford_match(binform_from_roots(roots), 1728.0))
    rng = random.Random(0)
    for _ in range(5):
        rng.shuffle(roots)
        assert _matching_subsets(mumford_match(binform_from_roots(roots), 1728.0)) == base
