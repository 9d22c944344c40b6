import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eckardt.exactpoly import BinForm, LinearChange, Poly, apply_linear_change, determinant, is_squarefree
from eckardt.fibrations import (
    FibrationError,
    check_generic,
    det3,
    eckardt_project_pointwise,
    eckardt_project_through_p,
    genericity_report,
    project_line_surface,
    project_line_threefold,
    project_point_surface,
)
from eckardt.fixtures import (
    FIX1_LINE,
    FIX3_POINT,
    POINTWISE_LINE,
    fermat_surface,
    fix3_line,
    pointwise_collision_pair,
    pointwise_generic_pair,
)
from eckardt.geometry import CubicPair, GeometryError, LineInP, find_lines_numeric, make_eckardt
from eckardt.jacobian import is_smooth_hypersurface, restrict_to_hyperplane
from eckardt.samples import (
    random_form,
    random_pointwise_instance,
    random_through_p_instance,
)

seeds = st.integers(0, 2**32 - 1)


def sylvester_resultant(a: BinForm, b: BinForm) -> Fraction:
    """Independent oracle: Sylvester determinant from the coefficient lists."""
    m, n = a.degree, b.degree
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(a.coeffs) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(b.coeffs) + [0] * (size - n - 1 - i))
    return determinant(rows)


# ---------------------------------------------------------------------------
# projection from a point of a surface
# ---------------------------------------------------------------------------

def test_point_off_lines_gives_smooth_quartic(X3):
    data = project_point_surface(X3.f, FIX3_POINT[:4])
    assert data.quartic.degree == 4
    assert is_smooth_hypersurface(data.quartic)


def test_point_on_line_gives_singular_quartic():
    data = project_point_surface(fermat_surface(), (1, -1, 0, 0))
    assert not is_smooth_hypersurface(data.quartic)


def test_point_projection_reassembles(X3):
    data = project_point_surface(X3.f, FIX3_POINT[:4])
    assert data.surface() == apply_linear_change(X3.f, data.T)
    k, q, c = data.k, data.q, data.c
    (a, b), (b2, d) = data.N
    assert a * d - b * b2 == data.quartic == k * c - q * q


def test_point_projection_errors(X3):
    with pytest.raises(FibrationError):
        project_point_surface(X3.f, (1, 0, 0, 0))


@pytest.mark.parametrize("pt", [(1, -1, 0, 0), (0, 0, 1, -1), (1, -1, 1, -1), (1, -1, 2, -2), (1, 0, 0, -1)])
def test_points_on_fermat_lines_give_singular_quartics(pt):
    assert not is_smooth_hypersurface(project_point_surface(fermat_surface(), pt).quartic)


@pytest.mark.parametrize("seed", range(5))
def test_quartic_smooth_iff_point_off_lines(seed):
    rng = random.Random(seed)
    while True:
        f = random_form(4, 3, rng, skip={(0, 0, 0, 3)})
        if is_smooth_hypersurface(f):
            break
    e = (0, 0, 0, 1)
    on_line = any(m.contains_point(e) for m in find_lines_numeric(f))
    assert is_smooth_hypersurface(project_point_surface(f, e).quartic) == (not on_line)


# ---------------------------------------------------------------------------
# projection from a line of a surface or threefold
# ---------------------------------------------------------------------------

def test_surface_line_projection_fix1(X1):
    proj = project_line_surface(X1.f, FIX1_LINE, X1.l)
    assert (proj.D.degree, proj.Q.degree, proj.B.degree) == (5, 2, 4)
    assert det3(proj.M) == proj.D.to_poly()
    # B is minus the discriminant in x1 of S restricted to x0 = 0
    Sn = apply_linear_change(X1.f, proj.T).set_zero(0)
    parts = Sn.split_by([1])
    a2 = parts[(2,)].drop_var(0)
    a1 = parts.get((1,), Poly.zero(3)).drop_var(0).scale(Fraction(1, 2))
    a0 = parts[(0,)].drop_var(0)
    assert proj.B.to_poly() == a2 * a0 - a1 * a1


def test_surface_line_projection_requires_line(X3):
    with pytest.raises(FibrationError):
        project_line_surface(X3.f, FIX1_LINE)


def test_threefold_slice_matches_surface(X1):
    ln5 = LineInP(FIX1_LINE.A + (0,), FIX1_LINE.B + (0,))
    bundle = project_line_threefold(X1.F, ln5)
    surf = project_line_surface(X1.f, FIX1_LINE)
    assert bundle.discriminant.degree == 5
    for i in range(3):
        for j in range(3):
            assert bundle.M[i][j].set_zero(2).drop_var(2) == surf.M[i][j]


def test_threefold_corank_at_most_two(X1):
    ln5 = LineInP(FIX1_LINE.A + (0,), FIX1_LINE.B + (0,))
    M = project_line_threefold(X1.F, ln5).M
    rng = np.random.default_rng(0)
    for pt in rng.standard_normal((200, 3)):
        vals = np.array([[float(e.evaluate(tuple(pt))) if e else 0.0 for e in row] for row in M])
        assert np.linalg.matrix_rank(vals, tol=1e-9) >= 1


def test_threefold_projection_requires_line(X1):
    with pytest.raises(FibrationError):
        project_line_threefold(X1.F, LineInP((1, 0, 0, 0, 0), (0, 1, 0, 0, 1)))


# ---------------------------------------------------------------------------
# Eckardt projections
# ---------------------------------------------------------------------------

def test_through_p_fix3(X3):
    proj = eckardt_project_through_p(X3, fix3_line())
    assert proj.bundle.discriminant == proj.l * proj.C
    assert proj.quartic_smooth() and proj.line_transverse()
    r = restrict_to_hyperplane(proj.C, proj.L)
    assert is_squarefree(BinForm.from_poly(r, 4))


def test_bitangency_identity(X3):
    proj = eckardt_project_through_p(X3, fix3_line())
    qk = restrict_to_hyperplane(proj.q, proj.k)
    assert restrict_to_hyperplane(proj.C, proj.k) == (qk * qk).scale(-1)


@settings(max_examples=10)
@given(seeds)
def test_through_p_factorization_random(seed):
    X, ln = random_through_p_instance(random.Random(seed))
    proj = eckardt_project_through_p(X, ln)
    assert det3(proj.bundle.M) - proj.l * (proj.k * proj.c - proj.q * proj.q) == Poly.zero(3)


def test_pointwise_generic_fixture():
    X = make_eckardt(pointwise_generic_pair())
    proj = eckardt_project_pointwise(X, POINTWISE_LINE)
    D = proj.D
    assert D == proj.expansion()
    assert proj.m.degree == 3 and proj.n.degree == 5
    assert apply_linear_change(D, LinearChange.diagonal([1, 1, -1])) == D
    assert D.evaluate((0, 0, 1)) == 0
    assert proj.slice.to_poly() == proj.n


@settings(max_examples=10)
@given(seeds)
def test_pointwise_expansion_random(seed):
    X, ln = random_pointwise_instance(random.Random(seed))
    proj = eckardt_project_pointwise(X, ln)
    assert proj.expansion() == proj.D
    assert proj.D.evaluate((0, 0, 1)) == 0


@settings(max_examples=10)
@given(seeds)
def test_sextic_factors_into_degeneracy_forms(seed):
    X, ln = random_pointwise_instance(random.Random(seed))
    proj = eckardt_project_pointwise(X, ln)
    assert proj.m * proj.m + proj.l3 * proj.n == proj.Q.to_poly() * proj.B.to_poly()


def test_pointwise_rejects_through_p(X3):
    with pytest.raises(GeometryError):
        eckardt_project_pointwise(X3, fix3_line())


# ---------------------------------------------------------------------------
# genericity of the degeneracy forms
# ---------------------------------------------------------------------------

def test_generic_fixture_is_generic():
    X = make_eckardt(pointwise_generic_pair())
    rep = genericity_report(X, POINTWISE_LINE)
    assert rep.resultant == sylvester_resultant(rep.Q, rep.B) != 0
    assert check_generic(X, POINTWISE_LINE)


def test_collision_fixture_is_not_generic():
    X = make_eckardt(pointwise_collision_pair())
    rep = genericity_report(X, POINTWISE_LINE)
    assert sylvester_resultant(rep.Q, rep.B) == 0
    assert not check_generic(X, POINTWISE_LINE)


def test_fix1_verdict_agrees_with_sylvester_oracle(X1):
    rep = genericity_report(X1, FIX1_LINE)
    assert rep.resultant == sylvester_resultant(rep.Q, rep.B)
    assert check_generic(X1, FIX1_LINE) == (sylvester_resultant(rep.Q, rep.B) != 0)


@settings(max_examples=15)
@given(
    st.fractions(min_value=-9, max_value=9, max_denominator=9).filter(bool),
    st.fractions(min_value=-9, max_value=9, max_denominator=9).filter(bool),
    st.sampled_from([pointwise_generic_pair, pointwise_collision_pair]),
)
def test_genericity_scale_invariant(a, b, make_pair):
    pair = make_pair()
    base = check_generic(make_eckardt(pair), POINTWISE_LINE)
    scaled = make_eckardt(CubicPair(pair.f.scale(a), pair.l.scale(b)))
    assert check_generic(scaled, POINTWISE_LINE) == base
