import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from eckardt.exactpoly import Poly, kernel_and_rank, variables
from eckardt.fixtures import fix1_pair, fix2_pair, pointwise_generic_pair, POINTWISE_LINE
from eckardt.fibrations import eckardt_project_pointwise
from eckardt.geometry import make_eckardt, normalize_pointwise
from eckardt.jacobian import (
    GradedQuotient,
    InvolutionAction,
    JacobianError,
    eigen_split,
    graded_dim,
    is_smooth_hypersurface,
    jacobian_generators,
    jf2_to_jq4_kernel_dim,
    macaulay_pairing,
    map_JF2_to_JQ4,
    pairing_matrix,
    period_differential_dims,
    polar_quadric_space,
    quartic_cokernel,
    socle_degree,
    tau,
)
from eckardt.samples import random_form, random_smooth_eckardt


@pytest.fixture(scope="module")
def F1():
    return fix1_pair().threefold()


def test_generators_of_fermat_like(F1, x5):
    x = x5
    assert jacobian_generators(F1) == [
        3 * x[0] ** 2 + x[4] ** 2,
        3 * x[1] ** 2,
        3 * x[2] ** 2,
        3 * x[3] ** 2,
        2 * x[0] * x[4],
    ]
    assert jacobian_generators(variables(1)[0] ** 3) == [3 * variables(1)[0] ** 2]
    with pytest.raises(JacobianError):
        jacobian_generators(Poly.zero(3))


def test_graded_dims_fermat_like(F1):
    assert [graded_dim(F1, d) for d in range(7)] == [1, 5, 10, 10, 5, 1, 0]
    assert socle_degree(F1) == 5


def test_graded_dim_of_quadric():
    x = variables(3)
    assert graded_dim(x[0] ** 2 + x[1] ** 2 + x[2] ** 2, 1) == 0


def test_smoothness_examples(F1):
    assert is_smooth_hypersurface(F1)
    assert not is_smooth_hypersurface(fix2_pair().threefold())
    x = variables(3)
    assert not is_smooth_hypersurface(x[0] ** 2 * x[1])
    with pytest.raises(JacobianError):
        is_smooth_hypersurface(x[0] + x[1])


def test_eigen_split_examples(F1):
    assert eigen_split(F1, 1, tau(5, twist=1)) == (4, 1)
    assert eigen_split(F1, 4, tau(5, twist=1)) == (4, 1)
    assert eigen_split(F1, 1, InvolutionAction.parse("diag:+,+,+,+,+")) == (5, 0)


def test_default_twist_swaps(F1):
    # tau has determinant -1, so the default twist is -1
    assert tau().twist == -1
    assert eigen_split(F1, 1, tau()) == (1, 4)


def test_eigen_split_rejects_non_invariant(F1, x5):
    act = InvolutionAction.parse("diag:-,+,+,+,+")
    with pytest.raises(JacobianError):
        eigen_split(F1, 1, act)


def test_involution_parse_errors():
    for bad in ("perm:1,2", "diag:", "diag:+,0"):
        with pytest.raises(JacobianError):
            InvolutionAction.parse(bad)


def test_pairing_nondegenerate(F1):
    M = pairing_matrix(F1, 1, 4)
    assert kernel_and_rank(M)[0] == 5


def test_pairing_with_zero(F1, x5):
    assert macaulay_pairing(F1, x5[1], Poly.zero(5)) == 0
    with pytest.raises(JacobianError):
        macaulay_pairing(F1, x5[1], x5[2])


def test_pairing_character_orthogonality(F1):
    # the socle class of F1 is invariant under x4 -> -x4, so odd and even
    # classes of complementary degrees pair to zero
    gq1 = GradedQuotient.build(F1, 1)
    gq4 = GradedQuotient.build(F1, 4)
    plus1 = [Poly.monomial(m) for m in gq1.basis if m[4] % 2 == 0]
    minus4 = [Poly.monomial(m) for m in gq4.basis if m[4] % 2 == 1]
    assert plus1 and minus4
    assert all(macaulay_pairing(F1, a, b) == 0 for a in plus1 for b in minus4)


def test_polar_quadrics_fermat_like(F1, x5):
    dim, basis = polar_quadric_space(F1)
    assert dim == 3
    # the span is that of 3x1^2, 3x2^2, 3x3^2
    mons = [tuple(2 * (j == i) for j in range(5)) for i in range(5)]
    assert all(b.is_homogeneous() and b.degree == 2 for b in basis)
    assert all(e in mons[1:4] for b in basis for e, _ in b.items())
    assert kernel_and_rank([[b.coeff(m) for m in mons[1:4]] for b in basis])[0] == 3
    with pytest.raises(JacobianError):
        polar_quadric_space(fix2_pair().threefold())


def test_quartic_cokernel_on_fixed_quartic():
    x = variables(3)
    g = x[0] ** 4 + x[1] ** 4 + x[2] ** 4 + x[0] * x[1] * x[2] ** 2
    dim, basis = quartic_cokernel(g * x[0], x[0])
    assert dim == 2
    for b in basis:
        b.exact_div(x[0])
    with pytest.raises(JacobianError):
        quartic_cokernel(g * x[0] + x[1] ** 5, x[0])


def test_map_examples():
    assert map_JF2_to_JQ4((1, 0, 0, 0, 0)) == (1, 0, 0)
    assert map_JF2_to_JQ4((0, 0, 0, 1, 1)) == (0, 0, 0)
    with pytest.raises(JacobianError):
        map_JF2_to_JQ4((1, 2, 3))
    with pytest.raises(JacobianError):
        map_JF2_to_JQ4((1, 0, 0, 0, 0), convention="sideways")


def test_kernel_dim_two_at_generic_line():
    X = make_eckardt(pointwise_generic_pair())
    nf = normalize_pointwise(X, POINTWISE_LINE)
    D = eckardt_project_pointwise(X, POINTWISE_LINE).D
    assert jf2_to_jq4_kernel_dim(nf.F, D, convention="pointwise") == 2


def test_period_differential_fermat_like(F1):
    dims = period_differential_dims(F1)
    assert (dims.invariant_cubic_piece, dims.sym2_eigenspace, dims.cokernel) == (7, 10, 3)
    assert dims.kernel == 0


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------

seeds = st.integers(0, 2**32 - 1)


@settings(max_examples=8)
@given(seeds)
def test_hilbert_series_of_smooth_cubics(seed):
    X = random_smooth_eckardt(random.Random(seed))
    F = X.F
    assert [graded_dim(F, d) for d in range(7)] == [comb(5, d) for d in range(7)]


@settings(max_examples=8)
@given(seeds, st.integers(0, 5))
def test_eigen_split_sums_to_dim(seed, d):
    F = random_smooth_eckardt(random.Random(seed)).F
    for twist in (1, -1):
        plus, minus = eigen_split(F, d, tau(5, twist))
        assert plus + minus == graded_dim(F, d)


@settings(max_examples=5)
@given(seeds)
def test_pairing_rank_random(seed):
    F = random_smooth_eckardt(random.Random(seed)).F
    assert kernel_and_rank(pairing_matrix(F, 1, 4))[0] == 5


def test_pairing_rejects_singular():
    with pytest.raises(JacobianError):
        pairing_matrix(fix2_pair().threefold(), 1, 4)


@settings(max_examples=5)
@given(seeds)
def test_cokernel_constants_random(seed):
    F = random_smooth_eckardt(random.Random(seed)).F
    assert polar_quadric_space(F)[0] == 3


@settings(max_examples=10)
@given(seeds)
def test_reducible_curves_are_singular(seed):
    # two components of a plane curve always meet
    rng = random.Random(seed)
    g, h = random_form(3, 2, rng), random_form(3, 1, rng)
    if g.is_zero() or h.is_zero():
        return
    assert not is_smooth_hypersurface(g * h)
