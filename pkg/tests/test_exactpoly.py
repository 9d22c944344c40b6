from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from eckardt.exactpoly import (
    BinForm,
    LinearChange,
    Poly,
    PolyError,
    SparseEchelon,
    apply_linear_change,
    binary_gcd,
    binary_square_root,
    determinant,
    graded_basis,
    kernel_and_rank,
    rank_mod_p,
    resultant_binary,
    square_decomposition,
    squarefree_decomposition,
    subresultant_gcd,
    variables,
)

from strategies import forms, invertible, nonzero_binforms, small_frac, small_int


def test_difference_of_squares():
    x0, x1 = variables(2)
    assert (x0 + x1) * (x0 - x1) == x0**2 - x1**2


def test_partial_derivative_of_eckardt_shape():
    x = variables(5)
    assert (x[0] ** 3 + x[0] * x[4] ** 2).diff(4) == 2 * x[0] * x[4]


def test_additive_inverse():
    x = variables(3)
    p = x[0] * x[1] - Fraction(3, 2) * x[2] ** 2
    assert (p + p.scale(-1)).is_zero()


def test_nvars_mismatch_and_bad_derivative():
    with pytest.raises(PolyError):
        variables(2)[0] + variables(3)[0]
    with pytest.raises(PolyError):
        variables(2)[0].diff(2)


def test_linear_change_examples():
    x0, x1 = variables(2)
    swap = LinearChange(((0, 1), (1, 0)))
    assert apply_linear_change(x0**2, swap) == x1**2
    shear = LinearChange(((1, 1), (0, 1)))
    p = x0**3 + x1**3
    # x0 -> x0 + x1, expanded by hand
    assert apply_linear_change(p, shear) == x0**3 + 3 * x0**2 * x1 + 3 * x0 * x1**2 + 2 * x1**3
    assert apply_linear_change(p, LinearChange.identity(2)) == p


def test_singular_linear_change_rejected():
    with pytest.raises(PolyError):
        LinearChange(((1, 2), (2, 4)))


def test_resultant_examples():
    # x2*x3 and x2 - x3: Sylvester [[0,1,0],[1,-1,0],[0,1,-1]] has determinant 1
    assert resultant_binary(BinForm((0, 1, 0)), BinForm((1, -1))) == 1
    assert resultant_binary(BinForm((1, 0, 0)), BinForm((0, 1, 0))) == 0
    a = BinForm((1, 2, -3))
    assert resultant_binary(a, a) == 0
    with pytest.raises(PolyError):
        resultant_binary(BinForm((0, 0)), a)


def test_square_root_examples():
    x2, x3 = variables(2)
    b = BinForm.from_poly(((x2 - x3) * (x2 + 2 * x3)) ** 2)
    assert binary_square_root(b).to_poly() == (x2 - x3) * (x2 + 2 * x3)
    assert binary_square_root(BinForm((1, 0, 0, 0, 1))) is None
    assert binary_square_root(BinForm((1, 0, 0))) == BinForm((1, 0))
    with pytest.raises(PolyError):
        binary_square_root(BinForm((1, 0, 0, 1)))


def test_square_root_root_at_infinity():
    # v^2 (u - v)^2 has the root [1:0] twice
    x2, x3 = variables(2)
    b = BinForm.from_poly((x3 * (x2 - x3)) ** 2 * 5)
    s, r = square_decomposition(b)
    assert s == 5 and r.to_poly() == x2 * x3 - x3**2


def test_kernel_and_rank_examples():
    assert kernel_and_rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == (3, [])
    rank, ker = kernel_and_rank([[0] * 5, [0] * 5])
    assert rank == 0 and len(ker) == 5
    rank, ker = kernel_and_rank([[1, 2], [2, 4]])
    assert rank == 1 and len(ker) == 1
    v = ker[0]
    assert v[0] * -1 == v[1] * 2  # proportional to (2, -1)


def test_graded_basis_counts():
    assert len(graded_basis(5, 1)) == 5
    assert len(graded_basis(5, 2)) == 15
    assert len(graded_basis(3, 4)) == 15
    assert graded_basis(3, 1) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_json_round_trip_is_bit_exact():
    x = variables(3)
    p = Fraction(-7, 3) * x[0] ** 2 * x[2] + x[1] ** 3 - 4
    text = p.dumps()
    assert Poly.loads(text) == p
    assert Poly.loads(text).dumps() == text


def test_json_canonical_order():
    x = variables(2)
    p = x[1] ** 2 + x[0] * x[1] + x[0] ** 2
    assert [t[1] for t in p.to_json()["terms"]] == [[2, 0], [1, 1], [0, 2]]


def test_malformed_json():
    with pytest.raises(PolyError):
        Poly.loads("{nope")
    with pytest.raises(PolyError):
        Poly.from_json({"nvars": 2, "terms": [["1/0", [1, 0]]]})
    with pytest.raises(PolyError):
        Poly.from_json({"nvars": 2, "terms": [["1/1", [1, 0, 0]]]})


def test_exact_division():
    x = variables(3)
    a = x[0] + 2 * x[1]
    b = x[1] ** 2 - x[2] * x[0]
    assert (a * b).exact_div(a) == b
    with pytest.raises(PolyError):
        (a * b + x[2] ** 3).exact_div(a)


def test_squarefree_decomposition():
    # (t-1)^3 (t+2), ascending coefficients
    f = [Fraction(c) for c in (-2, 5, -3, -1, 1)]
    lc, parts = squarefree_decomposition(f)
    assert lc == 1
    assert parts[0] == [2, 1] and parts[1] == [1] and parts[2] == [-1, 1]


def test_rank_mod_p():
    assert rank_mod_p([{0: 1, 1: 2}, {0: 2, 1: 4}], 2) == 1
    assert rank_mod_p([{0: 1}, {1: 3}, {0: 1, 1: 1}], 2) == 2


def test_sparse_echelon_normal_form():
    ech = SparseEchelon(3)
    ech.add({0: 2, 1: 2})
    ech.add({1: 1, 2: -1})
    nf = ech.normal_form({0: Fraction(1)})
    # e0 = (e0 + e1) - (e1 - e2) - e2, so e0 == -e2 modulo the span
    assert nf == {2: Fraction(-1)}


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------

@given(forms(max_degree=2), forms(max_degree=2), forms(max_degree=2))
def test_ring_axioms(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


def _has_common_root(a: BinForm, b: BinForm) -> bool:
    return binary_gcd(a, b).degree >= 1


@given(nonzero_binforms(max_degree=6), nonzero_binforms(max_degree=6))
def test_resultant_vanishes_iff_common_factor(a, b):
    assert (resultant_binary(a, b) == 0) == _has_common_root(a, b)


@given(forms(nvars=3, degree=3), invertible(3))
def test_linear_change_inverse(p, T):
    assert apply_linear_change(apply_linear_change(p, T), T.inverse()) == p


@given(nonzero_binforms(min_degree=1, max_degree=3), small_frac.filter(bool))
def test_square_root_recovers(r, scale):
    b = (r * r).scale(scale)
    root = binary_square_root(b)
    assert root is not None
    # equal up to a rational scalar
    rp, qp = r.to_poly(), root.to_poly()
    e, c = qp.leading_term()
    assert qp.scale(rp.coeff(e) / c) == rp


def _minor_rank(M):
    rows, cols = len(M), len(M[0])
    for k in range(min(rows, cols), 0, -1):
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                if determinant([[M[i][j] for j in cs] for i in rs]) != 0:
                    return k
    return 0


@given(
    st.integers(1, 5).flatmap(
        lambda r: st.integers(1, 5).flatmap(
            lambda c: st.lists(st.lists(small_int, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )
)
def test_kernel_and_rank_against_minors(M):
    rank, ker = kernel_and_rank(M)
    assert rank + len(ker) == len(M[0])
    for v in ker:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in M)
    assert rank == _minor_rank(M)


@given(nonzero_binforms(max_degree=5), nonzero_binforms(max_degree=5))
def test_gcd_divides_both(a, b):
    g = binary_gcd(a, b)
    for f in (a, b):
        f.to_poly().exact_div(g.to_poly())


def test_subresultant_gcd_matches_known():
    # (t-1)(t-2) and (t-1)(t+3)
    a = [Fraction(2), Fraction(-3), Fraction(1)]
    b = [Fraction(-3), Fraction(2), Fraction(1)]
    assert subresultant_gcd(a, b) == [-1, 1]
