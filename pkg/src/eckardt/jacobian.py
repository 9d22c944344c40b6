"""Jacobian rings ``Q[x]/(dF/dx_i)`` of homogeneous forms.

Graded pieces are computed as quotients of monomial spaces by the span of
``monomial * partial`` products, using exact sparse echelon forms. Smoothness
is decided by vanishing of the piece just above the socle degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exactpoly import (
    Exp,
    LinearChange,
    Poly,
    PolyError,
    SparseEchelon,
    apply_linear_change,
    graded_basis,
    kernel_and_rank,
    monomial_index,
    rank_mod_p,
)


class JacobianError(ValueError):
    pass


def jacobian_generators(F: Poly) -> list[Poly]:
    if F.is_zero():
        raise JacobianError("the zero form has no Jacobian ideal")
    if not F.is_homogeneous():
        raise JacobianError("form must be homogeneous")
    return F.gradient()


def socle_degree(F: Poly) -> int:
    return F.nvars * (F.degree - 2)


def _generator_rows(F: Poly, d: int) -> list[dict[int, Fraction]]:
    """Coefficient rows of ``m * dF/dx_i`` spanning the degree-``d`` piece of J_F."""
    n = F.nvars
    e = F.degree - 1
    if d < e:
        return []
    idx = monomial_index(n, d)
    rows = []
    grads = [g for g in jacobian_generators(F) if g]
    for m in graded_basis(n, d - e):
        for g in grads:
            row: dict[int, Fraction] = {}
            for ge, c in g.items():
                row[idx[tuple(a + b for a, b in zip(m, ge))]] = c
            rows.append(row)
    return rows


def _integral(row: dict[int, Fraction]) -> dict[int, int]:
    from math import lcm

    den = lcm(*(c.denominator for c in row.values())) if row else 1
    return {k: int(c * den) for k, c in row.items()}


@dataclass
class GradedQuotient:
    """The degree-``d`` piece of the Jacobian ring of ``F``."""

    F: Poly
    d: int
    echelon: SparseEchelon = field(repr=False)
    monomials: tuple[Exp, ...] = field(repr=False)

    @classmethod
    def build(cls, F: Poly, d: int) -> "GradedQuotient":
        return _graded_quotient(F, d)

    @property
    def dim(self) -> int:
        return len(self.monomials) - self.echelon.rank

    @property
    def basis(self) -> list[Exp]:
        """Monomials whose classes form a basis (the non-pivot columns)."""
        piv = set(self.echelon.pivots())
        return [m for i, m in enumerate(self.monomials) if i not in piv]

    def vector(self, p: Poly) -> dict[int, Fraction]:
        if p.nvars != self.F.nvars:
            raise JacobianError("variable count mismatch")
        if p and (not p.is_homogeneous() or p.degree != self.d):
            raise JacobianError(f"expected a form of degree {self.d}")
        idx = monomial_index(self.F.nvars, self.d)
        return {idx[e]: c for e, c in p.items()}

    def normal_form(self, p: Poly) -> Poly:
        nf = self.echelon.normal_form(self.vector(p))
        return Poly(self.F.nvars, {self.monomials[i]: c for i, c in nf.items()})

    def coordinates(self, p: Poly) -> list[Fraction]:
        """Coordinates of the class of ``p`` in :attr:`basis`."""
        nf = self.echelon.normal_form(self.vector(p))
        piv = set(self.echelon.pivots())
        return [nf.get(i, Fraction(0)) for i in range(len(self.monomials)) if i not in piv]

    def contains(self, p: Poly) -> bool:
        """Whether ``p`` lies in the degree-``d`` piece of the Jacobian ideal."""
        return not self.echelon.normal_form(self.vector(p))


@lru_cache(maxsize=256)
def _graded_quotient(F: Poly, d: int) -> GradedQuotient:
    if d < 0:
        raise JacobianError("degree must be non-negative")
    mons = graded_basis(F.nvars, d)
    ech = SparseEchelon(len(mons))
    for row in _generator_rows(F, d):
        ech.add(_integral(row))
        if ech.rank == len(mons):
            break
    return GradedQuotient(F, d, ech, mons)


def graded_dim(F: Poly, d: int) -> int:
    jacobian_generators(F)
    return _graded_quotient(F, d).dim


@lru_cache(maxsize=512)
def _is_smooth(F: Poly) -> bool:
    d = socle_degree(F) + 1
    ncols = len(graded_basis(F.nvars, d))
    rows = [_integral(r) for r in _generator_rows(F, d)]
    # Full rank modulo a prime certifies full rank over Q.
    if rank_mod_p(rows, ncols) == ncols:
        return True
    return _graded_quotient(F, d).dim == 0


def is_smooth_hypersurface(F: Poly) -> bool:
    """True iff ``V(F)`` is smooth, i.e. the Jacobian ring is Artinian."""
    jacobian_generators(F)
    if F.degree < 2:
        raise JacobianError("smoothness test needs degree >= 2")
    return _is_smooth(F)


@dataclass(frozen=True)
class InvolutionAction:
    """Linear involution acting by ``p -> p(T x)``, with a sign character ``twist``."""

    T: LinearChange
    twist: int | None = None

    def __post_init__(self):
        if self.T @ self.T != LinearChange.identity(self.T.n):
            raise JacobianError("matrix is not an involution")
        if self.twist is None:
            object.__setattr__(self, "twist", 1 if self.T.det() > 0 else -1)
        if self.twist not in (1, -1):
            raise JacobianError("twist must be +1 or -1")

    @classmethod
    def diagonal(cls, signs: Sequence[int], twist: int | None = None) -> "InvolutionAction":
        return cls(LinearChange.diagonal(list(signs)), twist)

    @classmethod
    def parse(cls, text: str, twist: int | None = None) -> "InvolutionAction":
        """Parse ``diag:+,+,+,+,-``."""
        kind, _, body = text.partition(":")
        if kind != "diag" or not body:
            raise JacobianError(f"unsupported involution spec {text!r}")
        signs = []
        for tok in body.split(","):
            tok = tok.strip()
            if tok in ("+", "+1", "1"):
                signs.append(1)
            elif tok in ("-", "-1"):
                signs.append(-1)
            else:
                raise JacobianError(f"bad sign {tok!r}")
        return cls.diagonal(signs, twist)

    def apply(self, p: Poly) -> Poly:
        return apply_linear_change(p, self.T)


def tau(nvars: int = 5, twist: int | None = None) -> InvolutionAction:
    """Sign change of the last coordinate."""
    return InvolutionAction.diagonal([1] * (nvars - 1) + [-1], twist)


def _rank(rows: list[dict[int, Fraction]], ncols: int) -> int:
    ech = SparseEchelon(ncols)
    for r in rows:
        if r:
            ech.add(_integral(r))
    return ech.rank


def eigen_split(F: Poly, d: int, act: InvolutionAction) -> tuple[int, int]:
    """Dimensions of the (+1, -1) eigenspaces on the degree-``d`` piece.

    The twist character multiplies the action, so ``twist=-1`` swaps the pair.
    """
    if act.T.n != F.nvars:
        raise JacobianError("involution size does not match variables")
    if act.apply(F) != F:
        raise JacobianError("form is not invariant under the involution")
    n = F.nvars
    mons = graded_basis(n, d)
    ncols = len(mons)
    idx = monomial_index(n, d)
    gens = _generator_rows(F, d)
    dims = []
    if act.T.is_diagonal():
        diag = [act.T.matrix[i][i] for i in range(n)]
        sign = [1 if _mono_sign(m, diag) > 0 else -1 for m in mons]
        for s in (1, -1):
            v_dim = sum(1 for x in sign if x == s)
            j_rows = [{k: c for k, c in g.items() if sign[k] == s} for g in gens]
            dims.append(v_dim - _rank(j_rows, ncols))
    else:
        def image(vec: dict[int, Fraction], s: int) -> dict[int, Fraction]:
            p = Poly(n, {mons[k]: c for k, c in vec.items()})
            q = p + act.apply(p).scale(s)
            return {idx[e]: c for e, c in q.items()}

        for s in (1, -1):
            v_rows = [image({k: Fraction(1)}, s) for k in range(ncols)]
            j_rows = [image(g, s) for g in gens]
            dims.append(_rank(v_rows, ncols) - _rank(j_rows, ncols))
    plus, minus = dims
    return (plus, minus) if act.twist == 1 else (minus, plus)


def _mono_sign(m: Exp, diag: Sequence[Fraction]) -> Fraction:
    out = Fraction(1)
    for x, k in zip(diag, m):
        if k:
            out *= x**k
    return out


def _require_smooth(F: Poly) -> None:
    if not is_smooth_hypersurface(F):
        raise JacobianError("form is singular")


def socle_generator(F: Poly) -> Exp:
    """First monomial in canonical order with nonzero class in the socle degree."""
    _require_smooth(F)
    gq = _graded_quotient(F, socle_degree(F))
    for m in gq.monomials:
        if not gq.contains(Poly.monomial(m)):
            return m
    raise JacobianError("socle is zero")


def macaulay_pairing(F: Poly, a: Poly, b: Poly) -> Fraction:
    """Coefficient of the class of ``a*b`` against the fixed socle generator."""
    _require_smooth(F)
    s = socle_degree(F)
    prod = a * b
    if prod.is_zero():
        return Fraction(0)
    if not prod.is_homogeneous() or prod.degree != s:
        raise JacobianError(f"degrees must add to the socle degree {s}")
    gq = _graded_quotient(F, s)
    (ref,) = gq.coordinates(Poly.monomial(socle_generator(F)))
    (val,) = gq.coordinates(prod)
    return val / ref


def pairing_matrix(F: Poly, da: int, db: int | None = None) -> list[list[Fraction]]:
    """Matrix of the pairing between quotient bases in degrees ``da`` and ``db``."""
    s = socle_degree(F)
    db = s - da if db is None else db
    ba = [Poly.monomial(m) for m in _graded_quotient(F, da).basis]
    bb = [Poly.monomial(m) for m in _graded_quotient(F, db).basis]
    return [[macaulay_pairing(F, x, y) for y in bb] for x in ba]


# ---------------------------------------------------------------------------
# Eckardt-shape helpers
# ---------------------------------------------------------------------------

def split_eckardt_form(F: Poly) -> tuple[Poly, Poly]:
    """Write ``F = f + l * x_last^2`` and return ``(f, l)`` in the first n-1 variables."""
    n = F.nvars
    if F.degree != 3 or not F.is_homogeneous():
        raise JacobianError("expected a cubic form")
    parts = F.split_by([n - 1])
    if set(parts) - {(0,), (2,)}:
        raise JacobianError("last variable must occur only squared")
    f = parts.get((0,), Poly.zero(n - 1))
    l = parts.get((2,), Poly.zero(n - 1))
    if l.is_zero():
        raise JacobianError("missing the x_last^2 term")
    return f, l


def polar_quadric_space(F: Poly) -> tuple[int, list[Poly]]:
    """Elements of the degree-2 Jacobian piece involving only the first n-1 variables."""
    split_eckardt_form(F)
    _require_smooth(F)
    n = F.nvars
    grads = F.gradient()
    mons = [m for m in graded_basis(n, 2) if m[n - 1]]
    M = [[g.coeff(m) for g in grads] for m in mons]
    _, ker = kernel_and_rank(M, n)
    basis = [sum((g.scale(a) for g, a in zip(grads, v) if a), Poly.zero(n)) for v in ker]
    return len(basis), basis


def line_parametrization(l: Poly) -> list[Poly]:
    """Linear forms in two parameters ``(s, t)`` parametrizing ``l = 0``."""
    n = l.nvars
    if l.degree != 1 or not l.is_homogeneous():
        raise JacobianError("expected a nonzero linear form")
    coeffs = [l.coeff(tuple(int(i == j) for j in range(n))) for i in range(n)]
    _, ker = kernel_and_rank([coeffs], n)
    if len(ker) != n - 1:
        raise JacobianError("unexpected kernel size")
    return ker


def restrict_to_hyperplane(p: Poly, l: Poly) -> Poly:
    """``p`` pulled back to ``l = 0`` through its kernel basis (n-1 variables)."""
    ker = line_parametrization(l)
    m = len(ker)
    subs = [Poly.linear([ker[j][i] for j in range(m)]) for i in range(p.nvars)]
    return p.compose(subs)


def quartic_cokernel(Q5: Poly, l: Poly) -> tuple[int, list[Poly]]:
    """Combinations of the partials of ``Q5 = g*l`` that are divisible by ``l``."""
    from .exactpoly import BinForm, is_squarefree

    if Q5.nvars != 3 or l.nvars != 3:
        raise JacobianError("expected ternary forms")
    try:
        g = Q5.exact_div(l)
    except PolyError as exc:
        raise JacobianError("quintic is not divisible by the line") from exc
    if not is_smooth_hypersurface(g):
        raise JacobianError("the quartic factor is singular")
    if not is_squarefree(BinForm.from_poly(restrict_to_hyperplane(g, l), g.degree)):
        raise JacobianError("line is not transverse to the quartic")
    grads = Q5.gradient()
    restricted = [restrict_to_hyperplane(p, l) for p in grads]
    mons = graded_basis(2, Q5.degree - 1)
    M = [[r.coeff(m) for r in restricted] for m in mons]
    _, ker = kernel_and_rank(M, 3)
    basis = [sum((p.scale(a) for p, a in zip(grads, v) if a), Poly.zero(3)) for v in ker]
    return len(basis), basis


def map_JF2_to_JQ4(a: Sequence, convention: str = "through-p") -> tuple:
    """Coefficient map sending ``sum a_i dF/dx_i`` to ``sum a_i dQ/dx_i`` on the target plane.

    ``through-p``: the line is ``x0=x1=x2=0`` and the plane has coordinates
    ``x0, x1, x2``. ``pointwise``: the line is ``x2=x3=x4=0`` and the plane
    has coordinates ``x2, x3, x4``.
    """
    if len(a) != 5:
        raise JacobianError("expected five coefficients")
    if convention == "through-p":
        return tuple(a[:3])
    if convention == "pointwise":
        return tuple(a[2:])
    raise JacobianError(f"unknown convention {convention!r}")


def jf2_to_jq4_kernel_dim(F: Poly, Q: Poly, convention: str = "through-p") -> int:
    """Kernel dimension of ``a -> sum_i a_i dQ/dx_i`` composed with the coefficient map."""
    if not is_smooth_hypersurface(F):
        raise JacobianError("form is singular")
    grads = Q.gradient()
    idx = monomial_index(Q.nvars, Q.degree - 1)
    cols = []
    for i in range(5):
        e = [0] * 5
        e[i] = 1
        b = map_JF2_to_JQ4(e, convention)
        vec = [Fraction(0)] * len(idx)
        for bi, g in zip(b, grads):
            for m, c in g.items():
                vec[idx[m]] += bi * c
        cols.append(vec)
    rows = [list(r) for r in zip(*cols)]
    rank, _ = kernel_and_rank(rows, 5)
    return 5 - rank


@dataclass(frozen=True)
class PeriodDifferentialDims:
    invariant_cubic_piece: int
    sym2_eigenspace: int
    cokernel: int
    codifferential_rank: int

    @property
    def kernel(self) -> int:
        return self.invariant_cubic_piece - self.codifferential_rank


def period_differential_dims(F: Poly) -> PeriodDifferentialDims:
    """Dimension count for the multiplication map on the invariant quadrics.

    The invariant part of the degree-3 piece is computed with the untwisted
    action; the linear eigenspace is the one spanned by the first n-1 variables.
    """
    _, l = split_eckardt_form(F)
    _require_smooth(F)
    n = F.nvars
    act = tau(n, twist=1)
    inv3, _ = eigen_split(F, 3, act)
    lin, _ = eigen_split(F, 1, act)
    sym2 = lin * (lin + 1) // 2
    coker, _ = polar_quadric_space(F)
    gq = _graded_quotient(F, 2)
    quads = [m for m in graded_basis(n, 2) if not m[n - 1]]
    rows = [gq.coordinates(Poly.monomial(m)) for m in quads]
    rank, _ = kernel_and_rank(rows, gq.dim)
    return PeriodDifferentialDims(inv3, sym2, coker, rank)
