"""Projections from points and lines: conic-bundle matrices, discriminant
curves, the degeneracy forms along a line, and the genericity test.

A cubic that is at most quadratic in two "fiber" variables ``u, v`` is written
``a u^2 + 2 b uv + d v^2 + 2 e u + 2 g v + h`` and represented by the symmetric
matrix ``[[a, b, e], [b, d, g], [e, g, h]]``; off-diagonal entries carry the
halved cross terms, so the determinant is the discriminant with no stray 2s.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactpoly import (
    BinForm,
    LinearChange,
    Poly,
    apply_linear_change,
    complete_basis,
    is_squarefree,
    resultant_binary,
)
from .geometry import (
    EckardtCubic,
    LineInP,
    ThroughPNormalForm,
    contains_line,
    exact_point,
    normalize_line_coordinates,
    normalize_pointwise,
    normalize_through_p,
    pointwise_frame,
)
from .jacobian import is_smooth_hypersurface, restrict_to_hyperplane

PolyMatrix = tuple[tuple[Poly, ...], ...]


class FibrationError(ValueError):
    pass


def conic_matrix(F: Poly, fiber: Sequence[int]) -> PolyMatrix:
    """Symmetric matrix of ``F`` viewed as a conic in the two ``fiber`` variables.

    Entries are forms in the remaining variables (kept in index order).
    """
    parts = F.split_by(list(fiber))
    if any(sum(key) > 2 for key in parts):
        raise FibrationError("form is not at most quadratic in the fiber variables")
    z = Poly.zero(F.nvars - 2)
    half = Fraction(1, 2)
    a = parts.get((2, 0), z)
    b = parts.get((1, 1), z).scale(half)
    d = parts.get((0, 2), z)
    e = parts.get((1, 0), z).scale(half)
    g = parts.get((0, 1), z).scale(half)
    h = parts.get((0, 0), z)
    return ((a, b, e), (b, d, g), (e, g, h))


def det3(M: PolyMatrix) -> Poly:
    (a, b, c), (d, e, f), (g, h, i) = M
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def det2(M) -> Poly:
    (a, b), (c, d) = M
    return a * d - b * c


def minor(M: PolyMatrix, i: int, j: int) -> Poly:
    rows = [r for k, r in enumerate(M) if k != i]
    return det2([[x for k, x in enumerate(r) if k != j] for r in rows])


def is_symmetric(M: PolyMatrix) -> bool:
    return all(M[i][j] == M[j][i] for i in range(3) for j in range(3))


@dataclass(frozen=True)
class ConicBundleData:
    M: PolyMatrix
    discriminant: Poly
    minor33: Poly
    minor11: Poly
    source: str
    T: LinearChange | None = None

    def __post_init__(self):
        if not is_symmetric(self.M):
            raise AssertionError("conic matrix must be symmetric")
        if det3(self.M) != self.discriminant:
            raise AssertionError("stored discriminant differs from det M")

    @classmethod
    def from_matrix(cls, M: PolyMatrix, source: str, T: LinearChange | None = None) -> "ConicBundleData":
        return cls(M, det3(M), minor(M, 2, 2), minor(M, 0, 0), source, T)


@dataclass(frozen=True)
class PointProjectionData:
    T: LinearChange
    k: Poly
    q: Poly
    c: Poly

    @property
    def N(self) -> tuple[tuple[Poly, Poly], tuple[Poly, Poly]]:
        return ((self.k, self.q), (self.q, self.c))

    @property
    def quartic(self) -> Poly:
        return self.k * self.c - self.q * self.q

    @property
    def bitangent(self) -> Poly:
        return self.k

    def surface(self) -> Poly:
        lift = lambda p: p.embed(4, [0, 1, 2])
        x3 = Poly.var(3, 4)
        return lift(self.k) * x3 * x3 + lift(self.q) * x3 * 2 + lift(self.c)


def project_point_surface(S: Poly, point: Sequence) -> PointProjectionData:
    """Project a cubic surface from one of its points (moved to ``[0,0,0,1]``)."""
    if S.nvars != 4 or S.degree != 3:
        raise FibrationError("expected a cubic surface in P^3")
    pt = exact_point(point)
    if len(pt) != 4 or not any(pt):
        raise FibrationError("expected a point of P^3")
    if S.evaluate(pt):
        raise FibrationError("point is not on the surface")
    lead = next(x for x in pt if x)
    pt = tuple(x / lead for x in pt)
    T = LinearChange.from_columns(complete_basis([pt], 4) + [pt])
    Sn = apply_linear_change(S, T)
    parts = Sn.split_by([3])
    if (3,) in parts:
        raise AssertionError("normalised surface has an x3^3 term")
    z = Poly.zero(3)
    return PointProjectionData(
        T, parts.get((2,), z), parts.get((1,), z).scale(Fraction(1, 2)), parts.get((0,), z)
    )


def plane_curve_is_smooth(g: Poly) -> bool:
    return is_smooth_hypersurface(g)


@dataclass(frozen=True)
class SurfaceLineProjection:
    T: LinearChange
    M: PolyMatrix
    D: BinForm
    Q: BinForm
    B: BinForm


def project_line_surface(S: Poly, ln: LineInP, l: Poly | None = None) -> SurfaceLineProjection:
    """Conic-bundle data of a cubic surface projected from a line on it.

    With ``l`` given, coordinates are chosen so the line is ``x2 = x3 = 0``
    and ``l = x0``; otherwise the line's span points become ``e0, e1``.
    """
    if ln.ambient != 4 or not ln.is_exact:
        raise FibrationError("expected an exact line in P^3")
    if not contains_line(S, ln):
        raise FibrationError("line is not contained in the surface")
    if l is not None:
        T = pointwise_frame(l, ln.A, ln.B)
    else:
        T, _ = normalize_line_coordinates(S, ln)
    Sn = apply_linear_change(S, T)
    M = conic_matrix(Sn, (0, 1))
    D = det3(M)
    return SurfaceLineProjection(
        T,
        M,
        BinForm.from_poly(D, 5),
        BinForm.from_poly(minor(M, 2, 2), 2),
        BinForm.from_poly(minor(M, 0, 0), 4),
    )


def project_line_threefold(F: Poly, ln: LineInP, T: LinearChange | None = None) -> ConicBundleData:
    """Conic-bundle data of a cubic threefold projected from a line on it."""
    if F.nvars != 5 or ln.ambient != 5 or not ln.is_exact:
        raise FibrationError("expected a threefold in P^4 and an exact line")
    if not contains_line(F, ln):
        raise FibrationError("line is not contained in the threefold")
    if T is None:
        T, Fn = normalize_line_coordinates(F, ln)
    else:
        Fn = apply_linear_change(F, T)
        if not contains_line(Fn, LineInP((1, 0, 0, 0, 0), (0, 1, 0, 0, 0))):
            raise FibrationError("supplied coordinates do not move the line to x2=x3=x4=0")
    return ConicBundleData.from_matrix(conic_matrix(Fn, (0, 1)), "threefold-from-line", T)


# ---------------------------------------------------------------------------
# projections of Eckardt cubics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ThroughPProjection:
    normal_form: ThroughPNormalForm
    bundle: ConicBundleData

    @property
    def k(self) -> Poly:
        return self.normal_form.k

    @property
    def q(self) -> Poly:
        return self.normal_form.q

    @property
    def c(self) -> Poly:
        return self.normal_form.c

    @property
    def l(self) -> Poly:
        return self.normal_form.l

    @property
    def C(self) -> Poly:
        return self.k * self.c - self.q * self.q

    @property
    def L(self) -> Poly:
        return self.l

    def quartic_smooth(self) -> bool:
        return is_smooth_hypersurface(self.C)

    def line_transverse(self) -> bool:
        """Whether ``L`` meets ``C`` in four distinct points."""
        if self.l.is_zero():
            return False
        r = restrict_to_hyperplane(self.C, self.l)
        return bool(r) and is_squarefree(BinForm.from_poly(r, 4))


def eckardt_project_through_p(X: EckardtCubic, lp: LineInP) -> ThroughPProjection:
    nf = normalize_through_p(X, lp)
    # Fiber variables x3, x4: M = [[k, 0, q], [0, l, 0], [q, 0, c]].
    bundle = ConicBundleData.from_matrix(conic_matrix(nf.F, (3, 4)), "eckardt-through-p", nf.T)
    out = ThroughPProjection(nf, bundle)
    if bundle.discriminant != out.l * out.C:
        raise AssertionError("det M != l (k c - q^2)")
    return out


@dataclass(frozen=True)
class PointwiseProjection:
    bundle: ConicBundleData
    l3: Poly
    m: Poly
    n: Poly
    Q: BinForm
    B: BinForm

    @property
    def D(self) -> Poly:
        return self.bundle.discriminant

    @property
    def slice(self) -> BinForm:
        return BinForm.from_poly(self.n, 5)

    def expansion(self) -> Poly:
        """``-1/4 l3 x4^4 + m x4^2 + n`` as a form in ``(x2, x3, x4)``."""
        lift = lambda p: p.embed(3, [0, 1])
        x4 = Poly.var(2, 3)
        return lift(self.l3).scale(Fraction(-1, 4)) * x4**4 + lift(self.m) * x4**2 + lift(self.n)


def eckardt_project_pointwise(X: EckardtCubic, ls: LineInP) -> PointwiseProjection:
    nf = normalize_pointwise(X, ls)
    M = conic_matrix(nf.F, (0, 1))
    bundle = ConicBundleData.from_matrix(M, "eckardt-pointwise", nf.T)
    p = nf.pieces
    m = p.l2 * p.q2 - p.l3 * p.q1
    D = bundle.discriminant
    n = D.set_zero(2).drop_var(2)
    out = PointwiseProjection(
        bundle,
        p.l3,
        m,
        n,
        BinForm.from_poly(p.l1 * p.l3 - p.l2 * p.l2, 2),
        BinForm.from_poly(p.l3 * p.c - p.q2 * p.q2, 4),
    )
    if out.expansion() != D:
        raise AssertionError("det M differs from its x4 expansion")
    return out


@dataclass(frozen=True)
class GenericityReport:
    resultant: Fraction
    Q: BinForm
    B: BinForm
    Q_reduced: bool
    B_reduced: bool

    @property
    def generic(self) -> bool:
        return self.resultant != 0


def genericity_report(X: EckardtCubic, ls: LineInP) -> GenericityReport:
    if ls.ambient == 5:
        if ls.A[4] or ls.B[4]:
            raise FibrationError("line is not in the hyperplane x4 = 0")
        ls = LineInP(ls.A[:4], ls.B[:4])
    proj = project_line_surface(X.f, ls, X.l)
    Q, B = proj.Q, proj.B
    if Q.is_zero() or B.is_zero():
        return GenericityReport(Fraction(0), Q, B, False, False)
    return GenericityReport(resultant_binary(Q, B), Q, B, is_squarefree(Q), is_squarefree(B))


def check_generic(X: EckardtCubic, ls: LineInP) -> bool:
    """Whether the degree-2 and degree-4 degeneracy forms share no root."""
    return genericity_report(X, ls).generic
