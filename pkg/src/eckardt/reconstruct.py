"""Inverse constructions: a plane quartic with a marked bitangent gives a
cubic surface with a point, and adding a transverse line gives a cubic
threefold ``k x3^2 + 2 q x3 + c + l x4^2`` with a marked ruling line."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .exactpoly import BinForm, Poly, PolyError, is_squarefree, square_decomposition
from .fibrations import (
    ThroughPProjection,
    eckardt_project_through_p,
    project_point_surface,
)
from .geometry import (
    CubicPair,
    EckardtCubic,
    GeometryError,
    LineInP,
    LineKind,
    classify_invariant_line,
    find_lines_numeric,
    make_eckardt,
)
from .jacobian import is_smooth_hypersurface, restrict_to_hyperplane


class ReconstructionError(ValueError):
    pass


class FieldObstruction(ReconstructionError):
    """The square root of the restriction needs a quadratic extension."""

    def __init__(self, factor: int):
        super().__init__(f"restriction is {factor} times a rational square; rescale the quartic by {factor}")
        self.factor = factor


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = isqrt(x.numerator), isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


def squarefree_part(x: Fraction) -> int:
    """Signed squarefree integer ``s`` with ``x / s`` a rational square."""
    if not x:
        raise ValueError("zero has no squarefree part")
    m = abs(x.numerator * x.denominator)
    out = 1
    p = 2
    while p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
        if m % p == 0:
            out *= p
            m //= p
        p += 1
    out *= m
    return out if x > 0 else -out


def bitangent_chart(k: Poly) -> tuple[int, list[int], list[Poly]]:
    """Eliminated variable of ``k`` and the substitution parametrizing ``k = 0``.

    The leading variable (first with nonzero coefficient) is solved for; the
    other two coordinates are the parameters, in index order.
    """
    if k.nvars != 3 or k.degree != 1 or not k.is_homogeneous():
        raise ReconstructionError("bitangent must be a linear form in three variables")
    coeffs = [k.coeff(tuple(int(i == j) for j in range(3))) for i in range(3)]
    lead = next(i for i, a in enumerate(coeffs) if a)
    params = [i for i in range(3) if i != lead]
    subs = []
    for i in range(3):
        if i == lead:
            subs.append(Poly.linear([-coeffs[j] / coeffs[lead] for j in params]))
        else:
            subs.append(Poly.var(params.index(i), 2))
    return lead, params, subs


@dataclass(frozen=True)
class Decomposition:
    k: Poly
    q: Poly
    c: Poly
    scale: Fraction = Fraction(1)

    @property
    def g(self) -> Poly:
        return self.k * self.c - self.q * self.q


def bitangent_decompose(g: Poly, k: Poly, allow_rescale: bool = False) -> Decomposition:
    """Find ``q, c`` with ``k c - q^2 = s g``; ``s = 1`` unless rescaling is allowed."""
    if g.nvars != 3 or g.degree != 4 or not g.is_homogeneous():
        raise ReconstructionError("expected a ternary quartic")
    lead, params, subs = bitangent_chart(k)
    h = g.compose(subs)
    if h.is_zero():
        raise ReconstructionError("the quartic contains the line k = 0")
    split = square_decomposition(BinForm.from_poly(h, 4))
    if split is None:
        raise ReconstructionError("k = 0 is not a bitangent: restriction is not a square")
    kappa, r = split
    scale = Fraction(1)
    rho = _rational_sqrt(-kappa)
    if rho is None:
        s = squarefree_part(-kappa)
        if not allow_rescale:
            raise FieldObstruction(s)
        scale = Fraction(s)
        rho = _rational_sqrt(-kappa * s)
        g = g.scale(s)
    q = r.to_poly().embed(3, params).scale(rho)
    try:
        c = (g + q * q).exact_div(k)
    except PolyError as exc:
        raise AssertionError("g + q^2 not divisible by k") from exc
    out = Decomposition(k, q, c, scale)
    if out.g != g:
        raise AssertionError("decomposition does not reassemble")
    return out


@dataclass(frozen=True)
class QuarticWithBitangent:
    g: Poly
    k: Poly

    def __post_init__(self):
        if not is_smooth_hypersurface(self.g):
            raise ReconstructionError("quartic is singular")


def surface_from_quartic(qb: QuarticWithBitangent, allow_rescale: bool = False) -> tuple[Poly, tuple]:
    dec = bitangent_decompose(qb.g, qb.k, allow_rescale)
    S = surface_from_pieces(dec.k, dec.q, dec.c)
    if not is_smooth_hypersurface(S):
        raise ReconstructionError("reconstructed surface is singular")
    return S, tuple(Fraction(int(i == 3)) for i in range(4))


def surface_from_pieces(k: Poly, q: Poly, c: Poly) -> Poly:
    lift = lambda p: p.embed(4, [0, 1, 2])
    x3 = Poly.var(3, 4)
    return lift(k) * x3 * x3 + lift(q) * x3 * 2 + lift(c)


def assemble_threefold(k: Poly, q: Poly, c: Poly, l: Poly) -> Poly:
    lift = lambda p: p.embed(5, [0, 1, 2])
    x3, x4 = Poly.var(3, 5), Poly.var(4, 5)
    return lift(k) * x3 * x3 + lift(q) * x3 * 2 + lift(c) + lift(l) * x4 * x4


RULING = LineInP((0, 0, 0, 0, 1), (0, 0, 0, 1, 0))


@dataclass(frozen=True)
class EckardtTriple:
    X: EckardtCubic
    line: LineInP
    decomposition: Decomposition


def line_is_transverse(g: Poly, l: Poly) -> bool:
    r = restrict_to_hyperplane(g, l)
    return bool(r) and is_squarefree(BinForm.from_poly(r, g.degree))


def eckardt_from_triple(g: Poly, k: Poly, l: Poly, allow_rescale: bool = False) -> EckardtTriple:
    """Cubic threefold with ruling ``x0 = x1 = x2 = 0`` projecting to ``(g, k, l)``."""
    if l.nvars != 3 or l.degree != 1 or not l.is_homogeneous():
        raise ReconstructionError("line must be a linear form in three variables")
    if not line_is_transverse(g, l):
        raise ReconstructionError("line is not transverse to the quartic")
    dec = bitangent_decompose(g, k, allow_rescale)
    F = assemble_threefold(dec.k, dec.q, dec.c, l)
    f = F.set_zero(4).drop_var(4)
    try:
        X = make_eckardt(CubicPair(f, l.embed(4, [0, 1, 2])))
    except GeometryError as exc:
        raise ReconstructionError(str(exc)) from exc
    return EckardtTriple(X, RULING, dec)


def proportionality(a: Poly, b: Poly) -> Fraction | None:
    """``lam`` with ``b == lam * a``, or ``None``."""
    if a.is_zero() or b.is_zero():
        return None
    e, ca = a.leading_term()
    lam = b.coeff(e) / ca
    return lam if lam and a.scale(lam) == b else None


@dataclass
class RoundtripReport:
    passed: bool
    checks: dict[str, bool] = field(default_factory=dict)
    scalars: dict[str, str] = field(default_factory=dict)
    failed: str | None = None

    def to_json(self) -> dict:
        return {"passed": self.passed, "checks": self.checks, "scalars": self.scalars, "failed": self.failed}


def point_off_lines(S: Poly, e, seed: int = 0, tol: float = 1e-10) -> bool:
    lines = find_lines_numeric(S, tol=tol, seed=seed, check_smooth=False)
    return not any(ln.contains_point(tuple(complex(x) for x in e)) for ln in lines)


def roundtrip_check(X: EckardtCubic, lp: LineInP, seed: int = 0, check_lines: bool = True) -> RoundtripReport:
    """Project from the ruling, rebuild the threefold, project again and compare."""
    rep = RoundtripReport(False)

    def fail(name: str) -> RoundtripReport:
        rep.checks[name] = False
        rep.failed = name
        return rep

    cls = classify_invariant_line(X, lp)
    rep.checks["through-eckardt-point"] = cls.kind is LineKind.THROUGH_ECKARDT
    if cls.kind is not LineKind.THROUGH_ECKARDT:
        return fail("through-eckardt-point")
    if check_lines:
        if not point_off_lines(X.f, cls.point[:4], seed):
            return fail("point-off-lines")
        rep.checks["point-off-lines"] = True
    first = eckardt_project_through_p(X, lp)
    if not first.quartic_smooth():
        return fail("quartic-smooth")
    rep.checks["quartic-smooth"] = True
    if not first.line_transverse():
        return fail("line-transverse")
    rep.checks["line-transverse"] = True
    try:
        triple = eckardt_from_triple(first.C, first.k, first.l)
    except ReconstructionError:
        return fail("reconstruct")
    rep.checks["reconstruct"] = True
    second = eckardt_project_through_p(triple.X, triple.line)
    for name, a, b in (("quartic", first.C, second.C), ("bitangent", first.k, second.k), ("line", first.l, second.l)):
        lam = proportionality(a, b)
        rep.checks[f"{name}-proportional"] = lam is not None
        if lam is None:
            return fail(f"{name}-proportional")
        rep.scalars[name] = f"{lam.numerator}/{lam.denominator}"
    rep.passed = True
    return rep


def reprojection_matches(first: ThroughPProjection, second: ThroughPProjection) -> bool:
    return all(
        proportionality(a, b) is not None
        for a, b in ((first.C, second.C), (first.k, second.k), (first.l, second.l))
    )


def surface_reprojection(k: Poly, q: Poly, c: Poly) -> tuple[Poly, Poly]:
    """Quartic and bitangent obtained by projecting ``surface_from_pieces`` from ``[0,0,0,1]``."""
    d = project_point_surface(surface_from_pieces(k, q, c), (0, 0, 0, 1))
    return d.quartic, d.bitangent
