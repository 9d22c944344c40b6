"""Cubic surface pairs, cubic threefolds ``f + l*x4^2``, invariant lines and
the 27 lines of a cubic surface.

Points are tuples of homogeneous coordinates. Exact points use Fractions;
numeric points use Python complex numbers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .exactpoly import (
    BinForm,
    LinearChange,
    Poly,
    apply_linear_change,
    as_fraction,
    complete_basis,
    is_squarefree,
    kernel_and_rank,
)
from .jacobian import InvolutionAction, is_smooth_hypersurface, split_eckardt_form, tau


class GeometryError(ValueError):
    pass


Point = tuple


def _is_exact(pt: Sequence) -> bool:
    return all(isinstance(x, (Fraction, int)) for x in pt)


def exact_point(pt: Sequence) -> tuple[Fraction, ...]:
    return tuple(as_fraction(x) for x in pt)


def proportional(a: Sequence, b: Sequence) -> bool:
    return all(a[i] * b[j] == a[j] * b[i] for i in range(len(a)) for j in range(i + 1, len(a)))


# ---------------------------------------------------------------------------
# lines
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LineInP:
    """Projective line spanned by two points (exact or complex coordinates)."""

    A: tuple
    B: tuple
    dual: tuple = ()

    def __post_init__(self):
        if len(self.A) != len(self.B):
            raise GeometryError("span points live in different spaces")
        if self.is_exact:
            A, B = exact_point(self.A), exact_point(self.B)
            object.__setattr__(self, "A", A)
            object.__setattr__(self, "B", B)
            if kernel_and_rank([list(A), list(B)])[0] != 2:
                raise GeometryError("span points are dependent")
            for form in self.dual:
                if form.evaluate(A) or form.evaluate(B):
                    raise GeometryError("dual form does not vanish on the span")
        else:
            A = tuple(complex(x) for x in self.A)
            B = tuple(complex(x) for x in self.B)
            object.__setattr__(self, "A", A)
            object.__setattr__(self, "B", B)
            if np.linalg.matrix_rank(np.array([A, B]), tol=1e-12) != 2:
                raise GeometryError("span points are dependent")

    @property
    def is_exact(self) -> bool:
        return _is_exact(self.A) and _is_exact(self.B)

    @property
    def ambient(self) -> int:
        """Number of homogeneous coordinates."""
        return len(self.A)

    @classmethod
    def from_equations(cls, forms: Sequence[Poly]) -> "LineInP":
        n = forms[0].nvars
        rows = [[f.coeff(tuple(int(i == j) for j in range(n))) for i in range(n)] for f in forms]
        if any(f.degree != 1 for f in forms):
            raise GeometryError("line equations must be linear")
        rank, ker = kernel_and_rank(rows, n)
        if len(ker) != 2:
            raise GeometryError("equations do not cut out a line")
        return cls(ker[0], ker[1], tuple(forms))

    def point(self, s, t) -> tuple:
        return tuple(s * a + t * b for a, b in zip(self.A, self.B))

    def parametrization(self) -> list[Poly]:
        """Coordinates as linear forms in ``(s, t)``; exact lines only."""
        if not self.is_exact:
            raise GeometryError("parametrization needs exact coordinates")
        return [Poly.linear([a, b]) for a, b in zip(self.A, self.B)]

    def contains_point(self, x: Sequence) -> bool:
        if self.is_exact and _is_exact(x):
            return kernel_and_rank([list(self.A), list(self.B), list(exact_point(x))])[0] == 2
        M = np.array([self.A, self.B, tuple(complex(v) for v in x)])
        return np.linalg.matrix_rank(M / np.abs(M).max(), tol=1e-9) == 2

    def plucker(self) -> np.ndarray:
        A = np.array([complex(x) for x in self.A])
        B = np.array([complex(x) for x in self.B])
        v = np.array([A[i] * B[j] - A[j] * B[i] for i, j in combinations(range(len(A)), 2)])
        return v / np.linalg.norm(v)

    def numeric(self) -> "LineInP":
        return LineInP(tuple(complex(x) for x in self.A), tuple(complex(x) for x in self.B))

    def to_json(self) -> dict:
        def enc(pt):
            if _is_exact(pt):
                return [f"{x.numerator}/{x.denominator}" for x in pt]
            return [[x.real, x.imag] for x in pt]

        return {"A": enc(self.A), "B": enc(self.B)}

    @classmethod
    def from_json(cls, obj) -> "LineInP":
        def dec(pt):
            if all(isinstance(x, list) for x in pt):
                return tuple(complex(a, b) for a, b in pt)
            return tuple(Fraction(str(x)) for x in pt)

        try:
            return cls(dec(obj["A"]), dec(obj["B"]))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise GeometryError(f"malformed line object: {exc}") from exc


def plucker_distance(a: LineInP, b: LineInP) -> float:
    u, v = a.plucker(), b.plucker()
    # residual of projecting u onto the complex span of v; stable near zero
    return float(np.linalg.norm(u - np.vdot(v, u) * v))


def parse_point(text: str) -> tuple[Fraction, ...]:
    body = text.strip().strip("[]()")
    try:
        return tuple(Fraction(tok.strip()) for tok in body.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise GeometryError(f"bad point {text!r}") from exc


# ---------------------------------------------------------------------------
# numeric evaluation
# ---------------------------------------------------------------------------

class NumericForm:
    """Vectorised complex evaluation of a polynomial and its gradient."""

    def __init__(self, p: Poly, normalize: bool = True):
        terms = p.sorted_terms()
        self.nvars = p.nvars
        self.exps = np.array([e for e, _ in terms], dtype=np.int64).reshape(len(terms), p.nvars)
        coeffs = np.array([float(c) for _, c in terms], dtype=complex)
        if normalize and len(coeffs):
            coeffs /= np.abs(coeffs).max()
        self.coeffs = coeffs
        self.degree = int(self.exps.max()) if self.exps.size else 0
        # exponent tables for each partial derivative, with the falling factor
        self.dexps = []
        for i in range(self.nvars):
            e = self.exps.copy()
            factor = e[:, i].astype(complex)
            e[:, i] = np.maximum(e[:, i] - 1, 0)
            self.dexps.append((e, self.coeffs * factor))

    def _powers(self, pts: np.ndarray) -> np.ndarray:
        pw = [np.ones_like(pts)]
        for _ in range(self.degree):
            pw.append(pw[-1] * pts)
        return np.stack(pw, axis=-2)  # (..., degree + 1, nvars)

    def _monomials(self, pw: np.ndarray, exps: np.ndarray) -> np.ndarray:
        mons = pw[..., exps[:, 0], 0]
        for v in range(1, self.nvars):
            mons = mons * pw[..., exps[:, v], v]
        return mons

    def __call__(self, pts: np.ndarray) -> np.ndarray:
        pw = self._powers(np.asarray(pts, dtype=complex))
        return self._monomials(pw, self.exps) @ self.coeffs

    def gradient(self, pts: np.ndarray) -> np.ndarray:
        pw = self._powers(np.asarray(pts, dtype=complex))
        return np.stack([self._monomials(pw, e) @ c for e, c in self.dexps], axis=-1)


def line_residual(p: Poly, ln: LineInP, samples: int = 20) -> float:
    """Max of ``|p|`` (coefficients scaled to max 1) over unit points of the line."""
    M = np.array([[complex(x) for x in ln.A], [complex(x) for x in ln.B]]).T
    Q, _ = np.linalg.qr(M)
    theta = np.linspace(0.0, np.pi, samples, endpoint=False) + 0.1
    phase = np.exp(1j * np.linspace(0.0, 2 * np.pi, samples, endpoint=False))
    pts = np.cos(theta)[:, None] * Q[:, 0] + (np.sin(theta) * phase)[:, None] * Q[:, 1]
    return float(np.abs(NumericForm(p)(pts)).max())


def contains_line(F: Poly, ln: LineInP, tol: float = 1e-10) -> bool:
    """Exact containment for exact lines, residual test otherwise."""
    if ln.ambient != F.nvars:
        raise GeometryError("line and form live in different spaces")
    if ln.is_exact:
        return F.compose(ln.parametrization()).is_zero()
    return line_residual(F, ln) < tol


# ---------------------------------------------------------------------------
# pairs and threefolds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CubicPair:
    f: Poly
    l: Poly

    def __post_init__(self):
        if self.f.nvars != 4 or self.l.nvars != 4:
            raise GeometryError("pair must live in four variables")
        if self.f.degree != 3 or not self.f.is_homogeneous():
            raise GeometryError("f must be a cubic form")
        if self.l.degree != 1 or not self.l.is_homogeneous():
            raise GeometryError("l must be a nonzero linear form")

    def threefold(self) -> Poly:
        x4sq = Poly.monomial((0, 0, 0, 0, 2))
        lift = lambda p: p.embed(5, [0, 1, 2, 3])
        return lift(self.f) + lift(self.l) * x4sq

    def is_valid(self) -> bool:
        return is_smooth_hypersurface(self.threefold())


ECKARDT_POINT = tuple(Fraction(int(i == 4)) for i in range(5))


@dataclass(frozen=True)
class EckardtCubic:
    """Smooth cubic threefold ``f(x0..x3) + l(x0..x3) x4^2``."""

    F: Poly
    pair: CubicPair
    tau: InvolutionAction = field(default_factory=lambda: tau(5))

    @property
    def f(self) -> Poly:
        return self.pair.f

    @property
    def l(self) -> Poly:
        return self.pair.l

    @property
    def p(self) -> tuple[Fraction, ...]:
        return ECKARDT_POINT

    @property
    def S(self) -> Poly:
        """The surface ``f = 0`` inside the hyperplane ``x4 = 0``."""
        return self.pair.f

    @property
    def Pi(self) -> Poly:
        return self.pair.l

    @property
    def E(self) -> tuple[Poly, Poly]:
        """The plane cubic ``f = l = 0`` inside ``x4 = 0``."""
        return (self.pair.f, self.pair.l)

    @classmethod
    def from_form(cls, F: Poly) -> "EckardtCubic":
        try:
            f, l = split_eckardt_form(F)
        except ValueError as exc:
            raise GeometryError(str(exc)) from exc
        return make_eckardt(CubicPair(f, l))

    def to_json(self) -> dict:
        return {"f": self.f.to_json(), "l": self.l.to_json(), "F": self.F.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "EckardtCubic":
        try:
            if "f" in obj and "l" in obj:
                X = make_eckardt(CubicPair(Poly.from_json(obj["f"]), Poly.from_json(obj["l"])))
                if "F" in obj and Poly.from_json(obj["F"]) != X.F:
                    raise GeometryError("stored F does not match f + l*x4^2")
                return X
            if "F" in obj:
                return cls.from_form(Poly.from_json(obj["F"]))
            return cls.from_form(Poly.from_json(obj))
        except (KeyError, TypeError) as exc:
            raise GeometryError(f"malformed threefold object: {exc}") from exc


def make_eckardt(pair: CubicPair) -> EckardtCubic:
    F = pair.threefold()
    if not is_smooth_hypersurface(F):
        raise GeometryError("F = f + l*x4^2 is singular (S singular or plane not transverse)")
    return EckardtCubic(F, pair)


# ---------------------------------------------------------------------------
# invariant lines
# ---------------------------------------------------------------------------

class LineKind(enum.Enum):
    POINTWISE_FIXED = "pointwise-fixed"
    THROUGH_ECKARDT = "through-eckardt"
    NOT_INVARIANT = "not-invariant"
    NOT_ON_X = "not-on-x"


@dataclass(frozen=True)
class LineClass:
    kind: LineKind
    point: tuple | None = None


def _tau_point(x: Sequence) -> tuple:
    return tuple(x[:-1]) + (-x[-1],)


def classify_invariant_line(X: EckardtCubic, ln: LineInP) -> LineClass:
    if not ln.is_exact or ln.ambient != 5:
        raise GeometryError("classification needs an exact line in P^4")
    if not contains_line(X.F, ln):
        return LineClass(LineKind.NOT_ON_X)
    if not (ln.contains_point(_tau_point(ln.A)) and ln.contains_point(_tau_point(ln.B))):
        return LineClass(LineKind.NOT_INVARIANT)
    if ln.A[4] == 0 and ln.B[4] == 0:
        return LineClass(LineKind.POINTWISE_FIXED)
    # An invariant line off the hyperplane meets it once and passes through p.
    if not ln.contains_point(X.p):
        raise AssertionError("invariant line neither fixed nor through p")
    A, B = ln.A, ln.B
    e = tuple(B[4] * a - A[4] * b for a, b in zip(A, B))
    return LineClass(LineKind.THROUGH_ECKARDT, _primitive(e))


def _primitive(pt: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Scale so the first nonzero coordinate is 1."""
    lead = next(x for x in pt if x)
    return tuple(Fraction(x) / lead for x in pt)


def fixed_points_on_line(ln: LineInP) -> list[tuple]:
    """Exact fixed points of ``x4 -> -x4`` on an invariant line (None if all)."""
    if ln.A[4] == 0 and ln.B[4] == 0:
        return None
    p = ECKARDT_POINT
    e = tuple(ln.B[4] * a - ln.A[4] * b for a, b in zip(ln.A, ln.B))
    return [p, _primitive(e)]


def ruling_line(X: EckardtCubic, e: Sequence) -> LineInP:
    e = exact_point(e)
    if len(e) == 4:
        e = e + (Fraction(0),)
    if len(e) != 5 or e[4] != 0:
        raise GeometryError("point must lie in the hyperplane x4 = 0")
    if X.f.evaluate(e[:4]) or X.l.evaluate(e[:4]):
        raise GeometryError("point is not on the plane cubic f = l = 0")
    return LineInP(X.p, e)


# ---------------------------------------------------------------------------
# normal forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ThroughPNormalForm:
    """``F(T y) = k y3^2 + 2 q y3 + c + l y4^2`` with pieces in ``y0, y1, y2``."""

    T: LinearChange
    k: Poly
    q: Poly
    c: Poly
    l: Poly
    F: Poly

    def reassemble(self) -> Poly:
        lift = lambda p: p.embed(5, [0, 1, 2])
        y3 = Poly.var(3, 5)
        y4 = Poly.var(4, 5)
        return lift(self.k) * y3 * y3 + lift(self.q) * y3 * 2 + lift(self.c) + lift(self.l) * y4 * y4


def normalize_through_p(X: EckardtCubic, lp: LineInP) -> ThroughPNormalForm:
    cls = classify_invariant_line(X, lp)
    if cls.kind is not LineKind.THROUGH_ECKARDT:
        raise GeometryError(f"line is not a ruling through the Eckardt point ({cls.kind.value})")
    e = cls.point[:4]
    cols = [None, None, None, e]
    extra = complete_basis([e], 4)
    cols[:3] = extra
    T = LinearChange.from_columns(cols).extend(5)
    Fn = apply_linear_change(X.F, T)
    parts = Fn.split_by([3, 4])
    allowed = {(2, 0), (1, 0), (0, 0), (0, 2)}
    if set(parts) - allowed:
        raise AssertionError("normalisation produced unexpected x3/x4 terms")
    zero = Poly.zero(3)
    k = parts.get((2, 0), zero)
    q = parts.get((1, 0), zero).scale(Fraction(1, 2))
    c = parts.get((0, 0), zero)
    l = parts.get((0, 2), zero)
    nf = ThroughPNormalForm(T, k, q, c, l, Fn)
    assert nf.reassemble() == Fn
    return nf


@dataclass(frozen=True)
class PointwisePieces:
    """Coefficients of ``f`` along the line ``x2 = x3 = 0`` as binary forms in ``x2, x3``.

    ``f = l1 x0^2 + 2 l2 x0 x1 + l3 x1^2 + 2 q1 x0 + 2 q2 x1 + c``.
    """

    l1: Poly
    l2: Poly
    l3: Poly
    q1: Poly
    q2: Poly
    c: Poly


@dataclass(frozen=True)
class PointwiseNormalForm:
    T: LinearChange
    F: Poly
    pieces: PointwisePieces


def surface_line_pieces(f: Poly, fiber: Sequence[int] = (0, 1)) -> PointwisePieces:
    """Split a form of degree 3 vanishing on ``V(rest)`` into line pieces."""
    parts = f.split_by(list(fiber))
    rest_n = f.nvars - len(fiber)
    for key in parts:
        if sum(key) > 2:
            raise GeometryError("the line is not contained in the surface")
    z = Poly.zero(rest_n)
    half = Fraction(1, 2)
    return PointwisePieces(
        l1=parts.get((2, 0), z),
        l2=parts.get((1, 1), z).scale(half),
        l3=parts.get((0, 2), z),
        q1=parts.get((1, 0), z).scale(half),
        q2=parts.get((0, 1), z).scale(half),
        c=parts.get((0, 0), z),
    )


def pointwise_frame(l: Poly, A: Sequence, B: Sequence) -> LinearChange:
    """Basis ``[a, b, k1, k2]`` with ``span(a, b)`` the line, ``l(a) = 1`` and ``l = 0`` on the rest."""
    lA, lB = l.evaluate(A), l.evaluate(B)
    if lA:
        col0, other = tuple(a / lA for a in A), B
    elif lB:
        col0, other = tuple(b / lB for b in B), A
    else:
        raise GeometryError("line lies in the plane l = 0")
    lo = l.evaluate(other)
    col1 = tuple(o - lo * a for o, a in zip(other, col0))
    n = l.nvars
    coeffs = [l.coeff(tuple(int(i == j) for j in range(n))) for i in range(n)]
    _, ker = kernel_and_rank([coeffs], n)
    return LinearChange.from_columns([col0, col1] + complete_basis([col0, col1], n, ker))


def normalize_pointwise(X: EckardtCubic, ls: LineInP) -> PointwiseNormalForm:
    """Coordinates with the line at ``x2 = x3 = x4 = 0`` and ``l = x0``.

    Accepts the line in P^3 (a line of S) or in P^4 inside ``x4 = 0``.
    """
    if ls.ambient == 4:
        ls = LineInP(ls.A + (Fraction(0),), ls.B + (Fraction(0),))
    cls = classify_invariant_line(X, ls)
    if cls.kind is not LineKind.POINTWISE_FIXED:
        raise GeometryError(f"line is not pointwise fixed ({cls.kind.value})")
    T = pointwise_frame(X.l, ls.A[:4], ls.B[:4]).extend(5)
    Fn = apply_linear_change(X.F, T)
    fn, ln = split_eckardt_form(Fn)
    assert ln == Poly.var(0, 4)
    return PointwiseNormalForm(T, Fn, surface_line_pieces(fn))


def normalize_line_coordinates(F: Poly, ln: LineInP) -> tuple[LinearChange, Poly]:
    """Coordinates in which ``ln`` is spanned by the first two basis vectors."""
    if not ln.is_exact:
        raise GeometryError("normalisation needs an exact line")
    n = F.nvars
    extra = complete_basis([ln.A, ln.B], n)
    T = LinearChange.from_columns([ln.A, ln.B] + extra)
    return T, apply_linear_change(F, T)


# ---------------------------------------------------------------------------
# numeric 27 lines
# ---------------------------------------------------------------------------

_SAMPLES = np.array([[1, 0], [0, 1], [1, 1], [1, -1]], dtype=complex)
CHARTS = [(k, l) for k, l in combinations(range(4), 2)]


def _chart_points(z: np.ndarray, chart: tuple[int, int]):
    """Span points ``P = e_k + a e_i + c e_j``, ``Q = e_l + b e_i + d e_j``."""
    k, l = chart
    i, j = [m for m in range(4) if m not in chart]
    N = z.shape[0]
    P = np.zeros((N, 4), dtype=complex)
    Q = np.zeros((N, 4), dtype=complex)
    P[:, k] = 1
    Q[:, l] = 1
    P[:, i], Q[:, i], P[:, j], Q[:, j] = z[:, 0], z[:, 1], z[:, 2], z[:, 3]
    return P, Q, i, j


def _newton(form: NumericForm, z: np.ndarray, chart, iters: int = 60) -> np.ndarray:
    s = _SAMPLES[:, 0]
    t = _SAMPLES[:, 1]
    for _ in range(iters):
        P, Q, i, j = _chart_points(z, chart)
        pts = s[None, :, None] * P[:, None, :] + t[None, :, None] * Q[:, None, :]
        r = form(pts)
        g = form.gradient(pts)
        J = np.stack([s * g[..., i], t * g[..., i], s * g[..., j], t * g[..., j]], axis=-1)
        try:
            step = np.linalg.solve(J, r[..., None])[..., 0]
        except np.linalg.LinAlgError:
            step = np.stack([np.linalg.lstsq(Jm, rm, rcond=None)[0] for Jm, rm in zip(J, r)])
        norm = np.linalg.norm(step, axis=1)
        damp = np.minimum(1.0, 2.0 / np.maximum(norm, 1e-300))
        z = z - damp[:, None] * step
        z[~np.isfinite(z).all(axis=1)] = 1e6
    return z


def _canonical(A: np.ndarray, B: np.ndarray) -> LineInP:
    """Reduced row echelon form of the span, numerically."""
    M = np.array([A, B], dtype=complex)
    M = M / np.abs(M).max()
    pivots = []
    row = 0
    for col in range(4):
        if row == 2:
            break
        r = row + int(np.argmax(np.abs(M[row:, col])))
        if abs(M[r, col]) < 1e-8:
            continue
        M[[row, r]] = M[[r, row]]
        M[row] /= M[row, col]
        other = 1 - row
        M[other] -= M[other, col] * M[row]
        pivots.append(col)
        row += 1
    M[np.abs(M) < 1e-14] = 0
    return LineInP(tuple(complex(x) for x in M[0]), tuple(complex(x) for x in M[1]))


def _line_sort_key(ln: LineInP):
    vals = list(ln.A) + list(ln.B)
    return tuple((round(v.real, 8), round(v.imag, 8)) for v in vals)


def find_lines_numeric(
    f: Poly,
    tol: float = 1e-10,
    seed: int = 0,
    starts: int = 300,
    max_rounds: int = 6,
    check_smooth: bool = True,
) -> list[LineInP]:
    """All 27 lines of a smooth cubic surface by multi-start Newton in 6 charts."""
    if f.nvars != 4 or f.degree != 3 or not f.is_homogeneous():
        raise GeometryError("expected a cubic form in four variables")
    if check_smooth and not is_smooth_hypersurface(f):
        raise GeometryError("surface is singular")
    form = NumericForm(f)
    rng = np.random.default_rng(seed)
    found: list[LineInP] = []
    for rnd in range(max_rounds):
        for chart in CHARTS:
            z0 = (rng.standard_normal((starts, 4)) + 1j * rng.standard_normal((starts, 4))) * (1 + rnd)
            z = _newton(form, z0, chart)
            ok = np.isfinite(z).all(axis=1) & (np.abs(z).max(axis=1) < 1e5)
            # many starts land on the same chart solution
            _, first = np.unique(np.round(z[ok], 6), axis=0, return_index=True)
            for zi in z[ok][np.sort(first)]:
                P, Q, _, _ = _chart_points(zi[None, :], chart)
                ln = _canonical(P[0], Q[0])
                if line_residual(f, ln) >= tol:
                    continue
                if any(plucker_distance(ln, m) < 1e-6 for m in found):
                    continue
                found.append(ln)
        if len(found) >= 27:
            break
    if len(found) != 27:
        raise GeometryError(f"found {len(found)} lines instead of 27")
    return sorted(found, key=_line_sort_key)


# ---------------------------------------------------------------------------
# hyperplane sections through p
# ---------------------------------------------------------------------------

def hyperplane_lines_through_p(X: EckardtCubic, H: Poly, tol: float = 1e-10) -> list[tuple]:
    """The three points of ``E`` cut by a hyperplane through ``p`` (complex coordinates)."""
    if H.nvars != 5 or H.degree != 1 or not H.is_homogeneous():
        raise GeometryError("hyperplane must be a linear form in five variables")
    if H.evaluate(X.p):
        raise GeometryError("hyperplane does not pass through the Eckardt point")
    h = H.set_zero(4).drop_var(4)
    rows = [
        [g.coeff(tuple(int(i == j) for j in range(4))) for i in range(4)] for g in (X.l, h)
    ]
    rank, ker = kernel_and_rank(rows, 4)
    if rank != 2:
        raise GeometryError("hyperplane contains the plane l = 0")
    u, v = ker
    cubic = X.f.compose([Poly.linear([a, b]) for a, b in zip(u, v)])
    bf = BinForm.from_poly(cubic, 3) if cubic else None
    if bf is None or not is_squarefree(bf):
        raise GeometryError("hyperplane is not transverse to the plane cubic")
    pts = []
    for s, t in bf.roots():
        e = tuple(s * complex(a) + t * complex(b) for a, b in zip(u, v)) + (0j,)
        pts.append(e)
    for e in pts:
        ln = LineInP(tuple(complex(x) for x in X.p), e)
        if line_residual(X.F, ln) >= tol:
            raise GeometryError("numeric ruling line failed the residual test")
    return pts
