"""Genus bookkeeping for double covers and the j-invariant matching of the
genus-2 branch sextic against the plane cubic ``f = l = 0``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Sequence

import numpy as np

from .exactpoly import (
    BinForm,
    Poly,
    complete_basis,
    is_squarefree,
    kernel_and_rank,
)


class CoverError(ValueError):
    pass


def riemann_hurwitz(g_base: int, deg: int, ram: int) -> int:
    """Genus of a degree-``deg`` cover with total ramification ``ram``."""
    twice = deg * (2 * g_base - 2) + ram + 2
    if twice % 2 or twice < 0:
        raise CoverError(f"no cover of genus >= 0 with base {g_base}, degree {deg}, ramification {ram}")
    return twice // 2


def base_genus(g_cover: int, deg: int, ram: int) -> int:
    """Inverse of :func:`riemann_hurwitz` in the base genus."""
    num = 2 * g_cover - 2 - ram
    if num % deg:
        raise CoverError("non-integral base genus")
    val = num // deg + 2
    if val % 2 or val < 0:
        raise CoverError("non-integral or negative base genus")
    return val // 2


@dataclass(frozen=True)
class CoverSpec:
    base_genus: int
    degree: int = 2
    branch_count: int = 0
    branch_form: BinForm | None = None

    def __post_init__(self):
        if self.degree == 2 and self.branch_count % 2:
            raise CoverError("a double cover of a curve has an even number of branch points")
        if self.branch_form is not None and not self.branch_form.is_zero():
            if self.branch_form.degree != self.branch_count:
                raise CoverError("branch form degree differs from the branch count")

    @property
    def genus(self) -> int:
        return riemann_hurwitz(self.base_genus, self.degree, (self.degree - 1) * self.branch_count)

    @property
    def prym_dimension(self) -> int:
        return self.genus - self.base_genus


@dataclass(frozen=True)
class GenusTable:
    g_Dtilde: int
    g_Dsigma: int
    g_Dsigmaiota: int
    g_D: int
    g_Dbar: int

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.g_Dtilde, self.g_Dsigma, self.g_Dsigmaiota, self.g_D, self.g_Dbar)


def klein_tower(
    branch_asigma: int = 12,
    branch_bi: int = 6,
    branch_aiota: int = 0,
    branch_asigmaiota: int = 0,
    branch_bsigma: int = 0,
    branch_bsigmaiota: int = 6,
    g_D: int = 6,
) -> GenusTable:
    """Genera of the Klein four-group tower over a smooth plane quintic ``D``.

    The top curve covers ``D`` and the two other intermediate quotients; each of
    those covers the bottom quotient. Genera are derived top-down and bottom-up
    and must agree.
    """
    g_top = riemann_hurwitz(g_D, 2, branch_aiota)
    g_bar = base_genus(g_D, 2, branch_bi)
    g_sigma = base_genus(g_top, 2, branch_asigma)
    g_sigmaiota = base_genus(g_top, 2, branch_asigmaiota)
    if riemann_hurwitz(g_bar, 2, branch_bsigma) != g_sigma:
        raise CoverError("inconsistent tower along the sigma quotient")
    if riemann_hurwitz(g_bar, 2, branch_bsigmaiota) != g_sigmaiota:
        raise CoverError("inconsistent tower along the sigma-iota quotient")
    # The composite degree-4 map must have the same ramification along every path.
    composite = {
        2 * branch_bi + branch_aiota,
        2 * branch_bsigma + branch_asigma,
        2 * branch_bsigmaiota + branch_asigmaiota,
    }
    if len(composite) != 1 or riemann_hurwitz(g_bar, 4, composite.pop()) != g_top:
        raise CoverError("composite ramification differs between paths")
    if g_top + 2 * g_bar != g_D + g_sigma + g_sigmaiota:
        raise CoverError("genus relation for a (Z/2)^2 action fails")
    return GenusTable(g_top, g_sigma, g_sigmaiota, g_D, g_bar)


def quotient_sextic(l3: Poly, m: Poly, n: Poly) -> BinForm:
    """Discriminant in ``y`` of ``-1/4 l3 y^2 + m y + n``, i.e. ``m^2 + l3 n``."""
    if l3.degree != 1 or m.degree != 3 or n.degree != 5:
        raise CoverError("expected pieces of degrees 1, 3, 5")
    delta = m * m + l3 * n
    if delta.is_zero():
        raise CoverError("branch sextic vanishes identically")
    return BinForm.from_poly(delta, 6)


def fixed_point_count(D: Poly, slice_form: BinForm) -> int:
    """Roots of the ``x4 = 0`` slice plus the point ``[0,0,1]``."""
    if D.evaluate((0, 0, 1)) != 0:
        raise CoverError("[0,0,1] is not on the discriminant curve")
    if not is_squarefree(slice_form):
        raise CoverError("slice has a repeated root")
    return slice_form.degree + 1


# ---------------------------------------------------------------------------
# j-invariants
# ---------------------------------------------------------------------------

def _as_pair(z) -> tuple[complex, complex]:
    if isinstance(z, tuple):
        return complex(z[0]), complex(z[1])
    if z is None or (isinstance(z, float) and np.isinf(z)):
        return 1 + 0j, 0j
    return complex(z), 1 + 0j


def cross_ratio(points: Sequence) -> complex:
    p = [_as_pair(z) for z in points]
    if len(p) != 4:
        raise CoverError("cross ratio needs four points")
    p = [(a / np.hypot(abs(a), abs(b)), b / np.hypot(abs(a), abs(b))) for a, b in p]
    d = lambda i, j: p[i][0] * p[j][1] - p[j][0] * p[i][1]
    if min(abs(d(i, j)) for i, j in combinations(range(4), 2)) < 1e-12:
        raise CoverError("points are not distinct")
    return d(0, 2) * d(1, 3) / (d(1, 2) * d(0, 3))


def j_from_lambda(lam: complex) -> complex:
    return 256 * (lam * lam - lam + 1) ** 3 / (lam * lam * (lam - 1) ** 2)


def elliptic_j(points: Sequence) -> complex:
    """j-invariant of the double cover of P^1 branched at four points."""
    return j_from_lambda(cross_ratio(points))


def binary_quartic_j(b: BinForm) -> complex:
    if b.degree != 4:
        raise CoverError("expected a binary quartic")
    if not is_squarefree(b):
        raise CoverError("quartic has a repeated root")
    return elliptic_j(b.roots())


def plane_cubic_branch_quartic(f: Poly, l: Poly, e: Sequence) -> BinForm:
    """Branch quartic of the projection of ``f = l = 0`` from its point ``e``."""
    e = tuple(Fraction(x) for x in e)
    if f.nvars != 4 or l.nvars != 4 or len(e) != 4:
        raise CoverError("expected forms and a point in four variables")
    if f.evaluate(e) or l.evaluate(e):
        raise CoverError("point is not on the plane cubic")
    coeffs = [l.coeff(tuple(int(i == j) for j in range(4))) for i in range(4)]
    _, ker = kernel_and_rank([coeffs], 4)
    u1, u2 = complete_basis([e], 4, ker, target=3)
    a, b, c = (Poly.var(i, 3) for i in range(3))
    subs = [a * ei + b * x + c * y for ei, x, y in zip(e, u1, u2)]
    g = f.compose(subs)
    parts = g.split_by([0])
    if (3,) in parts:
        raise AssertionError("projection centre is not on the curve")
    z = Poly.zero(2)
    g1, g2, g3 = parts.get((2,), z), parts.get((1,), z), parts.get((0,), z)
    if g1.is_zero():
        raise CoverError("plane cubic is singular at the projection centre")
    return BinForm.from_poly(g2 * g2 - g1 * g3 * 4, 4)


def elliptic_curve_j(f: Poly, l: Poly, e: Sequence) -> complex:
    return binary_quartic_j(plane_cubic_branch_quartic(f, l, e))


def find_rational_point(f: Poly, l: Poly, bound: int = 4, avoid: Sequence = ()) -> tuple[Fraction, ...]:
    """Small-height rational point of ``f = l = 0`` avoiding the given points."""
    from itertools import product

    coeffs = [l.coeff(tuple(int(i == j) for j in range(4))) for i in range(4)]
    _, ker = kernel_and_rank([coeffs], 4)
    avoid = [tuple(Fraction(x) for x in a) for a in avoid]
    rng = range(-bound, bound + 1)
    cands = sorted(product(rng, repeat=3), key=lambda t: (sum(abs(x) for x in t), t))
    for t in cands:
        if not any(t):
            continue
        pt = tuple(sum(ti * k[i] for ti, k in zip(t, ker)) for i in range(4))
        if f.evaluate(pt):
            continue
        lead = next(x for x in pt if x)
        pt = tuple(x / lead for x in pt)
        if any(_same_point(pt, a) for a in avoid):
            continue
        return pt
    raise CoverError("no small rational point found on the plane cubic")


def _same_point(a, b) -> bool:
    return all(a[i] * b[j] == a[j] * b[i] for i in range(len(a)) for j in range(i + 1, len(a)))


@dataclass(frozen=True)
class SplitResult:
    pair: tuple[int, int]
    quartet: tuple[int, int, int, int]
    j: complex
    matches: bool


@dataclass(frozen=True)
class MumfordReport:
    j_E: complex
    roots: tuple[tuple[complex, complex], ...]
    splits: tuple[SplitResult, ...]

    @property
    def matching(self) -> list[SplitResult]:
        return [s for s in self.splits if s.matches]


def _root_key(r: tuple[complex, complex]):
    u, v = r
    if abs(v) < 1e-14:
        return (1, 0.0, 0.0)
    z = u / v
    return (0, round(z.real, 9), round(z.imag, 9))


def mumford_match(delta: BinForm, j_E: complex, rtol: float = 1e-6) -> MumfordReport:
    """Compare the j-invariant of each 4-point subset of the sextic's roots with ``j_E``.

    The tolerance is relative to ``max(1, |j_E|)``.
    """
    if delta.degree != 6:
        raise CoverError("expected a binary sextic")
    if not is_squarefree(delta):
        raise CoverError("branch sextic has a repeated root")
    roots = tuple(sorted(delta.roots(), key=_root_key))
    scale = max(1.0, abs(j_E))
    splits = []
    for pair in combinations(range(6), 2):
        quartet = tuple(i for i in range(6) if i not in pair)
        j = elliptic_j([roots[i] for i in quartet])
        splits.append(SplitResult(pair, quartet, j, abs(j - j_E) <= rtol * scale))
    report = MumfordReport(complex(j_E), roots, tuple(splits))
    if not report.matching:
        raise CoverError("no 2+4 split of the branch sextic matches j(E)")
    return report


def all_orderings_j(points: Sequence) -> list[complex]:
    return [elliptic_j(list(p)) for p in permutations(points)]
