"""Named, byte-stable fixtures."""

from __future__ import annotations

import json
from fractions import Fraction

from .exactpoly import Poly, variables
from .geometry import CubicPair, EckardtCubic, LineInP, make_eckardt
from .samples import pointwise_surface


class FixtureError(KeyError):
    pass


def fermat_surface() -> Poly:
    x = variables(4)
    return x[0] ** 3 + x[1] ** 3 + x[2] ** 3 + x[3] ** 3


def fix1_pair() -> CubicPair:
    return CubicPair(fermat_surface(), Poly.var(0, 4))


def fix2_pair() -> CubicPair:
    """Fermat surface with a tangent plane section; the threefold is singular."""
    x = variables(4)
    return CubicPair(fermat_surface(), x[0] + x[1])


def fix3_pair() -> CubicPair:
    x = variables(4)
    return CubicPair(x[0] ** 3 + x[1] ** 3 + x[2] ** 3 - 2 * x[3] ** 3, x[0])


FIX3_POINT = (Fraction(0), Fraction(1), Fraction(1), Fraction(1), Fraction(0))
ECKARDT_POINT = (Fraction(0),) * 4 + (Fraction(1),)

# Rational line of the Fermat surface, in P^3.
FIX1_LINE = LineInP((1, -1, 0, 0), (0, 0, 1, -1))
# A point of f = l = 0 for FIX1 other than where FIX1_LINE meets l = 0.
FIX1_CURVE_POINT = (Fraction(0), Fraction(1), Fraction(-1), Fraction(0))


def fix3_line() -> LineInP:
    return LineInP(ECKARDT_POINT, FIX3_POINT)


def _pieces_generic() -> list[Poly]:
    s, t = variables(2)
    return [
        -t,
        s - 2 * t,
        -2 * s + 2 * t,
        -2 * s**2 + 2 * t**2,
        -2 * s**2 + 2 * s * t - t**2,
        -2 * s**2 * t - 2 * s * t**2 + t**3,
    ]


def _pieces_collision() -> list[Poly]:
    # l3 = l2 = x2 and x2 | q2, so both degeneracy forms vanish at x2 = 0.
    s, t = variables(2)
    return [
        t,
        s,
        s,
        -(s**2) - 2 * t**2,
        2 * s**2 + 2 * s * t,
        2 * s**3 - 2 * s**2 * t + 2 * s * t**2 - 2 * t**3,
    ]


POINTWISE_LINE = LineInP((1, 0, 0, 0), (0, 1, 0, 0))
POINTWISE_CURVE_POINT = (Fraction(0), Fraction(0), Fraction(1), Fraction(0))


def pointwise_generic_pair() -> CubicPair:
    return CubicPair(pointwise_surface(*_pieces_generic()), Poly.var(0, 4))


def pointwise_collision_pair() -> CubicPair:
    return CubicPair(pointwise_surface(*_pieces_collision()), Poly.var(0, 4))


def fix1() -> EckardtCubic:
    return make_eckardt(fix1_pair())


def fix3() -> EckardtCubic:
    return make_eckardt(fix3_pair())


def fix3_quartic() -> dict[str, Poly]:
    from .fibrations import eckardt_project_through_p

    proj = eckardt_project_through_p(fix3(), fix3_line())
    return {"quartic": proj.C, "bitangent": proj.k, "line": proj.l}


def _pair_json(pair: CubicPair) -> dict:
    return {"f": pair.f.to_json(), "l": pair.l.to_json(), "F": pair.threefold().to_json()}


def fixture_object(name: str) -> dict:
    if name == "FIX1":
        return _pair_json(fix1_pair())
    if name == "FIX2":
        return _pair_json(fix2_pair())
    if name == "FIX3":
        obj = _pair_json(fix3_pair())
        obj["point"] = [f"{x.numerator}/{x.denominator}" for x in FIX3_POINT]
        return obj
    if name == "fermat-surface":
        return fermat_surface().to_json()
    if name == "fix3-line":
        return fix3_line().to_json()
    if name == "fix3-quartic":
        return {k: v.to_json() for k, v in fix3_quartic().items()}
    if name == "pointwise-generic":
        obj = _pair_json(pointwise_generic_pair())
        obj["line"] = POINTWISE_LINE.to_json()
        return obj
    if name == "pointwise-collision":
        obj = _pair_json(pointwise_collision_pair())
        obj["line"] = POINTWISE_LINE.to_json()
        return obj
    raise FixtureError(f"unknown fixture {name!r}")


FIXTURE_NAMES = (
    "FIX1",
    "FIX2",
    "FIX3",
    "fermat-surface",
    "fix3-line",
    "fix3-quartic",
    "pointwise-generic",
    "pointwise-collision",
)


def fixture_bytes(name: str) -> bytes:
    return (json.dumps(fixture_object(name), sort_keys=True, indent=1) + "\n").encode()
