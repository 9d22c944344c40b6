"""Seeded random instances with small integer coefficients.

Normalized pieces are built first and then hidden behind a random integer
change of the coordinates ``x0..x3``, so downstream code has to find the
normal forms on its own.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .exactpoly import LinearChange, Poly, PolyError, apply_linear_change, graded_basis
from .geometry import CubicPair, EckardtCubic, GeometryError, LineInP, make_eckardt
from .jacobian import is_smooth_hypersurface
from .reconstruct import assemble_threefold, line_is_transverse


@dataclass(frozen=True)
class SampleConfig:
    coeff_bound: int = 3
    gl_bound: int = 2
    max_tries: int = 200


def random_form(nvars: int, degree: int, rng: random.Random, bound: int = 3, skip=()) -> Poly:
    while True:
        p = Poly(nvars, {e: rng.randint(-bound, bound) for e in graded_basis(nvars, degree) if e not in skip})
        if p:
            return p


def random_gl(n: int, rng: random.Random, bound: int = 2) -> LinearChange:
    while True:
        try:
            return LinearChange(tuple(tuple(rng.randint(-bound, bound) for _ in range(n)) for _ in range(n)))
        except PolyError:
            continue


def _hide(X_F: Poly, A: LinearChange) -> EckardtCubic:
    F = apply_linear_change(X_F, A.extend(5))
    return EckardtCubic.from_form(F)


def random_smooth_eckardt(rng: random.Random, cfg: SampleConfig = SampleConfig()) -> EckardtCubic:
    for _ in range(cfg.max_tries):
        f = random_form(4, 3, rng, cfg.coeff_bound)
        l = random_form(4, 1, rng, cfg.coeff_bound)
        try:
            return make_eckardt(CubicPair(f, l))
        except GeometryError:
            continue
    raise RuntimeError("no smooth instance found")


def random_smooth_surface(rng: random.Random, cfg: SampleConfig = SampleConfig()) -> Poly:
    for _ in range(cfg.max_tries):
        f = random_form(4, 3, rng, cfg.coeff_bound)
        if is_smooth_hypersurface(f):
            return f
    raise RuntimeError("no smooth surface found")


def random_triple(rng: random.Random, cfg: SampleConfig = SampleConfig()) -> tuple[Poly, Poly, Poly]:
    """``(g, k, l)`` with ``g = k c0 - q0^2`` smooth and ``l`` transverse to it."""
    for _ in range(cfg.max_tries):
        k = random_form(3, 1, rng, cfg.coeff_bound)
        q0 = random_form(3, 2, rng, cfg.coeff_bound)
        c0 = random_form(3, 3, rng, cfg.coeff_bound)
        l = random_form(3, 1, rng, cfg.coeff_bound)
        g = k * c0 - q0 * q0
        if not is_smooth_hypersurface(g) or not line_is_transverse(g, l):
            continue
        if not is_smooth_hypersurface(assemble_threefold(k, q0, c0, l)):
            continue
        return g, k, l
    raise RuntimeError("no valid triple found")


def random_through_p_instance(
    rng: random.Random, cfg: SampleConfig = SampleConfig(), hide: bool = True
) -> tuple[EckardtCubic, LineInP]:
    """Smooth threefold with a ruling line through ``[0,0,0,0,1]``."""
    for _ in range(cfg.max_tries):
        k = random_form(3, 1, rng, cfg.coeff_bound)
        q = random_form(3, 2, rng, cfg.coeff_bound)
        c = random_form(3, 3, rng, cfg.coeff_bound)
        l = random_form(3, 1, rng, cfg.coeff_bound)
        F = assemble_threefold(k, q, c, l)
        if not is_smooth_hypersurface(F):
            continue
        A = random_gl(4, rng, cfg.gl_bound) if hide else LinearChange.identity(4)
        X = _hide(F, A)
        e = A.inverse().apply_point((0, 0, 0, 1))
        return X, LineInP((0, 0, 0, 0, 1), tuple(e) + (Fraction(0),))
    raise RuntimeError("no smooth instance found")


def pointwise_surface(l1, l2, l3, q1, q2, c) -> Poly:
    """``l1 x0^2 + 2 l2 x0 x1 + l3 x1^2 + 2 q1 x0 + 2 q2 x1 + c`` with pieces in ``x2, x3``."""
    lift = lambda p: p.embed(4, [2, 3])
    x0, x1 = Poly.var(0, 4), Poly.var(1, 4)
    return (
        lift(l1) * x0 * x0
        + lift(l2) * x0 * x1 * 2
        + lift(l3) * x1 * x1
        + lift(q1) * x0 * 2
        + lift(q2) * x1 * 2
        + lift(c)
    )


def random_pointwise_instance(
    rng: random.Random, cfg: SampleConfig = SampleConfig(), hide: bool = True
) -> tuple[EckardtCubic, LineInP]:
    """Smooth threefold with a line of ``S`` (given in P^3)."""
    for _ in range(cfg.max_tries):
        pieces = [random_form(2, d, rng, cfg.coeff_bound) for d in (1, 1, 1, 2, 2, 3)]
        f = pointwise_surface(*pieces)
        try:
            make_eckardt(CubicPair(f, Poly.var(0, 4)))
        except GeometryError:
            continue
        A = random_gl(4, rng, cfg.gl_bound) if hide else LinearChange.identity(4)
        X = make_eckardt(CubicPair(apply_linear_change(f, A), apply_linear_change(Poly.var(0, 4), A)))
        Ai = A.inverse()
        return X, LineInP(Ai.apply_point((1, 0, 0, 0)), Ai.apply_point((0, 1, 0, 0)))
    raise RuntimeError("no smooth instance found")
