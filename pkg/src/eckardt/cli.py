"""Command-line front end.

Every subcommand writes one JSON report to stdout. Exit status: 0 on success,
1 when a check fails, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import acceptance
from .covers import (
    CoverError,
    elliptic_curve_j,
    find_rational_point,
    fixed_point_count,
    klein_tower,
    mumford_match,
    quotient_sextic,
)
from .exactpoly import BinForm, Poly, PolyError, frac_str
from .fibrations import (
    FibrationError,
    eckardt_project_pointwise,
    eckardt_project_through_p,
    genericity_report,
)
from .fixtures import FIXTURE_NAMES, FixtureError, fixture_bytes
from .geometry import (
    CubicPair,
    EckardtCubic,
    GeometryError,
    LineInP,
    find_lines_numeric,
    line_residual,
    make_eckardt,
    parse_point,
)
from .jacobian import InvolutionAction, JacobianError, eigen_split, graded_dim, is_smooth_hypersurface
from .reconstruct import ReconstructionError, eckardt_from_triple, roundtrip_check


class InputError(Exception):
    """Malformed input (exit status 2)."""


class CheckFailure(Exception):
    """A mathematical check failed (exit status 1)."""


def _read(path: str) -> tuple[bytes, str]:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return data, hashlib.sha256(data).hexdigest()


def _json(path: str, digests: dict) -> object:
    data, digest = _read(path)
    digests[path] = digest
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _poly(path: str, digests: dict) -> Poly:
    obj = _json(path, digests)
    try:
        return Poly.from_json(obj)
    except PolyError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _threefold(path: str, digests: dict) -> EckardtCubic:
    obj = _json(path, digests)
    try:
        if isinstance(obj, dict) and "nvars" in obj:
            return EckardtCubic.from_form(Poly.from_json(obj))
        return EckardtCubic.from_json(obj)
    except PolyError as exc:
        raise InputError(f"{path}: {exc}") from exc
    except GeometryError as exc:
        if "singular" in str(exc):
            raise CheckFailure(str(exc)) from exc
        raise InputError(f"{path}: {exc}") from exc


def _line_file(path: str, digests: dict) -> LineInP:
    obj = _json(path, digests)
    if isinstance(obj, dict) and "line" in obj:
        obj = obj["line"]
    try:
        return LineInP.from_json(obj)
    except GeometryError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _line_spec(spec: str, X: EckardtCubic, digests: dict) -> tuple[str, LineInP]:
    kind, sep, body = spec.partition(":")
    if not sep:
        return "pointwise", _line_file(spec, digests)
    if kind == "through-p":
        try:
            e = parse_point(body)
        except GeometryError as exc:
            raise InputError(str(exc)) from exc
        if len(e) == 4:
            e = e + (Fraction(0),)
        if len(e) != 5:
            raise InputError("through-p point needs 4 or 5 coordinates")
        return "through-p", LineInP(X.p, e)
    if kind == "pointwise":
        return "pointwise", _line_file(body, digests)
    raise InputError(f"unknown line spec {spec!r}")


def _bin(b: BinForm) -> dict:
    return b.to_json()


def _cplx(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


# ---------------------------------------------------------------------------
# subcommands; each returns (results, ok)
# ---------------------------------------------------------------------------

def cmd_build(args, digests):
    f = _poly(args.f, digests)
    l = _poly(args.l, digests)
    try:
        pair = CubicPair(f, l)
    except GeometryError as exc:
        raise InputError(str(exc)) from exc
    try:
        X = make_eckardt(pair)
    except GeometryError as exc:
        return {"smooth": False, "error": str(exc)}, False
    if args.o:
        Path(args.o).write_text(json.dumps(X.to_json(), indent=1) + "\n")
    return {"smooth": True, "threefold": X.to_json()}, True


def cmd_project(args, digests):
    X = _threefold(args.x, digests)
    kind, ln = _line_spec(args.line, X, digests)
    if kind == "through-p":
        pr = eckardt_project_through_p(X, ln)
        smooth = pr.quartic_smooth()
        transverse = pr.line_transverse()
        res = {
            "kind": kind,
            "coordinates": pr.normal_form.T.to_json(),
            "k": pr.k.to_json(),
            "q": pr.q.to_json(),
            "c": pr.c.to_json(),
            "l": pr.l.to_json(),
            "quartic": pr.C.to_json(),
            "discriminant": pr.bundle.discriminant.to_json(),
            "factorization_holds": pr.bundle.discriminant == pr.l * pr.C,
            "quartic_smooth": smooth,
            "line_transverse": transverse,
        }
        return res, True
    pw = eckardt_project_pointwise(X, ln)
    res = {
        "kind": kind,
        "coordinates": pw.bundle.T.to_json(),
        "matrix": [[e.to_json() for e in row] for row in pw.bundle.M],
        "discriminant": pw.D.to_json(),
        "l3": pw.l3.to_json(),
        "m": pw.m.to_json(),
        "n": pw.n.to_json(),
        "slice": _bin(pw.slice),
        "Q": _bin(pw.Q),
        "B": _bin(pw.B),
        "expansion_holds": pw.expansion() == pw.D,
    }
    return res, True


def cmd_lines(args, digests):
    f = _poly(args.surface, digests)
    tol = args.tol if args.tol is not None else acceptance.default_tol()
    try:
        lines = find_lines_numeric(f, tol=tol, seed=args.seed)
    except GeometryError as exc:
        return {"error": str(exc)}, False
    return {
        "count": len(lines),
        "max_residual": max(line_residual(f, ln) for ln in lines),
        "lines": [ln.to_json() for ln in lines],
    }, True


def cmd_jacobian(args, digests):
    obj = _json(args.f, digests)
    try:
        if isinstance(obj, dict) and "F" in obj:
            F = Poly.from_json(obj["F"])
        else:
            F = Poly.from_json(obj)
    except PolyError as exc:
        raise InputError(str(exc)) from exc
    if args.degree < 0 or args.degree > 64:
        raise InputError("degree out of range")
    try:
        res = {"nvars": F.nvars, "degree": args.degree, "dim": graded_dim(F, args.degree)}
        res["smooth"] = is_smooth_hypersurface(F) if F.degree >= 2 else None
        if args.involution:
            act = InvolutionAction.parse(args.involution, args.twist)
            plus, minus = eigen_split(F, args.degree, act)
            res["involution"] = args.involution
            res["twist"] = act.twist
            res["split"] = {"plus": plus, "minus": minus}
    except JacobianError as exc:
        raise InputError(str(exc)) from exc
    return res, True


def cmd_check_generic(args, digests):
    X = _threefold(args.x, digests)
    ln = _line_file(args.line, digests)
    rep = genericity_report(X, ln)
    return {
        "generic": rep.generic,
        "resultant": frac_str(rep.resultant),
        "Q": _bin(rep.Q),
        "B": _bin(rep.B),
        "Q_reduced": rep.Q_reduced,
        "B_reduced": rep.B_reduced,
    }, rep.generic


def cmd_tower(args, digests):
    X = _threefold(args.x, digests)
    ln = _line_file(args.line, digests)
    if ln.ambient == 4:
        ln = LineInP(ln.A + (Fraction(0),), ln.B + (Fraction(0),))
    pw = eckardt_project_pointwise(X, ln)
    res = {"genera": klein_tower().as_tuple()}
    ok = True
    try:
        res["fixed_points"] = fixed_point_count(pw.D, pw.slice)
    except CoverError as exc:
        res["fixed_points_error"] = str(exc)
        ok = False
    delta = quotient_sextic(pw.l3, pw.m, pw.n)
    res["sextic"] = _bin(delta)
    if args.point:
        e = parse_point(args.point)[:4]
    else:
        meet = _line_meets_plane(X, ln)
        e = find_rational_point(X.f, X.l, avoid=[meet[:4]])
    res["curve_point"] = [frac_str(Fraction(x)) for x in e]
    try:
        jE = elliptic_curve_j(X.f, X.l, e)
        res["j_E"] = _cplx(jE)
        rep = mumford_match(delta, jE, rtol=args.rtol)
        res["splits"] = [
            {"pair": list(s.pair), "j": _cplx(s.j), "matches": s.matches} for s in rep.splits
        ]
        res["matching"] = [list(s.pair) for s in rep.matching]
    except CoverError as exc:
        res["mumford_error"] = str(exc)
        ok = False
    return res, ok


def _line_meets_plane(X: EckardtCubic, ln: LineInP) -> tuple:
    a, b = X.l.evaluate(ln.A[:4]), X.l.evaluate(ln.B[:4])
    return tuple(b * x - a * y for x, y in zip(ln.A, ln.B))


def cmd_reconstruct(args, digests):
    g = _poly(args.quartic, digests)
    k = _poly(args.bitangent, digests)
    l = _poly(args.line, digests)
    try:
        triple = eckardt_from_triple(g, k, l, allow_rescale=args.allow_rescale)
    except ReconstructionError as exc:
        return {"error": str(exc)}, False
    if args.o:
        Path(args.o).write_text(json.dumps(triple.X.to_json(), indent=1) + "\n")
    return {
        "threefold": triple.X.to_json(),
        "line": triple.line.to_json(),
        "scale": frac_str(triple.decomposition.scale),
    }, True


def cmd_roundtrip(args, digests):
    X = _threefold(args.x, digests)
    kind, ln = _line_spec(args.line, X, digests)
    rep = roundtrip_check(X, ln, seed=args.seed)
    return rep.to_json(), rep.passed


def cmd_verify(args, digests):
    cfg = acceptance.SuiteConfig.suite(args.suite)
    results = []
    for crit in acceptance.CRITERIA:
        r = crit(cfg)
        print(r.line(), file=sys.stderr)
        if args.timing:
            print(f"  {r.seconds:.2f}s", file=sys.stderr)
        results.append(r.to_json())
    return {"suite": args.suite, "criteria": results}, all(r["passed"] for r in results)


def cmd_fixture(args, digests):
    try:
        data = fixture_bytes(args.name)
    except FixtureError as exc:
        raise InputError(str(exc)) from exc
    if args.o:
        Path(args.o).write_bytes(data)
    return json.loads(data), True


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eckardt", description=__doc__)
    p.add_argument("--timing", action="store_true", help="print timings to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("build", help="threefold f + l*x4^2 from a surface and a plane")
    s.add_argument("--f", required=True)
    s.add_argument("--l", required=True)
    s.add_argument("-o")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("project", help="project from an invariant line")
    s.add_argument("--x", required=True)
    s.add_argument("--line", required=True, help="through-p:[e] or pointwise:FILE")
    s.set_defaults(func=cmd_project)

    s = sub.add_parser("lines", help="the 27 lines of a cubic surface")
    s.add_argument("--surface", required=True)
    s.add_argument("--tol", type=float)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_lines)

    s = sub.add_parser("jacobian", help="graded Jacobian ring dimension")
    s.add_argument("--f", required=True)
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--involution", help="e.g. diag:+,+,+,+,-")
    s.add_argument("--twist", type=int, choices=(1, -1))
    s.set_defaults(func=cmd_jacobian)

    s = sub.add_parser("check-generic", help="resultant test for a line of S")
    s.add_argument("--x", required=True)
    s.add_argument("--line", required=True)
    s.set_defaults(func=cmd_check_generic)

    s = sub.add_parser("tower", help="genera, branch sextic and j-invariant matching")
    s.add_argument("--x", required=True)
    s.add_argument("--line", required=True)
    s.add_argument("--point", help="rational point of f = l = 0")
    s.add_argument("--rtol", type=float, default=1e-6)
    s.set_defaults(func=cmd_tower)

    s = sub.add_parser("reconstruct", help="threefold from quartic, bitangent and line")
    s.add_argument("--quartic", required=True)
    s.add_argument("--bitangent", required=True)
    s.add_argument("--line", required=True)
    s.add_argument("--allow-rescale", action="store_true")
    s.add_argument("-o")
    s.set_defaults(func=cmd_reconstruct)

    s = sub.add_parser("roundtrip", help="project, reconstruct and compare")
    s.add_argument("--x", required=True)
    s.add_argument("--line", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_roundtrip)

    s = sub.add_parser("verify", help="run the acceptance checks")
    s.add_argument("--suite", choices=("fast", "smoke"), default="fast")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("fixture", help="write a named fixture")
    s.add_argument("name", choices=FIXTURE_NAMES)
    s.add_argument("-o")
    s.set_defaults(func=cmd_fixture)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    digests: dict[str, str] = {}
    t0 = time.perf_counter()
    try:
        results, ok = args.func(args, digests)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CheckFailure as exc:
        results, ok = {"error": str(exc)}, False
    except (GeometryError, FibrationError, CoverError, ReconstructionError, JacobianError) as exc:
        results, ok = {"error": str(exc)}, False
    report = {
        "command": args.command,
        "argv": list(argv if argv is not None else sys.argv[1:]),
        "inputs": digests,
        "ok": ok,
        "results": results,
    }
    sys.stdout.write(json.dumps(report, indent=1, default=_default) + "\n")
    if args.timing:
        print(f"elapsed {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    return 0 if ok else 1


def _default(obj):
    if isinstance(obj, Fraction):
        return frac_str(obj)
    if isinstance(obj, complex):
        return _cplx(obj)
    if isinstance(obj, tuple):
        return list(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


if __name__ == "__main__":
    sys.exit(main())
