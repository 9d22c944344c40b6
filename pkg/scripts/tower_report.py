"""Klein-tower genera, branch sextic and Mumford split for a pointwise Eckardt line."""
import argparse
import json
from dataclasses import dataclass

from eckardt.covers import elliptic_curve_j, find_rational_point, klein_tower, mumford_match, quotient_sextic
from eckardt.exactpoly import is_squarefree
from eckardt.fibrations import check_generic, eckardt_project_pointwise
from eckardt.fixtures import FIX1_LINE, POINTWISE_LINE, fix1, pointwise_collision_pair, pointwise_generic_pair
from eckardt.geometry import LineInP, make_eckardt

INSTANCES = {
    "generic": (pointwise_generic_pair, POINTWISE_LINE),
    "collision": (pointwise_collision_pair, POINTWISE_LINE),
    "FIX1": (lambda: fix1().pair, LineInP(FIX1_LINE.A + (0,), FIX1_LINE.B + (0,))),
}


@dataclass(frozen=True)
class Config:
    instance: str = "generic"
    rtol: float = 1e-6


def run(cfg: Config) -> dict:
    make_pair, line = INSTANCES[cfg.instance]
    X = make_eckardt(make_pair())
    proj = eckardt_project_pointwise(X, line)
    delta = quotient_sextic(proj.l3, proj.m, proj.n)
    out = {
        "instance": cfg.instance,
        "genera": list(klein_tower().as_tuple()),
        "generic": check_generic(X, line),
        "sextic_squarefree": is_squarefree(delta),
    }
    if out["sextic_squarefree"]:
        e = find_rational_point(X.f, X.l, avoid=[(1, 0, 0, 0)])
        j = elliptic_curve_j(X.f, X.l, e)
        rep = mumford_match(delta, j, cfg.rtol)
        out["j_E"] = j.real
        out["matching_splits"] = [list(s.pair) for s in rep.matching]
    return out


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--instance", choices=["generic", "collision", "FIX1"], default="generic")
    ap.add_argument("--rtol", type=float, default=1e-6)
    a = ap.parse_args()
    print(json.dumps(run(Config(a.instance, a.rtol)), indent=2))
