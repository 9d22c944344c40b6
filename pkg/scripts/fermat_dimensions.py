"""Graded Jacobian-ring dimensions and tau-eigenspace splits for an Eckardt cubic threefold."""
import argparse
import json
from dataclasses import dataclass

from eckardt.fixtures import fix1, fix3
from eckardt.jacobian import eigen_split, graded_dim, period_differential_dims, tau


@dataclass(frozen=True)
class Config:
    fixture: str = "FIX1"
    max_degree: int = 6


def run(cfg: Config) -> dict:
    X = {"FIX1": fix1, "FIX3": fix3}[cfg.fixture]()
    dims = [graded_dim(X.F, d) for d in range(cfg.max_degree + 1)]
    splits = {twist: eigen_split(X.F, 1, tau(twist=twist)) for twist in (-1, 1)}
    per = period_differential_dims(X.F)
    return {
        "fixture": cfg.fixture,
        "graded_dims": dims,
        "degree1_split": {str(t): list(s) for t, s in splits.items()},
        "period_dims": [per.invariant_cubic_piece, per.sym2_eigenspace, per.cokernel],
    }


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fixture", choices=["FIX1", "FIX3"], default="FIX1")
    ap.add_argument("--max-degree", type=int, default=6)
    a = ap.parse_args()
    print(json.dumps(run(Config(a.fixture, a.max_degree)), indent=2))
