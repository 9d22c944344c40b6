"""Count lines on random smooth cubic surfaces and check the marked point of FIX3 lies on none."""
import argparse
import json
import random
from dataclasses import dataclass

from eckardt.fixtures import FIX3_POINT, fix3
from eckardt.geometry import find_lines_numeric, line_residual
from eckardt.samples import random_smooth_surface


@dataclass(frozen=True)
class Config:
    surfaces: int = 5
    seed: int = 0


def run(cfg: Config) -> dict:
    rng = random.Random(cfg.seed)
    census = []
    for _ in range(cfg.surfaces):
        f = random_smooth_surface(rng)
        lines = find_lines_numeric(f, seed=cfg.seed)
        census.append({"count": len(lines), "max_residual": max(line_residual(f, m) for m in lines)})
    fix3_lines = find_lines_numeric(fix3().f, seed=cfg.seed)
    through_e = int(sum(m.contains_point(FIX3_POINT[:4]) for m in fix3_lines))
    return {"random_surfaces": census, "fix3_surface": {"count": len(fix3_lines), "through_marked_point": through_e}}


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--surfaces", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    print(json.dumps(run(Config(a.surfaces, a.seed)), indent=2))
