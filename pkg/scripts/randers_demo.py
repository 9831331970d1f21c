"""Sweep the wind strength w0 and report how far each Randers metric is from reversible.

    python3 scripts/randers_demo.py --space E6_A4 --samples 200
"""

from __future__ import annotations

import argparse
import random
from dataclasses import dataclass
from fractions import Fraction

from e6randers.einstein import SPACES, solve_space
from e6randers.randers import (
    InadmissibleError,
    TangentVector,
    eval_randers,
    einstein_randers_family,
    reversibility_defect,
)

WINDS = ("0", "0.3", "-0.3", "0.9", "-0.9", "0.99", "1")


@dataclass(frozen=True)
class Config:
    space: str = "E6_A4"
    samples: int = 100
    seed: int = 0
    winds: tuple[str, ...] = WINDS


def random_vector(rng: random.Random, space) -> TangentVector:
    return TangentVector.from_flat(space, [Fraction(rng.randint(-100, 100), 10) for _ in range(space.dimension)])


def run(cfg: Config) -> None:
    space = SPACES[cfg.space]
    sols = solve_space(space)
    rng = random.Random(cfg.seed)
    ys = [random_vector(rng, space) for _ in range(cfg.samples)]
    print(f"{cfg.space}: {len(sols)} Einstein metrics, {cfg.samples} random directions each")
    print(f"{'sol':>3} {'w0':>6} {'max |F(y)-F(-y)|/F(y)':>22} {'max |defect|':>14}")
    for i in range(len(sols)):
        for w in cfg.winds:
            try:
                nav = einstein_randers_family(space, i, Fraction(w), sols)
            except InadmissibleError:
                print(f"{i:>3} {w:>6} {'inadmissible':>22}")
                continue
            asym = max(
                abs(eval_randers(nav, y).F_value - eval_randers(nav, -y).F_value) / eval_randers(nav, y).F_value
                for y in ys
            )
            defect = max(abs(reversibility_defect(nav, y)) for y in ys)
            print(f"{i:>3} {w:>6} {float(asym):>22.6f} {float(defect):>14.2e}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--space", choices=sorted(SPACES), default=Config.space)
    ap.add_argument("--samples", type=int, default=Config.samples)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    run(Config(a.space, a.samples, a.seed))


if __name__ == "__main__":
    main()
