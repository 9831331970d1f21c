"""Time Buchberger on the saturated Einstein ideals and on random small ideals.

    python3 scripts/benchmark_groebner.py --random 200 --seed 1
"""

from __future__ import annotations

import argparse
import random
import statistics
import time
from dataclasses import dataclass

from e6randers.einstein import SPACES, saturated_ideal
from e6randers.groebner import IdealBasis, buchberger
from e6randers.polyring import MonomialOrder, Polynomial


@dataclass(frozen=True)
class Config:
    random_ideals: int = 100
    max_vars: int = 3
    max_degree: int = 3
    max_generators: int = 3
    seed: int = 0


def random_ideal(rng: random.Random, cfg: Config) -> IdealBasis:
    n = rng.randint(1, cfg.max_vars)
    ring = tuple("xyzw"[:n])
    gens = []
    for _ in range(rng.randint(1, cfg.max_generators)):
        terms = {}
        for _ in range(rng.randint(1, 4)):
            e = [0] * n
            for _ in range(rng.randint(0, cfg.max_degree)):
                e[rng.randrange(n)] += 1
            terms[tuple(e)] = rng.randint(-5, 5)
        p = Polynomial(ring, terms)
        if not p.is_zero():
            gens.append(p)
    return IdealBasis(tuple(gens) or (Polynomial.variable(ring, "x"),), MonomialOrder(ring))


def run(cfg: Config) -> None:
    for name in SPACES:
        t0 = time.perf_counter()
        G = buchberger(saturated_ideal(name))
        dt = time.perf_counter() - t0
        print(f"{name}: {len(G)} basis elements in {dt:.3f}s  stats={G.stats}")
    rng = random.Random(cfg.seed)
    times, sizes = [], []
    for _ in range(cfg.random_ideals):
        ideal = random_ideal(rng, cfg)
        t0 = time.perf_counter()
        G = buchberger(ideal)
        times.append(time.perf_counter() - t0)
        sizes.append(len(G))
    print(
        f"{cfg.random_ideals} random ideals: median {statistics.median(times) * 1e3:.2f}ms, "
        f"max {max(times) * 1e3:.2f}ms, mean basis size {statistics.mean(sizes):.2f}"
    )


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--random", type=int, default=Config.random_ideals)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    run(Config(random_ideals=a.random, seed=a.seed))


if __name__ == "__main__":
    main()
