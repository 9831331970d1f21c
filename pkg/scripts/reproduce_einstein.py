"""Solve both Einstein systems and print certified tuples with their error budget.

    python3 scripts/reproduce_einstein.py --digits 12 --eps 1e-15
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from fractions import Fraction

from e6randers.einstein import SPACES, run_pipeline
from e6randers.realroots import UnivariatePoly, format_decimal, format_scientific, isolate_roots


@dataclass(frozen=True)
class Config:
    digits: int = 12
    eps: Fraction = Fraction(1, 10**15)
    spaces: tuple[str, ...] = ("E6_A4", "E6_A1")


def describe_eliminant(result) -> str:
    uq = UnivariatePoly.from_polynomial(result.elimination, "x2")
    lines = [f"  eliminant degree {uq.degree}, {len(isolate_roots(uq))} real roots"]
    if sum(uq.coeffs) == 0:
        lines.append("  x2 = 1 is a root of the eliminant")
    for box in result.root_boxes:
        lines.append(f"    x2 ~ {format_decimal(box.value_estimate, 12)}")
    return "\n".join(lines)


def run(cfg: Config) -> None:
    for name in cfg.spaces:
        t0 = time.perf_counter()
        result = run_pipeline(name, cfg.eps)
        dt = time.perf_counter() - t0
        space = SPACES[name]
        print(f"{name}: {len(result.solutions)} positive metrics with u0 = 1 ({dt:.2f}s)")
        print(describe_eliminant(result))
        for i, s in enumerate(result.solutions):
            coords = ", ".join(
                f"{v}={format_decimal(s[v], cfg.digits)}" for v in space.unknowns
            )
            print(
                f"  [{i}] {coords}  K={format_decimal(s.einstein_constant, cfg.digits)}"
                f"  route={s.route}  residual={format_scientific(s.max_residual)}"
                f"  certified<={format_scientific(s.residual_bound)}"
            )
        print()


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--digits", type=int, default=Config.digits)
    ap.add_argument("--eps", type=Fraction, default=Config.eps)
    ap.add_argument("--space", action="append", choices=sorted(SPACES))
    a = ap.parse_args()
    run(Config(a.digits, a.eps, tuple(a.space) if a.space else Config.spaces))


if __name__ == "__main__":
    main()
