"""JSON run report for ``solve``."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from importlib import resources

from .einstein import PipelineResult, system_order
from .realroots import format_decimal, format_scientific

SCHEMA_VERSION = "1"


def load_schema() -> dict:
    return json.loads(resources.files("e6randers").joinpath("report.schema.json").read_text())


def _ratio(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass
class RunReport:
    space: str
    digits: int
    eps: str
    variables: list[str]
    system: list[str]
    elimination_polynomial: dict
    root_boxes: list[dict]
    solutions: list[dict]
    expected_solutions: int
    found_solutions: int
    timings: dict | None = None
    schema_version: str = field(default=SCHEMA_VERSION)

    @classmethod
    def from_pipeline(cls, result: PipelineResult, digits: int, eps: Fraction, timings=None) -> "RunReport":
        space = result.space
        order = system_order(space)
        coeffs = result.elimination.univariate_coefficients("x2")
        boxes = [
            {
                "lower": _ratio(b.lower),
                "upper": _ratio(b.upper),
                "value": format_decimal(b.value_estimate, digits),
            }
            for b in result.root_boxes
        ]
        sols = []
        for i, s in enumerate(result.solutions):
            sols.append(
                {
                    "index": i,
                    "params": {k: format_decimal(v, digits) for k, v in s.params.as_dict().items()},
                    "errors": {k: format_scientific(v) for k, v in s.errors.items()},
                    "einstein_constant": format_decimal(s.einstein_constant, digits),
                    "einstein_constant_error": format_scientific(s.einstein_constant_error),
                    "max_residual": format_scientific(s.max_residual),
                    "residual_bound": format_scientific(s.residual_bound),
                    "route": s.route,
                }
            )
        return cls(
            space=space.name,
            digits=digits,
            eps=_ratio(eps),
            variables=list(space.parameters),
            system=[p.format(order) for p in result.system],
            elimination_polynomial={
                "variable": "x2",
                "degree": len(coeffs) - 1,
                "coefficients": [int(c) for c in reversed(coeffs)],
                "text": result.elimination.format(),
            },
            root_boxes=boxes,
            solutions=sols,
            expected_solutions=space.expected_solutions,
            found_solutions=len(sols),
            timings=timings,
        )

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["timings"] is None:
            del d["timings"]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "RunReport":
        d = dict(d)
        d.setdefault("timings", None)
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls.from_dict(json.loads(text))
