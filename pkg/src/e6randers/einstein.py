"""Invariant Einstein metrics on E6/A4 and E6/A1.

Both spaces come from the decomposition

    e6 = h0 + A4 + A1 + m1 + m2,    dims 1, 24, 3, 40, 10,

and an invariant metric is one positive scalar per tangent block: (u0, u2, x1, x2)
on h0, A1, m1, m2 for E6/A4 and (u0, u1, x1, x2) on h0, A4, m1, m2 for E6/A1.
The Killing form on each block is taken as the reference inner product, so
everything reduces to the block scalars. A metric is Einstein iff its four
Ricci components coincide.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Mapping, Sequence

from .groebner import GroebnerBasis, IdealBasis, buchberger, elimination_polynomial, saturate
from .interval import Interval
from .polyring import MonomialOrder, Polynomial, to_fraction
from .realroots import RootBox, UnivariatePoly, isolate_roots, refine_root
from .zerodim import RealPoint, project, solve_real


@dataclass(frozen=True)
class SpaceDescriptor:
    name: str
    blocks: tuple[tuple[str, int], ...]
    parameters: tuple[str, ...]
    # parameter scaling each block, in block order
    block_parameters: tuple[str, ...]
    expected_solutions: int

    @property
    def fiber(self) -> str:
        """Label of the second block (A1 on E6/A4, A4 on E6/A1)."""
        return self.blocks[1][0]

    @property
    def fiber_parameter(self) -> str:
        return self.parameters[1]

    @property
    def dimension(self) -> int:
        return sum(d for _, d in self.blocks)

    @property
    def cli_name(self) -> str:
        return self.name.lower().replace("_", "-")

    def block_dim(self, label: str) -> int:
        return dict(self.blocks)[label]

    @property
    def unknowns(self) -> tuple[str, ...]:
        """Variables of the normalized system (u0 = 1), highest first."""
        return self.parameters[1:]


E6_A4 = SpaceDescriptor(
    name="E6_A4",
    blocks=(("h0", 1), ("A1", 3), ("m1", 40), ("m2", 10)),
    parameters=("u0", "u2", "x1", "x2"),
    block_parameters=("u0", "u2", "x1", "x2"),
    expected_solutions=4,
)

E6_A1 = SpaceDescriptor(
    name="E6_A1",
    blocks=(("h0", 1), ("A4", 24), ("m1", 40), ("m2", 10)),
    parameters=("u0", "u1", "x1", "x2"),
    block_parameters=("u0", "u1", "x1", "x2"),
    expected_solutions=2,
)

SPACES = {s.name: s for s in (E6_A4, E6_A1)}


def get_space(name: str | SpaceDescriptor) -> SpaceDescriptor:
    if isinstance(name, SpaceDescriptor):
        return name
    key = name.strip().upper().replace("-", "_").replace("/", "_")
    try:
        return SPACES[key]
    except KeyError:
        raise ValueError(f"unknown space {name!r}; choose from e6-a4, e6-a1") from None


# Ricci components as sums of c * prod(param**k), exponents may be negative.
_F = Fraction
RICCI_TERMS: dict[str, dict[str, tuple[tuple[Fraction, dict[str, int]], ...]]] = {
    "E6_A4": {
        "h0": ((_F(1, 8), {"u0": 1, "x1": -2}), (_F(1, 8), {"u0": 1, "x2": -2})),
        "A1": ((_F(1, 24), {"u2": -1}), (_F(5, 24), {"u2": 1, "x1": -2})),
        "m1": (
            (_F(1, 2), {"x1": -1}),
            (_F(-1, 16), {"x2": 1, "x1": -2}),
            (_F(-1, 160), {"u0": 1, "x1": -2}),
            (_F(-1, 32), {"u2": 1, "x1": -2}),
        ),
        "m2": (
            (_F(1, 4), {"x2": -1}),
            (_F(1, 8), {"x2": 1, "x1": -2}),
            (_F(-1, 40), {"u0": 1, "x2": -2}),
        ),
    },
    "E6_A1": {
        "h0": ((_F(1, 8), {"u0": 1, "x1": -2}), (_F(1, 8), {"u0": 1, "x2": -2})),
        "A4": (
            (_F(5, 48), {"u1": -1}),
            (_F(1, 8), {"u1": 1, "x1": -2}),
            (_F(1, 48), {"u1": 1, "x2": -2}),
        ),
        "m1": (
            (_F(1, 2), {"x1": -1}),
            (_F(-1, 16), {"x2": 1, "x1": -2}),
            (_F(-1, 160), {"u0": 1, "x1": -2}),
            (_F(-3, 20), {"u1": 1, "x1": -2}),
        ),
        "m2": (
            (_F(1, 4), {"x2": -1}),
            (_F(1, 8), {"x2": 1, "x1": -2}),
            (_F(-1, 40), {"u0": 1, "x2": -2}),
            (_F(-1, 10), {"u1": 1, "x2": -2}),
        ),
    },
}


@dataclass(frozen=True)
class MetricParams:
    space: SpaceDescriptor
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(to_fraction(v) for v in self.values)
        if len(vals) != len(self.space.parameters):
            raise ValueError(f"{self.space.name} takes parameters {self.space.parameters}")
        if any(v <= 0 for v in vals):
            raise ValueError(f"metric parameters must be positive, got {[str(v) for v in vals]}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_mapping(cls, space, values: Mapping[str, object]) -> "MetricParams":
        space = get_space(space)
        vals = dict(values)
        vals.setdefault("u0", 1)
        unknown = set(vals) - set(space.parameters)
        if unknown:
            raise ValueError(f"unknown parameters {sorted(unknown)} for {space.name}")
        return cls(space, tuple(vals[p] for p in space.parameters))

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(self.space.parameters, self.values))

    def __getitem__(self, name: str) -> Fraction:
        return self.as_dict()[name]

    def scaled(self, t) -> "MetricParams":
        t = to_fraction(t)
        return MetricParams(self.space, tuple(t * v for v in self.values))

    def block_coefficient(self, label: str) -> Fraction:
        labels = [b for b, _ in self.space.blocks]
        return self.values[self.space.parameters.index(self.space.block_parameters[labels.index(label)])]


@dataclass(frozen=True)
class RicciComponents:
    space: SpaceDescriptor
    values: tuple  # one per block, in block order

    def as_dict(self) -> dict:
        return {label: v for (label, _), v in zip(self.space.blocks, self.values)}

    def max_residual(self):
        return max(self.values) - min(self.values)


def _eval_terms(terms, point: Mapping[str, object]):
    total = 0
    for c, exps in terms:
        t = c
        for v, k in exps.items():
            t = t * point[v] ** k
        total = total + t
    return total


def ricci_components(space, params: MetricParams) -> RicciComponents:
    """Exact Ricci components of an invariant metric."""
    space = get_space(space)
    if params.space != space:
        raise ValueError("parameters belong to a different space")
    point = params.as_dict()
    table = RICCI_TERMS[space.name]
    return RicciComponents(space, tuple(_eval_terms(table[b], point) for b, _ in space.blocks))


def ricci_enclosure(space, boxes: Mapping[str, Interval]) -> tuple[Interval, ...]:
    """Interval enclosures of the Ricci components over a parameter box."""
    space = get_space(space)
    point = dict(boxes)
    point.setdefault("u0", Interval.point(1))
    table = RICCI_TERMS[space.name]
    return tuple(_eval_terms(table[b], point) for b, _ in space.blocks)


# -------------------------------------------------------------- the system


def system_order(space) -> MonomialOrder:
    return MonomialOrder(get_space(space).unknowns)


def derive_einstein_system(space) -> list[Polynomial]:
    """r_h0 - r_b = 0 for the three other blocks b, at u0 = 1, denominators cleared.

    Each difference is multiplied by its monomial denominator and then by the
    positive rational making the coefficients coprime integers.
    """
    space = get_space(space)
    ring = space.unknowns
    table = RICCI_TERMS[space.name]
    head = table["h0"]
    out = []
    for label, _ in space.blocks[1:]:
        laurent: dict[tuple[int, ...], Fraction] = {}
        for sign, terms in ((1, head), (-1, table[label])):
            for c, exps in terms:
                e = tuple(exps.get(v, 0) for v in ring)
                laurent[e] = laurent.get(e, 0) + sign * c
        laurent = {e: c for e, c in laurent.items() if c}
        shift = [-min(min(e[i] for e in laurent), 0) for i in range(len(ring))]
        poly = Polynomial(ring, {tuple(k + s for k, s in zip(e, shift)): c for e, c in laurent.items()})
        out.append(poly.primitive())
    return out


def format_system(space) -> str:
    order = system_order(space)
    return "".join(f"{p.format(order)}\n" for p in derive_einstein_system(space))


def saturated_ideal(space) -> IdealBasis:
    space = get_space(space)
    basis = IdealBasis(tuple(derive_einstein_system(space)), system_order(space))
    return saturate(basis, space.unknowns)


@lru_cache(maxsize=None)
def _groebner_cached(name: str, max_pairs: int | None) -> GroebnerBasis:
    return buchberger(saturated_ideal(name), max_pairs)


def einstein_groebner_basis(space, max_pairs: int | None = None) -> GroebnerBasis:
    return _groebner_cached(get_space(space).name, max_pairs)


def einstein_elimination_polynomial(space, max_pairs: int | None = None) -> Polynomial:
    return elimination_polynomial(einstein_groebner_basis(space, max_pairs), "x2")


# ---------------------------------------------------------------- solutions


@dataclass(frozen=True)
class SolutionTuple:
    """A certified positive Einstein metric with u0 = 1."""

    params: MetricParams
    errors: dict[str, Fraction]
    einstein_constant: Fraction
    einstein_constant_error: Fraction
    max_residual: Fraction
    route: str = "shape"
    # sup of |r_i - r_j| over the enclosure box: certified, shrinks with eps
    residual_bound: Fraction | None = None

    @property
    def space(self) -> SpaceDescriptor:
        return self.params.space

    def __getitem__(self, name: str) -> Fraction:
        return self.params[name]

    def enclosure(self, name: str) -> Interval:
        return Interval.around(self.params[name], self.errors[name])


@dataclass
class PipelineResult:
    space: SpaceDescriptor
    system: list[Polynomial]
    groebner: GroebnerBasis
    elimination: Polynomial
    root_boxes: list[RootBox]
    real_points: list[RealPoint]
    solutions: list[SolutionTuple] = field(default_factory=list)

    @property
    def expected_count_found(self) -> bool:
        return len(self.solutions) == self.space.expected_solutions


def _to_solution(space: SpaceDescriptor, pt: RealPoint) -> SolutionTuple | None:
    if any(pt.enclosures[v].lo <= 0 for v in space.unknowns):
        return None
    values = {"u0": Fraction(1), **{v: pt.values[v] for v in space.unknowns}}
    params = MetricParams.from_mapping(space, values)
    errors = {"u0": Fraction(0), **{v: pt.error_bound(v) for v in space.unknowns}}
    ric = ricci_components(space, params)
    encl = ricci_enclosure(space, {v: pt.enclosures[v] for v in space.unknowns})
    K = ric.values[0]
    K_err = max(K - encl[0].lo, encl[0].hi - K)
    bound = max(max(a.hi - b.lo, b.hi - a.lo) for a, b in combinations(encl, 2))
    return SolutionTuple(params, errors, K, K_err, ric.max_residual(), pt.route, bound)


def run_pipeline(
    space, eps=Fraction(1, 10**12), max_pairs: int | None = None, newton: bool = True
) -> PipelineResult:
    """System -> saturation -> Groebner basis -> eliminant -> roots -> tuples."""
    space = get_space(space)
    eps = to_fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    G = einstein_groebner_basis(space, max_pairs)
    elim = elimination_polynomial(G, "x2")
    uq = UnivariatePoly.from_polynomial(elim, "x2")
    boxes = [refine_root(uq, b, eps, newton) for b in isolate_roots(uq)]
    points = solve_real(project(G, space.unknowns), eps, max_pairs, newton)
    sols = [s for s in (_to_solution(space, p) for p in points) if s is not None]
    sols.sort(key=lambda s: (s["x2"], s["x1"], s[space.fiber_parameter]))
    return PipelineResult(space, derive_einstein_system(space), G, elim, boxes, points, sols)


def solve_space(space, eps=Fraction(1, 10**12), max_pairs: int | None = None) -> list[SolutionTuple]:
    """Positive Einstein metrics (u0 = 1), ascending in x2."""
    return run_pipeline(space, eps, max_pairs).solutions


@dataclass(frozen=True)
class VerificationReport:
    max_residual: Fraction
    einstein_constant: Fraction
    tolerance: Fraction
    components: RicciComponents

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance


def verify_solution(space, params: MetricParams, tol) -> VerificationReport:
    """Largest pairwise gap between Ricci components, evaluated exactly."""
    ric = ricci_components(space, params)
    return VerificationReport(ric.max_residual(), ric.values[0], to_fraction(tol), ric)


def params_from_values(space, values: Sequence) -> MetricParams:
    """Build parameters from the unknowns only, with u0 = 1."""
    space = get_space(space)
    return MetricParams(space, (Fraction(1), *values))
