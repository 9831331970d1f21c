"""Einstein-Randers metrics from navigation data on the solved spaces.

Navigation data is an Einstein metric ``h`` and a vector ``W = w0 * e`` along
the one-dimensional h0 block. The Randers norm is

    F(y) = (sqrt(h(W,y)^2 + lam * h(y,y)) - h(W,y)) / lam,   lam = 1 - h(W,W) > 0.

Since W lies in the isotropy algebra and h is Ad(H)-invariant, W extends to a
G-invariant Killing field, so F is Einstein with the same constant as h. That
Killing property is assumed here, not checked against E6 structure constants.

Inner products are exact rationals; the one square root is taken in decimal
arithmetic at ``PRECISION`` significant digits with correct rounding, which
gives the ``error_bound`` reported with every evaluation.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .einstein import MetricParams, SolutionTuple, SpaceDescriptor, get_space, solve_space
from .polyring import to_fraction

PRECISION = 30


class InadmissibleError(ValueError):
    """h(W, W) >= 1: the data does not define a Randers metric."""


@dataclass(frozen=True)
class TangentVector:
    space: SpaceDescriptor
    blocks: tuple[tuple[Fraction, ...], ...]  # in the space's block order

    def __post_init__(self):
        if len(self.blocks) != len(self.space.blocks):
            raise ValueError(f"{self.space.name} has {len(self.space.blocks)} blocks")
        clean = []
        for (label, dim), comps in zip(self.space.blocks, self.blocks):
            comps = tuple(to_fraction(c) for c in comps)
            if len(comps) != dim:
                raise ValueError(f"block {label} needs {dim} components, got {len(comps)}")
            clean.append(comps)
        object.__setattr__(self, "blocks", tuple(clean))

    @classmethod
    def zeros(cls, space) -> "TangentVector":
        space = get_space(space)
        return cls(space, tuple((0,) * d for _, d in space.blocks))

    @classmethod
    def from_blocks(cls, space, components: Mapping[str, Sequence]) -> "TangentVector":
        """Missing blocks are zero; short component lists are zero-padded."""
        space = get_space(space)
        labels = [b for b, _ in space.blocks]
        unknown = set(components) - set(labels)
        if unknown:
            raise ValueError(f"unknown blocks {sorted(unknown)}; {space.name} has {labels}")
        out = []
        for label, dim in space.blocks:
            comps = list(components.get(label, ()))
            if len(comps) > dim:
                raise ValueError(f"block {label} has only {dim} components")
            out.append(tuple(comps) + (0,) * (dim - len(comps)))
        return cls(space, tuple(out))

    @classmethod
    def from_flat(cls, space, values: Sequence) -> "TangentVector":
        space = get_space(space)
        if len(values) != space.dimension:
            raise ValueError(f"{space.name} has dimension {space.dimension}")
        out, i = [], 0
        for _, d in space.blocks:
            out.append(tuple(values[i : i + d]))
            i += d
        return cls(space, tuple(out))

    def block(self, label: str) -> tuple[Fraction, ...]:
        return self.blocks[[b for b, _ in self.space.blocks].index(label)]

    def __neg__(self):
        return TangentVector(self.space, tuple(tuple(-c for c in b) for b in self.blocks))

    def __add__(self, other: "TangentVector"):
        if other.space != self.space:
            raise ValueError("vectors on different spaces")
        return TangentVector(
            self.space, tuple(tuple(a + b for a, b in zip(p, q)) for p, q in zip(self.blocks, other.blocks))
        )

    def scale(self, t) -> "TangentVector":
        t = to_fraction(t)
        return TangentVector(self.space, tuple(tuple(t * c for c in b) for b in self.blocks))

    def is_zero(self) -> bool:
        return not any(any(b) for b in self.blocks)


def block_inner(h: MetricParams, y: TangentVector, z: TangentVector) -> Fraction:
    """sum over blocks of (block scalar) * (dot product of the block components)."""
    if y.space != h.space or z.space != h.space:
        raise ValueError("vector and metric live on different spaces")
    total = Fraction(0)
    for (label, _), a, b in zip(h.space.blocks, y.blocks, z.blocks):
        total += h.block_coefficient(label) * sum(p * q for p, q in zip(a, b))
    return total


@dataclass(frozen=True)
class NavigationData:
    space: SpaceDescriptor
    h: MetricParams
    w0: Fraction
    einstein_constant: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "w0", to_fraction(self.w0))
        if self.h.space != self.space:
            raise ValueError("metric belongs to a different space")

    @property
    def wind(self) -> TangentVector:
        return TangentVector.from_blocks(self.space, {"h0": [self.w0]})

    @property
    def wind_norm_squared(self) -> Fraction:
        return self.h["u0"] * self.w0**2

    @property
    def lam(self) -> Fraction:
        return 1 - self.wind_norm_squared

    @property
    def admissible(self) -> bool:
        return self.lam > 0

    @property
    def non_riemannian(self) -> bool:
        return self.w0 != 0


@dataclass(frozen=True)
class RandersEvaluation:
    F_value: decimal.Decimal
    alpha_part: decimal.Decimal
    beta_part: decimal.Decimal
    error_bound: decimal.Decimal

    def __float__(self):
        return float(self.F_value)


def _decimal(x: Fraction) -> decimal.Decimal:
    return decimal.Decimal(x.numerator) / decimal.Decimal(x.denominator)


def eval_randers(nav: NavigationData, y: TangentVector, precision: int = PRECISION) -> RandersEvaluation:
    if not nav.admissible:
        raise InadmissibleError(f"h(W,W) = {nav.wind_norm_squared} >= 1")
    lam = nav.lam
    hWy = block_inner(nav.h, nav.wind, y)
    radicand = hWy**2 + lam * block_inner(nav.h, y, y)
    with decimal.localcontext() as ctx:
        ctx.prec = precision
        lam_d = _decimal(lam)
        alpha = _decimal(radicand).sqrt() / lam_d
        beta = -_decimal(hWy) / lam_d
        F = alpha + beta
        # six correctly rounded operations, each within half an ulp
        bound = 3 * (abs(alpha) + abs(beta)) * decimal.Decimal(10) ** (1 - precision)
    return RandersEvaluation(F, alpha, beta, bound)


def riemannian_norm(h: MetricParams, y: TangentVector, precision: int = PRECISION) -> decimal.Decimal:
    with decimal.localcontext() as ctx:
        ctx.prec = precision
        return _decimal(block_inner(h, y, y)).sqrt()


def reversibility_defect(nav: NavigationData, y: TangentVector, precision: int = PRECISION) -> decimal.Decimal:
    """F(y) + F(-y) - 2 sqrt(h(W,y)^2 + h(y,y) lam) / lam; zero up to rounding."""
    lam = nav.lam
    hWy = block_inner(nav.h, nav.wind, y)
    with decimal.localcontext() as ctx:
        ctx.prec = precision
        expected = 2 * _decimal(hWy**2 + lam * block_inner(nav.h, y, y)).sqrt() / _decimal(lam)
        return eval_randers(nav, y, precision).F_value + eval_randers(nav, -y, precision).F_value - expected


def is_riemannian(nav: NavigationData) -> bool:
    """Reversible iff Riemannian iff W = 0 (exact test, no tolerance)."""
    if not nav.admissible:
        raise InadmissibleError(f"h(W,W) = {nav.wind_norm_squared} >= 1")
    return nav.w0 == 0


def spanning_directions(space) -> list[TangentVector]:
    """The coordinate basis of the tangent space, block by block."""
    space = get_space(space)
    flat = [0] * space.dimension
    out = []
    for i in range(space.dimension):
        flat[i] = 1
        out.append(TangentVector.from_flat(space, flat))
        flat[i] = 0
    return out


def einstein_randers_family(
    space, solution_index: int, w0, solutions: Sequence[SolutionTuple] | None = None
) -> NavigationData:
    """Navigation data (h, w0 along h0) for the given Einstein solution.

    The Randers metric is Einstein with h's constant; it is non-Riemannian
    exactly when w0 != 0.
    """
    space = get_space(space)
    sols = list(solutions) if solutions is not None else _default_solutions(space.name)
    if not 0 <= solution_index < len(sols):
        raise IndexError(f"{space.name} has solutions 0..{len(sols) - 1}, not {solution_index}")
    sol = sols[solution_index]
    nav = NavigationData(space, sol.params, to_fraction(w0), sol.einstein_constant)
    if not nav.admissible:
        raise InadmissibleError(f"|w0| = {abs(nav.w0)} must be below 1/sqrt(u0) = 1")
    return nav


_SOLUTION_CACHE: dict[str, list[SolutionTuple]] = {}


def _default_solutions(name: str) -> list[SolutionTuple]:
    if name not in _SOLUTION_CACHE:
        _SOLUTION_CACHE[name] = solve_space(name)
    return _SOLUTION_CACHE[name]
