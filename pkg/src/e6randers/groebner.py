"""Buchberger's algorithm, saturation by an auxiliary variable, lex elimination."""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .polyring import (
    MonomialOrder,
    Polynomial,
    RingMismatchError,
    ZeroPolynomialError,
    leading_term,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomials_coprime,
    normal_form,
)

BUDGET_ENV = "E6RANDERS_MAX_PAIRS"
DEFAULT_MAX_PAIRS = 10**6


class GroebnerBudgetExceeded(RuntimeError):
    pass


class EliminationError(ValueError):
    """The basis has no usable univariate element."""


class ShapeError(ValueError):
    """Some dependent variable is not a polynomial in the base variable."""


@dataclass(frozen=True)
class IdealBasis:
    generators: tuple[Polynomial, ...]
    order: MonomialOrder

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise ValueError("an ideal basis needs at least one generator")
        ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError("generators live in different rings")
            if g.is_zero():
                raise ZeroPolynomialError("zero generator")
        if set(self.order.precedence) != set(ring):
            raise RingMismatchError(f"order {self.order} does not match ring {ring}")
        deduped = tuple(dict.fromkeys(gens))
        object.__setattr__(self, "generators", deduped)

    @property
    def ring(self) -> tuple[str, ...]:
        return self.generators[0].ring


@dataclass(frozen=True)
class GroebnerBasis:
    elements: tuple[Polynomial, ...]
    order: MonomialOrder
    reduced: bool = True
    stats: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def ring(self) -> tuple[str, ...]:
        return self.elements[0].ring

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def reduce(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self.elements, self.order)

    def contains(self, p: Polynomial) -> bool:
        return self.reduce(p).is_zero()


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomialError("S-polynomial of a zero polynomial")
    if f.ring != g.ring:
        raise RingMismatchError("S-polynomial across rings")
    mf, cf = leading_term(f, order)
    mg, cg = leading_term(g, order)
    lcm = monomial_lcm(mf, mg)
    return f.mul_term(monomial_div(lcm, mf), 1 / cf) - g.mul_term(monomial_div(lcm, mg), 1 / cg)


def _budget(max_pairs: int | None) -> int:
    if max_pairs is not None:
        return max_pairs
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else DEFAULT_MAX_PAIRS


def buchberger(basis: IdealBasis, max_pairs: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of ``basis`` under ``basis.order``.

    Pairs are processed by the normal strategy (smallest lcm first, ties broken
    by index) and skipped by the coprime and chain criteria.
    """
    order = basis.order
    key = order.key(basis.ring)
    budget = _budget(max_pairs)

    G: list[Polynomial] = []
    heads = []
    queue: list = []
    pending: set[tuple[int, int]] = set()

    def add(h: Polynomial):
        lm = leading_term(h, order)[0]
        j = len(G)
        G.append(h)
        heads.append(lm)
        for i in range(j):
            lcm = monomial_lcm(heads[i], lm)
            heapq.heappush(queue, (key(lcm), i, j, lcm))
            pending.add((i, j))

    for g in basis.generators:
        g = g.primitive()
        if g.is_constant():
            G, heads, queue = [], [], []
            add(Polynomial.constant(basis.ring, 1))
            break
        if g not in G:
            add(g)

    processed = skipped = 0
    while queue:
        _, i, j, lcm = heapq.heappop(queue)
        pending.discard((i, j))
        if monomials_coprime(heads[i], heads[j]):
            skipped += 1
            continue
        if _chain_skip(i, j, lcm, heads, pending):
            skipped += 1
            continue
        processed += 1
        if processed > budget:
            raise GroebnerBudgetExceeded(
                f"gave up after {budget} pair reductions ({len(G)} basis elements so far); "
                f"raise the limit with {BUDGET_ENV}"
            )
        h = normal_form(s_polynomial(G[i], G[j], order), G, order)
        if h.is_zero():
            continue
        h = h.primitive()
        if h.is_constant():
            G, heads, queue, pending = [], [], [], set()
            add(Polynomial.constant(basis.ring, 1))
            break
        add(h)

    elements = _reduce_basis(G, order)
    stats = {"pairs_reduced": processed, "pairs_skipped": skipped, "intermediate_size": len(G)}
    return GroebnerBasis(tuple(elements), order, True, stats)


def _chain_skip(i, j, lcm, heads, pending) -> bool:
    # Buchberger's second criterion.
    for k, lm in enumerate(heads):
        if k == i or k == j:
            continue
        if not monomial_divides(lm, lcm):
            continue
        if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
            continue
        return True
    return False


def _reduce_basis(G: Sequence[Polynomial], order: MonomialOrder) -> list[Polynomial]:
    key = order.key(G[0].ring)
    heads = [leading_term(g, order)[0] for g in G]
    keep = []
    for i, lm in enumerate(heads):
        dominated = False
        for j, other in enumerate(heads):
            if j == i or not monomial_divides(other, lm):
                continue
            if other != lm or j < i:
                dominated = True
                break
        if not dominated:
            keep.append(i)
    minimal = [G[i] for i in keep]
    reduced = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1 :]
        r = normal_form(g, others, order) if others else g
        reduced.append(r.monic(order))
    reduced.sort(key=lambda p: key(leading_term(p, order)[0]), reverse=True)
    return reduced


def groebner_basis(polys: Iterable[Polynomial], order: MonomialOrder, max_pairs: int | None = None) -> GroebnerBasis:
    return buchberger(IdealBasis(tuple(polys), order), max_pairs)


def saturate(basis: IdealBasis, vars: Sequence[str], name: str = "z") -> IdealBasis:
    """Append ``name * prod(vars) - 1`` with ``name`` placed highest in the order.

    Solutions of the result are those of ``basis`` with every listed coordinate nonzero.
    """
    vars = tuple(vars)
    if not vars:
        raise ValueError("saturation needs at least one variable")
    if name in basis.ring:
        raise ValueError(f"auxiliary variable {name!r} already in ring {basis.ring}")
    unknown = [v for v in vars if v not in basis.ring]
    if unknown:
        raise RingMismatchError(f"unknown variables {unknown}")
    ring = (name,) + basis.ring
    order = MonomialOrder((name,) + basis.order.precedence, basis.order.kind)
    gens = [g.to_ring(ring) for g in basis.generators]
    exp = tuple(1 if (v == name or v in vars) else 0 for v in ring)
    gens.append(Polynomial(ring, {exp: 1, (0,) * len(ring): -1}))
    return IdealBasis(tuple(gens), order)


def _only_uses(p: Polynomial, allowed: set[str]) -> bool:
    return set(p.variables()) <= allowed


def elimination_polynomial(G: GroebnerBasis, keep: str) -> Polynomial:
    """The element of ``G`` in ``keep`` alone: primitive, positive leading coefficient."""
    if G.order.precedence[-1] != keep:
        raise ValueError(f"{keep!r} is not the lex-smallest variable of {G.order}")
    if any(g.is_constant() for g in G):
        raise EliminationError("the ideal is the whole ring (no solutions)")
    found = [g for g in G if _only_uses(g, {keep})]
    if not found:
        raise EliminationError(
            f"no element in {keep!r} alone: the ideal is not zero-dimensional or has an unexpected shape"
        )
    p = found[-1].primitive()
    if leading_term(p, G.order)[1] < 0:
        p = -p
    return p


def shape_extract(G: GroebnerBasis, dependents: Sequence[str], base: str) -> dict[str, Polynomial]:
    """For each dependent v find the element ``v - p_v(base)`` and return the ``p_v``."""
    if G.order.precedence[-1] != base:
        raise ValueError(f"{base!r} is not the lex-smallest variable of {G.order}")
    out = {}
    for v in dependents:
        for g in G:
            lm, lc = leading_term(g, G.order)
            pure = tuple(1 if name == v else 0 for name in g.ring)
            if lm != pure:
                continue
            tail = g - Polynomial.variable(g.ring, v).scale(lc)
            if _only_uses(tail, {base}):
                out[v] = tail.scale(-1 / lc)
                break
        else:
            raise ShapeError(f"{v!r} is not expressed as a polynomial in {base!r} by this basis")
    return out
