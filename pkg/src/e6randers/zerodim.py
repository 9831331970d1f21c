"""Real solutions of zero-dimensional systems from a lex Groebner basis.

The fast path is shape position: every coordinate is a polynomial in the
lowest variable, so each certified root of the eliminant gives one point and
the other coordinates are enclosed by interval evaluation. When shape
position fails, the eliminant is split by a gcd with the leading coefficient
of an element linear in the next variable, each factor is re-solved on its
own, and a rational root of the eliminant is substituted exactly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .groebner import (
    GroebnerBasis,
    ShapeError,
    elimination_polynomial,
    groebner_basis,
    shape_extract,
)
from .interval import Interval, eval_univariate
from .polyring import MonomialOrder, Polynomial
from .realroots import (
    RootBox,
    UnivariatePoly,
    _divmod,
    _gcd,
    isolate_roots,
    refine_root,
    squarefree_part,
)

log = logging.getLogger(__name__)

MAX_REFINE_ROUNDS = 200


@dataclass(frozen=True)
class RealPoint:
    """A certified real solution: the true point lies in ``enclosures``."""

    values: dict[str, Fraction]
    enclosures: dict[str, Interval]
    route: str

    def error_bound(self, var: str) -> Fraction:
        enc, v = self.enclosures[var], self.values[var]
        return max(v - enc.lo, enc.hi - v)


def project(G: GroebnerBasis, variables: Sequence[str]) -> GroebnerBasis:
    """The elements of ``G`` free of variables outside ``variables``.

    Under lex with the dropped variables highest this is a Groebner basis of
    the elimination ideal.
    """
    keep = set(variables)
    prec = G.order.precedence
    dropped = [v for v in prec if v not in keep]
    if dropped and prec[: len(dropped)] != tuple(dropped):
        raise ValueError("only the highest variables of a lex order can be eliminated")
    ring = tuple(v for v in prec if v in keep)
    elems = tuple(g.to_ring(ring) for g in G if set(g.variables()) <= keep)
    return GroebnerBasis(elems, MonomialOrder(ring), G.reduced)


def solve_real(G: GroebnerBasis, eps, max_pairs: int | None = None, newton: bool = True) -> list[RealPoint]:
    """All real solutions of the zero-dimensional ideal with basis ``G``.

    Coordinates are certified to enclosures of width at most ``2*eps``
    (and excluding 0 for nonzero coordinates). Points come out sorted by the
    lowest variable, then the next lowest, and so on. ``newton=False``
    refines by plain bisection, so enclosure widths track ``eps`` closely.
    """
    eps = Fraction(eps)
    points = _solve(G, eps, max_pairs, 0, newton)
    prec = G.order.precedence
    points.sort(key=lambda p: tuple(p.values[v] for v in reversed(prec)))
    return points


def _solve(G: GroebnerBasis, eps: Fraction, max_pairs, depth: int, newton: bool = True) -> list[RealPoint]:
    if depth > 2 * len(G.ring) + 8:
        raise ShapeError("component splitting did not terminate")
    prec = G.order.precedence
    base, deps = prec[-1], prec[:-1]
    q = elimination_polynomial(G, base)
    uq = UnivariatePoly.from_polynomial(q, base)
    sqf = squarefree_part(uq)
    if sqf.degree < uq.degree:
        log.debug("eliminant in %s not squarefree; passing to the radical", base)
        G = groebner_basis(list(G) + [sqf.to_polynomial(G.ring, base)], G.order, max_pairs)
        return _solve(G, eps, max_pairs, depth + 1, newton)
    if not deps:
        return [_univariate_point(uq, box, base, eps, newton) for box in isolate_roots(uq)]
    try:
        shape = shape_extract(G, deps, base)
    except ShapeError:
        return _split(G, uq, eps, max_pairs, depth, newton)
    polys = {v: p.univariate_coefficients(base) for v, p in shape.items()}
    return [_shape_point(uq, box, base, polys, eps, newton) for box in isolate_roots(uq)]


def _univariate_point(uq, box, base, eps, newton=True) -> RealPoint:
    box = refine_root(uq, box, eps, newton)
    enc = Interval(box.lower, box.upper)
    return RealPoint({base: box.value_estimate}, {base: enc}, "univariate")


def _shape_point(uq: UnivariatePoly, box: RootBox, base: str, polys, eps: Fraction, newton=True) -> RealPoint:
    target = eps
    for _ in range(MAX_REFINE_ROUNDS):
        box = refine_root(uq, box, target, newton)
        x = Interval(box.lower, box.upper)
        encs = {v: eval_univariate(c, x) for v, c in polys.items()}
        if all(e.width <= 2 * eps and not (e.lo <= 0 <= e.hi) for e in encs.values()):
            break
        worst = max(e.width for e in encs.values())
        target = min(target, box.width / 2) * min(Fraction(1, 2), 2 * eps / worst if worst else 1)
    else:
        log.warning("enclosures for root near %s did not separate from 0", float(box.value_estimate))
    values = {base: box.value_estimate}
    enclosures = {base: Interval(box.lower, box.upper)}
    for v, c in polys.items():
        val = _horner(c, box.value_estimate)
        values[v] = val
        enclosures[v] = encs[v]
    return RealPoint(values, enclosures, "shape")


def _horner(c, x):
    acc = Fraction(0)
    for a in reversed(c):
        acc = acc * x + a
    return acc


def _split(G: GroebnerBasis, uq: UnivariatePoly, eps, max_pairs, depth, newton=True) -> list[RealPoint]:
    prec = G.order.precedence
    base = prec[-1]
    if uq.degree == 1:
        return _substitute_rational_root(G, uq, eps, max_pairs, depth, newton)
    v = _first_undetermined(G, prec[:-1], base)
    factor = _vanishing_factor(G, uq, v, base)
    if factor is None or factor.degree in (0, uq.degree):
        raise ShapeError(
            f"{v!r} is not determined by {base!r} on any factor of the eliminant; cannot certify"
        )
    q1, r = _divmod(uq.coeffs, factor.coeffs)
    assert not r
    cofactor = UnivariatePoly.from_rationals(q1)
    log.debug("splitting eliminant of degree %d into degrees %d and %d", uq.degree, cofactor.degree, factor.degree)
    out = []
    for part in (cofactor, factor):
        Gp = groebner_basis(list(G) + [part.to_polynomial(G.ring, base)], G.order, max_pairs)
        out.extend(_solve(Gp, eps, max_pairs, depth + 1, newton))
    return out


def _first_undetermined(G: GroebnerBasis, deps: Sequence[str], base: str) -> str:
    for v in reversed(deps):
        try:
            shape_extract(G, [v], base)
        except ShapeError:
            return v
    raise AssertionError("shape_extract failed but every variable is determined")


def _vanishing_factor(G: GroebnerBasis, uq: UnivariatePoly, v: str, base: str) -> UnivariatePoly | None:
    # Elements a(base)*v + b(base): gcd(a, eliminant) marks the roots where v is not determined.
    best = None
    for g in G:
        if set(g.variables()) != {v, base} or g.degree(v) != 1:
            continue
        i = g.ring.index(v)
        a = Polynomial(g.ring, {e: c for e, c in g.items() if e[i] == 1})
        a = a.substitute(v, 1)
        coeffs = a.univariate_coefficients(base)
        d = _gcd(uq.coeffs, coeffs)
        cand = UnivariatePoly(d)
        if best is None or cand.degree < best.degree:
            best = cand
    return best


def _substitute_rational_root(G: GroebnerBasis, uq: UnivariatePoly, eps, max_pairs, depth, newton=True) -> list[RealPoint]:
    prec = G.order.precedence
    base = prec[-1]
    root = Fraction(-uq.coeffs[0], uq.coeffs[1])
    ring = prec[:-1]
    reduced = [g.substitute(base, root).to_ring(ring) for g in G]
    reduced = [g for g in reduced if not g.is_zero()]
    if not reduced:
        raise ShapeError("positive-dimensional fiber over a rational root")
    Gs = groebner_basis(reduced, MonomialOrder(ring), max_pairs)
    exact = Interval.point(root)
    out = []
    for pt in _solve(Gs, eps, max_pairs, depth + 1, newton):
        values = dict(pt.values)
        values[base] = root
        encs = dict(pt.enclosures)
        encs[base] = exact
        out.append(RealPoint(values, encs, "split"))
    return out


def solve_polynomials(polys: Sequence[Polynomial], order: MonomialOrder, eps, max_pairs=None) -> list[RealPoint]:
    return solve_real(groebner_basis(polys, order, max_pairs), eps, max_pairs)

