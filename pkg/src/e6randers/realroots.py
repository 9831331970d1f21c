"""Certified real-root isolation for univariate integer polynomials.

Roots are counted with Sturm sequences and located by exact rational
bisection; refinement uses quadratic interval refinement, which keeps a
verified sign change at every step and falls back to bisection whenever
its secant guess misses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .polyring import Polynomial


class RootOnEndpointError(ValueError):
    pass


# ------------------------------------------------------ coefficient helpers
# Lists are ascending-degree, trailing zeros stripped; [] is the zero polynomial.


def _strip(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _primitive_ints(c: Sequence) -> tuple[int, ...]:
    """Positive rational multiple with coprime integer coefficients."""
    c = [Fraction(x) for x in c]
    if not any(c):
        return ()
    den = 1
    for x in c:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in c]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return tuple(x // g for x in _strip(ints))


def _divmod(a: Sequence, b: Sequence) -> tuple[list[Fraction], list[Fraction]]:
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    _strip(a)
    _strip(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    lb = b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        f = a[-1] / lb
        q[k] = f
        for i, y in enumerate(b):
            a[i + k] -= f * y
        a.pop()
        _strip(a)
    return q, a


def _gcd(a: Sequence, b: Sequence) -> tuple[int, ...]:
    a, b = list(a), list(b)
    _strip(a)
    _strip(b)
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    return _primitive_ints(a)


def _derivative(c: Sequence) -> list:
    return [k * c[k] for k in range(1, len(c))]


def _horner(c: Sequence, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for a in reversed(c):
        acc = acc * x + a
    return acc


# ------------------------------------------------------------------ types


@dataclass(frozen=True)
class UnivariatePoly:
    """Integer coefficients, ascending degree."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        if not c or c[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_rationals(cls, coeffs: Sequence) -> "UnivariatePoly":
        """Scale a rational coefficient list by a positive factor to integers."""
        ints = _primitive_ints(coeffs)
        if not ints:
            raise ValueError("zero polynomial")
        return cls(ints)

    @classmethod
    def from_polynomial(cls, p: Polynomial, var: str | None = None) -> "UnivariatePoly":
        if var is None:
            used = p.variables()
            if len(used) > 1:
                raise ValueError(f"not univariate: {used}")
            var = used[0] if used else p.ring[0]
        return cls.from_rationals(p.univariate_coefficients(var))

    def to_polynomial(self, ring: Sequence[str], var: str) -> Polynomial:
        return Polynomial.from_univariate(ring, var, self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x) -> Fraction:
        return _horner(self.coeffs, Fraction(x))

    def derivative(self) -> "UnivariatePoly":
        if self.degree == 0:
            raise ValueError("the derivative of a constant is zero")
        return UnivariatePoly(tuple(_derivative(self.coeffs)))

    def __str__(self):
        return self.to_polynomial(("x",), "x").format()


@dataclass(frozen=True)
class RootBox:
    """Exactly one real root lies in ``(lower, upper]``."""

    lower: Fraction
    upper: Fraction
    value_estimate: Fraction
    error_bound: Fraction

    @classmethod
    def from_bracket(cls, lo, hi) -> "RootBox":
        lo, hi = Fraction(lo), Fraction(hi)
        if not lo < hi:
            raise ValueError("a root box needs lower < upper")
        return cls(lo, hi, (lo + hi) / 2, (hi - lo) / 2)

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower


# ----------------------------------------------------------------- Sturm


def squarefree_part(p: UnivariatePoly) -> UnivariatePoly:
    if p.degree < 1:
        return p
    g = _gcd(p.coeffs, _derivative(p.coeffs))
    if len(g) <= 1:
        return p
    q, r = _divmod(p.coeffs, g)
    assert not r
    sqf = UnivariatePoly.from_rationals(q)
    # keep the sign of p's leading coefficient
    if (sqf.coeffs[-1] > 0) != (p.coeffs[-1] > 0):
        sqf = UnivariatePoly(tuple(-c for c in sqf.coeffs))
    return sqf


def sturm_sequence(p: UnivariatePoly) -> list[UnivariatePoly]:
    """p, p', then negated remainders, each scaled by a positive factor."""
    chain = [p]
    if p.degree == 0:
        return chain
    chain.append(UnivariatePoly.from_rationals(_derivative(p.coeffs)))
    while chain[-1].degree > 0:
        _, r = _divmod(chain[-2].coeffs, chain[-1].coeffs)
        if not r:
            break
        chain.append(UnivariatePoly.from_rationals([-x for x in r]))
    return chain


@lru_cache(maxsize=256)
def _chain_for(coeffs: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    sqf = squarefree_part(UnivariatePoly(coeffs))
    return tuple(q.coeffs for q in sturm_sequence(sqf))


def sign_variations(chain: Sequence[Sequence[int]], x) -> int:
    x = Fraction(x)
    signs = []
    for q in chain:
        v = _horner(q, x)
        if v:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: UnivariatePoly, a, b) -> int:
    """Number of distinct real roots in ``(a, b]``."""
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError("count_real_roots needs a < b")
    for end in (a, b):
        if p(end) == 0:
            raise RootOnEndpointError(f"{end} is a root; perturb the interval endpoint")
    chain = _chain_for(p.coeffs)
    return sign_variations(chain, a) - sign_variations(chain, b)


def cauchy_bound(p: UnivariatePoly) -> Fraction:
    """Every real root r satisfies |r| < bound."""
    lead = abs(Fraction(p.coeffs[-1]))
    return 1 + max((abs(Fraction(c)) / lead for c in p.coeffs[:-1]), default=Fraction(0))


def _split_point(sqf: UnivariatePoly, lo: Fraction, hi: Fraction) -> Fraction:
    """A point in the middle half of (lo, hi) where sqf does not vanish."""
    w = hi - lo
    n = sqf.degree + 1
    # 2n+1 distinct candidates, more than sqf has roots
    for k in sorted(range(-n, n + 1), key=lambda k: (abs(k), -k)):
        m = lo + w * Fraction(2 * n + k, 4 * n)
        if sqf(m) != 0:
            return m
    raise AssertionError("unreachable: too many rational roots")


def isolate_roots(p: UnivariatePoly) -> list[RootBox]:
    """Disjoint isolating boxes for all distinct real roots, ascending."""
    chain = _chain_for(p.coeffs)
    sqf = UnivariatePoly(chain[0])
    if sqf.degree == 0:
        return []
    B = cauchy_bound(sqf)
    out = []
    stack = [(-B, B, sign_variations(chain, -B), sign_variations(chain, B))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1:
            out.append(RootBox.from_bracket(lo, hi))
            continue
        m = _split_point(sqf, lo, hi)
        vm = sign_variations(chain, m)
        stack.append((m, hi, vm, vhi))
        stack.append((lo, m, vlo, vm))
    out.sort(key=lambda b: b.lower)
    return out


def refine_root(p: UnivariatePoly, box: RootBox, eps, newton: bool = True) -> RootBox:
    """Shrink ``box`` to width at most ``2*eps``; the result is nested in ``box``."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    sqf = UnivariatePoly(_chain_for(p.coeffs)[0])
    lo, hi = box.lower, box.upper
    flo, fhi = sqf(lo), sqf(hi)
    if flo == 0 or fhi == 0 or (flo > 0) == (fhi > 0):
        raise ValueError("box does not bracket a sign change")
    N = 4
    while hi - lo > 2 * eps:
        if newton:
            step = _qir_step(sqf, lo, hi, flo, fhi, N)
            if step is not None:
                if step[0] == "exact":
                    return _exact_box(step[1], lo, hi, eps)
                lo, hi, flo, fhi = step
                N = N * N
                continue
            N = max(4, math.isqrt(N))
        m = (lo + hi) / 2
        fm = sqf(m)
        if fm == 0:
            return _exact_box(m, lo, hi, eps)
        if (fm > 0) == (flo > 0):
            lo, flo = m, fm
        else:
            hi, fhi = m, fm
    return RootBox.from_bracket(lo, hi)


def _qir_step(f, lo, hi, flo, fhi, N):
    # Abbott's quadratic interval refinement: guess the subinterval of width w/N
    # from the secant and accept it only if it verifiably brackets the root.
    w = hi - lo
    secant = lo + w * flo / (flo - fhi)
    k = round((secant - lo) * N / w)
    k = min(max(k, 1), N - 1)
    m = lo + w * k / N
    fm = f(m)
    if fm == 0:
        return ("exact", m)
    if (fm > 0) == (flo > 0):
        a, b = m, m + w / N
    else:
        a, b = m - w / N, m
    fa, fb = f(a), f(b)
    if fa == 0:
        return ("exact", a)
    if fb == 0:
        return ("exact", b)
    if (fa > 0) != (fb > 0):
        return a, b, fa, fb
    return None


def _exact_box(r: Fraction, lo: Fraction, hi: Fraction, eps: Fraction) -> RootBox:
    # r is an exact rational root; any other point of (lo, hi) is a non-root.
    half = min(eps, r - lo, hi - r) / 2
    return RootBox(r - half, r + half, r, half)


def real_roots(p: UnivariatePoly, eps) -> list[RootBox]:
    return [refine_root(p, b, eps) for b in isolate_roots(p)]


def format_decimal(x, digits: int) -> str:
    """Fixed-point decimal with ``digits`` places, rounding half to even."""
    if digits < 0:
        raise ValueError("digits must be non-negative")
    n = round(Fraction(x) * 10**digits)
    sign = "-" if n < 0 else ""
    s = str(abs(n)).rjust(digits + 1, "0")
    if digits == 0:
        return sign + s
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


def format_scientific(x, digits: int = 3) -> str:
    """Rounded-up magnitude like ``4.2e-13``; for error bounds."""
    x = Fraction(x)
    if x == 0:
        return "0"
    ax = abs(x)
    e = len(str(ax.numerator)) - len(str(ax.denominator))
    while Fraction(10) ** e > ax:
        e -= 1
    while Fraction(10) ** (e + 1) <= ax:
        e += 1
    scaled = abs(x) / Fraction(10) ** (e - digits + 1)
    m = -(-scaled.numerator // scaled.denominator)
    if m >= 10**digits:
        m //= 10
        e += 1
    s = str(m)
    mant = s[0] + ("." + s[1:] if len(s) > 1 else "")
    return f"{'-' if x < 0 else ''}{mant}e{e}"
