"""Exact rational arithmetic and sparse multivariate polynomials.

Coefficients are :class:`fractions.Fraction`; monomials are plain tuples of
exponents, one slot per ring variable. Polynomials are immutable.

Text format::

    -x1^2*x2^2 - 5*x2^2*u2^2 + 3/4*x1^2*u2   # comment

Variables match ``[a-zA-Z][a-zA-Z0-9]*``, coefficients are integers or
``p/q``, parentheses group, ``#`` starts a comment.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

Monomial = tuple[int, ...]


class RingMismatchError(ValueError):
    pass


class ZeroPolynomialError(ValueError):
    pass


class PolynomialParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


# ---------------------------------------------------------------- rationals


def normalize(numerator: int, denominator: int) -> Fraction:
    """Canonical rational ``numerator/denominator`` (raises on zero denominator)."""
    return Fraction(numerator, denominator)


def rat_arith(a, b, op: str) -> Fraction:
    a, b = Fraction(a), Fraction(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ZeroDivisionError(f"division of {a} by zero")
        return a / b
    raise ValueError(f"unknown rational operation {op!r}")


def to_fraction(value) -> Fraction:
    """Exact conversion; strings like ``"0.3"`` and ``"3/10"`` are read as decimals/ratios."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


# ---------------------------------------------------------------- monomials


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """True iff ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomials_coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


@dataclass(frozen=True)
class MonomialOrder:
    """Lexicographic order; ``precedence`` lists variables highest first."""

    precedence: tuple[str, ...]
    kind: str = "lex"

    def __post_init__(self):
        if self.kind != "lex":
            raise ValueError(f"unsupported monomial order {self.kind!r}")
        if len(set(self.precedence)) != len(self.precedence):
            raise ValueError("repeated variable in monomial order")

    @classmethod
    def lex(cls, *names: str) -> "MonomialOrder":
        return cls(tuple(names))

    @classmethod
    def parse(cls, text: str) -> "MonomialOrder":
        """Parse ``lex:z,u2,x1,x2``."""
        kind, sep, rest = text.partition(":")
        if not sep:
            raise ValueError(f"order spec {text!r} must look like 'lex:a,b,c'")
        names = tuple(v.strip() for v in rest.split(",") if v.strip())
        if not names or not all(_VAR_RE.fullmatch(v) for v in names):
            raise ValueError(f"bad variable list in order spec {text!r}")
        return cls(names, kind.strip())

    def __str__(self) -> str:
        return f"{self.kind}:{','.join(self.precedence)}"

    def key(self, ring: Sequence[str]) -> Callable[[Monomial], Monomial]:
        """Sort key on exponent tuples of ``ring``: larger key means larger monomial."""
        if tuple(ring) == self.precedence:
            return _identity
        if set(ring) != set(self.precedence):
            raise RingMismatchError(f"order {self} does not match ring {tuple(ring)}")
        perm = tuple(ring.index(v) for v in self.precedence)
        return lambda e: tuple(e[i] for i in perm)


def _identity(e: Monomial) -> Monomial:
    return e


# --------------------------------------------------------------- polynomials


class Polynomial:
    """Sparse polynomial over Q in the variables ``ring``."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: Iterable[str], terms: Mapping[Monomial, object] | None = None):
        self.ring = tuple(ring)
        n = len(self.ring)
        clean: dict[Monomial, Fraction] = {}
        for exp, c in (terms or {}).items():
            c = Fraction(c)
            if c == 0:
                continue
            exp = tuple(exp)
            if len(exp) != n or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent vector {exp} for ring {self.ring}")
            clean[exp] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: tuple[str, ...], terms: dict[Monomial, Fraction]) -> "Polynomial":
        # Trusted constructor: terms already clean.
        p = cls.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def zero(cls, ring: Iterable[str]) -> "Polynomial":
        return cls(ring)

    @classmethod
    def constant(cls, ring: Iterable[str], c) -> "Polynomial":
        ring = tuple(ring)
        return cls(ring, {(0,) * len(ring): c})

    @classmethod
    def variable(cls, ring: Iterable[str], name: str) -> "Polynomial":
        ring = tuple(ring)
        if name not in ring:
            raise RingMismatchError(f"{name!r} is not a variable of {ring}")
        exp = tuple(int(v == name) for v in ring)
        return cls(ring, {exp: 1})

    @classmethod
    def gens(cls, ring: Iterable[str]) -> tuple["Polynomial", ...]:
        ring = tuple(ring)
        return tuple(cls.variable(ring, v) for v in ring)

    @classmethod
    def parse(cls, text: str, ring: Sequence[str] | None = None) -> "Polynomial":
        polys = parse_polynomials(text, ring)
        if len(polys) != 1:
            raise PolynomialParseError(f"expected one polynomial, found {len(polys)}", 1, 1)
        return polys[0]

    # inspection
    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def coefficient(self, exp: Monomial) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def degree(self, var: str | None = None) -> int:
        """Total degree, or degree in ``var``; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        if var is None:
            return max(sum(e) for e in self._terms)
        i = self.ring.index(var)
        return max(e[i] for e in self._terms)

    def variables(self) -> tuple[str, ...]:
        """Ring variables that actually occur, in ring order."""
        used = [False] * len(self.ring)
        for e in self._terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(v for v, u in zip(self.ring, used) if u)

    def sorted_terms(self, order: MonomialOrder | None = None) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending order."""
        key = (order or MonomialOrder(self.ring)).key(self.ring)
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder) -> tuple[Monomial, Fraction]:
        return leading_term(self, order)

    # arithmetic
    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatchError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.ring, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial._raw(self.ring, {e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(self.ring, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return Polynomial.zero(self.ring)
        return Polynomial._raw(self.ring, {e: v * c for e, v in self._terms.items()})

    def mul_term(self, exp: Monomial, c) -> "Polynomial":
        """Multiply by the single term ``c * x^exp``."""
        c = Fraction(c)
        if c == 0:
            return Polynomial.zero(self.ring)
        return Polynomial._raw(
            self.ring,
            {tuple(a + b for a, b in zip(e, exp)): v * c for e, v in self._terms.items()},
        )

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Polynomial.constant(self.ring, other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # normalization
    def content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coefficients."""
        if not self._terms:
            return Fraction(0)
        den = 1
        for c in self._terms.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        num = 0
        for c in self._terms.values():
            num = math.gcd(num, c.numerator * (den // c.denominator))
        return Fraction(num, den)

    def primitive(self) -> "Polynomial":
        """Scale by a positive rational to coprime integer coefficients (sign kept)."""
        if not self._terms:
            return self
        return self.scale(1 / self.content())

    def monic(self, order: MonomialOrder) -> "Polynomial":
        _, lc = leading_term(self, order)
        return self.scale(1 / lc)

    # evaluation and ring changes
    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at a point; values may be Fractions or anything supporting + and *."""
        vals = [values[v] for v in self.ring]
        total = 0
        for e, c in self._terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t = t * v**k
            total = total + t
        return total

    def substitute(self, var: str, value) -> "Polynomial":
        """Replace ``var`` by a constant; the ring is unchanged."""
        i = self.ring.index(var)
        value = Fraction(value)
        out: dict[Monomial, Fraction] = {}
        for e, c in self._terms.items():
            k = e[i]
            ne = e[:i] + (0,) + e[i + 1 :]
            out[ne] = out.get(ne, 0) + c * value**k
        return Polynomial._raw(self.ring, {e: c for e, c in out.items() if c})

    def to_ring(self, ring: Sequence[str]) -> "Polynomial":
        """Re-embed in another ring containing every variable that occurs."""
        ring = tuple(ring)
        missing = [v for v in self.variables() if v not in ring]
        if missing:
            raise RingMismatchError(f"variables {missing} not in target ring {ring}")
        where = [ring.index(v) if v in ring else None for v in self.ring]
        out = {}
        for e, c in self._terms.items():
            ne = [0] * len(ring)
            for j, k in zip(where, e):
                if j is not None:
                    ne[j] = k
            out[tuple(ne)] = c
        return Polynomial._raw(ring, out)

    def univariate_coefficients(self, var: str) -> list[Fraction]:
        """Ascending coefficient list; the polynomial must involve only ``var``."""
        others = [v for v in self.variables() if v != var]
        if others:
            raise ValueError(f"polynomial involves {others} besides {var}")
        i = self.ring.index(var)
        coeffs = [Fraction(0)] * (max(0, self.degree(var)) + 1)
        for e, c in self._terms.items():
            coeffs[e[i]] = c
        return coeffs

    @classmethod
    def from_univariate(cls, ring: Sequence[str], var: str, coeffs: Sequence) -> "Polynomial":
        ring = tuple(ring)
        i = ring.index(var)
        terms = {}
        for k, c in enumerate(coeffs):
            e = [0] * len(ring)
            e[i] = k
            terms[tuple(e)] = c
        return cls(ring, terms)

    def format(self, order: MonomialOrder | None = None) -> str:
        return format_polynomial(self, order)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r}, ring={self.ring})"


def poly_arith(p: Polynomial, q: Polynomial, op: str) -> Polynomial:
    p._check(q)
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown polynomial operation {op!r}")


def leading_term(p: Polynomial, order: MonomialOrder) -> tuple[Monomial, Fraction]:
    if p.is_zero():
        raise ZeroPolynomialError("the zero polynomial has no leading term")
    key = order.key(p.ring)
    exp = max(p._terms, key=key)
    return exp, p._terms[exp]


def normal_form(p: Polynomial, G: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    """Remainder of multivariate division of ``p`` by ``G``.

    Always divides by the first element of ``G`` whose leading monomial divides
    the current leading term, so the result is deterministic.
    """
    if not G:
        raise ValueError("cannot reduce modulo an empty set")
    for g in G:
        p._check(g)
    key = order.key(p.ring)
    heads = [(*leading_term(g, order), g._terms) for g in G]
    rest = dict(p._terms)
    remainder: dict[Monomial, Fraction] = {}
    while rest:
        m = max(rest, key=key)
        c = rest[m]
        for lm, lc, gt in heads:
            if all(a <= b for a, b in zip(lm, m)):
                q = monomial_div(m, lm)
                f = c / lc
                for e, v in gt.items():
                    ne = tuple(a + b for a, b in zip(e, q))
                    s = rest.get(ne, 0) - f * v
                    if s:
                        rest[ne] = s
                    else:
                        del rest[ne]
                break
        else:
            remainder[m] = c
            del rest[m]
    return Polynomial._raw(p.ring, remainder)


# ---------------------------------------------------------------- text format

_VAR_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9]*")
_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([a-zA-Z][a-zA-Z0-9]*)|(\S))")


@dataclass
class _Tok:
    kind: str  # "int", "var", "op", "end"
    text: str
    line: int
    col: int


def _tokenize_line(text: str, lineno: int) -> list[_Tok]:
    toks = []
    pos = 0
    text = text.split("#", 1)[0]
    while True:
        m = _TOKEN_RE.match(text, pos)
        if not m:
            break
        num, var, op = m.groups()
        col = m.start(m.lastindex) + 1
        if num is not None:
            toks.append(_Tok("int", num, lineno, col))
        elif var is not None:
            toks.append(_Tok("var", var, lineno, col))
        else:
            if op not in "+-*/^()":
                raise PolynomialParseError(f"unexpected character {op!r}", lineno, col)
            toks.append(_Tok("op", op, lineno, col))
        pos = m.end()
    toks.append(_Tok("end", "", lineno, len(text) + 1))
    return toks


class _Parser:
    def __init__(self, toks: list[_Tok], ring: tuple[str, ...]):
        self.toks = toks
        self.i = 0
        self.ring = ring

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise PolynomialParseError(msg, tok.line, tok.col)

    def expect_int(self) -> int:
        t = self.next()
        if t.kind != "int":
            self.fail("expected an integer", t)
        return int(t.text)

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek().text in "+-" and self.peek().kind == "op":
            sign = -1 if self.next().text == "-" else 1
        acc = self.term().scale(sign)
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.next().text
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.next()
            if op.text == "*":
                acc = acc * self.factor()
            else:
                d_tok = self.peek()
                d = self.expect_int()
                if d == 0:
                    self.fail("division by zero", d_tok)
                acc = acc.scale(Fraction(1, d))
        return acc

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.next()
            base = base ** self.expect_int()
        return base

    def atom(self) -> Polynomial:
        t = self.next()
        if t.kind == "int":
            return Polynomial.constant(self.ring, int(t.text))
        if t.kind == "var":
            if t.text not in self.ring:
                self.fail(f"unknown variable {t.text!r}", t)
            return Polynomial.variable(self.ring, t.text)
        if t.kind == "op" and t.text == "(":
            inner = self.expr()
            close = self.next()
            if close.kind != "op" or close.text != ")":
                self.fail("expected ')'", close)
            return inner
        self.fail("unexpected end of input" if t.kind == "end" else f"unexpected {t.text!r}", t)


def parse_polynomials(text: str, ring: Sequence[str] | None = None) -> list[Polynomial]:
    """Parse one polynomial per non-blank line.

    Without ``ring`` the variables are taken in order of first appearance.
    """
    lines = [(n, _tokenize_line(line, n)) for n, line in enumerate(text.splitlines(), 1)]
    lines = [(n, toks) for n, toks in lines if len(toks) > 1]
    if ring is None:
        seen: dict[str, None] = {}
        for _, toks in lines:
            for t in toks:
                if t.kind == "var":
                    seen.setdefault(t.text)
        ring = tuple(seen)
    ring = tuple(ring)
    out = []
    for _, toks in lines:
        parser = _Parser(toks, ring)
        p = parser.expr()
        if parser.peek().kind != "end":
            parser.fail(f"unexpected {parser.peek().text!r}")
        out.append(p)
    return out


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_monomial(ring: tuple[str, ...], exp: Monomial, order: MonomialOrder) -> str:
    parts = []
    for v in order.precedence:
        k = exp[ring.index(v)]
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def format_polynomial(p: Polynomial, order: MonomialOrder | None = None) -> str:
    """Canonical text: terms descending under ``order``, variables in precedence order."""
    order = order or MonomialOrder(p.ring)
    if p.is_zero():
        return "0"
    chunks = []
    for i, (exp, c) in enumerate(p.sorted_terms(order)):
        mono = _format_monomial(p.ring, exp, order)
        mag = abs(c)
        if not mono:
            body = _format_coeff(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_format_coeff(mag)}*{mono}"
        if i == 0:
            chunks.append(f"-{body}" if c < 0 else body)
        else:
            chunks.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(chunks)

