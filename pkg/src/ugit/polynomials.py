"""Multivariate polynomials in dual coordinates.

A :class:`Polynomial` is a mapping from exponent tuples to Fractions.  The
monomial order used everywhere is graded lexicographic: lower total degree
first, and within one degree the lexicographically *larger* exponent vector
first (so ``x1**d`` leads).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterator, Sequence

from .errors import MonomialCapExceeded
from .exactalg import SpanTracker, as_rational, format_rational

DEFAULT_MONOMIAL_CAP = 2_000_000


def monomial_count(nvars: int, degree: int) -> int:
    if degree < 0:
        return 0
    return comb(nvars + degree - 1, degree) if nvars else int(degree == 0)


def check_cap(nvars: int, degree: int, cap: int | None):
    cap = DEFAULT_MONOMIAL_CAP if cap is None else cap
    count = monomial_count(nvars, degree)
    if count > cap:
        raise MonomialCapExceeded(
            f"{count} monomials of degree {degree} in {nvars} variables exceed cap {cap}",
            count=count,
            cap=cap,
        )


def monomials(nvars: int, degree: int) -> Iterator[tuple]:
    """All exponent vectors of the given total degree, lex-descending."""
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    if nvars == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - first):
            yield (first,) + rest


def weighted_monomials(weights: Sequence[int], degree: int | None, total: int) -> list[tuple]:
    """Exponent vectors with ``sum m_i*w_i == total`` (and total degree
    ``degree`` unless None), lex-descending.

    With ``degree=None`` every weight must be positive so the set is finite.
    """
    n = len(weights)
    if degree is None and any(w <= 0 for w in weights):
        raise ValueError("unbounded weighted slice: weights must be positive")
    out: list[tuple] = []
    suffix_min = [0] * (n + 1)
    suffix_max = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_min[i] = min(weights[i:])
        suffix_max[i] = max(weights[i:])

    def rec(i, deg_left, wt_left, prefix):
        if i == n:
            if wt_left == 0 and (deg_left == 0 or degree is None):
                out.append(tuple(prefix))
            return
        if degree is not None:
            if not (suffix_min[i] * deg_left <= wt_left <= suffix_max[i] * deg_left):
                return
            top = deg_left
        else:
            if wt_left < 0:
                return
            top = wt_left // weights[i]
        w = weights[i]
        for e in range(top, -1, -1):
            prefix.append(e)
            rec(i + 1, None if degree is None else deg_left - e, wt_left - e * w, prefix)
            prefix.pop()

    rec(0, degree, total, [])
    return out


def glex_key(exp: tuple):
    """Sort key realising the graded-lex order above."""
    return (sum(exp), tuple(-e for e in exp))


class Polynomial:
    """Sparse polynomial over Q in ``nvars`` variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        clean = {}
        for exp, c in (terms or {}).items():
            c = as_rational(c)
            if c:
                if len(exp) != nvars:
                    raise ValueError("exponent length mismatch")
                clean[tuple(exp)] = c
        self.terms = clean

    @classmethod
    def variable(cls, nvars, i):
        return cls(nvars, {tuple(int(j == i) for j in range(nvars)): 1})

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def linear(cls, coeffs: Sequence):
        n = len(coeffs)
        return cls(n, {tuple(int(j == i) for j in range(n)): c for i, c in enumerate(coeffs)})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Polynomial.constant(self.nvars, 1)
        for _ in range(k):
            result = result * self
        return result

    def _lift(self, other):
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return Polynomial.constant(self.nvars, as_rational(other))

    def scale(self, c):
        c = as_rational(c)
        return Polynomial(self.nvars, {e: c * x for e, x in self.terms.items()})

    def degrees(self):
        return {sum(e) for e in self.terms}

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def weights(self, w: Sequence[int]):
        return {sum(a * b for a, b in zip(e, w)) for e in self.terms}

    def __call__(self, point: Sequence):
        pt = [as_rational(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(pt, e):
                if k:
                    term *= x ** k
            total += term
        return total

    def leading(self):
        """Leading (exponent, coefficient) in graded-lex order."""
        e = min(self.terms, key=glex_key)
        return e, self.terms[e]

    def normalized(self):
        """Scale so the leading coefficient is one."""
        if not self.terms:
            return self
        return self.scale(1 / self.leading()[1])

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: glex_key(t[0]))

    def to_str(self, labels: Sequence[str] | None = None):
        if not self.terms:
            return "0"
        labels = labels or [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                lab if k == 1 else f"{lab}^{k}" for lab, k in zip(labels, e) if k
            )
            if not mono:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{format_rational(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Polynomial({self.to_str()})"

    def to_json(self):
        """List of ``[exponents, "p/q"]`` pairs in graded-lex order."""
        return [[list(e), format_rational(c)] for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, nvars, data):
        return cls(nvars, {tuple(e): as_rational(c) for e, c in data})


def in_span(vectors: Sequence[Polynomial], target: Polynomial) -> bool:
    tracker = SpanTracker()
    for v in vectors:
        tracker.add(v.terms)
    return tracker.contains(target.terms)


def span_dimension(vectors: Sequence[Polynomial]) -> int:
    tracker = SpanTracker()
    for v in vectors:
        tracker.add(v.terms)
    return len(tracker)
