from fractions import Fraction
from itertools import product

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from oracles import weighted_monomial_count
from ugit.errors import MonomialCapExceeded
from ugit.polynomials import (
    Polynomial,
    check_cap,
    glex_key,
    in_span,
    monomial_count,
    monomials,
    span_dimension,
    weighted_monomials,
)


def brute(n, d):
    return [e for e in product(range(d + 1), repeat=n) if sum(e) == d]


@given(st.integers(0, 4), st.integers(0, 5))
def test_monomials_complete_and_ordered(n, d):
    ms = list(monomials(n, d))
    assert sorted(ms, reverse=True) == ms
    assert set(ms) == set(brute(n, d))
    assert len(ms) == monomial_count(n, d)


@given(st.lists(st.integers(1, 3), min_size=1, max_size=4), st.integers(0, 9))
def test_weighted_unbounded_degree(ws, m):
    got = weighted_monomials(ws, None, m)
    assert len(got) == len(set(got)) == weighted_monomial_count(ws, m)
    assert all(sum(a * b for a, b in zip(e, ws)) == m for e in got)


@given(st.lists(st.integers(-2, 3), min_size=1, max_size=4), st.integers(0, 4), st.integers(-6, 9))
def test_weighted_fixed_degree(ws, d, w):
    got = weighted_monomials(ws, d, w)
    expected = [e for e in brute(len(ws), d) if sum(a * b for a, b in zip(e, ws)) == w]
    assert set(got) == set(expected) and len(got) == len(expected)


def test_weighted_rejects_nonpositive_without_degree():
    with pytest.raises(ValueError):
        weighted_monomials([1, 0], None, 3)


def test_cap():
    check_cap(4, 3, 20)
    with pytest.raises(MonomialCapExceeded) as info:
        check_cap(4, 3, 19)
    assert info.value.details["count"] == 20


def test_glex_and_printing():
    x1, x2 = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
    p = x2 * x2 - x1 * x2 * 3 + 2
    assert p.to_str() == "2 - 3*x1*x2 + x2^2"
    assert p.leading() == ((0, 0), 2)
    assert glex_key((2, 0)) < glex_key((1, 1)) < glex_key((0, 2))
    assert Polynomial.from_json(2, p.to_json()) == p


def polys(nvars=3):
    exps = st.tuples(*[st.integers(0, 2)] * nvars)
    coefs = st.fractions(-3, 3, max_denominator=3)
    return st.dictionaries(exps, coefs, max_size=4).map(lambda t: Polynomial(nvars, t))


def to_sympy(p, xs):
    return sum(sp.Rational(c.numerator, c.denominator) * sp.prod([x**k for x, k in zip(xs, e)]) for e, c in p.terms.items())


@given(polys(), polys(), st.tuples(*[st.fractions(-2, 2, max_denominator=3)] * 3))
def test_ring_ops_against_sympy(p, q, pt):
    xs = sp.symbols("a b c")
    sub = dict(zip(xs, [sp.Rational(x.numerator, x.denominator) for x in pt]))
    assert sp.expand(to_sympy(p * q, xs) - to_sympy(p, xs) * to_sympy(q, xs)) == 0
    assert sp.expand(to_sympy(p - q, xs) - to_sympy(p, xs) + to_sympy(q, xs)) == 0
    assert (p * q)(pt) == p(pt) * q(pt)
    assert sp.sympify(to_sympy(p, xs)).subs(sub) == p(pt)


def test_span_helpers():
    x1, x2 = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
    assert span_dimension([x1, x2, x1 + x2]) == 2
    assert in_span([x1 + x2, x1 - x2], x1.scale(Fraction(1, 3)))
    assert not in_span([x1], x2)
