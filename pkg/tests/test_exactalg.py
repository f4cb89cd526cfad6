import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from oracles import common_root_by_resultant, nullity
from strategies import nilpotents, rational_matrices
from ugit.errors import EpsSquared, NotNilpotent
from ugit.exactalg import (
    EPS,
    EpsRational,
    QMatrix,
    QPoly,
    SpanTracker,
    as_rational,
    format_rational,
    jordan_chains,
    kernel_basis,
    parse_rational,
    poly_common_root_exists,
    poly_gcd,
    rank,
    resultant,
)


def vec(*xs):
    return tuple(Fraction(x) for x in xs)


class TestScalars:
    def test_format_and_parse(self):
        assert format_rational(Fraction(6, 4)) == "3/2"
        assert format_rational(Fraction(-4, 2)) == "-2"
        assert parse_rational(" -3/6 ") == Fraction(-1, 2)
        with pytest.raises(ValueError):
            parse_rational("0.5")

    def test_no_floats(self):
        with pytest.raises(TypeError):
            as_rational(0.5)
        with pytest.raises(TypeError):
            as_rational(True)

    def test_lowest_terms(self):
        x = as_rational("-10/4")
        assert (x.numerator, x.denominator) == (-5, 2)


class TestEpsRational:
    def test_order_is_lexicographic(self):
        assert EpsRational(1, -5) < EpsRational(1, 0) < EpsRational(1, 1) < EpsRational(2, -100)
        assert EPS > 0
        assert -EPS < 0

    def test_square_rejected(self):
        with pytest.raises(EpsSquared):
            _ = EPS * EPS
        assert EPS * 3 == EpsRational(0, 3)

    def test_str_round_trip(self):
        for x in [EpsRational(1, -2), EpsRational(Fraction(-3, 2), Fraction(1, 3)), EpsRational(0, 1), EpsRational(7)]:
            assert EpsRational.parse(str(x)) == x
        assert str(EpsRational(1, -2)) == "1 + -2*eps"

    @given(
        st.fractions(-10, 10, max_denominator=6), st.fractions(-10, 10, max_denominator=6),
        st.fractions(-10, 10, max_denominator=6), st.fractions(-10, 10, max_denominator=6),
    )
    def test_order_matches_small_eps(self, a, b, c, d):
        x, y = EpsRational(a, b), EpsRational(c, d)
        # for eps small enough the specialised order agrees with the symbolic order
        e = Fraction(1, 10**6)
        if x != y and abs(a - c) > 0:
            assert (x < y) == (x.at(e) < y.at(e))
        assert (x + y) - y == x


class TestKernel:
    def test_examples(self):
        assert kernel_basis(QMatrix.identity(3)) == []
        assert kernel_basis(QMatrix.zeros(2, 2)) == [vec(1, 0), vec(0, 1)]
        assert kernel_basis(QMatrix([[0, 1], [0, 0]])) == [vec(1, 0)]

    @given(rational_matrices())
    def test_kernel_property(self, m):
        ker = kernel_basis(m)
        for v in ker:
            assert not any(m @ v)
        assert rank(m) + len(ker) == m.ncols
        assert len(ker) == nullity(m.rows, m.ncols)

    @given(rational_matrices())
    def test_kernel_echelon(self, m):
        ker = kernel_basis(m)
        # each vector has its own free coordinate (1 there, 0 in the others)
        frees = [max(i for i, x in enumerate(v) if x) for v in ker]
        assert len(set(frees)) == len(frees)
        for v, f in zip(ker, frees):
            assert v[f] == 1
            assert all(w[f] == 0 for w in ker if w is not v)


class TestJordan:
    def test_examples(self):
        assert [len(c) for c in jordan_chains(QMatrix.zeros(2, 2))] == [1, 1]
        n = QMatrix([[0, 0], [1, 0]])
        chains = jordan_chains(n)
        assert len(chains) == 1 and n @ chains[0][0] == chains[0][1]
        n4 = QMatrix.from_map(4, {0: {2: 1}, 1: {3: 1}})
        assert [len(c) for c in jordan_chains(n4)] == [2, 2]

    def test_not_nilpotent(self):
        with pytest.raises(NotNilpotent):
            jordan_chains(QMatrix([[1, 0], [0, 0]]))

    @given(nilpotents())
    def test_reassembly(self, n):
        chains = jordan_chains(n)
        lengths = [len(c) for c in chains]
        assert lengths == sorted(lengths, reverse=True)
        cols = [v for c in chains for v in c]
        B = QMatrix.from_columns(cols, nrows=n.nrows)
        assert B.det() != 0
        # B^-1 n B is the shift on each chain
        J = B.inverse() @ n @ B
        pos = 0
        expected = [[0] * n.nrows for _ in range(n.nrows)]
        for c in chains:
            for j in range(len(c) - 1):
                expected[pos + j + 1][pos + j] = 1
            pos += len(c)
        assert J == QMatrix(expected)
        # block sizes agree with ranks of powers (sympy oracle)
        S = sp.Matrix(n.tolist())
        for s in range(1, n.nrows + 1):
            assert (S**s).rank() == sum(max(L - s, 0) for L in lengths)


class TestPoly:
    u = QPoly.x()

    def test_common_root_examples(self):
        u = self.u
        assert poly_common_root_exists([u - 1, u * u - 1])
        assert not poly_common_root_exists([u, QPoly((1,))])
        assert poly_common_root_exists([QPoly(), QPoly()])

    def test_gcd_monic(self):
        u = self.u
        g = poly_gcd((u - 1) * (u + 2) * 3, (u - 1) * (u - 5))
        assert g == u - 1

    def test_rational_roots(self):
        u = self.u
        p = (u * 2 - 3) * (u + 1) * (u * u + 1)
        assert p.rational_roots() == [Fraction(-1), Fraction(3, 2)]

    @given(st.data())
    def test_agrees_with_resultant(self, data):
        rng = random.Random(data.draw(st.integers(0, 10**9)))
        us = sp.Symbol("u")

        def rand_poly():
            if rng.random() < 0.4:
                # force a shared rational root sometimes
                r = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
                rest = [rng.randint(-3, 3) for _ in range(rng.randint(0, 5))] or [1]
                return QPoly((-r, 1)) * QPoly(tuple(rest) if any(rest) else (1,))
            deg = rng.randint(0, 6)
            coeffs = [rng.randint(-4, 4) for _ in range(deg)] + [rng.choice([-2, -1, 1, 2])]
            return QPoly(tuple(coeffs))

        shared = QPoly((rng.randint(-2, 2), 1)) if rng.random() < 0.3 else QPoly((1,))
        p, q = rand_poly() * shared, rand_poly() * shared
        sp_p = sum(sp.Rational(c.numerator, c.denominator) * us**i for i, c in enumerate(p.coeffs))
        sp_q = sum(sp.Rational(c.numerator, c.denominator) * us**i for i, c in enumerate(q.coeffs))
        assert poly_common_root_exists([p, q]) == common_root_by_resultant(sp_p, sp_q)
        if p.degree() > 0 and q.degree() > 0:
            # sympy's sign convention differs in odd degree; compare up to sign
            assert abs(resultant(p, q)) == abs(sp.resultant(sp_p, sp_q, us))

    @given(st.lists(st.integers(-5, 5), min_size=1, max_size=6), st.lists(st.integers(-5, 5), min_size=1, max_size=4))
    def test_divmod(self, a, b):
        pa, pb = QPoly(tuple(a)), QPoly(tuple(b))
        if pb.is_zero():
            return
        q, r = divmod(pa, pb)
        assert q * pb + r == pa
        assert r.degree() < pb.degree()


def test_span_tracker():
    t = SpanTracker()
    assert t.add({0: Fraction(1), 1: Fraction(1)})
    assert t.add({1: Fraction(1)})
    assert t.contains({0: Fraction(5)})
    assert not t.add({0: Fraction(2), 1: Fraction(-3)})
    assert len(t) == 2
