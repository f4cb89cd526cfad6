"""Hypothesis strategies and seeded generators for graded representations."""

import random
from fractions import Fraction

from hypothesis import strategies as st

from ugit.exactalg import QMatrix
from ugit.rep_model import make_rep


def graded_single(rng: random.Random, max_dim=10, min_distinct=1, density=0.6):
    """Random valid rep with one nilpotent of grade ell."""
    while True:
        n = rng.randint(1, max_dim)
        ell = rng.randint(1, 3)
        base = rng.randint(-3, 3)
        # weights on a few ell-spaced levels plus occasional off-lattice ones
        weights = [base + ell * rng.randint(0, 3) + (rng.random() < 0.2) for _ in range(n)]
        if len(set(weights)) < min_distinct:
            continue
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if weights[i] == weights[j] + ell and rng.random() < density:
                    rows[i][j] = rng.choice([-2, -1, 1, 1, 2, 3])
        return make_rep(weights, [rows], [ell])


@st.composite
def single_reps(draw, max_dim=8, min_distinct=1):
    seed = draw(st.integers(0, 2**32 - 1))
    return graded_single(random.Random(seed), max_dim, min_distinct)


@st.composite
def rational_matrices(draw, max_dim=8):
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(1, max_dim))
    entries = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    sparse = st.one_of(st.just(Fraction(0)), entries)
    rows = draw(st.lists(st.lists(sparse, min_size=c, max_size=c), min_size=r, max_size=r))
    return QMatrix(rows, ncols=c)


@st.composite
def nilpotents(draw, max_dim=8):
    """Conjugates of strictly upper triangular matrices."""
    n = draw(st.integers(1, max_dim))
    small = st.integers(-2, 2)
    upper = [[draw(small) if j > i else 0 for j in range(n)] for i in range(n)]
    perm = draw(st.permutations(list(range(n))))
    P = QMatrix([[int(perm[i] == j) for j in range(n)] for i in range(n)])
    # unipotent lower triangular change of basis keeps things invertible
    L = QMatrix([[1 if i == j else (draw(small) if i > j else 0) for j in range(n)] for i in range(n)])
    S = P @ L
    return S @ QMatrix(upper) @ S.inverse()


def random_point(rng: random.Random, n, bound=4, zero_prob=0.3):
    while True:
        v = [
            Fraction(0) if rng.random() < zero_prob else Fraction(rng.randint(-bound, bound), rng.randint(1, 3))
            for _ in range(n)
        ]
        if any(v):
            return tuple(v)
