"""Exact linear algebra over the rationals.

Rationals are :class:`fractions.Fraction`.  On top of that this module
provides the eps-augmented scalars used for well-adapted twists, a small
immutable dense matrix type, reduced row echelon form with deterministic
pivoting, Jordan chains of nilpotent operators and univariate polynomials
with gcd and resultant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence

from .errors import EpsSquared, NotNilpotent

Rational = Fraction

__all__ = [
    "Rational",
    "as_rational",
    "format_rational",
    "parse_rational",
    "EpsRational",
    "EPS",
    "QMatrix",
    "rref",
    "rank",
    "kernel_basis",
    "SpanTracker",
    "jordan_chains",
    "QPoly",
    "poly_gcd",
    "resultant",
    "poly_common_root_exists",
]


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise TypeError("floats are not accepted in exact arithmetic")
    return Fraction(x)


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    if not s:
        raise ValueError("empty rational")
    if "." in s or "e" in s.lower():
        raise ValueError(f"decimal notation not accepted: {s!r}")
    return Fraction(s)


# ---------------------------------------------------------------------------
# eps-augmented rationals


@total_ordering
@dataclass(frozen=True)
class EpsRational:
    """``std + inf*eps`` for a fixed positive infinitesimal ``eps``."""

    std: Fraction = Fraction(0)
    inf: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "std", as_rational(self.std))
        object.__setattr__(self, "inf", as_rational(self.inf))

    @classmethod
    def lift(cls, x) -> "EpsRational":
        if isinstance(x, EpsRational):
            return x
        return cls(as_rational(x), Fraction(0))

    @property
    def is_standard(self):
        return self.inf == 0

    def _key(self):
        return (self.std, self.inf)

    def __eq__(self, other):
        try:
            other = EpsRational.lift(other)
        except TypeError:
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self.inf == 0:
            return hash(self.std)
        return hash(self._key())

    def __lt__(self, other):
        other = EpsRational.lift(other)
        return self._key() < other._key()

    def __add__(self, other):
        other = EpsRational.lift(other)
        return EpsRational(self.std + other.std, self.inf + other.inf)

    __radd__ = __add__

    def __neg__(self):
        return EpsRational(-self.std, -self.inf)

    def __sub__(self, other):
        return self + (-EpsRational.lift(other))

    def __rsub__(self, other):
        return EpsRational.lift(other) - self

    def __mul__(self, other):
        other = EpsRational.lift(other)
        if self.inf != 0 and other.inf != 0:
            raise EpsSquared(f"({self}) * ({other})")
        return EpsRational(
            self.std * other.std, self.std * other.inf + self.inf * other.std
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = EpsRational.lift(other)
        if other.inf != 0:
            raise EpsSquared("division by a non-standard quantity")
        return EpsRational(self.std / other.std, self.inf / other.std)

    def sign(self) -> int:
        if self.std != 0:
            return 1 if self.std > 0 else -1
        if self.inf != 0:
            return 1 if self.inf > 0 else -1
        return 0

    def at(self, eps) -> Fraction:
        """Specialise eps to a concrete rational."""
        return self.std + self.inf * as_rational(eps)

    def __str__(self):
        if self.inf == 0:
            return format_rational(self.std)
        return f"{format_rational(self.std)} + {format_rational(self.inf)}*eps"

    def __repr__(self):
        return f"EpsRational({self})"

    @classmethod
    def parse(cls, s: str) -> "EpsRational":
        s = s.replace(" ", "")
        if "eps" not in s:
            return cls(parse_rational(s))
        if not s.endswith("*eps"):
            raise ValueError(f"malformed eps rational: {s!r}")
        body = s[: -len("*eps")]
        # split at the last top-level sign that separates std from inf
        for pos in range(len(body) - 1, 0, -1):
            if body[pos] in "+-" and body[pos - 1] not in "+-/":
                std, inf = body[:pos], body[pos:]
                if inf.startswith("+"):
                    inf = inf[1:]
                return cls(parse_rational(std), parse_rational(inf))
        return cls(Fraction(0), parse_rational(body))


EPS = EpsRational(0, 1)


# ---------------------------------------------------------------------------
# matrices


class QMatrix:
    """Immutable dense matrix with rational entries."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(as_rational(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged matrix")
        else:
            width = ncols or 0
        if ncols is not None and width != ncols:
            raise ValueError("column count mismatch")
        self._rows = data
        self.nrows = len(data)
        self.ncols = width

    # construction -----------------------------------------------------------

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int | None = None):
        if not cols:
            return cls.zeros(nrows or 0, 0)
        n = len(cols[0])
        return cls([[c[i] for c in cols] for i in range(n)], ncols=len(cols))

    @classmethod
    def from_map(cls, n, images: dict):
        """Square matrix sending basis vector ``j`` to ``sum c*e_i`` for
        ``images[j] = {i: c}``."""
        rows = [[0] * n for _ in range(n)]
        for j, img in images.items():
            for i, c in img.items():
                rows[i][j] = c
        return cls(rows, ncols=n)

    # access -----------------------------------------------------------------

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def rows(self):
        return self._rows

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def row(self, i):
        return self._rows[i]

    def column(self, j):
        return tuple(r[j] for r in self._rows)

    def tolist(self):
        return [list(r) for r in self._rows]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]):
        return QMatrix([[self._rows[i][j] for j in cols] for i in rows], ncols=len(cols))

    # arithmetic ---------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __add__(self, other):
        _same_shape(self, other)
        return QMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)],
            ncols=self.ncols,
        )

    def __sub__(self, other):
        _same_shape(self, other)
        return QMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)],
            ncols=self.ncols,
        )

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = as_rational(c)
        return QMatrix([[c * a for a in r] for r in self._rows], ncols=self.ncols)

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = list(zip(*other._rows)) if other.nrows else [()] * other.ncols
            return QMatrix(
                [[_dot(r, c) for c in cols] for r in self._rows], ncols=other.ncols
            )
        vec = tuple(as_rational(x) for x in other)
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(_dot(r, vec) for r in self._rows)

    def apply(self, vec):
        return self @ vec

    def transpose(self):
        if not self._rows:
            return QMatrix.zeros(self.ncols, 0)
        return QMatrix(zip(*self._rows), ncols=self.nrows)

    T = property(transpose)

    def __pow__(self, k: int):
        if self.nrows != self.ncols:
            raise ValueError("power of a non-square matrix")
        result = QMatrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_zero(self):
        return all(x == 0 for r in self._rows for x in r)

    def commutator(self, other):
        return self @ other - other @ self

    def inverse(self):
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self._rows)]
        red, pivots = _rref_rows(aug, limit=n)
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return QMatrix([r[n:] for r in red[:n]], ncols=n)

    def det(self):
        n = self.nrows
        if n != self.ncols:
            raise ValueError("det of a non-square matrix")
        a = [list(r) for r in self._rows]
        det = Fraction(1)
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c] != 0), None)
            if p is None:
                return Fraction(0)
            if p != c:
                a[c], a[p] = a[p], a[c]
                det = -det
            det *= a[c][c]
            inv = 1 / a[c][c]
            for r in range(c + 1, n):
                f = a[r][c] * inv
                if f:
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return det

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in r) for r in self._rows)
        return f"QMatrix[{self.nrows}x{self.ncols}]({body})"


def _same_shape(a, b):
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


def _dot(r, c):
    s = Fraction(0)
    for x, y in zip(r, c):
        if x and y:
            s += x * y
    return s


def _rref_rows(rows, limit=None):
    """In-place RREF on a list of mutable rows.

    Pivot search: leftmost column first, smallest row index within it.
    ``limit`` restricts pivoting to the first ``limit`` columns.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    if limit is None:
        limit = ncols
    pivots = []
    r = 0
    for c in range(limit):
        if r >= nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        if inv != 1:
            rows[r] = [x * inv for x in rows[r]]
        pr = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: QMatrix):
    """Return ``(R, pivot_columns)`` with ``R`` in reduced row echelon form."""
    rows, pivots = _rref_rows([list(r) for r in m.rows])
    return QMatrix(rows, ncols=m.ncols), pivots


def rank(m: QMatrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: QMatrix) -> list[tuple]:
    """Basis of the right null space, one vector per free column.

    The vector attached to free column ``f`` has a 1 at ``f``, zeros at all
    other free columns, and is supported on ``f`` and pivots left of ``f``.
    """
    if m.nrows == 0:
        return [tuple(Fraction(int(i == j)) for i in range(m.ncols)) for j in range(m.ncols)]
    rows, pivots = _rref_rows([list(r) for r in m.rows])
    pivot_set = set(pivots)
    basis = []
    for f in range(m.ncols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for row_idx, p in enumerate(pivots):
            v[p] = -rows[row_idx][f]
        basis.append(tuple(v))
    return basis


class SpanTracker:
    """Incremental exact span membership for sparse vectors.

    Vectors are dicts ``key -> Fraction``; keys only need to be hashable.
    """

    def __init__(self):
        self._rows = []  # (pivot key, reduced row)

    def __len__(self):
        return len(self._rows)

    def reduce(self, vec: dict) -> dict:
        v = {k: as_rational(c) for k, c in vec.items() if c}
        for pivot, row in self._rows:
            c = v.get(pivot)
            if c:
                for k, x in row.items():
                    y = v.get(k, 0) - c * x
                    if y:
                        v[k] = y
                    else:
                        v.pop(k, None)
        return v

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def add(self, vec: dict) -> bool:
        """Add ``vec``; return True when it enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        pivot = min(v, key=_sort_key)
        inv = 1 / v[pivot]
        self._rows.append((pivot, {k: x * inv for k, x in v.items()}))
        return True


def _sort_key(k):
    return k if isinstance(k, tuple) else (k,)


def _vec_dict(v):
    return {i: x for i, x in enumerate(v) if x}


def _as_square_nilpotent(n: QMatrix):
    if n.nrows != n.ncols:
        raise ValueError("jordan_chains needs a square matrix")
    if not (n ** n.nrows).is_zero():
        raise NotNilpotent("n**dim != 0", dim=n.nrows)


def jordan_chains(n: QMatrix, grading: Sequence | None = None) -> list[list[tuple]]:
    """Jordan chains ``b_0, ..., b_l`` with ``n b_j = b_{j+1}`` and ``n b_l = 0``.

    Chains come out in weakly decreasing length.  With ``grading`` (a label
    per basis index, typically torus weights) and ``n`` mapping each graded
    piece into a single other piece, every chain vector is homogeneous.
    """
    _as_square_nilpotent(n)
    dim = n.nrows
    if dim == 0:
        return []
    if grading is None:
        grading = [0] * dim
    pieces: dict = {}
    for i, g in enumerate(grading):
        pieces.setdefault(g, []).append(i)
    piece_order = sorted(pieces, key=_sort_key)

    powers = [QMatrix.identity(dim)]
    while not powers[-1].is_zero():
        powers.append(powers[-1] @ n)
    height = len(powers) - 1  # nilpotency index

    def graded_kernel(s):
        """Homogeneous basis of ker n^s."""
        out = []
        for g in piece_order:
            cols = pieces[g]
            sub = powers[s].submatrix(range(dim), cols)
            for kv in kernel_basis(sub):
                v = [Fraction(0)] * dim
                for c, x in zip(cols, kv):
                    v[c] = x
                out.append(tuple(v))
        return out

    chains: list[list[tuple]] = []
    for s in range(height, 0, -1):
        span = SpanTracker()
        for v in graded_kernel(s - 1):
            span.add(_vec_dict(v))
        for chain in chains:
            # chains already found are longer than s; their depth-s vectors
            span.add(_vec_dict(chain[len(chain) - s]))
        for cand in graded_kernel(s):
            if span.add(_vec_dict(cand)):
                chain = [cand]
                for _ in range(s - 1):
                    chain.append(n @ chain[-1])
                chains.append(chain)
    return chains


# ---------------------------------------------------------------------------
# univariate polynomials


@dataclass(frozen=True)
class QPoly:
    """Univariate polynomial, coefficients in ascending degree."""

    coeffs: tuple = ()

    def __post_init__(self):
        c = [as_rational(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def x(cls):
        return cls((0, 1))

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lead(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, EpsRational) else EpsRational()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        other = _lift_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return QPoly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return QPoly(tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-_lift_poly(other))

    def __rsub__(self, other):
        return _lift_poly(other) - self

    def __mul__(self, other):
        other = _lift_poly(other)
        if self.is_zero() or other.is_zero():
            return QPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return QPoly(tuple(out))

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = _lift_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree()
        q = [Fraction(0)] * max(len(rem) - dq, 1)
        lead = other.lead()
        while len(rem) - 1 >= dq and rem:
            shift = len(rem) - 1 - dq
            f = rem[-1] / lead
            q[shift] = f
            for i, c in enumerate(other.coeffs):
                rem[shift + i] -= f * c
            while rem and rem[-1] == 0:
                rem.pop()
        return QPoly(tuple(q)), QPoly(tuple(rem))

    def monic(self):
        if self.is_zero():
            return self
        lead = self.lead()
        return QPoly(tuple(c / lead for c in self.coeffs))

    def rational_roots(self) -> list[Fraction]:
        """Distinct rational roots (rational root theorem)."""
        if self.degree() < 1:
            return []
        c = list(self.coeffs)
        roots = []
        while c and c[0] == 0:
            c.pop(0)
            if Fraction(0) not in roots:
                roots.append(Fraction(0))
        if len(c) <= 1:
            return roots
        from math import lcm

        den = lcm(*(x.denominator for x in c))
        ints = [int(x * den) for x in c]
        p0, pn = abs(ints[0]), abs(ints[-1])
        reduced = QPoly(tuple(c))
        for p in _divisors(p0):
            for q in _divisors(pn):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if cand not in roots and reduced(cand) == 0:
                        roots.append(cand)
        return sorted(roots)

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("u" if i == 1 else f"u^{i}")
            coef = format_rational(c)
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            elif mono:
                terms.append(f"{coef}*{mono}")
            else:
                terms.append(coef)
        return " + ".join(terms).replace("+ -", "- ")


def _divisors(n):
    n = abs(n)
    small = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _lift_poly(x):
    if isinstance(x, QPoly):
        return x
    return QPoly((as_rational(x),))


def poly_gcd(a: QPoly, b: QPoly) -> QPoly:
    """Monic gcd; gcd(0, 0) = 0."""
    while not b.is_zero():
        a, b = b, divmod(a, b)[1]
    return a.monic()


def resultant(a: QPoly, b: QPoly) -> Fraction:
    """Resultant as the determinant of the Sylvester matrix."""
    m, n = a.degree(), b.degree()
    if m < 0 or n < 0:
        return Fraction(0)
    if m == 0 and n == 0:
        return Fraction(1)
    size = m + n
    rows = []
    ac = list(reversed(a.coeffs))
    bc = list(reversed(b.coeffs))
    for i in range(n):
        rows.append([Fraction(0)] * i + ac + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + bc + [Fraction(0)] * (size - n - 1 - i))
    return QMatrix(rows, ncols=size).det()


def poly_common_root_exists(ps: Sequence[QPoly]) -> bool:
    if not ps:
        raise ValueError("need at least one polynomial")
    g = QPoly()
    for p in ps:
        g = poly_gcd(g, p)
    if g.is_zero():
        return True
    return g.degree() > 0


def common_gcd(ps: Sequence[QPoly]) -> QPoly:
    g = QPoly()
    for p in ps:
        g = poly_gcd(g, p)
    return g
