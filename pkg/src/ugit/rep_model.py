"""Graded representations of U-hat = U x| C*.

``V`` has a basis of torus weight vectors; ``Lie(U)`` is given by a basis of
nilpotent operators ``N_r``, each homogeneous of positive grade ``ell_r``.
Dual coordinates ``x_1..x_n`` are the coordinate functionals of that basis.
A monomial ``prod x_i**m_i`` is assigned the V-weight ``sum m_i*w_i``; the
derivation induced by ``N`` on the dual side *lowers* V-weight by its grade.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidRep, NotAdapted, TrivialAction
from .exactalg import EpsRational, QMatrix, format_rational
from .polynomials import Polynomial, check_cap, monomials, weighted_monomials


@dataclass(frozen=True)
class LieElement:
    grade: int
    op: QMatrix


@dataclass(frozen=True)
class GradedUnipotentRep:
    """Torus weights on ``V`` plus a graded basis of ``Lie(U)``.

    ``structure_consts`` maps ``(r, s)`` to ``{t: c}`` with
    ``[N_r, N_s] = sum_t c * N_t``; absent pairs bracket to zero.
    """

    torus_weights: tuple
    lie_basis: tuple = ()
    structure_consts: dict | None = None
    labels: tuple | None = None
    name: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "torus_weights", tuple(int(w) for w in self.torus_weights))
        object.__setattr__(self, "lie_basis", tuple(self.lie_basis))
        if self.labels is None:
            object.__setattr__(
                self, "labels", tuple(f"x{i + 1}" for i in range(len(self.torus_weights)))
            )
        else:
            object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def dim_v(self):
        return len(self.torus_weights)

    @property
    def dim_u(self):
        return len(self.lie_basis)

    @property
    def ops(self):
        return [e.op for e in self.lie_basis]

    @property
    def grades(self):
        return [e.grade for e in self.lie_basis]

    def single_nilpotent(self):
        """``(N, ell)`` for a rep with exactly one Lie basis element."""
        from .errors import UnsupportedDimension

        if self.dim_u != 1:
            raise UnsupportedDimension(
                f"operation needs exactly one nilpotent, rep has {self.dim_u}",
                dim_u=self.dim_u,
            )
        e = self.lie_basis[0]
        return e.op, e.grade

    def bracket_coeffs(self, r, s):
        if self.structure_consts is None:
            return None
        if (r, s) in self.structure_consts:
            return self.structure_consts[(r, s)]
        if (s, r) in self.structure_consts:
            return {t: -c for t, c in self.structure_consts[(s, r)].items()}
        return {}


def make_rep(weights, ops=(), grades=(), structure_consts=None, labels=None, name=None):
    """Convenience constructor taking plain nested lists for the operators."""
    basis = tuple(
        LieElement(int(g), op if isinstance(op, QMatrix) else QMatrix(op))
        for op, g in zip(ops, grades)
    )
    return GradedUnipotentRep(tuple(weights), basis, structure_consts, labels, name)


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    message: str
    indices: tuple = ()

    def to_dict(self):
        return {"kind": self.kind, "message": self.message, "indices": list(self.indices)}


def validate_rep(rep: GradedUnipotentRep) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    n = rep.dim_v
    if len(rep.labels) != n:
        out.append(Diagnostic("LabelCountMismatch", f"{len(rep.labels)} labels for dim {n}"))
    for r, e in enumerate(rep.lie_basis):
        if e.op.shape != (n, n):
            out.append(
                Diagnostic("DimensionMismatch", f"N_{r} has shape {e.op.shape}, expected {(n, n)}", (r,))
            )
            continue
        if e.grade <= 0:
            out.append(Diagnostic("NonPositiveGrade", f"N_{r} has grade {e.grade}", (r,)))
        for j in range(n):
            for i in range(n):
                if e.op[i, j] != 0 and rep.torus_weights[i] != rep.torus_weights[j] + e.grade:
                    out.append(
                        Diagnostic(
                            "WeightShiftMismatch",
                            f"N_{r} maps e{j + 1} (weight {rep.torus_weights[j]}) to e{i + 1} "
                            f"(weight {rep.torus_weights[i]}), grade {e.grade}",
                            (r, i, j),
                        )
                    )
        if not (e.op ** n).is_zero():
            out.append(Diagnostic("NotNilpotent", f"N_{r}**{n} != 0", (r,)))
    if any(d.kind == "DimensionMismatch" for d in out):
        return out
    if rep.structure_consts is not None:
        grades = rep.grades
        ops = rep.ops
        m = len(ops)
        for (r, s), coeffs in rep.structure_consts.items():
            bad = [t for t in coeffs if not (0 <= t < m)]
            if not (0 <= r < m and 0 <= s < m) or bad:
                out.append(Diagnostic("StructureIndex", f"bad index in c[{r},{s}]", (r, s)))
                continue
            for t, c in coeffs.items():
                if c and grades[t] != grades[r] + grades[s]:
                    out.append(
                        Diagnostic(
                            "StructureGradeMismatch",
                            f"c[{r},{s}]^{t} != 0 but grade {grades[t]} != {grades[r]}+{grades[s]}",
                            (r, s, t),
                        )
                    )
        for r in range(m):
            for s in range(r + 1, m):
                lhs = ops[r].commutator(ops[s])
                rhs = QMatrix.zeros(rep.dim_v, rep.dim_v)
                for t, c in rep.bracket_coeffs(r, s).items():
                    rhs = rhs + ops[t].scale(c)
                if lhs != rhs:
                    out.append(
                        Diagnostic("BracketMismatch", f"[N_{r}, N_{s}] disagrees with structure constants", (r, s))
                    )
    return out


def require_valid(rep):
    diags = validate_rep(rep)
    if diags:
        raise InvalidRep("; ".join(d.message for d in diags), diagnostics=[d.to_dict() for d in diags])
    return rep


def structure_constants_from_ops(ops: Sequence[QMatrix]) -> dict:
    """Express every ``[N_r, N_s]`` (r < s) in the span of ``ops``.

    Raises ``ValueError`` if the span is not closed under brackets.
    """
    m = len(ops)
    if m == 0:
        return {}
    n = ops[0].nrows
    # solve sum_t c_t vec(N_t) = vec([N_r, N_s]) via one RREF of the stacked system
    from .exactalg import _rref_rows

    out = {}
    for r in range(m):
        for s in range(r + 1, m):
            br = ops[r].commutator(ops[s])
            if br.is_zero():
                continue
            rows = []
            for i in range(n):
                for j in range(n):
                    rows.append([ops[t][i, j] for t in range(m)] + [br[i, j]])
            red, pivots = _rref_rows(rows)
            if m in pivots:
                raise ValueError(f"[N_{r}, N_{s}] is not in the span of the basis")
            coeffs = {}
            for row_idx, p in enumerate(pivots):
                c = red[row_idx][m]
                if c:
                    coeffs[p] = c
            out[(r, s)] = coeffs
    return out


# ---------------------------------------------------------------------------
# weight profile


@dataclass(frozen=True)
class WeightProfile:
    distinct_weights: tuple
    index_sets: dict  # weight -> tuple of basis indices

    @property
    def multiplicities(self):
        return {w: len(ix) for w, ix in self.index_sets.items()}

    @property
    def omega0(self):
        return self.distinct_weights[0]

    @property
    def h(self):
        return len(self.distinct_weights) - 1

    @property
    def v_min_indices(self):
        return self.index_sets[self.omega0]

    def to_dict(self):
        return {
            "distinct_weights": list(self.distinct_weights),
            "multiplicities": [self.multiplicities[w] for w in self.distinct_weights],
            "index_sets": [list(self.index_sets[w]) for w in self.distinct_weights],
            "v_min_indices": list(self.v_min_indices),
        }


def weight_profile(rep: GradedUnipotentRep) -> WeightProfile:
    sets: dict = {}
    for i, w in enumerate(rep.torus_weights):
        sets.setdefault(w, []).append(i)
    distinct = tuple(sorted(sets))
    return WeightProfile(distinct, {w: tuple(sets[w]) for w in distinct})


def adapted_interval(profile: WeightProfile):
    """Open interval ``(omega_0, omega_1)``."""
    if profile.h < 1:
        raise TrivialAction("only one distinct torus weight", weights=list(profile.distinct_weights))
    return profile.distinct_weights[0], profile.distinct_weights[1]


# ---------------------------------------------------------------------------
# characters


@dataclass(frozen=True)
class CharacterTwist:
    """Rational character ``chi/c`` or the symbolic well-adapted ``omega_0 + eps``."""

    chi: int | None = None
    c: int | None = None
    symbolic: bool = False
    omega0: int | None = None
    override: bool = False

    @classmethod
    def exact(cls, chi: int, c: int, profile: WeightProfile | None = None, override=False):
        if c <= 0:
            raise ValueError("c must be a positive integer")
        tw = cls(chi=int(chi), c=int(c), omega0=profile.omega0 if profile else None, override=override)
        if profile is not None and not override:
            lo, hi = adapted_interval(profile)
            if not (lo < Fraction(chi, c) < hi):
                raise NotAdapted(
                    f"chi/c = {format_rational(Fraction(chi, c))} not in ({lo}, {hi})",
                    interval=[lo, hi],
                )
        return tw

    @classmethod
    def well_adapted(cls, profile: WeightProfile):
        adapted_interval(profile)
        return cls(symbolic=True, omega0=profile.omega0)

    def ratio(self) -> EpsRational:
        if self.symbolic:
            return EpsRational(self.omega0, 1)
        return EpsRational(Fraction(self.chi, self.c))

    def to_dict(self):
        if self.symbolic:
            return {"symbolic": True}
        return {"chi": self.chi, "c": self.c}

    def __str__(self):
        return str(self.ratio())


# ---------------------------------------------------------------------------
# dual action


@dataclass(frozen=True)
class Derivation:
    """Derivation of Q[x_1..x_n] extending ``x_i -> sum_j N[i, j] x_j``."""

    nvars: int
    images: tuple  # images[i] = tuple of (j, coeff)
    grade: int = 0

    @classmethod
    def from_operator(cls, op: QMatrix, grade=0):
        n = op.nrows
        images = tuple(tuple((j, op[i, j]) for j in range(n) if op[i, j] != 0) for i in range(n))
        return cls(n, images, grade)

    def is_zero(self):
        return not any(self.images)

    def apply_monomial(self, exp: tuple) -> dict:
        out: dict = {}
        for i, mi in enumerate(exp):
            if not mi or not self.images[i]:
                continue
            base = list(exp)
            base[i] -= 1
            for j, c in self.images[i]:
                e = list(base)
                e[j] += 1
                e = tuple(e)
                out[e] = out.get(e, 0) + mi * c
        return {e: c for e, c in out.items() if c}

    def __call__(self, f: Polynomial) -> Polynomial:
        out: dict = {}
        for exp, c in f.terms.items():
            for e, x in self.apply_monomial(exp).items():
                out[e] = out.get(e, 0) + c * x
        return Polynomial(self.nvars, out)

    def matrix_on(self, source: Sequence[tuple], target: Sequence[tuple]) -> QMatrix:
        """Matrix of the derivation from span(source) into span(target)."""
        index = {e: i for i, e in enumerate(target)}
        rows = [[Fraction(0)] * len(source) for _ in target]
        for col, exp in enumerate(source):
            for e, c in self.apply_monomial(exp).items():
                rows[index[e]][col] += c
        return QMatrix(rows, ncols=len(source))

    def on_linear_forms(self) -> QMatrix:
        """Matrix on coefficient vectors of linear forms (the transpose of N)."""
        n = self.nvars
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i, img in enumerate(self.images):
            for j, c in img:
                rows[j][i] += c
        return QMatrix(rows, ncols=n)


@dataclass(frozen=True)
class DualAction:
    rep: GradedUnipotentRep
    degree: int
    derivations: tuple
    basis: tuple  # degree-d monomials

    def v_weight(self, exp):
        return sum(m * w for m, w in zip(exp, self.rep.torus_weights))


def dual_action(rep: GradedUnipotentRep, d: int, monomial_cap: int | None = None) -> DualAction:
    if d < 1:
        raise ValueError("degree must be >= 1")
    check_cap(rep.dim_v, d, monomial_cap)
    ders = tuple(Derivation.from_operator(e.op, e.grade) for e in rep.lie_basis)
    return DualAction(rep, d, ders, tuple(monomials(rep.dim_v, d)))


def derivations(rep: GradedUnipotentRep):
    return [Derivation.from_operator(e.op, e.grade) for e in rep.lie_basis]


def slice_monomials(rep, degree, weight):
    return weighted_monomials(rep.torus_weights, degree, weight)


# ---------------------------------------------------------------------------
# X x P^1


def product_with_p1(rep: GradedUnipotentRep, M: int, chi1_weight: int) -> GradedUnipotentRep:
    """Representation on ``V (x) Sym^M`` for sections of ``L [x] O(M)``.

    Basis order is copy-major: copy ``a`` (a = 0..M) occupies indices
    ``a*n .. a*n + n - 1`` and has weights ``w_i + a*chi1_weight``.
    """
    if M < 1:
        raise ValueError("M must be positive")
    n = rep.dim_v
    copies = M + 1
    weights = [w + a * chi1_weight for a in range(copies) for w in rep.torus_weights]
    basis = []
    for e in rep.lie_basis:
        rows = [[Fraction(0)] * (n * copies) for _ in range(n * copies)]
        for a in range(copies):
            for i in range(n):
                for j in range(n):
                    if e.op[i, j]:
                        rows[a * n + i][a * n + j] = e.op[i, j]
        basis.append(LieElement(e.grade, QMatrix(rows, ncols=n * copies)))
    labels = [f"{lab}_{a}" for a in range(copies) for lab in rep.labels]
    return GradedUnipotentRep(tuple(weights), tuple(basis), rep.structure_consts, tuple(labels))


def random_weight_preserving_change(rep, rng, bound=3):
    """Block-diagonal (by weight) invertible change of basis, for testing."""
    prof = weight_profile(rep)
    n = rep.dim_v
    rows = [[Fraction(0)] * n for _ in range(n)]
    for w, ix in prof.index_sets.items():
        while True:
            block = [[Fraction(rng.randint(-bound, bound)) for _ in ix] for _ in ix]
            if QMatrix(block, ncols=len(ix)).det() != 0:
                break
        for a, i in enumerate(ix):
            for b, j in enumerate(ix):
                rows[i][j] = block[a][b]
    return QMatrix(rows, ncols=n)


def conjugate_rep(rep, P: QMatrix):
    """Rep with operators ``P^-1 N P`` (same weights when P preserves them)."""
    Pinv = P.inverse()
    basis = tuple(LieElement(e.grade, Pinv @ e.op @ P) for e in rep.lie_basis)
    return GradedUnipotentRep(rep.torus_weights, basis, rep.structure_consts, rep.labels)
