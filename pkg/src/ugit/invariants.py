"""Truncated invariant rings.

Invariants of degree ``d`` are the joint kernel of the derivations ``D_r``
on ``Sym^d(V*)``.  Each ``D_r`` preserves degree and lowers V-weight by its
grade, so kernels are computed one ``(degree, weight)`` slice at a time.
The twist by ``chi/c`` selects the slice of degree ``c*k`` and V-weight
``k*chi`` at level ``k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import BadSectionWeight
from .exactalg import QMatrix, SpanTracker, _rref_rows, kernel_basis
from .polynomials import Polynomial, check_cap, glex_key, monomials, weighted_monomials
from .rep_model import CharacterTwist, GradedUnipotentRep, derivations, weight_profile


def _slice_matrix(ders, weights, source, degree, weight):
    """Stacked matrices of every derivation from the slice into its targets."""
    blocks = []
    for der in ders:
        if der.is_zero():
            continue
        rows: dict = {}
        for j, exp in enumerate(source):
            for e, c in der.apply_monomial(exp).items():
                rows.setdefault(e, {})[j] = c
        for e in sorted(rows, key=glex_key):
            row = [Fraction(0)] * len(source)
            for j, c in rows[e].items():
                row[j] += c
            if any(row):
                blocks.append(row)
    return blocks


def slice_kernel(rep: GradedUnipotentRep, degree: int, weight: int, source=None) -> list[Polynomial]:
    """Reduced echelon basis of the invariants in one ``(degree, weight)`` slice."""
    if source is None:
        source = weighted_monomials(rep.torus_weights, degree, weight)
    source = sorted(source, key=glex_key)
    if not source:
        return []
    rows = _slice_matrix(derivations(rep), rep.torus_weights, source, degree, weight)
    ker = kernel_basis(QMatrix(rows, ncols=len(source))) if rows else [
        tuple(Fraction(int(i == j)) for i in range(len(source))) for j in range(len(source))
    ]
    if not ker:
        return []
    red, pivots = _rref_rows([list(v) for v in ker])
    n = rep.dim_v
    return [
        Polynomial(n, {source[j]: c for j, c in enumerate(red[r]) if c})
        for r in range(len(pivots))
    ]


def _sort_basis(polys):
    return sorted(polys, key=lambda p: glex_key(p.leading()[0]))


def u_invariant_space(rep: GradedUnipotentRep, d: int, monomial_cap: int | None = None) -> list[Polynomial]:
    check_cap(rep.dim_v, d, monomial_cap)
    by_weight: dict = {}
    for exp in monomials(rep.dim_v, d):
        w = sum(m * x for m, x in zip(exp, rep.torus_weights))
        by_weight.setdefault(w, []).append(exp)
    out = []
    for w in sorted(by_weight):
        out.extend(slice_kernel(rep, d, w, by_weight[w]))
    return _sort_basis(out)


@dataclass(frozen=True)
class TwistedSpace:
    k: int
    degree: int
    weight: int
    basis: tuple
    note: str | None = None

    def to_dict(self, labels=None):
        out = {
            "k": self.k,
            "degree": self.degree,
            "weight": self.weight,
            "dim": len(self.basis),
            "basis": [p.to_str(labels) for p in self.basis],
        }
        if self.note:
            out["note"] = self.note
        return out


def _require_exact(twist: CharacterTwist):
    if twist.symbolic:
        raise ValueError(
            "invariant computations need an exact chi/c; omega_0 + 1/c is a well-adapted choice"
        )


def twisted_invariant_space(rep: GradedUnipotentRep, twist: CharacterTwist, k: int, monomial_cap=None) -> TwistedSpace:
    _require_exact(twist)
    if k < 0:
        raise ValueError("k must be non-negative")
    degree, weight = twist.c * k, twist.chi * k
    if k == 0:
        return TwistedSpace(0, 0, 0, (Polynomial.constant(rep.dim_v, 1),))
    check_cap(rep.dim_v, degree, monomial_cap)
    source = weighted_monomials(rep.torus_weights, degree, weight)
    note = None
    if not source:
        note = "NonIntegralDegree: no monomial of this degree has the required weight"
    basis = _sort_basis(slice_kernel(rep, degree, weight, source))
    return TwistedSpace(k, degree, weight, tuple(basis), note)


# ---------------------------------------------------------------------------
# generator probe


@dataclass
class TruncatedInvariantRing:
    rep: GradedUnipotentRep
    twist: CharacterTwist
    c: int
    per_k: list = field(default_factory=list)  # TwistedSpace for k = 1..K
    generators: list = field(default_factory=list)  # (k, Polynomial)
    probe_limit: int = 0

    @property
    def first_gap(self):
        """Smallest k0 such that no generator appears at any level in [k0, K]."""
        levels = [k for k, _ in self.generators]
        return (max(levels) + 1) if levels else 1

    @property
    def stabilization(self):
        return {"probe_limit": self.probe_limit, "first_gap": self.first_gap}

    def to_dict(self):
        labels = self.rep.labels
        return {
            "twist": self.twist.to_dict(),
            "c": self.c,
            "hilbert_function": [[k, d] for k, d in hilbert_function(self)],
            "generators": [
                {"k": k, "polynomial": p.to_str(labels), "terms": p.to_json()} for k, p in self.generators
            ],
            "stabilization": self.stabilization,
            "notes": [s.note for s in self.per_k if s.note],
        }


def _vec(p: Polynomial):
    return dict(p.terms)


def generator_probe(rep: GradedUnipotentRep, twist: CharacterTwist, K: int, c: int | None = None,
                    monomial_cap=None) -> TruncatedInvariantRing:
    """Greedy generators of the twisted invariant algebra through level ``K``.

    At level ``k`` the subalgebra generated so far is spanned by products of
    one generator of level ``j`` with the full space at level ``k - j``
    (lower levels are already generated).  Basis elements outside that span
    become new generators, in basis order.
    """
    _require_exact(twist)
    if c is not None and c != twist.c:
        raise ValueError("c disagrees with the twist")
    ring = TruncatedInvariantRing(rep, twist, twist.c, probe_limit=K)
    spaces = {0: twisted_invariant_space(rep, twist, 0)}
    for k in range(1, K + 1):
        space = twisted_invariant_space(rep, twist, k, monomial_cap)
        spaces[k] = space
        ring.per_k.append(space)
        span = SpanTracker()
        for j, g in ring.generators:
            if j >= k:
                continue
            for b in spaces[k - j].basis:
                span.add(_vec(g * b))
        for b in space.basis:
            if span.add(_vec(b)):
                ring.generators.append((k, b))
    return ring


def hilbert_function(ring: TruncatedInvariantRing) -> list[tuple]:
    return [(s.k, len(s.basis)) for s in ring.per_k]


# ---------------------------------------------------------------------------
# localisation at a minimal-weight section


@dataclass(frozen=True)
class LocalizedRing:
    sigma: Polynomial
    degree_bound: int
    generators: tuple  # (m, P) meaning P / sigma**m

    def fraction_strings(self, labels=None):
        s = self.sigma.to_str(labels)
        s = s if len(self.sigma.terms) == 1 else f"({s})"
        out = []
        for m, p in self.generators:
            num = p.to_str(labels)
            if len(p.terms) > 1:
                num = f"({num})"
            out.append(f"{num}/{s}" if m == 1 else f"{num}/{s}^{m}")
        return out

    def to_dict(self, labels=None):
        return {
            "sigma": self.sigma.to_str(labels),
            "degree_bound": self.degree_bound,
            "generators": [
                {"m": m, "numerator": p.to_json(), "fraction": f}
                for (m, p), f in zip(self.generators, self.fraction_strings(labels))
            ],
        }


def _as_linear_form(rep, sigma) -> Polynomial:
    if isinstance(sigma, Polynomial):
        return sigma
    if isinstance(sigma, str):
        return parse_linear_form(sigma, rep.labels)
    return Polynomial.linear(list(sigma))


def parse_linear_form(text: str, labels: Sequence[str]) -> Polynomial:
    """Parse ``"x1"``, ``"2*x1 - x2"``, ``"1/2*y1+x2"`` over the given labels."""
    from .exactalg import parse_rational

    index = {lab: i for i, lab in enumerate(labels)}
    coeffs = [Fraction(0)] * len(labels)
    s = text.replace(" ", "").replace("-", "+-")
    for term in filter(None, s.split("+")):
        neg = term.startswith("-")
        term = term.lstrip("-")
        if "*" in term:
            c, name = term.rsplit("*", 1)
            coef = parse_rational(c)
        else:
            coef, name = Fraction(1), term
        if name not in index:
            raise ValueError(f"unknown coordinate {name!r}")
        coeffs[index[name]] += -coef if neg else coef
    return Polynomial.linear(coeffs)


def localize_at_min_section(rep: GradedUnipotentRep, sigma, degree_bound: int, monomial_cap=None) -> LocalizedRing:
    sigma = _as_linear_form(rep, sigma)
    vmin = set(weight_profile(rep).v_min_indices)
    if sigma.is_zero() or not sigma.is_homogeneous() or sigma.degrees() != {1}:
        raise BadSectionWeight("sigma must be a nonzero linear form")
    support = {e.index(1) for e in sigma.terms}
    if not support <= vmin:
        raise BadSectionWeight(
            "sigma must be supported on the minimal-weight coordinates",
            support=sorted(support),
            v_min=sorted(vmin),
        )
    spaces = {0: [Polynomial.constant(rep.dim_v, 1)]}
    gens = []
    for m in range(1, degree_bound + 1):
        space = u_invariant_space(rep, m, monomial_cap)
        spaces[m] = space
        span = SpanTracker()
        for b in spaces[m - 1]:
            span.add(_vec(sigma * b))
        for j, g in gens:
            for b in spaces[m - j]:
                span.add(_vec(g * b))
        for b in space:
            if span.add(_vec(b)):
                gens.append((m, b))
    return LocalizedRing(sigma, degree_bound, tuple(gens))
