"""Unipotent part of the automorphism group of a graded polynomial ring.

For homogeneous coordinates ``x_rho`` of degree ``d_rho`` in ``Z^m``, the
Lie algebra of the unipotent radical is ``sum_alpha Hom(S'_alpha, S''_alpha)``
where ``S'_alpha`` is spanned by the variables of degree ``alpha`` and
``S''_alpha`` by the monomials of degree ``alpha`` with at least two factors.
A basis map ``x_rho -> x^e`` with ``|e| = j`` factors has weight ``j - 1``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import UnboundedDegree
from .polynomials import DEFAULT_MONOMIAL_CAP, weighted_monomials


@dataclass(frozen=True)
class ToricGradingSpec:
    degrees: tuple  # one integer vector per variable
    degree_cap: int | None = None  # bound on the number of factors in S''

    def __post_init__(self):
        degs = tuple(tuple(int(x) for x in d) for d in self.degrees)
        if not degs:
            raise ValueError("need at least one variable")
        m = len(degs[0])
        if m < 1 or any(len(d) != m for d in degs):
            raise ValueError("degree vectors must share a positive length")
        object.__setattr__(self, "degrees", degs)

    @property
    def d(self):
        return len(self.degrees)

    @property
    def m(self):
        return len(self.degrees[0])

    @classmethod
    def parse(cls, text: str, degree_cap=None):
        """``"1;1;2"`` or ``"1,0;0,1;1,1"``."""
        degs = [tuple(int(x) for x in part.split(",")) for part in text.split(";") if part.strip()]
        return cls(tuple(degs), degree_cap)


@dataclass(frozen=True)
class AlphaReport:
    alpha: tuple
    variables: tuple  # indices of S'_alpha
    composite: tuple  # exponent vectors spanning S''_alpha
    factor_histogram: dict  # number of factors -> count

    @property
    def dim_s1(self):
        return len(self.variables)

    @property
    def dim_s2(self):
        return len(self.composite)


@dataclass(frozen=True)
class ToricAutReport:
    per_alpha: tuple
    dim_u: int
    weights: tuple  # sorted Lie(U) weights with multiplicity
    reductive_dims: tuple  # dim S'_alpha per GL factor

    def to_dict(self):
        return {
            "per_alpha": [
                {
                    "alpha": list(a.alpha),
                    "dim_S1": a.dim_s1,
                    "dim_S2": a.dim_s2,
                    "variables": list(a.variables),
                    "composite": [list(e) for e in a.composite],
                    "factor_histogram": {str(j): c for j, c in sorted(a.factor_histogram.items())},
                }
                for a in self.per_alpha
            ],
            "dim_U": self.dim_u,
            "weights": list(self.weights),
            "reductive_part": {"gl_factors": list(self.reductive_dims)},
        }


def positive_functional(degrees: Sequence[tuple]) -> tuple | None:
    """Integer ``h`` with ``h . d > 0`` for every degree, or None if none exists.

    Found by a linear program and then verified exactly.
    """
    m = len(degrees[0])
    if m == 1:
        if all(d[0] > 0 for d in degrees):
            return (1,)
        if all(d[0] < 0 for d in degrees):
            return (-1,)
        return None
    import numpy as np
    from scipy.optimize import linprog

    A = -np.array(degrees, dtype=float)
    res = linprog(
        c=np.zeros(m),
        A_ub=A,
        b_ub=-np.ones(len(degrees)),
        bounds=[(None, None)] * m,
        method="highs",
    )
    if not res.success:
        return None
    fr = [Fraction(x).limit_denominator(10**6) for x in res.x]
    den = lcm(*(f.denominator for f in fr))
    h = tuple(int(f * den) for f in fr)
    if all(sum(a * b for a, b in zip(h, d)) > 0 for d in degrees):
        return h
    return None


def _solutions(degrees, h, alpha, cap):
    """Exponent vectors of degree ``alpha`` (finite because ``h . d > 0``)."""
    hw = [sum(a * b for a, b in zip(h, d)) for d in degrees]
    target = sum(a * b for a, b in zip(h, alpha))
    if target <= 0:
        return []
    out = []
    for e in weighted_monomials(hw, None, target):
        if all(sum(ei * d[t] for ei, d in zip(e, degrees)) == alpha[t] for t in range(len(alpha))):
            out.append(e)
            if len(out) > cap:
                raise UnboundedDegree(
                    f"S''_{list(alpha)} exceeds the enumeration cap {cap}", alpha=list(alpha), cap=cap
                )
    return out


def toric_aut_structure(spec: ToricGradingSpec, cap: int = DEFAULT_MONOMIAL_CAP) -> ToricAutReport:
    degrees = spec.degrees
    alphas = sorted(set(degrees))
    h = positive_functional(degrees)
    if h is None:
        # some nonzero monomial has degree 0, so S''_alpha is infinite for every alpha in S'
        raise UnboundedDegree("degrees do not lie in an open half-space", alpha=list(alphas[0]))
    per_alpha = []
    weights = []
    for alpha in alphas:
        variables = tuple(i for i, d in enumerate(degrees) if d == alpha)
        comps = [e for e in _solutions(degrees, h, alpha, cap) if sum(e) >= 2]
        if spec.degree_cap is not None:
            comps = [e for e in comps if sum(e) <= spec.degree_cap]
        comps.sort(key=lambda e: (sum(e), tuple(-x for x in e)))
        hist = Counter(sum(e) for e in comps)
        per_alpha.append(AlphaReport(alpha, variables, tuple(comps), dict(hist)))
        for e in comps:
            weights.extend([sum(e) - 1] * len(variables))
    dim_u = sum(a.dim_s1 * a.dim_s2 for a in per_alpha)
    return ToricAutReport(tuple(per_alpha), dim_u, tuple(sorted(weights)), tuple(a.dim_s1 for a in per_alpha))
