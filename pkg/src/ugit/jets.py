"""Reparametrisation groups of jets and their linear representations.

A ``k``-jet ``f`` of a map ``(C^p, 0) -> C^n`` is stored as its Taylor
coefficients ``c_beta`` for multi-indices ``1 <= |beta| <= k``.  A jet
``phi`` of a biholomorphism of ``(C^p, 0)`` acts by substitution and, in
row form, ``c' = c M(phi)`` where ``M(phi)[beta, gamma]`` is the coefficient
of ``u^gamma`` in ``phi(u)^beta`` truncated at degree ``k``.  With this
convention ``M(phi o psi) = M(phi) M(psi)``.  On column vectors in ``V``
the action is ``M(phi)^T`` tensored with the identity on the ``n`` target
coordinates.

Multi-indices within one degree follow :func:`ugit.polynomials.monomials`
(lex-descending), and a block ``Phi_i`` has one column per multi-index of
degree ``i`` holding the coefficient of that monomial (no symmetrisation).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import MonomialCapExceeded, ShapeMismatch
from .exactalg import QMatrix, as_rational
from .invariants import slice_kernel
from .polynomials import DEFAULT_MONOMIAL_CAP, monomials, weighted_monomials
from .rep_model import GradedUnipotentRep, LieElement, structure_constants_from_ops


@dataclass(frozen=True)
class JetSpec:
    n: int
    k: int
    p: int = 1

    def __post_init__(self):
        if min(self.n, self.k, self.p) < 1:
            raise ValueError("n, k and p must be at least 1")

    @property
    def dim(self):
        return self.n * (comb(self.k + self.p, self.k) - 1)


@dataclass(frozen=True)
class JetGroupElement:
    """``alphas`` for p = 1, or ``blocks`` (Phi_1..Phi_k) for general p."""

    alphas: tuple | None = None
    blocks: tuple | None = None

    def __post_init__(self):
        if self.alphas is not None:
            if self.alphas[0] == 0:
                raise ValueError("alpha_1 must be nonzero")
        elif self.blocks is not None:
            first = QMatrix(self.blocks[0]) if not isinstance(self.blocks[0], QMatrix) else self.blocks[0]
            if first.det() == 0:
                raise ValueError("Phi_1 must be invertible")
        else:
            raise ValueError("give alphas or blocks")


def _series_mul(a, b, k):
    """Product of truncated power series (index = power of t, entries any ring)."""
    out = [0] * (k + 1)
    for i, x in enumerate(a):
        if i > k or not _nonzero(x):
            continue
        for j, y in enumerate(b):
            if i + j > k:
                break
            out[i + j] = out[i + j] + x * y
    return out


def _nonzero(x):
    try:
        return x != 0
    except TypeError:
        return True


def gk_entries(k: int, alphas: Sequence):
    """Entries of the k x k matrix as nested lists over any commutative ring.

    Entry ``(i, j)`` (1-based) is the sum over ``s_1 + ... + s_i = j`` of
    ``alpha_{s_1} ... alpha_{s_i}``, i.e. the ``t^j`` coefficient of ``phi(t)^i``.
    """
    if len(alphas) != k:
        raise ShapeMismatch(f"need {k} coefficients, got {len(alphas)}")
    phi = [0] + list(alphas)
    power = [1] + [0] * k
    rows = []
    for _ in range(k):
        power = _series_mul(power, phi, k)
        rows.append(power[1:])
    return rows


def gk_matrix(k: int, alpha) -> QMatrix:
    alphas = alpha.alphas if isinstance(alpha, JetGroupElement) else alpha
    return QMatrix(gk_entries(k, [as_rational(a) for a in alphas]))


def compose_jets(phi, psi, k: int) -> JetGroupElement:
    """``phi(psi(t))`` modulo ``t^(k+1)``."""
    a = phi.alphas if isinstance(phi, JetGroupElement) else tuple(phi)
    b = psi.alphas if isinstance(psi, JetGroupElement) else tuple(psi)
    a = (list(a) + [0] * k)[:k]
    b = [0] + (list(b) + [0] * k)[:k]
    out = [0] * (k + 1)
    power = [1] + [0] * k
    for i in range(1, k + 1):
        power = _series_mul(power, b, k)
        for j in range(k + 1):
            out[j] = out[j] + a[i - 1] * power[j]
    return JetGroupElement(tuple(out[1:]))


# ---------------------------------------------------------------------------
# several source variables


def jet_indices(p: int, k: int) -> list[tuple]:
    """Multi-indices of degree 1..k, degree-major."""
    return [beta for d in range(1, k + 1) for beta in monomials(p, d)]


def _mpoly_mul(a: dict, b: dict, k: int) -> dict:
    out: dict = {}
    for e1, x in a.items():
        for e2, y in b.items():
            e = tuple(s + t for s, t in zip(e1, e2))
            if sum(e) <= k:
                out[e] = out.get(e, 0) + x * y
    return out


def _check_blocks(k, p, blocks):
    if len(blocks) != k:
        raise ShapeMismatch(f"need {k} blocks, got {len(blocks)}")
    out = []
    for i, blk in enumerate(blocks, 1):
        rows = blk.tolist() if isinstance(blk, QMatrix) else [list(r) for r in blk]
        width = comb(p + i - 1, i)
        if len(rows) != p or any(len(r) != width for r in rows):
            raise ShapeMismatch(f"Phi_{i} must be {p} x {width}")
        out.append(rows)
    return out


def gkp_entries(k: int, p: int, blocks):
    """Nested-list matrix ``M[beta][gamma]`` of the substitution action."""
    blocks = _check_blocks(k, p, blocks)
    phi = []
    for r in range(p):
        comp: dict = {}
        for i, blk in enumerate(blocks, 1):
            for col, gamma in enumerate(monomials(p, i)):
                x = blk[r][col]
                if _nonzero(x):
                    comp[gamma] = comp.get(gamma, 0) + x
        phi.append(comp)
    idx = jet_indices(p, k)
    pos = {b: j for j, b in enumerate(idx)}
    rows = []
    for beta in idx:
        acc = {(0,) * p: 1}
        for r, e in enumerate(beta):
            for _ in range(e):
                acc = _mpoly_mul(acc, phi[r], k)
        row = [0] * len(idx)
        for gamma, x in acc.items():
            if sum(gamma) >= 1:
                row[pos[gamma]] = row[pos[gamma]] + x
        rows.append(row)
    return rows


def gkp_matrix(k: int, p: int, blocks) -> QMatrix:
    rows = gkp_entries(k, p, [[[as_rational(x) for x in r] for r in _rows(b)] for b in blocks])
    return QMatrix(rows)


def _rows(b):
    return b.tolist() if isinstance(b, QMatrix) else b


# ---------------------------------------------------------------------------
# representations


def jet_rep(n: int, k: int, p: int = 1) -> GradedUnipotentRep:
    """Representation of the unipotent radical extended by the central C*.

    Basis index ``(beta, c)`` sits at ``pos(beta)*n + c`` with torus weight
    ``|beta|``.  Lie basis: ``d/d Phi_i[r, gamma]`` at the identity for
    ``2 <= i <= k``, of grade ``i - 1``; it sends row ``beta`` to column
    ``beta - e_r + gamma`` with coefficient ``beta_r``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    idx = jet_indices(p, k)
    pos = {b: j for j, b in enumerate(idx)}
    dim = n * len(idx)
    weights = [sum(b) for b in idx for _ in range(n)]
    basis = []
    for i in range(2, k + 1):
        for r in range(p):
            for gamma in monomials(p, i):
                rows = [[Fraction(0)] * dim for _ in range(dim)]
                for beta in idx:
                    if beta[r] == 0:
                        continue
                    tgt = tuple(b - int(s == r) + g for s, (b, g) in enumerate(zip(beta, gamma)))
                    if sum(tgt) > k:
                        continue
                    for c in range(n):
                        rows[pos[tgt] * n + c][pos[beta] * n + c] = Fraction(beta[r])
                basis.append(LieElement(i - 1, QMatrix(rows, ncols=dim)))
    consts = structure_constants_from_ops([e.op for e in basis])
    if p == 1:
        labels = [f"u{sum(b)}_{c + 1}" for b in idx for c in range(n)]
    else:
        labels = ["u" + "".join(map(str, b)) + f"_{c + 1}" for b in idx for c in range(n)]
    return GradedUnipotentRep(tuple(weights), tuple(basis), consts, tuple(labels), f"jet({n},{k},{p})")


def demailly_semple_dims(n: int, k: int, m_max: int, p: int = 1, monomial_cap: int | None = None):
    """``[(m, dim)]``: invariants of weighted degree ``m`` for ``m = 1..m_max``.

    Derivations preserve polynomial degree, so each weighted slice splits
    into ``(degree, weight)`` slices handled separately.
    """
    cap = DEFAULT_MONOMIAL_CAP if monomial_cap is None else monomial_cap
    rep = jet_rep(n, k, p)
    out = []
    for m in range(1, m_max + 1):
        total = 0
        count = 0
        for d in range(1, m + 1):
            src = weighted_monomials(rep.torus_weights, d, m)
            count += len(src)
            if count > cap:
                raise MonomialCapExceeded(
                    f"weighted degree {m} needs more than {cap} monomials", cap=cap, m=m
                )
            if src:
                total += len(slice_kernel(rep, d, m, src))
        out.append((m, total))
    return out
