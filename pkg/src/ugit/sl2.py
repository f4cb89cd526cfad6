"""SL(2)-block decomposition of a single graded nilpotent.

Each block is a weight-homogeneous Jordan chain ``b_0, ..., b_l`` of ``N``
with ``N b_j = b_{j+1}``; ``b_0`` is the lowest-weight vector.  The block's
character is ``a = 2*w(b_0) + ell*l``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactalg import QMatrix, format_rational, jordan_chains, parse_rational
from .rep_model import GradedUnipotentRep, WeightProfile

WEIGHT_STEPS = ("ell", "1")


@dataclass(frozen=True)
class Sl2Block:
    a: int
    l: int
    chain: tuple  # l+1 vectors in V

    def chain_weight(self, j, ell, step="ell"):
        """Torus weight of ``b_j``; ``step="1"`` gives the unit-step variant."""
        s = ell if step == "ell" else 1
        return Fraction(self.a - ell * self.l + 2 * s * j, 2)

    def lowest_weight(self, ell):
        return Fraction(self.a - ell * self.l, 2)


@dataclass(frozen=True)
class Sl2Decomposition:
    ell: int
    blocks: tuple
    basis_change: QMatrix  # columns: chain vectors, block by block

    @property
    def dim(self):
        return sum(b.l + 1 for b in self.blocks)

    def chain_indices(self):
        out, pos = [], 0
        for b in self.blocks:
            out.append(list(range(pos, pos + b.l + 1)))
            pos += b.l + 1
        return out

    def canonical_form(self):
        """The nilpotent in chain coordinates: ``b_j -> b_{j+1}``."""
        n = self.dim
        rows = [[0] * n for _ in range(n)]
        for ix in self.chain_indices():
            for a, b in zip(ix, ix[1:]):
                rows[b][a] = 1
        return QMatrix(rows, ncols=n)

    def to_chain_coords(self, v):
        return self.basis_change.inverse() @ tuple(v)

    def to_dict(self):
        return {
            "ell": self.ell,
            "blocks": [
                {"a": b.a, "l": b.l, "chain_indices": ix}
                for b, ix in zip(self.blocks, self.chain_indices())
            ],
            "basis_change": [[format_rational(x) for x in row] for row in self.basis_change.rows],
        }

    @classmethod
    def from_dict(cls, data):
        B = QMatrix([[parse_rational(x) for x in row] for row in data["basis_change"]])
        cols = [B.column(j) for j in range(B.ncols)]
        blocks = tuple(
            Sl2Block(int(b["a"]), int(b["l"]), tuple(cols[i] for i in b["chain_indices"]))
            for b in data["blocks"]
        )
        return cls(int(data["ell"]), blocks, B)


def _vector_weight(vec, weights):
    ws = {weights[i] for i, x in enumerate(vec) if x != 0}
    if len(ws) != 1:
        raise ValueError("chain vector is not a weight vector")
    return ws.pop()


def decompose_sl2(rep: GradedUnipotentRep) -> Sl2Decomposition:
    N, ell = rep.single_nilpotent()
    weights = rep.torus_weights
    raw = []
    for chain in jordan_chains(N, grading=weights):
        l = len(chain) - 1
        w0 = _vector_weight(chain[0], weights)
        raw.append(Sl2Block(2 * w0 + ell * l, l, tuple(chain)))
    # stable sort keeps discovery order among equal (a, l)
    blocks = tuple(sorted(raw, key=lambda b: (b.a, b.l)))
    cols = [v for b in blocks for v in b.chain]
    return Sl2Decomposition(ell, blocks, QMatrix.from_columns(cols, nrows=rep.dim_v))


def exceptional_indices(dec: Sl2Decomposition, profile: WeightProfile) -> set:
    return {i for i, b in enumerate(dec.blocks) if b.lowest_weight(dec.ell) == profile.omega0}


def block_multiset(dec: Sl2Decomposition):
    return sorted((b.a, b.l) for b in dec.blocks)
