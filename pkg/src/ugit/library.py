"""Small named representations used in examples and tests."""

from __future__ import annotations

from .rep_model import GradedUnipotentRep, make_rep


def j22() -> GradedUnipotentRep:
    """2-jets in two variables: basis e1, e2 (weight 1), f1, f2 (weight 2), N e_i = f_i."""
    op = [[0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0]]
    return make_rep([1, 1, 2, 2], [op], [1], labels=["x1", "x2", "y1", "y2"], name="J22")


def r1() -> GradedUnipotentRep:
    """Weights (1, -1), grade 2, N e2 = e1."""
    return make_rep([1, -1], [[[0, 1], [0, 0]]], [2], labels=["x1", "x2"], name="R1")


def trivial(weights) -> GradedUnipotentRep:
    """No nilpotents."""
    return make_rep(list(weights), name="trivial")


LIBRARY = {"j22": j22, "r1": r1}
