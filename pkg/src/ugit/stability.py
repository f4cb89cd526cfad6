"""Stability of points of P(V) under U-hat.

For a single nilpotent the stable locus is the set of points flowing to the
minimal weight space under ``t -> 0`` that are not in the U-sweep of
``P(V_min)``.  The sweep test is exact: the components of ``exp(-uN) v``
outside ``V_min`` are polynomials in ``u`` and one asks for a common root.

The torus-side oracle works on ``P^2 x P(V)`` in SL(2)-block coordinates
and evaluates the instability clauses block by block.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Sequence

from .errors import MissingStructureConsts, NParamTooSmall, SsNeqS, UnsupportedDimension
from .exactalg import (
    EpsRational,
    QMatrix,
    QPoly,
    SpanTracker,
    as_rational,
    common_gcd,
    format_rational,
    kernel_basis,
    poly_gcd,
)
from .rep_model import (
    CharacterTwist,
    GradedUnipotentRep,
    WeightProfile,
    adapted_interval,  # noqa: F401  (part of this module's public surface)
    weight_profile,
)
from .sl2 import Sl2Decomposition, decompose_sl2, exceptional_indices

DEFAULT_N_PARAM = 10


def _vec(v):
    return tuple(as_rational(x) for x in v)


def twist_weights(profile: WeightProfile, twist: CharacterTwist, c_power: int | None = None):
    """``c_power * (omega_j - chi/c)`` for each distinct weight.

    With the default ``c_power`` (``c`` for exact twists, 1 for the symbolic
    one) this is ``omega_j*c - chi``.
    """
    if c_power is None:
        c_power = 1 if twist.symbolic else twist.c
    if c_power <= 0:
        raise ValueError("c_power must be positive")
    r = twist.ratio()
    return [(EpsRational.lift(w) - r) * c_power for w in profile.distinct_weights]


# ---------------------------------------------------------------------------
# flow limit and sweep


@dataclass(frozen=True)
class LimitInfo:
    lowest_weight: int
    limit: tuple
    in_x0min: bool


def limit_point(rep: GradedUnipotentRep, v) -> LimitInfo:
    v = _vec(v)
    if not any(v):
        raise ValueError("the zero vector is not a point")
    w = rep.torus_weights
    low = min(w[i] for i, x in enumerate(v) if x)
    limit = tuple(x if w[i] == low else Fraction(0) for i, x in enumerate(v))
    return LimitInfo(low, limit, low == weight_profile(rep).omega0)


def exp_action(N: QMatrix, v, u) -> tuple:
    """``exp(u N) v`` for a rational ``u``."""
    v = _vec(v)
    out = list(v)
    term = v
    k = 0
    while True:
        k += 1
        term = N @ term
        if not any(term):
            break
        scale = Fraction(u) ** k / factorial(k)
        for i, x in enumerate(term):
            out[i] += scale * x
    return tuple(out)


def sweep_polynomials(N: QMatrix, v, outside: Sequence[int]) -> dict:
    """Components of ``exp(-u N) v`` at ``outside`` indices, as polynomials in u."""
    v = _vec(v)
    powers = [v]
    while True:
        nxt = N @ powers[-1]
        if not any(nxt):
            break
        powers.append(nxt)
    out = {}
    for i in outside:
        coeffs = [(-1) ** k * powers[k][i] / factorial(k) for k in range(len(powers))]
        out[i] = QPoly(tuple(coeffs))
    return out


@dataclass(frozen=True)
class SweepResult:
    member: bool
    polynomials: dict  # index -> QPoly, nonzero ones only
    gcd: QPoly
    root: Fraction | None  # a rational parameter with exp(-uN)v in V_min, if one exists

    def to_dict(self):
        return {
            "member": self.member,
            "polynomials": {str(i): str(p) for i, p in sorted(self.polynomials.items())},
            "gcd": str(self.gcd),
            "root": None if self.root is None else format_rational(self.root),
        }


def in_u_sweep(rep: GradedUnipotentRep, v) -> SweepResult:
    if rep.dim_u != 1:
        raise UnsupportedDimension(
            "exact sweep test needs dim U = 1; use sweep_falsify for larger U", dim_u=rep.dim_u
        )
    N, _ = rep.single_nilpotent()
    v = _vec(v)
    if not any(v):
        raise ValueError("the zero vector is not a point")
    vmin = set(weight_profile(rep).v_min_indices)
    outside = [i for i in range(rep.dim_v) if i not in vmin]
    polys = {i: p for i, p in sweep_polynomials(N, v, outside).items() if not p.is_zero()}
    g = common_gcd(list(polys.values()))
    if not polys:
        return SweepResult(True, {}, g, Fraction(0))
    member = g.degree() > 0
    roots = g.rational_roots() if member else []
    return SweepResult(member, polys, g, roots[0] if roots else None)


# ---------------------------------------------------------------------------
# ss = s


@dataclass(frozen=True)
class SsCheck:
    holds: bool
    witness: tuple  # basis of ker N restricted to V_min
    kernel_form: bool
    image_form: bool

    def to_dict(self):
        return {
            "holds": self.holds,
            "kernel_form": self.kernel_form,
            "image_form": self.image_form,
            "witness": [[format_rational(x) for x in w] for w in self.witness],
        }


def _in_column_space(cols: Sequence[tuple], target: tuple) -> bool:
    span = SpanTracker()
    for c in cols:
        span.add({i: x for i, x in enumerate(c) if x})
    return span.contains({i: x for i, x in enumerate(target) if x})


def _unit(n, i):
    return tuple(Fraction(int(j == i)) for j in range(n))


def ss_kernel_form(N: QMatrix, vmin: Sequence[int]):
    """Basis of ``ker N intersected with V_min``."""
    n = N.nrows
    sub = N.submatrix(range(n), vmin)
    out = []
    for kv in kernel_basis(sub):
        v = [Fraction(0)] * n
        for c, x in zip(vmin, kv):
            v[c] = x
        out.append(tuple(v))
    return out


def ss_image_form(N: QMatrix, vmin: Sequence[int]) -> bool:
    """Do the V_min coordinate functionals lie in the image of D on V*?

    D acts on coefficient vectors of linear forms through the transpose of N.
    """
    Dt = N.transpose()
    cols = [Dt.column(j) for j in range(Dt.ncols)]
    return all(_in_column_space(cols, _unit(N.nrows, i)) for i in vmin)


def check_ss_eq_s_dim1(rep: GradedUnipotentRep) -> SsCheck:
    N, _ = rep.single_nilpotent()
    vmin = weight_profile(rep).v_min_indices
    witness = ss_kernel_form(N, vmin)
    kf = not witness
    imf = ss_image_form(N, vmin)
    if kf != imf:
        raise AssertionError("kernel and image formulations of ss=s disagree")
    return SsCheck(kf, tuple(witness), kf, imf)


@dataclass(frozen=True)
class SsStep:
    subalgebra: tuple  # Lie basis indices spanning U'
    xi: int
    ok: bool
    missing: tuple  # V_min indices whose functional is not reached

    def to_dict(self):
        return {
            "subalgebra": list(self.subalgebra),
            "xi": self.xi,
            "ok": self.ok,
            "missing": list(self.missing),
        }


@dataclass(frozen=True)
class GeneralSsReport:
    holds: bool
    chain_steps: tuple
    enumerated_steps: tuple
    enumerated: bool
    subalgebras: tuple

    def to_dict(self):
        return {
            "holds": self.holds,
            "chain_steps": [s.to_dict() for s in self.chain_steps],
            "enumerated": self.enumerated,
            "subalgebras": [list(s) for s in self.subalgebras],
            "enumerated_steps": [s.to_dict() for s in self.enumerated_steps],
        }


def _joint_kernel_forms(rep, indices):
    """Basis of linear forms killed by every D_r, r in indices."""
    n = rep.dim_v
    if not indices:
        return [_unit(n, i) for i in range(n)]
    rows = []
    for r in indices:
        rows.extend(rep.lie_basis[r].op.transpose().rows)
    return kernel_basis(QMatrix(rows, ncols=n))


def _ss_steps(rep, sub, vmin):
    inv = _joint_kernel_forms(rep, sub)
    steps = []
    for xi in range(rep.dim_u):
        if xi in sub:
            continue
        Dt = rep.lie_basis[xi].op.transpose()
        image = [Dt @ f for f in inv]
        missing = tuple(i for i in vmin if not _in_column_space(image, _unit(rep.dim_v, i)))
        steps.append(SsStep(tuple(sub), xi, not missing, missing))
    return steps


def is_subalgebra(rep, subset) -> bool:
    s = set(subset)
    for r in s:
        for t in s:
            if r < t:
                for k, c in rep.bracket_coeffs(r, t).items():
                    if c and k not in s:
                        return False
    return True


def graded_subalgebras(rep) -> list[tuple]:
    """All bracket-closed subsets of the Lie weight basis."""
    out = []
    m = rep.dim_u
    for size in range(m + 1):
        for subset in combinations(range(m), size):
            if is_subalgebra(rep, subset):
                out.append(subset)
    return out


def check_ss_eq_s_general(rep: GradedUnipotentRep, chain: Sequence[Sequence[int]] | None = None):
    """Check the ss=s condition along ``chain`` (lists of Lie basis indices).

    When every grade is distinct, C*-invariant subalgebras are spanned by
    subsets of the weight basis, so all of them are enumerated as well.
    """
    if rep.structure_consts is None:
        raise MissingStructureConsts("ss=s check over subgroups needs structure constants")
    vmin = weight_profile(rep).v_min_indices
    if chain is None:
        chain = [()]
    chain_steps = []
    for sub in chain:
        sub = tuple(sorted(sub))
        if not is_subalgebra(rep, sub):
            raise ValueError(f"{list(sub)} is not closed under the bracket")
        chain_steps.extend(_ss_steps(rep, sub, vmin))
    grades = rep.grades
    enumerated = len(set(grades)) == len(grades)
    subs, enum_steps = [], []
    if enumerated:
        subs = graded_subalgebras(rep)
        for sub in subs:
            enum_steps.extend(_ss_steps(rep, sub, vmin))
    holds = all(s.ok for s in chain_steps) and all(s.ok for s in enum_steps)
    return GeneralSsReport(holds, tuple(chain_steps), tuple(enum_steps), enumerated, tuple(subs))


def require_ss_eq_s(rep):
    if rep.dim_u == 1:
        chk = check_ss_eq_s_dim1(rep)
        if not chk.holds:
            raise SsNeqS(
                "a minimal-weight vector is fixed by U",
                witness=[[format_rational(x) for x in w] for w in chk.witness],
            )
        return
    if rep.structure_consts is None:
        raise MissingStructureConsts("ss=s check over subgroups needs structure constants")
    report = check_ss_eq_s_general(rep)
    if not report.holds:
        raise SsNeqS("ss=s fails for some subalgebra", report=report.to_dict())


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class Certificate:
    kind: str  # NotInX0min | InZmin | InUSweep | StableCert | NoSweepWitness
    data: dict = field(default_factory=dict)


@dataclass(frozen=True)
class StabilityVerdict:
    status: str  # Stable | Unstable | Undecided
    certificate: Certificate

    @property
    def stable(self):
        return self.status == "Stable"

    def to_dict(self):
        return {"status": self.status, "certificate": {"kind": self.certificate.kind, **self.certificate.data}}


def classify_point(rep: GradedUnipotentRep, v, check_ss=True) -> StabilityVerdict:
    if rep.dim_u != 1:
        raise UnsupportedDimension("exact classification needs dim U = 1", dim_u=rep.dim_u)
    if check_ss:
        require_ss_eq_s(rep)
    lim = limit_point(rep, v)
    if not lim.in_x0min:
        return StabilityVerdict("Unstable", Certificate("NotInX0min", {"lowest_weight": lim.lowest_weight}))
    if lim.limit == _vec(v):
        return StabilityVerdict("Unstable", Certificate("InZmin", {}))
    sw = in_u_sweep(rep, v)
    if sw.member:
        return StabilityVerdict("Unstable", Certificate("InUSweep", sw.to_dict()))
    return StabilityVerdict("Stable", Certificate("StableCert", sw.to_dict()))


def verify_verdict(rep: GradedUnipotentRep, v, verdict: StabilityVerdict) -> bool:
    """Re-check a certificate by evaluation, independent of the classifier."""
    v = _vec(v)
    w = rep.torus_weights
    omega0 = min(w)
    kind = verdict.certificate.kind
    N, _ = rep.single_nilpotent()
    outside = [i for i in range(rep.dim_v) if w[i] != omega0]
    if kind == "NotInX0min":
        return all(x == 0 for i, x in enumerate(v) if w[i] == omega0) and verdict.status == "Unstable"
    if kind == "InZmin":
        return all(v[i] == 0 for i in outside) and verdict.status == "Unstable"
    polys = sweep_polynomials(N, v, outside)
    g = QPoly()
    for p in polys.values():
        g = poly_gcd(g, p)
    if kind == "InUSweep":
        root = verdict.certificate.data.get("root")
        if root is not None:
            moved = exp_action(N, v, -Fraction(root))
            return all(moved[i] == 0 for i in outside)
        return g.degree() > 0 and all(divmod(p, g)[1].is_zero() for p in polys.values())
    if kind == "StableCert":
        has_min = any(v[i] for i in range(rep.dim_v) if w[i] == omega0)
        return has_min and not g.is_zero() and g.degree() == 0
    return False


def _thread_count(threads):
    if threads is not None:
        return max(1, int(threads))
    env = os.environ.get("UGIT_THREADS")
    if env:
        return max(1, int(env))
    return min(8, os.cpu_count() or 1)


def classify_points(rep, points, threads=None) -> list[StabilityVerdict]:
    """Batch classification; results follow the input order."""
    require_ss_eq_s(rep)
    n = _thread_count(threads)
    if n == 1 or len(points) < 2:
        return [classify_point(rep, p, check_ss=False) for p in points]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(lambda p: classify_point(rep, p, check_ss=False), points))


# ---------------------------------------------------------------------------
# several nilpotents: one-sided search


@dataclass(frozen=True)
class FalsificationResult:
    in_x0min: bool
    sweep_witness: dict | None  # direction and parameter moving v into V_min
    trials: int

    @property
    def verdict(self):
        if not self.in_x0min or self.sweep_witness is not None:
            return "Unstable"
        return "Undecided"

    def to_dict(self):
        return {
            "verdict": self.verdict,
            "in_x0min": self.in_x0min,
            "sweep_witness": self.sweep_witness,
            "trials": self.trials,
            "note": "one-sided: absence of a witness does not prove stability",
        }


def sweep_falsify(rep: GradedUnipotentRep, v, trials=64, rng=None, bound=5) -> FalsificationResult:
    """Search one-parameter subgroups ``exp(u*xi)`` for a sweep witness.

    Each basis direction is tried first, then random rational combinations.
    A witness proves instability; failing to find one proves nothing.
    """
    rng = rng or random.Random(0)
    lim = limit_point(rep, v)
    if not lim.in_x0min:
        return FalsificationResult(False, None, 0)
    vmin = set(weight_profile(rep).v_min_indices)
    outside = [i for i in range(rep.dim_v) if i not in vmin]
    ops = rep.ops
    directions = [[int(r == s) for s in range(len(ops))] for r in range(len(ops))]
    while len(directions) < trials:
        directions.append([rng.randint(-bound, bound) for _ in ops])
    for count, coeffs in enumerate(directions[:max(trials, len(ops))], 1):
        if not any(coeffs):
            continue
        xi = QMatrix.zeros(rep.dim_v, rep.dim_v)
        for c, op in zip(coeffs, ops):
            xi = xi + op.scale(c)
        polys = [p for p in sweep_polynomials(xi, v, outside).values() if not p.is_zero()]
        if not polys:
            return FalsificationResult(True, {"direction": coeffs, "u": "0"}, count)
        g = common_gcd(polys)
        if g.degree() > 0:
            roots = g.rational_roots()
            return FalsificationResult(
                True,
                {"direction": coeffs, "gcd": str(g), "u": format_rational(roots[0]) if roots else None},
                count,
            )
    return FalsificationResult(True, None, len(directions))


# ---------------------------------------------------------------------------
# fixed-point weight table and the torus clauses


@dataclass(frozen=True)
class WeightTableRow:
    fixed_point: str  # P0 | P1 | P2
    block: int
    position: int
    weight: tuple  # (EpsRational, EpsRational)

    def to_dict(self):
        return {
            "fixed_point": self.fixed_point,
            "block": self.block,
            "position": self.position,
            "weight": [str(self.weight[0]), str(self.weight[1])],
        }


def check_n_param(dec: Sl2Decomposition, profile: WeightProfile, n_param: int):
    bound = max(b.a - 2 * profile.omega0 for b in dec.blocks)
    if n_param <= bound:
        raise NParamTooSmall(f"N = {n_param} must exceed max(a_i - 2*omega_0) = {bound}", bound=bound)


def hm_table(dec: Sl2Decomposition, profile: WeightProfile, twist: CharacterTwist, n_param: int = DEFAULT_N_PARAM):
    check_n_param(dec, profile, n_param)
    two_eps = (twist.ratio() - profile.omega0) * 2
    ell = dec.ell
    base = []
    for i, b in enumerate(dec.blocks):
        for j in range(b.l + 1):
            x = EpsRational.lift(2 * j - b.l)
            y = EpsRational.lift(b.a - 2 * profile.omega0) - two_eps
            base.append((i, j, x, y))
    shifts = {"P0": (0, 0), "P1": (n_param, -ell * n_param), "P2": (-n_param, -ell * n_param)}
    rows = []
    for fp, (dx, dy) in shifts.items():
        for i, j, x, y in base:
            rows.append(WeightTableRow(fp, i, j, (x + dx, y + dy)))
    return rows


@dataclass(frozen=True)
class HMPoint:
    """``([w0:w1:w2], [v])`` with ``v[i][j]`` the coefficient of
    ``e1**j * e2**(l_i - j)`` in block ``i``."""

    w: tuple
    v: tuple

    def __post_init__(self):
        object.__setattr__(self, "w", _vec(self.w))
        object.__setattr__(self, "v", tuple(_vec(b) for b in self.v))
        if not any(self.w) or not any(any(b) for b in self.v):
            raise ValueError("homogeneous coordinates must not all vanish")


def to_hm_point(dec: Sl2Decomposition, v, w=(1, 1, 0)) -> HMPoint:
    c = dec.to_chain_coords(_vec(v))
    blocks, pos = [], 0
    for b in dec.blocks:
        # b_j = N^j b_0 corresponds to l!/(l-j)! * e1^j e2^(l-j)
        blocks.append(tuple(c[pos + j] * factorial(b.l) / factorial(b.l - j) for j in range(b.l + 1)))
        pos += b.l + 1
    return HMPoint(tuple(w), tuple(blocks))


def _binary_power(lin, k):
    """Coefficients (indexed by e1-power) of a binary linear form to the k-th power."""
    out = [Fraction(1)]
    for _ in range(k):
        nxt = [Fraction(0)] * (len(out) + 1)
        for i, x in enumerate(out):
            nxt[i] += x * lin[0]  # e2 part
            nxt[i + 1] += x * lin[1]  # e1 part
        out = nxt
    return out


def act_sl2(g, p: HMPoint) -> HMPoint:
    """Action of ``g`` in SL(2) on ``P^2 x P(V)`` (trivially on ``w0``)."""
    (g11, g12), (g21, g22) = [[as_rational(x) for x in row] for row in g]
    w0, w1, w2 = p.w
    w = (w0, g11 * w1 + g12 * w2, g21 * w1 + g22 * w2)
    ge1 = (g21, g11)  # g e1 = g11 e1 + g21 e2, stored as (e2, e1) coefficients
    ge2 = (g22, g12)
    blocks = []
    for s in p.v:
        l = len(s) - 1
        new = [Fraction(0)] * (l + 1)
        for j, x in enumerate(s):
            if not x:
                continue
            a = _binary_power(ge1, j)
            b = _binary_power(ge2, l - j)
            for p1, y in enumerate(a):
                if y:
                    for p2, z in enumerate(b):
                        new[p1 + p2] += x * y * z
        blocks.append(tuple(new))
    return HMPoint(w, tuple(blocks))


@dataclass(frozen=True)
class TorusVerdict:
    stable: bool
    case: str

    def to_dict(self):
        return {"status": "TorusStable" if self.stable else "Unstable", "case": self.case}


def hm_classify_torus(p: HMPoint, dec: Sl2Decomposition, profile: WeightProfile, twist=None, n_param=DEFAULT_N_PARAM):
    """Torus (semi)stability via the block-by-block instability clauses.

    The clauses depend only on which coordinates vanish; ``twist`` and
    ``n_param`` are accepted for symmetry with :func:`hm_table` and the
    ``n_param`` guard is enforced.
    """
    check_n_param(dec, profile, n_param)
    exc = exceptional_indices(dec, profile)
    w0, w1, w2 = p.w
    if w0 == 0 or (w1 == 0 and w2 == 0):
        return TorusVerdict(False, "outside (C^2 - 0) x P(V)")
    support = [(i, j) for i, s in enumerate(p.v) for j, x in enumerate(s) if x]
    lengths = [b.l for b in dec.blocks]
    all_low = all(i in exc and j == 0 for i, j in support)
    all_high = all(i in exc and j == lengths[i] for i, j in support)
    if w1 != 0 and w2 != 0:
        if all_low:
            return TorusVerdict(False, "w0w1w2!=0: support in exceptional j=0")
        if all_high:
            return TorusVerdict(False, "w0w1w2!=0: support in exceptional j=l")
        return TorusVerdict(True, "w0w1w2!=0")
    if w2 == 0:
        if all(p.v[i][0] == 0 for i in exc):
            return TorusVerdict(False, "w2=0: exceptional v_i0 all zero")
        if all_low:
            return TorusVerdict(False, "w2=0: support in exceptional j=0")
        return TorusVerdict(True, "w2=0")
    if all(p.v[i][lengths[i]] == 0 for i in exc):
        return TorusVerdict(False, "w1=0: exceptional v_il all zero")
    if all_high:
        return TorusVerdict(False, "w1=0: support in exceptional j=l")
    return TorusVerdict(True, "w1=0")


def random_sl2(rng: random.Random, bound=4, steps=3):
    """Random element of SL(2, Q) as a product of elementary and diagonal factors."""
    g = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]

    def mul(a, b):
        return [
            [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
            [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
        ]

    for _ in range(steps):
        s = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        t = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        d = Fraction(rng.choice([1, 2, 3]), rng.choice([1, 2, 3])) * rng.choice([1, -1])
        g = mul(g, [[1, s], [0, 1]])
        g = mul(g, [[1, 0], [t, 1]])
        g = mul(g, [[d, 0], [0, 1 / d]])
    return g


def cross_validate(rep: GradedUnipotentRep, v, samples: Sequence, twist=None, n_param=None) -> dict:
    """Compare the U-hat verdict with torus verdicts of translates ``g.([1:1:0],[v])``."""
    if rep.dim_u != 1:
        raise UnsupportedDimension("cross validation needs dim U = 1", dim_u=rep.dim_u)
    profile = weight_profile(rep)
    dec = decompose_sl2(rep)
    if n_param is None:
        n_param = max(DEFAULT_N_PARAM, max(b.a - 2 * profile.omega0 for b in dec.blocks) + 1)
    verdict = classify_point(rep, v)
    p = to_hm_point(dec, v)
    results = [hm_classify_torus(act_sl2(g, p), dec, profile, twist, n_param) for g in samples]
    report = {"verdict": verdict.to_dict(), "samples": len(samples)}
    if verdict.stable:
        bad = [k for k, r in enumerate(results) if not r.stable]
        report["all_torus_stable"] = not bad
        report["violations"] = bad
        return report
    found = [k for k, r in enumerate(results) if not r.stable]
    report["destabilizer_found"] = bool(found)
    report["destabilizing_samples"] = found
    root = verdict.certificate.data.get("root") if verdict.certificate.kind == "InUSweep" else None
    if root is not None:
        # exp(-u0 N) moves v into V_min; as an SL(2) element this is [[1, -u0], [0, 1]]
        u0 = Fraction(root)
        g = [[1, -u0], [0, 1]]
        r = hm_classify_torus(act_sl2(g, p), dec, profile, twist, n_param)
        report["witness_g"] = [[format_rational(x) for x in row] for row in g]
        report["witness_destabilizes"] = not r.stable
    return report
