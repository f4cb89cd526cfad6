"""Command line interface.

Every subcommand prints a JSON report (or CSV for tables) to stdout or to
``-o``.  Exit status: 0 on success, 1 on a domain error (the report then
carries an ``error`` object), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import random
import sys
from pathlib import Path

from . import __version__
from .errors import UgitError
from .exactalg import format_rational, parse_rational
from .invariants import generator_probe, localize_at_min_section
from .jets import demailly_semple_dims, jet_rep
from .rep_model import CharacterTwist, require_valid, validate_rep, weight_profile
from .serialize import (
    dumps,
    input_document,
    load_document,
    make_report,
    points_from_json,
    rep_from_json,
    twist_from_json,
)
from .sl2 import decompose_sl2, exceptional_indices
from .stability import (
    DEFAULT_N_PARAM,
    adapted_interval,
    check_ss_eq_s_dim1,
    check_ss_eq_s_general,
    classify_points,
    cross_validate,
    hm_table,
    random_sl2,
    sweep_falsify,
    twist_weights,
)
from .svg import emit_svg
from .toric import ToricGradingSpec, toric_aut_structure


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers


def _load(args):
    if not args.rep:
        raise UsageError("--rep is required")
    try:
        text = Path(args.rep).read_text()
    except OSError as e:
        raise UgitError(f"cannot read {args.rep}: {e.strerror}") from None
    doc = load_document(text)
    return doc, rep_from_json(doc["rep"])


def _parse_point(text):
    try:
        return tuple(parse_rational(x) for x in text.split(","))
    except ValueError as e:
        raise UsageError(f"bad point {text!r}: {e}") from None


def _points(args, doc, rep):
    pts = [_parse_point(p) for p in args.point] if args.point else points_from_json(doc.get("points"))
    if not pts:
        raise UsageError("no points given (use --point or a points list in the input)")
    for p in pts:
        if len(p) != rep.dim_v:
            raise UsageError(f"point {','.join(map(format_rational, p))} has {len(p)} coordinates, need {rep.dim_v}")
        if not any(p):
            raise UsageError("the zero vector is not a point")
    return pts


def _twist(args, doc, profile, required_exact=False):
    if getattr(args, "chi", None) is not None or getattr(args, "c", None) is not None:
        if args.chi is None or args.c is None:
            raise UsageError("--chi and --c go together")
        return CharacterTwist.exact(args.chi, args.c, profile, override=getattr(args, "override", False))
    if getattr(args, "symbolic_eps", False):
        if required_exact:
            raise UsageError("this command needs an exact --chi/--c")
        return CharacterTwist.well_adapted(profile)
    tw = twist_from_json(doc.get("twist"), profile)
    if tw is None:
        if required_exact:
            raise UsageError("this command needs --chi and --c")
        return CharacterTwist.well_adapted(profile)
    if required_exact and tw.symbolic:
        raise UsageError("this command needs an exact --chi/--c")
    return tw


def _probe(doc, key, default=None):
    return doc.get("probe", {}).get(key, default)


def _n_param(args, doc):
    if args.N is not None:
        return args.N
    return _probe(doc, "n_param", DEFAULT_N_PARAM)


def _echo(args, doc=None):
    skip = {"func", "rep"}
    out = {k: v for k, v in sorted(vars(args).items()) if k not in skip and v not in (None, False, [])}
    if doc is not None:
        out["document"] = doc
    return out


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args):
    doc, rep = _load(args)
    diags = validate_rep(rep)
    result = {"valid": not diags, "diagnostics": [d.to_dict() for d in diags]}
    return (0 if not diags else 1), make_report("validate", _echo(args, doc), result)


def cmd_profile(args):
    doc, rep = _load(args)
    require_valid(rep)
    prof = weight_profile(rep)
    result = prof.to_dict()
    if prof.h >= 1:
        lo, hi = adapted_interval(prof)
        result["adapted_interval"] = [lo, hi]
    return 0, make_report("profile", _echo(args, doc), result)


def cmd_decompose(args):
    doc, rep = _load(args)
    require_valid(rep)
    dec = decompose_sl2(rep)
    prof = weight_profile(rep)
    result = dec.to_dict()
    exc = exceptional_indices(dec, prof)
    w = rep.torus_weights
    for i, (blk, entry) in enumerate(zip(dec.blocks, result["blocks"])):
        entry["exceptional"] = i in exc
        entry["chain_weights"] = [format_rational(blk.chain_weight(j, dec.ell, args.weight_step)) for j in range(blk.l + 1)]
        entry["measured_weights"] = [
            next(w[t] for t, x in enumerate(vec) if x) for vec in blk.chain
        ]
    result["weight_step"] = args.weight_step
    return 0, make_report("decompose", _echo(args, doc), result)


def _parse_chain(text):
    out = []
    for part in text.split(";"):
        part = part.strip()
        out.append([int(x) for x in part.split(",")] if part else [])
    return out


def cmd_ss_check(args):
    doc, rep = _load(args)
    require_valid(rep)
    chain = _parse_chain(args.chain) if args.chain else doc.get("chain")
    if rep.dim_u == 1 and chain is None:
        chk = check_ss_eq_s_dim1(rep)
        result = {"mode": "dim1", **chk.to_dict()}
    else:
        rep_sc = rep
        if rep.structure_consts is None and rep.dim_u == 1:
            rep_sc = type(rep)(rep.torus_weights, rep.lie_basis, {}, rep.labels, rep.name)
        report = check_ss_eq_s_general(rep_sc, chain)
        result = {"mode": "general", **report.to_dict()}
    return 0, make_report("ss-check", _echo(args, doc), result)


def cmd_stability(args):
    doc, rep = _load(args)
    require_valid(rep)
    pts = _points(args, doc, rep)
    if rep.dim_u == 1:
        verdicts = classify_points(rep, pts, threads=args.threads)
        results = [
            {"point": [format_rational(x) for x in p], **v.to_dict()} for p, v in zip(pts, verdicts)
        ]
        mode = "exact"
    else:
        rng = random.Random(args.seed)
        results = [
            {"point": [format_rational(x) for x in p], **sweep_falsify(rep, p, args.trials, rng).to_dict()}
            for p in pts
        ]
        mode = "monte-carlo"
    return 0, make_report("stability", _echo(args, doc), {"mode": mode, "verdicts": results})


def _table_rows(args, doc, rep):
    require_valid(rep)
    prof = weight_profile(rep)
    tw = _twist(args, doc, prof)
    dec = decompose_sl2(rep)
    n_param = _n_param(args, doc)
    return dec, prof, tw, n_param, hm_table(dec, prof, tw, n_param)


def cmd_table(args):
    doc, rep = _load(args)
    _, _, _, _, rows = _table_rows(args, doc, rep)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["fixed_point", "block", "j", "x", "y"])
    for r in rows:
        w.writerow([r.fixed_point, r.block, r.position, str(r.weight[0]), str(r.weight[1])])
    return 0, buf.getvalue()


def cmd_plot(args):
    doc, rep = _load(args)
    dec, _, tw, n_param, rows = _table_rows(args, doc, rep)
    if not args.output:
        raise UsageError("plot needs -o FILE")
    emit_svg(rows, dec.ell, n_param, args.output)
    result = {"svg": str(args.output), "dots": len(rows), "twist": str(tw.ratio())}
    return 0, make_report("plot", _echo(args, doc), result), True


def cmd_invariants(args):
    doc, rep = _load(args)
    require_valid(rep)
    prof = weight_profile(rep)
    tw = _twist(args, doc, prof, required_exact=True)
    K = args.K if args.K is not None else _probe(doc, "K", 4)
    ring = generator_probe(rep, tw, K, monomial_cap=args.monomial_cap)
    result = ring.to_dict()
    result["twisted_weights"] = [str(x) for x in twist_weights(prof, tw)]
    return 0, make_report("invariants", _echo(args, doc), result)


def cmd_localize(args):
    doc, rep = _load(args)
    require_valid(rep)
    sigma = args.sigma or _probe(doc, "sigma")
    if not sigma:
        raise UsageError("localize needs --sigma")
    D = args.D if args.D is not None else _probe(doc, "degree_bound", 4)
    loc = localize_at_min_section(rep, sigma, D, monomial_cap=args.monomial_cap)
    return 0, make_report("localize", _echo(args, doc), loc.to_dict(rep.labels))


def cmd_jets(args):
    if args.action == "emit-rep":
        rep = jet_rep(args.n, args.k, args.p)
        doc = input_document(rep)
        return 0, dumps(doc)
    rows = demailly_semple_dims(args.n, args.k, args.m_max, args.p, monomial_cap=args.monomial_cap)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["m", "dim"])
    w.writerows(rows)
    return 0, buf.getvalue()


def cmd_toric(args):
    try:
        spec = ToricGradingSpec.parse(args.degrees, args.degree_cap)
    except ValueError as e:
        raise UsageError(f"bad --degrees: {e}") from None
    report = toric_aut_structure(spec)
    return 0, make_report("toric", _echo(args), report.to_dict())


def cmd_cross_validate(args):
    doc, rep = _load(args)
    require_valid(rep)
    pts = _points(args, doc, rep)
    rng = random.Random(args.seed)
    samples = [[[1, 0], [0, 1]]] + [random_sl2(rng) for _ in range(max(args.samples - 1, 0))]
    results = []
    for p in pts:
        rep_out = cross_validate(rep, p, samples, n_param=args.N)
        results.append({"point": [format_rational(x) for x in p], **rep_out})
    return 0, make_report("cross-validate", _echo(args, doc), {"reports": results})


# ---------------------------------------------------------------------------
# parser


def build_parser():
    p = argparse.ArgumentParser(prog="ugit", description="Exact stability and invariant computations.")
    p.add_argument("--version", action="version", version=f"ugit {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json")

    def with_rep(name, func, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.add_argument("--rep", metavar="FILE")
        sp.add_argument("-o", "--output", metavar="FILE")
        sp.set_defaults(func=func)
        return sp

    def twist_flags(sp):
        sp.add_argument("--chi", type=int)
        sp.add_argument("--c", type=int)
        sp.add_argument("--symbolic-eps", action="store_true")
        sp.add_argument("--override", action="store_true", help="allow chi/c outside the adapted interval")

    with_rep("validate", cmd_validate, "check representation invariants")
    with_rep("profile", cmd_profile, "weight profile and adapted interval")
    sp = with_rep("decompose", cmd_decompose, "SL(2)-block decomposition")
    sp.add_argument("--weight-step", choices=["ell", "1"], default="ell")
    sp = with_rep("ss-check", cmd_ss_check, "semistable = stable condition")
    sp.add_argument("--chain", help='subalgebra chain as index lists, e.g. ";1;0,1"')
    sp = with_rep("stability", cmd_stability, "classify points")
    sp.add_argument("--point", action="append", help="comma separated coordinates")
    sp.add_argument("--threads", type=int)
    sp.add_argument("--trials", type=int, default=64)
    sp.add_argument("--seed", type=int, default=0)
    sp = with_rep("table", cmd_table, "fixed point weight table as CSV")
    twist_flags(sp)
    sp.add_argument("-N", type=int)
    sp = with_rep("plot", cmd_plot, "SVG of the weight table")
    twist_flags(sp)
    sp.add_argument("-N", type=int)
    sp = with_rep("invariants", cmd_invariants, "twisted invariant ring through level K")
    twist_flags(sp)
    sp.add_argument("--K", type=int)
    sp.add_argument("--monomial-cap", type=int)
    sp = with_rep("localize", cmd_localize, "localisation at a minimal-weight section")
    sp.add_argument("--sigma")
    sp.add_argument("-D", type=int)
    sp.add_argument("--monomial-cap", type=int)
    sp = with_rep("cross-validate", cmd_cross_validate, "compare with torus verdicts of SL(2) translates")
    sp.add_argument("--point", action="append")
    sp.add_argument("--samples", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-N", type=int)

    sp = sub.add_parser("jets", help="jet group representations", parents=[common])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--p", type=int, default=1)
    sp.add_argument("--monomial-cap", type=int)
    sp.add_argument("-o", "--output", metavar="FILE")
    sp.set_defaults(func=cmd_jets)
    acts = sp.add_subparsers(dest="action", required=True)
    acts.add_parser("emit-rep")
    ds = acts.add_parser("ds-dims")
    ds.add_argument("--m-max", type=int, default=6)

    sp = sub.add_parser("toric", help="unipotent automorphisms of a graded Cox ring", parents=[common])
    sp.add_argument("--degrees", required=True, help='e.g. "1;1;2" or "1,0;0,1;1,1"')
    sp.add_argument("--degree-cap", type=int)
    sp.add_argument("-o", "--output", metavar="FILE")
    sp.set_defaults(func=cmd_toric)
    return p


def render_text(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(
            (f"{pad}-\n" + render_text(x, indent + 1)) if isinstance(x, (dict, list)) else f"{pad}- {x}" for x in obj
        )
    return f"{pad}{obj}"


def run(argv=None):
    """Run the CLI; returns ``(exit_code, output_text)`` without writing anything."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0), ""
    try:
        out = args.func(args)
    except UsageError as e:
        return 2, f"ugit: error: {e}\n"
    except UgitError as e:
        return 1, dumps(make_report(args.command, _echo(args), {"error": e.to_dict()}))
    except (ValueError, ArithmeticError) as e:
        err = {"kind": type(e).__name__, "message": str(e)}
        return 1, dumps(make_report(args.command, _echo(args), {"error": err}))
    code, payload = out[0], out[1]
    written = len(out) > 2
    if isinstance(payload, dict):
        text = render_text(payload) + "\n" if args.format == "text" else dumps(payload)
    else:
        text = payload
    if getattr(args, "output", None) and not written:
        Path(args.output).write_text(text)
        return code, ""
    return code, text


def main(argv=None):
    code, text = run(argv)
    if text:
        stream = sys.stderr if code == 2 else sys.stdout
        stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
