"""JSON input documents and reports.

Rationals are written as ``"p/q"`` strings (``"p"`` when integral); inputs
also accept plain integers.  Structure constants are a list of
``[r, s, t, c]`` entries meaning ``[N_r, N_s]`` has coefficient ``c`` on
``N_t``.
"""

from __future__ import annotations

import json
from fractions import Fraction

import jsonschema

from . import __version__
from .errors import SchemaError
from .exactalg import QMatrix, format_rational, parse_rational
from .rep_model import CharacterTwist, GradedUnipotentRep, LieElement

FORMAT_VERSION = "1"

_RATIONAL = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^\s*[+-]?\d+(\s*/\s*[1-9]\d*)?\s*$"},
    ]
}

REP_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["dim", "weights"],
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "weights": {"type": "array", "items": {"type": "integer"}},
        "lie_basis": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["grade", "op"],
                "properties": {
                    "grade": {"type": "integer"},
                    "op": {"type": "array", "items": {"type": "array", "items": _RATIONAL}},
                },
            },
        },
        "structure_consts": {
            "type": "array",
            "items": {
                "type": "array",
                "prefixItems": [
                    {"type": "integer", "minimum": 0},
                    {"type": "integer", "minimum": 0},
                    {"type": "integer", "minimum": 0},
                    _RATIONAL,
                ],
                "minItems": 4,
                "maxItems": 4,
            },
        },
        "labels": {"type": "array", "items": {"type": "string"}},
        "name": {"type": "string"},
    },
}

TWIST_SCHEMA = {
    "oneOf": [
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["chi", "c"],
            "properties": {
                "chi": {"type": "integer"},
                "c": {"type": "integer", "minimum": 1},
                "override": {"type": "boolean"},
            },
        },
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["symbolic"],
            "properties": {"symbolic": {"const": True}},
        },
    ]
}

INPUT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "required": ["version", "rep"],
    "properties": {
        "version": {"const": FORMAT_VERSION},
        "rep": REP_SCHEMA,
        "twist": TWIST_SCHEMA,
        "points": {"type": "array", "items": {"type": "array", "items": _RATIONAL, "minItems": 1}},
        "probe": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "K": {"type": "integer", "minimum": 1},
                "degree_bound": {"type": "integer", "minimum": 1},
                "sigma": {"type": "string"},
                "n_param": {"type": "integer", "minimum": 1},
            },
        },
        "chain": {"type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
    },
}


def _rat(x) -> Fraction:
    return Fraction(x) if isinstance(x, int) else parse_rational(x)


def validate_document(doc: dict):
    try:
        jsonschema.validate(doc, INPUT_SCHEMA, cls=jsonschema.Draft202012Validator)
    except jsonschema.ValidationError as e:
        path = "/".join(str(p) for p in e.absolute_path)
        raise SchemaError(f"{path or '<root>'}: {e.message}", path=path) from None
    rep = doc["rep"]
    if len(rep["weights"]) != rep["dim"]:
        raise SchemaError("rep/weights: length differs from dim", path="rep/weights")
    if "labels" in rep and len(rep["labels"]) != rep["dim"]:
        raise SchemaError("rep/labels: length differs from dim", path="rep/labels")


def rep_from_json(data: dict) -> GradedUnipotentRep:
    basis = tuple(
        LieElement(int(e["grade"]), QMatrix([[_rat(x) for x in row] for row in e["op"]]))
        for e in data.get("lie_basis", [])
    )
    consts = None
    if "structure_consts" in data:
        consts = {}
        for r, s, t, c in data["structure_consts"]:
            consts.setdefault((r, s), {})[t] = _rat(c)
    return GradedUnipotentRep(
        tuple(data["weights"]), basis, consts, tuple(data["labels"]) if "labels" in data else None, data.get("name")
    )


def rep_to_json(rep: GradedUnipotentRep) -> dict:
    out = {
        "dim": rep.dim_v,
        "weights": list(rep.torus_weights),
        "lie_basis": [
            {"grade": e.grade, "op": [[format_rational(x) for x in row] for row in e.op.rows]}
            for e in rep.lie_basis
        ],
        "labels": list(rep.labels),
    }
    if rep.structure_consts is not None:
        out["structure_consts"] = [
            [r, s, t, format_rational(c)]
            for (r, s), coeffs in sorted(rep.structure_consts.items())
            for t, c in sorted(coeffs.items())
        ]
    if rep.name:
        out["name"] = rep.name
    return out


def input_document(rep: GradedUnipotentRep, **extra) -> dict:
    doc = {"version": FORMAT_VERSION, "rep": rep_to_json(rep)}
    doc.update({k: v for k, v in extra.items() if v is not None})
    return doc


def load_document(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e}") from None
    if isinstance(doc, dict) and "version" not in doc and "dim" in doc:
        # a bare rep object is accepted as shorthand
        doc = {"version": FORMAT_VERSION, "rep": doc}
    validate_document(doc)
    return doc


def twist_from_json(data, profile=None) -> CharacterTwist | None:
    if data is None:
        return None
    if data.get("symbolic"):
        return CharacterTwist.well_adapted(profile)
    return CharacterTwist.exact(data["chi"], data["c"], profile, override=data.get("override", False))


def points_from_json(data) -> list[tuple]:
    return [tuple(_rat(x) for x in p) for p in data or []]


def make_report(command: str, inputs: dict, result) -> dict:
    return {
        "tool": {"name": "ugit", "version": __version__},
        "command": command,
        "input": inputs,
        "result": result,
    }


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def loads(text: str):
    return json.loads(text)
