"""JSON schemas for problem files and command output.

Problem files hold one problem each; unknown fields are rejected.  Numbers
are read as decimals and turned into exact fractions, so ``0.1`` means 1/10
in an exact ring.
"""
from __future__ import annotations

import json
from decimal import Decimal
from fractions import Fraction

import jsonschema

from .errors import ValidationError

VALUE = {
    "anyOf": [
        {"type": "number"},
        {"type": "string"},
        {"type": "array", "items": {"type": ["number", "string"]}},
        {"type": "object", "properties": {"p": {"type": ["number", "string"]},
                                          "q": {"type": ["number", "string"]}},
         "required": ["p", "q"], "additionalProperties": False},
    ]
}

SEQUENCE = {
    "anyOf": [
        VALUE,
        {
            "type": "object",
            "properties": {
                "kind": {"enum": ["constant", "periodic", "table", "formula"]},
                "value": VALUE,
                "values": {"type": "array", "items": VALUE, "minItems": 1},
                "period": {"type": "integer", "minimum": 1},
                "offset": {"type": "integer"},
                "tail": VALUE,
                "expr": {"type": "string"},
            },
            "required": ["kind"],
            "additionalProperties": False,
        },
    ]
}

RING = {
    "type": "object",
    "properties": {
        "kind": {"enum": ["integer", "rational", "modular", "quadratic_ext", "boolean", "sampled", "real"]},
        "m": {"type": "integer", "minimum": 2},
        "d": {"type": "integer"},
        "size": {"type": "integer", "minimum": 1},
        "grid": {"type": "array", "items": {"type": "number"}, "minItems": 1},
        "tol": {"type": "number", "minimum": 0},
    },
    "required": ["kind"],
    "additionalProperties": False,
    "allOf": [
        {"if": {"properties": {"kind": {"const": "modular"}}}, "then": {"required": ["m"]}},
        {"if": {"properties": {"kind": {"const": "quadratic_ext"}}}, "then": {"required": ["d"]}},
        {"if": {"properties": {"kind": {"const": "sampled"}}}, "then": {"required": ["grid"]}},
    ],
}

RECURRENCE = {
    "type": "object",
    "properties": {
        "coeffs": {"type": "array", "items": SEQUENCE, "minItems": 1},
        "forcing": SEQUENCE,
        "initials": {"type": "array", "items": VALUE},
        "leading": VALUE,
        "order": {"type": "integer", "minimum": 1},
        "start_index": {"type": "integer"},
    },
    "required": ["coeffs"],
    "additionalProperties": False,
}

STAGE = {
    "type": "object",
    "properties": {
        "kind": {"enum": ["auto", "eigenvalue", "seed", "terms", "solution"]},
        "value": VALUE,
        "values": {"type": "array", "items": VALUE, "minItems": 1},
        "periodic": {"type": "boolean"},
        "initials": {"type": "array", "items": VALUE, "minItems": 1},
    },
    "required": ["kind"],
    "additionalProperties": False,
}

PROBLEM = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "scfact problem",
    "type": "object",
    "properties": {
        "description": {"type": "string"},
        "ring": RING,
        "recurrence": RECURRENCE,
        "seeds": {"type": "array", "items": VALUE},
        "horizon": {"type": "integer", "minimum": 0},
        "tolerance": {"type": "number", "minimum": 0},
        "format": {"enum": ["csv", "json", "table"]},
        "eigen": {"type": "array", "items": STAGE},
        "limits": {"type": "array", "items": VALUE},
        "tail_start": {"type": "integer", "minimum": 1},
        "polynomial": {"type": "array", "items": VALUE, "minItems": 1},
        "roots": {"type": "array", "items": VALUE},
        "multiplier": VALUE,
        "t1": VALUE,
    },
    "required": ["ring"],
    "additionalProperties": False,
}

_ROW = {"type": "object", "additionalProperties": {"type": ["string", "integer", "number", "boolean", "null"]}}

OUTPUT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "scfact output",
    "type": "object",
    "properties": {
        "command": {"enum": ["solve", "eigenseq", "factorize", "periodic", "roots", "pp",
                             "nonrecursive", "demo", "audit"]},
        "ring": {"type": ["object", "null"]},
        "rows": {"type": "array", "items": _ROW},
        "result": {"type": "object"},
        "verification": {
            "type": ["object", "null"],
            "properties": {
                "checked": {"type": "boolean"},
                "passed": {"type": ["boolean", "null"]},
                "through": {"type": ["integer", "null"]},
                "detail": {"type": "string"},
            },
            "required": ["checked", "passed"],
            "additionalProperties": False,
        },
    },
    "required": ["command", "ring", "rows", "result", "verification"],
    "additionalProperties": False,
}

SCHEMAS = {"problem": PROBLEM, "output": OUTPUT}


def _path(error) -> str:
    out = "$"
    for part in error.absolute_path:
        out += f"[{part}]" if isinstance(part, int) else f".{part}"
    return out


def exact_numbers(obj):
    """Replace decimals from the JSON reader by exact fractions (integers stay ints)."""
    if isinstance(obj, Decimal):
        f = Fraction(str(obj))
        return int(f) if f.denominator == 1 else f
    if isinstance(obj, list):
        return [exact_numbers(v) for v in obj]
    if isinstance(obj, dict):
        return {k: exact_numbers(v) for k, v in obj.items()}
    return obj


def validate(obj, schema=PROBLEM) -> None:
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(obj), key=lambda e: (len(list(e.absolute_path)), str(e.message)))
    if errors:
        err = errors[0]
        raise ValidationError(err.message, _path(err))


def load_problem(text: str):
    """Parse and validate problem JSON; raises ValidationError with a JSON path."""
    try:
        obj = json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})") from exc
    validate(obj, PROBLEM)
    return exact_numbers(obj)


def validate_output(obj) -> None:
    validate(obj, OUTPUT)


__all__ = ["PROBLEM", "OUTPUT", "SCHEMAS", "load_problem", "validate", "validate_output", "exact_numbers"]
