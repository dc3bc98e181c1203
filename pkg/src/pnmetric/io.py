"""JSON documents for spaces, partial metrics, self-maps and reports.

Space document::

    {"points": ["a", "b"], "n": 5,
     "entries": [{"multiset": ["a", "b", "b", "b", "b"], "value": 4}, ...]}

Partial metric document (pairs may include self-pairs, in any order)::

    {"points": ["x", "y"], "entries": [{"pair": ["x", "y"], "value": 2}, ...]}

Self-map document::

    {"map": {"a": "b", "b": "b"}}
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import jsonschema

from .errors import ParseError, SchemaError
from .fixed_point import SelfMap
from .spaces import PartialMetricSpace, PartialNMetricSpace, build_space

SIG_DIGITS = 12

_POINTS = {
    "type": "array",
    "items": {"type": "string"},
    "minItems": 1,
    "uniqueItems": True,
}

SPACE_SCHEMA = {
    "type": "object",
    "required": ["points", "n", "entries"],
    "properties": {
        "points": _POINTS,
        "n": {"type": "integer"},
        "entries": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["multiset", "value"],
                "properties": {
                    "multiset": {"type": "array", "items": {"type": "string"}},
                    "value": {"type": "number"},
                },
                "additionalProperties": False,
            },
        },
    },
}

PARTIAL_METRIC_SCHEMA = {
    "type": "object",
    "required": ["points", "entries"],
    "properties": {
        "points": _POINTS,
        "entries": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["pair", "value"],
                "properties": {
                    "pair": {
                        "type": "array",
                        "items": {"type": "string"},
                        "minItems": 2,
                        "maxItems": 2,
                    },
                    "value": {"type": "number"},
                },
                "additionalProperties": False,
            },
        },
    },
}

MAP_SCHEMA = {
    "type": "object",
    "required": ["map"],
    "properties": {
        "map": {"type": "object", "additionalProperties": {"type": "string"}}
    },
}

SEQUENCE_SCHEMA = {"type": "array", "items": {"type": "string"}, "minItems": 1}


def parse_json(text: str, source: str = "<string>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def check_schema(doc, schema, source: str = "<document>"):
    validator = jsonschema.Draft7Validator(schema)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        where = "/".join(str(p) for p in err.absolute_path) or "(root)"
        raise SchemaError(f"{source}: field {where}: {err.message}")
    return doc


def _read(path, schema):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc
    return check_schema(parse_json(text, str(path)), schema, str(path))


# --- spaces ----------------------------------------------------------------


def space_from_dict(doc) -> PartialNMetricSpace:
    check_schema(doc, SPACE_SCHEMA)
    entries = [(e["multiset"], e["value"]) for e in doc["entries"]]
    return build_space(doc["points"], doc["n"], entries)


def space_to_dict(space: PartialNMetricSpace) -> dict:
    return {
        "points": list(space.points),
        "n": space.n,
        "entries": [
            {"multiset": list(ms), "value": v} for ms, v in space.entries()
        ],
    }


def load_space(path) -> PartialNMetricSpace:
    return space_from_dict(_read(path, SPACE_SCHEMA))


def partial_metric_from_dict(doc) -> PartialMetricSpace:
    check_schema(doc, PARTIAL_METRIC_SCHEMA)
    entries = [(e["pair"], e["value"]) for e in doc["entries"]]
    return PartialMetricSpace.from_entries(doc["points"], entries)


def partial_metric_to_dict(pspace: PartialMetricSpace) -> dict:
    pts = pspace.points
    return {
        "points": list(pts),
        "entries": [
            {"pair": [pts[i], pts[j]], "value": pspace.table[(i, j)]}
            for (i, j) in sorted(pspace.table)
        ],
    }


def load_partial_metric(path) -> PartialMetricSpace:
    return partial_metric_from_dict(_read(path, PARTIAL_METRIC_SCHEMA))


def map_from_dict(space, doc) -> SelfMap:
    check_schema(doc, MAP_SCHEMA)
    return SelfMap(space, doc["map"])


def load_map(space, path) -> SelfMap:
    return map_from_dict(space, _read(path, MAP_SCHEMA))


def parse_sequence(text: str) -> list:
    """A JSON array of point names, or the names separated by whitespace."""
    stripped = text.strip()
    if stripped.startswith("["):
        return check_schema(parse_json(stripped, "sequence"), SEQUENCE_SCHEMA, "sequence")
    items = stripped.replace(",", " ").split()
    if not items:
        raise SchemaError("sequence: empty")
    return items


# --- deterministic output -----------------------------------------------------


def round_floats(obj, digits: int = SIG_DIGITS):
    """Recursively cap floats at ``digits`` significant digits.

    ``json`` then prints the shortest repr of the rounded value, so output
    is byte-stable across platforms.
    """
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return str(obj)
        return float(format(obj, f".{digits}g"))
    if isinstance(obj, dict):
        return {k: round_floats(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v, digits) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(round_floats(obj), sort_keys=True, indent=2) + "\n"
