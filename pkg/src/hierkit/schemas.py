"""JSON schemas for CLI case files.

Integers may be written either as JSON numbers or as decimal strings, so
values beyond double precision survive a round trip through other tools.
Every case file carries ``"version": "1"``.  In strict mode unknown keys are
rejected at every level.
"""

from __future__ import annotations

import copy

CASE_VERSION = "1"

INT = {"anyOf": [{"type": "integer"}, {"type": "string", "pattern": "^-?[0-9]+$"}]}
VECTOR = {"type": "array", "items": INT}
MATRIX = {"type": "array", "items": VECTOR}


def _obj(required, optional=None):
    props = dict(required)
    props.update(optional or {})
    return {"type": "object", "properties": props, "required": sorted(required)}


VERSION = {"const": CASE_VERSION}

PRESENTATION = _obj(
    {
        "version": VERSION,
        "components": {
            "type": "array",
            "minItems": 1,
            "items": _obj({"genus": INT, "sign": INT}),
        },
        "ambient_rank": INT,
        "inclusion": MATRIX,
    },
    {"relations": MATRIX},
)

NORM = _obj({"rank": INT, "functionals": MATRIX})

NORM_CASE = _obj(
    {"version": VERSION, "norm": NORM, "classes": MATRIX},
    {
        "h": VECTOR,
        "h1": VECTOR,
        "h2": VECTOR,
        "g_prev": VECTOR,
        "g_next": VECTOR,
        "probes": MATRIX,
        "part": INT,
    },
)

TABLE = _obj({"classes": MATRIX, "ranks": VECTOR})

RANK_CASE = _obj(
    {"version": VERSION, "knot": TABLE, "pullback": MATRIX},
    {
        "ambient": TABLE,
        "meridian_pairing": INT,
        "pushforward": MATRIX,
        "norm": NORM,
        "h": VECTOR,
        "F_class": VECTOR,
        "chi_F": INT,
    },
)

CRT_CASE = _obj({"version": VERSION, "primes": VECTOR, "residues": MATRIX})

TOWER_CASE = _obj({"version": VERSION, "f": VECTOR, "depth": INT}, {"constant_term": INT})

BUNDLE_CASE = _obj(
    {
        "version": VERSION,
        "chi_G": INT,
        "n": INT,
        "chi_plus": INT,
        "chi_minus": INT,
        "chi_double": INT,
    },
    {"meridian_term": {"type": "boolean"}},
)

ANNULUS_CASE = _obj({"version": VERSION, "c_minus": VECTOR, "c_plus": VECTOR})

SURFACE = _obj(
    {"homology": VECTOR, "euler": INT},
    {"pairings": _obj({"classes": MATRIX, "values": VECTOR})},
)

SURFACE_CASE = _obj(
    {"version": VERSION, "classes": MATRIX, "S": SURFACE, "G": SURFACE},
    {"m": INT, "window": INT},
)


def strict(schema):
    """Copy of ``schema`` with ``additionalProperties: false`` on every object."""
    schema = copy.deepcopy(schema)

    def walk(node):
        if isinstance(node, dict):
            if node.get("type") == "object":
                node["additionalProperties"] = False
            for v in node.values():
                walk(v)
        elif isinstance(node, list):
            for v in node:
                walk(v)

    walk(schema)
    return schema
