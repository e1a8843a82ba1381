"""JSON Schemas for every ``--json`` output of the command line tool."""

_DEC = {"type": "string", "pattern": "^[0-9]+$"}
_DYN = {"type": "string", "pattern": "^[IO]*$"}
_COUNT = {"type": "integer", "minimum": 0}

RESIDUE = {
    "type": "object",
    "required": ["i", "t"],
    "properties": {"i": _DEC, "t": _COUNT},
    "additionalProperties": False,
}

TRAJECTORY = {
    "type": "object",
    "required": ["start", "symbols", "values"],
    "properties": {"start": _DEC, "symbols": _DYN, "values": {"type": "array", "items": _DEC}},
    "additionalProperties": False,
}

ERROR = {
    "type": "object",
    "required": ["error", "message"],
    "properties": {"error": {"type": "string"}, "message": {"type": "string"}},
}

_NODE = {
    "type": "object",
    "required": ["prefix", "i", "t", "kind", "children"],
    "properties": {
        "prefix": _DYN,
        "i": _DEC,
        "t": _COUNT,
        "kind": {"enum": ["live", "terminal"]},
        "truncated": {"type": "boolean"},
        "children": {"type": "array", "items": {"$ref": "#"}, "maxItems": 2},
    },
}

SCHEMAS = {
    "rd": {
        "type": "object",
        "required": ["x", "rd", "length", "cnt_I"],
        "properties": {"x": _DEC, "rd": _DYN, "length": _COUNT, "cnt_I": _COUNT},
    },
    "dynam": {
        "type": "object",
        "required": ["x", "n", "dynam"],
        "properties": {"x": _DEC, "n": _COUNT, "dynam": _DYN},
    },
    "apply": TRAJECTORY,
    "d2r": RESIDUE,
    "r2d": {
        "type": "object",
        "required": ["i", "t", "dynam"],
        "properties": {"i": _DEC, "t": _COUNT, "dynam": _DYN},
    },
    "form": {
        "type": "object",
        "required": ["pattern", "status", "first_violation", "prefix_status"],
        "properties": {
            "pattern": _DYN,
            "status": {"enum": ["ReducedForm", "ProperPrefix", "Inadmissible"]},
            "first_violation": {"type": ["integer", "null"]},
            "prefix_status": {"type": "array", "items": {"enum": ["above", "terminal", "below"]}},
        },
    },
    "enumerate": {
        "type": "array",
        "items": {
            "type": "object",
            "required": ["pattern", "i", "t", "density_num", "density_log2_den"],
            "properties": {
                "pattern": _DYN, "i": _DEC, "t": _COUNT,
                "density_num": {"const": 1}, "density_log2_den": _COUNT,
            },
        },
    },
    "coverage": {
        "type": "array",
        "items": {
            "type": "object",
            "required": ["n", "count_n", "R_num", "R_log2_den", "R_float"],
            "properties": {
                "n": _COUNT, "count_n": _COUNT, "R_num": _DEC,
                "R_log2_den": _COUNT, "R_float": {"type": "number"},
            },
        },
    },
    "graph": _NODE,
    "verify": {
        "type": "object",
        "required": ["x", "reached_one", "cnt_I", "cnt_O", "total_len",
                     "classic_odd_steps", "classic_halvings"],
        "properties": {
            "x": _DEC, "reached_one": {"type": "boolean"},
            "cnt_I": _COUNT, "cnt_O": _COUNT, "total_len": _COUNT,
            "classic_odd_steps": _COUNT, "classic_halvings": _COUNT,
            "oracle_checked": {"type": "boolean"},
            "elapsed": {"type": "number"},
        },
    },
    "verify-range": {
        "type": "object",
        "required": ["a", "b", "count", "all_found", "max_length", "histogram",
                     "exhausted", "anomalies"],
        "properties": {
            "a": _DEC, "b": _DEC, "full": {"type": "boolean"}, "count": _COUNT,
            "all_found": {"type": "boolean"}, "max_length": _COUNT,
            "argmax": {"anyOf": [_DEC, {"type": "null"}]},
            "histogram": {"type": "object", "additionalProperties": _COUNT},
            "exhausted": {"type": "array", "items": _DEC},
            "anomalies": {"type": "array", "items": _DEC},
            "patterns": {"type": "object"},
            "elapsed": {"type": "number"},
        },
    },
    "fork": {
        "type": "object",
        "required": ["x1", "x2", "t"],
        "properties": {"x1": _DEC, "x2": _DEC, "t": {"type": ["integer", "null"]}},
    },
    "error": ERROR,
}
