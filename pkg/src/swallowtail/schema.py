"""Versioned JSON schemas for the CLI output envelope.

Every command prints a single JSON object:

    {"command": ..., "params_echo": {...}, "results": {...}, "tool_version": ...}

``params_echo`` repeats the full effective configuration (including every
defaulted tolerance) so any reported number can be reproduced from its
command line alone.  ``validate_envelope`` checks the envelope and then the
command-specific results payload.
"""

from __future__ import annotations

import jsonschema

ENVELOPE_SCHEMA_VERSION = "1"

COMMANDS = (
    "eval",
    "saddles",
    "trace",
    "zeros-predict",
    "zeros-refine",
    "zeros-confine",
    "scan",
)

ENVELOPE_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["command", "params_echo", "results", "tool_version"],
    "additionalProperties": False,
    "properties": {
        "command": {"type": "string", "enum": list(COMMANDS)},
        "params_echo": {"type": "object"},
        "results": {"type": "object"},
        "tool_version": {"type": "string"},
        "schema_version": {"type": "string"},
    },
}

_COMPLEX_PAIR = {
    "type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2,
}

RESULT_SCHEMAS = {
    "eval": {
        "type": "object",
        "required": ["re", "im", "abs", "abs_error_estimate", "subdivisions_used"],
        "properties": {
            "re": {"type": "number"},
            "im": {"type": "number"},
            "abs": {"type": "number", "minimum": 0},
            "abs_error_estimate": {"type": "number", "minimum": 0},
            "subdivisions_used": {"type": "integer", "minimum": 1},
        },
    },
    "saddles": {
        "type": "object",
        "required": ["roots", "regime", "p", "q1", "q2", "caustic_gamma",
                     "lambda", "gamma"],
        "properties": {
            "roots": {"type": "array", "items": _COMPLEX_PAIR,
                      "minItems": 4, "maxItems": 4},
            "regime": {"type": "string"},
            "p": {"type": ["number", "null"]},
            "q1": {"type": ["number", "null"]},
            "q2": {"type": ["number", "null"]},
            "caustic_gamma": {"type": "number"},
            "lambda": {"type": "number"},
            "gamma": {"type": "number"},
        },
    },
    "trace": {
        "type": "object",
        "required": ["saddle_index", "direction", "terminal_sector",
                     "terminal_angle", "points"],
        "properties": {
            "saddle_index": {"type": "integer", "minimum": 0, "maximum": 3},
            "direction": {"type": "string", "enum": ["left", "right"]},
            "terminal_sector": {"type": "integer", "minimum": 0, "maximum": 4},
            "terminal_angle": {"type": "number"},
            "points": {"type": "array", "items": _COMPLEX_PAIR, "minItems": 2},
        },
    },
    "zeros-predict": {
        "type": "object",
        "required": ["predictions"],
        "properties": {
            "predictions": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["branch", "m", "z_predicted", "form"],
                    "properties": {
                        "branch": {"type": "string"},
                        "m": {"type": "integer", "minimum": 0},
                        "z_predicted": {"type": "number"},
                        "form": {"type": "string", "enum": ["S", "Q"]},
                    },
                },
            },
        },
    },
    "zeros-refine": {
        "type": "object",
        "required": ["branch", "m", "seed_z", "z", "residual", "iterations"],
        "properties": {
            "branch": {"type": "string"},
            "m": {"type": "integer", "minimum": 0},
            "seed_z": {"type": "number"},
            "z": {"type": "number"},
            "residual": {"type": "number", "minimum": 0},
            "iterations": {"type": "integer", "minimum": 0},
        },
    },
    "zeros-confine": {
        "type": "object",
        "required": ["seed_y", "seed_z", "converged", "final_y", "final_z",
                     "final_modulus", "iterations"],
        "properties": {
            "seed_y": {"type": "number"},
            "seed_z": {"type": "number"},
            "converged": {"type": "boolean"},
            "final_y": {"type": "number"},
            "final_z": {"type": "number"},
            "final_modulus": {"type": "number", "minimum": 0},
            "iterations": {"type": "integer", "minimum": 0},
        },
    },
    "scan": {
        "type": "object",
        "required": ["out_path", "format", "ny", "nz", "min_abs_q",
                     "argmin_y", "argmin_z", "flagged_cells"],
        "properties": {
            "out_path": {"type": "string"},
            "format": {"type": "string", "enum": ["csv", "json"]},
            "ny": {"type": "integer", "minimum": 1},
            "nz": {"type": "integer", "minimum": 1},
            "min_abs_q": {"type": "number"},
            "argmin_y": {"type": "number"},
            "argmin_z": {"type": "number"},
            "flagged_cells": {"type": "integer", "minimum": 0},
        },
    },
}


def validate_envelope(envelope: dict) -> None:
    """Raise jsonschema.ValidationError if the envelope is malformed."""
    jsonschema.validate(envelope, ENVELOPE_SCHEMA)
    jsonschema.validate(envelope["results"], RESULT_SCHEMAS[envelope["command"]])
