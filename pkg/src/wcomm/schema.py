"""JSON schemas for emitted reports."""
from __future__ import annotations

import jsonschema

_members = {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 1}

REPORT = {
    "type": "object",
    "required": ["subject", "formula", "oracle", "equal", "depth", "last_growth", "stable"],
    "properties": {
        "subject": {"type": "string"},
        "formula": _members,
        "oracle": {"oneOf": [_members, {"type": "null"}]},
        "equal": {"type": "boolean"},
        "depth": {"type": "integer", "minimum": 0},
        "last_growth": {"type": "integer", "minimum": 0},
        "stable": {"type": "boolean"},
        "profile": {"type": "array", "items": {"type": "integer", "minimum": 1}},
    },
}

SUMMARY = {
    "type": "object",
    "required": ["summary", "ok", "groups", "instances", "mismatches", "unstable"],
    "properties": {
        "summary": {"const": True},
        "ok": {"type": "boolean"},
        "groups": {"type": "integer", "minimum": 0},
        "instances": {"type": "integer", "minimum": 0},
        "mismatches": {"type": "integer", "minimum": 0},
        "unstable": {"type": "integer", "minimum": 0},
        "vanishing_violations": {"type": "integer", "minimum": 0},
        "weight_violations": {"type": "integer", "minimum": 0},
        "huq_violations": {"type": "integer", "minimum": 0},
        "failures": {"type": "array", "items": REPORT},
    },
}


def validate_report(obj: dict) -> None:
    jsonschema.validate(obj, REPORT)


def validate_summary(obj: dict) -> None:
    jsonschema.validate(obj, SUMMARY)
