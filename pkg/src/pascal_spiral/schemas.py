"""JSON Schemas (draft 2020-12) for the stable CLI output formats.

The human format carries no stability guarantee; json and csv do.  CSV
column layouts are fixed per subcommand and documented in the README."""

_NUMBER = {"type": "number"}
_COMPLEX = {
    "type": "object",
    "properties": {"re": _NUMBER, "im": _NUMBER},
    "required": ["re", "im"],
    "additionalProperties": False,
}

COEFFS_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "command": {"const": "coeffs"},
        "m": _NUMBER,
        "q": _NUMBER,
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"n": {"type": "integer"}, "phi_n": _NUMBER},
                "required": ["n", "phi_n"],
                "additionalProperties": False,
            },
        },
    },
    "required": ["command", "m", "q", "rows"],
    "additionalProperties": False,
}

IDENTITIES_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "command": {"const": "identities"},
        "m": _NUMBER,
        "q": _NUMBER,
        "identities": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "identity_id": {"enum": ["S0", "S1", "S2", "Sinv"]},
                    "closed_form": _NUMBER,
                    "truncated": _NUMBER,
                    "truncation_order": {"type": "integer"},
                    "abs_error": _NUMBER,
                },
                "required": [
                    "identity_id", "closed_form", "truncated",
                    "truncation_order", "abs_error",
                ],
                "additionalProperties": False,
            },
        },
    },
    "required": ["command", "m", "q", "identities"],
    "additionalProperties": False,
}

_VERDICT = {
    "type": "object",
    "properties": {
        "lhs": _NUMBER,
        "rhs": _NUMBER,
        "margin": _NUMBER,
        "satisfied": {"type": "boolean"},
        "variant": {"enum": ["paper", "rederived", "direct"]},
    },
    "required": ["lhs", "rhs", "margin", "satisfied", "variant"],
    "additionalProperties": False,
}

CHECK_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "command": {"const": "check"},
        "criterion": {"type": "string"},
        "params": {"type": "object"},
        "verdicts": {
            "type": "object",
            "properties": {
                "paper": _VERDICT,
                "rederived": _VERDICT,
                "direct": _VERDICT,
            },
            "additionalProperties": False,
        },
        "disagreement": {"type": ["number", "null"]},
    },
    "required": ["command", "criterion", "params", "verdicts", "disagreement"],
    "additionalProperties": False,
}

VERIFY_DISK_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "command": {"const": "verify-disk"},
        "function": {"type": "string"},
        "family": {"enum": ["S", "K"]},
        "params": {"type": "object"},
        "pass": {"type": "boolean"},
        "min_value": _NUMBER,
        "witness": _COMPLEX,
        "points_checked": {"type": "integer"},
        "note": {"type": "string"},
    },
    "required": [
        "command", "function", "family", "params", "pass",
        "min_value", "witness", "points_checked", "note",
    ],
    "additionalProperties": False,
}

SCAN_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "command": {"const": "scan"},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "criterion": {"type": "string"},
                    "variant": {"type": "string"},
                    "m": _NUMBER,
                    "xi": _NUMBER,
                    "gamma": _NUMBER,
                    "rho": _NUMBER,
                    "q_star": _NUMBER,
                    "iterations": {"type": "integer"},
                    "residual_margin": _NUMBER,
                    "boundary": {"type": "string"},
                    "error": {"type": "string"},
                },
                "required": [
                    "criterion", "variant", "m", "xi", "gamma", "rho",
                    "q_star", "iterations", "residual_margin",
                ],
                "additionalProperties": False,
            },
        },
    },
    "required": ["command", "rows"],
    "additionalProperties": False,
}

DISCREPANCY_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "command": {"const": "discrepancy-report"},
        "threshold": _NUMBER,
        "points_checked": {"type": "integer"},
        "flagged_counts": {
            "type": "object",
            "additionalProperties": {"type": "integer"},
        },
        "flagged_rows": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "criterion": {"type": "string"},
                    "m": _NUMBER,
                    "q": _NUMBER,
                    "xi": _NUMBER,
                    "gamma": _NUMBER,
                    "rho": _NUMBER,
                    "paper_lhs": _NUMBER,
                    "direct_lhs": _NUMBER,
                    "abs_diff": _NUMBER,
                },
                "required": [
                    "criterion", "m", "q", "xi", "gamma", "rho",
                    "paper_lhs", "direct_lhs", "abs_diff",
                ],
                "additionalProperties": False,
            },
        },
    },
    "required": [
        "command", "threshold", "points_checked",
        "flagged_counts", "flagged_rows",
    ],
    "additionalProperties": False,
}

SCHEMAS = {
    "coeffs": COEFFS_SCHEMA,
    "identities": IDENTITIES_SCHEMA,
    "check": CHECK_SCHEMA,
    "verify-disk": VERIFY_DISK_SCHEMA,
    "scan": SCAN_SCHEMA,
    "discrepancy-report": DISCREPANCY_SCHEMA,
}
