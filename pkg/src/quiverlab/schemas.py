"""JSON Schemas for the machine-readable outputs of the CLI."""

_INT_VECTOR = {"type": "array", "items": {"type": "integer", "minimum": 0}}

TYPE = {
    "type": "array",
    "minItems": 1,
    "items": {
        "type": "array",
        "prefixItems": [{"type": "integer", "minimum": 1}, _INT_VECTOR],
        "items": False,
        "minItems": 2,
    },
}

QUIVER = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["vertices", "arrows"],
    "properties": {
        "vertices": {"type": "array", "items": {"type": "string"}},
        "arrows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "tail", "head"],
                "properties": {
                    "id": {"type": "string"},
                    "tail": {"type": "string"},
                    "head": {"type": "string"},
                },
                "additionalProperties": False,
            },
        },
        "alpha": {"type": "object", "additionalProperties": {"type": "integer", "minimum": 0}},
        "lambda": {
            "type": "object",
            "additionalProperties": {"type": "string", "pattern": r"^-?\d+(/\d+)?$"},
        },
    },
    "additionalProperties": False,
}

DECIDE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["inSigma", "minimal", "coadjointOrbit", "smoothQuotient", "azumaya",
                 "alphaSmooth", "dimension", "strata"],
    "properties": {
        "inSigma": {"type": "boolean"},
        "minimal": {"type": "boolean"},
        "coadjointOrbit": {"type": "boolean"},
        "smoothQuotient": {"type": "boolean"},
        "azumaya": {"type": "boolean"},
        "alphaSmooth": {"type": "boolean"},
        "dimension": {"type": ["integer", "null"]},
        "typeCount": {"type": "integer", "minimum": 0},
        "componentwiseMinimal": {"type": "boolean"},
        "strata": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["type", "dimension", "smooth"],
                "properties": {
                    "type": TYPE,
                    "dimension": {"type": "integer", "minimum": 0},
                    "smooth": {"type": "boolean"},
                },
                "additionalProperties": False,
            },
        },
        "warnings": {"type": "array", "items": {"type": "string"}},
        "query": {"type": "object"},
    },
    "additionalProperties": False,
}

LAB_REPORT = {
    "type": "object",
    "required": ["residual", "jacobianRank", "expectedRank", "fiberDimension",
                 "endomorphismDimension", "simple", "quotientDimensionEstimate"],
    "properties": {
        "residual": {"type": "number", "minimum": 0},
        "jacobianRank": {"type": "integer", "minimum": 0},
        "expectedRank": {"type": "integer", "minimum": -1},
        "ambientDimension": {"type": "integer", "minimum": 0},
        "fiberDimension": {"type": "integer"},
        "endomorphismDimension": {"type": "integer", "minimum": 1},
        "simple": {"type": "boolean"},
        "quotientDimensionEstimate": {"type": "integer"},
        "label": {"const": "witness"},
    },
    "additionalProperties": False,
}

VERIFY = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["label", "trials", "failures", "inSigma", "minimal", "report", "samples",
                 "checks", "consistent"],
    "properties": {
        "label": {"const": "witness"},
        "trials": {"type": "integer", "minimum": 0},
        "failures": {"type": "integer", "minimum": 0},
        "inSigma": {"type": "boolean"},
        "minimal": {"type": "boolean"},
        "expectedQuotientDimension": {"type": ["integer", "null"]},
        "report": {"oneOf": [{"type": "null"}, LAB_REPORT]},
        "samples": {"type": "array", "items": LAB_REPORT},
        "checks": {"type": "object", "additionalProperties": {"type": "boolean"}},
        "consistent": {"type": "boolean"},
        "samplingFailures": {"type": "array", "items": {"type": "object"}},
        "query": {"type": "object"},
    },
    "additionalProperties": False,
}

ERROR = {
    "type": "object",
    "required": ["error"],
    "properties": {
        "error": {
            "type": "object",
            "required": ["kind", "message"],
            "properties": {"kind": {"type": "string"}, "message": {"type": "string"}},
        }
    },
}
