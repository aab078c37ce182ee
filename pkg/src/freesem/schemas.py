"""JSON input formats. Every index is 0-based."""

_nat = {"type": "integer", "minimum": 0}
_nats = {"type": "array", "items": _nat}

DEFS = {
    "fincat": {
        "type": "object",
        "required": ["objects", "morphisms", "identities", "compose"],
        "properties": {
            "objects": _nat,
            "morphisms": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["dom", "cod"],
                    "properties": {"dom": _nat, "cod": _nat},
                },
            },
            "identities": _nats,
            "compose": {
                "type": "array",
                "items": {"type": "array", "items": {"anyOf": [_nat, {"type": "null"}]}},
            },
        },
    },
    "functor": {
        "type": "object",
        "required": ["objects", "morphisms"],
        "properties": {"objects": _nats, "morphisms": _nats},
    },
    "presheaf": {
        "type": "object",
        "required": ["sizes", "maps"],
        "properties": {"sizes": _nats, "maps": {"type": "array", "items": _nats}},
    },
    "monoidal": {
        "type": "object",
        "required": ["tensor", "unit"],
        "properties": {
            "tensor": {
                "type": "object",
                "required": ["objects", "morphisms"],
                "properties": {
                    "objects": {"type": "array", "items": _nats},
                    "morphisms": {"type": "array", "items": _nats},
                },
            },
            "unit": _nat,
        },
    },
    "promonoidal": {
        "type": "object",
        "required": ["sizes", "maps"],
        "properties": {
            "sizes": _nats,
            "maps": {"type": "array", "items": _nats},
            "unit": {"$ref": "#/$defs/presheaf"},
        },
    },
    "components": {"type": "array", "items": {"anyOf": [_nat, {"type": "null"}]}},
}


def _schema(body: dict) -> dict:
    return {"$schema": "https://json-schema.org/draft/2020-12/schema", "$defs": DEFS, **body}


FINCAT = _schema({"$ref": "#/$defs/fincat"})

KRIPKE_FRAME = _schema({
    "type": "object",
    "required": ["size", "leq"],
    "properties": {
        "size": _nat,
        "leq": {"type": "array", "items": {"type": "array", "items": _nat,
                                           "minItems": 2, "maxItems": 2}},
    },
})

TERNARY_FRAME = _schema({
    "type": "object",
    "required": ["size", "triples"],
    "properties": {
        "size": _nat,
        "triples": {"type": "array", "items": {"type": "array", "items": _nat,
                                               "minItems": 3, "maxItems": 3}},
    },
})

FRAME = _schema({"anyOf": [
    {"type": "object", "required": ["size", "leq"]},
    {"type": "object", "required": ["size", "triples"]},
]})

VALUATION = _schema({
    "type": "object",
    "propertyNames": {"pattern": "^[A-Za-z_][A-Za-z0-9_]*$"},
    "additionalProperties": _nats,
})

RELATION = _schema({
    "type": "object",
    "required": ["models", "sentences", "matrix"],
    "properties": {
        "models": {"type": "array", "items": {"type": "string"}},
        "sentences": {"type": "array", "items": {"type": "string"}},
        "matrix": {"type": "array", "items": {"type": "array", "items": {"type": "boolean"}}},
    },
})

_presheaf_ref = {"$ref": "#/$defs/presheaf"}

DAY = _schema({
    "type": "object",
    "required": ["category"],
    "properties": {
        "category": {"$ref": "#/$defs/fincat"},
        "monoidal": {"$ref": "#/$defs/monoidal"},
        "promonoidal": {"$ref": "#/$defs/promonoidal"},
        "F": _presheaf_ref,
        "G": _presheaf_ref,
        "H": _presheaf_ref,
        "presheaves": {"type": "array", "items": _presheaf_ref},
        "K": _nat,
        "Fs": {"type": "array", "items": _presheaf_ref},
        "Gs": {"type": "array", "items": _presheaf_ref},
    },
    "oneOf": [{"required": ["monoidal"]}, {"required": ["promonoidal"]}],
})

KAN_TRIANGLE = _schema({
    "type": "object",
    "required": ["A", "Abar", "B", "Y", "F", "G", "eta"],
    "properties": {
        "A": {"$ref": "#/$defs/fincat"},
        "Abar": {"$ref": "#/$defs/fincat"},
        "B": {"$ref": "#/$defs/fincat"},
        "Y": {"$ref": "#/$defs/functor"},
        "F": {"$ref": "#/$defs/functor"},
        "G": {"$ref": "#/$defs/functor"},
        "eta": {"$ref": "#/$defs/components"},
    },
})

KAN_ADJUNCTION = _schema({
    "type": "object",
    "required": ["A", "B", "f", "g", "unit", "counit"],
    "properties": {
        "A": {"$ref": "#/$defs/fincat"},
        "B": {"$ref": "#/$defs/fincat"},
        "f": {"$ref": "#/$defs/functor"},
        "g": {"$ref": "#/$defs/functor"},
        "unit": {"$ref": "#/$defs/components"},
        "counit": {"$ref": "#/$defs/components"},
    },
})

KAN_FUNCTOR = _schema({
    "type": "object",
    "required": ["A", "B", "f"],
    "properties": {
        "A": {"$ref": "#/$defs/fincat"},
        "B": {"$ref": "#/$defs/fincat"},
        "f": {"$ref": "#/$defs/functor"},
    },
})

BIFUNCTOR = _schema({
    "type": "object",
    "required": ["category", "bifunctor"],
    "properties": {
        "category": {"$ref": "#/$defs/fincat"},
        "bifunctor": _presheaf_ref,
    },
})
