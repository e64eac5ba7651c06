"""
JSON schemas of the structure documents.

The envelope schema fixes ``format`` and ``kind``; each kind then has its
own schema for the tables. References to other documents are either a
relative path or an inline document, which is validated again when it is
decoded. Unknown ids and dangling homs are cross-references and are
checked by the decoders, not here.
"""

import json

from jsonschema import Draft202012Validator
from jsonschema.exceptions import best_match

from kfold_deloop.errors import ParseError

FORMAT_VERSION = 1
KINDS = ('category', 'kfold', 'symmetric', 'enriched', 'enriched-functor', 'v2category')

ENVELOPE = {
    '$schema': 'https://json-schema.org/draft/2020-12/schema',
    'type': 'object',
    'required': ['format', 'kind'],
    'properties': {
        'format': {'const': FORMAT_VERSION},
        'kind': {'enum': list(KINDS)},
    },
}

_DEFS = {
    'id': {'type': 'string'},
    'ids': {'type': 'array', 'items': {'$ref': '#/$defs/id'}},
    'reference': {
        'oneOf': [
            {'type': 'string', 'minLength': 1},
            {'type': 'object', 'required': ['format', 'kind']},
        ],
    },
    'tensor': {
        'type': 'object',
        'required': ['objects', 'morphisms'],
        'properties': {
            'objects': {'type': 'array', 'items': {'$ref': '#/$defs/pairEntry'}},
            'morphisms': {'type': 'array', 'items': {'$ref': '#/$defs/pairEntry'}},
        },
    },
    'pairEntry': {
        'type': 'object',
        'required': ['left', 'right', 'result'],
        'properties': {
            'left': {'$ref': '#/$defs/id'},
            'right': {'$ref': '#/$defs/id'},
            'result': {'$ref': '#/$defs/id'},
        },
    },
    'family': {
        'type': 'object',
        'required': ['components'],
        'properties': {
            'components': {
                'type': 'array',
                'items': {
                    'type': 'object',
                    'required': ['at', 'morphism'],
                    'properties': {
                        'at': {'$ref': '#/$defs/ids', 'minItems': 1},
                        'morphism': {'$ref': '#/$defs/id'},
                    },
                },
            },
        },
    },
    'identities': {
        'type': 'array',
        'items': {
            'type': 'object',
            'required': ['object', 'morphism'],
            'properties': {
                'object': {'$ref': '#/$defs/id'},
                'morphism': {'$ref': '#/$defs/id'},
            },
        },
    },
    'homs': {
        'type': 'array',
        'items': {
            'type': 'object',
            'required': ['from', 'to', 'object'],
            'properties': {
                'from': {'$ref': '#/$defs/id'},
                'to': {'$ref': '#/$defs/id'},
                'object': {'$ref': '#/$defs/id'},
            },
        },
    },
    'objectMap': {
        'type': 'array',
        'items': {
            'type': 'object',
            'required': ['object', 'image'],
            'properties': {
                'object': {'$ref': '#/$defs/id'},
                'image': {'$ref': '#/$defs/id'},
            },
        },
    },
    'functorComponents': {
        'type': 'array',
        'items': {
            'type': 'object',
            'required': ['at', 'morphism'],
            'properties': {
                'at': {'$ref': '#/$defs/ids', 'minItems': 2, 'maxItems': 2},
                'morphism': {'$ref': '#/$defs/id'},
            },
        },
    },
}


def _document(required, properties):
    return {
        '$schema': 'https://json-schema.org/draft/2020-12/schema',
        '$defs': _DEFS,
        'type': 'object',
        'required': ['format', 'kind', *required],
        'additionalProperties': False,
        'properties': {'format': {}, 'kind': {}, 'name': {'type': 'string'}, **properties},
    }


SCHEMAS = {
    'category': _document(['objects', 'morphisms', 'identities', 'composition'], {
        'groupoid': {'type': 'boolean'},
        'objects': {'$ref': '#/$defs/ids'},
        'morphisms': {
            'type': 'array',
            'items': {
                'type': 'object',
                'required': ['id', 'dom', 'cod'],
                'properties': {
                    'id': {'$ref': '#/$defs/id'},
                    'dom': {'$ref': '#/$defs/id'},
                    'cod': {'$ref': '#/$defs/id'},
                },
            },
        },
        'identities': {'$ref': '#/$defs/identities'},
        'composition': {
            'type': 'array',
            'items': {
                'type': 'object',
                'required': ['g', 'f', 'h'],
                'properties': {
                    'g': {'$ref': '#/$defs/id'},
                    'f': {'$ref': '#/$defs/id'},
                    'h': {'$ref': '#/$defs/id'},
                },
            },
        },
    }),
    'kfold': _document(['base', 'unit', 'tensors', 'associators', 'interchangers'], {
        'base': {'$ref': '#/$defs/reference'},
        'unit': {'$ref': '#/$defs/id'},
        'tensors': {
            'type': 'array',
            'minItems': 1,
            'items': {
                'allOf': [{'$ref': '#/$defs/tensor'}],
                'required': ['index'],
                'properties': {'index': {'type': 'integer', 'minimum': 1}},
            },
        },
        'associators': {
            'type': 'array',
            'items': {
                'allOf': [{'$ref': '#/$defs/family'}],
                'required': ['index'],
                'properties': {'index': {'type': 'integer', 'minimum': 1}},
            },
        },
        'interchangers': {
            'type': 'array',
            'items': {
                'allOf': [{'$ref': '#/$defs/family'}],
                'required': ['i', 'j'],
                'properties': {
                    'i': {'type': 'integer', 'minimum': 1},
                    'j': {'type': 'integer', 'minimum': 2},
                },
            },
        },
    }),
    'symmetric': _document(['base', 'unit', 'tensor', 'associator', 'braiding'], {
        'base': {'$ref': '#/$defs/reference'},
        'unit': {'$ref': '#/$defs/id'},
        'tensor': {'$ref': '#/$defs/tensor'},
        'associator': {'$ref': '#/$defs/family'},
        'braiding': {'$ref': '#/$defs/family'},
    }),
    'enriched': _document(['base', 'objects', 'hom', 'composition', 'identities'], {
        'base': {'$ref': '#/$defs/reference'},
        'objects': {'$ref': '#/$defs/ids'},
        'hom': {'$ref': '#/$defs/homs'},
        'composition': {
            'type': 'array',
            'items': {
                'type': 'object',
                'required': ['at', 'morphism'],
                'properties': {
                    'at': {'$ref': '#/$defs/ids', 'minItems': 3, 'maxItems': 3},
                    'morphism': {'$ref': '#/$defs/id'},
                },
            },
        },
        'identities': {'$ref': '#/$defs/identities'},
    }),
    'enriched-functor': _document(['source', 'target', 'object_map', 'components'], {
        'source': {'$ref': '#/$defs/reference'},
        'target': {'$ref': '#/$defs/reference'},
        'object_map': {'$ref': '#/$defs/objectMap'},
        'components': {'$ref': '#/$defs/functorComponents'},
    }),
    'v2category': _document(['base', 'objects', 'hom', 'composition', 'identities'], {
        'base': {'$ref': '#/$defs/reference'},
        'objects': {'$ref': '#/$defs/ids'},
        'hom': {
            'type': 'array',
            'items': {
                'type': 'object',
                'required': ['from', 'to', 'category'],
                'properties': {
                    'from': {'$ref': '#/$defs/id'},
                    'to': {'$ref': '#/$defs/id'},
                    'category': {'$ref': '#/$defs/reference'},
                },
            },
        },
        'composition': {
            'type': 'array',
            'items': {
                'type': 'object',
                'required': ['at', 'object_map', 'components'],
                'properties': {
                    'at': {'$ref': '#/$defs/ids', 'minItems': 3, 'maxItems': 3},
                    'object_map': {'$ref': '#/$defs/objectMap'},
                    'components': {'$ref': '#/$defs/functorComponents'},
                },
            },
        },
        'identities': {
            'type': 'array',
            'items': {
                'type': 'object',
                'required': ['object', 'object_map', 'components'],
                'properties': {
                    'object': {'$ref': '#/$defs/id'},
                    'object_map': {'$ref': '#/$defs/objectMap'},
                    'components': {'$ref': '#/$defs/functorComponents'},
                },
            },
        },
    }),
}

_VALIDATORS = {kind: Draft202012Validator(schema) for kind, schema in SCHEMAS.items()}
_ENVELOPE = Draft202012Validator(ENVELOPE)


def line_of(text, needle):
    """First line of ``text`` containing ``needle``, or None."""
    if text is None or needle is None:
        return None
    for number, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return number
    return None


def error_line(error, text):
    """
    Line of the deepest named key on the error path.

    A missing required key is located at its parent; an error at the
    document root is reported on line 1.
    """
    keys = [part for part in error.absolute_path if isinstance(part, str)]
    if not keys:
        return 1 if text is not None else None
    return line_of(text, json.dumps(keys[-1]) + ':') or line_of(text, json.dumps(keys[-1]))


def _location(error):
    parts = [str(part) for part in error.absolute_path]
    return '/'.join(parts) if parts else '<document>'


def validate(data, path=None, text=None):
    """
    Validate a decoded JSON document against the envelope and its kind's schema.

    :raises ParseError: on the most relevant schema violation, with the
        line of the offending key when the source text is known
    """
    if not isinstance(data, dict):
        raise ParseError('a structure document must be a JSON object', path=path, line=1)
    for validator in (_ENVELOPE, _VALIDATORS.get(data.get('kind'))):
        error = best_match(validator.iter_errors(data))
        if error is not None:
            raise ParseError(f'{_location(error)}: {error.message}', path=path,
                             line=error_line(error, text))
    return data
