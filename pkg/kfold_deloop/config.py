"""Check options and JSON parameter files."""

from dataclasses import dataclass, fields, replace
import json
import logging

from jsonschema import Draft202012Validator
from jsonschema.exceptions import best_match

from kfold_deloop.errors import ParseError
from kfold_deloop.utils.schemas import error_line

logger = logging.getLogger(__name__)

DEFAULT_EXHAUSTIVE_BUDGET = 10 ** 6


@dataclass(frozen=True)
class CheckOptions:
    exhaustive_budget: int = DEFAULT_EXHAUSTIVE_BUDGET
    sample: int = 10000
    seed: int = 0
    max_witnesses: int = 20
    workers: int = 1

    def __post_init__(self):
        if self.exhaustive_budget < 0 or self.sample <= 0:
            raise ValueError('exhaustive_budget must be >= 0 and sample > 0')
        if self.max_witnesses <= 0 or self.workers <= 0:
            raise ValueError('max_witnesses and workers must be positive')

    def updated(self, **overrides):
        """Return a copy with every non-None override applied."""
        return replace(self, **{key: value for key, value in overrides.items()
                                if value is not None})


PARAMS_SCHEMA = {
    '$schema': 'https://json-schema.org/draft/2020-12/schema',
    'type': 'object',
    'additionalProperties': {
        'type': 'object',
        'properties': {
            'parameters': {
                'type': 'object',
                'additionalProperties': False,
                'properties': {option.name: {'type': 'integer'}
                               for option in fields(CheckOptions)},
            },
        },
    },
}

_PARAMS = Draft202012Validator(PARAMS_SCHEMA)


def load_params_file(path, runner_name):
    """
    Read the parameters block for one runner from a JSON parameter file.

    The layout mirrors a ROS parameter file::

        {"kfold_check": {"parameters": {"seed": 7, "sample": 500}}}

    :param path: parameter file path
    :param runner_name: top-level key to read
    :return: dict of option overrides, empty when the runner has no block
    """
    try:
        with open(path, 'r') as handle:
            text = handle.read()
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, path=path, line=e.lineno) from e
    except OSError as e:
        raise ParseError(str(e), path=path) from e

    error = best_match(_PARAMS.iter_errors(document))
    if error is not None:
        raise ParseError(error.message, path=path, line=error_line(error, text))
    block = document.get(runner_name, {}).get('parameters', {})
    logger.debug(f'Loaded {len(block)} parameters for {runner_name} from {path}')
    return block
