"""Diagram evaluation results: witnesses, per-check results and aggregated reports."""

from collections import Counter
from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import Enum
import logging
import math
import time

import numpy as np

from kfold_deloop.config import CheckOptions

logger = logging.getLogger(__name__)

UNDEFINED = '<undefined>'


class Status(str, Enum):
    PASS = 'pass'
    FAIL = 'fail'
    SAMPLED_PASS = 'sampled-pass'
    NOT_APPLICABLE = 'not-applicable'


@dataclass(frozen=True)
class Witness:
    diagram: str
    index: tuple
    left: object
    right: object

    def describe(self):
        index = ', '.join(str(part) for part in self.index)
        return f'{self.diagram} at ({index}): {self.left} != {self.right}'

    def to_dict(self):
        return {
            'diagram': self.diagram,
            'index': [str(part) for part in self.index],
            'left': str(self.left),
            'right': str(self.right),
        }


@dataclass
class CheckResult:
    name: str
    status: Status
    instances: int = 0
    failures: int = 0
    witnesses: list = field(default_factory=list)
    exhaustive: bool = True
    sample_size: int = None
    seed: int = None
    note: str = ''

    @property
    def passed(self):
        return self.status is not Status.FAIL

    @classmethod
    def not_applicable(cls, name, note):
        return cls(name, Status.NOT_APPLICABLE, note=note)

    def to_dict(self):
        out = {
            'name': self.name,
            'status': self.status.value,
            'instances': self.instances,
            'failures': self.failures,
            'exhaustive': self.exhaustive,
            'witnesses': [witness.to_dict() for witness in self.witnesses],
        }
        if not self.exhaustive:
            out['sample_size'] = self.sample_size
            out['seed'] = self.seed
        if self.note:
            out['note'] = self.note
        return out


def coverage_label(key):
    family, *indices = key
    return f'{family}({",".join(str(index) for index in indices)})'


@dataclass
class DiagramReport:
    suite: str
    checks: list = field(default_factory=list)
    coverage: Counter = field(default_factory=Counter)
    lookups: Counter = field(default_factory=Counter)
    wall_time: float = 0.0

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    @property
    def witnesses(self):
        return [witness for check in self.checks for witness in check.witnesses]

    def failing(self):
        return [check for check in self.checks if not check.passed]

    def find(self, name):
        """Return the checks whose name contains ``name``."""
        return [check for check in self.checks if name in check.name]

    def add(self, result, coverage_key=None):
        self.checks.append(result)
        if coverage_key is not None and result.status is not Status.NOT_APPLICABLE:
            self.coverage[coverage_key] += result.instances
        return result

    def extend(self, other, prefix=None):
        for check in other.checks:
            if prefix:
                check.name = f'{prefix}.{check.name}'
            self.checks.append(check)
        self.coverage.update(other.coverage)
        self.lookups.update(other.lookups)
        return self

    @contextmanager
    def timed(self):
        start = time.perf_counter()
        try:
            yield self
        finally:
            self.wall_time += time.perf_counter() - start

    def to_dict(self):
        out = {
            'suite': self.suite,
            'passed': self.passed,
            'wall_time': round(self.wall_time, 6),
            'checks': [check.to_dict() for check in self.checks],
            'coverage': {coverage_label(key): count
                         for key, count in sorted(self.coverage.items(), key=str)},
        }
        if self.lookups:
            out['lookups'] = {coverage_label(key): count
                              for key, count in sorted(self.lookups.items(), key=str)}
        return out

    def to_text(self, show_passing=True):
        failing = self.failing()
        verdict = 'PASS' if self.passed else 'FAIL'
        lines = [f'suite {self.suite}: {verdict} '
                 f'({len(self.checks)} checks, {len(failing)} failing, {self.wall_time:.3f} s)']
        for check in self.checks:
            if check.passed and not show_passing:
                continue
            if check.status is Status.NOT_APPLICABLE:
                lines.append(f'  [{check.status.value}] {check.name}: {check.note}')
                continue
            mode = 'exhaustive' if check.exhaustive else \
                f'sampled {check.sample_size}, seed {check.seed}'
            lines.append(f'  [{check.status.value}] {check.name} '
                         f'({check.instances} instances, {mode})')
            for witness in check.witnesses:
                lines.append(f'      {witness.describe()}')
            hidden = check.failures - len(check.witnesses)
            if hidden > 0:
                lines.append(f'      ... {hidden} more')
        return '\n'.join(lines)


class IndexSpace:
    """
    Tuples of object (or morphism) indices over which a diagram is evaluated.

    The space is enumerated in lexicographic order when its size fits the
    exhaustive budget; otherwise a seeded uniform sample is drawn, deduplicated
    and sorted so that witnesses still come out in canonical order.
    """

    def __init__(self, ranges, options=None):
        self.options = options or CheckOptions()
        self.ranges = [np.asarray(values, dtype=np.int64) for values in ranges]
        self.arity = len(self.ranges)
        self.size = math.prod(len(values) for values in self.ranges)
        self.exhaustive = self.size <= self.options.exhaustive_budget
        if self.arity == 0:
            self.columns = []
            self.count = 1
        elif self.exhaustive:
            grids = np.meshgrid(*self.ranges, indexing='ij')
            self.columns = [grid.reshape(-1) for grid in grids]
            self.count = self.size
        else:
            rng = np.random.default_rng(self.options.seed)
            positions = np.stack([rng.integers(0, len(values), size=self.options.sample)
                                  for values in self.ranges])
            positions = np.unique(positions, axis=1)
            self.columns = [values[row] for values, row in zip(self.ranges, positions)]
            self.count = positions.shape[1]
            logger.debug(f'Sampling {self.count} of {self.size} tuples (seed {self.options.seed})')

    @classmethod
    def cube(cls, n, arity, options=None, subset=None):
        values = np.arange(n) if subset is None else np.asarray(sorted(subset))
        return cls([values] * arity, options)


def compare_legs(name, columns, left, right, index_label, value_label, options=None,
                 exhaustive=True, sample_size=None, seed=None):
    """
    Compare two legs of a diagram evaluated over a column-stacked index space.

    :param columns: list of equally long index arrays, one per diagram variable
    :param left: array of leg values, negative where a composite is undefined
    :param right: array of leg values for the other leg
    :param index_label: maps a tuple of raw indices to the tuple reported in witnesses
    :param value_label: maps a raw leg value to the id reported in witnesses
    :return: CheckResult listing failures in index order
    """
    options = options or CheckOptions()
    left = np.asarray(left)
    right = np.asarray(right)
    bad = (left != right) | (left < 0) | (right < 0)
    positions = np.flatnonzero(bad)
    witnesses = []
    for position in positions[:options.max_witnesses]:
        raw = tuple(int(column[position]) for column in columns)
        witnesses.append(Witness(
            name,
            index_label(raw),
            UNDEFINED if left[position] < 0 else value_label(int(left[position])),
            UNDEFINED if right[position] < 0 else value_label(int(right[position]))))
    if len(positions):
        status = Status.FAIL
    else:
        status = Status.PASS if exhaustive else Status.SAMPLED_PASS
    return CheckResult(name, status, instances=int(left.size), failures=int(len(positions)),
                       witnesses=witnesses, exhaustive=exhaustive,
                       sample_size=None if exhaustive else sample_size,
                       seed=None if exhaustive else seed)


def compare_over(space, name, left, right, index_label, value_label):
    """Shorthand for compare_legs over an IndexSpace."""
    return compare_legs(name, space.columns, left, right, index_label, value_label,
                        options=space.options, exhaustive=space.exhaustive,
                        sample_size=space.count, seed=space.options.seed)
