"""
Batch harness: load structure documents, run the axiom suites and the delooping replay.

``kfold check FILE`` dispatches on the document kind; ``kfold deloop BASE CAT...``
replays the delooped structure on the enriched categories (and, for
V-2-category documents, one level up).
"""

import argparse
from importlib.metadata import PackageNotFoundError, version
import itertools
import json
import logging
import os

from kfold_deloop.config import CheckOptions, load_params_file
from kfold_deloop.deloop import check_level2_product, check_v2category, tensor_enriched
from kfold_deloop.deloop import verify_delooping
from kfold_deloop.enrich import check_enriched_category, check_enriched_functor
from kfold_deloop.errors import CheckFailure, KFoldError, ParseError
from kfold_deloop.fincat import check_category_laws
from kfold_deloop.monoidal import check_kfold, check_symmetric
from kfold_deloop.report import DiagramReport
from kfold_deloop.utils.documents import DocumentStore, FORMAT_VERSION, write_document

LOG_FORMAT = '[%(levelname)s] [%(created).3f] [%(name)s]: %(message)s'

try:
    TOOL_VERSION = version('kfold_deloop')
except PackageNotFoundError:
    TOOL_VERSION = '0.0.0'


def _combined(suite, *reports):
    report = DiagramReport(suite)
    for part in reports:
        report.extend(part, prefix=part.suite)
        report.wall_time += part.wall_time
    return report


def _check_kfold_document(V, options):
    return _combined(f'kfold[{V.name}]', check_category_laws(V.base, options),
                     check_kfold(V, options))


def _check_symmetric_document(Sym, options):
    return _combined(f'symmetric[{Sym.name}]', check_category_laws(Sym.base, options),
                     check_symmetric(Sym, options))


def _check_functor_document(T, options):
    return _combined(f'enriched-functor[{T.name}]', check_enriched_category(T.source, options),
                     check_enriched_category(T.target, options),
                     check_enriched_functor(T, options))


CHECKERS = {
    'category': check_category_laws,
    'kfold': _check_kfold_document,
    'symmetric': _check_symmetric_document,
    'enriched': check_enriched_category,
    'enriched-functor': _check_functor_document,
    'v2category': check_v2category,
}


def exit_status(reports):
    """0 when every check of every report passes, the CheckFailure code otherwise."""
    return 0 if all(report.passed for report in reports) else CheckFailure.exit_code


def run_check(path, options=None, store=None):
    """
    Check the structure stored at ``path`` with the suite for its kind.

    :return: (exit status, [DiagramReport])
    """
    options = options or CheckOptions()
    store = store or DocumentStore()
    document, structure = store.load_document(path)
    report = CHECKERS[document.kind](structure, options)
    return exit_status([report]), [report]


def product_file_name(A, B, i, kind='enriched'):
    return f'{A.name}.x{i}.{B.name}.{kind}.json'


def run_deloop(v_path, cat_paths, options=None, emit=None, store=None):
    """
    Replay the delooped structure of the base at ``v_path`` on the given categories.

    Enriched documents form the sample of verify_delooping; V-2-category
    documents are multiplied pairwise one level up. With ``emit`` every
    product is written there as a document referring to its inputs by path.

    :return: (exit status, [DiagramReport])
    """
    options = options or CheckOptions()
    store = store or DocumentStore()
    V = store.load(v_path, 'kfold')
    enriched, level2 = [], []
    refs = {id(V): v_path}
    for path in cat_paths:
        document, structure = store.load_document(path)
        if document.kind == 'enriched':
            enriched.append(structure)
        elif document.kind == 'v2category':
            level2.append(structure)
        else:
            raise ParseError(f'expected an enriched or v2category document, got {document.kind}',
                             path=path, line=1)
        refs[id(structure)] = path

    reports = [verify_delooping(V, enriched, options)]
    products = []
    if emit is not None:
        for i in range(1, V.k):
            products += [(product_file_name(A, B, i), tensor_enriched(A, B, i))
                         for A, B in itertools.product(enriched, repeat=2)]
    for U, W in itertools.product(level2, repeat=2):
        for i in range(1, V.k - 1):
            product, report = check_level2_product(U, W, i, options)
            reports.append(report)
            products.append((product_file_name(U, W, i, 'v2category'), product))
    if emit is not None:
        os.makedirs(emit, exist_ok=True)
        for name, product in products:
            write_document(product, os.path.join(emit, name), refs)
    return exit_status(reports), reports


def machine_report(command, inputs, options, status, reports):
    return {
        'tool': 'kfold_deloop',
        'version': TOOL_VERSION,
        'format_version': FORMAT_VERSION,
        'command': command,
        'inputs': list(inputs),
        'options': {
            'exhaustive_budget': options.exhaustive_budget,
            'sample': options.sample,
            'seed': options.seed,
        },
        'exit_status': status,
        'reports': [report.to_dict() for report in reports],
    }


class Runner:
    """Common plumbing of the subcommands: named logger, options, report output."""

    name = None

    def __init__(self, options):
        self.options = options
        self._logger = logging.getLogger(f'kfold_deloop.{self.name}')

    def get_logger(self):
        return self._logger

    def inputs(self, parsed):
        raise NotImplementedError

    def execute(self, parsed):
        raise NotImplementedError

    def run(self, parsed):
        status, reports = self.execute(parsed)
        machine = machine_report(parsed.command, self.inputs(parsed), self.options, status,
                                 reports)
        if parsed.format == 'machine':
            print(json.dumps(machine, indent=2, sort_keys=True))
        else:
            for report in reports:
                print(report.to_text(show_passing=not parsed.quiet))
        if parsed.report:
            with open(parsed.report, 'w') as handle:
                json.dump(machine, handle, indent=2, sort_keys=True)
                handle.write('\n')
            self.get_logger().info(f'Wrote machine report to {parsed.report}')
        if status:
            witness = next((w for report in reports for w in report.witnesses), None)
            failure = CheckFailure(f'{", ".join(self.inputs(parsed))}: '
                                   + (witness.describe() if witness else 'checks failed'))
            self.get_logger().error(str(failure))
        else:
            self.get_logger().info('All checks pass')
        return status


class CheckRunner(Runner):

    name = 'kfold_check'

    def inputs(self, parsed):
        return [parsed.path]

    def execute(self, parsed):
        self.get_logger().info(f'Checking {parsed.path}')
        return run_check(parsed.path, self.options)


class DeloopRunner(Runner):

    name = 'kfold_deloop'

    def inputs(self, parsed):
        return [parsed.base] + parsed.categories

    def execute(self, parsed):
        self.get_logger().info(f'Delooping {parsed.base} over {len(parsed.categories)} documents')
        return run_deloop(parsed.base, parsed.categories, self.options, emit=parsed.emit)


RUNNERS = {'check': CheckRunner, 'deloop': DeloopRunner}


def build_parser():
    parser = argparse.ArgumentParser(
        prog='kfold', description='Check k-fold monoidal and enriched structures.')
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--exhaustive-budget', type=int, default=None,
                        help='largest index space evaluated exhaustively (default 1000000)')
    common.add_argument('--sample', type=int, default=None,
                        help='sample size for index spaces over budget (default 10000)')
    common.add_argument('--seed', type=int, default=None)
    common.add_argument('--workers', type=int, default=None)
    common.add_argument('--max-witnesses', type=int, default=None)
    common.add_argument('--format', choices=('text', 'machine'), default='text')
    common.add_argument('--report', default=None, help='also write the machine report here')
    common.add_argument('--quiet', action='store_true', help='list failing checks only')
    common.add_argument('--params-file', default=None)
    common.add_argument('--log-level', default='INFO')

    commands = parser.add_subparsers(dest='command', required=True)
    check = commands.add_parser('check', parents=[common], help='run the axiom suites')
    check.add_argument('path')
    deloop = commands.add_parser('deloop', parents=[common],
                                 help='replay the delooped structure on enriched categories')
    deloop.add_argument('base')
    deloop.add_argument('categories', nargs='+')
    deloop.add_argument('--emit', default=None, metavar='DIR',
                        help='write the constructed products to DIR')
    return parser


def resolve_options(parsed, runner_name):
    """Layer explicit flags over the parameter file block over the defaults."""
    options = CheckOptions()
    if parsed.params_file:
        options = options.updated(**load_params_file(parsed.params_file, runner_name))
    return options.updated(exhaustive_budget=parsed.exhaustive_budget, sample=parsed.sample,
                           seed=parsed.seed, workers=parsed.workers,
                           max_witnesses=parsed.max_witnesses)


def main(args=None):
    parsed = build_parser().parse_args(args)
    logging.basicConfig(level=parsed.log_level.upper(), format=LOG_FORMAT)
    runner_cls = RUNNERS[parsed.command]
    logger = logging.getLogger('kfold_deloop.cli')
    try:
        options = resolve_options(parsed, runner_cls.name)
    except ValueError as e:
        logger.error(f'invalid options: {e}')
        return ParseError.exit_code
    except KFoldError as e:
        logger.error(str(e))
        return e.exit_code
    try:
        return runner_cls(options).run(parsed)
    except KFoldError as e:
        logger.error(str(e))
        return e.exit_code


if __name__ == '__main__':
    raise SystemExit(main())
