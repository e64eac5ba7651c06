import pytest

from kfold_deloop.config import CheckOptions
from kfold_deloop.utils.corpus import corpus, write_corpus


@pytest.fixture(scope='session')
def bundled():
    return corpus()


@pytest.fixture(scope='session')
def boolean(bundled):
    return bundled['boolean.kfold']


@pytest.fixture(scope='session')
def sign_sym(bundled):
    return bundled['sign.symmetric']


@pytest.fixture(scope='session')
def sign(bundled):
    return bundled['sign.kfold']


@pytest.fixture(scope='session')
def constant(bundled):
    return bundled['constant.enriched']


@pytest.fixture(scope='session')
def twisted(bundled):
    return bundled['twisted.enriched']


@pytest.fixture(scope='session')
def chain(bundled):
    return bundled['chain.enriched']


@pytest.fixture(scope='session')
def vee(bundled):
    return bundled['vee.enriched']


@pytest.fixture
def options():
    return CheckOptions()


@pytest.fixture
def corpus_dir(tmp_path):
    write_corpus(str(tmp_path))
    return tmp_path


def failing_names(report):
    return [check.name for check in report.failing()]


def witness_indices(report, name=''):
    return {witness.index for check in report.find(name) for witness in check.witnesses}
