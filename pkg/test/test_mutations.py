"""Single-entry mutations of the sign structure and of the enriched fixtures."""

import itertools

import pytest

from conftest import failing_names
from kfold_deloop.deloop import verify_delooping
from kfold_deloop.enrich import check_enriched_category
from kfold_deloop.monoidal import check_kfold
from kfold_deloop.utils.corpus import broken_fixtures, constant_category, twisted_category


def _mutations(bundled):
    broken = broken_fixtures(bundled)
    V = bundled['sign.kfold']
    return [
        ('eta12 IIXX', broken['interchange_unit'], 'product1', 'unit'),
        ('eta12 IXIX', V.with_interchanger_component(1, 2, ('I', 'X', 'I', 'X'), 'g0'),
         'absorption1', ''),
        ('eta12 XXXX', broken['internal_assoc'], 'product1', 'pentagon'),
        ('alpha2 parity', broken['external_assoc'], 'associator1', ''),
        ('eta23 XXXX', broken['giant_hexagon'], 'interchanger12', ''),
    ]


def _replay(V):
    return verify_delooping(V, [constant_category(V), twisted_category(V)])


def test_each_mutation_is_caught_by_its_delooped_check(bundled):
    for label, V, prefix, marker in _mutations(bundled):
        report = _replay(V)
        assert not report.passed, label
        assert all(check.passed for check in report.find('sample[')), label
        assert any(name.startswith(prefix) and marker in name
                   for name in failing_names(report)), label


def test_unmutated_replay_covers_every_family(sign):
    report = _replay(sign)
    assert report.passed
    for family in ('internal_unit', 'external_unit', 'internal_assoc', 'external_assoc'):
        assert report.coverage[(family, 1, 2)] > 0
    assert report.coverage[('giant_hexagon', 1, 2, 3)] > 0


def _replacements(C, current):
    """Every other morphism id, paired with whether it keeps the endpoints of ``current``."""
    old = C.morphisms[C.morphism_index(current)]
    for m in C.morphisms:
        if m.id != current:
            yield m.id, (m.dom, m.cod) == (old.dom, old.cod)


def _component_replacements(V):
    C = V.base
    for i, family in enumerate(V.associators, start=1):
        for objs in itertools.product(C.objects, repeat=3):
            for mid, typed in _replacements(C, family.component(*objs)):
                yield f'alpha{i}{objs}->{mid}', typed, V.with_associator_component(i, objs, mid)
    for (i, j), family in V.interchangers.items():
        for objs in itertools.product(C.objects, repeat=4):
            for mid, typed in _replacements(C, family.component(*objs)):
                yield f'eta{i}{j}{objs}->{mid}', typed, V.with_interchanger_component(
                    i, j, objs, mid)


@pytest.mark.slow
def test_every_structure_map_replacement_is_detected(sign):
    replacements = list(_component_replacements(sign))
    assert len(replacements) == (3 * 8 + 3 * 16) * 3
    for label, typed, V in replacements:
        report = check_kfold(V)
        assert not report.passed, label
        if not typed:
            assert any('typing' in name for name in failing_names(report)), label


def test_every_enriched_structure_map_replacement_is_detected(constant, twisted):
    C = constant.base.base
    for A in (constant, twisted):
        for key in itertools.product(A.objects, repeat=3):
            for mid, typed in _replacements(C, A.composition_of(*key)):
                report = check_enriched_category(A.with_composition(key, mid))
                assert not report.passed, (key, mid)
                if not typed:
                    assert 'M.typing' in failing_names(report), (key, mid)
        for obj in A.objects:
            for mid, typed in _replacements(C, A.identity_of(obj)):
                report = check_enriched_category(A.with_identity(obj, mid))
                assert not report.passed, (obj, mid)
                if not typed:
                    assert 'j.typing' in failing_names(report), (obj, mid)
