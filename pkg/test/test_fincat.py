import numpy as np
import pytest

from conftest import failing_names, witness_indices
from kfold_deloop.errors import MalformedTable, NonComposable, UnknownMorphism
from kfold_deloop.fincat import (
    check_category_laws, check_functor_laws, check_naturality, compose, FinCategory, FinFunctor,
    NatFamily, power_category, product_category, projection_functor, terminal_category)
from kfold_deloop.utils.corpus import boolean_poset, sign_category


def test_compose_looks_up_the_table():
    B = boolean_poset()
    S = sign_category()
    assert compose(B, 'id1', 'm') == 'm'
    assert compose(S, 'g0', 'g0') == 'e0'
    assert compose(S, 'g1', 'e1') == 'g1'


def test_compose_rejects_mismatched_endpoints():
    with pytest.raises(NonComposable):
        compose(boolean_poset(), 'm', 'id1')
    with pytest.raises(NonComposable):
        compose(sign_category(), 'g0', 'g1')


def test_compose_rejects_unknown_ids():
    with pytest.raises(UnknownMorphism):
        compose(sign_category(), 'h', 'e0')


def test_bundled_categories_pass():
    assert check_category_laws(boolean_poset()).passed
    report = check_category_laws(sign_category())
    assert report.passed
    assert report.find('associativity')[0].instances == 16


def test_idempotent_g1_breaks_the_groupoid():
    S = sign_category().with_composition('g1', 'g1', 'g1')
    report = check_category_laws(S)
    assert failing_names(report) == ['invertibility']
    assert witness_indices(report, 'invertibility') == {('g1',)}


def test_missing_composite_is_reported_not_raised():
    S = sign_category()
    table = S.table.copy()
    table[S.morphism_index('g0'), S.morphism_index('g0')] = -1
    broken = FinCategory(S.objects, S.morphisms, S.identity, table, name='S-', groupoid=True)
    report = check_category_laws(broken)
    assert 'composition_domain' in failing_names(report)
    assert ('g0', 'g0') in witness_indices(report, 'composition_domain')


def test_unknown_morphism_in_tables_raises():
    with pytest.raises(MalformedTable):
        FinCategory.from_tables(['*'], [('e', '*', '*')], {'*': 'e'}, {('e', 'e'): 'f'})


def test_product_counts():
    B = boolean_poset()
    P = product_category(B, B)
    assert P.n_objects == 4
    assert P.n_morphisms == 9
    assert check_category_laws(P).passed


def test_product_with_terminal_is_a_copy():
    S = sign_category()
    P = product_category(terminal_category(), S)
    assert P.n_objects == S.n_objects
    assert P.n_morphisms == S.n_morphisms
    assert check_category_laws(P).passed


def test_product_keeps_empty_homs_empty():
    S = sign_category()
    P = product_category(S, S)
    assert P.hom(('I', 'I'), ('X', 'X')) == []
    assert len(P.hom(('I', 'X'), ('I', 'X'))) == 4


def test_power_category_is_cached():
    S = sign_category()
    assert power_category(S, 2) is power_category(S, 2)
    assert power_category(S, 3).n_objects == 8


def test_projections_are_functors():
    S = sign_category()
    P = product_category(S, boolean_poset())
    for k in range(2):
        assert check_functor_laws(projection_functor(P, k)).passed


def test_identity_functor_passes():
    assert check_functor_laws(FinFunctor.identity(sign_category())).passed


def test_functor_breaking_identities_fails():
    S = sign_category()
    F = FinFunctor.identity(S).with_morphism('e0', 'g0')
    report = check_functor_laws(F)
    assert 'identities' in failing_names(report)
    assert ('I',) in witness_indices(report, 'identities')


def test_naturality_of_identity_family():
    S = sign_category()
    F = FinFunctor.identity(S)
    family = NatFamily(S, 1, S.identity, name='one')
    assert check_naturality(F, F, family).passed


def test_naturality_square_fails_against_the_trivial_homomorphism():
    S = sign_category()
    F = FinFunctor.identity(S)
    G = FinFunctor.from_maps(S, S, {'I': 'I', 'X': 'X'},
                             {'e0': 'e0', 'g0': 'e0', 'e1': 'e1', 'g1': 'e1'}, name='trivial')
    assert check_functor_laws(G).passed
    report = check_naturality(F, G, NatFamily(S, 1, S.identity, name='one'))
    assert failing_names(report) == ['one.naturality']
    assert witness_indices(report, 'naturality') == {('g0',), ('g1',)}


def test_family_typing_is_checked():
    S = sign_category()
    F = FinFunctor.identity(S)
    family = NatFamily(S, 1, np.array([S.morphism_index('e1'), S.morphism_index('e1')]),
                       name='bad')
    report = check_naturality(F, F, family)
    assert 'bad.typing' in failing_names(report)
