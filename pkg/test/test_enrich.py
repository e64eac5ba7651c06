import itertools

import numpy as np
import pytest

from conftest import failing_names, witness_indices
from kfold_deloop.enrich import (
    check_enriched_category, check_enriched_functor, check_v_natural, compare_categories,
    compose_enriched_functors, EnrichedCategory, EnrichedFunctor, EnrichedNatTransf,
    functors_equal, identity_functor, identity_transformation, transformations_equal,
    vertical_compose, whisker_left, whisker_right)
from kfold_deloop.errors import BaseMismatch, DanglingHom, MalformedTable, NotComposable
from kfold_deloop.utils.corpus import (
    search_twisted_categories, sign_transformation, swap_functor)


def test_preorders_over_the_boolean_base(chain, vee):
    assert check_enriched_category(chain).passed
    assert check_enriched_category(vee).passed
    assert chain.hom_object('b', 'a') == '0'
    assert chain.composition_of('a', 'a', 'b') == 'id1'


def test_thin_rejects_a_non_transitive_hom(boolean):
    hom = {(x, y): '1' for x, y in itertools.product('abc', repeat=2)}
    hom[('a', 'c')] = '0'
    with pytest.raises(MalformedTable):
        EnrichedCategory.thin(boolean, 'abc', hom, name='broken')


def test_hom_objects_must_exist(sign):
    with pytest.raises(DanglingHom):
        EnrichedCategory.from_tables(sign, ['p'], {('p', 'p'): 'Y'}, {('p', 'p', 'p'): 'e0'},
                                     {'p': 'e0'})


def test_constant_and_twisted_categories_pass(constant, twisted):
    assert check_enriched_category(constant).passed
    report = check_enriched_category(twisted)
    assert report.passed
    assert twisted.composition_of('a', 'b', 'a') == 'g0'


def test_unit_triangle_catches_a_twisted_identity_composite(constant):
    report = check_enriched_category(constant.with_composition(('p', 'p', 'p'), 'g0'))
    assert 'left_unit' in failing_names(report)
    assert ('p', 'p') in witness_indices(report, 'left_unit')


def test_enriched_pentagon_catches_a_half_twist(twisted):
    report = check_enriched_category(twisted.with_composition(('a', 'b', 'a'), 'e0'))
    assert 'pentagon' in failing_names(report)


def test_ill_typed_composition_is_reported(twisted):
    report = check_enriched_category(twisted.with_composition(('a', 'b', 'a'), 'g1'))
    assert 'M.typing' in failing_names(report)
    assert ('a', 'b', 'a') in witness_indices(report, 'M.typing')


def test_search_finds_the_twisted_category_after_the_untwisted_one(sign, twisted):
    hom = {(x, y): 'I' if x == y else 'X' for x, y in itertools.product('ab', repeat=2)}
    found = search_twisted_categories(sign, ['a', 'b'], hom)
    untwisted = next(found)
    assert np.all(untwisted.composition == sign.base.identity[sign.base.dom[
        untwisted.composition]])
    assert compare_categories(next(found), twisted).passed


def test_identity_and_swap_functors(constant, twisted):
    assert check_enriched_functor(identity_functor(twisted)).passed
    swap = swap_functor(constant)
    assert check_enriched_functor(swap).passed
    assert swap.apply_object('p') == 'q'


def test_component_assignments_on_the_constant_category(constant):
    passing = []
    for assignment in itertools.product(('e0', 'g0'), repeat=4):
        components = dict(zip(itertools.product('pq', repeat=2), assignment))
        T = EnrichedFunctor.from_maps(constant, constant, {'p': 'p', 'q': 'q'}, components)
        if check_enriched_functor(T).passed:
            passing.append(assignment)
    assert passing == [('e0', 'e0', 'e0', 'e0'), ('e0', 'g0', 'g0', 'e0')]


def test_broken_swap_fails_the_composition_square(constant):
    report = check_enriched_functor(swap_functor(constant).with_component('p', 'q', 'g0'))
    assert ('p', 'q', 'p') in witness_indices(report, 'composition')


def test_functors_need_a_common_base(constant, chain):
    with pytest.raises(BaseMismatch):
        EnrichedFunctor(constant, chain, [0, 0], [[0, 0], [0, 0]])


def test_swap_squares_to_the_identity(constant):
    swap = swap_functor(constant)
    assert functors_equal(compose_enriched_functors(swap, swap), identity_functor(constant))
    assert not functors_equal(swap, identity_functor(constant))


def test_composition_needs_matching_categories(constant, twisted):
    with pytest.raises(NotComposable):
        compose_enriched_functors(identity_functor(constant), identity_functor(twisted))


def test_identity_transformations_are_natural(twisted, constant):
    for A in (twisted, constant):
        assert check_v_natural(identity_transformation(identity_functor(A))).passed


def test_constant_sign_transformation_is_natural(constant, twisted):
    assert check_v_natural(sign_transformation(identity_functor(constant))).passed
    assert check_v_natural(sign_transformation(identity_functor(twisted))).passed


def test_unbalanced_transformation_fails_the_hexagon(twisted):
    Q = identity_functor(twisted)
    C = twisted.base.base
    alpha = EnrichedNatTransf.from_mapping(Q, Q, {'a': 'g0', 'b': 'e0'}, name='half')
    report = check_v_natural(alpha)
    assert ('a', 'b') in witness_indices(report, 'hexagon')
    assert alpha.component('a') == 'g0'
    assert C.morphism_index('g0') == alpha.components[0]


def test_vertical_composition_adds_signs(constant):
    g = sign_transformation(identity_functor(constant))
    gg = vertical_compose(g, g)
    assert [gg.component(a) for a in constant.objects] == ['e0', 'e0']


def _transformations(Q):
    C = Q.source.base.base
    for assignment in itertools.product(('e0', 'g0'), repeat=Q.source.n_objects):
        yield EnrichedNatTransf(Q, Q, [C.morphism_index(mid) for mid in assignment],
                                name=''.join(assignment))


def test_vertical_composition_is_associative_and_unital(constant, twisted):
    for A in (constant, twisted):
        Q = identity_functor(A)
        family = [alpha for alpha in _transformations(Q) if check_v_natural(alpha).passed]
        assert family
        one = identity_transformation(Q)
        for alpha in family:
            assert transformations_equal(vertical_compose(one, alpha), alpha)
            assert transformations_equal(vertical_compose(alpha, one), alpha)
        for alpha, beta, gamma in itertools.product(family, repeat=3):
            assert transformations_equal(
                vertical_compose(gamma, vertical_compose(beta, alpha)),
                vertical_compose(vertical_compose(gamma, beta), alpha))


def test_whiskering_interchange(constant):
    T = identity_functor(constant)
    Q = swap_functor(constant)
    alphas = [a for a in _transformations(T) if check_v_natural(a).passed]
    betas = [b for b in _transformations(Q) if check_v_natural(b).passed]
    assert alphas and betas
    for alpha, beta in itertools.product(alphas, betas):
        left = vertical_compose(whisker_left(Q, alpha), whisker_right(beta, T))
        right = vertical_compose(whisker_right(beta, T), whisker_left(Q, alpha))
        assert transformations_equal(left, right)
        assert check_v_natural(left).passed


def test_whiskering_distributes_over_vertical_composition(constant):
    T = identity_functor(constant)
    P = swap_functor(constant)
    family = [alpha for alpha in _transformations(T) if check_v_natural(alpha).passed]
    assert len(family) > 1
    for alpha, beta in itertools.product(family, repeat=2):
        assert transformations_equal(
            whisker_left(P, vertical_compose(beta, alpha)),
            vertical_compose(whisker_left(P, beta), whisker_left(P, alpha)))
        assert transformations_equal(
            whisker_right(vertical_compose(beta, alpha), P),
            vertical_compose(whisker_right(beta, P), whisker_right(alpha, P)))


def test_whiskering_an_identity_gives_an_identity(constant):
    T = identity_functor(constant)
    Q = swap_functor(constant)
    whiskered = whisker_left(Q, identity_transformation(T))
    assert transformations_equal(whiskered,
                                 identity_transformation(compose_enriched_functors(Q, T)))
