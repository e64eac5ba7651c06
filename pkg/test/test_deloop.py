import pytest

from conftest import failing_names
from kfold_deloop.deloop import (
    arrow_v2category, associator_component, check_level2_product, check_v2category,
    interchange_component, relabel_functor, sample_two_cells, tensor_enriched,
    tensor_enriched_level2, unit_category, unit_v2category, verify_delooping)
from kfold_deloop.enrich import (
    check_enriched_category, check_enriched_functor, compare_categories, identity_functor,
    identity_transformation)
from kfold_deloop.errors import BaseMismatch, IndexOutOfRange
from kfold_deloop.utils.corpus import (
    boolean_kfold, broken_fixtures, chain_preorder, sign_transformation)


def _without_time(report):
    data = report.to_dict()
    del data['wall_time']
    return data


def test_sign_delooping_passes(sign, constant, twisted):
    report = verify_delooping(sign, [constant, twisted])
    assert report.passed
    for key in (('internal_unit', 1, 2), ('internal_assoc', 1, 2), ('external_unit', 1, 2),
                ('external_assoc', 1, 2), ('giant_hexagon', 1, 2, 3),
                ('internal_assoc', 1, 3), ('delooped_pentagon', 1), ('delooped_pentagon', 2),
                ('delooped_internal_assoc', 1, 2)):
        assert report.coverage[key] > 0, key
    assert report.find('pentagon(1)1[constant,twisted,constant,twisted]')
    assert report.find('interchanger12[twisted,twisted,twisted,twisted]')


def test_boolean_delooping_passes_on_a_chain(boolean, chain):
    report = verify_delooping(boolean, [chain])
    assert report.passed
    assert report.find('absorption1.left[chain]')


@pytest.mark.slow
def test_boolean_delooping_passes_on_two_preorders(boolean, chain, vee):
    assert verify_delooping(boolean, [chain, vee]).passed


def test_two_fold_base_has_no_delooped_interchangers():
    V = boolean_kfold(k=2)
    report = verify_delooping(V, [chain_preorder(V)])
    assert report.passed
    (entry,) = report.find('interchangers')
    assert entry.status.value == 'not-applicable'


def test_one_fold_base_does_not_deloop():
    V = boolean_kfold(k=1)
    report = verify_delooping(V, [chain_preorder(V)])
    (entry,) = report.checks
    assert entry.name == 'delooping'
    assert entry.status.value == 'not-applicable'


def test_sample_must_share_the_base(sign, chain):
    with pytest.raises(BaseMismatch):
        verify_delooping(sign, [chain])


def test_transformations_must_share_the_base(sign, constant, chain):
    with pytest.raises(BaseMismatch):
        verify_delooping(sign, [constant],
                         transformations=[identity_transformation(identity_functor(chain))])


def test_sign_transformations_are_two_natural(sign, constant):
    report = verify_delooping(sign, [constant],
                              transformations=[sign_transformation(identity_functor(constant))])
    assert report.passed
    assert report.find('naturality1[g0,g0,g0].two_naturality')


def test_unit_category_is_absorbed(sign, twisted):
    I = unit_category(sign)
    assert check_enriched_category(I).passed
    for product in (tensor_enriched(I, twisted, 1), tensor_enriched(twisted, I, 2)):
        assert compare_categories(product.relabel(twisted.objects), twisted).passed
        assert check_enriched_functor(relabel_functor(product, twisted)).passed
    assert tensor_enriched(I, twisted, 1).objects == (('0', 'a'), ('0', 'b'))


def test_product_of_twisted_categories(sign, twisted):
    P = tensor_enriched(twisted, twisted, 1)
    assert P.n_objects == 4
    assert P.hom_object(('a', 'a'), ('b', 'b')) == 'I'
    assert P.hom_object(('a', 'a'), ('a', 'b')) == 'X'
    assert check_enriched_category(P).passed


def test_delooped_index_is_bounded(twisted):
    with pytest.raises(IndexOutOfRange):
        tensor_enriched(twisted, twisted, 3)


def test_associator_component_is_an_enriched_functor(constant, twisted):
    functor = associator_component(twisted, constant, twisted, 1)
    assert functor.source.n_objects == 8
    assert check_enriched_functor(functor).passed


def test_interchange_component_swaps_the_middle(constant, twisted):
    functor = interchange_component(constant, twisted, constant, twisted, 1, 2)
    assert functor.apply_object((('p', 'a'), ('q', 'b'))) == (('p', 'q'), ('a', 'b'))
    assert check_enriched_functor(functor).passed


def test_interchange_component_bounds(twisted):
    with pytest.raises(IndexOutOfRange):
        interchange_component(twisted, twisted, twisted, twisted, 2, 1)
    V = boolean_kfold(k=2)
    A = chain_preorder(V)
    with pytest.raises(IndexOutOfRange):
        interchange_component(A, A, A, A, 1, 2)


def test_bundled_v2categories_pass(sign, bundled):
    assert check_v2category(unit_v2category(sign)).passed
    assert check_v2category(bundled['arrow.v2category']).passed
    assert check_v2category(arrow_v2category(sign, bundled['constant.enriched'])).passed


def test_broken_v2category_fails_a_unit_law(bundled):
    report = check_v2category(broken_fixtures(bundled)['v2category'])
    assert not report.passed
    assert any(name.startswith('composition[u,v,v]') for name in failing_names(report))


def test_level2_product_hom_objects(bundled):
    arrow = bundled['arrow.v2category']
    product, report = check_level2_product(arrow, arrow, 1)
    assert product.n_objects == 4
    assert product.hom[(('u', 'u'), ('v', 'v'))].n_objects == 4
    (check,) = report.find('second_level_hom')
    assert check.passed and check.instances > 0


def test_level2_index_is_bounded(bundled):
    arrow = bundled['arrow.v2category']
    with pytest.raises(IndexOutOfRange):
        tensor_enriched_level2(arrow, arrow, 2)


def test_worker_threads_give_the_same_report(sign, constant, twisted, options):
    serial = verify_delooping(sign, [constant, twisted], options)
    threaded = verify_delooping(sign, [constant, twisted], options.updated(workers=2))
    assert _without_time(serial) == _without_time(threaded)


def test_default_two_cells_go_beyond_identities(sign, constant, twisted):
    cells = sample_two_cells([constant, twisted])
    assert [cell.name for cell in cells if ':' in cell.name] == ['constant:g0/g0', 'twisted:g0/g0']
    assert len(cells) == 4
    report = verify_delooping(sign, [constant, twisted])
    assert report.passed
    assert report.find('naturality1[constant:g0/g0')
    two_naturality = report.find('two_naturality')
    identities_only = 2 ** 3 * (sign.k - 1)
    assert len(two_naturality) == len(cells) ** 3 * (sign.k - 1) > identities_only
    assert report.coverage[('delooped_naturality', 1)] > 0


def test_boolean_sample_has_only_identity_two_cells(chain, vee):
    cells = sample_two_cells([chain, vee])
    assert len(cells) == 2
    assert all(':' not in cell.name for cell in cells)


def test_two_cell_search_respects_the_budget(constant, options):
    (cell,) = sample_two_cells([constant], options.updated(exhaustive_budget=1))
    assert ':' not in cell.name


def test_delooping_coverage_is_measured_from_lookups(sign, constant, twisted):
    report = verify_delooping(sign, [constant, twisted])
    replayed = [key for key in report.coverage if not key[0].startswith('delooped_')]
    assert replayed
    assert all(key[1] == 1 for key in replayed)
    assert ('giant_hexagon', 1, 2, 3) in report.coverage
    assert report.lookups[('eta', 1, 2)] > 0
    assert report.lookups[('eta', 1, 3)] > 0
    assert {key for key in report.lookups if key[0] == 'eta' and key[1] >= 2} == {('eta', 2, 3)}
    for check in report.find('components.'):
        assert check.note


def test_level2_coverage_reads_the_upper_interchangers(boolean, chain):
    arrow = arrow_v2category(boolean, chain)
    product, report = check_level2_product(arrow, arrow, 1)
    assert report.passed
    assert product.n_objects == 4
    assert report.lookups[('eta', 2, 3)] > 0
    assert report.coverage[('external_unit', 2, 3)] > 0
    assert report.coverage[('external_assoc', 2, 3)] > 0
    assert report.coverage[('giant_hexagon', 1, 2, 3)] > 0
    assert {key[1] for key in report.coverage if key[0] != 'giant_hexagon'} == {2}


def test_unit_v2category_is_absorbed(boolean, chain):
    arrow = arrow_v2category(boolean, chain)
    unit = unit_v2category(boolean)
    for left, right in ((unit, arrow), (arrow, unit)):
        product, report = check_level2_product(left, right, 1)
        assert report.passed
        assert product.n_objects == 2
    product, _ = check_level2_product(unit, arrow, 1)
    hom = product.hom[(('*', 'u'), ('*', 'v'))]
    assert compare_categories(hom.relabel(chain.objects), chain).passed


def test_composition_mutation_is_caught_by_the_category_not_the_interchanger(twisted):
    mutated = twisted.with_composition(('a', 'b', 'a'), 'e0')
    assert 'pentagon' in failing_names(check_enriched_category(mutated))
    # the flipped sign enters both legs of the functor law
    functor = interchange_component(mutated, twisted, mutated, twisted, 1, 2)
    assert check_enriched_functor(functor).passed
