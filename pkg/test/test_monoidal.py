import itertools

import pytest

from conftest import failing_names, witness_indices
from kfold_deloop.errors import IndexOutOfRange, NotSymmetric, StructureMismatch
from kfold_deloop.fincat import check_functor_laws, NatFamily
from kfold_deloop.monoidal import (
    check_giant_hexagon, check_interchange_assoc, check_interchange_units, check_kfold,
    check_monoidal_functor, check_monoidal_nat, check_pentagon, check_strict_units,
    check_symmetric, collapse_diagnostic, compose_monoidal_functors, constant_unit_functor,
    from_symmetric, identity_monoidal_functor, is_identity_family)
from kfold_deloop.utils.corpus import (
    boolean_kfold, broken_fixtures, twisted_identity_functor, z2_braidings)


def test_bundled_structures_pass(boolean, sign):
    assert check_kfold(boolean).passed
    report = check_kfold(sign)
    assert report.passed
    assert not report.failing()


def test_giant_hexagon_is_exhaustive_over_256_tuples(sign):
    report = check_giant_hexagon(sign, 1, 2, 3)
    (check,) = report.checks
    assert check.passed and check.exhaustive
    assert check.instances == 256
    assert report.coverage[('giant_hexagon', 1, 2, 3)] == 256


def test_giant_hexagon_samples_over_budget(sign, options):
    small = options.updated(exhaustive_budget=100, sample=50, seed=3)
    (check,) = check_giant_hexagon(sign, 1, 2, 3, small).checks
    assert not check.exhaustive
    assert check.status.value == 'sampled-pass'
    assert check.seed == 3
    assert 0 < check.sample_size <= 50


def test_giant_hexagon_needs_three_tensors():
    with pytest.raises(IndexOutOfRange):
        check_giant_hexagon(boolean_kfold(k=2), 1, 2, 3)


def test_pentagon_mutation_is_caught(sign):
    report = check_pentagon(sign.with_associator_component(1, ('X', 'X', 'X'), 'g0'), 1)
    assert not report.passed
    assert ('X', 'X', 'X', 'X') in witness_indices(report)


def test_nontrivial_cocycle_passes_the_pentagon_but_not_interchange(sign):
    twisted = sign.with_associator_component(1, ('X', 'X', 'X'), 'g1')
    assert check_pentagon(twisted, 1).passed
    assert not check_interchange_assoc(twisted, 1, 2, 'internal').passed


def test_strict_units(boolean, sign):
    assert check_strict_units(boolean).passed
    assert check_strict_units(sign).passed
    broken = sign.with_tensor_object(1, 'I', 'X', 'I')
    report = check_strict_units(broken)
    assert 'unit*1.objects.left' in failing_names(report)
    assert ('X',) in witness_indices(report, 'unit*1.objects.left')


def test_interchange_units_hold_for_the_sign_structure(sign):
    assert sign.interchanger(1, 2).component('X', 'I', 'X', 'I') == 'e0'
    assert check_interchange_units(sign, 1, 2).passed


def test_interchange_unit_mutation(sign):
    report = check_interchange_units(
        sign.with_interchanger_component(1, 2, ('X', 'X', 'I', 'I'), 'g0'), 1, 2)
    assert failing_names(report) == ['eta12.internal_unit.ABII']
    assert witness_indices(report) == {('X', 'X', 'I', 'I')}


def test_interchange_assoc_both_modes(boolean, sign):
    for V in (boolean, sign):
        for mode in ('internal', 'external'):
            report = check_interchange_assoc(V, 1, 2, mode)
            assert report.passed
    (check,) = check_interchange_assoc(sign, 1, 2, 'internal').checks
    assert check.instances == 64


def test_interchange_assoc_mutation(sign):
    broken = sign.with_interchanger_component(1, 2, ('X', 'X', 'X', 'X'), 'e0')
    report = check_interchange_assoc(broken, 1, 2, 'internal')
    assert not report.passed
    assert all(len(index) == 6 for index in witness_indices(report))


def test_interchange_assoc_rejects_unknown_mode(sign):
    with pytest.raises(ValueError):
        check_interchange_assoc(sign, 1, 2, 'sideways')


def test_giant_hexagon_mutation(sign):
    broken = sign.with_interchanger_component(1, 3, ('X', 'X', 'X', 'X'), 'e0')
    report = check_giant_hexagon(broken, 1, 2, 3)
    assert not report.passed
    assert all(len(index) == 8 for index in witness_indices(report))


def test_from_symmetric_interchanger_is_the_sign(sign):
    for i, j in itertools.combinations(range(1, 4), 2):
        assert sign.interchanger(i, j).component('X', 'X', 'X', 'X') == 'g0'
        assert sign.interchanger(i, j).component('X', 'X', 'X', 'I') == 'g1'


def test_thin_base_interchangers_are_identities(boolean):
    for family in boolean.interchangers.values():
        assert is_identity_family(family)


def test_only_the_trivial_braiding_on_z2_is_symmetric():
    passing = [Sym.braiding.component('*', '*') for Sym in z2_braidings()
               if check_symmetric(Sym).passed]
    assert passing == ['e']
    V = from_symmetric(z2_braidings()[0], 3)
    assert all(is_identity_family(family) for family in V.interchangers.values())
    assert check_kfold(V).passed


def test_from_symmetric_refuses_a_broken_braiding():
    with pytest.raises(NotSymmetric):
        from_symmetric(z2_braidings()[1], 2)


def test_symmetric_precheck_catches_a_broken_symmetry(bundled):
    report = check_symmetric(broken_fixtures(bundled)['symmetry'])
    assert 'symmetry' in failing_names(report)


def test_collapse_diagnostic(boolean, sign):
    result = collapse_diagnostic(boolean, 1, 2)
    assert result.passed and result.note
    assert collapse_diagnostic(sign, 1, 2).status.value == 'not-applicable'


def test_restriction_to_the_unit_stays_a_kfold_structure(sign):
    sub = sign.restrict(['I'])
    assert sub.base.n_objects == 1
    assert check_kfold(sub).passed


def test_restriction_must_be_closed(sign):
    with pytest.raises(StructureMismatch):
        sign.restrict(['X'])


def test_tensor_functors_are_functors(sign):
    for i in range(1, sign.k + 1):
        assert check_functor_laws(sign.tensor(i)).passed


def test_identity_and_constant_monoidal_functors(sign):
    assert check_monoidal_functor(identity_monoidal_functor(sign)).passed
    assert check_monoidal_functor(constant_unit_functor(sign)).passed


def test_twisted_lambdas_pass(sign):
    assert check_monoidal_functor(twisted_identity_functor(sign)).passed


def test_single_lambda_flip_fails(sign):
    F = identity_monoidal_functor(sign).with_lambda_component(1, ('X', 'X'), 'g0')
    report = check_monoidal_functor(F)
    assert not report.passed


def test_composition_with_identity(sign):
    F = twisted_identity_functor(sign)
    G = compose_monoidal_functors(identity_monoidal_functor(sign), F)
    assert (G.functor.object_map == F.functor.object_map).all()
    assert (G.functor.morphism_map == F.functor.morphism_map).all()
    for mine, theirs in zip(G.lambdas, F.lambdas):
        assert (mine.components == theirs.components).all()


def test_constant_functors_compose_to_a_constant(sign):
    K = constant_unit_functor(sign)
    KK = compose_monoidal_functors(K, K)
    assert (KK.functor.object_map == sign.unit_index).all()
    assert all(is_identity_family(family) for family in KK.lambdas)
    assert check_monoidal_functor(KK).passed


def test_monoidal_transformations_on_the_sign_structure(sign):
    F = identity_monoidal_functor(sign)
    C = sign.base
    passing = []
    for theta_i, theta_x in itertools.product(('e0', 'g0'), ('e1', 'g1')):
        theta = NatFamily.from_mapping(C, 1, {'I': theta_i, 'X': theta_x}, name='theta')
        if check_monoidal_nat(theta, F, F).passed:
            passing.append((theta_i, theta_x))
    assert passing == [('e0', 'e1'), ('e0', 'g1')]

    theta = NatFamily.from_mapping(C, 1, {'I': 'g0', 'X': 'e1'}, name='theta')
    report = check_monoidal_nat(theta, F, F)
    assert ('I', 'X') in witness_indices(report, 'monoidal1')


def test_identity_monoidal_transformation(sign):
    F = twisted_identity_functor(sign)
    theta = NatFamily(sign.base, 1, sign.base.identity, name='one')
    assert check_monoidal_nat(theta, F, F).passed
