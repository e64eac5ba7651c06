import itertools

from hypothesis import given, settings, strategies as st
import numpy as np

from kfold_deloop.config import CheckOptions
from kfold_deloop.deloop import tensor_enriched
from kfold_deloop.enrich import (
    check_enriched_category, check_enriched_functor, compare_categories,
    compose_enriched_functors, EnrichedCategory, EnrichedFunctor, functors_equal,
    identity_functor)
from kfold_deloop.report import IndexSpace
from kfold_deloop.utils.corpus import boolean_kfold, product_preorder

BOOLEAN = boolean_kfold()


@st.composite
def preorders(draw, max_objects=3):
    n = draw(st.integers(min_value=1, max_value=max_objects))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=6))
    reach = np.eye(n, dtype=bool)
    for a, b in edges:
        reach[a, b] = True
    for middle in range(n):
        reach |= reach[:, [middle]] & reach[[middle], :]
    objects = [f'o{index}' for index in range(n)]
    hom = {(objects[a], objects[b]): '1' if reach[a, b] else '0'
           for a, b in itertools.product(range(n), repeat=2)}
    return EnrichedCategory.thin(BOOLEAN, objects, hom, name=f'P{n}')


def _monotone_maps(A, B):
    """Every order-preserving object map A -> B as an enriched functor."""
    C = BOOLEAN.base
    unique = {(m.dom, m.cod): m.id for m in C.morphisms}
    for image in itertools.product(B.objects, repeat=A.n_objects):
        object_map = dict(zip(A.objects, image))
        if all(A.hom_object(a, b) <= B.hom_object(object_map[a], object_map[b])
               for a, b in itertools.product(A.objects, repeat=2)):
            components = {(a, b): unique[(A.hom_object(a, b),
                                          B.hom_object(object_map[a], object_map[b]))]
                          for a, b in itertools.product(A.objects, repeat=2)}
            yield EnrichedFunctor.from_maps(A, B, object_map, components)


@settings(max_examples=30, deadline=None)
@given(preorders())
def test_random_preorders_are_enriched_categories(A):
    assert check_enriched_category(A).passed


@settings(max_examples=20, deadline=None)
@given(preorders(), preorders())
def test_products_of_preorders_are_componentwise(A, B):
    for i in (1, 2):
        product = tensor_enriched(A, B, i)
        assert check_enriched_category(product).passed
        direct = product_preorder(BOOLEAN, A, B)
        assert compare_categories(product.relabel(direct.objects), direct).passed


@settings(max_examples=15, deadline=None)
@given(preorders(max_objects=2), preorders(max_objects=2), preorders(max_objects=2))
def test_composites_of_monotone_maps_are_functors(A, B, C):
    for T in _monotone_maps(A, B):
        assert check_enriched_functor(T).passed
        assert functors_equal(compose_enriched_functors(identity_functor(B), T), T)
        for S in _monotone_maps(B, C):
            assert check_enriched_functor(compose_enriched_functors(S, T)).passed


@given(st.integers(min_value=0, max_value=2 ** 32 - 1), st.integers(min_value=1, max_value=4))
def test_sampling_is_deterministic_and_sorted(seed, arity):
    options = CheckOptions(exhaustive_budget=1, sample=25, seed=seed)
    first = IndexSpace.cube(3, arity, options)
    second = IndexSpace.cube(3, arity, options)
    assert not first.exhaustive
    assert all(np.array_equal(x, y) for x, y in zip(first.columns, second.columns))
    rows = list(zip(*(column.tolist() for column in first.columns)))
    assert rows == sorted(set(rows))
    assert first.count == len(rows) <= 25
