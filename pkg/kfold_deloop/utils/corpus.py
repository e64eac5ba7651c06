"""
Bundled example structures and the deliberately broken fixtures.

Run ``kfold_corpus DIR`` to write every fixture as a document under DIR,
with the broken ones in DIR/broken.
"""

import argparse
import itertools
import logging
import os

import numpy as np

from kfold_deloop.config import CheckOptions
from kfold_deloop.deloop import arrow_v2category, V2Category
from kfold_deloop.enrich import (
    check_enriched_category, EnrichedCategory, EnrichedFunctor, EnrichedNatTransf,
    identity_functor)
from kfold_deloop.fincat import FinCategory, FinFunctor, NatFamily
from kfold_deloop.formula import associator_formulas
from kfold_deloop.monoidal import (
    from_symmetric, KFoldStructure, MonoidalFunctorData, SymmetricStructure)
from kfold_deloop.utils.documents import write_document

logger = logging.getLogger(__name__)

SIGN_MORPHISMS = {(0, 0): 'e0', (0, 1): 'g0', (1, 0): 'e1', (1, 1): 'g1'}
SIGN_OBJECTS = ('I', 'X')


def boolean_poset():
    """The poset 0 < 1 as a category."""
    morphisms = [('id0', '0', '0'), ('id1', '1', '1'), ('m', '0', '1')]
    composition = {('id0', 'id0'): 'id0', ('id1', 'id1'): 'id1',
                   ('m', 'id0'): 'm', ('id1', 'm'): 'm'}
    return FinCategory.from_tables(['0', '1'], morphisms, {'0': 'id0', '1': 'id1'},
                                   composition, name='B')


def _unique_morphism(C):
    table = {(m.dom, m.cod): m.id for m in C.morphisms}
    return lambda dom, cod: table[(dom, cod)]


def boolean_kfold(k=3):
    """The Boolean poset with meet as every tensor; all structure maps are identities."""
    C = boolean_poset()
    unique = _unique_morphism(C)

    def meet(*objects):
        return min(objects)

    def tensor_morphism(i, f, g):
        f, g = C.morphism(f), C.morphism(g)
        return unique(meet(f.dom, g.dom), meet(f.cod, g.cod))

    return KFoldStructure.from_functions(
        C, '1', k,
        lambda i, a, b: meet(a, b),
        tensor_morphism,
        lambda i, a, b, c: C.identity_of(meet(a, b, c)),
        lambda i, j, a, b, c, d: C.identity_of(meet(a, b, c, d)),
        name='B')


def _parity(obj):
    return SIGN_OBJECTS.index(obj)


def _bit(mid):
    return int(mid.startswith('g'))


def sign_category():
    """
    Two objects I and X, each with automorphisms {e, g} forming Z/2.

    Morphisms on I are e0, g0 and on X are e1, g1; there are no maps between I and X.
    """
    morphisms = [(mid, SIGN_OBJECTS[p], SIGN_OBJECTS[p]) for (p, _), mid in SIGN_MORPHISMS.items()]
    composition = {(g, f): SIGN_MORPHISMS[(p, (bg + bf) % 2)]
                   for (p, bg), g in SIGN_MORPHISMS.items()
                   for (q, bf), f in SIGN_MORPHISMS.items() if p == q}
    return FinCategory.from_tables(list(SIGN_OBJECTS), morphisms,
                                   {'I': 'e0', 'X': 'e1'}, composition, name='S', groupoid=True)


def _sign_tensor_morphism(C):
    def tensor_morphism(f, g):
        f, g = C.morphism(f), C.morphism(g)
        return SIGN_MORPHISMS[((_parity(f.dom) + _parity(g.dom)) % 2,
                               (_bit(f.id) + _bit(g.id)) % 2)]
    return tensor_morphism


def sign_symmetric():
    """Parity addition on objects and morphisms with the sign braiding c_XX = g0."""
    C = sign_category()

    def tensor_object(a, b):
        return SIGN_OBJECTS[(_parity(a) + _parity(b)) % 2]

    return SymmetricStructure.from_functions(
        C, 'I', tensor_object, _sign_tensor_morphism(C),
        lambda a, b, c: C.identity_of(tensor_object(tensor_object(a, b), c)),
        lambda a, b: SIGN_MORPHISMS[((_parity(a) + _parity(b)) % 2, _parity(a) * _parity(b))],
        name='S')


def sign_kfold(k=3):
    return from_symmetric(sign_symmetric(), k)


def z2_category():
    composition = {(g, f): 'e' if g == f else 'g'
                   for g, f in itertools.product('eg', repeat=2)}
    return FinCategory.from_tables(['*'], [('e', '*', '*'), ('g', '*', '*')], {'*': 'e'},
                                   composition, name='Z2', groupoid=True)


def z2_symmetric(braiding='e', C=None):
    """One-object group Z/2 with its multiplication as tensor and the given braiding."""
    C = C or z2_category()
    return SymmetricStructure.from_functions(
        C, '*', lambda a, b: '*', lambda f, g: 'e' if f == g else 'g',
        lambda a, b, c: 'e', lambda a, b: braiding, name=f'Z2[c={braiding}]')


def z2_braidings():
    """Every candidate braiding on Z/2, in morphism order."""
    C = z2_category()
    return [z2_symmetric(m.id, C) for m in C.morphisms]


def chain_preorder(V):
    """a <= b over the Boolean base."""
    hom = {('a', 'a'): '1', ('a', 'b'): '1', ('b', 'a'): '0', ('b', 'b'): '1'}
    return EnrichedCategory.thin(V, ['a', 'b'], hom, name='chain')


def vee_preorder(V):
    """x <= y and x <= z over the Boolean base."""
    objects = ['x', 'y', 'z']
    hom = {(a, b): '1' if a == b or a == 'x' else '0' for a, b in itertools.product(objects,
                                                                                      repeat=2)}
    return EnrichedCategory.thin(V, objects, hom, name='vee')


def product_preorder(V, A, B, name=None):
    """Objects (a, b) ordered componentwise, built directly from the two hom tables."""
    C = V.base
    objects = [f'({a},{b})' for a in A.objects for b in B.objects]
    hom = {}
    for (a, b), (a1, b1) in itertools.product(itertools.product(A.objects, B.objects), repeat=2):
        hom[(f'({a},{b})', f'({a1},{b1})')] = min(A.hom_object(a, a1), B.hom_object(b, b1))
    return EnrichedCategory.thin(V, objects, hom, name=name or f'({A.name}*{B.name})')


def constant_category(V):
    """Two objects, every hom-object the unit, every structure map the identity."""
    objects = ['p', 'q']
    one = V.base.identity_of(V.unit)
    return EnrichedCategory.from_tables(
        V, objects, {key: V.unit for key in itertools.product(objects, repeat=2)},
        {key: one for key in itertools.product(objects, repeat=3)},
        {obj: one for obj in objects}, name='constant')


def twisted_category(V):
    """
    Two objects a and b with hom(a, b) = hom(b, a) = X over the sign base.

    Composing a -> b -> a or b -> a -> b is the sign g0; every other
    composite is an identity.
    """
    objects = ['a', 'b']
    hom = {(x, y): 'I' if x == y else 'X' for x, y in itertools.product(objects, repeat=2)}
    composition = {}
    for x, y, z in itertools.product(objects, repeat=3):
        twisted = x == z and x != y
        composition[(x, y, z)] = SIGN_MORPHISMS[(_parity(hom[(x, z)]), int(twisted))]
    return EnrichedCategory.from_tables(V, objects, hom, composition,
                                        {obj: 'e0' for obj in objects}, name='twisted')


def search_twisted_categories(V, objects, hom, options=None):
    """
    Enumerate enriched categories with the given hom-objects, in order.

    Identity elements vary slowest, then composition entries in
    lexicographic order of (a, b, c); only assignments passing
    check_enriched_category are yielded.
    """
    options = options or CheckOptions()
    C = V.base
    objects = list(objects)
    n = len(objects)
    homs = np.array([[C.object_index(hom[(a, b)]) for b in objects] for a in objects],
                    dtype=np.int64).reshape(n, n)

    def typed(dom, cod):
        return [index for index in range(C.n_morphisms)
                if C.dom[index] == dom and C.cod[index] == cod]

    triples = list(itertools.product(range(n), repeat=3))
    m_choices = [typed(V.tensor_objects(1, homs[b, c], homs[a, b]), homs[a, c])
                 for a, b, c in triples]
    j_choices = [typed(V.unit_index, homs[a, a]) for a in range(n)]
    count = 0
    for identity in itertools.product(*j_choices):
        for composition in itertools.product(*m_choices):
            candidate = EnrichedCategory(V, objects, homs, composition, identity,
                                         name=f'search{count}')
            count += 1
            if check_enriched_category(candidate, options).passed:
                yield candidate
    logger.debug(f'Searched {count} assignments over {V.name}')


def swap_functor(A):
    """The enriched functor exchanging the two objects of a two-object category."""
    a, b = A.objects
    image = {a: b, b: a}
    C = A.base.base
    components = {(x, y): C.identity_of(A.hom_object(image[x], image[y]))
                  for x, y in itertools.product(A.objects, repeat=2)}
    return EnrichedFunctor.from_maps(A, A, image, components, name='swap')


def sign_transformation(Q, name='g0'):
    """The 2-cell Q => Q whose components are all g0."""
    C = Q.source.base.base
    return EnrichedNatTransf(Q, Q, np.full(Q.source.n_objects, C.morphism_index('g0')), name=name)


def twisted_identity_functor(V):
    """The identity functor of a sign structure with every lambda^i of parity A.B."""
    C = V.base
    lambdas = [NatFamily.from_function(
        C, 2, lambda a, b, i=i: SIGN_MORPHISMS[((_parity(a) + _parity(b)) % 2,
                                                 _parity(a) * _parity(b))],
        name=f'twisted.lambda{i}') for i in range(1, V.k + 1)]
    return MonoidalFunctorData(FinFunctor.identity(C), V, V, lambdas, name='twisted')


def broken_fixtures(bundled=None):
    """
    One structure per axiom family, each violating exactly that family's check.

    The fixtures are mutations of ``bundled`` (by default a fresh corpus()),
    so documents written for both can share bases by reference.
    """
    bundled = bundled or corpus()
    S = bundled['sign.symmetric']
    V = bundled['sign.kfold']
    C = V.base
    twisted = bundled['twisted.enriched']
    arrow = bundled['arrow.v2category']
    unit_to_hom = arrow.composition[('u', 'v', 'v')]
    source_object = unit_to_hom.source.objects[0]
    composition = dict(arrow.composition)
    composition[('u', 'v', 'v')] = unit_to_hom.with_component(source_object, source_object, 'g0')
    external = NatFamily.from_function(
        C, 3, lambda a, b, c: SIGN_MORPHISMS[((_parity(a) + _parity(b) + _parity(c)) % 2,
                                              _parity(a) * _parity(b) * _parity(c))],
        *associator_formulas(2), name='alpha2')
    return {
        'category_law': C.with_composition('g1', 'g1', 'g1'),
        'tensor_functor': V.with_tensor_morphism(1, 'g0', 'e1', 'e1'),
        'pentagon': V.with_associator_component(1, ('X', 'X', 'X'), 'g0'),
        'interchange_unit': V.with_interchanger_component(1, 2, ('I', 'I', 'X', 'X'), 'g0'),
        'internal_assoc': V.with_interchanger_component(1, 2, ('X', 'X', 'X', 'X'), 'e0'),
        'external_assoc': V.with_associator(2, external),
        'giant_hexagon': V.with_interchanger_component(2, 3, ('X', 'X', 'X', 'X'), 'e0'),
        'braiding': z2_symmetric('g', bundled['z2.category']),
        'symmetry': S.with_braiding(S.braiding.with_component(('I', 'X'), 'g1')),
        'enriched_pentagon': twisted.with_composition(('a', 'b', 'a'), 'e0'),
        'enriched_functor': bundled['swap.enriched-functor'].with_component('p', 'q', 'g0'),
        'v2category': V2Category(V, arrow.objects, arrow.hom, composition, arrow.identity,
                                 name='arrow_broken'),
    }


def corpus():
    """Every bundled structure keyed by the file stem it is written under."""
    B = boolean_kfold()
    S = sign_symmetric()
    V = from_symmetric(S, 3)
    Z = z2_symmetric('e')
    constant = constant_category(V)
    twisted = twisted_category(V)
    return {
        'boolean.category': B.base,
        'boolean.kfold': B,
        'sign.category': S.base,
        'sign.symmetric': S,
        'sign.kfold': V,
        'z2.category': Z.base,
        'z2.symmetric': Z,
        'chain.enriched': chain_preorder(B),
        'vee.enriched': vee_preorder(B),
        'constant.enriched': constant,
        'twisted.enriched': twisted,
        'swap.enriched-functor': swap_functor(constant),
        'identity.enriched-functor': identity_functor(twisted),
        'arrow.v2category': arrow_v2category(V, twisted, name='arrow'),
    }


def write_corpus(directory):
    """
    Write the corpus and the broken fixtures; return the written paths.

    Bases, hom categories and functor endpoints are written once and
    referred to by path.
    """
    os.makedirs(os.path.join(directory, 'broken'), exist_ok=True)
    bundled = corpus()
    written = {}
    refs = {}
    for stem, structure in bundled.items():
        path = os.path.join(directory, f'{stem}.json')
        write_document(structure, path, refs)
        refs[id(structure)] = path
        written[stem] = path
    for name, structure in broken_fixtures(bundled).items():
        path = os.path.join(directory, 'broken', f'{name}.json')
        write_document(structure, path, refs)
        written[f'broken/{name}'] = path
    logger.info(f'Wrote {len(written)} documents to {directory}')
    return written


def main(args=None):
    parser = argparse.ArgumentParser(prog='kfold_corpus',
                                     description='Write the bundled structures as documents.')
    parser.add_argument('directory', nargs='?', default='corpus')
    parser.add_argument('--log-level', default='INFO')
    parsed = parser.parse_args(args)
    logging.basicConfig(level=parsed.log_level.upper(),
                        format='[%(levelname)s] [%(created).3f] [%(name)s]: %(message)s')
    written = write_corpus(parsed.directory)
    for stem in sorted(written):
        print(written[stem])
    return 0


if __name__ == '__main__':
    main()
