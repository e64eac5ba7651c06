"""
Categories, functors and natural transformations enriched over (V, *1, alpha1, I).

Hom-objects, composition morphisms and identity elements are index arrays
into the base category of V: ``hom[a, b]`` is an object index,
``composition[a, b, c]`` is M_abc : hom(b, c) *1 hom(a, b) -> hom(a, c) and
``identity[a]`` is j_a : I -> hom(a, a).
"""

import itertools
import logging

import numpy as np

from kfold_deloop.config import CheckOptions
from kfold_deloop.errors import (
    BaseMismatch, DanglingHom, MalformedMap, MalformedTable, NotComposable, StructureMismatch,
    UnknownMorphism, UnknownObject)
from kfold_deloop.fincat import safe_take
from kfold_deloop.report import (
    CheckResult, compare_legs, compare_over, DiagramReport, IndexSpace, Status)

logger = logging.getLogger(__name__)


def _frozen(array, shape):
    array = np.array(array, dtype=np.int64).reshape(shape)
    array.setflags(write=False)
    return array


class EnrichedCategory:

    def __init__(self, base, objects, hom, composition, identity, name=''):
        self.base = base
        self.objects = tuple(objects)
        self.name = name
        n = len(self.objects)
        self._index = {obj: position for position, obj in enumerate(self.objects)}
        if len(self._index) != n:
            raise MalformedTable(f'{name}: duplicate object ids')
        self.hom = _frozen(hom, (n, n))
        self.composition = _frozen(composition, (n, n, n))
        self.identity = _frozen(identity, (n,))
        C = base.base
        if self.hom.size and (self.hom.min() < 0 or self.hom.max() >= C.n_objects):
            raise DanglingHom(f'{name}: hom-objects outside {C.name}')
        for label, array in (('composition', self.composition), ('identity', self.identity)):
            if array.size and (array.min() < -1 or array.max() >= C.n_morphisms):
                raise MalformedTable(f'{name}: {label} references morphisms outside {C.name}')

    @classmethod
    def from_tables(cls, base, objects, hom, composition, identities, name=''):
        """
        Build from id-keyed tables.

        :param hom: mapping (a, b) -> object id of V
        :param composition: mapping (a, b, c) -> morphism id M_abc
        :param identities: mapping a -> morphism id j_a
        """
        C = base.base
        objects = list(objects)
        n = len(objects)
        homs = np.empty((n, n), dtype=np.int64)
        for (x, a), (y, b) in itertools.product(enumerate(objects), repeat=2):
            if (a, b) not in hom:
                raise MalformedTable(f'{name}: no hom-object for ({a}, {b})')
            try:
                homs[x, y] = C.object_index(hom[(a, b)])
            except UnknownObject:
                raise DanglingHom(f'{name}: hom({a}, {b}) = {hom[(a, b)]!r} is not an object of V')
        try:
            comps = np.array([C.morphism_index(composition[key])
                              for key in itertools.product(objects, repeat=3)], dtype=np.int64)
            ids = np.array([C.morphism_index(identities[a]) for a in objects], dtype=np.int64)
        except KeyError as e:
            raise MalformedTable(f'{name}: missing entry for {e.args[0]!r}')
        except UnknownMorphism as e:
            raise MalformedTable(f'{name}: {e}')
        return cls(base, objects, homs, comps, ids, name=name)

    @classmethod
    def thin(cls, base, objects, hom, name=''):
        """Build over a thin base, where every M and j is the unique morphism of its type."""
        C = base.base
        unique = np.full((C.n_objects, C.n_objects), -1, dtype=np.int64)
        for index in range(C.n_morphisms):
            d, c = C.dom[index], C.cod[index]
            if unique[d, c] >= 0:
                raise MalformedTable(f'{C.name} is not thin')
            unique[d, c] = index
        objects = list(objects)
        n = len(objects)
        homs = np.array([[C.object_index(hom[(a, b)]) for b in objects] for a in objects],
                        dtype=np.int64).reshape(n, n)
        a, b, c = np.indices((n, n, n)).reshape(3, -1)
        dom = base.tensor_objects(1, homs[b, c], homs[a, b])
        composition = unique[dom, homs[a, c]]
        identity = unique[base.unit_index, homs[np.arange(n), np.arange(n)]]
        if np.any(composition < 0) or np.any(identity < 0):
            raise MalformedTable(f'{name}: hom assignment is not a preorder over {C.name}')
        return cls(base, objects, homs, composition, identity, name=name)

    @property
    def n_objects(self):
        return len(self.objects)

    def object_index(self, obj):
        try:
            return self._index[obj]
        except KeyError:
            raise UnknownObject(f'{obj!r} is not an object of {self.name}')

    def hom_object(self, a, b):
        return self.base.base.objects[self.hom[self.object_index(a), self.object_index(b)]]

    def composition_of(self, a, b, c):
        index = self.composition[self.object_index(a), self.object_index(b), self.object_index(c)]
        if index < 0:
            raise MalformedTable(f'{self.name}: composite at ({a}, {b}, {c}) is undefined')
        return self.base.base.morphisms[index].id

    def identity_of(self, a):
        return self.base.base.morphisms[self.identity[self.object_index(a)]].id

    def with_composition(self, key, mid):
        composition = self.composition.copy()
        composition[tuple(self.object_index(obj) for obj in key)] = \
            self.base.base.morphism_index(mid)
        return EnrichedCategory(self.base, self.objects, self.hom, composition, self.identity,
                                self.name)

    def with_identity(self, obj, mid):
        identity = self.identity.copy()
        identity[self.object_index(obj)] = self.base.base.morphism_index(mid)
        return EnrichedCategory(self.base, self.objects, self.hom, self.composition, identity,
                                self.name)

    def relabel(self, objects, name=None):
        return EnrichedCategory(self.base, objects, self.hom, self.composition, self.identity,
                                name or self.name)

    def ids(self, indices):
        return tuple(self.objects[index] for index in indices)

    def __eq__(self, other):
        if not isinstance(other, EnrichedCategory):
            return NotImplemented
        return (self.base is other.base and self.objects == other.objects
                and np.array_equal(self.hom, other.hom)
                and np.array_equal(self.composition, other.composition)
                and np.array_equal(self.identity, other.identity))

    __hash__ = object.__hash__

    def __repr__(self):
        return f'EnrichedCategory({self.name!r}, {self.n_objects} objects over {self.base.name})'


def _cube(n, arity, options):
    space = IndexSpace.cube(n, arity, options)
    return space, space.columns or [np.zeros(0, dtype=np.int64)] * arity


def _endpoints(C, dom, cod):
    dom, cod = np.asarray(dom), np.asarray(cod)
    return np.where((dom >= 0) & (cod >= 0), dom * max(C.n_objects, 1) + cod, -1)


def _typing(C, morphisms):
    """Endpoint codes of ``morphisms``, -1 where a morphism is undefined."""
    return _endpoints(C, safe_take(C.dom, morphisms), safe_take(C.cod, morphisms))


def _endpoint_label(C):
    n = max(C.n_objects, 1)
    return lambda code: f'{C.objects[code // n]}->{C.objects[code % n]}'


def check_enriched_category(A, options=None):
    options = options or CheckOptions()
    V = A.base
    C = V.base
    hom, M, j = A.hom, A.composition, A.identity
    one = C.identity
    t = (lambda x, y: V.tensor_objects(1, x, y))
    tm = (lambda f, g: V.tensor_morphisms(1, f, g))
    alpha = V.associator(1).components
    label = A.ids
    report = DiagramReport(f'enriched[{A.name}]')
    with report.timed():
        space, (a, b, c) = _cube(A.n_objects, 3, options)
        m = M[a, b, c]
        report.add(compare_over(space, 'M.typing', _typing(C, m),
                                _endpoints(C, t(hom[b, c], hom[a, b]), hom[a, c]),
                                label, _endpoint_label(C)))
        objects = np.arange(A.n_objects)
        unit = np.full(A.n_objects, V.unit_index)
        report.add(compare_legs('j.typing', [objects], _typing(C, j),
                                _endpoints(C, unit, hom[objects, objects]),
                                label, _endpoint_label(C), options))

        space, (a, b, c, d) = _cube(A.n_objects, 4, options)
        left = C.chain(M[a, b, d], tm(M[b, c, d], one[hom[a, b]]))
        right = C.chain(M[a, c, d], tm(one[hom[c, d]], M[a, b, c]),
                        alpha[hom[c, d], hom[b, c], hom[a, b]])
        report.add(compare_over(space, 'pentagon', left, right, label, C.morphism_label))

        space, (a, b) = _cube(A.n_objects, 2, options)
        identity_hom = one[hom[a, b]]
        report.add(compare_over(space, 'left_unit',
                                C.compose_indices(M[a, b, b], tm(j[b], identity_hom)),
                                identity_hom, label, C.morphism_label))
        report.add(compare_over(space, 'right_unit',
                                C.compose_indices(M[a, a, b], tm(identity_hom, j[a])),
                                identity_hom, label, C.morphism_label))
    return report


def same_category(A, B):
    return A is B or A == B


class EnrichedFunctor:

    def __init__(self, source, target, object_map, components, name=''):
        if source.base is not target.base:
            raise BaseMismatch(f'{name}: {source.name} and {target.name} have different bases')
        self.source = source
        self.target = target
        self.name = name
        n = source.n_objects
        self.object_map = _frozen(object_map, (n,))
        self.components = _frozen(components, (n, n))
        if self.object_map.size and (self.object_map.min() < 0 or
                                     self.object_map.max() >= target.n_objects):
            raise MalformedMap(f'{name}: object map leaves {target.name}')
        C = source.base.base
        if self.components.size and (self.components.min() < -1 or
                                     self.components.max() >= C.n_morphisms):
            raise MalformedMap(f'{name}: components reference unknown morphisms')

    @classmethod
    def from_maps(cls, source, target, object_map, components, name=''):
        C = source.base.base
        try:
            objects = [target.object_index(object_map[a]) for a in source.objects]
            comps = [[C.morphism_index(components[(a, b)]) for b in source.objects]
                     for a in source.objects]
        except KeyError as e:
            raise MalformedMap(f'{name}: no image for {e.args[0]!r}')
        except (UnknownObject, UnknownMorphism) as e:
            raise MalformedMap(f'{name}: {e}')
        return cls(source, target, objects, np.array(comps, dtype=np.int64).reshape(
            source.n_objects, source.n_objects), name=name)

    def apply_object(self, obj):
        return self.target.objects[self.object_map[self.source.object_index(obj)]]

    def component(self, a, b):
        index = self.components[self.source.object_index(a), self.source.object_index(b)]
        return self.source.base.base.morphisms[index].id

    def with_component(self, a, b, mid):
        components = self.components.copy()
        components[self.source.object_index(a), self.source.object_index(b)] = \
            self.source.base.base.morphism_index(mid)
        return EnrichedFunctor(self.source, self.target, self.object_map, components, self.name)

    def __repr__(self):
        return f'EnrichedFunctor({self.name!r}: {self.source.name} -> {self.target.name})'


def identity_functor(A):
    one = A.base.base.identity
    return EnrichedFunctor(A, A, np.arange(A.n_objects), one[A.hom], name=f'id[{A.name}]')


def check_enriched_functor(T, options=None):
    options = options or CheckOptions()
    A, B = T.source, T.target
    V = A.base
    C = V.base
    om, comp = T.object_map, T.components
    tm = (lambda f, g: V.tensor_morphisms(1, f, g))
    label = A.ids
    report = DiagramReport(f'enriched_functor[{T.name}]')
    with report.timed():
        space, (a, b) = _cube(A.n_objects, 2, options)
        component = comp[a, b]
        report.add(compare_over(space, 'T.typing',
                                _typing(C, component),
                                _endpoints(C, A.hom[a, b], B.hom[om[a], om[b]]),
                                label, _endpoint_label(C)))

        space, (a, b, c) = _cube(A.n_objects, 3, options)
        left = C.compose_indices(comp[a, c], A.composition[a, b, c])
        right = C.compose_indices(B.composition[om[a], om[b], om[c]], tm(comp[b, c], comp[a, b]))
        report.add(compare_over(space, 'composition', left, right, label, C.morphism_label))

        objects = np.arange(A.n_objects)
        report.add(compare_legs('unit', [objects],
                                C.compose_indices(comp[objects, objects], A.identity),
                                B.identity[om], label, C.morphism_label, options))
    return report


def compose_enriched_functors(S, T):
    """The composite S.T, defined when T lands where S starts."""
    if not same_category(T.target, S.source):
        raise NotComposable(f'{S.name} after {T.name}: {T.target.name} is not {S.source.name}')
    C = T.source.base.base
    om = T.object_map
    components = C.compose_indices(S.components[om[:, None], om[None, :]], T.components)
    return EnrichedFunctor(T.source, S.target, S.object_map[om], components,
                           name=f'{S.name}.{T.name}')


def compare_functors(T, S, name='functors_equal'):
    """Witness-producing comparison of two parallel enriched functors."""
    if not (same_category(T.source, S.source) and same_category(T.target, S.target)):
        raise StructureMismatch(f'{T.name} and {S.name} are not parallel')
    A = T.source
    C = A.base.base
    objects = np.arange(A.n_objects)
    result = compare_legs(f'{name}.objects', [objects], T.object_map, S.object_map, A.ids,
                          T.target.objects.__getitem__)
    if not result.passed:
        return result
    a, b = (np.indices((A.n_objects, A.n_objects)).reshape(2, -1) if A.n_objects
            else (np.zeros(0, dtype=np.int64),) * 2)
    return compare_legs(f'{name}.components', [a, b], T.components[a, b], S.components[a, b],
                        A.ids, C.morphism_label)


def functors_equal(T, S):
    if not (same_category(T.source, S.source) and same_category(T.target, S.target)):
        return False
    return compare_functors(T, S).passed


def compare_categories(A, B, name='categories_equal'):
    """Compare hom-objects, composition and identities of two categories on the same objects."""
    C = A.base.base
    report = DiagramReport(name)
    if A.base is not B.base or A.objects != B.objects:
        report.add(CheckResult(f'{name}.objects', Status.FAIL, instances=1, failures=1,
                               note=f'{A.name} and {B.name} differ in base or objects'))
        return report
    space, (a, b) = _cube(A.n_objects, 2, None)
    report.add(compare_over(space, f'{name}.hom', A.hom[a, b], B.hom[a, b], A.ids,
                            C.object_label))
    space, (a, b, c) = _cube(A.n_objects, 3, None)
    report.add(compare_over(space, f'{name}.composition', A.composition[a, b, c],
                            B.composition[a, b, c], A.ids, C.morphism_label))
    objects = np.arange(A.n_objects)
    report.add(compare_legs(f'{name}.identity', [objects], A.identity, B.identity, A.ids,
                            C.morphism_label))
    return report


class EnrichedNatTransf:

    def __init__(self, source, target, components, name=''):
        if not (same_category(source.source, target.source)
                and same_category(source.target, target.target)):
            raise StructureMismatch(f'{name}: {source.name} and {target.name} are not parallel')
        self.source = source
        self.target = target
        self.name = name
        C = source.source.base.base
        self.components = _frozen(components, (source.source.n_objects,))
        if self.components.size and (self.components.min() < -1 or
                                     self.components.max() >= C.n_morphisms):
            raise MalformedMap(f'{name}: components reference unknown morphisms')

    @classmethod
    def from_mapping(cls, source, target, components, name=''):
        C = source.source.base.base
        try:
            comps = [C.morphism_index(components[a]) for a in source.source.objects]
        except KeyError as e:
            raise MalformedMap(f'{name}: no component at {e.args[0]!r}')
        except UnknownMorphism as e:
            raise MalformedMap(f'{name}: {e}')
        return cls(source, target, comps, name=name)

    def component(self, a):
        C = self.source.source.base.base
        return C.morphisms[self.components[self.source.source.object_index(a)]].id

    def __repr__(self):
        return f'EnrichedNatTransf({self.name!r}: {self.source.name} => {self.target.name})'


def check_v_natural(alpha, options=None):
    options = options or CheckOptions()
    T, S = alpha.source, alpha.target
    A, B = T.source, T.target
    V = A.base
    C = V.base
    tm = (lambda f, g: V.tensor_morphisms(1, f, g))
    to, so = T.object_map, S.object_map
    components = alpha.components
    report = DiagramReport(f'v_natural[{alpha.name}]')
    with report.timed():
        objects = np.arange(A.n_objects)
        report.add(compare_legs('alpha.typing', [objects],
                                _typing(C, components),
                                _endpoints(C, np.full(A.n_objects, V.unit_index), B.hom[to, so]),
                                A.ids, _endpoint_label(C), options))
        space, (a, b) = _cube(A.n_objects, 2, options)
        left = C.compose_indices(B.composition[to[a], to[b], so[b]],
                                 tm(components[b], T.components[a, b]))
        right = C.compose_indices(B.composition[to[a], so[a], so[b]],
                                  tm(S.components[a, b], components[a]))
        report.add(compare_over(space, 'hexagon', left, right, A.ids, C.morphism_label))
    return report


def identity_transformation(Q):
    return EnrichedNatTransf(Q, Q, Q.target.identity[Q.object_map], name=f'1[{Q.name}]')


def vertical_compose(beta, alpha):
    """(beta.alpha)_A = M[TA, SA, RA] . (beta_A *1 alpha_A)."""
    if not functors_equal(alpha.target, beta.source):
        raise NotComposable(f'{beta.name} after {alpha.name}: middle functors differ')
    T, S, R = alpha.source, alpha.target, beta.target
    V = T.source.base
    C = V.base
    components = C.compose_indices(
        T.target.composition[T.object_map, S.object_map, R.object_map],
        V.tensor_morphisms(1, beta.components, alpha.components))
    return EnrichedNatTransf(T, R, components, name=f'{beta.name}.{alpha.name}')


def whisker_left(Q, alpha):
    """(Q alpha)_A = Q[TA, SA] . alpha_A."""
    T, S = alpha.source, alpha.target
    if not same_category(Q.source, T.target):
        raise NotComposable(f'{Q.name} does not start at {T.target.name}')
    C = Q.source.base.base
    components = C.compose_indices(Q.components[T.object_map, S.object_map], alpha.components)
    return EnrichedNatTransf(compose_enriched_functors(Q, T), compose_enriched_functors(Q, S),
                             components, name=f'{Q.name}{alpha.name}')


def whisker_right(alpha, P):
    """(alpha P)_D = alpha_PD."""
    T, S = alpha.source, alpha.target
    if not same_category(P.target, T.source):
        raise NotComposable(f'{P.name} does not land in {T.source.name}')
    return EnrichedNatTransf(compose_enriched_functors(T, P), compose_enriched_functors(S, P),
                             alpha.components[P.object_map], name=f'{alpha.name}{P.name}')


def transformations_equal(alpha, beta):
    return (functors_equal(alpha.source, beta.source) and functors_equal(alpha.target, beta.target)
            and np.array_equal(alpha.components, beta.components))
