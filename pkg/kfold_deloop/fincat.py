"""
Finite categories given by explicit tables, functors between them and families of components.

Objects and morphisms are addressed by ids externally and by their position
in declaration order internally. Identity, domain, codomain and composition
tables are integer numpy arrays with -1 marking an undefined entry, so every
diagram can be evaluated over a whole index space at once.
"""

import itertools
import logging
from typing import Hashable, NamedTuple

import numpy as np

from kfold_deloop.config import CheckOptions
from kfold_deloop.errors import (
    ArityMismatch, MalformedMap, MalformedTable, NonComposable, StructureMismatch,
    UnknownMorphism, UnknownObject)
from kfold_deloop.report import compare_legs, compare_over, DiagramReport, IndexSpace

logger = logging.getLogger(__name__)


class Morphism(NamedTuple):
    id: Hashable
    dom: Hashable
    cod: Hashable


def _frozen(array):
    array = np.array(array, dtype=np.int64)
    array.setflags(write=False)
    return array


def safe_take(table, *indices):
    """Index ``table`` elementwise, propagating -1 from any index."""
    indices = [np.asarray(index, dtype=np.int64) for index in indices]
    valid = np.ones(np.broadcast(*indices).shape, dtype=bool)
    for index in indices:
        valid &= index >= 0
    if table.size == 0:
        return np.full(valid.shape, -1, dtype=np.int64)
    clipped = tuple(np.where(valid, index, 0) for index in indices)
    return np.where(valid, table[clipped], -1)


class FinCategory:

    def __init__(self, objects, morphisms, identity, table, name='', groupoid=False, factors=None):
        self.objects = tuple(objects)
        self.morphisms = tuple(Morphism(*morphism) for morphism in morphisms)
        self.name = name
        self.groupoid = groupoid
        self.factors = factors
        self._object_index = {obj: index for index, obj in enumerate(self.objects)}
        self._morphism_index = {m.id: index for index, m in enumerate(self.morphisms)}
        if len(self._object_index) != len(self.objects):
            raise MalformedTable(f'duplicate object ids in {name}')
        if len(self._morphism_index) != len(self.morphisms):
            raise MalformedTable(f'duplicate morphism ids in {name}')

        try:
            self.dom = _frozen([self._object_index[m.dom] for m in self.morphisms])
            self.cod = _frozen([self._object_index[m.cod] for m in self.morphisms])
        except KeyError as e:
            raise MalformedTable(f'morphism endpoint {e.args[0]!r} is not an object of {name}')

        n, m = len(self.objects), len(self.morphisms)
        self.identity = _frozen(identity).reshape(n)
        self.table = _frozen(table).reshape(m, m)
        for label, array in (('identity', self.identity), ('composition', self.table)):
            if array.size and (array.min() < -1 or array.max() >= m):
                raise MalformedTable(f'{label} table of {name} references unknown morphisms')

    @classmethod
    def from_tables(cls, objects, morphisms, identities, composition, name='', groupoid=False):
        """
        Build a category from id-keyed tables.

        :param morphisms: iterable of (id, dom, cod)
        :param identities: mapping object id -> morphism id
        :param composition: mapping (g id, f id) -> morphism id, meaning g after f
        """
        morphisms = [Morphism(*morphism) for morphism in morphisms]
        index = {morphism.id: position for position, morphism in enumerate(morphisms)}

        def lookup(mid):
            try:
                return index[mid]
            except KeyError:
                raise MalformedTable(f'{name}: unknown morphism {mid!r} in tables')

        identity = [lookup(identities[obj]) if obj in identities else -1 for obj in objects]
        unknown = set(identities) - set(objects)
        if unknown:
            raise MalformedTable(f'{name}: identities for unknown objects '
                                 f'{sorted(map(str, unknown))}')
        table = np.full((len(morphisms), len(morphisms)), -1, dtype=np.int64)
        for (g, f), h in composition.items():
            table[lookup(g), lookup(f)] = lookup(h)
        return cls(objects, morphisms, identity, table, name=name, groupoid=groupoid)

    @property
    def n_objects(self):
        return len(self.objects)

    @property
    def n_morphisms(self):
        return len(self.morphisms)

    def object_index(self, obj):
        try:
            return self._object_index[obj]
        except KeyError:
            raise UnknownObject(f'{obj!r} is not an object of {self.name}')

    def morphism_index(self, mid):
        try:
            return self._morphism_index[mid]
        except KeyError:
            raise UnknownMorphism(f'{mid!r} is not a morphism of {self.name}')

    def morphism(self, mid):
        return self.morphisms[self.morphism_index(mid)]

    def identity_of(self, obj):
        index = self.identity[self.object_index(obj)]
        if index < 0:
            raise MalformedTable(f'{self.name}: no identity for {obj!r}')
        return self.morphisms[index].id

    def hom(self, a, b):
        a, b = self.object_index(a), self.object_index(b)
        return [m.id for m, d, c in zip(self.morphisms, self.dom, self.cod) if d == a and c == b]

    def endomorphisms(self, obj):
        return self.hom(obj, obj)

    def compose_indices(self, g, f):
        """Compose index arrays elementwise; -1 wherever either side is -1 or not composable."""
        return safe_take(self.table, g, f)

    def chain(self, *indices):
        """Compose index arrays right to left: chain(h, g, f) is h after g after f."""
        result = indices[-1]
        for index in reversed(indices[:-1]):
            result = self.compose_indices(index, result)
        return result

    def composable(self):
        """Index arrays (g, f) of every pair with cod(f) = dom(g), in order."""
        g, f = np.nonzero(self.dom[:, None] == self.cod[None, :])
        return g, f

    @property
    def inverses(self):
        if not hasattr(self, '_inverses'):
            inverses = np.full(self.n_morphisms, -1, dtype=np.int64)
            for f in range(self.n_morphisms):
                left = self.table[:, f] == self.identity[self.dom[f]]
                right = self.table[f, :] == self.identity[self.cod[f]]
                candidates = np.flatnonzero(left & right & (self.identity[self.dom[f]] >= 0))
                if len(candidates):
                    inverses[f] = candidates[0]
            self._inverses = _frozen(inverses)
        return self._inverses

    def object_label(self, index):
        return self.objects[index]

    def morphism_label(self, index):
        return self.morphisms[index].id

    def with_composition(self, g, f, h):
        table = self.table.copy()
        table[self.morphism_index(g), self.morphism_index(f)] = self.morphism_index(h)
        return FinCategory(self.objects, self.morphisms, self.identity, table,
                           name=self.name, groupoid=self.groupoid, factors=self.factors)

    def with_identity(self, obj, mid):
        identity = self.identity.copy()
        identity[self.object_index(obj)] = self.morphism_index(mid)
        return FinCategory(self.objects, self.morphisms, identity, self.table,
                           name=self.name, groupoid=self.groupoid, factors=self.factors)

    def __repr__(self):
        return (f'FinCategory({self.name!r}, {self.n_objects} objects, '
                f'{self.n_morphisms} morphisms)')


def compose(C, g, f):
    """Return the id of g after f in ``C``."""
    gi, fi = C.morphism_index(g), C.morphism_index(f)
    if C.cod[fi] != C.dom[gi]:
        raise NonComposable(f'{g!r} after {f!r}: codomain {C.morphisms[fi].cod!r} '
                            f'does not match domain {C.morphisms[gi].dom!r}')
    result = C.table[gi, fi]
    if result < 0:
        raise MalformedTable(f'{C.name}: composition of {g!r} after {f!r} is missing')
    return C.morphisms[result].id


def _endpoint_code(C, dom, cod):
    return np.where((dom >= 0) & (cod >= 0), dom * max(C.n_objects, 1) + cod, -1)


def _endpoint_label(C):
    n = max(C.n_objects, 1)
    return lambda code: f'{C.objects[code // n]}->{C.objects[code % n]}'


def check_category_laws(C, options=None):
    options = options or CheckOptions()
    report = DiagramReport(f'category[{C.name}]')
    with report.timed():
        objects = np.arange(C.n_objects)
        ident = C.identity
        report.add(compare_legs(
            'identity_typing', [objects],
            _endpoint_code(C, safe_take(C.dom, ident), safe_take(C.cod, ident)),
            _endpoint_code(C, objects, objects),
            lambda raw: (C.objects[raw[0]],), _endpoint_label(C), options))

        m = C.n_morphisms
        g, f = np.meshgrid(np.arange(m), np.arange(m), indexing='ij')
        g, f = g.reshape(-1), f.reshape(-1)
        pair_label = (lambda raw: (C.morphism_label(raw[0]), C.morphism_label(raw[1])))
        defined_label = (lambda value: 'defined' if value else 'undefined')
        report.add(compare_legs(
            'composition_domain', [g, f],
            (C.table[g, f] >= 0).astype(np.int64),
            (C.dom[g] == C.cod[f]).astype(np.int64),
            pair_label, defined_label, options))

        g, f = C.composable()
        h = C.compose_indices(g, f)
        report.add(compare_legs(
            'composition_typing', [g, f],
            _endpoint_code(C, safe_take(C.dom, h), safe_take(C.cod, h)),
            _endpoint_code(C, C.dom[f], C.cod[g]),
            pair_label, _endpoint_label(C), options))

        morphisms = np.arange(m)
        single = (lambda raw: (C.morphism_label(raw[0]),))
        report.add(compare_legs(
            'left_unit', [morphisms],
            C.compose_indices(safe_take(ident, C.cod), morphisms), morphisms,
            single, C.morphism_label, options))
        report.add(compare_legs(
            'right_unit', [morphisms],
            C.compose_indices(morphisms, safe_take(ident, C.dom)), morphisms,
            single, C.morphism_label, options))

        space = IndexSpace.cube(m, 3, options)
        if space.count and m:
            h, g, f = space.columns
            keep = (C.dom[h] == C.cod[g]) & (C.dom[g] == C.cod[f])
            h, g, f = h[keep], g[keep], f[keep]
        else:
            h = g = f = np.zeros(0, dtype=np.int64)
        report.add(compare_legs(
            'associativity', [h, g, f],
            C.compose_indices(h, C.compose_indices(g, f)),
            C.compose_indices(C.compose_indices(h, g), f),
            lambda raw: tuple(C.morphism_label(index) for index in raw),
            C.morphism_label, options, exhaustive=space.exhaustive,
            sample_size=len(h), seed=options.seed))

        if C.groupoid:
            report.add(compare_legs(
                'invertibility', [morphisms],
                (C.inverses >= 0).astype(np.int64), np.ones(m, dtype=np.int64),
                single, lambda value: 'invertible' if value else 'no inverse', options))
    logger.debug(f'{report.suite}: {"pass" if report.passed else "fail"}')
    return report


def product_category(*factors, name=None):
    """
    Product of finitely many categories.

    Objects and morphisms are flat tuples of factor ids; composition and
    identities are taken componentwise.
    """
    if not factors:
        raise ArityMismatch('product_category needs at least one factor')
    name = name or 'x'.join(factor.name for factor in factors)
    object_shape = tuple(factor.n_objects for factor in factors)
    morphism_shape = tuple(factor.n_morphisms for factor in factors)
    objects = list(itertools.product(*(factor.objects for factor in factors)))
    morphisms = [
        Morphism(tuple(m.id for m in parts), tuple(m.dom for m in parts),
                 tuple(m.cod for m in parts))
        for parts in itertools.product(*(factor.morphisms for factor in factors))]
    groupoid = all(factor.groupoid for factor in factors)
    n, m = len(objects), len(morphisms)
    if n == 0 or m == 0:
        return FinCategory(objects, morphisms, np.full(n, -1), np.zeros((m, m)),
                           name=name, groupoid=groupoid, factors=factors)

    object_columns = np.unravel_index(np.arange(n), object_shape)
    parts = [factor.identity[column] for factor, column in zip(factors, object_columns)]
    identity = _ravel_valid(parts, morphism_shape)

    g, f = np.meshgrid(np.arange(m), np.arange(m), indexing='ij')
    g_parts = np.unravel_index(g.reshape(-1), morphism_shape)
    f_parts = np.unravel_index(f.reshape(-1), morphism_shape)
    parts = [factor.table[gk, fk] for factor, gk, fk in zip(factors, g_parts, f_parts)]
    table = _ravel_valid(parts, morphism_shape).reshape(m, m)
    return FinCategory(objects, morphisms, identity, table, name=name,
                       groupoid=groupoid, factors=factors)


def _ravel_valid(parts, shape):
    valid = np.all([part >= 0 for part in parts], axis=0)
    clipped = tuple(np.where(valid, part, 0) for part in parts)
    return np.where(valid, np.ravel_multi_index(clipped, shape), -1)


def power_category(C, n):
    """The n-fold product of ``C`` with itself, cached on ``C``."""
    powers = C.__dict__.setdefault('_powers', {})
    if n not in powers:
        powers[n] = product_category(*([C] * n), name=f'{C.name}^{n}')
    return powers[n]


def terminal_category(name='1'):
    return FinCategory.from_tables(['*'], [('1*', '*', '*')], {'*': '1*'},
                                   {('1*', '1*'): '1*'}, name=name, groupoid=True)


def empty_category(name='0'):
    return FinCategory([], [], [], np.zeros((0, 0)), name=name, groupoid=True)


class FinFunctor:

    def __init__(self, source, target, object_map, morphism_map, name=''):
        self.source = source
        self.target = target
        self.name = name
        self.object_map = _frozen(object_map).reshape(source.n_objects)
        self.morphism_map = _frozen(morphism_map).reshape(source.n_morphisms)
        for label, array, bound in (('object', self.object_map, target.n_objects),
                                    ('morphism', self.morphism_map, target.n_morphisms)):
            if array.size and (array.min() < 0 or array.max() >= bound):
                raise MalformedMap(f'{name}: {label} map is not total into {target.name}')

    @classmethod
    def from_maps(cls, source, target, object_map, morphism_map, name=''):
        try:
            objects = [target.object_index(object_map[obj]) for obj in source.objects]
            morphisms = [target.morphism_index(morphism_map[m.id]) for m in source.morphisms]
        except KeyError as e:
            raise MalformedMap(f'{name}: no image for {e.args[0]!r}')
        except (UnknownObject, UnknownMorphism) as e:
            raise MalformedMap(f'{name}: {e}')
        return cls(source, target, objects, morphisms, name=name)

    @classmethod
    def identity(cls, C):
        return cls(C, C, np.arange(C.n_objects), np.arange(C.n_morphisms), name=f'id[{C.name}]')

    def apply_object(self, obj):
        return self.target.objects[self.object_map[self.source.object_index(obj)]]

    def apply_morphism(self, mid):
        return self.target.morphisms[self.morphism_map[self.source.morphism_index(mid)]].id

    def with_morphism(self, mid, image):
        morphism_map = self.morphism_map.copy()
        morphism_map[self.source.morphism_index(mid)] = self.target.morphism_index(image)
        return FinFunctor(self.source, self.target, self.object_map, morphism_map, name=self.name)

    def __repr__(self):
        return f'FinFunctor({self.name!r}: {self.source.name} -> {self.target.name})'


def compose_functors(G, F):
    if F.target is not G.source:
        raise StructureMismatch(f'{G.name} after {F.name}: categories do not match')
    return FinFunctor(F.source, G.target, G.object_map[F.object_map],
                      G.morphism_map[F.morphism_map], name=f'{G.name}.{F.name}')


def projection_functor(P, k):
    """The k-th projection out of a category built by product_category."""
    if not P.factors or not 0 <= k < len(P.factors):
        raise ArityMismatch(f'{P.name} has no factor {k}')
    shape_o = tuple(factor.n_objects for factor in P.factors)
    shape_m = tuple(factor.n_morphisms for factor in P.factors)
    objects = np.unravel_index(np.arange(P.n_objects), shape_o)[k] if P.n_objects else []
    morphisms = np.unravel_index(np.arange(P.n_morphisms), shape_m)[k] if P.n_morphisms else []
    return FinFunctor(P, P.factors[k], objects, morphisms, name=f'pr{k}')


def check_functor_laws(F, options=None):
    options = options or CheckOptions()
    S, T = F.source, F.target
    report = DiagramReport(f'functor[{F.name}]')
    with report.timed():
        om, mm = F.object_map, F.morphism_map
        morphisms = np.arange(S.n_morphisms)
        single = (lambda raw: (S.morphism_label(raw[0]),))
        report.add(compare_legs(
            'endpoints', [morphisms],
            _endpoint_code(T, T.dom[mm], T.cod[mm]),
            _endpoint_code(T, om[S.dom], om[S.cod]),
            single, _endpoint_label(T), options))

        objects = np.arange(S.n_objects)
        report.add(compare_legs(
            'identities', [objects],
            safe_take(mm, S.identity), safe_take(T.identity, om),
            lambda raw: (S.object_label(raw[0]),), T.morphism_label, options))

        g, f = S.composable()
        report.add(compare_legs(
            'composition', [g, f],
            safe_take(mm, S.compose_indices(g, f)),
            T.compose_indices(mm[g], mm[f]),
            lambda raw: (S.morphism_label(raw[0]), S.morphism_label(raw[1])),
            T.morphism_label, options))
    return report


class NatFamily:
    """
    Components indexed by tuples of objects of ``category``.

    ``components`` has shape (n,) * arity and holds morphism indices of the
    category the components live in (``category`` unless ``codomain`` is given).
    """

    def __init__(self, category, arity, components, source=None, target=None, name='',
                 codomain=None):
        if arity < 1:
            raise ArityMismatch(f'{name}: arity must be positive')
        self.category = category
        self.codomain = codomain or category
        self.arity = arity
        self.source = source
        self.target = target
        self.name = name
        shape = (category.n_objects,) * arity
        components = np.asarray(components, dtype=np.int64)
        if components.size != int(np.prod(shape)):
            raise ArityMismatch(f'{name}: expected {int(np.prod(shape))} components, '
                                f'got {components.size}')
        self.components = _frozen(components.reshape(shape))
        if components.size and (components.min() < 0 or
                                components.max() >= self.codomain.n_morphisms):
            raise MalformedMap(f'{name}: components reference unknown morphisms')

    @classmethod
    def from_mapping(cls, category, arity, mapping, source=None, target=None, name='',
                     codomain=None):
        codomain = codomain or category
        components = np.empty((category.n_objects,) * arity, dtype=np.int64)
        for position in itertools.product(range(category.n_objects), repeat=arity):
            key = tuple(category.objects[index] for index in position)
            try:
                mid = mapping[key if arity > 1 else key[0]]
            except KeyError:
                raise MalformedMap(f'{name}: no component at {key}')
            try:
                components[position] = codomain.morphism_index(mid)
            except UnknownMorphism as e:
                raise MalformedMap(f'{name}: {e}')
        return cls(category, arity, components, source, target, name, codomain)

    @classmethod
    def from_function(cls, category, arity, function, source=None, target=None, name='',
                      codomain=None):
        codomain = codomain or category
        mapping = {}
        for key in itertools.product(category.objects, repeat=arity):
            mapping[key if arity > 1 else key[0]] = function(*key)
        return cls.from_mapping(category, arity, mapping, source, target, name, codomain)

    def component(self, *objs):
        position = tuple(self.category.object_index(obj) for obj in objs)
        return self.codomain.morphisms[self.components[position]].id

    def with_component(self, objs, mid):
        components = self.components.copy()
        position = tuple(self.category.object_index(obj) for obj in objs)
        components[position] = self.codomain.morphism_index(mid)
        return NatFamily(self.category, self.arity, components, self.source, self.target,
                         self.name, self.codomain)

    def items(self):
        for position in itertools.product(range(self.category.n_objects), repeat=self.arity):
            key = tuple(self.category.objects[index] for index in position)
            yield key, self.codomain.morphisms[self.components[position]].id

    def __repr__(self):
        return f'NatFamily({self.name!r}, arity {self.arity})'


def check_components(F, G, family, options=None):
    """Check that every component of ``family`` runs from F(index) to G(index)."""
    options = options or CheckOptions()
    _require_parallel(F, G, family)
    D = F.target
    theta = family.components.reshape(-1)
    objects = np.arange(F.source.n_objects)
    return compare_legs(
        f'{family.name}.typing', [objects],
        _endpoint_code(D, D.dom[theta], D.cod[theta]),
        _endpoint_code(D, F.object_map, G.object_map),
        lambda raw: _as_tuple(F.source.object_label(raw[0])), _endpoint_label(D), options)


def check_naturality(F, G, family, options=None):
    """Check every naturality square G(f) . theta_A = theta_B . F(f) for f: A -> B."""
    options = options or CheckOptions()
    _require_parallel(F, G, family)
    S, D = F.source, F.target
    theta = family.components.reshape(-1)
    report = DiagramReport(f'naturality[{family.name}]')
    with report.timed():
        report.add(check_components(F, G, family, options))
        space = IndexSpace([np.arange(S.n_morphisms)], options)
        (f,) = space.columns if space.columns else (np.zeros(0, dtype=np.int64),)
        report.add(compare_over(
            space, f'{family.name}.naturality',
            D.compose_indices(G.morphism_map[f], theta[S.dom[f]]),
            D.compose_indices(theta[S.cod[f]], F.morphism_map[f]),
            lambda raw: _as_tuple(S.morphism_label(raw[0])), D.morphism_label))
    return report


def _as_tuple(label):
    return label if isinstance(label, tuple) else (label,)


def _require_parallel(F, G, family):
    if F.source is not G.source or F.target is not G.target:
        raise StructureMismatch(f'{F.name} and {G.name} are not parallel')
    if family.components.size != F.source.n_objects:
        raise ArityMismatch(f'{family.name} has {family.components.size} components, '
                            f'{F.name} has {F.source.n_objects} source objects')
    if family.codomain is not F.target:
        raise StructureMismatch(f'{family.name} does not live in {F.target.name}')
