"""
k-fold monoidal structures on finite categories.

A KFoldStructure carries k tensor functors sharing a strict unit, an
associator family per tensor and an interchanger family per pair i < j.
Every axiom is evaluated as an equality of composite morphism ids over
an index space of object tuples.
"""

from collections import Counter
from contextlib import contextmanager
import itertools
import logging
import threading

import numpy as np

from kfold_deloop.config import CheckOptions
from kfold_deloop.errors import ArityMismatch, IndexOutOfRange, NotSymmetric, StructureMismatch
from kfold_deloop.fincat import (
    check_functor_laws, check_naturality, compose_functors, FinCategory, FinFunctor,
    NatFamily, power_category, safe_take)
from kfold_deloop.formula import associator_formulas, braiding_formulas, interchanger_formulas
from kfold_deloop.report import (
    CheckResult, compare_legs, compare_over, DiagramReport, IndexSpace, Status)

logger = logging.getLogger(__name__)

_recorders = threading.local()


def _active_recorders():
    if not hasattr(_recorders, 'stack'):
        _recorders.stack = []
    return _recorders.stack


class KFoldStructure:

    def __init__(self, base, unit, tensors, associators, interchangers, name=''):
        self.base = base
        self.name = name or base.name
        self.k = len(tensors)
        if self.k < 1:
            raise IndexOutOfRange('a k-fold structure needs at least one tensor')
        self.unit = unit
        self.unit_index = base.object_index(unit)
        self.tensors = list(tensors)
        self.associators = list(associators)
        self.interchangers = dict(interchangers)

        square = power_category(base, 2)
        for i, functor in enumerate(self.tensors, start=1):
            if functor.source is not square or functor.target is not base:
                raise StructureMismatch(f'{self.name}: tensor {i} is not a functor '
                                        f'{base.name}^2 -> {base.name}')
        if len(self.associators) != self.k:
            raise ArityMismatch(f'{self.name}: expected {self.k} associators')
        for family in self.associators:
            _require_family(family, base, 3)
        expected = set(itertools.combinations(range(1, self.k + 1), 2))
        if set(self.interchangers) != expected:
            raise ArityMismatch(f'{self.name}: interchangers must be indexed by all pairs i < j')
        for family in self.interchangers.values():
            _require_family(family, base, 4)

        n, m = base.n_objects, base.n_morphisms
        self._objects = [t.object_map.reshape(n, n) for t in self.tensors]
        self._morphisms = [t.morphism_map.reshape(m, m) for t in self.tensors]
        self._functors = {}

    @classmethod
    def from_functions(cls, base, unit, k, tensor_object, tensor_morphism, associator,
                       interchanger, name=''):
        """
        Build a structure from id-level callables.

        :param tensor_object: (i, a, b) -> object id of a *i b
        :param tensor_morphism: (i, f, g) -> morphism id of f *i g
        :param associator: (i, a, b, c) -> component id
        :param interchanger: (i, j, a, b, c, d) -> component id
        """
        tensors = [tensor_functor(base, lambda a, b, i=i: tensor_object(i, a, b),
                                  lambda f, g, i=i: tensor_morphism(i, f, g), name=f'*{i}')
                   for i in range(1, k + 1)]
        associators = [NatFamily.from_function(base, 3,
                                               lambda a, b, c, i=i: associator(i, a, b, c),
                                               *associator_formulas(i), name=f'alpha{i}')
                       for i in range(1, k + 1)]
        interchangers = {
            (i, j): NatFamily.from_function(
                base, 4, lambda a, b, c, d, i=i, j=j: interchanger(i, j, a, b, c, d),
                *interchanger_formulas(i, j), name=f'eta{i}{j}')
            for i, j in itertools.combinations(range(1, k + 1), 2)}
        return cls(base, unit, tensors, associators, interchangers, name=name)

    def check_index(self, *indices):
        for index in indices:
            if not 1 <= index <= self.k:
                raise IndexOutOfRange(f'{self.name}: tensor index {index} outside 1..{self.k}')

    @contextmanager
    def recording(self):
        """
        Count the associator and interchanger lookups made on this thread.

        Yields a Counter keyed ('alpha', i) and ('eta', i, j); recordings nest.
        """
        lookups = Counter()
        stack = _active_recorders()
        stack.append((self, lookups))
        try:
            yield lookups
        finally:
            stack.pop()

    def _record(self, key):
        for owner, lookups in _active_recorders():
            if owner is self:
                lookups[key] += 1

    def tensor(self, i):
        self.check_index(i)
        return self.tensors[i - 1]

    def associator(self, i):
        self.check_index(i)
        self._record(('alpha', i))
        return self.associators[i - 1]

    def interchanger(self, i, j):
        self.check_index(i, j)
        if i >= j:
            raise IndexOutOfRange(f'{self.name}: interchanger needs i < j, got ({i}, {j})')
        self._record(('eta', i, j))
        return self.interchangers[(i, j)]

    def tensor_objects(self, i, a, b):
        self.check_index(i)
        return safe_take(self._objects[i - 1], a, b)

    def tensor_morphisms(self, i, f, g):
        self.check_index(i)
        return safe_take(self._morphisms[i - 1], f, g)

    def tensor_object(self, i, a, b):
        index = self._objects[i - 1][self.base.object_index(a), self.base.object_index(b)]
        return self.base.objects[index]

    def tensor_morphism(self, i, f, g):
        index = self._morphisms[i - 1][self.base.morphism_index(f), self.base.morphism_index(g)]
        return self.base.morphisms[index].id

    def formula_functor(self, formula):
        if formula not in self._functors:
            self._functors[formula] = formula.functor(self)
        return self._functors[formula]

    def ids(self, indices):
        return tuple(self.base.objects[index] for index in indices)

    def with_tensor(self, i, functor):
        tensors = list(self.tensors)
        tensors[i - 1] = functor
        return KFoldStructure(self.base, self.unit, tensors, self.associators,
                              self.interchangers, self.name)

    def with_tensor_object(self, i, a, b, c):
        t = self.tensor(i)
        object_map = t.object_map.copy()
        object_map[t.source.object_index((a, b))] = self.base.object_index(c)
        return self.with_tensor(i, FinFunctor(t.source, t.target, object_map, t.morphism_map,
                                              name=t.name))

    def with_tensor_morphism(self, i, f, g, h):
        return self.with_tensor(i, self.tensor(i).with_morphism((f, g), h))

    def with_associator(self, i, family):
        associators = list(self.associators)
        associators[i - 1] = family
        return KFoldStructure(self.base, self.unit, self.tensors, associators,
                              self.interchangers, self.name)

    def with_associator_component(self, i, objs, mid):
        return self.with_associator(i, self.associator(i).with_component(objs, mid))

    def with_interchanger(self, i, j, family):
        interchangers = dict(self.interchangers)
        interchangers[(i, j)] = family
        return KFoldStructure(self.base, self.unit, self.tensors, self.associators,
                              interchangers, self.name)

    def with_interchanger_component(self, i, j, objs, mid):
        return self.with_interchanger(i, j, self.interchanger(i, j).with_component(objs, mid))

    def restrict(self, objects, name=None):
        """Full subcategory on ``objects``, which must be closed under every tensor."""
        C = self.base
        keep = np.array(sorted(C.object_index(obj) for obj in objects), dtype=np.int64)
        remap = np.full(C.n_objects, -1, dtype=np.int64)
        remap[keep] = np.arange(len(keep))
        for i in range(1, self.k + 1):
            if np.any(remap[self._objects[i - 1][np.ix_(keep, keep)]] < 0):
                raise StructureMismatch(f'{self.name}: {sorted(map(str, objects))} is not closed '
                                        f'under tensor {i}')
        kept = np.flatnonzero((remap[C.dom] >= 0) & (remap[C.cod] >= 0))
        mremap = np.full(C.n_morphisms, -1, dtype=np.int64)
        mremap[kept] = np.arange(len(kept))
        sub = FinCategory([C.objects[index] for index in keep],
                          [C.morphisms[index] for index in kept],
                          mremap[C.identity[keep]],
                          safe_take(mremap, C.table[np.ix_(kept, kept)]),
                          name=name or f'{C.name}|{len(keep)}', groupoid=C.groupoid)
        square = power_category(sub, 2)
        tensors = [FinFunctor(square, sub, remap[o[np.ix_(keep, keep)]].reshape(-1),
                              mremap[mo[np.ix_(kept, kept)]].reshape(-1), name=t.name)
                   for t, o, mo in zip(self.tensors, self._objects, self._morphisms)]
        associators = [NatFamily(sub, 3, mremap[a.components[np.ix_(keep, keep, keep)]],
                                 a.source, a.target, a.name) for a in self.associators]
        interchangers = {key: NatFamily(sub, 4,
                                        mremap[e.components[np.ix_(keep, keep, keep, keep)]],
                                        e.source, e.target, e.name)
                         for key, e in self.interchangers.items()}
        return KFoldStructure(sub, self.unit, tensors, associators, interchangers,
                              name=name or sub.name)

    def __repr__(self):
        return f'KFoldStructure({self.name!r}, k={self.k})'


def _require_family(family, base, arity):
    if family.category is not base or family.codomain is not base or family.arity != arity:
        raise ArityMismatch(f'{family.name}: expected an arity-{arity} family on {base.name}')


def tensor_functor(base, tensor_object, tensor_morphism, name='*'):
    square = power_category(base, 2)
    return FinFunctor.from_maps(
        square, base,
        {(a, b): tensor_object(a, b) for a, b in square.objects},
        {(f, g): tensor_morphism(f, g) for f, g in (m.id for m in square.morphisms)},
        name=name)


def _object_tuple(V):
    return lambda raw: V.ids(raw)


def check_pentagon(V, i, options=None, subset=None):
    V.check_index(i)
    options = options or CheckOptions()
    C = V.base
    report = DiagramReport(f'pentagon[{V.name}, {i}]')
    with report.timed():
        space = IndexSpace.cube(C.n_objects, 4, options, subset)
        u, v, w, x = space.columns or [np.zeros(0, dtype=np.int64)] * 4
        t = (lambda a, b: V.tensor_objects(i, a, b))
        tm = (lambda f, g: V.tensor_morphisms(i, f, g))
        a = V.associator(i).components
        one = C.identity
        top = C.chain(a[u, v, t(w, x)], a[t(u, v), w, x])
        bottom = C.chain(tm(one[u], a[v, w, x]), a[u, t(v, w), x], tm(a[u, v, w], one[x]))
        report.add(compare_over(space, f'pentagon[{i}]', top, bottom, _object_tuple(V),
                                C.morphism_label), ('pentagon', i))
    return report


def check_strict_units(V, options=None):
    options = options or CheckOptions()
    C = V.base
    report = DiagramReport(f'strict_units[{V.name}]')
    with report.timed():
        objects = np.arange(C.n_objects)
        morphisms = np.arange(C.n_morphisms)
        unit = np.full(C.n_objects, V.unit_index)
        one_unit = np.full(C.n_morphisms, C.identity[V.unit_index])
        for i in range(1, V.k + 1):
            key = ('strict_units', i)
            obj_label = (lambda raw: (C.objects[raw[0]],))
            mor_label = (lambda raw: (C.morphism_label(raw[0]),))
            report.add(compare_legs(f'unit*{i}.objects.left', [objects],
                                    V.tensor_objects(i, unit, objects), objects,
                                    obj_label, C.object_label, options), key)
            report.add(compare_legs(f'unit*{i}.objects.right', [objects],
                                    V.tensor_objects(i, objects, unit), objects,
                                    obj_label, C.object_label, options), key)
            report.add(compare_legs(f'unit*{i}.morphisms.left', [morphisms],
                                    V.tensor_morphisms(i, one_unit, morphisms), morphisms,
                                    mor_label, C.morphism_label, options), key)
            report.add(compare_legs(f'unit*{i}.morphisms.right', [morphisms],
                                    V.tensor_morphisms(i, morphisms, one_unit), morphisms,
                                    mor_label, C.morphism_label, options), key)
    return report


def check_isomorphisms(V, i, options=None):
    V.check_index(i)
    options = options or CheckOptions()
    C = V.base
    space = IndexSpace.cube(C.n_objects, 3, options)
    a, b, c = space.columns or [np.zeros(0, dtype=np.int64)] * 3
    components = V.associator(i).components[a, b, c]
    return compare_over(space, f'alpha{i}.invertible',
                        (C.inverses[components] >= 0).astype(np.int64),
                        np.ones(len(components), dtype=np.int64), _object_tuple(V),
                        lambda value: 'invertible' if value else 'no inverse')


def check_family(V, family, options=None):
    """Typing and naturality of a family against its source and target formulas."""
    F = V.formula_functor(family.source)
    G = V.formula_functor(family.target)
    return check_naturality(F, G, family, options)


def check_interchange_units(V, i, j, options=None):
    V.check_index(i, j)
    if i >= j:
        raise IndexOutOfRange(f'interchange units need i < j, got ({i}, {j})')
    options = options or CheckOptions()
    C = V.base
    eta = V.interchanger(i, j).components
    report = DiagramReport(f'interchange_units[{V.name}, {i}{j}]')
    with report.timed():
        space = IndexSpace.cube(C.n_objects, 2, options)
        a, b = space.columns or [np.zeros(0, dtype=np.int64)] * 2
        unit = np.full(len(a), V.unit_index)
        one_j = C.identity[V.tensor_objects(j, a, b)]
        one_i = C.identity[V.tensor_objects(i, a, b)]
        cases = (
            ('internal_unit', 'ABII', (a, b, unit, unit), one_j),
            ('internal_unit', 'IIAB', (unit, unit, a, b), one_j),
            ('external_unit', 'AIBI', (a, unit, b, unit), one_i),
            ('external_unit', 'IAIB', (unit, a, unit, b), one_i),
        )
        for family, pattern, columns, expected in cases:
            report.add(compare_legs(f'eta{i}{j}.{family}.{pattern}', list(columns),
                                    eta[columns], expected, _object_tuple(V), C.morphism_label,
                                    options, space.exhaustive, space.count, options.seed),
                       (family, i, j))
    return report


def check_interchange_assoc(V, i, j, mode, options=None, subset=None):
    V.check_index(i, j)
    if i >= j:
        raise IndexOutOfRange(f'interchange associativity needs i < j, got ({i}, {j})')
    if mode not in ('internal', 'external'):
        raise ValueError(f'mode must be internal or external, got {mode!r}')
    options = options or CheckOptions()
    C = V.base
    one = C.identity
    eta = V.interchanger(i, j).components
    ti = (lambda a, b: V.tensor_objects(i, a, b))
    tj = (lambda a, b: V.tensor_objects(j, a, b))
    mi = (lambda f, g: V.tensor_morphisms(i, f, g))
    mj = (lambda f, g: V.tensor_morphisms(j, f, g))
    report = DiagramReport(f'interchange_{mode}_assoc[{V.name}, {i}{j}]')
    with report.timed():
        space = IndexSpace.cube(C.n_objects, 6, options, subset)
        u, v, w, x, y, z = space.columns or [np.zeros(0, dtype=np.int64)] * 6
        if mode == 'internal':
            alpha = V.associator(i).components
            left = C.chain(mj(alpha[u, w, y], alpha[v, x, z]),
                           eta[ti(u, w), ti(v, x), y, z],
                           mi(eta[u, v, w, x], one[tj(y, z)]))
            right = C.chain(eta[u, v, ti(w, y), ti(x, z)],
                            mi(one[tj(u, v)], eta[w, x, y, z]),
                            alpha[tj(u, v), tj(w, x), tj(y, z)])
        else:
            alpha = V.associator(j).components
            left = C.chain(alpha[ti(u, x), ti(v, y), ti(w, z)],
                           mj(eta[u, v, x, y], one[ti(w, z)]),
                           eta[tj(u, v), w, tj(x, y), z])
            right = C.chain(mj(one[ti(u, x)], eta[v, w, y, z]),
                            eta[u, tj(v, w), x, tj(y, z)],
                            mi(alpha[u, v, w], alpha[x, y, z]))
        report.add(compare_over(space, f'eta{i}{j}.{mode}_assoc', left, right,
                                _object_tuple(V), C.morphism_label),
                   (f'{mode}_assoc', i, j))
    return report


def check_giant_hexagon(V, i, j, k, options=None, subset=None):
    if V.k < 3:
        raise IndexOutOfRange(f'{V.name}: the giant hexagon needs k >= 3, got k = {V.k}')
    V.check_index(i, j, k)
    if not i < j < k:
        raise IndexOutOfRange(f'giant hexagon needs i < j < k, got ({i}, {j}, {k})')
    options = options or CheckOptions()
    C = V.base
    e_ij = V.interchanger(i, j).components
    e_ik = V.interchanger(i, k).components
    e_jk = V.interchanger(j, k).components
    t = V.tensor_objects
    tm = V.tensor_morphisms
    report = DiagramReport(f'giant_hexagon[{V.name}, {i}{j}{k}]')
    with report.timed():
        space = IndexSpace.cube(C.n_objects, 8, options, subset)
        if not space.exhaustive:
            logger.warning(f'{report.suite}: {space.size} tuples exceed the budget, '
                           f'sampling {space.count} with seed {options.seed}')
        a, a2, b, b2, c, c2, d, d2 = space.columns or [np.zeros(0, dtype=np.int64)] * 8
        left = C.chain(
            tm(k, e_ij[a, b, c, d], e_ij[a2, b2, c2, d2]),
            e_ik[t(j, a, b), t(j, a2, b2), t(j, c, d), t(j, c2, d2)],
            tm(i, e_jk[a, a2, b, b2], e_jk[c, c2, d, d2]))
        right = C.chain(
            e_jk[t(i, a, c), t(i, a2, c2), t(i, b, d), t(i, b2, d2)],
            tm(j, e_ik[a, a2, c, c2], e_ik[b, b2, d, d2]),
            e_ij[t(k, a, a2), t(k, b, b2), t(k, c, c2), t(k, d, d2)])
        report.add(compare_over(space, f'giant_hexagon[{i}{j}{k}]', left, right,
                                _object_tuple(V), C.morphism_label),
                   ('giant_hexagon', i, j, k))
    return report


def collapse_diagnostic(V, i, j, options=None):
    """
    Report whether identity interchangers force the two tensors to coincide.

    When every component of eta^{ij} is an identity, A *i B and A *j B must be
    the same table entry; otherwise the diagnostic does not apply.
    """
    options = options or CheckOptions()
    C = V.base
    eta = V.interchanger(i, j).components.reshape(-1)
    name = f'collapse[{i}{j}]'
    if eta.size == 0 or not np.all(eta == C.identity[C.dom[eta]]):
        return CheckResult.not_applicable(name, f'eta{i}{j} is not the identity family')
    n = C.n_objects
    space = IndexSpace.cube(n, 2, options)
    a, b = space.columns
    result = compare_over(space, name, V.tensor_objects(i, a, b), V.tensor_objects(j, a, b),
                          _object_tuple(V), C.object_label)
    if result.passed:
        result.note = f'eta{i}{j} is the identity and *{i} = *{j} on objects'
        logger.info(f'{V.name}: {result.note}')
    return result


def check_kfold(V, options=None):
    options = options or CheckOptions()
    report = DiagramReport(f'kfold[{V.name}]')
    with report.timed():
        for i in range(1, V.k + 1):
            report.extend(check_functor_laws(V.tensor(i), options), prefix=f'tensor{i}')
            report.extend(check_family(V, V.associator(i), options), prefix=f'alpha{i}')
            report.add(check_isomorphisms(V, i, options), ('associator_iso', i))
            report.extend(check_pentagon(V, i, options))
        report.extend(check_strict_units(V, options))
        for i, j in itertools.combinations(range(1, V.k + 1), 2):
            report.extend(check_family(V, V.interchanger(i, j), options), prefix=f'eta{i}{j}')
            report.extend(check_interchange_units(V, i, j, options))
            report.extend(check_interchange_assoc(V, i, j, 'internal', options))
            report.extend(check_interchange_assoc(V, i, j, 'external', options))
            report.add(collapse_diagnostic(V, i, j, options))
        for i, j, k in itertools.combinations(range(1, V.k + 1), 3):
            report.extend(check_giant_hexagon(V, i, j, k, options))
    failing = report.failing()
    if failing:
        logger.info(f'{report.suite}: {len(failing)} of {len(report.checks)} checks fail')
    else:
        logger.info(f'{report.suite}: all {len(report.checks)} checks pass')
    return report


class SymmetricStructure:

    def __init__(self, base, tensor, unit, associator, braiding, name=''):
        self.base = base
        self.name = name or base.name
        self.tensor = tensor
        self.unit = unit
        self.associator = associator
        self.braiding = braiding
        _require_family(braiding, base, 2)
        self._monoidal = KFoldStructure(base, unit, [tensor], [associator], {}, name=self.name)

    @classmethod
    def from_functions(cls, base, unit, tensor_object, tensor_morphism, associator, braiding,
                       name=''):
        tensor = tensor_functor(base, tensor_object, tensor_morphism, name='*')
        alpha = NatFamily.from_function(base, 3, associator, *associator_formulas(1), name='alpha')
        c = NatFamily.from_function(base, 2, braiding, *braiding_formulas(), name='c')
        return cls(base, tensor, unit, alpha, c, name=name)

    def monoidal(self):
        """The underlying one-fold structure."""
        return self._monoidal

    def with_braiding(self, braiding):
        return SymmetricStructure(self.base, self.tensor, self.unit, self.associator, braiding,
                                  self.name)

    def __repr__(self):
        return f'SymmetricStructure({self.name!r})'


def check_symmetric(Sym, options=None):
    options = options or CheckOptions()
    V = Sym.monoidal()
    C = V.base
    report = DiagramReport(f'symmetric[{Sym.name}]')
    with report.timed():
        report.extend(check_functor_laws(Sym.tensor, options), prefix='tensor')
        report.extend(check_family(V, Sym.associator, options), prefix='alpha')
        report.add(check_isomorphisms(V, 1, options), ('associator_iso', 1))
        report.extend(check_pentagon(V, 1, options))
        report.extend(check_strict_units(V, options))
        report.extend(check_family(V, Sym.braiding, options), prefix='braiding')

        c = Sym.braiding.components
        alpha = Sym.associator.components
        inv = C.inverses
        one = C.identity
        t = (lambda a, b: V.tensor_objects(1, a, b))
        tm = (lambda f, g: V.tensor_morphisms(1, f, g))

        space = IndexSpace.cube(C.n_objects, 3, options)
        a, b, d = space.columns or [np.zeros(0, dtype=np.int64)] * 3
        report.add(compare_over(
            space, 'hexagon.forward',
            C.chain(alpha[b, d, a], c[a, t(b, d)], alpha[a, b, d]),
            C.chain(tm(one[b], c[a, d]), alpha[b, a, d], tm(c[a, b], one[d])),
            _object_tuple(V), C.morphism_label), ('hexagon', 1))
        report.add(compare_over(
            space, 'hexagon.backward',
            C.chain(safe_take(inv, alpha[d, a, b]), c[t(a, b), d], safe_take(inv, alpha[a, b, d])),
            C.chain(tm(c[a, d], one[b]), safe_take(inv, alpha[a, d, b]), tm(one[a], c[b, d])),
            _object_tuple(V), C.morphism_label), ('hexagon', 1))

        space = IndexSpace.cube(C.n_objects, 2, options)
        a, b = space.columns or [np.zeros(0, dtype=np.int64)] * 2
        report.add(compare_over(space, 'symmetry', C.compose_indices(c[b, a], c[a, b]),
                                one[t(a, b)], _object_tuple(V), C.morphism_label),
                   ('symmetry', 1))
    return report


def from_symmetric(Sym, k, options=None):
    """
    View a symmetric monoidal structure as a k-fold one.

    Every tensor is the symmetric tensor, every associator is alpha, and for
    i < j the interchanger component at (A, B, C, D) is the composite

        (A*B)*(C*D) -> A*(B*(C*D))       alpha[A, B, C*D]
                    -> A*((B*C)*D)       1_A * alpha^-1[B, C, D]
                    -> A*((C*B)*D)       1_A * (c[B, C] * 1_D)
                    -> A*(C*(B*D))       1_A * alpha[C, B, D]
                    -> (A*C)*(B*D)       alpha^-1[A, C, B*D]
    """
    if k < 1:
        raise IndexOutOfRange(f'k must be positive, got {k}')
    report = check_symmetric(Sym, options)
    if not report.passed:
        witness = report.witnesses[0] if report.witnesses else None
        raise NotSymmetric(f'{Sym.name} fails the symmetric pre-checks'
                           + (f': {witness.describe()}' if witness else ''))
    V = Sym.monoidal()
    C = V.base
    n = C.n_objects
    if n:
        a, b, c, d = np.unravel_index(np.arange(n ** 4), (n,) * 4)
    else:
        a = b = c = d = np.zeros(0, dtype=np.int64)
    alpha = Sym.associator.components
    inv = C.inverses
    one = C.identity
    t = (lambda x, y: V.tensor_objects(1, x, y))
    tm = (lambda f, g: V.tensor_morphisms(1, f, g))
    eta = C.chain(
        safe_take(inv, alpha[a, c, t(b, d)]),
        tm(one[a], alpha[c, b, d]),
        tm(one[a], tm(Sym.braiding.components[b, c], one[d])),
        tm(one[a], safe_take(inv, alpha[b, c, d])),
        alpha[a, b, t(c, d)])
    if np.any(eta < 0):
        raise NotSymmetric(f'{Sym.name}: interchanger composite is undefined')

    tensors = [Sym.tensor] * k
    associators = [NatFamily(C, 3, alpha, *associator_formulas(i), name=f'alpha{i}')
                   for i in range(1, k + 1)]
    interchangers = {(i, j): NatFamily(C, 4, eta, *interchanger_formulas(i, j), name=f'eta{i}{j}')
                     for i, j in itertools.combinations(range(1, k + 1), 2)}
    logger.debug(f'Built {k}-fold structure from {Sym.name}')
    return KFoldStructure(C, Sym.unit, tensors, associators, interchangers, name=Sym.name)


class MonoidalFunctorData:

    def __init__(self, functor, source, target, lambdas, name=''):
        if source.k != target.k:
            raise StructureMismatch(f'{name}: k differs ({source.k} vs {target.k})')
        if functor.source is not source.base or functor.target is not target.base:
            raise StructureMismatch(f'{name}: functor does not run {source.name} -> {target.name}')
        if len(lambdas) != source.k:
            raise ArityMismatch(f'{name}: expected {source.k} lambda families')
        for family in lambdas:
            if family.category is not source.base or family.codomain is not target.base \
                    or family.arity != 2:
                raise ArityMismatch(f'{name}: lambda families must be pairs of source objects '
                                    f'with components in the target')
        self.functor = functor
        self.source = source
        self.target = target
        self.lambdas = list(lambdas)
        self.name = name or functor.name

    def with_lambda_component(self, i, objs, mid):
        lambdas = list(self.lambdas)
        lambdas[i - 1] = lambdas[i - 1].with_component(objs, mid)
        return MonoidalFunctorData(self.functor, self.source, self.target, lambdas, self.name)

    def __repr__(self):
        return f'MonoidalFunctorData({self.name!r}: {self.source.name} -> {self.target.name})'


def _lambda_family(source, target, components, i, name):
    return NatFamily(source.base, 2, components, name=f'{name}.lambda{i}', codomain=target.base)


def identity_monoidal_functor(V):
    C = V.base
    n = C.n_objects
    a, b = np.meshgrid(np.arange(n), np.arange(n), indexing='ij')
    lambdas = [_lambda_family(V, V, C.identity[V.tensor_objects(i, a, b)], i, 'id')
               for i in range(1, V.k + 1)]
    return MonoidalFunctorData(FinFunctor.identity(C), V, V, lambdas, name=f'id[{V.name}]')


def constant_unit_functor(V, W=None):
    """The functor sending every object to the unit and every morphism to its identity."""
    W = W or V
    S, T = V.base, W.base
    one = T.identity[W.unit_index]
    functor = FinFunctor(S, T, np.full(S.n_objects, W.unit_index),
                         np.full(S.n_morphisms, one), name='const_I')
    lambdas = [_lambda_family(V, W, np.full((S.n_objects,) * 2, one), i, 'const_I')
               for i in range(1, V.k + 1)]
    return MonoidalFunctorData(functor, V, W, lambdas, name=f'const_I[{V.name}]')


def compose_monoidal_functors(G, F):
    """The composite G.F with lambda components G(lambdaF[A, B]) . lambdaG[FA, FB]."""
    if F.target is not G.source:
        raise StructureMismatch(f'{G.name} after {F.name}: structures do not match')
    T = G.target.base
    fo = F.functor.object_map
    gm = G.functor.morphism_map
    lambdas = []
    for i in range(1, F.source.k + 1):
        lam_f = F.lambdas[i - 1].components
        lam_g = G.lambdas[i - 1].components
        xi = T.compose_indices(gm[lam_f], lam_g[fo[:, None], fo[None, :]])
        lambdas.append(_lambda_family(F.source, G.target, xi, i, f'{G.name}.{F.name}'))
    return MonoidalFunctorData(compose_functors(G.functor, F.functor), F.source, G.target,
                               lambdas, name=f'{G.name}.{F.name}')


def _tensor_after_pair(F, i):
    """The functor (A, B) -> F(A) *i F(B) out of the square of the source."""
    S = F.source.base
    P = power_category(S, 2)
    n, m = S.n_objects, S.n_morphisms
    fo, fm = F.functor.object_map, F.functor.morphism_map
    a, b = (np.unravel_index(np.arange(P.n_objects), (n, n)) if P.n_objects
            else (np.zeros(0, dtype=np.int64),) * 2)
    f, g = (np.unravel_index(np.arange(P.n_morphisms), (m, m)) if P.n_morphisms
            else (np.zeros(0, dtype=np.int64),) * 2)
    return FinFunctor(P, F.target.base, F.target.tensor_objects(i, fo[a], fo[b]),
                      F.target.tensor_morphisms(i, fm[f], fm[g]), name=f'F*{i}F')


def check_monoidal_functor(F, options=None):
    options = options or CheckOptions()
    V, W = F.source, F.target
    S, T = V.base, W.base
    fo, fm = F.functor.object_map, F.functor.morphism_map
    report = DiagramReport(f'monoidal_functor[{F.name}]')
    with report.timed():
        report.add(compare_legs('unit', [np.array([V.unit_index])],
                                fo[[V.unit_index]], np.array([W.unit_index]),
                                lambda raw: (S.objects[raw[0]],), T.object_label, options))
        report.extend(check_functor_laws(F.functor, options))
        for i in range(1, V.k + 1):
            lam = F.lambdas[i - 1].components
            report.extend(check_naturality(_tensor_after_pair(F, i),
                                           compose_functors(F.functor, V.tensor(i)),
                                           F.lambdas[i - 1], options))

            space = IndexSpace.cube(S.n_objects, 3, options)
            a, b, c = space.columns or [np.zeros(0, dtype=np.int64)] * 3
            t = (lambda x, y: V.tensor_objects(i, x, y))
            t2 = (lambda x, y: W.tensor_objects(i, x, y))
            tm2 = (lambda f, g: W.tensor_morphisms(i, f, g))
            alpha = V.associator(i).components
            alpha2 = W.associator(i).components
            left = T.chain(fm[alpha[a, b, c]], lam[t(a, b), c], tm2(lam[a, b], T.identity[fo[c]]))
            right = T.chain(lam[a, t(b, c)], tm2(T.identity[fo[a]], lam[b, c]),
                            alpha2[fo[a], fo[b], fo[c]])
            report.add(compare_over(space, f'lambda{i}.associativity', left, right,
                                    _object_tuple(V), T.morphism_label), ('functor_assoc', i))

            objects = np.arange(S.n_objects)
            unit = np.full(S.n_objects, V.unit_index)
            for side, left in (('right', lam[objects, unit]), ('left', lam[unit, objects])):
                report.add(compare_legs(f'lambda{i}.{side}_unit', [objects], left,
                                        T.identity[fo[objects]],
                                        lambda raw: (S.objects[raw[0]],), T.morphism_label,
                                        options), ('functor_unit', i))
        for i, j in itertools.combinations(range(1, V.k + 1), 2):
            lam_i = F.lambdas[i - 1].components
            lam_j = F.lambdas[j - 1].components
            eta = V.interchanger(i, j).components
            eta2 = W.interchanger(i, j).components
            space = IndexSpace.cube(S.n_objects, 4, options)
            a, b, c, d = space.columns or [np.zeros(0, dtype=np.int64)] * 4
            left = T.chain(
                lam_j[V.tensor_objects(i, a, c), V.tensor_objects(i, b, d)],
                W.tensor_morphisms(j, lam_i[a, c], lam_i[b, d]),
                eta2[fo[a], fo[b], fo[c], fo[d]])
            right = T.chain(
                fm[eta[a, b, c, d]],
                lam_i[V.tensor_objects(j, a, b), V.tensor_objects(j, c, d)],
                W.tensor_morphisms(i, lam_j[a, b], lam_j[c, d]))
            report.add(compare_over(space, f'lambda{i}{j}.interchange', left, right,
                                    _object_tuple(V), T.morphism_label),
                       ('functor_interchange', i, j))
    return report


def check_monoidal_nat(theta, F, G, options=None):
    """Naturality of theta: F -> G plus theta[A*B] . lambdaF = lambdaG . (theta[A] * theta[B])."""
    options = options or CheckOptions()
    if F.source is not G.source or F.target is not G.target:
        raise StructureMismatch(f'{F.name} and {G.name} are not parallel')
    V, W = F.source, F.target
    S, T = V.base, W.base
    if theta.arity != 1 or theta.category is not S or theta.codomain is not T:
        raise ArityMismatch(f'{theta.name}: expected one component per source object')
    report = DiagramReport(f'monoidal_nat[{theta.name}]')
    with report.timed():
        report.extend(check_naturality(F.functor, G.functor, theta, options))
        th = theta.components
        for i in range(1, V.k + 1):
            space = IndexSpace.cube(S.n_objects, 2, options)
            a, b = space.columns or [np.zeros(0, dtype=np.int64)] * 2
            left = T.compose_indices(th[V.tensor_objects(i, a, b)],
                                     F.lambdas[i - 1].components[a, b])
            right = T.compose_indices(G.lambdas[i - 1].components[a, b],
                                      W.tensor_morphisms(i, th[a], th[b]))
            report.add(compare_over(space, f'{theta.name}.monoidal{i}', left, right,
                                    _object_tuple(V), T.morphism_label), ('monoidal_nat', i))
    return report


def is_identity_family(family):
    C = family.codomain
    components = family.components.reshape(-1)
    return bool(np.all(components == C.identity[C.dom[components]]))


def report_status(report):
    return Status.PASS if report.passed else Status.FAIL
