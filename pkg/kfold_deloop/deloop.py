"""
The (k-1)-fold monoidal structure on categories enriched over a k-fold monoidal V.

The i-th product of enriched categories uses *_{i+1} on hom-objects and
eta^{1,i+1} to compose; its associator and interchanger are enriched functors
whose hom components are alpha^{i+1} and eta^{i+1,j+1}. verify_delooping
replays every diagram this construction depends on over a sample of
enriched categories, and the level-two functions repeat the construction
for categories enriched over V-Cat.
"""

from concurrent.futures import ThreadPoolExecutor
import itertools
import logging
import math

import numpy as np

from kfold_deloop.config import CheckOptions
from kfold_deloop.enrich import (
    check_enriched_category, check_enriched_functor, check_v_natural, compare_categories,
    compare_functors, compose_enriched_functors, EnrichedCategory, EnrichedFunctor,
    EnrichedNatTransf, identity_functor, identity_transformation, same_category, whisker_left,
    whisker_right)
from kfold_deloop.errors import BaseMismatch, IndexOutOfRange, MalformedTable
from kfold_deloop.monoidal import (
    check_giant_hexagon, check_interchange_assoc, check_interchange_units, check_pentagon)
from kfold_deloop.report import CheckResult, compare_legs, DiagramReport

logger = logging.getLogger(__name__)

UNIT_OBJECT = '0'


def unit_category(V):
    """One object, hom-object I, composition and identity 1_I."""
    one = V.base.identity[V.unit_index]
    return EnrichedCategory(V, [UNIT_OBJECT], [[V.unit_index]], [one], [one], name='I')


def _require_delooped_index(V, *indices):
    for i in indices:
        if not 1 <= i <= V.k - 1:
            raise IndexOutOfRange(f'{V.name}: delooped tensor index {i} outside 1..{V.k - 1}')


def _same_base(*categories):
    base = categories[0].base
    for category in categories[1:]:
        if category.base is not base:
            raise BaseMismatch(f'{category.name} is enriched over {category.base.name}, '
                               f'not {base.name}')
    return base


def _pairs(n, m):
    """Row-major index columns of an n x m grid."""
    if n == 0 or m == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    return np.unravel_index(np.arange(n * m), (n, m))


def tensor_enriched(A, B, i):
    """
    The i-th product A *(1)_i B.

    hom((a, b), (a', b')) = A(a, a') *_{i+1} B(b, b'), composition is
    (M_A *_{i+1} M_B) . eta^{1,i+1} at the four hom-objects and the identity
    at (a, b) is j_a *_{i+1} j_b.
    """
    V = _same_base(A, B)
    _require_delooped_index(V, i)
    C = V.base
    t = i + 1
    nA, nB = A.n_objects, B.n_objects
    objects = [(a, b) for a in A.objects for b in B.objects]
    n = len(objects)

    pa, pb = _pairs(nA, nB)
    hom = V.tensor_objects(t, A.hom[pa[:, None], pa[None, :]], B.hom[pb[:, None], pb[None, :]])

    if n:
        x, y, z = np.indices((n, n, n)).reshape(3, -1)
    else:
        x = y = z = np.zeros(0, dtype=np.int64)
    a, a1, a2 = pa[x], pa[y], pa[z]
    b, b1, b2 = pb[x], pb[y], pb[z]
    eta = V.interchanger(1, t).components
    composition = C.compose_indices(
        V.tensor_morphisms(t, A.composition[a, a1, a2], B.composition[b, b1, b2]),
        eta[A.hom[a1, a2], B.hom[b1, b2], A.hom[a, a1], B.hom[b, b1]])
    identity = V.tensor_morphisms(t, A.identity[pa], B.identity[pb])
    if np.any(composition < 0):
        logger.debug(f'{A.name} *{i} {B.name}: some composites through eta1{t} are undefined')
    return EnrichedCategory(V, objects, hom.reshape(n, n), composition, identity,
                            name=f'({A.name}*{i}{B.name})')


def tensor_enriched_functors(T, S, i):
    """Pairwise object map, hom components T_aa' *_{i+1} S_bb'."""
    V = _same_base(T.source, S.source, T.target, S.target)
    _require_delooped_index(V, i)
    source = tensor_enriched(T.source, S.source, i)
    target = tensor_enriched(T.target, S.target, i)
    pa, pb = _pairs(T.source.n_objects, S.source.n_objects)
    object_map = T.object_map[pa] * S.target.n_objects + S.object_map[pb]
    components = V.tensor_morphisms(i + 1, T.components[pa[:, None], pa[None, :]],
                                    S.components[pb[:, None], pb[None, :]])
    return EnrichedFunctor(source, target, object_map, components, name=f'({T.name}*{i}{S.name})')


def tensor_transformations(alpha, beta, i):
    """Componentwise alpha_a *_{i+1} beta_b."""
    V = _same_base(alpha.source.source, beta.source.source)
    _require_delooped_index(V, i)
    pa, pb = _pairs(alpha.source.source.n_objects, beta.source.source.n_objects)
    components = V.tensor_morphisms(i + 1, alpha.components[pa], beta.components[pb])
    return EnrichedNatTransf(tensor_enriched_functors(alpha.source, beta.source, i),
                             tensor_enriched_functors(alpha.target, beta.target, i),
                             components, name=f'({alpha.name}*{i}{beta.name})')


def associator_component(A, B, C, i):
    """
    The enriched functor ((A*B)*C) -> (A*(B*C)) with components alpha^{i+1}.

    Both products list their objects in the same row-major order, so the
    object map is the identity on positions.
    """
    V = _same_base(A, B, C)
    _require_delooped_index(V, i)
    source = tensor_enriched(tensor_enriched(A, B, i), C, i)
    target = tensor_enriched(A, tensor_enriched(B, C, i), i)
    n = source.n_objects
    if n:
        a, b, c = np.unravel_index(np.arange(n), (A.n_objects, B.n_objects, C.n_objects))
    else:
        a = b = c = np.zeros(0, dtype=np.int64)
    alpha = V.associator(i + 1).components
    components = alpha[A.hom[a[:, None], a[None, :]], B.hom[b[:, None], b[None, :]],
                       C.hom[c[:, None], c[None, :]]]
    return EnrichedFunctor(source, target, np.arange(n), components,
                           name=f'alpha(1){i}[{A.name},{B.name},{C.name}]')


def interchange_component(A, B, C, D, i, j):
    """
    The enriched functor (A*j B)*i (C*j D) -> (A*i C)*j (B*i D).

    Objects ((a, b), (c, d)) go to ((a, c), (b, d)) and hom components are
    eta^{i+1,j+1} at the four hom-objects.
    """
    V = _same_base(A, B, C, D)
    if V.k < 3:
        raise IndexOutOfRange(f'{V.name}: delooped interchangers need k >= 3, got k = {V.k}')
    _require_delooped_index(V, i, j)
    if i >= j:
        raise IndexOutOfRange(f'interchange_component needs i < j, got ({i}, {j})')
    source = tensor_enriched(tensor_enriched(A, B, j), tensor_enriched(C, D, j), i)
    target = tensor_enriched(tensor_enriched(A, C, i), tensor_enriched(B, D, i), j)
    nA, nB, nC, nD = A.n_objects, B.n_objects, C.n_objects, D.n_objects
    n = source.n_objects
    if n:
        a, b, c, d = np.unravel_index(np.arange(n), (nA, nB, nC, nD))
    else:
        a = b = c = d = np.zeros(0, dtype=np.int64)
    object_map = np.ravel_multi_index((a, c, b, d), (nA, nC, nB, nD)) if n else a
    eta = V.interchanger(i + 1, j + 1).components
    components = eta[A.hom[a[:, None], a[None, :]], B.hom[b[:, None], b[None, :]],
                     C.hom[c[:, None], c[None, :]], D.hom[d[:, None], d[None, :]]]
    return EnrichedFunctor(source, target, object_map, components,
                           name=f'eta(1){i}{j}[{A.name},{B.name},{C.name},{D.name}]')


def relabel_functor(source, target, name=None):
    """
    The canonical functor between categories with matching hom-objects.

    Positions are sent to positions and every hom component is an identity,
    so the functor checks pass exactly when hom-objects, composition and
    identities agree. An empty source gives the empty functor.
    """
    if source.n_objects and source.n_objects != target.n_objects:
        raise MalformedTable(f'cannot relabel {source.name} onto {target.name}')
    _same_base(source, target)
    one = source.base.base.identity
    n = source.n_objects
    components = one[target.hom[:n, :n]] if n else np.zeros((0, 0), dtype=np.int64)
    return EnrichedFunctor(source, target, np.arange(n), components,
                           name=name or f'relabel[{source.name}->{target.name}]')


def _consumed_indices(lookups):
    """Sorted indices of the interchangers of V looked up, naming the axiom instance used."""
    return tuple(sorted({index for key in lookups if key[0] == 'eta' for index in key[1:]}))


def _measured(report, lookups, families):
    """
    Rebuild ``report`` keyed by the V axiom instances its construction looked up.

    Each check is counted under the first family whose marker its name
    contains, indexed by the interchangers recorded in ``lookups``.
    """
    out = DiagramReport(report.suite, wall_time=report.wall_time)
    indices = _consumed_indices(lookups)
    for check in report.checks:
        family = next((family for marker, family in families if marker in check.name), None)
        out.add(check, (family, *indices) if family else None)
    out.lookups.update(lookups)
    return out


def _delooped(report):
    """
    Count V-axiom checks run at shifted indices under the delooped families.

    Every check is annotated with the V suite it ran, so the report names
    both readings of each instance.
    """
    out = DiagramReport(report.suite, wall_time=report.wall_time)
    for check in report.checks:
        if not check.note:
            check.note = f'{report.suite} read one index down'
        out.add(check)
    for (family, *indices), count in report.coverage.items():
        out.coverage[(f'delooped_{family}', *(index - 1 for index in indices))] += count
    out.lookups.update(report.lookups)
    return out


def _hom_subset(sample):
    return sorted({int(index) for A in sample for index in A.hom.reshape(-1)})


def sample_two_cells(sample, options=None):
    """
    Every V-natural transformation of the identity functor of each sample category.

    Candidates pick a morphism I -> A(a, a) for every object a; a category
    with more candidates than the exhaustive budget keeps only its identity
    2-cell.
    """
    options = options or CheckOptions()
    cells = []
    for A in sample:
        Q = identity_functor(A)
        C = A.base.base
        choices = [np.flatnonzero((C.dom == A.base.unit_index) & (C.cod == A.hom[x, x]))
                   for x in range(A.n_objects)]
        if math.prod(len(choice) for choice in choices) > options.exhaustive_budget:
            logger.warning(f'{A.name}: too many candidate 2-cells, keeping the identity')
            cells.append(identity_transformation(Q))
            continue
        identity = tuple(int(mid) for mid in A.identity)
        for pick in itertools.product(*choices):
            pick = tuple(int(mid) for mid in pick)
            if pick == identity:
                cells.append(identity_transformation(Q))
                continue
            label = '/'.join(C.morphisms[mid].id for mid in pick)
            theta = EnrichedNatTransf(Q, Q, list(pick), name=f'{A.name}:{label}')
            if check_v_natural(theta, options).passed:
                cells.append(theta)
    return cells


def _transformation_result(name, lhs, rhs):
    for side, left, right in (('source', lhs.source, rhs.source),
                              ('target', lhs.target, rhs.target)):
        result = compare_functors(left, right, name=f'{name}.{side}')
        if not result.passed:
            return result
    A = lhs.source.source
    objects = np.arange(A.n_objects)
    return compare_legs(f'{name}.components', [objects], lhs.components, rhs.components,
                        A.ids, A.base.base.morphism_label)


def verify_delooping(V, sample, options=None, transformations=None):
    """
    Replay the construction of the delooped structure on ``sample``.

    The report covers, for every index of the delooped structure: products of
    sample categories, absorption of the unit category, the associator and
    interchanger functors, the pentagon of associator functors, the axioms of
    the delooped interchangers at component level and 2-naturality of the
    associator on ``transformations``. Without explicit transformations the
    2-cells are those of sample_two_cells.

    Coverage of the replayed constructions is keyed by the interchangers of V
    each one looked up; the report's ``lookups`` counts every lookup.
    """
    options = options or CheckOptions()
    sample = list(sample)
    report = DiagramReport(f'deloop[{V.name}]')
    for A in sample:
        if A.base is not V:
            raise BaseMismatch(f'{A.name} is enriched over {A.base.name}, not {V.name}')
    if transformations is not None:
        transformations = list(transformations)
        for theta in transformations:
            if theta.source.source.base is not V:
                raise BaseMismatch(f'{theta.name} is not a 2-cell over {V.name}')

    if V.k < 2:
        report.add(CheckResult.not_applicable(
            'delooping', f'{V.name} is {V.k}-fold; no delooped tensor exists'))
        return report
    if transformations is None:
        transformations = sample_two_cells(sample, options)
    indices = range(1, V.k)
    pairs = list(itertools.combinations(indices, 2))
    unit = unit_category(V)
    subset = _hom_subset(sample + [unit])

    def samples():
        for A in sample:
            with V.recording() as lookups:
                sub = check_enriched_category(A, options)
            yield f'sample[{A.name}]', _measured(sub, lookups, ())

    def products(i):
        families = (('pentagon', 'internal_assoc'), ('unit', 'internal_unit'))
        for A, B in itertools.product(sample, repeat=2):
            with V.recording() as lookups:
                sub = check_enriched_category(tensor_enriched(A, B, i), options)
            yield f'product{i}[{A.name},{B.name}]', _measured(sub, lookups, families)

    def absorption(i):
        for A in sample:
            for side in ('left', 'right'):
                with V.recording() as lookups:
                    product = tensor_enriched(unit, A, i) if side == 'left' else \
                        tensor_enriched(A, unit, i)
                    sub = DiagramReport(f'absorption{i}.{side}')
                    sub.extend(compare_categories(product.relabel(A.objects), A,
                                                  name='relabeled'))
                    sub.extend(check_enriched_functor(relabel_functor(product, A), options),
                               prefix='relabel')
                yield f'absorption{i}.{side}[{A.name}]', _measured(
                    sub, lookups, (('', 'external_unit'),))

    def associators(i):
        for A, B, C in itertools.product(sample, repeat=3):
            with V.recording() as lookups:
                sub = check_enriched_functor(associator_component(A, B, C, i), options)
            yield f'associator{i}[{A.name},{B.name},{C.name}]', _measured(
                sub, lookups, (('', 'external_assoc'),))

    def interchangers(i, j):
        for A, B, C, D in itertools.product(sample, repeat=4):
            with V.recording() as lookups:
                sub = check_enriched_functor(interchange_component(A, B, C, D, i, j), options)
            yield f'interchanger{i}{j}[{A.name},{B.name},{C.name},{D.name}]', _measured(
                sub, lookups, (('', 'giant_hexagon'),))

    def pentagons(i):
        for A, B, C, D in itertools.product(sample, repeat=4):
            with V.recording() as lookups:
                top = compose_enriched_functors(
                    associator_component(A, B, tensor_enriched(C, D, i), i),
                    associator_component(tensor_enriched(A, B, i), C, D, i))
                bottom = compose_enriched_functors(
                    tensor_enriched_functors(identity_functor(A),
                                             associator_component(B, C, D, i), i),
                    compose_enriched_functors(
                        associator_component(A, tensor_enriched(B, C, i), D, i),
                        tensor_enriched_functors(associator_component(A, B, C, i),
                                                 identity_functor(D), i)))
            sub = DiagramReport(f'pentagon(1){i}')
            sub.add(compare_functors(top, bottom, name='functors_equal'), ('delooped_pentagon', i))
            sub.lookups.update(lookups)
            yield f'pentagon(1){i}[{A.name},{B.name},{C.name},{D.name}]', sub

    def components():
        for i in indices:
            with V.recording() as lookups:
                sub = check_pentagon(V, i + 1, options, subset)
            sub.lookups.update(lookups)
            yield f'components.alpha(1){i}', _delooped(sub)
        for i, j in pairs:
            checks = [lambda: check_interchange_units(V, i + 1, j + 1, options)]
            checks += [lambda mode=mode: check_interchange_assoc(V, i + 1, j + 1, mode, options,
                                                                 subset)
                       for mode in ('internal', 'external')]
            for check in checks:
                with V.recording() as lookups:
                    sub = check()
                sub.lookups.update(lookups)
                yield f'components.eta(1){i}{j}', _delooped(sub)
        for i, j, l in itertools.combinations(indices, 3):
            with V.recording() as lookups:
                sub = check_giant_hexagon(V, i + 1, j + 1, l + 1, options, subset)
            sub.lookups.update(lookups)
            yield f'components.eta(1){i}{j}{l}', _delooped(sub)

    def naturality(i):
        for theta, phi, psi in itertools.product(transformations, repeat=3):
            sources = [x.source.source for x in (theta, phi, psi)]
            targets = [x.source.target for x in (theta, phi, psi)]
            with V.recording() as lookups:
                lhs = whisker_left(associator_component(*targets, i),
                                   tensor_transformations(tensor_transformations(theta, phi, i),
                                                          psi, i))
                rhs = whisker_right(
                    tensor_transformations(theta, tensor_transformations(phi, psi, i), i),
                    associator_component(*sources, i))
                sub = DiagramReport(f'naturality{i}')
                sub.extend(check_v_natural(lhs, options), prefix='whiskered')
                sub.add(_transformation_result('two_naturality', lhs, rhs),
                        ('delooped_naturality', i))
            sub.lookups.update(lookups)
            yield f'naturality{i}[{theta.name},{phi.name},{psi.name}]', sub

    tasks = [samples]
    for i in indices:
        tasks += [lambda i=i: products(i), lambda i=i: absorption(i),
                  lambda i=i: associators(i), lambda i=i: pentagons(i)]
    tasks += [lambda i=i, j=j: interchangers(i, j) for i, j in pairs]
    tasks += [components]
    tasks += [lambda i=i: naturality(i) for i in indices]

    with report.timed():
        if options.workers > 1:
            with ThreadPoolExecutor(max_workers=options.workers) as pool:
                futures = [pool.submit(lambda task=task: list(task())) for task in tasks]
                results = [future.result() for future in futures]
        else:
            results = [list(task()) for task in tasks]
        for result in results:
            for prefix, sub in result:
                report.extend(sub, prefix=prefix)
        if not pairs:
            report.add(CheckResult.not_applicable(
                'interchangers', f'{V.name} is {V.k}-fold; the delooped structure has one tensor'))

    failing = report.failing()
    logger.info(f'{report.suite}: {len(report.checks)} checks over {len(sample)} categories, '
                f'{len(failing)} failing')
    return report


class V2Category:
    """
    A category enriched over V-Cat with V-Cat's first product.

    ``hom`` maps (u, v) to an EnrichedCategory, ``composition`` maps (u, v, w)
    to an enriched functor hom(v, w) *(1)_1 hom(u, v) -> hom(u, w) and
    ``identity`` maps u to an enriched functor unit_category -> hom(u, u).
    """

    def __init__(self, base, objects, hom, composition, identity, name=''):
        if base.k < 2:
            raise IndexOutOfRange(f'{base.name}: V-2-categories need k >= 2, got k = {base.k}')
        self.base = base
        self.objects = tuple(objects)
        self.name = name
        try:
            self.hom = {key: hom[key] for key in itertools.product(self.objects, repeat=2)}
            self.composition = {key: composition[key]
                                for key in itertools.product(self.objects, repeat=3)}
            self.identity = {obj: identity[obj] for obj in self.objects}
        except KeyError as e:
            raise MalformedTable(f'{name}: missing entry for {e.args[0]!r}')
        for key, category in self.hom.items():
            if category.base is not base:
                raise BaseMismatch(f'{name}: hom{key} is enriched over {category.base.name}')

    @property
    def n_objects(self):
        return len(self.objects)

    def __repr__(self):
        return f'V2Category({self.name!r}, {self.n_objects} objects over {self.base.name})'


def _second_level_functor(source, target):
    return relabel_functor(source, target) if source.n_objects else \
        EnrichedFunctor(source, target, [], np.zeros((0, 0), dtype=np.int64),
                        name=f'empty[{target.name}]')


def unit_v2category(V):
    I = unit_category(V)
    return V2Category(V, ['*'], {('*', '*'): I},
                      {('*', '*', '*'): relabel_functor(tensor_enriched(I, I, 1), I)},
                      {'*': identity_functor(I)}, name='I2')


def arrow_v2category(V, A, name=None):
    """
    Two objects u, v with hom(u, v) = A, unit homs at u and v and an empty hom(v, u).

    Every composite lands by absorbing a unit factor.
    """
    I = unit_category(V)
    empty = EnrichedCategory(V, [], np.zeros((0, 0)), np.zeros((0, 0, 0)), [], name='0')
    hom = {('u', 'u'): I, ('v', 'v'): I, ('u', 'v'): A, ('v', 'u'): empty}
    composition = {}
    for x, y, z in itertools.product('uv', repeat=3):
        source = tensor_enriched(hom[(y, z)], hom[(x, y)], 1)
        composition[(x, y, z)] = _second_level_functor(source, hom[(x, z)])
    identity = {x: identity_functor(I) for x in 'uv'}
    return V2Category(V, ['u', 'v'], hom, composition, identity, name=name or f'arrow[{A.name}]')


def check_v2category(X, options=None):
    options = options or CheckOptions()
    I = unit_category(X.base)
    report = DiagramReport(f'v2category[{X.name}]')
    with report.timed():
        for (u, v), category in X.hom.items():
            report.extend(check_enriched_category(category, options), prefix=f'hom[{u},{v}]')
        for (u, v, w), functor in X.composition.items():
            label = f'composition[{u},{v},{w}]'
            source = tensor_enriched(X.hom[(v, w)], X.hom[(u, v)], 1)
            typed = same_category(functor.source, source) and \
                same_category(functor.target, X.hom[(u, w)])
            report.add(_typing_result(f'{label}.typing', typed, functor))
            if typed:
                report.extend(check_enriched_functor(functor, options), prefix=label)
        for u, functor in X.identity.items():
            label = f'identity[{u}]'
            typed = same_category(functor.source, I) and same_category(functor.target,
                                                                        X.hom[(u, u)])
            report.add(_typing_result(f'{label}.typing', typed, functor))
            if typed:
                report.extend(check_enriched_functor(functor, options), prefix=label)
        if not report.passed:
            return report

        M = X.composition
        for u, v, w, x in itertools.product(X.objects, repeat=4):
            left = compose_enriched_functors(
                M[(u, v, x)], tensor_enriched_functors(M[(v, w, x)],
                                                       identity_functor(X.hom[(u, v)]), 1))
            right = compose_enriched_functors(
                M[(u, w, x)], compose_enriched_functors(
                    tensor_enriched_functors(identity_functor(X.hom[(w, x)]), M[(u, v, w)], 1),
                    associator_component(X.hom[(w, x)], X.hom[(v, w)], X.hom[(u, v)], 1)))
            report.add(compare_functors(left, right, name=f'associativity[{u},{v},{w},{x}]'))
        for u, v in itertools.product(X.objects, repeat=2):
            H = X.hom[(u, v)]
            left = compose_enriched_functors(
                M[(u, v, v)], tensor_enriched_functors(X.identity[v], identity_functor(H), 1))
            report.add(compare_functors(left, _second_level_functor(left.source, H),
                                        name=f'left_unit[{u},{v}]'))
            right = compose_enriched_functors(
                M[(u, u, v)], tensor_enriched_functors(identity_functor(H), X.identity[u], 1))
            report.add(compare_functors(right, _second_level_functor(right.source, H),
                                        name=f'right_unit[{u},{v}]'))
    return report


def _typing_result(name, typed, functor):
    note = '' if typed else f'{functor.name} runs {functor.source.name} -> {functor.target.name}'
    return compare_legs(name, [np.zeros(1, dtype=np.int64)], np.array([int(typed)]),
                        np.ones(1, dtype=np.int64), lambda raw: (functor.name,),
                        lambda value: 'typed' if value else note)


def tensor_enriched_level2(U, W, i):
    """
    The i-th product of V-2-categories.

    hom((u, w), (u', w')) = U(u, u') *(1)_{i+1} W(w, w'); composition is
    (M_U *(1)_{i+1} M_W) after the delooped interchanger at (1, i+1), and the
    identity at (u, w) is j_u *(1)_{i+1} j_w after I = I *(1)_{i+1} I.
    """
    V = U.base
    if W.base is not V:
        raise BaseMismatch(f'{W.name} is over {W.base.name}, not {V.name}')
    if V.k < 3:
        raise IndexOutOfRange(f'{V.name}: products of V-2-categories need k >= 3, got k = {V.k}')
    if not 1 <= i <= V.k - 2:
        raise IndexOutOfRange(f'{V.name}: level-two tensor index {i} outside 1..{V.k - 2}')
    t = i + 1
    objects = [(u, w) for u in U.objects for w in W.objects]
    hom = {((u, w), (u1, w1)): tensor_enriched(U.hom[(u, u1)], W.hom[(w, w1)], t)
           for (u, w), (u1, w1) in itertools.product(objects, repeat=2)}
    composition = {}
    for (u, w), (u1, w1), (u2, w2) in itertools.product(objects, repeat=3):
        swap = interchange_component(U.hom[(u1, u2)], W.hom[(w1, w2)],
                                     U.hom[(u, u1)], W.hom[(w, w1)], 1, t)
        composition[((u, w), (u1, w1), (u2, w2))] = compose_enriched_functors(
            tensor_enriched_functors(U.composition[(u, u1, u2)],
                                     W.composition[(w, w1, w2)], t), swap)
    I = unit_category(V)
    split = relabel_functor(I, tensor_enriched(I, I, t))
    identity = {(u, w): compose_enriched_functors(
        tensor_enriched_functors(U.identity[u], W.identity[w], t), split)
        for u, w in objects}
    return V2Category(V, objects, hom, composition, identity, name=f'({U.name}*{i}{W.name})')


def check_level2_product(U, W, i, options=None):
    """
    Build tensor_enriched_level2(U, W, i), check it and its second-level hom-objects.

    Second-level hom-objects must equal U(u, u')(f, g) *_{i+2} W(w, w')(f', g').
    Coverage is keyed by the interchangers of V with first index at least 2
    that building the product looked up; the composition functors also rest
    on the first-index-1 interchangers of the products they compose.
    """
    options = options or CheckOptions()
    V = U.base
    with V.recording() as built:
        product = tensor_enriched_level2(U, W, i)
    report = DiagramReport(f'level2[{product.name}]')
    report.lookups.update(built)
    with report.timed():
        expected, actual, labels = [], [], []
        for ((u, w), (u1, w1)), H in product.hom.items():
            left, right = U.hom[(u, u1)], W.hom[(w, w1)]
            pa, pb = _pairs(left.n_objects, right.n_objects)
            expected.append(V.tensor_objects(
                i + 2, left.hom[pa[:, None], pa[None, :]], right.hom[pb[:, None], pb[None, :]]
            ).reshape(-1))
            actual.append(H.hom.reshape(-1))
            labels += [((u, w), (u1, w1), f, g) for f, g in itertools.product(H.objects, repeat=2)]
        positions = np.arange(len(labels))
        actual = np.concatenate(actual) if actual else positions
        expected = np.concatenate(expected) if expected else positions
        report.add(compare_legs('second_level_hom', [positions], actual, expected,
                                lambda raw: labels[raw[0]], V.base.object_label, options))
        level = tuple(sorted({index for key in built if key[0] == 'eta' and key[1] >= 2
                              for index in key[1:]}))
        unit_key = ('external_unit', *level)
        keys = (('identity[', unit_key), ('left_unit', unit_key), ('right_unit', unit_key),
                ('associativity', ('external_assoc', *level)),
                ('composition[', ('giant_hexagon', 1, *level)))
        with V.recording() as checked:
            checks = check_v2category(product, options).checks
        report.lookups.update(checked)
        for check in checks:
            key = next((key for prefix, key in keys if check.name.startswith(prefix)), None)
            report.add(check, key)
    logger.info(f'{report.suite}: {"pass" if report.passed else "fail"}')
    return product, report
