"""
Reading and writing structures as JSON documents.

Every document is a JSON object with a ``format`` version, a ``kind`` tag
and kind-specific tables given as arrays of records with string ids. Bases
and hom categories are referenced by a path relative to the referring
document, or given inline as a nested document. Documents are written in
canonical form: keys sorted, records ordered lexicographically by id, two
space indentation and a trailing newline.
"""

from dataclasses import dataclass, field
import itertools
import json
import logging
import os

from kfold_deloop.deloop import tensor_enriched, unit_category, V2Category
from kfold_deloop.enrich import EnrichedCategory, EnrichedFunctor
from kfold_deloop.errors import BaseMismatch, KFoldError, MalformedMap, ParseError
from kfold_deloop.fincat import FinCategory, FinFunctor, NatFamily, power_category
from kfold_deloop.formula import associator_formulas, braiding_formulas, interchanger_formulas
from kfold_deloop.monoidal import check_strict_units, KFoldStructure, SymmetricStructure
from kfold_deloop.utils.schemas import FORMAT_VERSION, line_of, validate

logger = logging.getLogger(__name__)


def format_id(obj):
    """String id of an object; pairs built by products print as (a,b)."""
    if isinstance(obj, tuple):
        return '(' + ','.join(format_id(part) for part in obj) + ')'
    return str(obj)


def _sorted_records(records, key):
    return sorted(records, key=lambda record: json.dumps(key(record)))


@dataclass
class StructureDocument:
    kind: str
    payload: dict
    path: str = None
    text: str = field(default=None, repr=False)
    version: int = FORMAT_VERSION

    @classmethod
    def parse(cls, text, path=None):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(e.msg, path=path, line=e.lineno) from e
        return cls.from_dict(data, path=path, text=text)

    @classmethod
    def from_dict(cls, data, path=None, text=None):
        data = dict(validate(data, path=path, text=text))
        version = data.pop('format')
        kind = data.pop('kind')
        return cls(kind, data, path=path, text=text, version=version)

    def __getitem__(self, key):
        return self.payload[key]

    def get(self, key, default=None):
        return self.payload.get(key, default)

    def to_dict(self):
        return {'format': self.version, 'kind': self.kind, **self.payload}

    def dumps(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + '\n'

    def line_of(self, needle):
        return line_of(self.text, json.dumps(str(needle)))

    def error(self, message, needle=None):
        return ParseError(message, path=self.path,
                          line=self.line_of(needle) if needle is not None else None)


class DocumentStore:
    """
    Loads documents and the structures they describe, resolving references.

    Structures are cached by real path so two documents referring to the
    same base file share one base object.
    """

    def __init__(self):
        self._structures = {}

    def read(self, path):
        try:
            with open(path, 'r') as handle:
                text = handle.read()
        except OSError as e:
            raise ParseError(e.strerror or str(e), path=path) from e
        return StructureDocument.parse(text, path=path)

    def load(self, path, kind=None):
        key = os.path.realpath(path)
        if key not in self._structures:
            document = self.read(path)
            self._structures[key] = (document.kind, self.decode(document))
            logger.debug(f'Loaded {document.kind} from {path}')
        loaded_kind, structure = self._structures[key]
        if kind is not None and loaded_kind != kind:
            raise ParseError(f'expected a {kind} document, got {loaded_kind}', path=path, line=1)
        return structure

    def load_document(self, path):
        """Return (document, structure) for ``path``."""
        document = self.read(path)
        return document, self.load(path, document.kind)

    def decode(self, document):
        decoder = getattr(self, '_decode_' + document.kind.replace('-', '_'))
        try:
            return decoder(document)
        except (ParseError, BaseMismatch):
            raise
        except KFoldError as e:
            raise document.error(str(e), _offending_id(str(e))) from e

    def resolve(self, document, reference, kind):
        if isinstance(reference, str):
            folder = os.path.dirname(document.path) if document.path else '.'
            return self.load(os.path.join(folder, reference), kind)
        if isinstance(reference, dict):
            nested = StructureDocument.from_dict(reference, path=document.path, text=document.text)
            if nested.kind != kind:
                raise document.error(f'expected an inline {kind} document, got {nested.kind}')
            return self.decode(nested)
        raise document.error(f'a {kind} reference must be a path or an inline document')

    def _decode_category(self, document):
        morphisms = [(m['id'], m['dom'], m['cod']) for m in document['morphisms']]
        identities = {record['object']: record['morphism']
                      for record in document['identities']}
        composition = {(record['g'], record['f']): record['h']
                       for record in document['composition']}
        return FinCategory.from_tables(document['objects'], morphisms, identities,
                                       composition, name=document.get('name', ''),
                                       groupoid=document.get('groupoid', False))

    def _decode_tensor(self, base, record, name):
        square = power_category(base, 2)
        objects = {(entry['left'], entry['right']): entry['result'] for entry in record['objects']}
        morphisms = {(entry['left'], entry['right']): entry['result']
                     for entry in record['morphisms']}
        return FinFunctor.from_maps(square, base, objects, morphisms, name=name)

    def _decode_family(self, base, arity, record, formulas, name):
        mapping = {tuple(entry['at']) if arity > 1 else entry['at'][0]: entry['morphism']
                   for entry in record['components']}
        return NatFamily.from_mapping(base, arity, mapping, *formulas, name=name)

    def _decode_kfold(self, document):
        base = self.resolve(document, document['base'], 'category')
        tensors = sorted(document['tensors'], key=lambda record: record['index'])
        k = len(tensors)
        if [record['index'] for record in tensors] != list(range(1, k + 1)):
            raise document.error(f'tensor indices must be 1..{k}', 'tensors')
        functors = [self._decode_tensor(base, record, f'*{record["index"]}') for record in tensors]
        associators = {record['index']: record for record in document['associators']}
        if sorted(associators) != list(range(1, k + 1)):
            raise document.error(f'associator indices must be 1..{k}', 'associators')
        alphas = [self._decode_family(base, 3, associators[i], associator_formulas(i),
                                      f'alpha{i}') for i in range(1, k + 1)]
        interchangers = {}
        for record in document['interchangers']:
            i, j = record['i'], record['j']
            if (i, j) in interchangers:
                raise document.error(f'duplicate interchanger ({i}, {j})', 'interchangers')
            interchangers[(i, j)] = self._decode_family(base, 4, record,
                                                        interchanger_formulas(i, j), f'eta{i}{j}')
        V = KFoldStructure(base, document['unit'], functors, alphas, interchangers,
                           name=document.get('name', ''))
        return _require_strict_unit(document, V)

    def _decode_symmetric(self, document):
        base = self.resolve(document, document['base'], 'category')
        tensor = self._decode_tensor(base, document['tensor'], '*')
        alpha = self._decode_family(base, 3, document['associator'],
                                    associator_formulas(1), 'alpha')
        braiding = self._decode_family(base, 2, document['braiding'],
                                       braiding_formulas(), 'c')
        Sym = SymmetricStructure(base, tensor, document['unit'], alpha, braiding,
                                 name=document.get('name', ''))
        _require_strict_unit(document, Sym.monoidal())
        return Sym

    def _decode_enriched(self, document):
        V = self.resolve(document, document['base'], 'kfold')
        hom = {(record['from'], record['to']): record['object']
               for record in document['hom']}
        composition = {tuple(record['at']): record['morphism']
                       for record in document['composition']}
        identities = {record['object']: record['morphism']
                      for record in document['identities']}
        return EnrichedCategory.from_tables(V, document['objects'], hom, composition,
                                            identities, name=document.get('name', ''))

    def _decode_enriched_functor(self, document):
        source = self.resolve(document, document['source'], 'enriched')
        target = self.resolve(document, document['target'], 'enriched')
        return _functor_from_records(source, target, document['object_map'],
                                     document['components'],
                                     document.get('name', ''))

    def _decode_v2category(self, document):
        V = self.resolve(document, document['base'], 'kfold')
        objects = document['objects']
        hom = {(record['from'], record['to']): self.resolve(document, record['category'],
                                                            'enriched')
               for record in document['hom']}
        for key, category in hom.items():
            if category.base is not V:
                raise BaseMismatch(f'{document.path}: hom{key} is not enriched over {V.name}')
        composition = {}
        for record in document['composition']:
            u, v, w = record['at']
            source = tensor_enriched(hom[(v, w)], hom[(u, v)], 1)
            composition[(u, v, w)] = _functor_from_records(
                source, hom[(u, w)], record['object_map'], record['components'],
                f'M[{u},{v},{w}]')
        I = unit_category(V)
        identity = {record['object']: _functor_from_records(
            I, hom[(record['object'], record['object'])], record['object_map'],
            record['components'], f'j[{record["object"]}]')
            for record in document['identities']}
        return V2Category(V, objects, hom, composition, identity,
                          name=document.get('name', ''))


def _require_strict_unit(document, V):
    """Weak units are rejected: I *i A = A = A *i I must hold on the nose for every tensor."""
    report = check_strict_units(V)
    if not report.passed:
        witness = report.witnesses[0].describe() if report.witnesses else 'unit laws fail'
        raise document.error(f'unit {V.unit} is not strict: {witness}', 'unit')
    return V


def _offending_id(message):
    """The first quoted id in an error message, used to locate the line."""
    for quote in ("'", '"'):
        start = message.find(quote)
        end = message.find(quote, start + 1)
        if start >= 0 and end > start:
            return message[start + 1:end]
    return None


def _functor_from_records(source, target, object_records, component_records, name):
    by_id = {format_id(obj): obj for obj in source.objects}
    target_by_id = {format_id(obj): obj for obj in target.objects}
    try:
        object_map = {by_id[record['object']]: target_by_id[record['image']]
                      for record in object_records}
        components = {(by_id[record['at'][0]], by_id[record['at'][1]]): record['morphism']
                      for record in component_records}
    except KeyError as e:
        raise MalformedMap(f'{name}: unknown object {e.args[0]!r}')
    return EnrichedFunctor.from_maps(source, target, object_map, components, name=name)


def _reference(structure, refs, encoder):
    """Path of ``structure`` in ``refs``, or the structure inlined as a nested document."""
    refs = refs or {}
    if id(structure) in refs:
        return refs[id(structure)]
    return encoder(structure, refs).to_dict()


def encode_category(C, refs=None):
    morphism_ids = [m.id for m in C.morphisms]
    composition = [{'g': morphism_ids[g], 'f': morphism_ids[f], 'h': morphism_ids[h]}
                   for (g, f), h in zip(itertools.product(range(C.n_morphisms), repeat=2),
                                        C.table.reshape(-1)) if h >= 0]
    payload = {
        'name': C.name,
        'groupoid': bool(C.groupoid),
        'objects': sorted(format_id(obj) for obj in C.objects),
        'morphisms': _sorted_records(
            [{'id': m.id, 'dom': format_id(m.dom), 'cod': format_id(m.cod)} for m in C.morphisms],
            lambda record: record['id']),
        'identities': _sorted_records(
            [{'object': format_id(obj), 'morphism': morphism_ids[index]}
             for obj, index in zip(C.objects, C.identity) if index >= 0],
            lambda record: record['object']),
        'composition': _sorted_records(composition, lambda record: [record['g'], record['f']]),
    }
    return StructureDocument('category', payload)


def _encode_tensor(base, functor):
    n, m = base.n_objects, base.n_morphisms
    objects = [{'left': format_id(a), 'right': format_id(b),
                'result': format_id(base.objects[functor.object_map[x * n + y]])}
               for (x, a), (y, b) in itertools.product(enumerate(base.objects), repeat=2)]
    morphisms = [{'left': f.id, 'right': g.id,
                  'result': base.morphisms[functor.morphism_map[x * m + y]].id}
                 for (x, f), (y, g) in itertools.product(enumerate(base.morphisms), repeat=2)]
    return {
        'objects': _sorted_records(objects, lambda record: [record['left'], record['right']]),
        'morphisms': _sorted_records(morphisms, lambda record: [record['left'], record['right']]),
    }


def _encode_family(family):
    components = [{'at': [format_id(obj) for obj in key], 'morphism': mid}
                  for key, mid in family.items()]
    return {'components': _sorted_records(components, lambda record: record['at'])}


def encode_kfold(V, refs=None):
    payload = {
        'name': V.name,
        'base': _reference(V.base, refs, encode_category),
        'unit': format_id(V.unit),
        'tensors': [{'index': i, **_encode_tensor(V.base, V.tensor(i))}
                    for i in range(1, V.k + 1)],
        'associators': [{'index': i, **_encode_family(V.associator(i))}
                        for i in range(1, V.k + 1)],
        'interchangers': [{'i': i, 'j': j, **_encode_family(V.interchanger(i, j))}
                          for i, j in sorted(V.interchangers)],
    }
    return StructureDocument('kfold', payload)


def encode_symmetric(Sym, refs=None):
    payload = {
        'name': Sym.name,
        'base': _reference(Sym.base, refs, encode_category),
        'unit': format_id(Sym.unit),
        'tensor': _encode_tensor(Sym.base, Sym.tensor),
        'associator': _encode_family(Sym.associator),
        'braiding': _encode_family(Sym.braiding),
    }
    return StructureDocument('symmetric', payload)


def encode_enriched(A, refs=None):
    C = A.base.base
    ids = [format_id(obj) for obj in A.objects]
    n = A.n_objects
    hom = [{'from': ids[x], 'to': ids[y], 'object': format_id(C.objects[A.hom[x, y]])}
           for x, y in itertools.product(range(n), repeat=2)]
    composition = [{'at': [ids[x], ids[y], ids[z]],
                    'morphism': C.morphisms[A.composition[x, y, z]].id}
                   for x, y, z in itertools.product(range(n), repeat=3)
                   if A.composition[x, y, z] >= 0]
    identities = [{'object': ids[x], 'morphism': C.morphisms[A.identity[x]].id}
                  for x in range(n) if A.identity[x] >= 0]
    payload = {
        'name': A.name,
        'base': _reference(A.base, refs, encode_kfold),
        'objects': sorted(ids),
        'hom': _sorted_records(hom, lambda record: [record['from'], record['to']]),
        'composition': _sorted_records(composition, lambda record: record['at']),
        'identities': _sorted_records(identities, lambda record: record['object']),
    }
    return StructureDocument('enriched', payload)


def _functor_records(T):
    C = T.source.base.base
    source_ids = [format_id(obj) for obj in T.source.objects]
    target_ids = [format_id(obj) for obj in T.target.objects]
    n = T.source.n_objects
    object_map = [{'object': source_ids[x], 'image': target_ids[T.object_map[x]]}
                  for x in range(n)]
    components = [{'at': [source_ids[x], source_ids[y]],
                   'morphism': C.morphisms[T.components[x, y]].id}
                  for x, y in itertools.product(range(n), repeat=2) if T.components[x, y] >= 0]
    return {
        'object_map': _sorted_records(object_map, lambda record: record['object']),
        'components': _sorted_records(components, lambda record: record['at']),
    }


def encode_enriched_functor(T, refs=None):
    payload = {
        'name': T.name,
        'source': _reference(T.source, refs, encode_enriched),
        'target': _reference(T.target, refs, encode_enriched),
        **_functor_records(T),
    }
    return StructureDocument('enriched-functor', payload)


def encode_v2category(X, refs=None):
    ids = {obj: format_id(obj) for obj in X.objects}
    payload = {
        'name': X.name,
        'base': _reference(X.base, refs, encode_kfold),
        'objects': sorted(ids.values()),
        'hom': _sorted_records(
            [{'from': ids[u], 'to': ids[v], 'category': _reference(A, refs, encode_enriched)}
             for (u, v), A in X.hom.items()],
            lambda record: [record['from'], record['to']]),
        'composition': _sorted_records(
            [{'at': [ids[u], ids[v], ids[w]], **_functor_records(T)}
             for (u, v, w), T in X.composition.items()],
            lambda record: record['at']),
        'identities': _sorted_records(
            [{'object': ids[u], **_functor_records(T)} for u, T in X.identity.items()],
            lambda record: record['object']),
    }
    return StructureDocument('v2category', payload)


ENCODERS = (
    (FinCategory, encode_category),
    (KFoldStructure, encode_kfold),
    (SymmetricStructure, encode_symmetric),
    (EnrichedCategory, encode_enriched),
    (EnrichedFunctor, encode_enriched_functor),
    (V2Category, encode_v2category),
)


def encode(structure, refs=None):
    for cls, encoder in ENCODERS:
        if isinstance(structure, cls):
            return encoder(structure, refs)
    raise TypeError(f'cannot encode {type(structure).__name__}')


def write_document(structure, path, refs=None):
    """
    Write ``structure`` to ``path`` in canonical form.

    :param refs: mapping id(structure) -> path of an already written document;
        paths are made relative to the folder of ``path``
    """
    folder = os.path.dirname(os.path.abspath(path))
    relative = {key: os.path.relpath(os.path.abspath(target), folder)
                for key, target in (refs or {}).items()}
    document = encode(structure, relative)
    with open(path, 'w') as handle:
        handle.write(document.dumps())
    logger.debug(f'Wrote {document.kind} document {path}')
    return document
