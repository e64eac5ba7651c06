import json

import pytest

from kfold_deloop.enrich import EnrichedCategory
from kfold_deloop.errors import ParseError
from kfold_deloop.utils.corpus import sign_category
from kfold_deloop.utils.documents import (
    DocumentStore, encode, encode_category, format_id, StructureDocument, write_document)


def _write(path, text):
    path.write_text(text)
    return str(path)


def test_corpus_documents_round_trip(corpus_dir):
    store = DocumentStore()
    paths = sorted(corpus_dir.rglob('*.json'))
    assert len(paths) == 14 + 12
    loaded = {path: store.load(str(path)) for path in paths}
    refs = {id(structure): str(path) for path, structure in loaded.items()}
    for path, structure in loaded.items():
        before = path.read_text()
        write_document(structure, str(path), refs)
        assert path.read_text() == before, path.name


def test_references_are_relative_paths(corpus_dir):
    chain = json.loads((corpus_dir / 'chain.enriched.json').read_text())
    assert chain['base'] == 'boolean.kfold.json'
    broken = json.loads((corpus_dir / 'broken' / 'pentagon.json').read_text())
    assert broken['base'] == '../sign.category.json'


def test_documents_sharing_a_base_share_one_object(corpus_dir):
    store = DocumentStore()
    chain = store.load(str(corpus_dir / 'chain.enriched.json'))
    vee = store.load(str(corpus_dir / 'vee.enriched.json'))
    assert chain.base is vee.base
    assert chain.base is store.load(str(corpus_dir / 'boolean.kfold.json'))
    assert isinstance(chain, EnrichedCategory)


def test_inline_references_decode(twisted):
    text = encode(twisted).dumps()
    loaded = DocumentStore().decode(StructureDocument.parse(text))
    assert loaded.hom_object('a', 'b') == 'X'
    assert loaded.composition_of('a', 'b', 'a') == 'g0'
    assert encode(loaded).dumps() == text


def test_invalid_json_reports_file_and_line(tmp_path):
    path = _write(tmp_path / 'bad.json', '{\n  "format": 1,\n  "kind": "category",\n  oops\n}\n')
    with pytest.raises(ParseError) as excinfo:
        DocumentStore().load(path)
    assert excinfo.value.line == 4
    assert str(excinfo.value).startswith(f'{path}:4:')
    assert excinfo.value.exit_code == 2


def test_unknown_kind_points_at_the_kind_line(tmp_path):
    path = _write(tmp_path / 'monoid.json', '{\n  "format": 1,\n  "kind": "monoid"\n}\n')
    with pytest.raises(ParseError) as excinfo:
        DocumentStore().load(path)
    assert excinfo.value.line == 3


def test_unsupported_format_version(tmp_path):
    path = _write(tmp_path / 'future.json', '{\n  "format": 2,\n  "kind": "category"\n}\n')
    with pytest.raises(ParseError) as excinfo:
        DocumentStore().load(path)
    assert excinfo.value.line == 2


def test_unknown_morphism_points_at_its_line(tmp_path):
    data = encode_category(sign_category()).to_dict()
    data['composition'][0]['h'] = 'zz'
    text = json.dumps(data, indent=2, sort_keys=True) + '\n'
    path = _write(tmp_path / 'sign.json', text)
    expected = next(number for number, line in enumerate(text.splitlines(), start=1)
                    if '"zz"' in line)
    with pytest.raises(ParseError) as excinfo:
        DocumentStore().load(path)
    assert excinfo.value.line == expected


def test_missing_table_is_a_parse_error(tmp_path):
    path = _write(tmp_path / 'empty.json', '{"format": 1, "kind": "category", "objects": []}')
    with pytest.raises(ParseError):
        DocumentStore().load(path)


def test_kind_mismatch_is_a_parse_error(corpus_dir):
    with pytest.raises(ParseError):
        DocumentStore().load(str(corpus_dir / 'chain.enriched.json'), 'kfold')


def test_missing_file_is_a_parse_error(tmp_path):
    with pytest.raises(ParseError):
        DocumentStore().load(str(tmp_path / 'absent.json'))


def test_pair_ids():
    assert format_id(('a', ('b', 'c'))) == '(a,(b,c))'
    assert format_id('x') == 'x'


def _line_containing(text, needle):
    return next(number for number, line in enumerate(text.splitlines(), start=1)
                if needle in line)


def test_schema_violation_points_at_the_offending_table(tmp_path):
    data = encode_category(sign_category()).to_dict()
    del data['morphisms'][0]['cod']
    text = json.dumps(data, indent=2, sort_keys=True) + '\n'
    path = _write(tmp_path / 'sign.json', text)
    with pytest.raises(ParseError) as excinfo:
        DocumentStore().load(path)
    assert excinfo.value.line == _line_containing(text, '"morphisms":')
    assert "'cod' is a required property" in str(excinfo.value)
    assert excinfo.value.exit_code == 2


def test_wrongly_typed_field_is_a_parse_error(tmp_path):
    data = encode_category(sign_category()).to_dict()
    data['groupoid'] = 'yes'
    text = json.dumps(data, indent=2, sort_keys=True) + '\n'
    path = _write(tmp_path / 'sign.json', text)
    with pytest.raises(ParseError) as excinfo:
        DocumentStore().load(path)
    assert excinfo.value.line == _line_containing(text, '"groupoid":')


def test_unknown_top_level_key_is_rejected(tmp_path):
    data = encode_category(sign_category()).to_dict()
    data['colour'] = 'red'
    path = _write(tmp_path / 'sign.json', json.dumps(data, indent=2, sort_keys=True))
    with pytest.raises(ParseError) as excinfo:
        DocumentStore().load(path)
    assert 'colour' in str(excinfo.value)
    assert excinfo.value.line == 1


def test_non_object_document_is_a_parse_error(tmp_path):
    path = _write(tmp_path / 'list.json', '[1, 2, 3]\n')
    with pytest.raises(ParseError) as excinfo:
        DocumentStore().load(path)
    assert excinfo.value.line == 1


def test_weak_unit_is_rejected_at_load(tmp_path, sign):
    data = encode(sign).to_dict()
    tensor = next(record for record in data['tensors'] if record['index'] == 1)
    entry = next(entry for entry in tensor['morphisms']
                 if entry['left'] == 'e0' and entry['right'] == 'g1')
    assert entry['result'] == 'g1'
    entry['result'] = 'e1'
    text = json.dumps(data, indent=2, sort_keys=True) + '\n'
    path = _write(tmp_path / 'weak.kfold.json', text)
    with pytest.raises(ParseError) as excinfo:
        DocumentStore().load(path)
    assert 'is not strict' in str(excinfo.value)
    assert excinfo.value.line == _line_containing(text, '"unit":')
