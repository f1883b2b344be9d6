"""
Tests for modext.data_files

"""
import json
import os
from fractions import Fraction

import pytest

from modext.constants import PREMODULAR_FORMAT, WITNESS_FORMAT
from modext.constructors import semion, twisted_double_cyclic
from modext.data_files import (dump, load, load_dir, parse, serialize,
                               to_dict)
from modext.exceptions import DataFileError
from modext.extensions import extension_times
from modext.modular_data import canonical_form, permute, same_data
from modext.witness import (ExtensionWitness, extensions_equivalent,
                            validate_extension)

__author__ = "Carlos del-Castillo-Negrete"
__copyright__ = "Carlos del-Castillo-Negrete"
__license__ = "MIT"


def _line(text, key):
    return text[:text.find(f'"{key}"')].count('\n') + 1


def test_premodular_round_trip(ising):
    text = serialize(permute(ising, [2, 0, 1]))
    assert json.loads(text)['format'] == PREMODULAR_FORMAT
    back = parse(text)
    assert same_data(back, canonical_form(ising)[0])
    assert back.twists[2] == Fraction(15, 16)


def test_non_canonical_keeps_order(ising):
    shuffled = permute(ising, [2, 0, 1])
    obj = to_dict(shuffled, canonical=False)
    assert obj['labels'] == list(shuffled.labels)
    assert obj['twists'][shuffled.index('x')] == '15/16'


def test_witness_round_trip(svect_catalog):
    w = svect_catalog[1]
    text = serialize(w)
    assert json.loads(text)['format'] == WITNESS_FORMAT
    back = parse(text)
    assert isinstance(back, ExtensionWitness)
    assert back.over is None
    assert validate_extension(back).passed
    assert extensions_equivalent(back, w)


def test_witness_over_round_trip():
    w = extension_times(twisted_double_cyclic(2, 1), semion())
    back = parse(serialize(w))
    assert len(back.over) == 8
    assert validate_extension(back).passed
    assert extensions_equivalent(back, w)


def test_dump_and_load_dir(tmp_path, svect_catalog):
    for k in (2, 0, 1):
        dump(svect_catalog[k], str(tmp_path / "nested" / f"svect_{k:02d}.json"))
    (tmp_path / "nested" / "notes.txt").write_text("not data")
    values = load_dir(str(tmp_path / "nested"))
    assert len(values) == 3
    for k, v in enumerate(values):
        assert extensions_equivalent(v, svect_catalog[k])


def test_negative_fusion_coefficient(ising):
    obj = to_dict(ising)
    obj['fusion'][0][3] = -1
    text = json.dumps(obj, indent=1)
    with pytest.raises(DataFileError) as e:
        parse(text, "ising.json")
    assert e.value.path == "ising.json"
    assert e.value.line == _line(text, 'fusion')
    assert 'non-negative' in e.value.detail
    assert "ising.json" in str(e.value)


def test_fusion_axioms_checked(ising):
    obj = to_dict(ising)
    x = obj['labels'].index('x')
    for entry in obj['fusion']:
        if entry[:3] == [x, x, obj['unit']]:
            entry[3] = 2
    with pytest.raises(DataFileError) as e:
        parse(json.dumps(obj, indent=1))
    assert e.value.line > 0


def test_malformed_rational(ising):
    obj = to_dict(ising)
    obj['twists'][1] = "1/x"
    text = json.dumps(obj, indent=1)
    with pytest.raises(DataFileError) as e:
        parse(text)
    assert e.value.line == _line(text, 'twists')
    obj['twists'][1] = "0.5"
    with pytest.raises(DataFileError):
        parse(json.dumps(obj))


def test_non_symmetric_smatrix(ising):
    obj = to_dict(ising)
    obj['smatrix'][0][1] = [5.0, 0.0]
    text = json.dumps(obj, indent=1)
    with pytest.raises(DataFileError) as e:
        parse(text)
    assert e.value.line == _line(text, 'smatrix')
    assert 'symmetric' in e.value.detail


def test_missing_field(ising):
    obj = to_dict(ising)
    del obj['dual']
    with pytest.raises(DataFileError) as e:
        parse(json.dumps(obj, indent=1))
    assert "'dual'" in e.value.detail


def test_bad_json_reports_line():
    text = '{\n"format": "premodular-data/v1",\n"rank": ,\n}'
    with pytest.raises(DataFileError) as e:
        parse(text)
    assert e.value.line == 3


def test_unknown_format():
    with pytest.raises(DataFileError) as e:
        parse('{"format": "fusion-category/v9"}')
    assert e.value.line == 1
    with pytest.raises(DataFileError):
        parse('[1, 2, 3]')


def test_bad_embedding():
    obj = to_dict(twisted_double_cyclic(2, 0))
    obj['embedding'] = [0, 99]
    text = json.dumps(obj, indent=1)
    with pytest.raises(DataFileError) as e:
        parse(text)
    assert e.value.line == _line(text, 'embedding')


def test_embedding_onto_fermion_fails_validation():
    back = parse(serialize(twisted_double_cyclic(2, 0)))
    fermion = back.bulk.twists.index(Fraction(1, 2))
    w = ExtensionWitness(back.base, back.bulk,
                         (back.embedding[0], fermion))
    report = validate_extension(w)
    assert not report.passed
    assert report.failed('twists')


def test_load_errors(tmp_path):
    with pytest.raises(DataFileError) as e:
        load(str(tmp_path / "missing.json"))
    assert e.value.line == 0
    path = tmp_path / "file.json"
    path.write_text("{}")
    with pytest.raises(DataFileError):
        load_dir(str(path))
    assert os.path.exists(str(path))
