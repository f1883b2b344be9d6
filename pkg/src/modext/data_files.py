"""
MODEXT Data Files

Reading and writing premodular data and extension witnesses as JSON.
Premodular files carry the format tag ``premodular-data/v1``; witness
files carry ``extension-witness/v1``, the bulk fields at top level and the
base inline with the embedding.

"""

import json
import logging
import os
import re
from fractions import Fraction
from typing import List, Union

import numpy as np

from modext.constants import NUMERIC_TOL, PREMODULAR_FORMAT, WITNESS_FORMAT
from modext.exceptions import DataFileError, InvalidRingError
from modext.modular_data import PreModularData, canonical_form, make_ring
from modext.witness import ExtensionWitness

__author__ = "Carlos del-Castillo-Negrete"
__copyright__ = "Carlos del-Castillo-Negrete"
__license__ = "MIT"

logger = logging.getLogger(__name__)

Value = Union[PreModularData, ExtensionWitness]

_RATIONAL = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")


def _line_of(text: str, key: str, start: int = 0) -> int:
    """1-based line of the first ``"key"`` in ``text`` after ``start``."""
    pos = text.find(f'"{key}"', start)
    if pos < 0:
        return 0
    return text.count('\n', 0, pos) + 1


def _premodular_dict(data: PreModularData) -> dict:
    fusion = [[a, b, c, v] for (a, b, c), v in sorted(data.ring.fusion.items())]
    return {'format': PREMODULAR_FORMAT,
            'name': data.name,
            'rank': data.rank,
            'labels': list(data.labels),
            'unit': data.unit,
            'dual': list(data.dual),
            'fusion': fusion,
            'twists': [f"{t.numerator}/{t.denominator}" for t in data.twists],
            'smatrix': [[[float(z.real), float(z.imag)] for z in row]
                        for row in data.smatrix]}


def to_dict(value: Value, canonical: bool = True) -> dict:
    """
    JSON-ready dictionary of premodular data or a witness.

    Parameters
    ----------
    value : PreModularData or ExtensionWitness
        Value to serialize.
    canonical : bool, default=True
        Relabel into canonical order first.
    """
    if isinstance(value, ExtensionWitness):
        bulk, base, emb = value.bulk, value.base, list(value.embedding)
        over = None if value.over is None else list(value.over)
        if canonical:
            bulk, border = canonical_form(bulk)
            base, eorder = canonical_form(base)
            inv = {old: new for new, old in enumerate(border)}
            emb = [inv[value.embedding[old]] for old in eorder]
            if over is not None:
                over = [inv[x] for x in over]
        res = _premodular_dict(bulk)
        res['format'] = WITNESS_FORMAT
        res['name'] = value.name or bulk.name
        res['base'] = _premodular_dict(base)
        res['embedding'] = emb
        if over is not None:
            res['over'] = over
        return res
    data = canonical_form(value)[0] if canonical else value
    return _premodular_dict(data)


def serialize(value: Value, canonical: bool = True) -> str:
    """JSON text of premodular data or a witness."""
    return json.dumps(to_dict(value, canonical), indent=1)


def _parse_premodular(obj: dict, text: str, path: str, offset: int = 0
                      ) -> PreModularData:

    def _fail(key, detail):
        line = _line_of(text, key, offset)
        logger.error(f"{path}:{line}: {detail}")
        raise DataFileError(path, line, detail)

    for key in ('rank', 'labels', 'unit', 'dual', 'fusion', 'twists',
                'smatrix'):
        if key not in obj:
            _fail('format', f"missing field '{key}'")
    rank = obj['rank']
    if not isinstance(rank, int) or rank < 1:
        _fail('rank', f"rank must be a positive integer, got {rank}")
    for key in ('labels', 'dual', 'twists', 'smatrix'):
        if not isinstance(obj[key], list) or len(obj[key]) != rank:
            _fail(key, f"'{key}' must have {rank} entries")

    def _index(key, x):
        if not isinstance(x, int) or not 0 <= x < rank:
            _fail(key, f"label index {x} out of range [0, {rank})")
        return x

    unit = _index('unit', obj['unit'])
    dual = [_index('dual', x) for x in obj['dual']]
    fusion = {}
    for entry in obj['fusion']:
        if not isinstance(entry, list) or len(entry) != 4:
            _fail('fusion', f"fusion entry {entry} is not [a, b, c, N]")
        a, b, c = (_index('fusion', x) for x in entry[:3])
        n = entry[3]
        if not isinstance(n, int) or n < 0:
            _fail('fusion', f"fusion coefficient N{(a, b, c)} = {n} must be "
                  "a non-negative integer")
        fusion[(a, b, c)] = n

    twists = []
    for t in obj['twists']:
        if not isinstance(t, str) or not _RATIONAL.match(t):
            _fail('twists', f"malformed rational {t!r}")
        twists.append(Fraction(t.replace(' ', '')) % 1)

    smatrix = np.zeros((rank, rank), dtype=complex)
    for i, row in enumerate(obj['smatrix']):
        if not isinstance(row, list) or len(row) != rank:
            _fail('smatrix', f"row {i} of smatrix must have {rank} entries")
        for j, z in enumerate(row):
            if not isinstance(z, list) or len(z) != 2 or \
                    not all(isinstance(x, (int, float)) for x in z):
                _fail('smatrix', f"entry ({i}, {j}) must be [re, im]")
            smatrix[i, j] = complex(z[0], z[1])
    if not np.allclose(smatrix, smatrix.T, atol=NUMERIC_TOL):
        _fail('smatrix', "smatrix is not symmetric")

    labels = [str(x) for x in obj['labels']]
    data = PreModularData(make_ring(labels, unit, dual, fusion),
                          tuple(twists), smatrix, name=obj.get('name', ''))
    try:
        data.validate(associativity=rank <= 32)
    except InvalidRingError as e:
        _fail('fusion' if e.check in ('unit', 'dual', 'associativity',
                                      'commutativity', 'integrality')
              else 'smatrix', f"{e.check}: {e.detail}")
    return data


def parse(text: str, path: str = "<string>") -> Value:
    """
    Parse premodular data or a witness from JSON text.

    Parameters
    ----------
    text : str
        File contents.
    path : str
        Name used in error messages.

    Returns
    -------
    value : PreModularData or ExtensionWitness

    Raises
    ------
    DataFileError
        On malformed JSON, unknown format tags, out of range indices,
        non-symmetric S-matrices, malformed rationals or data violating the
        premodular axioms, with the offending line.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        logger.error(f"{path}:{e.lineno}: {e.msg}")
        raise DataFileError(path, e.lineno, e.msg)
    if not isinstance(obj, dict):
        raise DataFileError(path, 1, "top level must be an object")
    tag = obj.get('format')
    if tag == PREMODULAR_FORMAT:
        return _parse_premodular(obj, text, path)
    if tag == WITNESS_FORMAT:
        base_at = text.find('"base"')
        if 'base' not in obj or 'embedding' not in obj:
            line = _line_of(text, 'format')
            raise DataFileError(path, line, "witness needs 'base' and 'embedding'")
        # bulk keys come before the inline base in serialized files
        bulk = _parse_premodular({k: v for k, v in obj.items() if k != 'base'},
                                 text, path)
        base = _parse_premodular(obj['base'], text, path, max(base_at, 0))
        emb = obj['embedding']
        if not isinstance(emb, list) or len(emb) != base.rank or \
                not all(isinstance(x, int) and 0 <= x < bulk.rank for x in emb):
            line = _line_of(text, 'embedding')
            logger.error(f"{path}:{line}: invalid embedding")
            raise DataFileError(path, line, "embedding must map every base "
                                "label to a bulk label")
        over = obj.get('over')
        if over is not None:
            if not isinstance(over, list) or \
                    not all(isinstance(x, int) and 0 <= x < bulk.rank
                            for x in over):
                line = _line_of(text, 'over')
                logger.error(f"{path}:{line}: invalid over labels")
                raise DataFileError(path, line, "'over' must list bulk labels")
            over = tuple(over)
        return ExtensionWitness(base, bulk, tuple(emb),
                                name=obj.get('name', ''), over=over)
    line = _line_of(text, 'format')
    logger.error(f"{path}:{line}: unknown format tag {tag!r}")
    raise DataFileError(path, line, f"unknown format tag {tag!r}")


def load(path: str) -> Value:
    """
    Read a data file.

    Raises
    ------
    DataFileError
        If the file can not be read or parsed.
    """
    try:
        with open(path, 'r') as f:
            text = f.read()
    except OSError as e:
        logger.error(f"Unable to read {path}: {e}")
        raise DataFileError(path, 0, str(e))
    return parse(text, path)


def dump(value: Value, path: str, canonical: bool = True) -> str:
    """Write a data file, creating parent directories."""
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)
    with open(path, 'w') as f:
        f.write(serialize(value, canonical))
    logger.info(f"Wrote {path}")
    return path


def load_dir(path: str) -> List[Value]:
    """Every ``*.json`` file of a directory, in name order."""
    if not os.path.isdir(path):
        logger.error(f"Not a directory: {path}")
        raise DataFileError(path, 0, "not a directory")
    names = sorted(f for f in os.listdir(path) if f.endswith('.json'))
    return [load(os.path.join(path, f)) for f in names]
