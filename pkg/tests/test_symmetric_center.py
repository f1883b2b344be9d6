"""
Tests for modext.symmetric_center

"""
import itertools
from fractions import Fraction

import pytest

from modext.constructors import rep_abelian, twisted_double_cyclic
from modext.exceptions import InconsistentDataError
from modext.modular_data import deligne_product, product_index
from modext.symmetric_center import (centralizer, classify_symmetric,
                                     dimension_identity_residual,
                                     fusion_closure, transparent_objects)

__author__ = "Carlos del-Castillo-Negrete"
__copyright__ = "Carlos del-Castillo-Negrete"
__license__ = "MIT"


def test_transparent_objects(toric, svect, ising):
    assert transparent_objects(toric) == {toric.unit}
    assert transparent_objects(svect) == {0, 1}
    prod = deligne_product(ising, svect)
    assert transparent_objects(prod) == {product_index(0, 0, 2),
                                         product_index(0, 1, 2)}


def test_centralizer(ising, toric):
    assert centralizer(toric, [toric.unit]) == set(range(4))
    assert centralizer(ising, [0, 1]) == {0, 1}
    assert centralizer(toric, range(4)) == transparent_objects(toric)
    e = toric.index('e')
    assert centralizer(toric, [e]) == {toric.unit, e}


def test_fusion_closure(toric, ising):
    e, m, psi = (toric.index(x) for x in ('e', 'm', 'psi'))
    assert fusion_closure(toric, [e, m]) == {toric.unit, e, m, psi}
    assert fusion_closure(ising, [2]) == {0, 1, 2}
    assert fusion_closure(ising, []) == {0}


def test_classify_symmetric(svect):
    res = classify_symmetric(svect)
    assert res.kind == "super_tannakian"
    assert res.group_order == 2
    assert res.fermion == 1
    assert res.to_dict(svect)['fermion'] == 'f'

    res = classify_symmetric(rep_abelian([3]))
    assert res.kind == "tannakian"
    assert res.group_order == 3
    assert res.fermion is None

    res = classify_symmetric(rep_abelian([]))
    assert res.kind == "trivial"
    assert res.group_order == 1


def test_classify_transparent_part_of_twisted_double():
    for k in range(3):
        w = twisted_double_cyclic(3, k)
        assert transparent_objects(w.bulk) == {w.bulk.unit}
        res = classify_symmetric(w.bulk, w.image)
        assert res.kind == "tannakian"
        assert res.group_order == 3
        # the fusion table of the image is Z_3
        one, two = w.embedding[1], w.embedding[2]
        assert res.group_table[(one, one)] == two
        assert res.group_table[(one, two)] == w.bulk.unit


def test_classify_inconsistent(semion_data):
    with pytest.raises(InconsistentDataError) as e:
        classify_symmetric(semion_data, [0, 1])
    assert e.value.twist == Fraction(1, 4)


def _closed_subsets(data, max_size=4):
    found = set()
    for k in range(max_size + 1):
        for labels in itertools.combinations(range(data.rank), k):
            found.add(fusion_closure(data, labels))
    return found


def test_dimension_identity(svect_catalog, toric):
    entries = [w.bulk for w in svect_catalog[:4]] + [toric]
    for data in entries:
        for labels in _closed_subsets(data):
            assert dimension_identity_residual(data, labels) < 1e-6


def test_double_centralizer(svect_catalog):
    for w in svect_catalog:
        data = w.bulk
        for labels in _closed_subsets(data):
            assert centralizer(data, centralizer(data, labels)) == labels


def test_dimension_identity_premodular(ising, svect):
    prod = deligne_product(ising, svect)
    for labels in _closed_subsets(prod, 2):
        assert dimension_identity_residual(prod, labels) < 1e-6
