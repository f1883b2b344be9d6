"""
Tests for modext.extensions

"""
import itertools

import pytest

from modext.constructors import semion, toric_code, twisted_double_cyclic
from modext.exceptions import BaseMismatchError, ClosureError
from modext.extensions import (extension_identity, extension_inverse,
                               extension_times, group_table, identify,
                               invariant_factors_from_table, stack,
                               torsor_check)
from modext.modular_data import central_charge
from modext.witness import extensions_equivalent, validate_extension

__author__ = "Carlos del-Castillo-Negrete"
__copyright__ = "Carlos del-Castillo-Negrete"
__license__ = "MIT"


def test_stack_twisted_doubles():
    w = twisted_double_cyclic(3, 1)
    res = stack(w, w)
    assert validate_extension(res).passed
    assert extensions_equivalent(res, twisted_double_cyclic(3, 2))
    v = twisted_double_cyclic(2, 1)
    assert extensions_equivalent(stack(v, v), twisted_double_cyclic(2, 0))


@pytest.mark.parametrize("i,j", [(1, 1), (1, 15), (3, 5), (2, 2), (8, 8)])
def test_stack_catalog_entries(svect_catalog, i, j):
    res = stack(svect_catalog[i], svect_catalog[j])
    assert validate_extension(res).passed
    match = identify(res, svect_catalog)
    assert match is not None
    assert match[0] == (i + j) % 16


def test_inverse(svect_catalog):
    w = svect_catalog[1]
    inv = extension_inverse(w)
    assert validate_extension(inv).passed
    assert identify(inv, svect_catalog)[0] == 15
    assert identify(stack(w, inv), svect_catalog)[0] == 0
    assert central_charge(stack(w, inv).bulk)[0] == 0


def test_identity_is_neutral():
    w = twisted_double_cyclic(3, 2)
    ident = extension_identity(w.base)
    assert extensions_equivalent(stack(w, ident), w)
    assert extensions_equivalent(stack(ident, w), w)


def test_stack_base_mismatch(svect_catalog):
    with pytest.raises(BaseMismatchError):
        stack(svect_catalog[0], twisted_double_cyclic(2, 0))


def test_group_table_z3():
    family = [twisted_double_cyclic(3, k) for k in range(3)]
    table = group_table(family)
    assert table.identity == 0
    assert table.invariant_factors == [3]
    assert table.commutative and table.associative
    assert table.table[1][1] == 2
    assert table.to_dict()['names'] == [w.name for w in family]


def test_group_table_not_closed(svect_catalog):
    with pytest.raises(ClosureError) as e:
        group_table(svect_catalog[:2])
    assert (e.value.i, e.value.j) == (1, 1)


def test_invariant_factors_from_table():
    z4 = [[(i + j) % 4 for j in range(4)] for i in range(4)]
    assert invariant_factors_from_table(z4, 0) == [4]
    klein = [[i ^ j for j in range(4)] for i in range(4)]
    assert invariant_factors_from_table(klein, 0) == [2, 2]


def test_extension_times():
    w = extension_times(twisted_double_cyclic(2, 1), semion())
    assert w.bulk.rank == 8
    assert w.over is not None
    report = validate_extension(w)
    assert report.passed, report.to_dict()
    assert 'centralizer' in report.residuals


def _semion_family():
    return [extension_times(twisted_double_cyclic(2, k), semion())
            for k in range(2)]


def test_torsor_check():
    ext_e = [twisted_double_cyclic(2, k) for k in range(2)]
    report = torsor_check(_semion_family(), ext_e)
    assert report.passed
    assert report.identity == 0
    assert report.escapes == []
    assert report.action == [[0, 1], [1, 0]]


def test_torsor_check_missing_entry():
    ext_e = [twisted_double_cyclic(2, k) for k in range(2)]
    ext_c = _semion_family()[:1]
    report = torsor_check(ext_c, ext_e)
    assert not report.transitive
    assert not report.passed
    assert report.escapes == [(0, 1)]
    with pytest.raises(ClosureError):
        torsor_check(ext_c, ext_e, strict=True)


def test_torsor_check_needs_identity():
    with pytest.raises(ClosureError):
        torsor_check(_semion_family(), [twisted_double_cyclic(2, 1)])


@pytest.mark.slow
def test_svect_group_table(svect_catalog):
    table = group_table(svect_catalog)
    assert table.order == 16
    assert table.identity == 0
    assert table.invariant_factors == [16]
    assert table.commutative and table.associative


@pytest.mark.slow
def test_svect_toric_code_torsor(svect_catalog):
    toric = toric_code()
    ext_c = [extension_times(w, toric) for w in svect_catalog]
    report = torsor_check(ext_c, svect_catalog)
    assert report.passed


@pytest.mark.slow
@pytest.mark.parametrize("k", range(16))
def test_svect_identity_and_inverse_laws(svect_catalog, k):
    w = svect_catalog[k]
    ident = extension_identity(w.base)
    assert extensions_equivalent(stack(w, ident), w)
    assert extensions_equivalent(stack(w, extension_inverse(w)), ident)


@pytest.mark.parametrize("i,j", [(1, 2), (3, 8), (5, 15), (0, 7)])
def test_stack_adds_central_charge(svect_catalog, i, j):
    c1 = central_charge(svect_catalog[i].bulk)[0]
    c2 = central_charge(svect_catalog[j].bulk)[0]
    c = central_charge(stack(svect_catalog[i], svect_catalog[j]).bulk)[0]
    assert c == (c1 + c2) % 8


@pytest.mark.slow
def test_stack_adds_central_charge_all_pairs(svect_catalog):
    charges = [central_charge(w.bulk)[0] for w in svect_catalog]
    for i, j in itertools.combinations_with_replacement(range(16), 2):
        c = central_charge(stack(svect_catalog[i], svect_catalog[j]).bulk)[0]
        assert c == (charges[i] + charges[j]) % 8


def test_invariant_factors_rejects_non_group():
    # repeated entries in a row
    stuck = [[1, 1], [1, 1]]
    with pytest.raises(ClosureError) as e:
        invariant_factors_from_table(stuck, 0)
    assert (e.value.i, e.value.j) == (0, 1)
    shifted = [[1, 2, 0], [2, 0, 1], [0, 1, 2]]
    with pytest.raises(ClosureError):
        invariant_factors_from_table(shifted, 5)
