"""
Tests for modext.condensation

"""
from fractions import Fraction

import pytest

from modext.condensation import (BosonGroup, base_group, boson_subgroups,
                                 break_symmetry, condense, is_anisotropic,
                                 is_lagrangian, monodromy_phase)
from modext.constructors import (ising_mtc, rep_abelian, svect_data,
                                 twisted_double_cyclic)
from modext.exceptions import (BaseMismatchError, NotCondensableError,
                               NotModularError)
from modext.extensions import (extension_identity,
                               symmetry_breaking_homomorphism_check)
from modext.modular_data import (central_charge, conjugate, deligne_product,
                                 find_equivalence, is_modular, product_index)
from modext.witness import extensions_equivalent, validate_extension

__author__ = "Carlos del-Castillo-Negrete"
__copyright__ = "Carlos del-Castillo-Negrete"
__license__ = "MIT"


def test_monodromy(toric):
    e, m = toric.index('e'), toric.index('m')
    assert monodromy_phase(toric, e, m) == Fraction(1, 2)
    assert monodromy_phase(toric, e, e) == 0
    with pytest.raises(NotCondensableError):
        monodromy_phase(ising_mtc(Fraction(1, 16)), 2, 1)


def test_boson_group_validation(toric, semion_data):
    group = BosonGroup.from_labels(toric, ['e'])
    assert group.order == 2
    with pytest.raises(NotCondensableError) as e:
        BosonGroup.from_labels(semion_data, [1])
    assert e.value.reason == 'not a boson'
    with pytest.raises(NotCondensableError) as e:
        BosonGroup.from_labels(toric, ['e', 'm'])
    assert e.value.reason == 'not closed under fusion'
    with pytest.raises(NotCondensableError) as e:
        BosonGroup.from_labels(toric, ['nope'])
    assert e.value.reason == 'unknown label'
    with pytest.raises(NotCondensableError) as e:
        BosonGroup.from_labels(ising_mtc(Fraction(1, 16)), ['x'])
    assert e.value.reason == 'not invertible'


def test_condense_toric_code(toric):
    res = condense(toric, ['e'])
    assert res.condensed.rank == 1
    assert res.boson_count == 2
    assert is_lagrangian(toric, ['e'])
    assert res.project(toric.index('e')) == 0
    with pytest.raises(KeyError):
        res.project(toric.index('m'))


def test_condense_checks_host(svect):
    with pytest.raises(NotModularError):
        condense(svect, [], check_host=True)


def test_condense_semion_product(semion_data):
    # semion x anti-semion has the boson s|s*
    prod = deligne_product(semion_data, conjugate(semion_data))
    res = condense(prod, [product_index(1, 1, 2)])
    assert res.condensed.rank == 1
    assert is_modular(res.condensed).is_modular


def test_condense_splits_fixed_points(ising):
    # I x conj(I) condensed on u|u is the toric code
    prod = deligne_product(ising, conjugate(ising))
    uu = product_index(1, 1, 3)
    res = condense(prod, [uu])
    data = res.condensed
    assert data.rank == 4
    assert is_modular(data).is_modular
    assert central_charge(data)[0] == 0
    assert {'x|x+', 'x|x-'} <= set(data.labels)
    assert find_equivalence(data, extension_identity(svect_data()).bulk) \
        is not None
    assert all(abs(d - 1) < 1e-9 for d in data.dims)
    with pytest.raises(KeyError):
        res.project(product_index(2, 2, 3))


def test_condense_two_isings():
    a = ising_mtc(Fraction(15, 16))
    prod = deligne_product(a, a)
    res = condense(prod, [product_index(1, 1, 3)])
    assert res.condensed.rank == 4
    assert central_charge(res.condensed)[0] == 1


def test_iterated_condensation(toric, semion_data):
    double = deligne_product(toric, toric)
    host = deligne_product(double, semion_data)

    def label(x, y):
        return product_index(product_index(toric.index(x), toric.index(y), 4),
                             semion_data.unit, 2)

    first = condense(host, [label('e', 'e')])
    assert first.condensed.rank == 8
    second = condense(first.condensed, [first.project(label('e', '1'))])
    direct = condense(host, [label('e', 'e'), label('e', '1'),
                             label('1', 'e')])
    assert second.condensed.rank == direct.condensed.rank == 2
    assert find_equivalence(second.condensed, direct.condensed) is not None
    assert find_equivalence(direct.condensed, semion_data) is not None


def test_boson_subgroups(toric, semion_data, svect_catalog):
    groups = boson_subgroups(toric)
    assert [g.order for g in groups] == [1, 2, 2]
    assert not is_anisotropic(toric)
    assert is_anisotropic(semion_data)
    anisotropic = [is_anisotropic(w.bulk) for w in svect_catalog]
    assert anisotropic == [False] + [True] * 15


def test_every_rep_extension_is_lagrangian():
    for n in (2, 3, 4):
        for k in range(n):
            w = twisted_double_cyclic(n, k)
            assert is_lagrangian(w.bulk, w.embedding)


def test_base_group(svect):
    assert base_group(svect) == ((2,), [(0,), (1,)])
    orders, coords = base_group(rep_abelian([2, 3]))
    assert orders == (2, 3)
    assert coords[0] == (0, 0)
    with pytest.raises(BaseMismatchError):
        base_group(ising_mtc(Fraction(1, 16)))


def test_break_symmetry_to_trivial():
    w = twisted_double_cyclic(2, 1)
    res = break_symmetry(w, [(0,)])
    assert res.base.rank == 1
    assert res.bulk.rank == 1
    assert validate_extension(res).passed


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_break_symmetry_restricts_class(k):
    res = break_symmetry(twisted_double_cyclic(4, k), [(2,)])
    assert res.bulk.rank == 4
    assert validate_extension(res).passed
    assert extensions_equivalent(res, twisted_double_cyclic(2, k % 2))


def test_break_symmetry_fermion(svect_catalog):
    # breaking sVect would condense the fermion
    with pytest.raises(NotCondensableError):
        break_symmetry(svect_catalog[1], [(0,)])


@pytest.mark.parametrize("k", [1, 3])
def test_break_symmetry_whole_group(svect_catalog, k):
    w = svect_catalog[k]
    res = break_symmetry(w, [(1,)])
    assert res is w
    assert res.base.labels == ('1', 'f')
    assert validate_extension(res).passed
    td = twisted_double_cyclic(3, 1)
    assert break_symmetry(td, [(2,)]) is td


def test_homomorphism_small():
    w = twisted_double_cyclic(2, 1)
    assert symmetry_breaking_homomorphism_check(w, w, [(0,)])


@pytest.mark.slow
def test_homomorphism_z4():
    w1, w2 = twisted_double_cyclic(4, 1), twisted_double_cyclic(4, 2)
    assert symmetry_breaking_homomorphism_check(w1, w2, [(2,)])
