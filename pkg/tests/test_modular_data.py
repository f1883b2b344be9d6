"""
Tests for modext.modular_data

"""
import itertools
from fractions import Fraction
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modext.condensation import boson_subgroups, condense
from modext.constructors import MetricGroup, ising_mtc, pointed_mtc
from modext.exceptions import (AnomalousGaussSumError, InvalidRingError,
                               NotModularError)
from modext.modular_data import (PreModularData, balancing_residual,
                                 canonical_form, central_charge, conjugate,
                                 deligne_product, find_equivalence, fp_dims,
                                 gauss_sums, is_modular, make_ring, permute,
                                 product_index, require_modular, same_data,
                                 verlinde_fusion)

__author__ = "Carlos del-Castillo-Negrete"
__copyright__ = "Carlos del-Castillo-Negrete"
__license__ = "MIT"


def test_fp_dims(ising):
    dims = fp_dims(ising.ring)
    assert np.allclose(dims, [1, 1, np.sqrt(2)])


def test_fp_dims_invalid_ring():
    # unit label 0 does not act as identity
    ring = make_ring(['1', 'a'], 0, [0, 1], {(0, 0, 0): 1, (1, 1, 0): 1})
    with pytest.raises(InvalidRingError) as e:
        fp_dims(ring)
    assert e.value.check == 'unit'


def test_ring_dual_axiom():
    fusion = {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1,
              (1, 1, 0): 1, (1, 1, 1): 2}
    ring = make_ring(['1', 'a'], 0, [0, 1], fusion)
    ring.validate()
    fusion[(1, 1, 0)] = 2
    ring = make_ring(['1', 'a'], 0, [0, 1], fusion)
    with pytest.raises(InvalidRingError) as e:
        ring.validate()
    assert e.value.check == 'dual'


def test_ising_modular(ising):
    ising.validate()
    assert balancing_residual(ising) < 1e-9
    report = is_modular(ising)
    assert report.is_modular
    assert report.failures == []
    c, xi = central_charge(ising)
    assert c == Fraction(1, 2)
    assert abs(xi - np.exp(2j * np.pi / 16)) < 1e-9


def test_ising_fusion(ising):
    fusion = verlinde_fusion(ising)
    x, u = ising.index('x'), ising.index('u')
    assert fusion[(x, x, ising.unit)] == 1
    assert fusion[(x, x, u)] == 1
    assert fusion == dict(ising.ring.fusion)


def test_ising_central_charges():
    # theta_x = exp(2 pi i c / 16) for every unitary Ising
    for k in range(1, 16, 2):
        data = ising_mtc(Fraction(k, 16))
        c, _ = central_charge(data)
        assert c == 8 * data.twists[2]
        assert c.denominator == 2


def test_semion(semion_data):
    assert is_modular(semion_data).is_modular
    c, xi = central_charge(semion_data)
    assert c == 1
    assert abs(xi - np.exp(2j * np.pi / 8)) < 1e-9


def test_toric_code(toric):
    report = require_modular(toric)
    assert report.is_modular
    assert central_charge(toric)[0] == 0
    assert toric.total_dim == pytest.approx(4)


def test_svect_not_modular(svect):
    report = is_modular(svect)
    assert not report.is_modular
    assert report.failed('transparency')
    assert report.failed('unitarity')
    assert 'verlinde' not in report.residuals
    with pytest.raises(NotModularError) as e:
        require_modular(svect)
    assert 'transparency' in str(e.value)


def test_verlinde_requires_unitary(svect):
    with pytest.raises(NotModularError):
        verlinde_fusion(svect)


def test_deligne_product(semion_data, ising):
    prod = deligne_product(semion_data, ising)
    assert prod.rank == 6
    assert prod.labels[product_index(1, 2, 3)] == '1|x'
    assert is_modular(prod).is_modular
    assert central_charge(prod)[0] == Fraction(3, 2)


def test_conjugate(semion_data):
    conj = conjugate(semion_data)
    assert is_modular(conj).is_modular
    assert central_charge(conj)[0] == 7
    prod = deligne_product(semion_data, conj)
    assert central_charge(prod)[0] == 0


def test_conjugate_is_involution(semion_data, ising, toric):
    for data in (semion_data, ising, toric):
        twice = conjugate(conjugate(data))
        assert twice.twists == data.twists
        assert np.allclose(twice.smatrix, data.smatrix)
        assert find_equivalence(twice, data) is not None
        c = central_charge(data)[0]
        assert central_charge(conjugate(data))[0] == (-c) % 8


def test_deligne_product_commutative(semion_data, ising, toric):
    for a, b in itertools.combinations((semion_data, ising, toric), 2):
        assert find_equivalence(deligne_product(a, b),
                                deligne_product(b, a)) is not None


def test_deligne_product_associative(semion_data, ising, toric):
    left = deligne_product(deligne_product(semion_data, ising), toric)
    right = deligne_product(semion_data, deligne_product(ising, toric))
    assert left.rank == right.rank == 24
    assert same_data(left, right)
    assert find_equivalence(left, right) is not None



def test_permute_and_find_equivalence(toric):
    shuffled = permute(toric, [0, 2, 3, 1])
    assert not same_data(shuffled, toric)
    perm = find_equivalence(toric, shuffled)
    assert perm is not None
    assert perm[toric.unit] == shuffled.unit
    # e and m may be exchanged but psi is fixed by its twist
    assert shuffled.labels[perm[toric.index('psi')]] == 'psi'


def test_find_equivalence_pinned(toric):
    e, m = toric.index('e'), toric.index('m')
    swap = find_equivalence(toric, toric, {e: m})
    assert swap is not None and swap[m] == e
    with pytest.raises(ValueError):
        find_equivalence(toric, toric, {e: 7})


def test_find_equivalence_distinguishes(semion_data, ising):
    assert find_equivalence(semion_data, conjugate(semion_data)) is None
    assert find_equivalence(ising, ising_mtc(Fraction(1, 16))) is None
    assert find_equivalence(ising, ising) == (0, 1, 2)


def test_find_equivalence_tolerance(toric):
    e, m = toric.index('e'), toric.index('m')
    s = toric.smatrix.copy()
    s[e, m] += 1e-7
    s[m, e] += 1e-7
    nudged = PreModularData(toric.ring, toric.twists, s, "nudged")
    assert find_equivalence(toric, nudged) is None
    s[e, m] = s[m, e] = toric.smatrix[e, m] + 1e-12
    assert find_equivalence(toric, PreModularData(toric.ring, toric.twists, s)) \
        is not None



def test_canonical_form(ising):
    shuffled = permute(ising, [2, 0, 1])
    canon, order = canonical_form(shuffled)
    assert canon.unit == 0
    assert canon.labels == ('1', 'u', 'x')
    assert [shuffled.labels[o] for o in order] == ['1', 'u', 'x']
    assert same_data(canon, canonical_form(ising)[0])


GROUP_TYPES = ([(n,) for n in range(1, 17)]
               + [(2, 2), (2, 4), (3, 3), (2, 6), (2, 8), (4, 4),
                  (2, 2, 2), (2, 2, 4), (2, 2, 2, 2)])


@st.composite
def metric_groups(draw):
    """Quadratic forms on abelian groups of order at most 16."""
    orders = draw(st.sampled_from(GROUP_TYPES))
    diag = []
    for n in orders:
        denom = 2 * n if n % 2 == 0 else n
        diag.append(Fraction(draw(st.integers(0, denom - 1)), denom))
    off = {}
    for i, j in itertools.combinations(range(len(orders)), 2):
        g = gcd(orders[i], orders[j])
        if g > 1:
            off[(i, j)] = Fraction(draw(st.integers(0, g - 1)), g)
    return MetricGroup.from_form(orders, diag, off)


@settings(max_examples=200, deadline=None)
@given(metric_groups(), st.data())
def test_metric_groups(m, draw):
    m.validate()
    data = pointed_mtc(m)
    data.validate()
    assert is_modular(data).is_modular == m.is_nondegenerate()
    if not m.is_nondegenerate():
        return
    assert data.total_dim == pytest.approx(m.order)
    fusion = verlinde_fusion(data)
    assert fusion == dict(data.ring.fusion)
    els = m.elements()
    assert len(fusion) == len(els) ** 2
    for g, h in itertools.product(els, repeat=2):
        key = (data.index(m.name_of(g)), data.index(m.name_of(h)),
               data.index(m.name_of(m.add(g, h))))
        assert fusion[key] == 1
    c, xi = central_charge(data)
    assert abs(abs(xi) - 1) < 1e-9
    assert 0 <= c < 8

    bosons = draw.draw(st.sampled_from(boson_subgroups(data)))
    condensed = condense(data, bosons).condensed
    assert condensed.total_dim == pytest.approx(
        data.total_dim / bosons.order ** 2)
    assert is_modular(condensed).is_modular
    c2, xi2 = central_charge(condensed)
    assert c2 == c
    assert abs(xi2 - xi) < 1e-9



def test_gauss_sums(semion_data, ising, svect):
    tau_p, tau_m = gauss_sums(semion_data)
    assert abs(tau_p - (1 + 1j)) < 1e-9
    assert abs(tau_m - (1 - 1j)) < 1e-9
    tau_p, tau_m = gauss_sums(ising)
    assert abs(tau_p * tau_m - ising.total_dim) < 1e-9
    assert abs(gauss_sums(svect)[0]) < 1e-9
    with pytest.raises(AnomalousGaussSumError):
        central_charge(svect)
