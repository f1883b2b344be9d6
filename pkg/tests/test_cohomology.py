"""
Tests for modext.cohomology

"""
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix

from modext.cohomology import (Cocycle3, coboundary_matrix, cocycle_class,
                               cocycle_class_of_extension, cyclic_class_index,
                               h3_classes, restrict_cocycle,
                               smith_normal_form, standard_cocycle_cyclic)
from modext.constructors import twisted_double_cyclic
from modext.exceptions import ModextError, SizeBoundError
from modext.extensions import stack
from modext.utils import add_elements

__author__ = "Carlos del-Castillo-Negrete"
__copyright__ = "Carlos del-Castillo-Negrete"
__license__ = "MIT"


@pytest.mark.parametrize("orders,factors", [
    ([2], [2]), ([3], [3]), ([4], [4]), ([2, 2], [2, 2, 2])])
def test_h3_classes(orders, factors):
    classes = h3_classes(orders)
    assert classes.invariant_factors == factors
    assert classes.order == int(np.prod(factors))
    for omega in classes.representatives:
        assert omega.is_normalized()
        assert omega.is_cocycle()


def test_h3_trivial_group():
    classes = h3_classes([])
    assert classes.invariant_factors == []
    assert classes.order == 1


def test_h3_size_bound():
    with pytest.raises(SizeBoundError):
        h3_classes([5])
    with pytest.raises(SizeBoundError):
        h3_classes([2, 3])


@pytest.mark.parametrize("orders", [[2], [3], [2, 2]])
def test_coboundaries_compose_to_zero(orders):
    d3, rows3, cols3 = coboundary_matrix(orders, 3)
    d4, rows4, cols4 = coboundary_matrix(orders, 4)
    assert cols4 == rows3
    assert not np.any(d4.dot(d3) != 0)


def test_smith_normal_form():
    mat = np.array([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], dtype=object)
    P, D, Q = smith_normal_form(mat)
    assert (P.dot(mat).dot(Q) == D).all()
    assert [D[i, i] for i in range(3)] == [2, 6, 12]
    assert all(D[i, j] == 0 for i in range(3) for j in range(3) if i != j)
    assert abs(Matrix(P.tolist()).det()) == 1
    assert abs(Matrix(Q.tolist()).det()) == 1
    _, D2, Q2 = smith_normal_form(mat, transforms=False)
    assert Q2 is None
    assert (D2 == D).all()


def test_smith_normal_form_rank_deficient():
    mat = np.array([[1, 2], [2, 4], [3, 6]], dtype=object)
    P, D, Q = smith_normal_form(mat)
    assert (P.dot(mat).dot(Q) == D).all()
    assert D[0, 0] == 1
    assert D[1, 1] == 0


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_standard_cocycles(n):
    for k in range(n):
        omega = standard_cocycle_cyclic(n, k)
        assert omega.is_cocycle()
        assert omega.is_normalized()
        assert cyclic_class_index(omega) == k
    with pytest.raises(ValueError):
        standard_cocycle_cyclic(n, n)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_standard_cocycles_not_cohomologous(n):
    classes = [cocycle_class(standard_cocycle_cyclic(n, k)) for k in range(n)]
    assert len(set(classes)) == n
    assert all(x == 0 for x in classes[0])


def _coboundary_of(n, values):
    """delta of the normalized 2-cochain beta(a, b) = values[a - 1][b - 1]."""
    def beta(a, b):
        if a[0] == 0 or b[0] == 0:
            return Fraction(0)
        return values[a[0] - 1][b[0] - 1]

    def delta(a, b, c):
        return (beta(b, c) - beta(add_elements(a, b, (n,)), c)
                + beta(a, add_elements(b, c, (n,))) - beta(a, b))
    return Cocycle3.from_function([n], delta)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=2, max_value=4).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(
        st.lists(st.fractions(min_value=0, max_value=1, max_denominator=12),
                 min_size=n - 1, max_size=n - 1),
        min_size=n - 1, max_size=n - 1))))
def test_coboundaries_are_trivial(args):
    n, values = args
    omega = _coboundary_of(n, values)
    assert omega.is_cocycle()
    assert cyclic_class_index(omega) == 0
    assert all(x == 0 for x in cocycle_class(omega))


def test_cocycle_class_needs_cocycle():
    bad = Cocycle3((2,), {((1,), (1,), (1,)): Fraction(1, 3)})
    with pytest.raises(ModextError):
        cocycle_class(bad)
    unnormalized = Cocycle3((2,), {((0,), (1,), (1,)): Fraction(1, 2)})
    with pytest.raises(ModextError):
        cocycle_class(unnormalized)


def test_cyclic_class_index_bounds():
    with pytest.raises(ModextError):
        cyclic_class_index(Cocycle3((2, 2), {}))
    with pytest.raises(SizeBoundError):
        cyclic_class_index(Cocycle3((7,), {}))


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_restriction_to_subgroup(k):
    omega = standard_cocycle_cyclic(4, k)
    res = restrict_cocycle(omega, [(2,)])
    assert res.group_orders == (2,)
    assert res.is_cocycle()
    assert cyclic_class_index(res) == k % 2


def test_restriction_to_trivial_subgroup():
    res = restrict_cocycle(standard_cocycle_cyclic(3, 1), [(0,)])
    assert res.group_orders == ()
    assert res.values == {}


def test_cocycle_class_of_extension():
    for n in (2, 3):
        for k in range(n):
            assert cocycle_class_of_extension(twisted_double_cyclic(n, k)) == k


def test_stacking_adds_classes():
    w1, w2 = twisted_double_cyclic(3, 1), twisted_double_cyclic(3, 1)
    assert cocycle_class_of_extension(stack(w1, w2)) == 2
