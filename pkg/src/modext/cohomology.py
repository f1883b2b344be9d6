"""
MODEXT Cohomology

Third cohomology of small abelian groups with U(1) coefficients, computed
as the integral fourth cohomology of the normalized bar complex through an
exact Smith normal form, together with the standard cyclic cocycles,
restriction to subgroups and the dictionary between extensions of Rep(Z_n)
and cocycle classes.

"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, List, Mapping, Sequence, Tuple

import numpy as np

from modext.condensation import base_group
from modext.constants import MAX_CLASS_ORDER, MAX_COHOMOLOGY_ORDER
from modext.constructors import twisted_double_cyclic
from modext.exceptions import ModextError, SizeBoundError
from modext.utils import (add_elements, canonical_orders, frac_mod1,
                          group_elements, subgroup_basis)
from modext.witness import ExtensionWitness, extensions_equivalent

__author__ = "Carlos del-Castillo-Negrete"
__copyright__ = "Carlos del-Castillo-Negrete"
__license__ = "MIT"

logger = logging.getLogger(__name__)

Element = Tuple[int, ...]


@dataclass(frozen=True, eq=False)
class Cocycle3:
    """
    U(1)-valued 3-cochain on ``Z_{n_1} x ... x Z_{n_k}``.

    Attributes
    ----------
    group_orders : Tuple[int, ...]
        Cyclic orders of the group.
    values : Mapping[Tuple[Element, Element, Element], Fraction]
        ``omega(a, b, c) = exp(2 pi i values[a, b, c])``, missing triples
        are 0.
    """
    group_orders: Tuple[int, ...]
    values: Mapping[Tuple[Element, Element, Element], Fraction]

    @classmethod
    def from_function(cls, orders: Sequence[int], f: Callable):
        orders = tuple(int(n) for n in orders)
        els = group_elements(orders)
        values = {}
        for t in itertools.product(els, repeat=3):
            v = frac_mod1(f(*t))
            if v != 0:
                values[t] = v
        return cls(orders, values)

    def __call__(self, a, b, c) -> Fraction:
        return self.values.get((tuple(a), tuple(b), tuple(c)), Fraction(0))

    def coboundary(self, a, b, c, d) -> Fraction:
        """``(delta omega)(a, b, c, d)`` in Q/Z."""
        o = self.group_orders

        def _add(x, y):
            return add_elements(x, y, o)
        return frac_mod1(self(b, c, d) - self(_add(a, b), c, d)
                         + self(a, _add(b, c), d) - self(a, b, _add(c, d))
                         + self(a, b, c))

    def is_cocycle(self) -> bool:
        els = group_elements(self.group_orders)
        return all(self.coboundary(*t) == 0
                   for t in itertools.product(els, repeat=4))

    def is_normalized(self) -> bool:
        return all(all(any(x) for x in t) for t in self.values)


def standard_cocycle_cyclic(n: int, k: int) -> Cocycle3:
    """
    ``omega_k(a, b, c) = k a (b + c - [b + c]) / n^2`` on ``Z_n``.

    Raises
    ------
    ValueError
        If ``k`` is not in ``[0, n)``.
    """
    if not 0 <= k < n:
        msg = f"Cocycle class {k} must lie in [0, {n})"
        logger.error(msg)
        raise ValueError(msg)
    return Cocycle3.from_function(
        [n], lambda a, b, c: Fraction(k * a[0] * (b[0] + c[0] - (b[0] + c[0]) % n),
                                      n * n))


def _nonzero(orders) -> List[Element]:
    return group_elements(orders)[1:]


def coboundary_matrix(orders: Sequence[int], degree: int
                      ) -> Tuple[np.ndarray, List[tuple], List[tuple]]:
    """
    Integer matrix of the normalized bar coboundary ``C^n -> C^(n+1)``.

    Normalized cochains are functions on tuples of non-identity elements;
    terms of the alternating sum whose merged argument is the identity
    vanish.

    Parameters
    ----------
    orders : Sequence[int]
        Cyclic orders of the group.
    degree : int
        Source degree ``n``.

    Returns
    -------
    matrix, rows, cols : Tuple[np.ndarray, List[tuple], List[tuple]]
        Object dtype matrix with rows indexed by ``(n+1)``-tuples and columns
        by ``n``-tuples.
    """
    orders = tuple(orders)
    nz = _nonzero(orders)
    cols = list(itertools.product(nz, repeat=degree))
    rows = list(itertools.product(nz, repeat=degree + 1))
    col_index = {c: i for i, c in enumerate(cols)}
    mat = np.zeros((len(rows), len(cols)), dtype=object)
    zero = tuple(0 for _ in orders)
    for r, g in enumerate(rows):
        terms = [(g[1:], 1)]
        for i in range(degree):
            merged = add_elements(g[i], g[i + 1], orders)
            if merged == zero:
                continue
            terms.append((g[:i] + (merged,) + g[i + 2:], (-1) ** (i + 1)))
        terms.append((g[:-1], (-1) ** (degree + 1)))
        for t, sign in terms:
            mat[r, col_index[t]] += sign
    return mat, rows, cols


def _egcd(a: int, b: int) -> Tuple[int, int, int]:
    """``(g, s, t)`` with ``s a + t b = g = gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b != 0:
        q = a // b
        a, b = b, a - q * b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def smith_normal_form(mat: np.ndarray, transforms: bool = True):
    """
    Smith normal form over the integers.

    Parameters
    ----------
    mat : np.ndarray
        Integer matrix.
    transforms : bool, default=True
        Track the unimodular transforms.

    Returns
    -------
    P, D, Q : Tuple[np.ndarray, np.ndarray, np.ndarray]
        Object dtype matrices with ``P @ mat @ Q == D``, ``D`` diagonal with
        non-negative entries each dividing the next, ``P`` and ``Q``
        unimodular. ``P`` and ``Q`` are None without ``transforms``.
    """
    D = np.array(mat, dtype=object).copy()
    m, n = D.shape
    P = np.eye(m, dtype=object) if transforms else None
    Q = np.eye(n, dtype=object) if transforms else None

    def _swap_rows(i, j):
        if i != j:
            D[[i, j]] = D[[j, i]]
            if transforms:
                P[[i, j]] = P[[j, i]]

    def _swap_cols(i, j):
        if i != j:
            D[:, [i, j]] = D[:, [j, i]]
            if transforms:
                Q[:, [i, j]] = Q[:, [j, i]]

    t = 0
    while t < min(m, n):
        sub = D[t:, t:]
        nz = np.argwhere(sub != 0)
        if len(nz) == 0:
            break
        i, j = min(nz, key=lambda x: abs(sub[x[0], x[1]]))
        _swap_rows(t, t + i)
        _swap_cols(t, t + j)
        while True:
            piv = D[t, t]
            q = D[t + 1:, t] // piv
            if np.any(q != 0):
                D[t + 1:] -= q[:, None] * D[t][None, :]
                if transforms:
                    P[t + 1:] -= q[:, None] * P[t][None, :]
            q = D[t, t + 1:] // piv
            if np.any(q != 0):
                D[:, t + 1:] -= D[:, t][:, None] * q[None, :]
                if transforms:
                    Q[:, t + 1:] -= Q[:, t][:, None] * q[None, :]
            col = [(abs(D[r, t]), r, 'r') for r in range(t + 1, m) if D[r, t] != 0]
            row = [(abs(D[t, c]), c, 'c') for c in range(t + 1, n) if D[t, c] != 0]
            if not col and not row:
                break
            _, k, kind = min(col + row)
            if kind == 'r':
                _swap_rows(t, k)
            else:
                _swap_cols(t, k)
        if D[t, t] < 0:
            D[t] = -D[t]
            if transforms:
                P[t] = -P[t]
        t += 1

    # divisibility d_i | d_j
    rank = t
    changed = True
    while changed:
        changed = False
        for i in range(rank):
            for j in range(i + 1, rank):
                a, b = D[i, i], D[j, j]
                if b % a == 0:
                    continue
                g, s, u = _egcd(a, b)
                if transforms:
                    p2 = np.array([[s, u], [-b // g, a // g]], dtype=object)
                    q2 = np.array([[1, -u * b // g], [1, s * a // g]], dtype=object)
                    P[[i, j]] = p2 @ P[[i, j]]
                    Q[:, [i, j]] = Q[:, [i, j]] @ q2
                D[i, i], D[j, j] = g, a * b // g
                changed = True
    return P, D, Q


@dataclass(frozen=True, eq=False)
class _DegreeThree:
    orders: Tuple[int, ...]
    cols: List[tuple]
    matrix: np.ndarray
    P: np.ndarray
    Q: np.ndarray
    torsion: List[Tuple[int, int]]


@lru_cache(maxsize=None)
def _degree_three(orders: Tuple[int, ...]) -> _DegreeThree:
    size = int(np.prod(orders, dtype=int))
    if size > MAX_COHOMOLOGY_ORDER:
        logger.error(f"Group of order {size} too large for cohomology")
        raise SizeBoundError('|G|', size, MAX_COHOMOLOGY_ORDER)
    d3, rows, cols = coboundary_matrix(orders, 3)
    d4, _, _ = coboundary_matrix(orders, 4)
    if np.any(d4.dot(d3) != 0):
        msg = f"Coboundaries do not compose to zero for {orders}"
        logger.error(msg)
        raise ModextError(msg)
    P, D, Q = smith_normal_form(d3)
    _, D4, _ = smith_normal_form(d4, transforms=False)
    rank3 = sum(1 for i in range(min(D.shape)) if D[i, i] != 0)
    rank4 = sum(1 for i in range(min(D4.shape)) if D4[i, i] != 0)
    if len(rows) - rank4 != rank3:
        msg = f"Fourth integral cohomology of {orders} is not finite"
        logger.error(msg)
        raise ModextError(msg)
    torsion = [(i, int(D[i, i])) for i in range(rank3) if D[i, i] > 1]
    logger.info(f"Degree three Smith form for {orders}",
                extra={'torsion': [d for _, d in torsion]})
    return _DegreeThree(orders, cols, d3, P, Q, torsion)


@dataclass
class H3Classes:
    """
    Third cohomology of a finite abelian group with U(1) coefficients.

    Attributes
    ----------
    group_orders : Tuple[int, ...]
    invariant_factors : List[int]
        Structure of the cohomology group.
    torsion_orders : List[int]
        Orders of the generators below, one per Smith summand.
    representatives : List[Cocycle3]
        Normalized cocycle generating each summand.
    """
    group_orders: Tuple[int, ...]
    invariant_factors: List[int]
    torsion_orders: List[int]
    representatives: List[Cocycle3]

    @property
    def order(self) -> int:
        return int(np.prod(self.torsion_orders, dtype=int))


def h3_classes(group_orders: Sequence[int]) -> H3Classes:
    """
    Compute ``H^3(G, U(1))`` for ``|G| <= 4``.

    ``H^3(G, U(1))`` is the torsion of the cokernel of the integral bar
    coboundary ``C^3 -> C^4``. The generator of the summand ``Z/d_i`` is
    ``Q[:, i] / d_i`` read in Q/Z.

    Parameters
    ----------
    group_orders : Sequence[int]
        Cyclic orders of G.

    Returns
    -------
    classes : H3Classes

    Raises
    ------
    SizeBoundError
        If ``|G|`` exceeds the supported bound.
    """
    orders = tuple(int(n) for n in group_orders)
    deg = _degree_three(orders)
    reps = []
    for i, d in deg.torsion:
        values = {}
        for c, col in enumerate(deg.cols):
            v = frac_mod1(Fraction(int(deg.Q[c, i]), d))
            if v != 0:
                values[col] = v
        reps.append(Cocycle3(orders, values))
    torsion = [d for _, d in deg.torsion]
    return H3Classes(orders, canonical_orders(torsion), torsion, reps)


def cocycle_class(omega: Cocycle3) -> Tuple[int, ...]:
    """
    Coordinates of a normalized cocycle against ``h3_classes``.

    Lifts the values to rationals, takes the integral coboundary and reads
    it in the Smith basis.

    Returns
    -------
    coords : Tuple[int, ...]
        One residue per Smith summand; all zero for coboundaries.

    Raises
    ------
    ModextError
        If ``omega`` is not a normalized cocycle.
    """
    deg = _degree_three(tuple(omega.group_orders))
    if not omega.is_normalized():
        msg = "Cocycle class lookup needs a normalized cocycle"
        logger.error(msg)
        raise ModextError(msg)
    w = np.array([omega(*c) for c in deg.cols], dtype=object)
    z = deg.matrix.dot(w)
    if any(Fraction(x).denominator != 1 for x in z):
        msg = "Cochain is not a cocycle"
        logger.error(msg)
        raise ModextError(msg)
    y = deg.P.dot(np.array([int(Fraction(x)) for x in z], dtype=object))
    return tuple(int(y[i]) % d for i, d in deg.torsion)


def cyclic_class_index(omega: Cocycle3) -> int:
    """
    Class of a normalized cocycle on ``Z_n`` as an integer mod n.

    ``n * sum_j omega(1, j, 1)`` is invariant under coboundaries and equals
    ``k`` on ``standard_cocycle_cyclic(n, k)``.
    """
    if len(omega.group_orders) != 1:
        msg = "Cyclic class index needs a cyclic group"
        logger.error(msg)
        raise ModextError(msg)
    n = omega.group_orders[0]
    if n > MAX_CLASS_ORDER:
        logger.error(f"Cyclic group of order {n} too large for class lookup")
        raise SizeBoundError('n', n, MAX_CLASS_ORDER)
    total = sum((omega((1,), (j,), (1,)) for j in range(n)), Fraction(0))
    return int(frac_mod1(total) * n) % n


def restrict_cocycle(omega: Cocycle3, generators: Sequence[Sequence[int]]
                     ) -> Cocycle3:
    """
    Restriction of a cocycle to the subgroup generated by ``generators``.

    The subgroup is decomposed into cyclic summands and the restriction is
    returned in those coordinates.
    """
    orders = omega.group_orders
    h_orders, basis = subgroup_basis(orders, generators)

    def _embed(y):
        g = tuple(0 for _ in orders)
        for coeff, h in zip(y, basis):
            for _ in range(coeff):
                g = add_elements(g, h, orders)
        return g

    image = {y: _embed(y) for y in group_elements(h_orders)}
    return Cocycle3.from_function(
        h_orders, lambda a, b, c: omega(image[a], image[b], image[c]))


def cocycle_class_of_extension(w: ExtensionWitness) -> int:
    """
    Cocycle class ``k`` of an extension of Rep(Z_n).

    Returns
    -------
    k : int
        The ``k`` with ``w`` equivalent to ``twisted_double_cyclic(n, k)``.

    Raises
    ------
    ModextError
        If no twisted double matches.
    """
    orders, _ = base_group(w.base)
    if len(orders) != 1:
        msg = f"{w.base.name} is not Rep of a cyclic group"
        logger.error(msg)
        raise ModextError(msg)
    n = orders[0]
    for k in range(n):
        if extensions_equivalent(w, twisted_double_cyclic(n, k)):
            return k
    msg = f"No twisted double of Z{n} matches {w.name}"
    logger.error(msg)
    raise ModextError(msg)
