"""
MODEXT Utility Functions


"""

import math
import re
import itertools
from collections import defaultdict
from itertools import zip_longest
from math import prod
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np
from prettytable import PrettyTable
from sympy import factorint
from sympy.utilities.iterables import partitions

__author__ = "Carlos del-Castillo-Negrete"
__copyright__ = "Carlos del-Castillo-Negrete"
__license__ = "MIT"

Rational = Union[Fraction, int, str]


def frac_mod1(x: Rational) -> Fraction:
    """
    Reduce a rational number into [0, 1).

    Parameters
    ----------
    x : Fraction, int or str
        Value to reduce. Strings are parsed as ``p/q``.

    Returns
    -------
    r : Fraction
        ``x mod 1``.
    """
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


def root_of_unity(r: Rational) -> complex:
    """exp(2 pi i r)"""
    return complex(np.exp(2j * np.pi * float(Fraction(r))))


def group_elements(orders: Sequence[int]) -> List[Tuple[int, ...]]:
    """
    Elements of Z_{n_1} x ... x Z_{n_k} in lexicographic order, zero first.
    """
    return list(itertools.product(*[range(n) for n in orders]))


def add_elements(g, h, orders):
    return tuple((a + b) % n for a, b, n in zip(g, h, orders))


def element_order(g, orders) -> int:
    order = 1
    for a, n in zip(g, orders):
        k = n // np.gcd(a, n)
        order = order * k // np.gcd(order, k)
    return int(order)


def element_name(g: Sequence[int]) -> str:
    """Display name of a group element: ``3`` or ``1.0``."""
    return '.'.join(str(a) for a in g)


def parse_int_list(text: str, sep: str = ',') -> List[int]:
    """
    Parse an integer list such as ``"2,2"``.

    Raises
    ------
    ValueError
        If an entry is not an integer.
    """
    text = text.strip()
    if text == '':
        return []
    return [int(x) for x in text.split(sep)]


def parse_generators(text: str) -> List[Tuple[int, ...]]:
    """
    Parse subgroup generators ``"2"`` or ``"1,0;0,1"`` in group coordinates.
    """
    return [tuple(parse_int_list(g)) for g in text.split(';') if g.strip()]


def format_complex(z: complex, digits: int = 4) -> str:
    z = complex(z)
    re_, im_ = round(z.real, digits) + 0.0, round(z.imag, digits) + 0.0
    if im_ == 0:
        return f"{re_:g}"
    if re_ == 0:
        return f"{im_:g}i"
    return f"{re_:g}{im_:+g}i"


def filter_res(res: Iterable[dict], fields: List[str], search: str = None,
               match: str = r".", filter_fun=None) -> str:
    """
    Print results

    Prints dictionary keys in list `fields` for each dictionary in res,
    filtering on the search column if specified with regular expression
    if desired.

    Parameters
    ----------
    res : List[dict]
        List of dictionaries, one per table row.
    fields : List[string]
        List of strings containing names of fields to extract for each element.
    search : string, optional
        Column to perform string pattern matching on to filter results.
    match : str, default='.'
        Regular expression to match strings in search column.
    filter_fun : callable, optional
        Applied to each row before it is added.

    Returns
    -------
    table : str
        Rendered PrettyTable.
    """
    x = PrettyTable(float_format="0.4")
    x.field_names = fields

    for r in res:
        if filter_fun is not None:
            r = filter_fun(r)
        if search is not None and re.search(match, str(r[search])) is None:
            continue
        x.add_row([r[f] for f in fields])

    return str(x)


def format_matrix(mat, labels: Sequence[str]) -> str:
    """Render a square matrix with labelled rows and columns."""
    res = []
    for name, row in zip(labels, mat):
        r = {'': name}
        r.update({lab: (format_complex(v) if isinstance(v, complex) or
                        np.iscomplexobj(v) else v)
                  for lab, v in zip(labels, row)})
        res.append(r)
    return filter_res(res, [''] + list(labels))


def invariant_factors(prime_exponents) -> List[int]:
    """
    Invariant factors ``n_1 | n_2 | ...`` of a finite abelian group.

    Parameters
    ----------
    prime_exponents : Mapping[int, Sequence[int]]
        For each prime ``p`` the exponents of its cyclic p-power summands.

    Returns
    -------
    factors : List[int]
        Invariant factors in increasing order, each dividing the next.
    """
    torsion = zip_longest(*[
        [p ** e for e in sorted(e_list, reverse=True)]
        for p, e_list in sorted(prime_exponents.items()) if e_list
    ], fillvalue=1)
    return sorted(prod(t) for t in torsion)


def canonical_orders(orders: Sequence[int]) -> List[int]:
    """Invariant factors of ``Z_{n_1} x ... x Z_{n_k}``."""
    ed = defaultdict(list)
    for n in orders:
        for p, e in factorint(n).items():
            ed[int(p)].append(int(e))
    return invariant_factors(ed)


def abelian_group_types(order: int) -> List[Tuple[int, ...]]:
    """
    Every abelian group of the given order, as invariant factor tuples.

    >>> abelian_group_types(4)
    [(4,), (2, 2)]
    """
    per_prime = []
    for p, e in sorted(factorint(order).items()):
        per_prime.append([(int(p), [k for k, m in part.items() for _ in range(m)])
                          for part in (dict(x) for x in partitions(int(e)))])
    types = []
    for choice in itertools.product(*per_prime):
        types.append(tuple(invariant_factors(dict(choice))))
    return sorted(set(types), key=lambda t: (len(t), t))


def subgroup_elements(orders: Sequence[int],
                      generators: Sequence[Sequence[int]]) -> List[Tuple[int, ...]]:
    """Elements of the subgroup generated by ``generators``, sorted."""
    zero = tuple(0 for _ in orders)
    found = {zero}
    frontier = [zero]
    while frontier:
        g = frontier.pop()
        for h in generators:
            k = add_elements(g, h, orders)
            if k not in found:
                found.add(k)
                frontier.append(k)
    return sorted(found)


def subgroup_basis(orders: Sequence[int], generators: Sequence[Sequence[int]]
                   ) -> Tuple[Tuple[int, ...], List[Tuple[int, ...]]]:
    """
    Decompose a subgroup into cyclic summands.

    Parameters
    ----------
    orders : Sequence[int]
        Cyclic orders of the ambient group.
    generators : Sequence[Sequence[int]]
        Generators of the subgroup.

    Returns
    -------
    h_orders, basis : Tuple[Tuple[int, ...], List[Tuple[int, ...]]]
        Invariant factors of the subgroup and elements ``h_i`` of order
        ``h_orders[i]`` with ``H = <h_1> + ... + <h_k>`` direct.
    """
    orders = tuple(orders)
    generators = [tuple(int(x) % n for x, n in zip(g, orders))
                  for g in generators]
    elements = subgroup_elements(orders, generators)
    h_orders = tuple(invariant_factors_from_element_orders(
        [element_order(g, orders) for g in elements]))

    def _search(k, chosen, span):
        if k == len(h_orders):
            return chosen
        for g in elements:
            if element_order(g, orders) != h_orders[k]:
                continue
            multiples = [tuple((j * a) % n for a, n in zip(g, orders))
                         for j in range(h_orders[k])]
            new_span = {add_elements(s, m, orders) for s in span for m in multiples}
            if len(new_span) != len(span) * h_orders[k]:
                continue
            res = _search(k + 1, chosen + [g], new_span)
            if res is not None:
                return res
        return None

    basis = _search(0, [], {tuple(0 for _ in orders)})
    return h_orders, basis


def invariant_factors_from_element_orders(element_orders: Sequence[int]
                                          ) -> List[int]:
    """
    Invariant factors of a finite abelian group from its element orders.

    The number of elements killed by ``p^e`` is ``prod_i p^min(e, e_i)``
    over the p-primary summands, so consecutive ratios count the summands
    of exponent larger than ``e``.
    """
    primes = defaultdict(int)
    for k in element_orders:
        for p, e in factorint(k).items():
            primes[int(p)] = max(primes[int(p)], int(e))
    ed = defaultdict(list)
    for p, top in primes.items():
        size = [sum(1 for k in element_orders if p ** e % k == 0)
                for e in range(top + 2)]
        ranks = [round(math.log(size[e + 1] // size[e], p))
                 for e in range(top + 1)]
        for e in range(top + 1):
            nxt = ranks[e + 1] if e + 1 <= top else 0
            ed[p].extend([e + 1] * (ranks[e] - nxt))
    return invariant_factors(ed)
