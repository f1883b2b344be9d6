"""
MODEXT Extensions

Group structure on modular extensions of a symmetric base: stacking,
identity and inverse, identification against catalogs, Cayley tables and
the torsor action of extensions of the base on extensions of a larger
category.

"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from modext.condensation import base_group, break_symmetry, condense
from modext.constructors import kappa_extension, pointed_data
from modext.exceptions import BaseMismatchError, ClosureError
from modext.modular_data import (PreModularData, conjugate, deligne_product,
                                 make_ring, product_index)
from modext.symmetric_center import classify_symmetric
from modext.utils import (element_name, frac_mod1, group_elements,
                          invariant_factors_from_element_orders)
from modext.witness import (ExtensionReport, ExtensionWitness, base_matching,
                            extension_equivalence, extensions_equivalent,
                            validate_extension)

__author__ = "Carlos del-Castillo-Negrete"
__copyright__ = "Carlos del-Castillo-Negrete"
__license__ = "MIT"

logger = logging.getLogger(__name__)

__all__ = ['ExtensionReport', 'ExtensionWitness', 'validate_extension',
           'extensions_equivalent', 'stack', 'extension_identity',
           'extension_inverse', 'extension_times', 'identify', 'group_table',
           'torsor_check', 'symmetry_breaking_homomorphism_check',
           'GroupTable', 'TorsorReport', 'invariant_factors_from_table']


def stack(w1: ExtensionWitness, w2: ExtensionWitness) -> ExtensionWitness:
    """
    Stack two extensions of the same base.

    Takes the Deligne product of the bulks and condenses the diagonal
    bosons ``i1(e) | i2(sigma(e*))``; the base is embedded through the
    first factor, and so is ``w1.over`` when ``w1`` extends a larger
    category.

    Parameters
    ----------
    w1, w2 : ExtensionWitness
        Extensions over equivalent bases.

    Returns
    -------
    witness : ExtensionWitness
        Extension over the base of ``w1``.

    Raises
    ------
    BaseMismatchError
        If the bases are not equivalent.
    UnderdeterminedCondensationError
        If the condensation can not be resolved.
    """
    sigma = base_matching(w1.base, w2.base)
    base = w1.base
    r2 = w2.bulk.rank
    product = deligne_product(w1.bulk, w2.bulk)
    bosons = [product_index(w1.embedding[e],
                            w2.embedding[sigma[base.dual[e]]], r2)
              for e in range(base.rank)]
    result = condense(product, bosons)
    embedding = tuple(result.project(product_index(w1.embedding[e],
                                                   w2.bulk.unit, r2))
                      for e in range(base.rank))
    over = None
    if w1.over is not None:
        over = tuple(result.project(product_index(x, w2.bulk.unit, r2))
                     for x in w1.over)
    name = f"({w1.name})*({w2.name})"
    logger.info(f"Stacked {w1.name} with {w2.name}",
                extra={'rank': result.condensed.rank})
    return ExtensionWitness(base, result.condensed, embedding, name=name,
                            over=over)


def extension_identity(base: PreModularData) -> ExtensionWitness:
    """
    Identity extension: the center of the base.

    Parameters
    ----------
    base : PreModularData
        Trivial, sVect or Rep(A) of an abelian group.

    Returns
    -------
    witness : ExtensionWitness
        For Rep(A) the pointed data on ``A + A^`` with
        ``q(a, chi) = <chi, a>`` and the base embedded as ``0 + A^``.

    Raises
    ------
    BaseMismatchError
        For any other base.
    """
    kind = classify_symmetric(base).kind
    if base.rank == 1:
        ring = make_ring(base.labels, 0, [0], {(0, 0, 0): 1})
        bulk = PreModularData(ring, (Fraction(0),), base.smatrix.copy(),
                              name="Vect")
        return ExtensionWitness(base, bulk, (0,), name="Z(Vect)")
    if kind == "super_tannakian" and base.rank == 2:
        w = kappa_extension(0, base)
        fermion = 1 - base.unit
        emb = [0, 0]
        emb[base.unit] = w.embedding[0]
        emb[fermion] = w.embedding[1]
        return ExtensionWitness(base, w.bulk, tuple(emb), name="Z(sVect)")
    if kind != "tannakian":
        detail = f"no identity extension for {base.name}"
        logger.error(detail)
        raise BaseMismatchError(detail)

    orders, coords = base_group(base)
    k = len(orders)
    full = tuple(orders) + tuple(orders)
    els = group_elements(full)

    def _add(x, y):
        return tuple((a + b) % n for a, b, n in zip(x, y, full))

    def _q(x):
        return frac_mod1(sum(Fraction(x[i] * x[k + i], orders[i])
                             for i in range(k)))

    bulk = pointed_data(els, _add, _q, [element_name(x) for x in els],
                        f"Z({base.name})")
    embedding = tuple(els.index(tuple(0 for _ in orders) + tuple(chi))
                      for chi in coords)
    return ExtensionWitness(base, bulk, embedding, name=f"Z({base.name})")


def extension_inverse(w: ExtensionWitness) -> ExtensionWitness:
    """Conjugate bulk with the same embedding."""
    return ExtensionWitness(w.base, conjugate(w.bulk), w.embedding,
                            name=f"inverse({w.name})")


def extension_times(w: ExtensionWitness, d: PreModularData) -> ExtensionWitness:
    """
    Extension of ``C x D`` from an extension of ``C`` and modular ``D``.

    The bulk is ``bulk x D`` with the base embedded through the first
    factor. ``C x D`` is recorded on the witness as ``over``, ordered by
    the labels of C and then those of D, where C is ``w.over`` or the
    embedded base.
    """
    r = d.rank
    bulk = deligne_product(w.bulk, d)
    embedding = tuple(product_index(x, d.unit, r) for x in w.embedding)
    inner = w.embedding if w.over is None else w.over
    over = tuple(product_index(x, y, r) for x in inner for y in range(r))
    return ExtensionWitness(w.base, bulk, embedding,
                            name=f"{w.name}|{d.name}", over=over)


def identify(w: ExtensionWitness, catalog: Sequence[ExtensionWitness]
             ) -> Optional[Tuple[int, Tuple[int, ...]]]:
    """
    Locate a witness in a catalog.

    Returns
    -------
    match : Tuple[int, Tuple[int, ...]] or None
        Catalog index and bulk permutation, or None if absent.
    """
    twists = sorted(w.bulk.twists)
    for i, v in enumerate(catalog):
        if v.bulk.rank != w.bulk.rank or sorted(v.bulk.twists) != twists:
            continue
        try:
            perm = extension_equivalence(w, v)
        except BaseMismatchError:
            continue
        if perm is not None:
            return i, perm
    return None


def invariant_factors_from_table(table: Sequence[Sequence[int]],
                                 identity: int) -> List[int]:
    """
    Invariant factors of a finite abelian group given by its Cayley table.

    Raises
    ------
    ClosureError
        If a row repeats an entry, naming that entry, or an element never
        returns to the identity.
    """
    n = len(table)
    for i, row in enumerate(table):
        seen = set()
        for j, x in enumerate(row):
            if x in seen or not 0 <= x < n:
                logger.error(f"Row {i} of the table is not a permutation")
                raise ClosureError(i, j)
            seen.add(x)
    orders = []
    for g in range(n):
        k, x = 1, g
        while x != identity:
            if k >= n:
                logger.error(f"Element {g} has no finite order in the table")
                raise ClosureError(g, g)
            x = table[x][g]
            k += 1
        orders.append(k)
    return invariant_factors_from_element_orders(orders)


@dataclass
class GroupTable:
    """
    Cayley table of a catalog under stacking.

    Attributes
    ----------
    table : List[List[int]]
        ``table[i][j]`` is the index of ``stack(w_i, w_j)``.
    identity : int
        Index of the identity.
    invariant_factors : List[int]
        Structure of the group.
    commutative : bool
    associative : bool
    """
    table: List[List[int]]
    identity: int
    invariant_factors: List[int]
    commutative: bool
    associative: bool
    names: List[str] = field(default_factory=list)

    @property
    def order(self) -> int:
        return len(self.table)

    def to_dict(self) -> dict:
        return {'table': self.table, 'identity': self.identity,
                'invariant_factors': self.invariant_factors,
                'commutative': self.commutative,
                'associative': self.associative, 'names': self.names}


def group_table(witnesses: Sequence[ExtensionWitness],
                check_associativity: bool = True) -> GroupTable:
    """
    Cayley table of a list of extensions closed under stacking.

    Parameters
    ----------
    witnesses : Sequence[ExtensionWitness]
        Extensions over a common base.
    check_associativity : bool, default=True
        Check associativity on every triple of the table.

    Returns
    -------
    table : GroupTable

    Raises
    ------
    ClosureError
        Naming the first pair whose stack is not in the list, or ``(-1, -1)``
        when the table has no identity.
    """
    n = len(witnesses)
    table = [[-1] * n for _ in range(n)]
    for i, j in itertools.product(range(n), repeat=2):
        match = identify(stack(witnesses[i], witnesses[j]), witnesses)
        if match is None:
            logger.error(f"Stack of entries {i} and {j} leaves the list")
            raise ClosureError(i, j)
        table[i][j] = match[0]

    identities = [e for e in range(n)
                  if all(table[e][j] == j for j in range(n))]
    if not identities:
        logger.error("Stacking table has no identity")
        raise ClosureError(-1, -1)
    identity = identities[0]
    commutative = all(table[i][j] == table[j][i]
                      for i, j in itertools.combinations(range(n), 2))
    associative = True
    if check_associativity:
        associative = all(table[table[i][j]][k] == table[i][table[j][k]]
                          for i, j, k in itertools.product(range(n), repeat=3))
    factors = invariant_factors_from_table(table, identity)
    logger.info(f"Group table of {n} extensions: {factors}")
    return GroupTable(table, identity, factors, commutative, associative,
                      [w.name for w in witnesses])


@dataclass
class TorsorReport:
    """
    Action of extensions of E on extensions of C by stacking.

    Attributes
    ----------
    action : List[List[Optional[int]]]
        ``action[i][j]`` indexes ``stack(C_i, E_j)`` in the C list, None when
        the result escapes the list.
    identity : int
        Index of the identity in the E list.
    escapes : List[Tuple[int, int]]
        Cells whose stack is not in the C list.
    free : bool
    transitive : bool
    """
    action: List[List[Optional[int]]]
    identity: int
    escapes: List[Tuple[int, int]]
    free: bool
    transitive: bool

    @property
    def passed(self) -> bool:
        return self.free and self.transitive

    def to_dict(self) -> dict:
        return {'action': self.action, 'identity': self.identity,
                'escapes': [list(x) for x in self.escapes],
                'free': self.free, 'transitive': self.transitive}


def torsor_check(ext_c: Sequence[ExtensionWitness],
                 ext_e: Sequence[ExtensionWitness],
                 strict: bool = False) -> TorsorReport:
    """
    Check that stacking is a free transitive action.

    Parameters
    ----------
    ext_c : Sequence[ExtensionWitness]
        Extensions of C, all over the base E.
    ext_e : Sequence[ExtensionWitness]
        Extensions of E forming a group under stacking.
    strict : bool, default=False
        Raise on the first escaping cell instead of recording it.

    Returns
    -------
    report : TorsorReport

    Raises
    ------
    ClosureError
        With ``strict`` set, if a stack leaves the C list, or if the E list
        has no identity.
    """
    ident = identify(extension_identity(ext_e[0].base), ext_e)
    if ident is None:
        logger.error("Extension list of the base has no identity")
        raise ClosureError(-1, -1)
    e_idx = ident[0]

    n, m = len(ext_c), len(ext_e)
    action: List[List[Optional[int]]] = [[None] * m for _ in range(n)]
    escapes = []
    for i, j in itertools.product(range(n), range(m)):
        match = identify(stack(ext_c[i], ext_e[j]), ext_c)
        if match is None:
            if strict:
                logger.error(f"Action of {j} on {i} leaves the list")
                raise ClosureError(i, j)
            escapes.append((i, j))
        else:
            action[i][j] = match[0]

    free = all(action[i][j] != i or j == e_idx
               for i, j in itertools.product(range(n), range(m)))
    transitive = not escapes and all(set(row) == set(range(n)) for row in action)
    logger.info("Torsor check", extra={'free': free, 'transitive': transitive,
                                       'escapes': len(escapes)})
    return TorsorReport(action, e_idx, escapes, free, transitive)


def symmetry_breaking_homomorphism_check(w1: ExtensionWitness,
                                         w2: ExtensionWitness,
                                         generators: Sequence[Sequence[int]]
                                         ) -> bool:
    """
    Whether breaking to a subgroup commutes with stacking on this pair.
    """
    lhs = break_symmetry(stack(w1, w2), generators)
    rhs = stack(break_symmetry(w1, generators), break_symmetry(w2, generators))
    return extensions_equivalent(lhs, rhs)
