"""
MODEXT Extension Witnesses

A modular extension is recorded as a witness: a symmetric base, a modular
bulk and an embedding of base labels into bulk labels. This module holds
the witness type, its validation and equivalence of witnesses.

"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, List, Optional, Tuple

import numpy as np

from modext.constants import INTEGRAL_TOL, NUMERIC_TOL
from modext.exceptions import BaseMismatchError
from modext.modular_data import (CheckFailure, PreModularData,
                                 find_equivalence, is_modular, same_data)
from modext.symmetric_center import (centralizer, sub_dimension,
                                     transparent_objects)

__author__ = "Carlos del-Castillo-Negrete"
__copyright__ = "Carlos del-Castillo-Negrete"
__license__ = "MIT"

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ExtensionWitness:
    """
    Modular extension of a symmetric base.

    Attributes
    ----------
    base : PreModularData
        Symmetric data, every label transparent.
    bulk : PreModularData
        Modular data containing the base.
    embedding : Tuple[int, ...]
        ``embedding[e]`` is the bulk label of base label ``e``.
    name : str
        Display name.
    over : Tuple[int, ...], optional
        Bulk labels of a larger category C containing the base, in a fixed
        order of the simples of C, when the witness is an extension of C.
        The centralizer of the embedded base must be exactly this set.
    """
    base: PreModularData
    bulk: PreModularData
    embedding: Tuple[int, ...]
    name: str = ""
    over: Optional[Tuple[int, ...]] = field(default=None, repr=False)

    @property
    def image(self) -> FrozenSet[int]:
        return frozenset(self.embedding)

    @cached_property
    def centralizer(self) -> FrozenSet[int]:
        """Labels of the bulk centralizing the embedded base."""
        return centralizer(self.bulk, self.image)

    def embedded(self, label) -> int:
        return self.embedding[self.base.index(label)]


@dataclass
class ExtensionReport:
    """
    Outcome of ``validate_extension``.

    Attributes
    ----------
    failures : List[CheckFailure]
        Checks that failed.
    residuals : Dict[str, float]
        Residual of every check.
    """
    failures: List[CheckFailure] = field(default_factory=list)
    residuals: Dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def failed(self, name: str) -> bool:
        return any(f.name == name for f in self.failures)

    def to_dict(self) -> dict:
        return {'passed': self.passed,
                'failures': [f.name for f in self.failures],
                'residuals': self.residuals}


def validate_extension(w: ExtensionWitness) -> ExtensionReport:
    """
    Check every witness invariant.

    The embedding must be an injective, unit preserving map that preserves
    fusion, duals, twists and S entries; the base must be symmetric and the
    bulk modular; dimensions satisfy ``D_bulk = D_C * D_base`` where ``C``
    is the centralizer of the image, which must equal ``w.over`` when set.
    Never raises.

    Parameters
    ----------
    w : ExtensionWitness
        Witness to check.

    Returns
    -------
    report : ExtensionReport
    """
    report = ExtensionReport()
    base, bulk, emb = w.base, w.bulk, list(w.embedding)

    def _record(name, residual, bound=NUMERIC_TOL):
        report.residuals[name] = float(residual)
        if residual > bound:
            report.failures.append(CheckFailure(name, float(residual)))

    shape_ok = (len(emb) == base.rank and
                all(0 <= x < bulk.rank for x in emb) and
                len(set(emb)) == len(emb))
    _record('embedding', 0.0 if shape_ok else 1.0)
    if not shape_ok:
        logger.warning(f"Embedding of {w.name} is not injective into the bulk")
        return report

    _record('unit', 0.0 if emb[base.unit] == bulk.unit else 1.0)
    _record('base_symmetric',
            float(base.rank - len(transparent_objects(base))), 0.5)

    dual_bad = sum(emb[base.dual[e]] != bulk.dual[emb[e]]
                   for e in range(base.rank))
    _record('duals', float(dual_bad), 0.5)

    image = set(emb)
    fusion_bad = 0
    for a in range(base.rank):
        for b in range(base.rank):
            want = {emb[c]: v for c, v in base.ring.products(a, b).items()}
            got = bulk.ring.products(emb[a], emb[b])
            if want != got or not set(got) <= image:
                fusion_bad += 1
    _record('fusion', float(fusion_bad), 0.5)

    twist_bad = sum(base.twists[e] != bulk.twists[emb[e]]
                    for e in range(base.rank))
    _record('twists', float(twist_bad), 0.5)
    _record('smatrix', float(np.max(np.abs(
        base.smatrix - bulk.smatrix[np.ix_(emb, emb)]))))

    modular = is_modular(bulk)
    _record('bulk_modular', float(len(modular.failures)), 0.5)

    cent = w.centralizer
    if w.over is not None:
        _record('centralizer', float(len(cent ^ set(w.over))), 0.5)
    lhs = bulk.total_dim
    rhs = sub_dimension(bulk, cent) * base.total_dim
    _record('dimension', abs(lhs - rhs) / lhs, INTEGRAL_TOL)

    logger.info(f"Validated extension {w.name}: {report.passed}",
                extra={'failures': [f.name for f in report.failures]})
    return report


def base_matching(base1: PreModularData,
                  base2: PreModularData) -> Tuple[int, ...]:
    """
    Bijection between equivalent bases.

    Identical data is matched by the identity, anything else by
    ``find_equivalence``.

    Raises
    ------
    BaseMismatchError
        If the bases are not equivalent.
    """
    if same_data(base1, base2):
        return tuple(range(base1.rank))
    sigma = find_equivalence(base1, base2)
    if sigma is None:
        detail = f"{base1.name} (rank {base1.rank}) vs {base2.name} " \
                 f"(rank {base2.rank})"
        logger.error(f"Bases are not equivalent: {detail}")
        raise BaseMismatchError(detail)
    return sigma


def extension_equivalence(w1: ExtensionWitness, w2: ExtensionWitness,
                          sigma: Optional[Tuple[int, ...]] = None
                          ) -> Optional[Tuple[int, ...]]:
    """
    Bulk relabelling realizing an equivalence of witnesses, or None.

    The permutation is pinned on the embedded base: base label ``e`` of
    ``w1`` must go to ``w2``'s image of ``sigma(e)``. When both witnesses
    are extensions of a larger category the labels of ``over`` are pinned
    position by position as well.
    """
    if sigma is None:
        sigma = base_matching(w1.base, w2.base)
    if w1.bulk.rank != w2.bulk.rank:
        return None
    pinned = {w1.embedding[e]: w2.embedding[sigma[e]]
              for e in range(w1.base.rank)}
    if w1.over is not None and w2.over is not None:
        if len(w1.over) != len(w2.over):
            return None
        for x, y in zip(w1.over, w2.over):
            if pinned.setdefault(x, y) != y:
                return None
        if len(set(pinned.values())) != len(pinned):
            return None
    return find_equivalence(w1.bulk, w2.bulk, pinned)


def extensions_equivalent(w1: ExtensionWitness, w2: ExtensionWitness,
                          sigma: Optional[Tuple[int, ...]] = None) -> bool:
    """
    Whether two witnesses are equivalent as modular extensions.

    Parameters
    ----------
    w1, w2 : ExtensionWitness
        Witnesses over equivalent bases.
    sigma : Tuple[int, ...], optional
        Base matching, computed with ``base_matching`` when omitted.

    Returns
    -------
    equivalent : bool

    Raises
    ------
    BaseMismatchError
        If the bases are not equivalent.
    """
    return extension_equivalence(w1, w2, sigma) is not None
