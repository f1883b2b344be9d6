"""
MODEXT Symmetric Center

Transparent labels, centralizers and the classification of symmetric
(fully transparent) subcategories as Rep(G) or sRep(G).

"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Optional, Tuple

import numpy as np

from modext.constants import INTEGRAL_TOL, NUMERIC_TOL
from modext.exceptions import InconsistentDataError
from modext.modular_data import PreModularData, canonical_order

__author__ = "Carlos del-Castillo-Negrete"
__copyright__ = "Carlos del-Castillo-Negrete"
__license__ = "MIT"

logger = logging.getLogger(__name__)


def centralizer(data: PreModularData, labels: Iterable[int]) -> FrozenSet[int]:
    """
    Labels with trivial monodromy against every label in ``labels``.

    ``x`` centralizes ``y`` when ``|S_xy - d_x d_y| < tol``.

    Parameters
    ----------
    data : PreModularData
        Host data.
    labels : Iterable[int]
        Subset to centralize.

    Returns
    -------
    cent : FrozenSet[int]
    """
    labels = sorted(set(labels))
    if not labels:
        return frozenset(range(data.rank))
    d = data.dims
    diff = np.abs(data.smatrix[:, labels] - np.outer(d, d[labels]))
    return frozenset(int(x) for x in np.nonzero(np.all(diff < NUMERIC_TOL,
                                                        axis=1))[0])


def transparent_objects(data: PreModularData) -> FrozenSet[int]:
    """The Muger center: labels centralizing every label."""
    return centralizer(data, range(data.rank))


def fusion_closure(data: PreModularData, labels: Iterable[int]) -> FrozenSet[int]:
    """
    Smallest set containing ``labels`` and the unit closed under fusion and
    duals.
    """
    closed = set(labels) | {data.unit}
    closed |= {data.dual[x] for x in closed}
    frontier = list(closed)
    while frontier:
        new = set()
        for a in frontier:
            for b in list(closed):
                for c in data.ring.products(a, b):
                    if c not in closed:
                        new.add(c)
        closed |= new
        frontier = list(new)
    return frozenset(closed)


def sub_dimension(data: PreModularData, labels: Iterable[int]) -> float:
    d = data.dims
    return float(sum(d[x] ** 2 for x in labels))


def dimension_identity_residual(data: PreModularData,
                                labels: Iterable[int]) -> float:
    """
    Relative residual of ``D_A * D_{A'} = D * D_{A cap Z}`` where ``A'`` is
    the centralizer and ``Z`` the Muger center.
    """
    labels = frozenset(labels)
    cent = centralizer(data, labels)
    center = transparent_objects(data)
    lhs = sub_dimension(data, labels) * sub_dimension(data, cent)
    rhs = data.total_dim * sub_dimension(data, labels & center)
    return abs(lhs - rhs) / max(lhs, rhs)


@dataclass
class SymmetricClassification:
    """
    Type of a symmetric set of labels.

    Attributes
    ----------
    kind : str
        ``"trivial"``, ``"tannakian"`` or ``"super_tannakian"``.
    group_order : int
        Order of the symmetry group, ``sum d_a^2``.
    fermion : int, optional
        Canonical transparent fermion for ``"super_tannakian"``.
    group_table : Dict[Tuple[int, int], int], optional
        Fusion table when every label is invertible.
    """
    kind: str
    group_order: int
    fermion: Optional[int] = None
    group_table: Optional[Dict[Tuple[int, int], int]] = None

    def to_dict(self, data: PreModularData = None) -> dict:
        name = (lambda x: data.labels[x]) if data is not None else (lambda x: x)
        res = {'kind': self.kind, 'group_order': self.group_order,
               'fermion': None if self.fermion is None else name(self.fermion)}
        if self.group_table is not None:
            res['group_table'] = {f"{name(a)}*{name(b)}": name(c)
                                  for (a, b), c in self.group_table.items()}
        return res


def classify_symmetric(data: PreModularData,
                       labels: Optional[Iterable[int]] = None
                       ) -> SymmetricClassification:
    """
    Classify a fully transparent set of labels.

    Parameters
    ----------
    data : PreModularData
        Host data.
    labels : Iterable[int], optional
        Symmetric labels, defaults to the Muger center.

    Returns
    -------
    classification : SymmetricClassification

    Raises
    ------
    InconsistentDataError
        If a transparent label has twist other than 0 or 1/2.
    """
    labels = sorted(transparent_objects(data) if labels is None else set(labels))
    fermions = []
    for x in labels:
        t = data.twists[x]
        if t.denominator > 2:
            msg = (f"Transparent label {data.labels[x]} of {data.name} has "
                   f"twist {t}")
            logger.error(msg, extra={'label': data.labels[x], 'twist': str(t)})
            raise InconsistentDataError(data.labels[x], t)
        if t.denominator == 2:
            fermions.append(x)

    dim = sub_dimension(data, labels)
    order = int(round(dim))
    if abs(order - dim) > INTEGRAL_TOL:
        logger.warning(f"Symmetric dimension {dim} of {data.name} is not "
                       "an integer")

    table = None
    if all(abs(data.dims[x] - 1) < NUMERIC_TOL for x in labels):
        table = {}
        for a in labels:
            for b in labels:
                (c,) = data.ring.products(a, b).keys()
                table[(a, b)] = c

    if labels == [data.unit]:
        return SymmetricClassification("trivial", 1, None, table)
    if fermions:
        rank_key = {x: k for k, x in enumerate(canonical_order(data))}
        fermion = min(fermions, key=lambda x: rank_key[x])
        return SymmetricClassification("super_tannakian", order, fermion, table)
    return SymmetricClassification("tannakian", order, None, table)
