"""
MODEXT Constructors

Builders for the families of data used throughout: pointed data of metric
groups, the Ising family, the symmetric bases sVect and Rep(A), the sixteen
modular extensions of sVect, twisted doubles of cyclic groups and the
exhaustive enumeration of pointed extensions of small bases.

"""

import itertools
import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from modext.constants import MAX_ENUMERATION_BASE, MAX_TWISTED_DOUBLE
from modext.exceptions import ModextError, SizeBoundError
from modext.modular_data import PreModularData, central_charge, make_ring
from modext.utils import (abelian_group_types, add_elements, element_name,
                          frac_mod1, group_elements, root_of_unity)
from modext.witness import ExtensionWitness, extensions_equivalent

__author__ = "Carlos del-Castillo-Negrete"
__copyright__ = "Carlos del-Castillo-Negrete"
__license__ = "MIT"

logger = logging.getLogger(__name__)

Element = Tuple[int, ...]


def pointed_data(elements: Sequence, add: Callable, q: Callable,
                 names: Sequence[str], name: str = "") -> PreModularData:
    """
    Pointed premodular data of an abelian group with quadratic form.

    Parameters
    ----------
    elements : Sequence
        Group elements, identity first.
    add : Callable
        Group law on elements.
    q : Callable
        Quadratic form, values in Q/Z.
    names : Sequence[str]
        Label names.
    name : str
        Display name.

    Returns
    -------
    data : PreModularData
        Labels are the elements, fusion is the group law, twists ``q`` and
        ``S_gh = exp(2 pi i b(g, h))``.
    """
    index = {g: i for i, g in enumerate(elements)}
    zero = elements[0]
    r = len(elements)
    fusion = {}
    dual = [0] * r
    for i, g in enumerate(elements):
        for j, h in enumerate(elements):
            k = index[add(g, h)]
            fusion[(i, j, k)] = 1
            if k == index[zero]:
                dual[i] = j
    twists = tuple(frac_mod1(q(g)) for g in elements)
    smatrix = np.empty((r, r), dtype=complex)
    for i, g in enumerate(elements):
        for j, h in enumerate(elements):
            b = twists[index[add(g, h)]] - twists[i] - twists[j]
            smatrix[i, j] = root_of_unity(b)
    ring = make_ring(names, 0, dual, fusion)
    return PreModularData(ring, twists, smatrix, name=name)


@dataclass(frozen=True)
class MetricGroup:
    """
    Finite abelian group ``Z_{n_1} x ... x Z_{n_k}`` with a quadratic form.

    Attributes
    ----------
    cyclic_orders : Tuple[int, ...]
        Orders ``n_i``.
    q : Mapping[Tuple[int, ...], Fraction]
        Value of the form on every element, in [0, 1).
    names : Mapping[Tuple[int, ...], str], optional
        Label names, defaulting to the element coordinates.
    """
    cyclic_orders: Tuple[int, ...]
    q: Mapping[Element, Fraction]
    names: Optional[Mapping[Element, str]] = None

    @classmethod
    def from_form(cls, orders: Sequence[int], diag: Sequence,
                  off: Optional[Mapping[Tuple[int, int], Fraction]] = None,
                  names: Optional[Mapping[Element, str]] = None):
        """
        Metric group with ``q(x) = sum_i x_i^2 q_i + sum_{i<j} x_i x_j b_ij``.

        Coordinates are taken in ``[0, n_i)``; the result is a quadratic form
        when ``n_i q_i`` is in ``Z/2`` (``Z`` for odd ``n_i``) and ``b_ij``
        has denominator dividing ``gcd(n_i, n_j)``.
        """
        orders = tuple(int(n) for n in orders)
        diag = [Fraction(x) for x in diag]
        off = {k: Fraction(v) for k, v in (off or {}).items()}
        q = {}
        for g in group_elements(orders):
            v = sum((x * x * d for x, d in zip(g, diag)), Fraction(0))
            v += sum((g[i] * g[j] * b for (i, j), b in off.items()), Fraction(0))
            q[g] = frac_mod1(v)
        return cls(orders, q, names)

    @property
    def order(self) -> int:
        return int(np.prod(self.cyclic_orders, dtype=int))

    def elements(self) -> List[Element]:
        return group_elements(self.cyclic_orders)

    def add(self, g: Element, h: Element) -> Element:
        return add_elements(g, h, self.cyclic_orders)

    def neg(self, g: Element) -> Element:
        return tuple((-a) % n for a, n in zip(g, self.cyclic_orders))

    def b(self, g: Element, h: Element) -> Fraction:
        """Associated bicharacter ``q(g+h) - q(g) - q(h)``."""
        return frac_mod1(self.q[self.add(g, h)] - self.q[g] - self.q[h])

    def name_of(self, g: Element) -> str:
        if self.names is not None and g in self.names:
            return self.names[g]
        return element_name(g)

    def validate(self):
        """
        Check ``q(-g) = q(g)``, ``q(0) = 0`` and biadditivity of ``b``.

        Raises
        ------
        ModextError
            Naming the first violated identity.
        """
        els = self.elements()
        zero = els[0]
        if self.q[zero] != 0:
            msg = "Quadratic form must vanish at 0"
            logger.error(msg)
            raise ModextError(msg)
        for g in els:
            if self.q[self.neg(g)] != self.q[g]:
                msg = f"q(-g) != q(g) at {g}"
                logger.error(msg)
                raise ModextError(msg)
        for g, h, k in itertools.product(els, repeat=3):
            if self.b(self.add(g, h), k) != frac_mod1(self.b(g, k) + self.b(h, k)):
                msg = f"b is not biadditive at {(g, h, k)}"
                logger.error(msg)
                raise ModextError(msg)

    def is_nondegenerate(self) -> bool:
        els = self.elements()
        return all(any(self.b(g, h) != 0 for h in els) for g in els[1:])


def pointed_mtc(m: MetricGroup, name: str = "") -> PreModularData:
    """
    Pointed data of a metric group.

    Parameters
    ----------
    m : MetricGroup
        Group with quadratic form.
    name : str, optional
        Display name.

    Returns
    -------
    data : PreModularData
        Modular exactly when the form is non-degenerate.
    """
    els = m.elements()
    return pointed_data(els, m.add, lambda g: m.q[g],
                        [m.name_of(g) for g in els],
                        name or f"pointed{m.cyclic_orders}")


def semion() -> PreModularData:
    return pointed_mtc(MetricGroup.from_form([2], [Fraction(1, 4)]), "semion")


def toric_code() -> PreModularData:
    """Toric code with labels ``1, e, m, psi``."""
    names = {(0, 0): '1', (1, 0): 'e', (0, 1): 'm', (1, 1): 'psi'}
    m = MetricGroup.from_form([2, 2], [0, 0], {(0, 1): Fraction(1, 2)}, names)
    return pointed_mtc(m, "toric_code")


def ising_twist(s: Fraction) -> Fraction:
    """
    Twist of the non-abelian label of ``I_zeta``, ``zeta = exp(2 pi i s)``.

    Raises
    ------
    ModextError
        If ``s`` is not ``k/16`` with ``k`` odd.
    """
    s = frac_mod1(s)
    if s.denominator != 16:
        msg = f"Ising parameter {s} must be an odd multiple of 1/16"
        logger.error(msg)
        raise ModextError(msg)
    # unitary sign: epsilon (zeta^2 + zeta^-2) = +sqrt(2)
    epsilon = 1 if np.cos(4 * np.pi * float(s)) > 0 else -1
    return frac_mod1(-s + (0 if epsilon == 1 else Fraction(1, 2)))


def ising_mtc(s) -> PreModularData:
    """
    Ising data ``I_zeta`` with labels ``1, u, x``.

    Parameters
    ----------
    s : Fraction or str
        ``zeta = exp(2 pi i s)`` with ``s = k/16``, ``k`` odd.

    Returns
    -------
    data : PreModularData
        ``x x x = 1 + u``, twists ``(0, 1/2, r_x)`` and
        ``S = [[1, 1, r2], [1, 1, -r2], [r2, -r2, 0]]``.
    """
    s = Fraction(s)
    r_x = ising_twist(s)
    fusion = {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1, (0, 2, 2): 1,
              (2, 0, 2): 1, (1, 1, 0): 1, (1, 2, 2): 1, (2, 1, 2): 1,
              (2, 2, 0): 1, (2, 2, 1): 1}
    r2 = np.sqrt(2)
    smatrix = np.array([[1, 1, r2], [1, 1, -r2], [r2, -r2, 0]], dtype=complex)
    ring = make_ring(['1', 'u', 'x'], 0, [0, 1, 2], fusion)
    return PreModularData(ring, (Fraction(0), Fraction(1, 2), r_x), smatrix,
                          name=f"ising({frac_mod1(s)})")


def svect_data() -> PreModularData:
    """Super vector spaces: labels ``1, f``, fermion twist 1/2."""
    fusion = {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1, (1, 1, 0): 1}
    ring = make_ring(['1', 'f'], 0, [0, 1], fusion)
    return PreModularData(ring, (Fraction(0), Fraction(1, 2)),
                          np.ones((2, 2), dtype=complex), name="sVect")


def rep_abelian(orders: Sequence[int]) -> PreModularData:
    """Rep(A) for ``A = Z_{n_1} x ...``: pointed, all bosons, ``S = 1``."""
    orders = tuple(int(n) for n in orders)
    els = group_elements(orders)
    label = "x".join(f"Z{n}" for n in orders) or "1"
    return pointed_data(els, lambda g, h: add_elements(g, h, orders),
                        lambda g: Fraction(0), [element_name(g) for g in els],
                        f"Rep({label})")


def kappa_metric_group(j: int) -> MetricGroup:
    """
    Metric group ``(G_kappa, q_kappa)`` for ``kappa = exp(2 pi i j/8)``.

    ``Z_2 x Z_2`` with ``u = (1,0)``, ``v = (0,1)`` for even ``j`` and
    ``Z_4`` with ``v = 1``, ``u = 2`` for odd ``j``; ``q(u) = 1/2`` and
    ``q(v) = q(u+v) = j/8``.
    """
    j = j % 8
    if j % 2 == 0:
        names = {(0, 0): '0', (1, 0): 'u', (0, 1): 'v', (1, 1): 'u+v'}
        return MetricGroup.from_form([2, 2], [Fraction(1, 2), Fraction(j, 8)],
                                     {(0, 1): Fraction(1, 2)}, names)
    names = {(0,): '0', (1,): 'v', (2,): 'u', (3,): 'u+v'}
    return MetricGroup.from_form([4], [Fraction(j, 8)], names=names)


def kappa_extension(j: int, base: Optional[PreModularData] = None
                    ) -> ExtensionWitness:
    """Pointed extension of sVect with ``kappa = exp(2 pi i j/8)``."""
    base = base or svect_data()
    m = kappa_metric_group(j)
    bulk = pointed_mtc(m, f"C(G_kappa,q_kappa) kappa={j % 8}/8")
    u = bulk.labels.index('u')
    return ExtensionWitness(base, bulk, (bulk.unit, u), name=bulk.name)


def ising_extension(s, base: Optional[PreModularData] = None
                    ) -> ExtensionWitness:
    """Ising extension of sVect, fermion embedded as ``u``."""
    base = base or svect_data()
    bulk = ising_mtc(s)
    return ExtensionWitness(base, bulk, (0, 1), name=bulk.name)


def mext_svect_catalog() -> List[ExtensionWitness]:
    """
    The sixteen modular extensions of sVect.

    Eight Ising extensions and eight pointed ones, ordered so that entry
    ``k`` has central charge ``k/2``; entry 0 is the identity.

    Returns
    -------
    catalog : List[ExtensionWitness]
    """
    base = svect_data()
    entries = [kappa_extension(j, base) for j in range(8)]
    entries += [ising_extension(Fraction(k, 16), base) for k in range(1, 16, 2)]
    keyed = []
    for w in entries:
        c, _ = central_charge(w.bulk)
        keyed.append((c, w))
    keyed.sort(key=lambda x: x[0])
    logger.info("Built sVect catalog",
                extra={'central_charges': [str(c) for c, _ in keyed]})
    return [w for _, w in keyed]


def twisted_double_cyclic(n: int, k: int, verify: bool = False
                          ) -> ExtensionWitness:
    """
    Twisted double of ``Z_n`` as an extension of Rep(Z_n).

    Labels are flux-charge pairs ``(a, m)`` named ``"a.m"`` with twist
    ``a m / n + k a^2 / n^2``; fusion adds fluxes and charges, carrying
    ``2k`` units of charge whenever the fluxes wrap around. The base
    Rep(Z_n) is embedded as the pure charges ``(0, m)``.

    Parameters
    ----------
    n : int
        Order of the cyclic group, ``1 <= n <= 6``.
    k : int
        Cocycle class, ``0 <= k < n``.
    verify : bool, default=False
        Also check the result against ``enumerate_pointed_extensions``.

    Returns
    -------
    witness : ExtensionWitness

    Raises
    ------
    SizeBoundError
        If ``n`` is out of range.
    ValueError
        If ``k`` is out of range.
    """
    if not 1 <= n <= MAX_TWISTED_DOUBLE:
        logger.error(f"Twisted double order {n} out of range")
        raise SizeBoundError('n', n, MAX_TWISTED_DOUBLE)
    if not 0 <= k < n:
        msg = f"Cocycle class {k} must lie in [0, {n})"
        logger.error(msg)
        raise ValueError(msg)

    els = [(a, m) for a in range(n) for m in range(n)]

    def _add(x, y):
        s = x[0] + y[0]
        carry = 1 if s >= n else 0
        return (s % n, (x[1] + y[1] + 2 * k * carry) % n)

    def _q(x):
        a, m = x
        return Fraction(a * m, n) + Fraction(k * a * a, n * n)

    bulk = pointed_data(els, _add, _q, [element_name(x) for x in els],
                        f"D^{k}(Z{n})")
    base = rep_abelian([n])
    embedding = tuple(els.index((0, m)) for m in range(n))
    w = ExtensionWitness(base, bulk, embedding, name=f"twisted_double({n},{k})")

    if verify:
        found = [v for v in enumerate_pointed_extensions([n])
                 if extensions_equivalent(w, v)]
        if len(found) != 1:
            msg = f"Twisted double ({n},{k}) matched {len(found)} enumerated classes"
            logger.error(msg)
            raise ModextError(msg)
    return w


def _form_grid(orders: Tuple[int, ...], scale: int):
    """All quadratic forms on ``orders`` as integers over ``scale``."""
    diag_choices = []
    for n in orders:
        step = 2 * n if n % 2 == 0 else n
        diag_choices.append([scale * t // step for t in range(step)])
    pairs = list(itertools.combinations(range(len(orders)), 2))
    off_choices = []
    for i, j in pairs:
        g = gcd(orders[i], orders[j])
        off_choices.append([scale * t // g for t in range(g)])
    for diag in itertools.product(*diag_choices):
        for off in itertools.product(*off_choices):
            yield diag, dict(zip(pairs, off))


def enumerate_pointed_extensions(orders: Sequence[int],
                                 fermionic: bool = False
                                 ) -> List[ExtensionWitness]:
    """
    Every pointed modular extension of a small symmetric base.

    Runs over abelian groups ``M`` of order ``|A|^2``, every quadratic form
    on ``M`` and every embedding of the base whose image has the base twists
    and trivial mutual braiding; such an image is its own orthogonal
    complement once the form is non-degenerate. Results are deduplicated by
    ``extensions_equivalent``.

    Parameters
    ----------
    orders : Sequence[int]
        Cyclic orders of A, ``|A| <= 4``. Ignored when ``fermionic``.
    fermionic : bool, default=False
        Enumerate extensions of sVect instead of Rep(A).

    Returns
    -------
    classes : List[ExtensionWitness]

    Raises
    ------
    SizeBoundError
        If ``|A|`` exceeds the enumeration bound.
    """
    if fermionic:
        base, base_orders = svect_data(), (2,)
        base_q = [0, 1]
    else:
        base_orders = tuple(int(n) for n in orders)
        base = rep_abelian(base_orders)
        base_q = [0] * base.rank
    size = int(np.prod(base_orders, dtype=int))
    if size > MAX_ENUMERATION_BASE:
        logger.error(f"Enumeration base of order {size} too large")
        raise SizeBoundError('|A|', size, MAX_ENUMERATION_BASE)

    # twists are handled as integers over a common denominator
    scale = 2 * size * size * 2
    base_q = [scale * t // 2 for t in base_q]
    base_els = group_elements(base_orders)
    classes: List[ExtensionWitness] = []
    buckets: Dict[tuple, List[ExtensionWitness]] = {}

    for m_orders in abelian_group_types(size * size):
        els = group_elements(m_orders)
        index = {g: i for i, g in enumerate(els)}
        coords = np.array(els, dtype=int).reshape(len(els), len(m_orders))
        add = np.array([[index[add_elements(g, h, m_orders)] for h in els]
                        for g in els], dtype=int)
        # candidate generator images: elements of order dividing n_i
        order_ok = [[i for i, g in enumerate(els)
                     if all((n * x) % mo == 0 for x, mo in zip(g, m_orders))]
                    for n in base_orders]

        for diag, off in _form_grid(m_orders, scale):
            q = (coords ** 2) @ np.array(diag, dtype=int)
            for (i, j), v in off.items():
                q = q + coords[:, i] * coords[:, j] * v
            q = q % scale
            b = (q[add] - q[:, None] - q[None, :]) % scale
            if np.any(np.all(b[1:] == 0, axis=1)):
                continue
            embeddings = _lagrangian_embeddings(base_els, base_orders, base_q,
                                                order_ok, add, q, b)
            if not embeddings:
                continue
            m = MetricGroup(tuple(m_orders),
                            {g: Fraction(int(q[i]), scale)
                             for i, g in enumerate(els)})
            bulk = pointed_mtc(m)
            for emb in embeddings:
                w = ExtensionWitness(base, bulk, emb)
                key = (tuple(m_orders), tuple(sorted(bulk.twists)))
                bucket = buckets.setdefault(key, [])
                if any(extensions_equivalent(w, v, tuple(range(base.rank)))
                       for v in bucket):
                    continue
                bucket.append(w)
                classes.append(w)

    classes = [replace(w, name=f"{base.name} extension {i}")
               for i, w in enumerate(classes)]
    logger.info(f"Enumerated {len(classes)} pointed extensions of {base.name}")
    return classes


def _lagrangian_embeddings(base_els, base_orders, base_q, order_ok, add, q, b):
    found = []
    for gens in itertools.product(*order_ok):
        image = []
        for x in base_els:
            t = 0
            for coeff, g in zip(x, gens):
                for _ in range(coeff):
                    t = add[t, g]
            image.append(t)
        if len(set(image)) != len(image):
            continue
        if any(q[t] != bq for t, bq in zip(image, base_q)):
            continue
        if np.any(b[np.ix_(image, image)] != 0):
            continue
        found.append(tuple(image))
    return found
