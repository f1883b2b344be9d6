"""
MODEXT Modular Data

Fusion rings and premodular data (fusion rules, twists and the unnormalized
S-matrix) together with the basic checks and constructions on them:
Perron-Frobenius dimensions, the Verlinde formula, the modularity checks,
Gauss sums and central charge, conjugation, Deligne products and label
equivalences.

"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from modext.constants import (INTEGRAL_TOL, MAX_CENTRAL_DENOMINATOR,
                              NUMERIC_TOL)
from modext.exceptions import (AnomalousGaussSumError, IntegralityError,
                               InvalidRingError, NotModularError)
from modext.utils import frac_mod1, root_of_unity

__author__ = "Carlos del-Castillo-Negrete"
__copyright__ = "Carlos del-Castillo-Negrete"
__license__ = "MIT"

logger = logging.getLogger(__name__)

FusionRules = Mapping[Tuple[int, int, int], int]


@dataclass(frozen=True, eq=False)
class FusionRing:
    """
    Commutative fusion ring on labels ``0..rank-1``.

    Attributes
    ----------
    labels : Tuple[str, ...]
        Display names, one per label.
    unit : int
        Index of the unit label.
    dual : Tuple[int, ...]
        Dual (conjugate) of each label.
    fusion : Mapping[Tuple[int, int, int], int]
        Sparse fusion coefficients ``N_ab^c``, only non-zero entries stored.
    """
    labels: Tuple[str, ...]
    unit: int
    dual: Tuple[int, ...]
    fusion: FusionRules = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.labels)

    @cached_property
    def tensor(self) -> np.ndarray:
        """Dense ``N[a, b, c]`` array."""
        n = np.zeros((self.rank,) * 3, dtype=int)
        for (a, b, c), v in self.fusion.items():
            n[a, b, c] = v
        return n

    def fusion_matrix(self, a: int) -> np.ndarray:
        """Left multiplication matrix ``(N_a)_{bc} = N_ab^c``."""
        return self.tensor[a]

    def products(self, a: int, b: int) -> Dict[int, int]:
        """Decomposition of ``a x b`` as ``{c: N_ab^c}``."""
        row = self.tensor[a, b]
        return {int(c): int(row[c]) for c in np.nonzero(row)[0]}

    def index(self, label) -> int:
        """
        Resolve a label given by name or index.

        Raises
        ------
        KeyError
            If no such label exists.
        """
        if isinstance(label, (int, np.integer)):
            if 0 <= label < self.rank:
                return int(label)
            raise KeyError(f"label index {label} out of range")
        if label in self.labels:
            return self.labels.index(label)
        if isinstance(label, str) and label.isdigit():
            return self.index(int(label))
        raise KeyError(f"unknown label {label}")

    def validate(self, associativity: bool = True):
        """
        Check the fusion ring axioms.

        Checks unit and dual axioms, commutativity, non-negativity and
        (optionally) associativity.

        Raises
        ------
        InvalidRingError
            Naming the first axiom that fails.
        """
        r = self.rank
        n = self.tensor

        def _fail(check, detail):
            msg = f"Fusion ring check {check} failed: {detail}"
            logger.error(msg, extra={'check': check})
            raise InvalidRingError(check, detail)

        if len(self.dual) != r or not 0 <= self.unit < r:
            _fail('shape', 'unit or dual table does not match rank')
        if len(set(self.labels)) != r:
            _fail('labels', 'label names are not unique')
        for (a, b, c), v in self.fusion.items():
            if not (0 <= a < r and 0 <= b < r and 0 <= c < r):
                _fail('range', f'entry {(a, b, c)} out of range')
            if v < 0 or int(v) != v:
                _fail('integrality', f'N{(a, b, c)} = {v}')
        if not np.array_equal(n[self.unit], np.eye(r, dtype=int)):
            _fail('unit', 'unit does not act as identity')
        if not np.array_equal(n, n.transpose(1, 0, 2)):
            _fail('commutativity', 'N_ab^c != N_ba^c')
        for a in range(r):
            d = self.dual[a]
            if not 0 <= d < r or self.dual[d] != a:
                _fail('dual', f'dual of {self.labels[a]} is not an involution')
            if n[a, d, self.unit] != 1:
                _fail('dual', f'{self.labels[a]} x {self.labels[d]} '
                      'does not contain the unit exactly once')
            for b in range(r):
                if b != d and n[a, b, self.unit] != 0:
                    _fail('dual', f'{self.labels[a]} x {self.labels[b]} '
                          'contains the unit')
        if associativity:
            # (a x b) x c = a x (b x c), i.e. N_a N_b = sum_e N_ab^e N_e
            lhs = np.einsum('abe,ecd->abcd', n, n)
            rhs = np.einsum('bce,aed->abcd', n, n)
            if not np.array_equal(lhs, rhs):
                bad = np.argwhere(lhs != rhs)[0]
                _fail('associativity', f'labels {tuple(int(x) for x in bad)}')


@dataclass(frozen=True, eq=False)
class PreModularData:
    """
    Premodular data: a fusion ring with twists and unnormalized S-matrix.

    Attributes
    ----------
    ring : FusionRing
        Fusion rules.
    twists : Tuple[Fraction, ...]
        Topological spins ``r_a`` with ``theta_a = exp(2 pi i r_a)``.
    smatrix : np.ndarray
        Unnormalized complex S-matrix, indexed by labels.
    name : str
        Display name.
    """
    ring: FusionRing
    twists: Tuple[Fraction, ...]
    smatrix: np.ndarray = field(repr=False)
    name: str = ""

    @property
    def rank(self) -> int:
        return self.ring.rank

    @property
    def labels(self) -> Tuple[str, ...]:
        return self.ring.labels

    @property
    def unit(self) -> int:
        return self.ring.unit

    @property
    def dual(self) -> Tuple[int, ...]:
        return self.ring.dual

    @cached_property
    def dims(self) -> np.ndarray:
        """Quantum dimensions, the unit row of the S-matrix."""
        return self.smatrix[self.unit].real.copy()

    @cached_property
    def total_dim(self) -> float:
        """Global dimension ``D = sum_a d_a^2``."""
        return float(np.sum(self.dims ** 2))

    @cached_property
    def theta(self) -> np.ndarray:
        return np.array([root_of_unity(r) for r in self.twists])

    def index(self, label) -> int:
        return self.ring.index(label)

    def validate(self, associativity: bool = True):
        """
        Check the premodular axioms.

        Checks the ring axioms, that twists are in [0,1) with a trivial
        unit twist, that the S-matrix is symmetric with positive unit row
        and dual-compatible, and the balancing equation.

        Raises
        ------
        InvalidRingError
            Naming the first check that fails.
        """
        self.ring.validate(associativity=associativity)
        r = self.rank
        s = self.smatrix

        def _fail(check, detail):
            msg = f"Premodular check {check} failed on {self.name}: {detail}"
            logger.error(msg, extra={'check': check, 'data': self.name})
            raise InvalidRingError(check, detail)

        if s.shape != (r, r) or len(self.twists) != r:
            _fail('shape', 'S-matrix or twists do not match rank')
        if any(not 0 <= t < 1 for t in self.twists):
            _fail('twist', 'twists must lie in [0, 1)')
        if self.twists[self.unit] != 0:
            _fail('twist', 'unit twist must be 0')
        if not np.allclose(s, s.T, atol=NUMERIC_TOL):
            _fail('symmetry', 'S-matrix is not symmetric')
        if np.any(np.abs(s[self.unit].imag) > NUMERIC_TOL) or \
                np.any(self.dims <= NUMERIC_TOL):
            _fail('dimensions', 'unit row of S must be real and positive')
        dual = list(self.dual)
        if not np.allclose(s[dual], np.conj(s), atol=NUMERIC_TOL):
            _fail('dual', 'S_{a* b} != conj(S_ab)')
        residual = balancing_residual(self)
        if residual > NUMERIC_TOL * max(1.0, self.total_dim):
            _fail('balancing', f'residual {residual:.3e}')
        pf = _perron_frobenius(self.ring)
        if not np.allclose(pf, self.dims, atol=INTEGRAL_TOL):
            _fail('dimensions', 'unit row of S differs from FP dimensions')


@dataclass
class CheckFailure:
    name: str
    residual: float


@dataclass
class ModularityReport:
    """
    Outcome of the modularity checks.

    Attributes
    ----------
    failures : List[CheckFailure]
        Checks that failed with their residuals.
    residuals : Dict[str, float]
        Residual of every check that was evaluated.
    xi : complex, optional
        Normalized Gauss sum, when it is a phase.
    """
    failures: List[CheckFailure] = field(default_factory=list)
    residuals: Dict[str, float] = field(default_factory=dict)
    xi: Optional[complex] = None

    @property
    def is_modular(self) -> bool:
        return len(self.failures) == 0

    def failed(self, name: str) -> bool:
        return any(f.name == name for f in self.failures)

    def to_dict(self) -> dict:
        return {'modular': self.is_modular,
                'failures': [f.name for f in self.failures],
                'residuals': self.residuals}


def make_ring(labels: Sequence[str], unit: int, dual: Sequence[int],
              fusion: FusionRules) -> FusionRing:
    fusion = {(int(a), int(b), int(c)): int(v)
              for (a, b, c), v in fusion.items() if v != 0}
    return FusionRing(tuple(labels), int(unit), tuple(int(d) for d in dual),
                      fusion)


def _perron_frobenius(ring: FusionRing) -> np.ndarray:
    dims = []
    for a in range(ring.rank):
        ev = np.linalg.eigvals(ring.fusion_matrix(a).astype(float))
        dims.append(float(np.max(np.abs(ev))))
    return np.array(dims)


def fp_dims(ring: FusionRing) -> np.ndarray:
    """
    Perron-Frobenius dimensions of a fusion ring.

    Parameters
    ----------
    ring : FusionRing
        Ring to evaluate.

    Returns
    -------
    dims : np.ndarray
        Largest eigenvalue of each fusion matrix ``N_a``.

    Raises
    ------
    InvalidRingError
        If the ring is not associative or violates the unit/dual axioms.
    """
    ring.validate()
    return _perron_frobenius(ring)


def balancing_residual(data: PreModularData) -> float:
    """
    Largest deviation from ``S_ab = theta_a^-1 theta_b^-1 sum_c N_ab^c
    theta_c d_c``.
    """
    n = data.ring.tensor
    th = data.theta
    rhs = np.einsum('abc,c->ab', n, th * data.dims)
    rhs = rhs / np.outer(th, th)
    return float(np.max(np.abs(rhs - data.smatrix)))


def normalized_s(data: PreModularData) -> np.ndarray:
    return data.smatrix / np.sqrt(data.total_dim)


def unitarity_residual(data: PreModularData) -> float:
    s = data.smatrix
    return float(np.max(np.abs(s @ np.conj(s).T
                               - data.total_dim * np.eye(data.rank))))


def verlinde_fusion(data: PreModularData) -> Dict[Tuple[int, int, int], int]:
    """
    Fusion rules recovered from the S-matrix by the Verlinde formula.

    ``N_ab^c = sum_x s_ax s_bx conj(s_cx) / s_0x`` with ``s`` the normalized
    S-matrix.

    Parameters
    ----------
    data : PreModularData
        Data with unitary normalized S-matrix.

    Returns
    -------
    fusion : dict
        Sparse ``{(a, b, c): N_ab^c}``.

    Raises
    ------
    NotModularError
        If the normalized S-matrix is not unitary.
    IntegralityError
        If some coefficient is not a non-negative integer within tolerance.
    """
    res = unitarity_residual(data)
    if res > NUMERIC_TOL * max(1.0, data.total_dim):
        report = ModularityReport([CheckFailure('unitarity', res)],
                                  {'unitarity': res})
        logger.error(f"Verlinde formula needs a unitary S-matrix on "
                     f"{data.name}", extra={'residual': res})
        raise NotModularError(report)
    n = verlinde_tensor(data)
    rounded = np.rint(n.real)
    err = np.abs(n - rounded)
    if np.any(err > INTEGRAL_TOL) or np.any(rounded < 0):
        bad = np.argwhere((err > INTEGRAL_TOL) | (rounded < 0))[0]
        a, b, c = (int(x) for x in bad)
        logger.error(f"Non-integral Verlinde coefficient on {data.name}",
                     extra={'a': a, 'b': b, 'c': c})
        raise IntegralityError(a, b, c, complex(n[a, b, c]))
    return {(int(a), int(b), int(c)): int(rounded[a, b, c])
            for a, b, c in np.argwhere(rounded > 0)}


def verlinde_tensor(data: PreModularData) -> np.ndarray:
    """Raw complex Verlinde coefficients, no checks."""
    s = normalized_s(data)
    return np.einsum('ax,bx,cx,x->abc', s, s, np.conj(s), 1.0 / s[data.unit])


def gauss_sums(data: PreModularData) -> Tuple[complex, complex]:
    """Gauss sums ``tau_+- = sum_a theta_a^(+-1) d_a^2``."""
    d2 = data.dims ** 2
    return complex(np.sum(data.theta * d2)), complex(np.sum(np.conj(data.theta) * d2))


def normalized_gauss_sum(data: PreModularData) -> complex:
    return gauss_sums(data)[0] / np.sqrt(data.total_dim)


def central_charge(data: PreModularData) -> Tuple[Fraction, complex]:
    """
    Central charge mod 8 and normalized Gauss sum.

    Parameters
    ----------
    data : PreModularData
        Data whose normalized Gauss sum is a phase.

    Returns
    -------
    c, xi : Tuple[Fraction, complex]
        ``xi = tau_+ / sqrt(D) = exp(2 pi i c / 8)`` with c snapped to a
        rational of denominator at most 16.

    Raises
    ------
    AnomalousGaussSumError
        If ``|xi| != 1`` or c is not close to such a rational.
    """
    xi = normalized_gauss_sum(data)
    if abs(abs(xi) - 1) > NUMERIC_TOL * max(1.0, data.total_dim):
        logger.error(f"Normalized Gauss sum of {data.name} is not a phase",
                     extra={'xi': str(xi)})
        raise AnomalousGaussSumError(xi)
    c_float = (4 * np.angle(xi) / np.pi) % 8
    c = Fraction(c_float).limit_denominator(MAX_CENTRAL_DENOMINATOR)
    if abs(float(c) - c_float) > INTEGRAL_TOL:
        logger.error(f"Central charge {c_float} of {data.name} is not "
                     "a small rational", extra={'xi': str(xi)})
        raise AnomalousGaussSumError(xi)
    return c % 8, xi


def transparent_labels(data: PreModularData) -> List[int]:
    d = data.dims
    diff = np.abs(data.smatrix - np.outer(d, d))
    return [int(x) for x in np.nonzero(np.all(diff < NUMERIC_TOL, axis=1))[0]]


def is_modular(data: PreModularData) -> ModularityReport:
    """
    Run the modularity checks.

    The checks are unitarity of the normalized S-matrix, Verlinde
    integrality and agreement with the stored fusion rules, ``s^2 = C``,
    ``(conj(s) t)^3 = xi conj(s)^2`` and that only the unit is transparent.
    Never raises: every failure is recorded in the report.

    Parameters
    ----------
    data : PreModularData
        Data to check.

    Returns
    -------
    report : ModularityReport
    """
    report = ModularityReport()
    tol = NUMERIC_TOL * max(1.0, data.total_dim)
    r = data.rank

    def _record(name, residual, bound=tol):
        report.residuals[name] = float(residual)
        if residual > bound:
            report.failures.append(CheckFailure(name, float(residual)))

    unit_res = unitarity_residual(data)
    _record('unitarity', unit_res)

    if unit_res <= tol:
        try:
            fusion = verlinde_fusion(data)
            mismatch = sum(abs(fusion.get(k, 0) - v)
                           for k, v in data.ring.fusion.items())
            mismatch += sum(v for k, v in fusion.items()
                            if k not in data.ring.fusion)
            _record('verlinde', float(mismatch), 0.5)
        except IntegralityError as e:
            _record('verlinde', max(1.0, float(abs(e.value))), 0.5)

    s = normalized_s(data)
    charge = np.zeros((r, r))
    charge[np.arange(r), list(data.dual)] = 1
    _record('s_squared', np.max(np.abs(s @ s - charge)))

    xi = normalized_gauss_sum(data)
    if abs(abs(xi) - 1) <= tol:
        report.xi = complex(xi)
        sbar = np.conj(s)
        st = sbar @ np.diag(data.theta)
        _record('modular_relation',
                np.max(np.abs(st @ st @ st - xi * (sbar @ sbar))))
    else:
        _record('modular_relation', abs(abs(xi) - 1))

    transparent = transparent_labels(data)
    _record('transparency', float(len(transparent) - 1), 0.5)

    logger.info(f"Modularity of {data.name}: {report.is_modular}",
                extra={'failures': [f.name for f in report.failures]})
    return report


def require_modular(data: PreModularData) -> ModularityReport:
    """
    Raise NotModularError unless ``data`` passes every modularity check.
    """
    report = is_modular(data)
    if not report.is_modular:
        logger.error(f"{data.name} is not modular",
                     extra={'failures': [f.name for f in report.failures]})
        raise NotModularError(report)
    return report


def conjugate(data: PreModularData) -> PreModularData:
    """Same fusion rules, twists negated and S-matrix conjugated."""
    twists = tuple(frac_mod1(-t) for t in data.twists)
    return PreModularData(data.ring, twists, np.conj(data.smatrix),
                          name=f"conj({data.name})")


def product_index(i: int, j: int, rank2: int) -> int:
    """Label index of ``(i, j)`` in a Deligne product."""
    return i * rank2 + j


def deligne_product(a: PreModularData, b: PreModularData,
                    name: Optional[str] = None) -> PreModularData:
    """
    Deligne product of two premodular data.

    Labels are pairs ``(i, j)`` stored at index ``i * b.rank + j`` and named
    ``"x|y"``. Fusion and S-matrix are tensor products, twists add.

    Parameters
    ----------
    a, b : PreModularData
        Factors.
    name : str, optional
        Display name, defaults to ``"a|b"``.

    Returns
    -------
    product : PreModularData
    """
    rb = b.rank
    labels = [f"{x}|{y}" for x in a.labels for y in b.labels]
    dual = [product_index(a.dual[i], b.dual[j], rb)
            for i in range(a.rank) for j in range(rb)]
    fusion = {}
    for (i1, i2, i3), v in a.ring.fusion.items():
        for (j1, j2, j3), w in b.ring.fusion.items():
            fusion[(product_index(i1, j1, rb), product_index(i2, j2, rb),
                    product_index(i3, j3, rb))] = v * w
    ring = make_ring(labels, product_index(a.unit, b.unit, rb), dual, fusion)
    twists = tuple(frac_mod1(s + t) for s in a.twists for t in b.twists)
    smatrix = np.kron(a.smatrix, b.smatrix)
    return PreModularData(ring, twists, smatrix,
                          name=name or f"{a.name}|{b.name}")


def permute(data: PreModularData, order: Sequence[int],
            name: Optional[str] = None) -> PreModularData:
    """
    Relabel data so that new label ``k`` is old label ``order[k]``.
    """
    order = [int(x) for x in order]
    inv = {old: new for new, old in enumerate(order)}
    ring = data.ring
    fusion = {(inv[a], inv[b], inv[c]): v for (a, b, c), v in ring.fusion.items()}
    new_ring = make_ring([ring.labels[o] for o in order], inv[ring.unit],
                         [inv[ring.dual[o]] for o in order], fusion)
    twists = tuple(data.twists[o] for o in order)
    smatrix = data.smatrix[np.ix_(order, order)]
    return PreModularData(new_ring, twists, smatrix,
                          name=data.name if name is None else name)


def canonical_order(data: PreModularData) -> List[int]:
    """
    Canonical label order: unit first, then by dimension, twist and name.
    """
    def _key(x):
        return (x != data.unit, round(float(data.dims[x]), 9),
                data.twists[x], data.labels[x])
    return sorted(range(data.rank), key=_key)


def canonical_form(data: PreModularData) -> Tuple[PreModularData, List[int]]:
    """
    Data relabelled into canonical order.

    Returns
    -------
    data, order : Tuple[PreModularData, List[int]]
        Relabelled data and the order used, ``order[new] = old``.
    """
    order = canonical_order(data)
    return permute(data, order), order


def same_data(a: PreModularData, b: PreModularData) -> bool:
    """True if both carry identical labels, rules, twists and S-matrix."""
    if a is b:
        return True
    return (a.labels == b.labels and a.unit == b.unit and a.dual == b.dual
            and dict(a.ring.fusion) == dict(b.ring.fusion)
            and a.twists == b.twists
            and np.allclose(a.smatrix, b.smatrix, atol=NUMERIC_TOL))


def _fingerprints(data: PreModularData) -> List[tuple]:
    rows = np.round(np.abs(data.smatrix), 6)
    return [(round(float(data.dims[x]), 6), data.twists[x],
             tuple(sorted(rows[x].tolist())))
            for x in range(data.rank)]


def find_equivalence(a: PreModularData, b: PreModularData,
                     pinned: Optional[Mapping[int, int]] = None
                     ) -> Optional[Tuple[int, ...]]:
    """
    Search for a label bijection preserving all premodular structure.

    Backtracking over labels with fewest candidates first; candidates must
    agree in dimension, twist and the multiset of ``|S|`` row entries, and
    S entries among assigned labels are compared at every step. Fusion
    rules are compared on complete assignments.

    Parameters
    ----------
    a, b : PreModularData
        Data to compare.
    pinned : Mapping[int, int], optional
        Labels of ``a`` whose image in ``b`` is prescribed.

    Returns
    -------
    perm : Tuple[int, ...] or None
        ``perm[x]`` is the label of ``b`` matched with label ``x`` of ``a``,
        or None if no equivalence exists.

    Raises
    ------
    ValueError
        If ``pinned`` is not an injective map between valid labels.
    """
    pinned = dict(pinned or {})
    r = a.rank
    if any(not (0 <= x < r and 0 <= y < b.rank) for x, y in pinned.items()) \
            or len(set(pinned.values())) != len(pinned):
        msg = f"Ill-formed pinned map {pinned}"
        logger.error(msg)
        raise ValueError(msg)
    if b.rank != r:
        return None
    fa, fb = _fingerprints(a), _fingerprints(b)
    if sorted(fa, key=repr) != sorted(fb, key=repr):
        return None
    pinned.setdefault(a.unit, b.unit)
    if pinned[a.unit] != b.unit:
        return None

    candidates = {x: [y for y in range(r) if fb[y] == fa[x]] for x in range(r)}
    for x, y in pinned.items():
        if y not in candidates[x]:
            return None
        candidates[x] = [y]
    order = sorted(range(r), key=lambda x: (x not in pinned, len(candidates[x]), x))

    sa, sb = a.smatrix, b.smatrix
    na, nb = a.ring.tensor, b.ring.tensor
    perm = [-1] * r
    used = [False] * r
    assigned: List[int] = []

    tol = NUMERIC_TOL * max(1.0, a.total_dim)

    def _consistent(x, y):
        if not assigned:
            return abs(sa[x, x] - sb[y, y]) < tol
        xs = assigned + [x]
        ys = [perm[t] for t in assigned] + [y]
        return np.allclose(sa[x, xs], sb[y, ys], rtol=0, atol=tol)

    def _fusion_ok():
        p = np.array(perm)
        return np.array_equal(na, nb[np.ix_(p, p, p)])

    def _search(k):
        if k == r:
            return _fusion_ok()
        x = order[k]
        for y in candidates[x]:
            if used[y] or not _consistent(x, y):
                continue
            perm[x] = y
            used[y] = True
            assigned.append(x)
            if _search(k + 1):
                return True
            assigned.pop()
            used[y] = False
            perm[x] = -1
        return False

    if _search(0):
        return tuple(perm)
    return None
