"""
MODEXT Condensation

Condensation of a group of invertible bosons: local labels, orbits under
fusion with the bosons, fixed-point resolution and the condensed modular
data. Symmetry breaking of extensions of Rep(A) is built on top of it.

"""

import itertools
import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm, prod
from typing import FrozenSet, Iterable, List, Sequence, Tuple

import numpy as np

from modext.constants import (INTEGRAL_TOL, MAX_SEARCH_CANDIDATES,
                              NUMERIC_TOL, PHASE_GRID_ORDER)
from modext.constructors import rep_abelian
from modext.exceptions import (BaseMismatchError, InvalidRingError, ModextError,
                               NotCondensableError,
                               UnderdeterminedCondensationError)
from modext.modular_data import (PreModularData, balancing_residual,
                                 canonical_form, find_equivalence, is_modular,
                                 make_ring, require_modular,
                                 unitarity_residual, verlinde_tensor)
from modext.utils import (frac_mod1, group_elements, parse_int_list,
                          subgroup_basis)
from modext.witness import ExtensionWitness, validate_extension

__author__ = "Carlos del-Castillo-Negrete"
__copyright__ = "Carlos del-Castillo-Negrete"
__license__ = "MIT"

logger = logging.getLogger(__name__)


def is_invertible(data: PreModularData, a: int) -> bool:
    return abs(data.dims[a] - 1) < NUMERIC_TOL


def product_label(data: PreModularData, a: int, x: int) -> int:
    """The unique fusion product of an invertible ``a`` with ``x``."""
    (c,) = data.ring.products(a, x).keys()
    return c


def monodromy_phase(data: PreModularData, a: int, x: int) -> Fraction:
    """
    Monodromy of an invertible label around ``x``.

    Parameters
    ----------
    data : PreModularData
        Host data.
    a : int
        Invertible label.
    x : int
        Any label.

    Returns
    -------
    phase : Fraction
        ``r_{a x} - r_a - r_x mod 1``.

    Raises
    ------
    NotCondensableError
        If ``a`` is not invertible.
    """
    if not is_invertible(data, a):
        logger.error(f"Monodromy phase needs an invertible label, got "
                     f"{data.labels[a]}")
        raise NotCondensableError('not invertible', [data.labels[a]])
    c = product_label(data, a, x)
    return frac_mod1(data.twists[c] - data.twists[a] - data.twists[x])


@dataclass(frozen=True, eq=False)
class BosonGroup:
    """
    Group of invertible bosons with trivial mutual braiding.

    Attributes
    ----------
    host : PreModularData
        Data containing the bosons.
    members : FrozenSet[int]
        Labels of the group, unit included.
    """
    host: PreModularData
    members: FrozenSet[int]

    @classmethod
    def from_labels(cls, host: PreModularData, labels: Iterable):
        """
        Boson group from label names or indices; the unit is added.

        Raises
        ------
        NotCondensableError
            If a label is unknown or the group invariants fail.
        """
        members = {host.unit}
        for x in labels:
            try:
                members.add(host.index(x))
            except KeyError:
                logger.error(f"Unknown boson label {x} in {host.name}")
                raise NotCondensableError('unknown label', [x])
        group = cls(host, frozenset(members))
        group.validate()
        return group

    @property
    def order(self) -> int:
        return len(self.members)

    def validate(self):
        """
        Raises
        ------
        NotCondensableError
            Naming the first violated condition and the offending labels.
        """
        host = self.host
        names = host.labels

        def _fail(reason, bad):
            logger.error(f"Boson group on {host.name}: {reason}",
                         extra={'labels': [names[x] for x in bad]})
            raise NotCondensableError(reason, [names[x] for x in bad])

        if host.unit not in self.members:
            _fail('missing unit', [host.unit])
        bad = [x for x in self.members if not is_invertible(host, x)]
        if bad:
            _fail('not invertible', bad)
        bad = [x for x in self.members if host.twists[x] != 0]
        if bad:
            _fail('not a boson', bad)
        for a, b in itertools.product(self.members, repeat=2):
            if product_label(host, a, b) not in self.members:
                _fail('not closed under fusion', [a, b])
        for a, b in itertools.combinations(sorted(self.members), 2):
            if monodromy_phase(host, a, b) != 0:
                _fail('nontrivial mutual braiding', [a, b])


@dataclass(frozen=True, eq=False)
class CondensationResult:
    """
    Condensed data with its relation to the host.

    Attributes
    ----------
    host : PreModularData
        Data that was condensed.
    bosons : BosonGroup
        Condensed group.
    condensed : PreModularData
        Local modules of the condensed algebra.
    lift : Tuple[Tuple[Tuple[int, ...], int], ...]
        For each condensed label the host orbit it comes from and the split
        index, ``0`` for unsplit orbits and ``+1``/``-1`` for the two pieces
        of a fixed point.
    """
    host: PreModularData
    bosons: BosonGroup
    condensed: PreModularData
    lift: Tuple[Tuple[Tuple[int, ...], int], ...]

    @property
    def boson_count(self) -> int:
        return self.bosons.order

    def project(self, x: int) -> int:
        """
        Condensed label of a local, unsplit host label.

        Raises
        ------
        KeyError
            If ``x`` is not local or lies on a fixed point.
        """
        for p, (orbit, piece) in enumerate(self.lift):
            if x in orbit:
                if piece != 0:
                    raise KeyError(f"host label {x} splits")
                return p
        raise KeyError(f"host label {x} is not local")


def _orbits(data: PreModularData, bosons: Sequence[int]):
    local = [x for x in range(data.rank)
             if all(monodromy_phase(data, b, x) == 0 for b in bosons)]
    seen = set()
    orbits = []
    for x in local:
        if x in seen:
            continue
        orbit = tuple(sorted({product_label(data, b, x) for b in bosons}))
        seen.update(orbit)
        stab = len(bosons) // len(orbit)
        orbits.append((orbit, stab))
    orbits.sort(key=lambda o: (data.unit not in o[0], o[0][0]))
    return orbits


def _bare_ring(labels):
    r = len(labels)
    return make_ring(labels, 0, list(range(r)), {})


def _assemble(labels, twists, smatrix, name):
    """
    Condensed data from an S-matrix, fusion by Verlinde, or None when the
    S-matrix is rejected.
    """
    bare = PreModularData(_bare_ring(labels), twists, smatrix, name)
    if unitarity_residual(bare) > NUMERIC_TOL * max(1.0, bare.total_dim):
        return None
    n = verlinde_tensor(bare)
    rounded = np.rint(n.real)
    if np.any(np.abs(n - rounded) > INTEGRAL_TOL) or np.any(rounded < 0):
        return None
    fusion = {(int(a), int(b), int(c)): int(rounded[a, b, c])
              for a, b, c in np.argwhere(rounded > 0)}
    r = len(labels)
    dual = []
    for a in range(r):
        partners = [c for c in range(r) if fusion.get((a, c, 0), 0) == 1]
        if len(partners) != 1:
            return None
        dual.append(partners[0])
    data = PreModularData(make_ring(labels, 0, dual, fusion), twists,
                          smatrix, name)
    try:
        data.ring.validate(associativity=r <= 32)
    except InvalidRingError:
        return None
    if balancing_residual(data) > NUMERIC_TOL * max(1.0, data.total_dim):
        return None
    if not is_modular(data).is_modular:
        return None
    return data


def _fixed_point_candidates(data, orbits, local_inv, d_cond):
    """
    Candidate ``U = 2 Y / sqrt(D')`` matrices on the fixed orbits.

    ``U`` is symmetric unitary and every invertible local label ``c``
    moves its rows: ``U[pi_c(a), e] = +-lambda_c(e) U[a, e]``. Rows are
    transported from one representative per transport class, so only the
    representative block and one sign per transported row are free.
    """
    fixed = [i for i, (_, stab) in enumerate(orbits) if stab == 2]
    reps = [orbits[i][0][0] for i in fixed]
    pos = {i: k for k, i in enumerate(fixed)}
    n_fixed = len(fixed)
    orbit_of = {x: i for i, (orbit, _) in enumerate(orbits) for x in orbit}

    def _lam(c, k):
        return data.smatrix[c, reps[k]] / data.dims[reps[k]]

    root = [-1] * n_fixed
    transport = [data.unit] * n_fixed
    roots = []
    for k in range(n_fixed):
        if root[k] >= 0:
            continue
        root[k] = k
        roots.append(k)
        for c in local_inv:
            t = pos[orbit_of[product_label(data, c, reps[k])]]
            if root[t] < 0:
                root[t] = k
                transport[t] = c

    denominators = [data.twists[x].denominator for orbit, _ in orbits
                    for x in orbit]
    order = reduce(lcm, denominators, PHASE_GRID_ORDER)
    phases = np.exp(2j * np.pi * np.arange(order) / order)
    if len(roots) == 1:
        mags = [1 / np.sqrt(n_fixed)]
        grid = list(mags[0] * phases)
    else:
        mags = [1 / np.sqrt(n) for n in range(1, n_fixed + 1)]
        grid = [0j] + [m * p for m in mags for p in phases]
    free_pairs = [(s, t) for i, s in enumerate(roots) for t in roots[i:]]
    moved = [k for k in range(n_fixed) if root[k] != k]
    count = len(grid) ** len(free_pairs) * 2 ** len(moved)
    if count > MAX_SEARCH_CANDIDATES:
        detail = (f"{n_fixed} fixed points in {len(roots)} transport classes "
                  f"need {count} candidates")
        logger.error(f"Fixed-point search too large: {detail}")
        raise UnderdeterminedCondensationError(0, detail)

    lam = np.array([[_lam(transport[b], e) for e in range(n_fixed)]
                    for b in range(n_fixed)])
    for values in itertools.product(grid, repeat=len(free_pairs)):
        v = {}
        for (s, t), val in zip(free_pairs, values):
            v[(s, t)] = v[(t, s)] = val
        for signs in itertools.product((1, -1), repeat=len(moved)):
            sign = np.ones(n_fixed)
            sign[moved] = signs
            u = np.empty((n_fixed, n_fixed), dtype=complex)
            for b in range(n_fixed):
                for e in range(n_fixed):
                    u[b, e] = (sign[b] * sign[e] * lam[b, e]
                               * lam[e, root[b]] * v[(root[b], root[e])])
            if not np.allclose(u, u.T, atol=NUMERIC_TOL):
                continue
            if not np.allclose(u @ np.conj(u).T, np.eye(n_fixed), atol=NUMERIC_TOL):
                continue
            yield fixed, u * np.sqrt(d_cond) / 2


def condense(data: PreModularData, bosons, check_host: bool = False
             ) -> CondensationResult:
    """
    Condense a group of invertible bosons.

    Local labels are those with trivial monodromy around every boson; they
    fall into orbits under fusion with the bosons. An orbit with trivial
    stabilizer gives one condensed label, an orbit with stabilizer of order
    two splits into two labels of half the dimension. Twists are inherited.
    S entries between unsplit orbits are those of representatives divided
    by the stabilizer orders; the remaining split-split part is found by a
    finite search and must be unique up to relabelling the split pieces.

    Parameters
    ----------
    data : PreModularData
        Modular host.
    bosons : BosonGroup or Iterable
        Group to condense, or its labels.
    check_host : bool, default=False
        Run the modularity checks on the host first.

    Returns
    -------
    result : CondensationResult

    Raises
    ------
    NotCondensableError
        If the bosons do not form a valid boson group.
    UnderdeterminedCondensationError
        If a stabilizer is larger than two or the split entries are not
        determined.
    NotModularError
        If ``check_host`` is set and the host is not modular.
    """
    if not isinstance(bosons, BosonGroup):
        bosons = BosonGroup.from_labels(data, bosons)
    else:
        bosons.validate()
    if check_host:
        require_modular(data)

    members = sorted(bosons.members)
    orbits = _orbits(data, members)
    big = [o for o, stab in orbits if stab > 2]
    if big:
        detail = f"stabilizer larger than 2 at {data.labels[big[0][0]]}"
        logger.error(f"Cannot resolve fixed points of {data.name}: {detail}")
        raise UnderdeterminedCondensationError(0, detail)

    pieces = []
    for i, (orbit, stab) in enumerate(orbits):
        if stab == 1:
            pieces.append((i, 0))
        else:
            pieces.extend([(i, 1), (i, -1)])
    labels, twists, lift = [], [], []
    for i, piece in pieces:
        orbit, stab = orbits[i]
        rep = orbit[0]
        suffix = {0: '', 1: '+', -1: '-'}[piece]
        labels.append(f"{data.labels[rep]}{suffix}")
        twists.append(data.twists[rep])
        lift.append((orbit, piece))
    twists = tuple(twists)

    r = len(pieces)
    base_s = np.empty((r, r), dtype=complex)
    for p, (i, _) in enumerate(pieces):
        for t, (j, _) in enumerate(pieces):
            a, b = orbits[i][0][0], orbits[j][0][0]
            base_s[p, t] = data.smatrix[a, b] / (orbits[i][1] * orbits[j][1])

    d_cond = data.total_dim / bosons.order ** 2
    name = f"{data.name}/B{bosons.order}"
    split = any(stab == 2 for _, stab in orbits)

    if not split:
        condensed = _assemble(labels, twists, base_s, name)
        if condensed is None:
            msg = f"Condensed data of {data.name} failed its checks"
            logger.error(msg)
            raise ModextError(msg)
    else:
        local_inv = sorted({x for o, stab in orbits if stab == 1
                            for x in o if is_invertible(data, x)})
        piece_index = {(i, t): p for p, (i, t) in enumerate(pieces)}
        solutions = []
        for fixed, y in _fixed_point_candidates(data, orbits, local_inv,
                                                d_cond):
            s = base_s.copy()
            for k1, i in enumerate(fixed):
                for k2, j in enumerate(fixed):
                    for t1, t2 in itertools.product((1, -1), repeat=2):
                        s[piece_index[(i, t1)], piece_index[(j, t2)]] += \
                            t1 * t2 * y[k1, k2]
            cand = _assemble(labels, twists, s, name)
            if cand is not None:
                solutions.append(cand)
        if not solutions:
            detail = f"no consistent completion for {data.name}"
            logger.error(f"Fixed-point search failed: {detail}")
            raise UnderdeterminedCondensationError(0, detail)
        condensed = solutions[0]
        unsplit = {p: p for p, (_, t) in enumerate(pieces) if t == 0}
        inequivalent = [c for c in solutions[1:]
                        if find_equivalence(condensed, c, unsplit) is None]
        if inequivalent:
            detail = f"{len(solutions)} completions for {data.name}"
            logger.error(f"Fixed-point search ambiguous: {detail}")
            raise UnderdeterminedCondensationError(1 + len(inequivalent),
                                                   detail)
        logger.info(f"Resolved fixed points of {data.name}",
                    extra={'candidates': len(solutions)})

    if abs(condensed.total_dim - d_cond) > INTEGRAL_TOL * d_cond:
        msg = f"Condensed dimension {condensed.total_dim} != {d_cond}"
        logger.error(msg)
        raise ModextError(msg)

    condensed, order = canonical_form(condensed)
    lift = tuple(lift[o] for o in order)
    logger.info(f"Condensed {bosons.order} bosons of {data.name}",
                extra={'host_rank': data.rank, 'rank': condensed.rank})
    return CondensationResult(data, bosons, condensed, lift)


def boson_subgroups(data: PreModularData) -> List[BosonGroup]:
    """
    Every group of invertible bosons with trivial mutual braiding.

    The trivial group comes first, then groups by increasing order.
    """
    candidates = [x for x in range(data.rank)
                  if is_invertible(data, x) and data.twists[x] == 0]
    found = {frozenset([data.unit])}
    frontier = deque(found)
    while frontier:
        g = frontier.popleft()
        for x in candidates:
            if x in g:
                continue
            closed = set(g) | {x}
            changed = True
            while changed:
                changed = False
                for a, b in itertools.product(list(closed), repeat=2):
                    c = product_label(data, a, b)
                    if c not in closed:
                        closed.add(c)
                        changed = True
            closed = frozenset(closed)
            if closed in found:
                continue
            if any(data.twists[c] != 0 for c in closed):
                continue
            if any(monodromy_phase(data, a, b) != 0
                   for a, b in itertools.combinations(closed, 2)):
                continue
            found.add(closed)
            frontier.append(closed)
    groups = sorted(found, key=lambda g: (len(g), sorted(g)))
    return [BosonGroup(data, g) for g in groups]


def is_anisotropic(data: PreModularData) -> bool:
    """No invertible boson other than the unit can be condensed."""
    return len(boson_subgroups(data)) == 1


def is_lagrangian(data: PreModularData, bosons) -> bool:
    """Whether condensing ``bosons`` leaves the trivial theory."""
    if not isinstance(bosons, BosonGroup):
        bosons = BosonGroup.from_labels(data, bosons)
    return abs(data.total_dim - bosons.order ** 2) < INTEGRAL_TOL * data.total_dim


def base_group(base: PreModularData) -> Tuple[Tuple[int, ...], List[Tuple[int, ...]]]:
    """
    Cyclic orders and label coordinates of an abelian symmetric base.

    Rep(A) labels are read from their coordinate names; sVect is treated as
    ``Z_2`` with the fermion at ``1``.

    Raises
    ------
    BaseMismatchError
        If the base is not of either form.
    """
    if base.labels == ('1', 'f'):
        return (2,), [(0,), (1,)]
    try:
        coords = [tuple(parse_int_list(x, '.')) for x in base.labels]
    except ValueError:
        coords = []
    if coords and len({len(c) for c in coords}) == 1:
        orders = tuple(max(c[i] for c in coords) + 1
                       for i in range(len(coords[0])))
        if sorted(coords) == group_elements(orders) and coords[base.unit] == \
                group_elements(orders)[0]:
            return orders, coords
    detail = f"{base.name} is not Rep(A) of an abelian group"
    logger.error(detail)
    raise BaseMismatchError(detail)


def _pairing(chi, a, orders) -> Fraction:
    return frac_mod1(sum(Fraction(x * y, n) for x, y, n in zip(chi, a, orders)))


def break_symmetry(w: ExtensionWitness, generators: Sequence[Sequence[int]]
                   ) -> ExtensionWitness:
    """
    Break the symmetry of an extension of Rep(A) down to a subgroup H.

    Condenses the embedded characters of A that are trivial on H and
    returns an extension of Rep(H).

    Parameters
    ----------
    w : ExtensionWitness
        Extension of Rep(A), or of sVect viewed as ``Z_2``.
    generators : Sequence[Sequence[int]]
        Generators of H in the coordinates of A.

    Returns
    -------
    witness : ExtensionWitness
        Extension of ``rep_abelian`` of H, or ``w`` itself when H is all
        of A.

    Raises
    ------
    NotCondensableError
        If the characters to condense are not bosons, e.g. the fermion of
        sVect.
    BaseMismatchError
        If the broken witness does not validate over Rep(H).
    """
    orders, coords = base_group(w.base)
    generators = [tuple(int(x) % n for x, n in zip(g, orders))
                  for g in generators]
    h_orders, basis = subgroup_basis(orders, generators)
    if prod(h_orders) == prod(orders):
        logger.info(f"Subgroup is all of {orders}, {w.name} unchanged")
        return w
    kernel =[e for e, chi in enumerate(coords)
              if all(_pairing(chi, h, orders) == 0 for h in generators)]
    result = condense(w.bulk, [w.embedding[e] for e in kernel])

    new_base = rep_abelian(h_orders)
    embedding = []
    restricted = {}
    for e, chi in enumerate(coords):
        eta = tuple(int(o * _pairing(chi, h, orders)) % o
                    for h, o in zip(basis, h_orders))
        restricted.setdefault(eta, e)
    for eta in group_elements(h_orders):
        embedding.append(result.project(w.embedding[restricted[eta]]))
    witness = ExtensionWitness(new_base, result.condensed, tuple(embedding),
                               name=f"{w.name} broken to {h_orders}")
    report = validate_extension(witness)
    if not report.passed:
        detail = (f"Breaking {w.name} to {h_orders} fails "
                  f"{', '.join(f.name for f in report.failures)}")
        logger.error(detail)
        raise BaseMismatchError(detail)
    logger.info(f"Broke symmetry of {w.name} to subgroup {h_orders}")
    return witness
