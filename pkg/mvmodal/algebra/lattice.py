"""
Finite residuated lattices stored as index tables.

Elements are the integers ``0 .. size - 1``; labels are for display only. All
arithmetic in the package is lookup into the tables of a :class:`ResiduatedLattice`.
"""
import logging
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from ..errors import BadParam, NotALattice, NotAMonoid, ResiduationFails, UnknownConstant

logger = logging.getLogger(__name__)


class Element(NamedTuple):
    index: int
    label: str


def _frozen(array):
    array = np.array(array, dtype=np.intp)
    array.setflags(write=False)
    return array


class ResiduatedLattice:
    """
    A validated finite residuated lattice.

    Instances are created by :func:`build_lattice` (or the presets built on top of it) and are
    immutable. Two algebras compare equal when they have the same labels in the same order and
    the same tables; names and the constants flag are ignored.

    Parameters
    ----------
    name: str
        Reference of the algebra (a preset expression such as ``lukasiewicz(3)`` or a file name)
    labels: tuple of str
        Display labels, in index order
    leq, meet, join, fusion, residuum: numpy.ndarray
        Tables indexed by element indices
    bottom, top: int
        Indices of the least and greatest element
    constants: bool
        Whether the canonical constants of the expansion A^c are available
    """

    def __init__(self, *, name, labels, leq, meet, join, fusion, residuum, bottom, top, constants=False):
        self.name = name
        self.labels = tuple(labels)
        self.leq = np.array(leq, dtype=bool)
        self.leq.setflags(write=False)
        self.meet = _frozen(meet)
        self.join = _frozen(join)
        self.fusion = _frozen(fusion)
        self.residuum = _frozen(residuum)
        self.bottom = int(bottom)
        self.top = int(top)
        self.constants = bool(constants)
        self._index = {label: i for i, label in enumerate(self.labels)}
        self.negation = _frozen(self.residuum[:, self.bottom])

    # ------------------------------------------------------------------ identity

    @property
    def size(self):
        return len(self.labels)

    @property
    def elements(self):
        return range(self.size)

    @property
    def reference(self):
        """Name as written in files and on the command line (``^c`` marks constants)."""
        return f"{self.name}^c" if self.constants else self.name

    def __len__(self):
        return self.size

    def __eq__(self, other):
        if not isinstance(other, ResiduatedLattice):
            return NotImplemented
        return (
            self.labels == other.labels
            and np.array_equal(self.leq, other.leq)
            and np.array_equal(self.fusion, other.fusion)
        )

    def __hash__(self):
        return hash((self.labels, self.fusion.tobytes()))

    def __repr__(self):
        return f"ResiduatedLattice({self.reference!r}, size={self.size})"

    def with_constants(self, constants=True):
        """Return the same algebra with canonical constants switched on (or off)."""
        return self.renamed(self.name, constants=constants)

    def renamed(self, name, *, constants=None):
        return ResiduatedLattice(
            name=name,
            labels=self.labels,
            leq=self.leq,
            meet=self.meet,
            join=self.join,
            fusion=self.fusion,
            residuum=self.residuum,
            bottom=self.bottom,
            top=self.top,
            constants=self.constants if constants is None else constants,
        )

    # ------------------------------------------------------------------ elements

    def index(self, label):
        """Index of the element displayed as ``label``."""
        try:
            return self._index[str(label)]
        except KeyError:
            raise UnknownConstant(f"{label!r} is not an element of {self.name}") from None

    def label(self, index):
        return self.labels[int(index)]

    def element(self, index):
        return Element(int(index), self.labels[int(index)])

    @property
    def constant_names(self):
        """Map label -> element for the canonical constants (empty when they are disabled)."""
        if not self.constants:
            return {}
        return {label: self.element(i) for i, label in enumerate(self.labels)}

    # ------------------------------------------------------------------ arithmetic

    def le(self, a, b):
        return bool(self.leq[a, b])

    def neg(self, a):
        return int(self.negation[a])

    def oplus(self, a, b):
        return self.neg(self.fusion[self.negation[a], self.negation[b]])

    def biimp(self, a, b):
        return int(self.fusion[self.residuum[a, b], self.residuum[b, a]])

    def power(self, a, m):
        """``a^m`` (``a`` fused with itself ``m`` times, ``1`` for ``m = 0``)."""
        result = self.top
        for _ in range(m):
            result = int(self.fusion[result, a])
        return result

    def times(self, m, a):
        """``m.a`` (``a`` added to itself with the strong disjunction, ``0`` for ``m = 0``)."""
        result = self.bottom
        for _ in range(m):
            result = self.oplus(result, a)
        return result

    def meet_all(self, elements: Iterable[int]):
        result = self.top
        for a in elements:
            result = int(self.meet[result, a])
        return result

    def join_all(self, elements: Iterable[int]):
        result = self.bottom
        for a in elements:
            result = int(self.join[result, a])
        return result


def _coerce_table(labels, table, what):
    n = len(labels)
    index = {label: i for i, label in enumerate(labels)}
    rows = [list(row) for row in table]
    if len(rows) != n or any(len(row) != n for row in rows):
        raise BadParam(f"The {what} table must be {n} x {n}")
    result = np.empty((n, n), dtype=np.intp)
    for i, row in enumerate(rows):
        for j, entry in enumerate(row):
            if isinstance(entry, (int, np.integer)) and not isinstance(entry, bool):
                if not 0 <= entry < n:
                    raise BadParam(f"Entry {entry} of the {what} table is out of range")
                result[i, j] = entry
            elif str(entry) in index:
                result[i, j] = index[str(entry)]
            else:
                raise BadParam(f"Entry {entry!r} of the {what} table is not a label")
    return result


def _check_order(labels, leq):
    if not leq.diagonal().all():
        i = int(np.argmin(leq.diagonal()))
        raise NotALattice(f"The order is not reflexive at {labels[i]!r}")
    both = leq & leq.T
    np.fill_diagonal(both, False)
    if both.any():
        i, j = (int(v) for v in np.argwhere(both)[0])
        raise NotALattice(f"The order is not antisymmetric at ({labels[i]}, {labels[j]})", (labels[i], labels[j]))
    composed = np.any(leq[:, :, None] & leq[None, :, :], axis=1)
    if (composed & ~leq).any():
        i, j = (int(v) for v in np.argwhere(composed & ~leq)[0])
        raise NotALattice(f"The order is not transitive at ({labels[i]}, {labels[j]})", (labels[i], labels[j]))


def _bound_table(labels, leq, *, upper):
    """Meet (``upper=False``) or join (``upper=True``) table derived from the order."""
    if upper:
        bounds = leq[:, None, :] & leq[None, :, :]  # bounds[a, b, x]: a <= x and b <= x
        extreme = np.all(~bounds[:, :, :, None] | leq.T[None, None, :, :], axis=2)
    else:
        bounds = leq.T[:, None, :] & leq.T[None, :, :]  # bounds[a, b, x]: x <= a and x <= b
        extreme = np.all(~bounds[:, :, :, None] | leq[None, None, :, :], axis=2)
    candidates = bounds & extreme
    counts = candidates.sum(axis=2)
    if (counts != 1).any():
        a, b = (int(v) for v in np.argwhere(counts != 1)[0])
        what = "join" if upper else "meet"
        raise NotALattice(f"The pair ({labels[a]}, {labels[b]}) has no {what}", (labels[a], labels[b]))
    return np.argmax(candidates, axis=2)


def _check_monoid(labels, fusion, top):
    n = len(labels)
    if not np.array_equal(fusion, fusion.T):
        a, b = (int(v) for v in np.argwhere(fusion != fusion.T)[0])
        raise NotAMonoid(f"Fusion is not commutative at ({labels[a]}, {labels[b]})")
    if not np.array_equal(fusion[top], np.arange(n)):
        a = int(np.argmax(fusion[top] != np.arange(n)))
        raise NotAMonoid(f"The top element is not a unit of fusion at {labels[a]}")
    idx = np.arange(n)
    left = fusion[fusion[:, :, None], idx[None, None, :]]
    right = fusion[idx[:, None, None], fusion[None, :, :]]
    if not np.array_equal(left, right):
        a, b, c = (int(v) for v in np.argwhere(left != right)[0])
        raise NotAMonoid(f"Fusion is not associative at ({labels[a]}, {labels[b]}, {labels[c]})")


def _derive_residuum(labels, leq, join, fusion, bottom):
    n = len(labels)
    idx = np.arange(n)
    # candidates[a, c, b]: a * b <= c
    candidates = leq[fusion[:, None, :], idx[None, :, None]]
    residuum = np.full((n, n), bottom, dtype=np.intp)
    for b in range(n):
        residuum = np.where(candidates[:, :, b], join[residuum, b], residuum)

    lhs = leq[fusion[:, :, None], idx[None, None, :]]  # a * b <= c
    rhs = leq[idx[None, :, None], residuum[:, None, :]]  # b <= a -> c
    if not np.array_equal(lhs, rhs):
        a, b, c = (int(v) for v in np.argwhere(lhs != rhs)[0])
        triple = (labels[a], labels[b], labels[c])
        raise ResiduationFails(f"Fusion admits no residuum: adjunction fails at {triple}", triple)
    return residuum


def build_lattice(labels: Sequence[str], leq, fusion, *, name="custom", constants=False):
    """
    Validate a finite order and a fusion table and derive the remaining operations.

    Parameters
    ----------
    labels: sequence of str
        Distinct display labels, in index order
    leq: array-like of bool
        ``leq[i][j]`` is true when element ``i`` is below element ``j``
    fusion: array-like
        Fusion table, entries given as labels or indices
    name: str
        Reference stored with the algebra
    constants: bool
        Enable canonical constants

    Returns
    -------
    ResiduatedLattice

    Raises
    ------
    BadParam
        Labels are not distinct or the tables have the wrong shape.
    NotALattice
        The order is not a partial order or a pair lacks a meet or join.
    NotAMonoid
        Fusion is not commutative, not associative or the top is not its unit.
    ResiduationFails
        No residuum exists; the witnessing triple is attached.
    """
    labels = tuple(str(label) for label in labels)
    n = len(labels)
    if n == 0:
        raise BadParam("An algebra needs at least one element")
    if len(set(labels)) != n:
        raise BadParam(f"Labels are not distinct: {labels}")
    leq = np.array(leq, dtype=bool)
    if leq.shape != (n, n):
        raise BadParam(f"The order must be a {n} x {n} matrix")
    fusion = _coerce_table(labels, fusion, "fusion")

    _check_order(labels, leq)
    meet = _bound_table(labels, leq, upper=False)
    join = _bound_table(labels, leq, upper=True)
    bottom = int(np.argmax(leq.all(axis=1)))
    top = int(np.argmax(leq.all(axis=0)))
    _check_monoid(labels, fusion, top)
    residuum = _derive_residuum(labels, leq, join, fusion, bottom)

    logger.debug("Validated algebra %s with %d elements", name, n)
    return ResiduatedLattice(
        name=name,
        labels=labels,
        leq=leq,
        meet=meet,
        join=join,
        fusion=fusion,
        residuum=residuum,
        bottom=bottom,
        top=top,
        constants=constants,
    )
