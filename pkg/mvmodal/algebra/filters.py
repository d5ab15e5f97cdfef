"""
Congruence filters and quotients.
"""
from dataclasses import dataclass
from typing import FrozenSet, NamedTuple, Tuple

import numpy as np

from .lattice import ResiduatedLattice, build_lattice


@dataclass(frozen=True)
class Filter:
    """A congruence filter: contains the top, upward closed, closed under fusion."""

    algebra: ResiduatedLattice
    members: FrozenSet[int]

    def __contains__(self, element):
        return element in self.members

    @property
    def labels(self):
        return [self.algebra.labels[a] for a in sorted(self.members)]

    def is_trivial(self):
        return self.members == frozenset({self.algebra.top})


def _upward(algebra, members):
    leq = algebra.leq
    return {int(x) for x in np.flatnonzero(leq[sorted(members)].any(axis=0))}


def filter_generated(algebra, generators):
    """
    The least congruence filter containing ``generators``.

    Parameters
    ----------
    algebra: ResiduatedLattice
    generators: iterable of int
        Element indices

    Returns
    -------
    Filter
    """
    members = _upward(algebra, set(generators) | {algebra.top})
    while True:
        products = {int(algebra.fusion[a, b]) for a in members for b in members}
        grown = _upward(algebra, members | products)
        if grown == members:
            return Filter(algebra, frozenset(members))
        members = grown


class Quotient(NamedTuple):
    algebra: ResiduatedLattice
    projection: Tuple[int, ...]


def quotient(algebra, filter_):
    """
    Quotient by the congruence ``x ~ y`` iff ``(x -> y) * (y -> x)`` is in the filter.

    Each class is labelled by the label of its greatest element. The induced operations are
    validated again through :func:`build_lattice`.

    Returns
    -------
    Quotient
        The quotient algebra and the projection (``projection[x]`` is the class index of ``x``).
    """
    n = algebra.size
    members = filter_.members
    classes = []
    projection = [-1] * n
    for x in algebra.elements:
        if projection[x] >= 0:
            continue
        cls = [y for y in algebra.elements if algebra.biimp(x, y) in members]
        for y in cls:
            projection[y] = len(classes)
        classes.append(cls)

    greatest = [algebra.join_all(cls) for cls in classes]
    labels = [algebra.labels[g] for g in greatest]
    k = len(classes)
    leq = np.zeros((k, k), dtype=bool)
    fusion = np.zeros((k, k), dtype=np.intp)
    for i, gi in enumerate(greatest):
        for j, gj in enumerate(greatest):
            leq[i, j] = projection[algebra.meet[gi, gj]] == i
            fusion[i, j] = projection[algebra.fusion[gi, gj]]
    name = f"{algebra.name}/{{{','.join(filter_.labels)}}}"
    return Quotient(build_lattice(labels, leq, fusion, name=name), tuple(projection))
