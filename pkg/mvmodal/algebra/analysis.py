"""
Exhaustive classification of finite residuated lattices.
"""
import functools
import itertools
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel

from .filters import filter_generated


@functools.lru_cache(maxsize=None)
def idempotent_elements(algebra) -> Tuple[int, ...]:
    return tuple(int(a) for a in algebra.elements if algebra.fusion[a, a] == a)


@functools.lru_cache(maxsize=None)
def boolean_elements(algebra) -> Tuple[int, ...]:
    """Elements ``a`` with ``a \\/ ~a = 1``."""
    return tuple(int(a) for a in algebra.elements if algebra.join[a, algebra.negation[a]] == algebra.top)


@functools.lru_cache(maxsize=None)
def coatoms(algebra) -> Tuple[int, ...]:
    top = algebra.top
    below_top = [a for a in algebra.elements if a != top]
    return tuple(
        a
        for a in below_top
        if not any(algebra.leq[a, x] and x != a for x in below_top)
    )


def unique_coatom(algebra) -> Optional[int]:
    found = coatoms(algebra)
    return found[0] if len(found) == 1 else None


@functools.lru_cache(maxsize=None)
def distributive_elements(algebra) -> Tuple[int, ...]:
    """Elements ``a`` with ``(a \\/ x) /\\ (a \\/ y) = a \\/ (x /\\ y)`` for all ``x, y``."""
    meet, join = algebra.meet, algebra.join
    lhs = meet[join[:, :, None], join[:, None, :]]
    rhs = join[np.arange(algebra.size)[:, None, None], meet[None, :, :]]
    return tuple(int(a) for a in np.flatnonzero((lhs == rhs).all(axis=(1, 2))))


def is_chain(algebra):
    return bool((algebra.leq | algebra.leq.T).all())


def top_join_irreducible(algebra):
    return join_irreducibility_witness(algebra) is None


def join_irreducibility_witness(algebra):
    """A pair of elements below the top whose join is the top, or ``None``."""
    top = algebra.top
    for a, b in itertools.combinations_with_replacement(algebra.elements, 2):
        if a != top and b != top and algebra.join[a, b] == top:
            return (a, b)
    return None


def _all_top(algebra, values):
    return bool((np.asarray(values) == algebra.top).all())


def is_prelinear(algebra):
    r = algebra.residuum
    return _all_top(algebra, algebra.join[r, r.T])


def is_divisible(algebra):
    idx = np.arange(algebra.size)
    return bool(np.array_equal(algebra.fusion[idx[:, None], algebra.residuum], algebra.meet))


def is_involutive(algebra):
    neg = algebra.negation
    return bool(np.array_equal(neg[neg], np.arange(algebra.size)))


def is_heyting(algebra):
    return len(idempotent_elements(algebra)) == algebra.size


def is_cancellative(algebra):
    """``~~x -> ((x -> x * y) -> y * ~~y) = 1`` for all ``x, y``."""
    f, r, neg = algebra.fusion, algebra.residuum, algebra.negation
    x = np.arange(algebra.size)[:, None]
    y = np.arange(algebra.size)[None, :]
    nnx = neg[neg[x]]
    inner = r[r[x, f[x, y]], f[y, neg[neg[y]]]]
    return _all_top(algebra, r[nnx, inner])


def is_simple(algebra):
    """Only the filters ``{1}`` and ``A`` are congruence filters."""
    everything = frozenset(algebra.elements)
    return all(
        filter_generated(algebra, {a}).members == everything for a in algebra.elements if a != algebra.top
    )


def stonean_idempotents(algebra):
    """``x = x * x`` implies ``~x \\/ ~~x = 1``."""
    neg = algebra.negation
    return all(algebra.join[neg[a], neg[neg[a]]] == algebra.top for a in idempotent_elements(algebra))


def power_stabilization(algebra):
    """Least ``m`` with ``a^m = a^(m+1)`` for every element ``a``."""
    m = 1
    powers = np.arange(algebra.size)
    while True:
        following = algebra.fusion[powers, np.arange(algebra.size)]
        if np.array_equal(following, powers):
            return m
        powers = following
        m += 1


class AlgebraReport(BaseModel):
    name: str
    size: int
    idempotents: List[str]
    booleans: List[str]
    coatoms: List[str]
    distributives: List[str]
    unique_coatom: Optional[str]
    is_chain: bool
    top_join_irreducible: bool
    is_heyting: bool
    is_mtl: bool
    is_bl: bool
    is_mv: bool
    is_godel: bool
    is_product: bool
    is_involutive: bool
    is_simple: bool
    stonean_idempotents: bool


def classify(algebra):
    """
    Classify an algebra by exhaustive checks of the defining (quasi)equations.

    Parameters
    ----------
    algebra: ResiduatedLattice

    Returns
    -------
    AlgebraReport
        Element sets are given as labels, in index order.
    """
    labels = algebra.labels
    mtl = is_prelinear(algebra)
    bl = mtl and is_divisible(algebra)
    involutive = is_involutive(algebra)
    heyting = is_heyting(algebra)
    coatom = unique_coatom(algebra)
    return AlgebraReport(
        name=algebra.reference,
        size=algebra.size,
        idempotents=[labels[a] for a in idempotent_elements(algebra)],
        booleans=[labels[a] for a in boolean_elements(algebra)],
        coatoms=[labels[a] for a in coatoms(algebra)],
        distributives=[labels[a] for a in distributive_elements(algebra)],
        unique_coatom=None if coatom is None else labels[coatom],
        is_chain=is_chain(algebra),
        top_join_irreducible=top_join_irreducible(algebra),
        is_heyting=heyting,
        is_mtl=mtl,
        is_bl=bl,
        is_mv=bl and involutive,
        is_godel=bl and heyting,
        is_product=bl and is_cancellative(algebra),
        is_involutive=involutive,
        is_simple=is_simple(algebra),
        stonean_idempotents=stonean_idempotents(algebra),
    )


class LawReport(BaseModel):
    name: str
    laws: Dict[str, Optional[Dict[str, str]]]

    def passed(self, law):
        return self.laws[law] is None

    def failing(self):
        return [law for law, witness in self.laws.items() if witness is not None]

    @property
    def ok(self):
        return not self.failing()


def _first_failure(labels, holds, names):
    if holds.all():
        return None
    point = np.argwhere(~holds)[0]
    return {name: labels[int(i)] for name, i in zip(names, point)}


def check_laws(algebra):
    """
    Check the distribution laws of residuated lattices with two-element index sets.

    The laws are, for all elements::

        fusion_over_join      x * (y1 \\/ y2)  = (x * y1) \\/ (x * y2)
        residuum_over_meet    x -> (y1 /\\ y2) = (x -> y1) /\\ (x -> y2)
        join_antecedent       (x1 \\/ x2) -> y = (x1 -> y) /\\ (x2 -> y)
        residuum_over_join    x -> (y1 \\/ y2) = (x -> y1) \\/ (x -> y2)
        meet_antecedent       (x1 /\\ x2) -> y = (x1 -> y) \\/ (x2 -> y)
        prelinearity          (x -> y) \\/ (y -> x) = 1
        idempotent_joins      joins of idempotents are idempotent

    The first three hold in every residuated lattice; the next three hold exactly in MTL algebras.

    Returns
    -------
    LawReport
        For every law ``None`` when it holds, else the first failing instantiation.
    """
    f, r, m, j = algebra.fusion, algebra.residuum, algebra.meet, algebra.join
    labels = algebra.labels
    idx = np.arange(algebra.size)
    a, b, c = idx[:, None, None], idx[None, :, None], idx[None, None, :]

    laws = {
        "fusion_over_join": _first_failure(labels, f[a, j[b, c]] == j[f[a, b], f[a, c]], ("x", "y1", "y2")),
        "residuum_over_meet": _first_failure(labels, r[a, m[b, c]] == m[r[a, b], r[a, c]], ("x", "y1", "y2")),
        "join_antecedent": _first_failure(labels, r[j[a, b], c] == m[r[a, c], r[b, c]], ("x1", "x2", "y")),
        "residuum_over_join": _first_failure(labels, r[a, j[b, c]] == j[r[a, b], r[a, c]], ("x", "y1", "y2")),
        "meet_antecedent": _first_failure(labels, r[m[a, b], c] == j[r[a, c], r[b, c]], ("x1", "x2", "y")),
        "prelinearity": _first_failure(labels, j[r, r.T] == algebra.top, ("x", "y")),
    }

    idempotents = idempotent_elements(algebra)
    witness = None
    for x, y in itertools.combinations(idempotents, 2):
        z = j[x, y]
        if f[z, z] != z:
            witness = {"x": labels[x], "y": labels[y]}
            break
    laws["idempotent_joins"] = witness
    return LawReport(name=algebra.reference, laws=laws)


class LocalDeductionReport(BaseModel):
    simple: bool
    trivial_idempotents: bool
    nilpotent: bool
    stabilization: int

    @property
    def consistent(self):
        return self.simple == self.trivial_idempotents == self.nilpotent


def local_deduction_report(algebra):
    """
    The finite-side conditions equivalent to the local deduction theorem for ``A^c``.

    For a finite algebra: simple; only ``0`` and ``1`` idempotent; ``a^n = 0`` for every
    ``a != 1`` with ``n = |A|``. ``stabilization`` is the least ``m`` after which powers no longer
    change.
    """
    trivial = set(idempotent_elements(algebra)) == {algebra.bottom, algebra.top}
    n = algebra.size
    nilpotent = all(algebra.power(a, n) == algebra.bottom for a in algebra.elements if a != algebra.top)
    return LocalDeductionReport(
        simple=is_simple(algebra),
        trivial_idempotents=trivial,
        nilpotent=nilpotent,
        stabilization=power_stabilization(algebra),
    )


def proof_by_cases_holds(algebra):
    """
    Whether proofs by cases are available for ``A^c`` (the top is join irreducible).

    Returns
    -------
    (bool, tuple or None)
        The verdict and, when it fails, labels of two elements below ``1`` joining to ``1``.
    """
    pair = join_irreducibility_witness(algebra)
    if pair is None:
        return True, None
    return False, (algebra.labels[pair[0]], algebra.labels[pair[1]])


def find_isomorphism(first, second):
    """
    Search for an isomorphism of residuated lattices.

    Returns
    -------
    list of int or None
        ``mapping[i]`` is the image in ``second`` of element ``i`` of ``first``.
    """
    n = first.size
    if n != second.size:
        return None
    if len(idempotent_elements(first)) != len(idempotent_elements(second)):
        return None
    mapping = [-1] * n
    used = [False] * n
    below = [int(first.leq[:, i].sum()) for i in range(n)]
    below2 = [int(second.leq[:, i].sum()) for i in range(n)]

    def consistent(i):
        x = mapping[i]
        for k in range(i + 1):
            y = mapping[k]
            if first.leq[i, k] != second.leq[x, y] or first.leq[k, i] != second.leq[y, x]:
                return False
            fk = int(first.fusion[i, k])
            if mapping[fk] >= 0 and mapping[fk] != second.fusion[x, y]:
                return False
        for k in range(i + 1):
            for l in range(i + 1):
                fk = int(first.fusion[k, l])
                if fk <= i and mapping[fk] != second.fusion[mapping[k], mapping[l]]:
                    return False
        return True

    def extend(i):
        if i == n:
            return True
        for x in range(n):
            if used[x] or below[i] != below2[x]:
                continue
            mapping[i], used[x] = x, True
            if consistent(i) and extend(i + 1):
                return True
            mapping[i], used[x] = -1, False
        return False

    return list(mapping) if extend(0) else None


def is_isomorphic(first, second):
    return find_isomorphism(first, second) is not None
