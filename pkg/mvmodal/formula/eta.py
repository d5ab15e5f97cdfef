"""
One-variable term functions and characterizing formulas of upsets of finite MV chains.
"""
import collections
import functools
import logging

import numpy as np

from ..errors import NotFound, NotMVChain
from .ast import ONE, ZERO, And, Fusion, Implies, Or, Var, oplus

logger = logging.getLogger(__name__)

P = Var("p")

_OPERATIONS = (("meet", And), ("join", Or), ("fusion", Fusion), ("residuum", Implies))


@functools.lru_cache(maxsize=None)
def unary_term_clone(algebra):
    """
    All unary term functions of an algebra, each with a witnessing term in ``p``.

    The closure starts from the identity and the constant functions ``0`` and ``1`` and adds
    pointwise meets, joins, fusions and residua of known functions round by round, so terms found
    in earlier rounds are never longer than later ones. Closure under composition follows, since
    substituting a term in ``p`` into another term gives a term in ``p``.

    Returns
    -------
    dict
        Function table (tuple of element indices, indexed by the argument) -> Formula, in order of
        discovery.
    """
    n = algebra.size
    identity = tuple(range(n))
    clone = {
        identity: P,
        tuple([algebra.bottom] * n): ZERO,
        tuple([algebra.top] * n): ONE,
    }
    frontier = list(clone)
    rounds = 0
    while frontier:
        rounds += 1
        known = np.array(list(clone), dtype=np.intp)
        new = np.array(frontier, dtype=np.intp)
        found = []
        for table_name, constructor in _OPERATIONS:
            table = getattr(algebra, table_name)
            for left, right in ((new, known), (known, new)):
                values = table[left[:, None, :], right[None, :, :]]
                for i, j in np.ndindex(values.shape[:2]):
                    key = tuple(int(v) for v in values[i, j])
                    if key not in clone:
                        clone[key] = constructor(clone[tuple(left[i])], clone[tuple(right[j])])
                        found.append(key)
        frontier = found
    logger.debug("Unary clone of %s: %d functions after %d rounds", algebra.name, len(clone), rounds)
    return clone


def is_mv_chain(algebra):
    from ..algebra.analysis import classify

    report = classify(algebra)
    return report.is_chain and report.is_mv


def characteristic_table(algebra, a):
    """The table of the characteristic function of ``[a, 1]``."""
    return tuple(algebra.top if algebra.leq[a, x] else algebra.bottom for x in algebra.elements)


def _tau_search(algebra, target):
    """Breadth-first search over compositions of ``p * p`` and ``p + p``."""
    f, neg = algebra.fusion, algebra.negation
    start = tuple(algebra.elements)
    queue = collections.deque([(start, P)])
    seen = {start}
    while queue:
        table, term = queue.popleft()
        if table == target:
            return term
        values = np.array(table, dtype=np.intp)
        squared = tuple(int(v) for v in f[values, values])
        doubled = tuple(int(v) for v in neg[f[neg[values], neg[values]]])
        for following, following_term in ((squared, Fusion(term, term)), (doubled, oplus(term, term))):
            if following not in seen:
                seen.add(following)
                queue.append((following, following_term))
    return None


@functools.lru_cache(maxsize=None)
def characterizing_formula(algebra, a):
    """
    A one-variable formula whose function is ``1`` on ``[a, 1]`` and ``0`` elsewhere.

    Compositions of ``p * p`` and ``p + p`` are tried first, breadth first with ``p * p`` before
    ``p + p``; the unary clone is searched when none of them fits.

    Parameters
    ----------
    algebra: ResiduatedLattice
        A finite MV chain (some ``lukasiewicz(n)``)
    a: int
        Element index

    Returns
    -------
    Formula

    Raises
    ------
    NotMVChain
        The algebra is not a finite MV chain.
    NotFound
        No term has the required function.
    """
    if not is_mv_chain(algebra):
        raise NotMVChain(f"{algebra.reference} is not a finite MV chain")
    a = int(a)
    if a == algebra.bottom:
        return ONE
    target = characteristic_table(algebra, a)
    term = _tau_search(algebra, target)
    if term is None:
        logger.info("No composition of p * p and p + p characterizes %s; searching the clone", algebra.label(a))
        term = unary_term_clone(algebra).get(target)
    if term is None:
        raise NotFound(f"No term characterizes [{algebra.label(a)}, 1] in {algebra.reference}")
    return term


def eta(algebra, a, phi):
    """``characterizing_formula(algebra, a)`` applied to ``phi``."""
    from .syntax import substitute

    return substitute(characterizing_formula(algebra, a), {"p": phi})
