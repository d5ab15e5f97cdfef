"""
Exact non-modal consequence over a finite algebra.

``Gamma |- phi`` holds when every assignment giving all of ``Gamma`` the value ``1`` gives ``phi``
the value ``1``. Assignments are enumerated exhaustively in canonical order, in chunks.
"""
import logging
from typing import Dict, NamedTuple, Optional

import numpy as np

from ..errors import NonModalExpected, NoUniqueCoatom
from ..formula.ast import Const, Implies, Modal, Or, Var, conj, is_modal, rebuild, variables
from ..semantics.evaluation import Evaluator, assignments, check_constants

logger = logging.getLogger(__name__)

CHUNK = 1 << 20


def abstract_boxes(formulas):
    """
    Replace maximal modal subformulas by fresh variables ``$b0``, ``$b1``, ...

    The same modal subformula gets the same variable everywhere.

    Returns
    -------
    (list of Formula, dict)
        The abstracted formulas and the map variable name -> modal subformula.
    """
    names = {}

    def abstract(node):
        if isinstance(node, Modal):
            if node not in names:
                names[node] = f"$b{len(names)}"
            return Var(names[node])
        if not node.children:
            return node
        return rebuild(node, [abstract(child) for child in node.children])

    result = [abstract(phi) for phi in formulas]
    return result, {name: node for node, name in names.items()}


def _prepare(algebra, premises, conclusion, abstract):
    premises = list(premises)
    formulas = premises + [conclusion]
    check_constants(algebra, *formulas)
    if any(is_modal(phi) for phi in formulas):
        if not abstract:
            raise NonModalExpected("Non-modal consequence needs formulas without modalities")
        formulas, _ = abstract_boxes(formulas)
    return formulas[:-1], formulas[-1]


def _first_failure(algebra, premises, conclusion):
    """Index and labels of the first assignment satisfying the premises and not the conclusion."""
    names = variables(*premises, conclusion)
    total = algebra.size ** len(names)
    top = algebra.top
    for start in range(0, total, CHUNK):
        stop = min(total, start + CHUNK)
        valuation = assignments(algebra.size, names, start, stop)
        evaluate = Evaluator(algebra, valuation)
        shape = (stop - start,)
        failing = np.broadcast_to(evaluate(conclusion) != top, shape).copy()
        for gamma in premises:
            failing &= np.broadcast_to(evaluate(gamma) == top, shape)
        if failing.any():
            k = int(np.argmax(failing))
            return {name: algebra.labels[valuation[name][k]] for name in names}
    return None


def nonmodal_counterexample(algebra, premises, conclusion, *, abstract=False) -> Optional[Dict[str, str]]:
    """
    The first assignment (as labels) satisfying ``premises`` and not ``conclusion``, or ``None``.

    Parameters
    ----------
    algebra: ResiduatedLattice
    premises: iterable of Formula
    conclusion: Formula
    abstract: bool
        Treat modal subformulas as fresh variables ``$b0``, ``$b1``, ...

    Raises
    ------
    NonModalExpected
        A formula is modal and ``abstract`` is false.
    """
    premises, conclusion = _prepare(algebra, premises, conclusion, abstract)
    return _first_failure(algebra, premises, conclusion)


def nonmodal_consequence(algebra, premises, conclusion, *, abstract=False):
    """Exact non-modal consequence (see :func:`nonmodal_counterexample`)."""
    return nonmodal_counterexample(algebra, premises, conclusion, abstract=abstract) is None


def is_tautology(algebra, phi, *, abstract=False):
    return nonmodal_consequence(algebra, [], phi, abstract=abstract)


def consequence_reduction_holds(algebra, premises, conclusion):
    """
    Compare ``Gamma |- phi`` with ``|- (/\\ Gamma) -> (phi \\/ @k)`` over the algebra with
    constants, ``k`` the unique coatom. Both sides are computed exactly.

    Raises
    ------
    NoUniqueCoatom
    """
    from ..algebra.analysis import unique_coatom

    k = unique_coatom(algebra)
    if k is None:
        raise NoUniqueCoatom(f"{algebra.reference} has no unique coatom")
    algebra = algebra.with_constants()
    premises = list(premises)
    consequence = nonmodal_consequence(algebra, premises, conclusion)
    reduced = nonmodal_consequence(algebra, [], Implies(conj(premises), Or(conclusion, Const(algebra.labels[k]))))
    logger.debug("Consequence %s, reduced theorem %s", consequence, reduced)
    return consequence == reduced


class PowerSearch(NamedTuple):
    power: Optional[int]
    witness: Optional[Dict[str, str]]
    value: Optional[str]


def ldt_power_search(algebra, premises, conclusion, max_power=None):
    """
    The least ``m <= max_power`` (default ``|A|``) with ``|- (/\\ Gamma)^m -> phi``.

    Returns
    -------
    PowerSearch
        ``power`` is ``None`` when no such ``m`` exists; then ``witness`` is the first assignment
        refuting the implication at ``max_power`` and ``value`` its value there.
    """
    premises, conclusion = _prepare(algebra, premises, conclusion, abstract=False)
    max_power = algebra.size if max_power is None else max_power
    names = variables(*premises, conclusion)
    total = algebra.size ** len(names)
    valuation = assignments(algebra.size, names)
    evaluate = Evaluator(algebra, valuation)
    gamma = np.broadcast_to(evaluate(conj(premises)), (total,))
    phi = np.broadcast_to(evaluate(conclusion), (total,))
    power = np.full(total, algebra.top, dtype=np.intp)
    implication = None
    for m in range(1, max_power + 1):
        power = algebra.fusion[power, gamma]
        implication = algebra.residuum[power, phi]
        if (implication == algebra.top).all():
            return PowerSearch(m, None, None)
    if implication is None:
        return PowerSearch(None, None, None)
    k = int(np.argmax(implication != algebra.top))
    witness = {name: algebra.labels[valuation[name][k]] for name in names}
    return PowerSearch(None, witness, algebra.labels[implication[k]])
