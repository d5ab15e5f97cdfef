"""
Term functions and (quasi)equations over a finite algebra, checked by exhaustive evaluation.
"""
from typing import List, Optional

import numpy as np
from pydantic import BaseModel

from ..errors import NonModalExpected
from ..formula.ast import is_modal, variables
from ..semantics.evaluation import all_assignments, evaluate


def _require_nonmodal(*formulas):
    for phi in formulas:
        if is_modal(phi):
            raise NonModalExpected(f"Expected a formula without modalities: {phi}")


def term_function(algebra, term, arity=None, *, names=None):
    """
    The function table of a non-modal term.

    Parameters
    ----------
    algebra: ResiduatedLattice
    term: Formula
    arity: int (optional)
        Number of arguments; the number of variables of ``term`` by default. Extra arguments are
        dummies.
    names: sequence of str (optional)
        Argument order; the sorted variables of ``term`` by default

    Returns
    -------
    numpy.ndarray
        Element indices with ``arity`` axes of length ``algebra.size``.
    """
    _require_nonmodal(term)
    names = list(names) if names is not None else variables(term)
    missing = set(variables(term)) - set(names)
    if missing:
        raise ValueError(f"Variables {sorted(missing)} are not arguments")
    arity = len(names) if arity is None else arity
    if arity < len(names):
        raise ValueError(f"The term has {len(names)} variables, more than the arity {arity}")
    names = names + [f"$arg{i}" for i in range(len(names), arity)]
    values = evaluate(algebra, term, all_assignments(algebra.size, names))
    return np.broadcast_to(values, (algebra.size ** arity,)).reshape((algebra.size,) * arity)


class TermProperties(BaseModel):
    arguments: List[str]
    nondecreasing: List[bool]
    expanding: Optional[bool]

    @property
    def monotone(self):
        return all(self.nondecreasing)


def term_properties(algebra, term, *, names=None):
    """
    Monotonicity of a term in each argument and, for unary terms, whether ``p <= t(p)`` everywhere.
    """
    names = list(names) if names is not None else variables(term)
    table = term_function(algebra, term, names=names)
    leq = algebra.leq
    nondecreasing = []
    for axis in range(len(names)):
        moved = np.moveaxis(table, axis, 0)
        ok = all(
            leq[moved[x], moved[y]].all()
            for x in algebra.elements
            for y in algebra.elements
            if leq[x, y]
        )
        nondecreasing.append(bool(ok))
    expanding = None
    if len(names) == 1:
        expanding = bool(leq[np.arange(algebra.size), table].all())
    return TermProperties(arguments=names, nondecreasing=nondecreasing, expanding=expanding)


def quasiequation_holds(algebra, premises, conclusion):
    """
    Exhaustive check of ``s1 = t1, ..., sk = tk  =>  s = t``.

    Parameters
    ----------
    premises: list of (Formula, Formula)
    conclusion: (Formula, Formula)

    Returns
    -------
    (bool, dict or None)
        The verdict and, when it fails, the first failing assignment as labels.
    """
    formulas = [side for pair in list(premises) + [conclusion] for side in pair]
    _require_nonmodal(*formulas)
    names = variables(*formulas)
    assignment = all_assignments(algebra.size, names)
    count = algebra.size ** len(names)

    def values(phi):
        return np.broadcast_to(evaluate(algebra, phi, assignment), (count,))

    holds = np.ones(count, dtype=bool)
    for left, right in premises:
        holds &= values(left) == values(right)
    failing = holds & (values(conclusion[0]) != values(conclusion[1]))
    if not failing.any():
        return True, None
    k = int(np.argmax(failing))
    return False, {name: algebra.labels[assignment[name][k]] for name in names}
