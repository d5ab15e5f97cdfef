"""
Modal matrices: an algebra with an explicit unary box table and a set of designated elements.

A calculus is checked against a matrix by evaluating its axiom schemas and rules on every
assignment of matrix elements to metavariables.
"""
import logging
from typing import NamedTuple, Tuple

import numpy as np

from ..errors import BadParam
from ..formula.ast import Meta, MetaConst, Var, rebuild
from ..formula.syntax import elements_satisfying
from ..logging_setup import PPrintForLogging
from ..semantics.evaluation import Evaluator, assignments
from .msg import MatrixFailure, MatrixReport

logger = logging.getLogger(__name__)


class ModalMatrix(NamedTuple):
    """
    Parameters
    ----------
    name: str
    algebra: ResiduatedLattice
    box_table: tuple of int
        ``box_table[x]`` is the index of ``[]x``
    designated: tuple of int
        Indices of the designated elements
    """

    name: str
    algebra: object
    box_table: Tuple[int, ...]
    designated: Tuple[int, ...]

    def describe(self):
        labels = self.algebra.labels
        lines = [f"matrix {self.name} over {self.algebra.reference}"]
        lines += [f"  [] {labels[x]} = {labels[y]}" for x, y in enumerate(self.box_table)]
        lines.append("  designated: " + " ".join(labels[x] for x in self.designated))
        return "\n".join(lines) + "\n"

    def value(self, phi, assignment):
        """Label of ``phi`` under ``assignment`` (variable -> label), reading ``[]`` from the table."""
        valuation = {name: self.algebra.index(label) for name, label in assignment.items()}
        result = Evaluator(self.algebra, valuation, box_table=self.box_table)(phi)
        return self.algebra.labels[int(result)]

    def designates(self, phi, assignment):
        return self.algebra.index(self.value(phi, assignment)) in self.designated


def modal_matrix(name, algebra, box, designated):
    """
    Build a checked :class:`ModalMatrix`.

    Parameters
    ----------
    box: sequence or callable
        Box table as labels or indices in element order, or a function from element index to
        element index
    designated: iterable
        Labels or indices

    Raises
    ------
    BadParam
        Empty designated set, a box table of the wrong length, or unknown elements.
    """

    def as_index(x):
        if isinstance(x, str):
            if x not in algebra.labels:
                raise BadParam(f"{x!r} is not an element of {algebra.reference}")
            return algebra.index(x)
        x = int(x)
        if not 0 <= x < algebra.size:
            raise BadParam(f"Element index {x} out of range for {algebra.reference}")
        return x

    table = [box(x) for x in algebra.elements] if callable(box) else list(box)
    if len(table) != algebra.size:
        raise BadParam(f"Box table has {len(table)} entries, {algebra.reference} has {algebra.size} elements")
    chosen = sorted({as_index(x) for x in designated})
    if not chosen:
        raise BadParam("A matrix needs at least one designated element")
    return ModalMatrix(name, algebra, tuple(as_index(x) for x in table), tuple(chosen))


def _as_formula(node, element_names):
    """Metavariables become variables; element metavariables stay separate names."""
    if isinstance(node, Meta):
        return Var(node.name)
    if isinstance(node, MetaConst):
        return Var(element_names[node.name])
    if not node.children:
        return node
    return rebuild(node, [_as_formula(child, element_names) for child in node.children])


class _Instance(NamedTuple):
    name: str
    kind: str
    premises: tuple
    conclusion: object
    metas: tuple
    conditions: dict


def _matrix_values(matrix, names, conditions):
    """Assignments of matrix elements to ``names``; element metavariables respect side conditions."""
    table = assignments(matrix.algebra.size, names)
    if not names:
        return table, 1
    count = len(next(iter(table.values())))
    keep = np.ones(count, dtype=bool)
    for name, condition in conditions.items():
        if name in table:
            keep &= np.isin(table[name], elements_satisfying(matrix.algebra, condition))
    return {name: values[keep] for name, values in table.items()}, int(keep.sum())


def _first_failure(matrix, instance):
    names = list(instance.metas)
    values, count = _matrix_values(matrix, names, instance.conditions)
    if count == 0:
        return None
    evaluator = Evaluator(matrix.algebra, values, box_table=matrix.box_table)
    designated = np.asarray(matrix.designated)

    def holds(phi):
        return np.broadcast_to(np.isin(evaluator(phi), designated), (count,))

    fails = ~holds(instance.conclusion)
    for phi in instance.premises:
        fails &= holds(phi)
    if not fails.any():
        return None
    first = int(np.argmax(fails))
    labels = matrix.algebra.labels
    witness = {name: labels[int(values[name][first])] for name in names}
    return MatrixFailure(
        name=instance.name,
        kind=instance.kind,
        witness=witness,
        premises=[str(phi) for phi in instance.premises],
        conclusion=str(instance.conclusion),
    )


def _element_names(schema_like):
    return {name: f"${name}" for name in schema_like.element_metavariables}


def _instances(calc):
    for schema in calc.axioms:
        names = _element_names(schema)
        conditions = {names[k]: v for k, v in schema.conditions}
        metas = tuple(schema.metavariables) + tuple(names[k] for k in schema.element_metavariables)
        yield _Instance(schema.name, "axiom", (), _as_formula(schema.formula, names), metas, conditions)
    for rule in calc.rules:
        names = _element_names(rule)
        conditions = {names[k]: v for k, v in rule.conditions}
        metas = tuple(rule.metavariables) + tuple(names[k] for k in rule.element_metavariables)
        premises = tuple(_as_formula(phi, names) for phi in rule.premises)
        yield _Instance(rule.name, "rule", premises, _as_formula(rule.conclusion, names), metas, conditions)


def matrix_soundness(matrix, calc):
    """
    Check the axioms and rules of a calculus against a modal matrix.

    An axiom fails when some assignment of elements to its metavariables gives a value outside the
    designated set; a rule fails when some assignment designates every premise but not the
    conclusion. Element metavariables range over the matrix elements meeting their side condition.
    The non-modal base of the calculus is not checked.

    Parameters
    ----------
    matrix: ModalMatrix
    calc: Calculus

    Returns
    -------
    MatrixReport
        One failure per failing axiom or rule name, with the first witness in assignment order
        (metavariables sorted by name, the first varying slowest).
    """
    checked, failures = [], []
    failed = set()
    for instance in _instances(calc):
        key = (instance.kind, instance.name)
        if key not in checked:
            checked.append(key)
        if key in failed:
            continue
        failure = _first_failure(matrix, instance)
        if failure is not None:
            failed.add(key)
            failures.append(failure)
            logger.debug("Matrix %s: %s", matrix.name, PPrintForLogging(failure.witness))
    logger.info("Matrix %s against %s: %d failing", matrix.name, calc.reference, len(failures))
    checked = [f"{kind} {name}" for kind, name in checked]
    return MatrixReport(matrix=matrix.name, checked=checked, failures=failures)


def rule_separation_matrices():
    """
    Two matrices over ``product(lukasiewicz(3),boolean2)`` designating ``(1,1)``.

    The first boxes every element with first coordinate ``0`` to ``(0,0)`` and the others to
    ``(1,1)``; it satisfies every axiom and rule of ``table5(lukasiewicz(3))`` but ``R_0.5``.
    The second boxes every element with first coordinate ``1`` to ``(1,1)`` and the others to
    ``(0.5,1)``; only ``R_1`` fails.
    """
    from ..algebra.presets import boolean2, lukasiewicz, product

    first, second = lukasiewicz(3), boolean2()
    algebra = product(first, second)
    top = algebra.index("(1,1)")

    def coordinate(x):
        return first.labels[x // second.size]

    low = algebra.index("(0,0)")
    middle = algebra.index("(0.5,1)")
    box = modal_matrix("box", algebra, lambda x: low if coordinate(x) == "0" else top, [top])
    box_prime = modal_matrix("box'", algebra, lambda x: top if coordinate(x) == "1" else middle, [top])
    return box, box_prime


def constant_matrix(algebra, name="constant-top"):
    """The matrix boxing everything to the top, designating the top."""
    return modal_matrix(name, algebra, lambda x: algebra.top, [algebra.top])


