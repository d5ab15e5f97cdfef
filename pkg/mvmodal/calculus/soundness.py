"""
Bounded soundness probes for calculi.

Theorems, axiom instances and rule conclusions of a modal calculus are validated by bounded
search over the calculus's frame class; for a non-modal calculus they are checked exactly as
tautologies of the algebra.
"""
import itertools
import logging
from typing import Any, Dict, List, Optional

from pydantic import BaseModel

from ..errors import PrerequisiteFails
from ..formula.ast import Const, Var
from ..formula.syntax import Schema, elements_satisfying, instantiate
from .base import EXPLICIT, Rule

logger = logging.getLogger(__name__)


class SoundnessReport(BaseModel):
    calculus: str
    frame_class: Optional[str]
    max_worlds: int
    checked: List[str] = []
    skipped: int = 0
    violations: List[Dict[str, Any]] = []

    @property
    def sound(self):
        return not self.violations

    def text(self):
        scope = f"{self.frame_class or 'non-modal'}, up to {self.max_worlds} world(s)"
        counts = f"{len(self.checked)} formula(s) checked [{scope}], {len(self.violations)} violation(s)"
        lines = [f"{self.calculus}: {counts}"]
        for violation in self.violations:
            lines.append(f"  refuted: {violation['formula']}")
        return "\n".join(lines) + "\n"


def _require_probe(calc):
    if calc.base == EXPLICIT:
        raise PrerequisiteFails(f"{calc.reference} has no non-modal oracle; soundness probing is disabled")


def _violation(calc, phi, budget, frame_class):
    """``None`` when ``phi`` survives, else a record of its refutation."""
    from ..search.consequence import nonmodal_counterexample
    from ..search.enumeration import validity_search

    if frame_class is None:
        witness = nonmodal_counterexample(calc.algebra, [], phi, abstract=True)
        return None if witness is None else {"formula": str(phi), "assignment": witness}
    verdict = validity_search(calc.algebra, frame_class, phi, budget)
    if verdict.refuted:
        logger.warning("Soundness violation in %s: %s", calc.reference, phi)
        return verdict.record()
    return None


def _frame_class(calc, frame_class):
    from ..semantics.kripke import FrameClass

    if frame_class is None:
        return calc.frame_class
    return FrameClass.parse(frame_class) if isinstance(frame_class, str) else frame_class


def _report(calc, frame_class, budget, **kwargs):
    from ..search.enumeration import as_budget

    return SoundnessReport(
        calculus=calc.reference,
        frame_class=None if frame_class is None else frame_class.value,
        max_worlds=as_budget(budget).max_worlds,
        **kwargs,
    )


def soundness_probe(calc, derivations, budget, *, frame_class=None):
    """
    Bounded-validate every theorem of checked derivations.

    Parameters
    ----------
    calc: Calculus
    derivations: iterable of Derivation
        Derivations that check ok over ``calc``; only steps depending on no assumption are probed
    budget: SearchBudget or int
    frame_class: FrameClass or str, optional
        Defaults to the calculus's class.

    Returns
    -------
    SoundnessReport
        A violation is a bug in the calculus or in the checker.

    Raises
    ------
    PrerequisiteFails
        The calculus has an explicit base.
    """
    from .derivation import theorem_formulas

    _require_probe(calc)
    frame_class = _frame_class(calc, frame_class)
    checked, violations = [], []
    for derivation in derivations:
        for phi in theorem_formulas(derivation):
            checked.append(str(phi))
            found = _violation(calc, phi, budget, frame_class)
            if found is not None:
                violations.append(found)
    return _report(calc, frame_class, budget, checked=checked, violations=violations)


def fresh_variables(count):
    """``p``, ``q``, ``r``, ``s``, ``t``, then ``p5``, ``p6``, ..."""
    names = ["p", "q", "r", "s", "t"]
    return [names[i] if i < len(names) else f"p{i}" for i in range(count)]


def _element_bindings(algebra, names, conditions):
    choices = [
        [Const(algebra.labels[a]) for a in elements_satisfying(algebra, conditions.get(name, "any"))]
        for name in names
    ]
    for choice in itertools.product(*choices):
        yield dict(zip(names, choice))


def axiom_instances(calc, schema):
    """The instances of a schema with distinct fresh variables and every admissible element."""
    metas = schema.metavariables
    binding = dict(zip(metas, map(Var, fresh_variables(len(metas)))))
    conditions = dict(schema.conditions)
    for elements in _element_bindings(calc.algebra, schema.element_metavariables, conditions):
        yield instantiate(schema, {**binding, **elements})


def axiom_soundness(calc, budget, *, frame_class=None):
    """
    Bounded-validate every axiom schema of a calculus on fresh variables.

    Returns
    -------
    SoundnessReport
    """
    _require_probe(calc)
    frame_class = _frame_class(calc, frame_class)
    checked, violations = [], []
    for schema in calc.axioms:
        for phi in axiom_instances(calc, schema):
            checked.append(str(phi))
            found = _violation(calc, phi, budget, frame_class)
            if found is not None:
                found["axiom"] = schema.name
                violations.append(found)
    logger.info("Checked %d axiom instance(s) of %s", len(checked), calc.reference)
    return _report(calc, frame_class, budget, checked=checked, violations=violations)


def _as_schema(rule, phi):
    return Schema(rule.name, phi, rule.conditions)


def rule_instances(calc, rule, pool):
    """
    Instances ``(premises, conclusion)`` of a rule with formula metavariables drawn from ``pool``.
    """
    metas = rule.metavariables
    conditions = dict(rule.conditions)
    elements = list(_element_bindings(calc.algebra, rule.element_metavariables, conditions))
    for choice in itertools.product(list(pool), repeat=len(metas)):
        for element_binding in elements:
            binding = dict(zip(metas, choice))
            binding.update(element_binding)
            premises = [instantiate(_as_schema(rule, phi), binding) for phi in rule.premises]
            yield premises, instantiate(_as_schema(rule, rule.conclusion), binding)


def rule_soundness(calc, rule, pool, budget, *, frame_class=None):
    """
    Probe a rule on instances drawn from a formula pool.

    Instances whose premises are all exact tautologies of the algebra (boxes read as variables)
    have their conclusion bounded-validated; the others are counted as ``skipped``.

    Parameters
    ----------
    rule: Rule or str
    pool: iterable of Formula

    Returns
    -------
    SoundnessReport
    """
    from ..search.consequence import is_tautology

    _require_probe(calc)
    rule = rule if isinstance(rule, Rule) else calc.rule(rule)
    frame_class = _frame_class(calc, frame_class)
    checked, violations = [], []
    skipped = 0
    for premises, conclusion in rule_instances(calc, rule, pool):
        if not all(is_tautology(calc.algebra, phi, abstract=True) for phi in premises):
            skipped += 1
            continue
        checked.append(str(conclusion))
        found = _violation(calc, conclusion, budget, frame_class)
        if found is not None:
            found["premises"] = [str(phi) for phi in premises]
            violations.append(found)
    logger.info(
        "Rule %s of %s: %d instance(s) checked, %d skipped", rule.name, calc.reference, len(checked), skipped
    )
    return _report(calc, frame_class, budget, checked=checked, skipped=skipped, violations=violations)

