"""
Derivation files and derivation checking.

::

    # (box p * box q) -> box (p * q) with (K) applied twice
    calculus: table3k(lukasiewicz(3)^c)
    1: 1 -> (p -> (q -> p * q)) ; nmtaut
    2: []1 -> [](p -> (q -> p * q)) ; mon 1
    3: []1 ; axiom Box1
    4: [](p -> (q -> p * q)) ; mp 3 2

Justifications:

==================== ================================================================
``assume``           the step is an assumption
``axiom <name>``     an instance of an axiom schema of the calculus
``nmtaut``           a tautology of the algebra, boxed subformulas read as variables
``nmcons i j ...``   follows from steps ``i j ...`` in the algebra, boxes read as variables
``mp i j``           modus ponens (either order)
``nec i``            necessitation
``mon i``            monotonicity
``rule <name> i...`` a rule of the calculus, premises in the rule's order
==================== ================================================================
"""
import logging
import os
import re
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from pydantic import BaseModel

from ..errors import DerivationFormatError, FormulaSyntaxError, InvalidStep, MvModalError
from ..formula.ast import Box, Const, Implies, Var, constants, rebuild
from ..formula.parser import parse
from ..formula.syntax import match_schema
from .base import EXPLICIT, PLAIN_ORACLE

logger = logging.getLogger(__name__)

JUSTIFICATIONS = ("assume", "axiom", "nmtaut", "nmcons", "mp", "nec", "mon", "rule")

_ARITY = {"assume": 0, "nmtaut": 0, "mp": 2, "nec": 1, "mon": 1}


@dataclass(frozen=True)
class Justification:
    kind: str
    name: Optional[str] = None
    cites: Tuple[int, ...] = field(default=())

    def __str__(self):
        parts = [self.kind] + ([self.name] if self.name else []) + [str(i) for i in self.cites]
        return " ".join(parts)


@dataclass(frozen=True)
class Step:
    number: int
    formula: object
    justification: Justification


@dataclass(frozen=True)
class Derivation:
    """
    Numbered steps over a preset calculus.

    ``calculus`` and ``algebra`` are the references from the ``calculus:`` line.
    """

    calculus: str
    algebra: str
    steps: Tuple[Step, ...]
    base_dir: Optional[str] = None

    @property
    def assumptions(self):
        return [step.formula for step in self.steps if step.justification.kind == "assume"]

    def build_calculus(self):
        """The preset calculus named on the ``calculus:`` line."""
        from ..algebra.presets import resolve_algebra
        from .presets import preset_calculus

        return preset_calculus(self.calculus, resolve_algebra(self.algebra, base_dir=self.base_dir))


_HEADER = re.compile(r"^calculus\s*:\s*([A-Za-z_][A-Za-z0-9_]*)\s*\((.*)\)\s*$")
_STEP = re.compile(r"^(\d+)\s*:\s*(.*?)\s*;\s*(.*?)\s*$")


def _parse_justification(text, number):
    words = text.split()
    if not words or words[0] not in JUSTIFICATIONS:
        raise DerivationFormatError(
            f"step {number}: unknown justification {text!r}; expected one of {JUSTIFICATIONS}"
        )
    kind, rest = words[0], words[1:]
    name = None
    if kind in ("axiom", "rule"):
        if not rest:
            raise DerivationFormatError(f"step {number}: {kind} needs a name")
        name, rest = rest[0], rest[1:]
    try:
        cites = tuple(int(word) for word in rest)
    except ValueError:
        raise DerivationFormatError(f"step {number}: step numbers expected in {text!r}") from None
    expected = _ARITY.get(kind)
    if kind == "axiom":
        expected = 0
    if expected is not None and len(cites) != expected:
        raise DerivationFormatError(f"step {number}: {kind} cites {expected} step(s), got {len(cites)}")
    if kind == "nmcons" and not cites:
        raise DerivationFormatError(f"step {number}: nmcons needs at least one step")
    return Justification(kind, name, cites)


def parse_derivation(text, *, base_dir=None):
    """
    Parse the derivation text format.

    Formulas may use reserved ``$`` variables.

    Raises
    ------
    DerivationFormatError
        Missing ``calculus:`` line, malformed or repeated step numbers, bad formulas.
    """
    calculus = algebra = None
    steps = []
    seen = set()
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        header = _HEADER.match(line)
        if header:
            if calculus is not None:
                raise DerivationFormatError("More than one calculus line")
            calculus, algebra = header.group(1), header.group(2).strip()
            continue
        found = _STEP.match(line)
        if not found:
            raise DerivationFormatError(f"Expected 'n: formula ; justification', got {line!r}")
        number = int(found.group(1))
        if number in seen:
            raise DerivationFormatError(f"Step {number} appears twice")
        if steps and number < steps[-1].number:
            raise DerivationFormatError(f"Step {number} follows step {steps[-1].number}")
        seen.add(number)
        try:
            formula = parse(found.group(2), allow_reserved=True)
        except FormulaSyntaxError as ex:
            raise DerivationFormatError(f"step {number}: {ex}") from ex
        steps.append(Step(number, formula, _parse_justification(found.group(3), number)))
    if calculus is None:
        raise DerivationFormatError("Missing 'calculus: <preset>(<algebra>)' line")
    return Derivation(calculus, algebra, tuple(steps), base_dir)


def load_derivation(path):
    with open(path) as f:
        text = f.read()
    return parse_derivation(text, base_dir=os.path.dirname(os.path.abspath(path)))


class DerivationReport(BaseModel):
    calculus: str
    steps: int
    ok: bool
    invalid_step: Optional[int] = None
    reason: Optional[str] = None
    theorems: List[str] = []

    def text(self):
        if self.ok:
            return f"ok: {self.steps} step(s) over {self.calculus}\n"
        return f"invalid step {self.invalid_step}: {self.reason}\n"


# Checking


def _abstract_constants(formulas):
    """Read canonical constants as fresh variables ``$c0``, ``$c1``, ..."""
    names = {label: Var(f"$c{k}") for k, label in enumerate(constants(*formulas))}

    def replace(node):
        if isinstance(node, Const):
            return names[node.label]
        if not node.children:
            return node
        return rebuild(node, [replace(child) for child in node.children])

    return [replace(phi) for phi in formulas]


def _follows(calc, premises, conclusion):
    """Non-modal consequence in the base of the calculus, boxes read as variables."""
    from ..search.consequence import nonmodal_counterexample

    algebra = calc.algebra
    formulas = list(premises) + [conclusion]
    if calc.base == PLAIN_ORACLE:
        formulas = _abstract_constants(formulas)
        algebra = algebra.with_constants(False)
    return nonmodal_counterexample(algebra, formulas[:-1], formulas[-1], abstract=True)


class _Checker:
    def __init__(self, calc):
        self.calc = calc
        self.formulas = {}

    def cited(self, step):
        formulas = []
        for i in step.justification.cites:
            if i >= step.number:
                raise InvalidStep(step.number, f"cites step {i}, which is not earlier")
            if i not in self.formulas:
                raise InvalidStep(step.number, f"cites step {i}, which does not exist")
            formulas.append(self.formulas[i])
        return formulas

    def require_rule(self, step, name):
        if not self.calc.has_rule(name):
            raise InvalidStep(step.number, f"{self.calc.reference} has no rule {name}")

    def check(self, step):
        kind = step.justification.kind
        phi = step.formula
        cited = self.cited(step)
        if kind == "assume":
            return
        if kind == "axiom":
            schemas = self.calc.axiom(step.justification.name)
            if not any(match_schema(phi, schema, self.calc.algebra) is not None for schema in schemas):
                raise InvalidStep(step.number, f"not an instance of axiom {step.justification.name}")
        elif kind in ("nmtaut", "nmcons"):
            if self.calc.base == EXPLICIT:
                raise InvalidStep(step.number, f"{self.calc.reference} has no non-modal oracle")
            try:
                witness = _follows(self.calc, cited, phi)
            except MvModalError as ex:
                raise InvalidStep(step.number, str(ex)) from ex
            if witness is not None:
                what = "a tautology" if kind == "nmtaut" else "a consequence of the cited steps"
                raise InvalidStep(step.number, f"not {what}; fails at {witness}")
        elif kind == "mp":
            self.require_rule(step, "MP")
            first, second = cited
            if second != Implies(first, phi) and first != Implies(second, phi):
                raise InvalidStep(step.number, "modus ponens needs 'A' and 'A -> B' with B the step")
        elif kind == "nec":
            self.require_rule(step, "N")
            if phi != Box(cited[0]):
                raise InvalidStep(step.number, f"necessitation of step {step.justification.cites[0]} is not this")
        elif kind == "mon":
            self.require_rule(step, "Mon")
            premise = cited[0]
            if not isinstance(premise, Implies) or phi != Implies(Box(premise.left), Box(premise.right)):
                raise InvalidStep(step.number, "monotonicity needs 'A -> B' and gives '[]A -> []B'")
        else:
            rule = self.calc.rule(step.justification.name)
            if len(cited) != len(rule.premises):
                raise InvalidStep(
                    step.number, f"rule {rule.name} has {len(rule.premises)} premise(s), {len(cited)} cited"
                )
            if rule.match(cited, phi, self.calc.algebra) is None:
                raise InvalidStep(step.number, f"not an application of rule {rule.name}")


def check_derivation(calc, derivation, *, strict=True):
    """
    Check every step of a derivation against a calculus.

    Parameters
    ----------
    calc: Calculus
    derivation: Derivation
    strict: bool
        Raise at the first invalid step; otherwise report it.

    Returns
    -------
    DerivationReport
        ``theorems`` lists the steps that depend on no assumption.

    Raises
    ------
    InvalidStep
        ``strict`` and a step does not follow from its justification.
    UnknownSchema
        A step cites an axiom or rule the calculus does not have.
    """
    checker = _Checker(calc)
    depends = {}
    theorems = []
    for step in derivation.steps:
        try:
            checker.check(step)
        except InvalidStep as ex:
            logger.info("Invalid step in derivation over %s: %s", calc.reference, ex)
            if strict:
                raise
            return DerivationReport(
                calculus=calc.reference,
                steps=len(derivation.steps),
                ok=False,
                invalid_step=ex.step,
                reason=ex.reason,
                theorems=theorems,
            )
        checker.formulas[step.number] = step.formula
        kind = step.justification.kind
        depends[step.number] = kind == "assume" or any(depends[i] for i in step.justification.cites)
        if not depends[step.number]:
            theorems.append(str(step.formula))
    return DerivationReport(calculus=calc.reference, steps=len(derivation.steps), ok=True, theorems=theorems)


def theorem_formulas(derivation):
    """Formulas of the steps that depend on no assumption (no checking)."""
    depends = {}
    found = []
    for step in derivation.steps:
        kind = step.justification.kind
        depends[step.number] = kind == "assume" or any(depends.get(i, True) for i in step.justification.cites)
        if not depends[step.number]:
            found.append(step.formula)
    return found
