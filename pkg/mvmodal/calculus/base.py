"""
Rules and calculi.

A calculus is a list of axiom schemas and rules over a fixed algebra, together with the way the
non-modal base is given: an exact oracle deciding the tautologies of the algebra (with boxed
subformulas read as variables), or an explicit list of axioms.
"""
import logging
import re
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

from ..errors import UnknownSchema
from ..formula.ast import Formula, Meta, MetaConst, walk
from ..formula.syntax import Schema, elements_satisfying, instantiate, match_pattern

logger = logging.getLogger(__name__)

ORACLE = "oracle"
PLAIN_ORACLE = "plain_oracle"
EXPLICIT = "explicit"
BASES = (ORACLE, PLAIN_ORACLE, EXPLICIT)


@dataclass(frozen=True)
class Rule:
    """
    Rule with finitely many premise schemas.

    Metavariables are shared between the premises and the conclusion. Element-indexed families
    (such as the rules for characterizing formulas) are expanded into one rule per index.
    """

    name: str
    premises: Tuple[Formula, ...]
    conclusion: Formula
    conditions: Tuple[Tuple[str, str], ...] = field(default=())

    @property
    def metavariables(self):
        formulas = self.premises + (self.conclusion,)
        return sorted({node.name for phi in formulas for node in walk(phi) if isinstance(node, Meta)})

    @property
    def element_metavariables(self):
        formulas = self.premises + (self.conclusion,)
        return sorted({node.name for phi in formulas for node in walk(phi) if isinstance(node, MetaConst)})

    def match(self, premises, conclusion, algebra=None) -> Optional[Dict[str, Formula]]:
        """
        Binding under which the rule turns ``premises`` (in order) into ``conclusion``.

        Returns ``None`` when the formulas are not an application of the rule.
        """
        premises = list(premises)
        if len(premises) != len(self.premises):
            return None
        binding = match_pattern(self.conclusion, conclusion, None, algebra)
        for pattern, phi in zip(self.premises, premises):
            if binding is None:
                return None
            binding = match_pattern(pattern, phi, binding, algebra)
        if binding is None:
            return None
        if algebra is not None:
            conditions = dict(self.conditions)
            for name in self.element_metavariables:
                label = binding[name].label
                if label not in algebra.labels:
                    return None
                if algebra.index(label) not in elements_satisfying(algebra, conditions.get(name, "any")):
                    return None
        return binding

    def instantiate(self, binding):
        """``(premises, conclusion)`` of the rule under ``binding``."""
        fill = [instantiate(Schema(self.name, phi, self.conditions), binding) for phi in self.premises]
        return fill, instantiate(Schema(self.name, self.conclusion, self.conditions), binding)

    def __str__(self):
        above = "   ".join(str(phi) for phi in self.premises)
        return f"({self.name}) {above} / {self.conclusion}"


@dataclass(frozen=True)
class Calculus:
    """
    Hilbert-style calculus over a finite algebra.

    Parameters
    ----------
    name: str
        Preset name
    algebra: ResiduatedLattice
        With or without canonical constants
    axioms: tuple of Schema
    rules: tuple of Rule
    base: str
        ``oracle`` (tautologies of ``algebra``), ``plain_oracle`` (tautologies of ``algebra``
        without constants, constants read as variables) or ``explicit`` (only the listed axioms)
    frame_class: FrameClass or None
        Class the theorems are sound for; ``None`` for non-modal calculi
    rule_family: callable, optional
        ``name -> Rule`` for rules generated on demand; returns ``None`` for unknown names
    """

    name: str
    algebra: object
    axioms: Tuple[Schema, ...]
    rules: Tuple[Rule, ...]
    base: str = ORACLE
    frame_class: object = None
    rule_family: Optional[Callable] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.base not in BASES:
            raise ValueError(f"Unknown base {self.base!r}; expected one of {BASES}")

    @property
    def reference(self):
        return f"{self.name}({self.algebra.reference})"

    @property
    def has_oracle(self):
        return self.base != EXPLICIT

    @property
    def modal(self):
        return self.frame_class is not None

    def axiom(self, name):
        """
        Schemas named ``name``; a name may cover a group of axioms (such as the book-keeping
        axioms).
        """
        found = tuple(schema for schema in self.axioms if schema.name == name)
        if not found:
            raise UnknownSchema(f"{self.reference} has no axiom {name!r}")
        return found

    def rule(self, name):
        for rule in self.rules:
            if rule.name == name:
                return rule
        if self.rule_family is not None:
            rule = self.rule_family(name)
            if rule is not None:
                return rule
        raise UnknownSchema(f"{self.reference} has no rule {name!r}")

    def has_rule(self, name):
        try:
            self.rule(name)
        except UnknownSchema:
            return False
        return True

    def describe(self):
        lines = [f"calculus {self.reference} (base: {self.base})"]
        lines += [f"  axiom {schema}" for schema in self.axioms]
        lines += [f"  rule {rule}" for rule in self.rules]
        return "\n".join(lines) + "\n"


_ELEMENT_LIST = re.compile(r"^R_([^\^]+)(?:\^(.+))?$")


def parse_rule_name(name):
    """
    Split ``R_<a>`` or ``R_<a>^<a1>,...,<am>`` into ``(a, [a1, ..., am] or None)``.

    Returns ``None`` for other names.
    """
    found = _ELEMENT_LIST.match(name)
    if found is None:
        return None
    elements = found.group(2)
    return found.group(1), (elements.split(",") if elements else None)
