"""
Structural operations on formulas: depth, substitution and schema matching.
"""
import itertools
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from ..errors import PrerequisiteFails
from .ast import (
    Binary,
    Box,
    Const,
    Diamond,
    Formula,
    Meta,
    MetaConst,
    Modal,
    One,
    Var,
    Zero,
    neg,
    rebuild,
    walk,
)
from .parser import parse


def modal_depth(phi):
    """Maximal nesting of modal operators."""
    if isinstance(phi, Modal):
        return 1 + modal_depth(phi.child)
    return max((modal_depth(child) for child in phi.children), default=0)


def box_degrees(phi):
    """
    Modal degree of every modal occurrence, left to right.

    The degree of an occurrence is the modal depth of the formula under it, so
    ``[](p -> []q) -> ([]p -> []q)`` gives ``[1, 0, 0, 0]``.
    """
    return [modal_depth(node.child) for node in walk(phi) if isinstance(node, Modal)]


def substitute(phi, sigma):
    """
    Simultaneous substitution of object variables.

    Parameters
    ----------
    phi: Formula
    sigma: dict
        Variable name -> Formula; unmapped variables are kept.
    """
    if isinstance(phi, Var):
        return sigma.get(phi.name, phi)
    if not phi.children:
        return phi
    return rebuild(phi, [substitute(child, sigma) for child in phi.children])


def diamond_to_box(phi, algebra):
    """
    Rewrite every ``<>psi`` as ``~[]~psi``.

    The rewrite preserves values only over involutive algebras.

    Raises
    ------
    PrerequisiteFails
        The algebra is not involutive.
    """
    from ..algebra.analysis import is_involutive

    if not is_involutive(algebra):
        raise PrerequisiteFails(f"{algebra.reference} is not involutive; <> is not definable from []")

    def rewrite(node):
        if not node.children:
            return node
        children = [rewrite(child) for child in node.children]
        if isinstance(node, Diamond):
            return neg(Box(neg(children[0])))
        return rebuild(node, children)

    return rewrite(phi)


# Schemas

ELEMENT_CONDITIONS = ("any", "coatom", "unique_coatom", "distributive", "idempotent", "boolean")


@dataclass(frozen=True)
class Schema:
    """
    Formula schema.

    ``formula`` may contain :class:`Meta` leaves (standing for any formula) and :class:`MetaConst`
    leaves (standing for a canonical constant). ``conditions`` restricts element metavariables to
    one of :data:`ELEMENT_CONDITIONS`.
    """

    name: str
    formula: Formula
    conditions: Tuple[Tuple[str, str], ...] = field(default=())

    @property
    def metavariables(self):
        return sorted({node.name for node in walk(self.formula) if isinstance(node, Meta)})

    @property
    def element_metavariables(self):
        return sorted({node.name for node in walk(self.formula) if isinstance(node, MetaConst)})

    def condition(self, name):
        return dict(self.conditions).get(name, "any")

    def __str__(self):
        return f"{self.name}: {self.formula}"


def _to_schema_tree(node, elements):
    if isinstance(node, Var):
        return Meta(node.name)
    if isinstance(node, Const) and node.label in elements:
        return MetaConst(node.label)
    if not node.children:
        return node
    return rebuild(node, [_to_schema_tree(child, elements) for child in node.children])


def make_schema(name, text, *, elements=(), conditions=None):
    """
    Build a schema from formula text.

    Every variable of ``text`` becomes a formula metavariable; constants ``@x`` with ``x`` in
    ``elements`` become element metavariables, other constants stay canonical constants.
    """
    formula = _to_schema_tree(parse(text, allow_constants=True), set(elements))
    conditions = tuple(sorted((conditions or {}).items()))
    for element, condition in conditions:
        if condition not in ELEMENT_CONDITIONS:
            raise ValueError(f"Unknown side condition {condition!r} for {element!r}")
    return Schema(name, formula, conditions)


def elements_satisfying(algebra, condition):
    """Element indices meeting a side condition, in index order."""
    from ..algebra import analysis

    if condition == "any":
        return tuple(algebra.elements)
    if condition == "coatom":
        return analysis.coatoms(algebra)
    if condition == "unique_coatom":
        k = analysis.unique_coatom(algebra)
        return () if k is None else (k,)
    if condition == "distributive":
        return analysis.distributive_elements(algebra)
    if condition == "idempotent":
        return analysis.idempotent_elements(algebra)
    if condition == "boolean":
        return analysis.boolean_elements(algebra)
    raise ValueError(f"Unknown side condition {condition!r}")


def _constant_label(node, algebra):
    if isinstance(node, Const):
        return node.label
    if algebra is not None and isinstance(node, Zero):
        return algebra.labels[algebra.bottom]
    if algebra is not None and isinstance(node, One):
        return algebra.labels[algebra.top]
    return None


def _match(pattern, node, binding, algebra):
    if isinstance(pattern, Meta):
        bound = binding.get(pattern.name)
        if bound is None:
            binding[pattern.name] = node
            return True
        return bound == node
    if isinstance(pattern, MetaConst):
        label = _constant_label(node, algebra)
        if label is None:
            return False
        bound = binding.get(pattern.name)
        if bound is None:
            binding[pattern.name] = Const(label)
            return True
        return bound == Const(label)
    if type(pattern) is not type(node):
        return False
    if isinstance(pattern, (Binary, Modal)):
        return all(_match(p, n, binding, algebra) for p, n in zip(pattern.children, node.children))
    return pattern == node


def match_pattern(pattern, phi, binding=None, algebra=None):
    """
    Extend ``binding`` so that ``pattern`` instantiates to ``phi``.

    Side conditions are not checked. Returns the extended copy, or ``None`` on a clash.
    """
    extended = dict(binding or {})
    if not _match(pattern, phi, extended, algebra):
        return None
    return extended


def match_schema(phi, schema, algebra=None) -> Optional[Dict[str, Formula]]:
    """
    Match a formula against a schema.

    Parameters
    ----------
    phi: Formula
    schema: Schema
    algebra: ResiduatedLattice, optional
        Needed to check side conditions on element metavariables; with an algebra ``0`` and
        ``1`` also match element metavariables (as the bottom and top constants).

    Returns
    -------
    dict or None
        Metavariable name -> Formula (a :class:`Const` for element metavariables), or ``None``
        when the formula is not an instance.
    """
    binding = {}
    if not _match(schema.formula, phi, binding, algebra):
        return None
    for name in schema.element_metavariables:
        label = binding[name].label
        if algebra is None:
            continue
        if label not in algebra.labels:
            return None
        if algebra.index(label) not in elements_satisfying(algebra, schema.condition(name)):
            return None
    return binding


def instantiate(schema, binding):
    """Replace the metavariables of a schema according to ``binding``."""

    def fill(node):
        if isinstance(node, (Meta, MetaConst)):
            return binding[node.name]
        if not node.children:
            return node
        return rebuild(node, [fill(child) for child in node.children])

    return fill(schema.formula)


def instances(schema, algebra, formulas):
    """
    All instances of a schema with formula metavariables drawn from ``formulas`` and element
    metavariables from the elements satisfying their side condition.
    """
    metas = schema.metavariables
    elements = schema.element_metavariables
    element_choices = [
        [Const(algebra.labels[a]) for a in elements_satisfying(algebra, schema.condition(name))]
        for name in elements
    ]
    for formula_choice in itertools.product(formulas, repeat=len(metas)):
        for element_choice in itertools.product(*element_choices):
            binding = dict(zip(metas, formula_choice))
            binding.update(zip(elements, element_choice))
            yield instantiate(schema, binding)

