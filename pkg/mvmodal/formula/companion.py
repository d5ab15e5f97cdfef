"""
Translations out of the modal language: the non-modal companion and the standard translation.
"""
import itertools

from ..errors import DiamondUnsupported
from .ast import And, Box, Const, Diamond, Fusion, Implies, Or, Var, Zero, One
from .syntax import modal_depth

INDEXINGS = ("degree", "level")


def companion_variable(n):
    """Name of the fresh variable replacing boxes with index ``n``."""
    return f"$r{n}"


def companion(phi, indexing="degree"):
    """
    The non-modal companion: every ``[]psi`` becomes ``$r<n> -> psi'``.

    Parameters
    ----------
    phi: Formula
        Box-only formula
    indexing: {"degree", "level"}
        ``degree`` indexes each box by its modal degree (the depth of the formula under it);
        ``level`` indexes it by the number of boxes enclosing it.

    Returns
    -------
    Formula
        A formula without modalities; the fresh variables are ``$r0``, ``$r1``, ... and can not
        clash with user variables.

    Raises
    ------
    DiamondUnsupported
        ``phi`` contains a diamond.
    """
    if indexing not in INDEXINGS:
        raise ValueError(f"indexing must be one of {INDEXINGS}, got {indexing!r}")

    def translate(node, level):
        if isinstance(node, Diamond):
            raise DiamondUnsupported(f"The companion translation is defined for box-only formulas: {node}")
        if isinstance(node, Box):
            n = modal_depth(node.child) if indexing == "degree" else level
            return Implies(Var(companion_variable(n)), translate(node.child, level + 1))
        if not node.children:
            return node
        return type(node)(*(translate(child, level) for child in node.children))

    return translate(phi, 0)


# Standard translation

_SYMBOLS = {And: "∧", Or: "∨", Fusion: "⊙", Implies: "→"}


def _fresh_names(free_var):
    for name in ("y", "z", "u", "v", "w"):
        if name != free_var:
            yield name
    for i in itertools.count(1):
        name = f"y{i}"
        if name != free_var:
            yield name


def _predicate(name):
    return name[:1].upper() + name[1:]


def standard_translation(phi, free_var="x"):
    """
    Print the first-order standard translation of ``phi`` at the individual ``free_var``.

    Variables become unary predicates, boxes universally quantified residuations and diamonds
    existentially quantified fusions with the accessibility predicate ``R``::

        []p   ->  ∀y(Rxy → Py)
        <>p   ->  ∃y(Rxy ⊙ Py)
    """
    names = _fresh_names(free_var)

    def translate(node, x, outer):
        if isinstance(node, Var):
            return f"{_predicate(node.name)}{x}"
        if isinstance(node, Zero):
            return "0"
        if isinstance(node, One):
            return "1"
        if isinstance(node, Const):
            return node.label
        if isinstance(node, (Box, Diamond)):
            y = next(names)
            quantifier, link = ("∀", "→") if isinstance(node, Box) else ("∃", "⊙")
            return f"{quantifier}{y}(R{x}{y} {link} {translate(node.child, y, True)})"
        text = f"{translate(node.left, x, False)} {_SYMBOLS[type(node)]} {translate(node.right, x, False)}"
        return text if outer else f"({text})"

    return translate(phi, free_var, True)
