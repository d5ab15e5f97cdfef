"""
Parser and printer for the ASCII formula syntax.

===========  ==========================================  ==================
Syntax       Meaning                                     Binding
===========  ==========================================  ==================
``~p``       ``p -> 0``                                  tightest (prefix)
``[]p``      box
``<>p``      diamond
``p^3``      ``p * p * p``                               postfix on atoms
``3.p``      ``p + p + p``                               prefix
``p * q``    fusion                                      left
``p + q``    ``~(~p * ~q)``                              left
``p /\\ q``   meet                                        left
``p \\/ q``   join                                        left
``p -> q``   residuum                                    right
``p <-> q``  ``(p -> q) * (q -> p)``                     left, loosest
``0 1``      bottom and top
``@0.5``     canonical constant (``@{1/3}`` for any label)
===========  ==========================================  ==================
"""
import re

import lark

from ..errors import FormulaSyntaxError, UnknownConstant
from .ast import (
    ONE,
    ZERO,
    And,
    Box,
    Const,
    Diamond,
    Fusion,
    Implies,
    Meta,
    MetaConst,
    Or,
    Var,
    Zero,
    iff,
    neg,
    oplus,
    power,
    times,
)

_GRAMMAR = r"""
    ?start: formula

    ?formula: imp
        | formula "<->" imp         -> iff
    ?imp: disj
        | disj "->" imp             -> implies
    ?disj: conj
        | disj "\\/" conj           -> or_
    ?conj: osum
        | conj "/\\" osum           -> and_
    ?osum: fus
        | osum "+" fus              -> oplus
    ?fus: unary
        | fus "*" unary             -> fusion
    ?unary: "~" unary               -> neg
        | "[]" unary                -> box
        | "<>" unary                -> diamond
        | NUMBER "." unary          -> times
        | pow
    ?pow: atom
        | atom "^" NUMBER           -> power
    ?atom: NUMBER                   -> number
        | VAR                       -> var
        | CONST                     -> const
        | "(" formula ")"

    VAR: /\$?[a-z][a-zA-Z0-9_]*/
    CONST: /@\{[^{}]*\}/ | /@[A-Za-z0-9_.']+/
    NUMBER: /\d+/

    %import common.WS
    %ignore WS
"""

_parser = lark.Lark(_GRAMMAR, start="start", parser="lalr", propagate_positions=True)


@lark.v_args(inline=True)
class _FormulaBuilder(lark.Transformer):
    def __init__(self, text, allow_constants, allow_reserved):
        super().__init__()
        self._text = text
        self._allow_constants = allow_constants
        self._allow_reserved = allow_reserved

    def iff(self, a, b):
        return iff(a, b)

    def implies(self, a, b):
        return Implies(a, b)

    def or_(self, a, b):
        return Or(a, b)

    def and_(self, a, b):
        return And(a, b)

    def oplus(self, a, b):
        return oplus(a, b)

    def fusion(self, a, b):
        return Fusion(a, b)

    def neg(self, a):
        return neg(a)

    def box(self, a):
        return Box(a)

    def diamond(self, a):
        return Diamond(a)

    def times(self, m, a):
        return times(int(m), a)

    def power(self, a, m):
        return power(a, int(m))

    def number(self, token):
        if token == "0":
            return ZERO
        if token == "1":
            return ONE
        raise FormulaSyntaxError(f"Numeral {token!r} is not a formula", self._text, token.start_pos)

    def var(self, token):
        if token.startswith("$") and not self._allow_reserved:
            raise FormulaSyntaxError(
                f"Variable names starting with '$' are reserved: {token!r}", self._text, token.start_pos
            )
        return Var(str(token))

    def const(self, token):
        if not self._allow_constants:
            raise UnknownConstant(f"Canonical constant {token!r} used while constants are disabled")
        label = token[1:]
        if label.startswith("{"):
            label = label[1:-1]
        return Const(label)


def parse(text, *, allow_constants=True, allow_reserved=False):
    """
    Parse a formula.

    Parameters
    ----------
    text: str
        Formula in the ASCII syntax
    allow_constants: bool
        Accept canonical constants ``@label``
    allow_reserved: bool
        Accept variables starting with ``$`` (produced by the companion translation)

    Returns
    -------
    Formula

    Raises
    ------
    FormulaSyntaxError
        The text is not a formula; ``position`` is the offending offset.
    UnknownConstant
        A constant is used while constants are disabled.
    """
    try:
        tree = _parser.parse(text)
    except lark.exceptions.UnexpectedInput as ex:
        position = getattr(ex, "pos_in_stream", None)
        if position is None or position < 0:
            position = len(text)
        raise FormulaSyntaxError("Can not parse formula", text, position) from None
    try:
        return _FormulaBuilder(text, allow_constants, allow_reserved).transform(tree)
    except lark.exceptions.VisitError as ex:
        raise ex.orig_exc from None


# Printing

_LEVEL_IFF, _LEVEL_IMP, _LEVEL_DISJ, _LEVEL_CONJ, _LEVEL_OSUM, _LEVEL_FUS, _LEVEL_UNARY, _LEVEL_ATOM = range(8)
_PLAIN_LABEL = re.compile(r"^[A-Za-z0-9_.']+$")


def _negated(node):
    """``x`` when ``node`` is ``x -> 0``."""
    if isinstance(node, Implies) and isinstance(node.right, Zero):
        return node.left
    return None


def _as_oplus(node):
    inner = _negated(node)
    if isinstance(inner, Fusion):
        a, b = _negated(inner.left), _negated(inner.right)
        if a is not None and b is not None:
            return a, b
    return None


def _as_iff(node):
    if isinstance(node, Fusion) and isinstance(node.left, Implies) and isinstance(node.right, Implies):
        if node.left.left == node.right.right and node.left.right == node.right.left:
            return node.left.left, node.left.right
    return None


def _wrap(text_level, minimum):
    text, level = text_level
    return text if level >= minimum else f"({text})"


def _render(node):
    if isinstance(node, Var):
        return node.name, _LEVEL_ATOM
    if isinstance(node, Zero):
        return "0", _LEVEL_ATOM
    if isinstance(node, type(ONE)):
        return "1", _LEVEL_ATOM
    if isinstance(node, Const):
        label = node.label if _PLAIN_LABEL.match(node.label) else "{" + node.label + "}"
        return f"@{label}", _LEVEL_ATOM
    if isinstance(node, Meta):
        return node.name, _LEVEL_ATOM
    if isinstance(node, MetaConst):
        return f"@{node.name}", _LEVEL_ATOM
    if isinstance(node, Box):
        return "[]" + _wrap(_render(node.child), _LEVEL_UNARY), _LEVEL_UNARY
    if isinstance(node, Diamond):
        return "<>" + _wrap(_render(node.child), _LEVEL_UNARY), _LEVEL_UNARY

    pair = _as_iff(node)
    if pair is not None:
        a, b = pair
        return f"{_wrap(_render(a), _LEVEL_IFF)} <-> {_wrap(_render(b), _LEVEL_IMP)}", _LEVEL_IFF
    pair = _as_oplus(node)
    if pair is not None:
        a, b = pair
        return f"{_wrap(_render(a), _LEVEL_OSUM)} + {_wrap(_render(b), _LEVEL_FUS)}", _LEVEL_OSUM
    inner = _negated(node)
    if inner is not None:
        return "~" + _wrap(_render(inner), _LEVEL_UNARY), _LEVEL_UNARY

    if isinstance(node, Implies):
        left, right = _wrap(_render(node.left), _LEVEL_DISJ), _wrap(_render(node.right), _LEVEL_IMP)
        return f"{left} -> {right}", _LEVEL_IMP
    if isinstance(node, Or):
        left, right = _wrap(_render(node.left), _LEVEL_DISJ), _wrap(_render(node.right), _LEVEL_CONJ)
        return f"{left} \\/ {right}", _LEVEL_DISJ
    if isinstance(node, And):
        left, right = _wrap(_render(node.left), _LEVEL_CONJ), _wrap(_render(node.right), _LEVEL_OSUM)
        return f"{left} /\\ {right}", _LEVEL_CONJ
    if isinstance(node, Fusion):
        return f"{_wrap(_render(node.left), _LEVEL_FUS)} * {_wrap(_render(node.right), _LEVEL_UNARY)}", _LEVEL_FUS
    raise TypeError(f"Not a formula: {node!r}")


def render(formula):
    """
    Print a formula in the ASCII syntax with as few parentheses as the grammar allows.

    Negations, strong disjunctions and biconditionals are printed with their sugar, so that
    ``parse(render(phi)) == phi`` and ``render(parse("p + p")) == "p + p"``.
    """
    return _render(formula)[0]
