"""
Named algebras and the reference syntax used on the command line and in files.

References are preset expressions such as ``lukasiewicz(3)``, ``product(boolean2, godel(3))`` or
paths to algebra files; a trailing ``^c`` switches on canonical constants.
"""
import functools
import logging
import os
from decimal import Decimal
from fractions import Fraction

import lark
import numpy as np

from ..errors import AlgebraFormatError, BadParam
from .lattice import ResiduatedLattice, build_lattice

logger = logging.getLogger(__name__)

_REFERENCE_GRAMMAR = r"""
    ?start: algebra
    algebra: NAME ("(" [arg ("," arg)*] ")")?
    ?arg: algebra
        | INT -> number

    NAME: /[a-z_][a-z0-9_]*/
    INT: /\d+/

    %import common.WS
    %ignore WS
"""

_reference_parser = lark.Lark(_REFERENCE_GRAMMAR, start="start", parser="lalr")


def ratio_label(numerator, denominator):
    """Display label of a rational truth value: decimals when finite, ``m/d`` otherwise."""
    value = Fraction(numerator, denominator)
    if value.denominator == 1:
        return str(value.numerator)
    d = value.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    if d != 1:
        return f"{value.numerator}/{value.denominator}"
    return format(Decimal(value.numerator) / Decimal(value.denominator), "f")


def _chain_order(n):
    idx = np.arange(n)
    return idx[:, None] <= idx[None, :]


def _chain_labels(n):
    return [ratio_label(m, n - 1) for m in range(n)]


def _check_size(n):
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise BadParam(f"A chain needs at least 2 elements, got {n!r}")


def lukasiewicz(n):
    """The n-element MV chain with ``x * y = max(0, x + y - 1)``."""
    _check_size(n)
    idx = np.arange(n)
    fusion = np.maximum(0, idx[:, None] + idx[None, :] - (n - 1))
    return build_lattice(_chain_labels(n), _chain_order(n), fusion, name=f"lukasiewicz({n})")


def godel(n):
    """The n-element Gödel chain (fusion is the minimum)."""
    _check_size(n)
    idx = np.arange(n)
    fusion = np.minimum(idx[:, None], idx[None, :])
    return build_lattice(_chain_labels(n), _chain_order(n), fusion, name=f"godel({n})")


def boolean2():
    return build_lattice(["0", "1"], _chain_order(2), [[0, 0], [0, 1]], name="boolean2")


def wnm5():
    """
    Five-element weak nilpotent minimum chain.

    The weak negation is ``n = (1, 0.75, 0.25, 0.25, 0)``; ``x * y = 0`` when ``x <= n(y)`` and
    ``x * y = min(x, y)`` otherwise.
    """
    weak_negation = [4, 3, 1, 1, 0]
    fusion = [[0 if x <= weak_negation[y] else min(x, y) for y in range(5)] for x in range(5)]
    return build_lattice(_chain_labels(5), _chain_order(5), fusion, name="wnm5")


def mtl6():
    """Six-element MTL chain ``0 < a < b < c < d < 1`` with idempotents ``0, a, c, d, 1``."""
    fusion = [
        ["0", "0", "0", "0", "0", "0"],
        ["0", "a", "a", "a", "a", "a"],
        ["0", "a", "a", "a", "b", "b"],
        ["0", "a", "a", "c", "c", "c"],
        ["0", "a", "b", "c", "d", "d"],
        ["0", "a", "b", "c", "d", "1"],
    ]
    return build_lattice(["0", "a", "b", "c", "d", "1"], _chain_order(6), fusion, name="mtl6")


def product(first, second):
    """
    Direct product; elements are ordered lexicographically by component index and labelled
    ``(x,y)``.
    """
    m, n = first.size, second.size
    labels = [f"({x},{y})" for x in first.labels for y in second.labels]
    leq = (first.leq[:, None, :, None] & second.leq[None, :, None, :]).reshape(m * n, m * n)
    fusion = (first.fusion[:, None, :, None] * n + second.fusion[None, :, None, :]).reshape(m * n, m * n)
    return build_lattice(labels, leq, fusion, name=f"product({first.name},{second.name})")


def ordinal_sum(first, second):
    """
    Ordinal sum gluing the top of ``first`` to the bottom of ``second``.

    The universe is ``first`` followed by ``second`` without its bottom; fusion works inside each
    component and is the minimum across components. Labels of ``second`` that clash with labels of
    ``first`` get a ``'`` suffix.
    """
    m = first.size
    upper = [j for j in second.elements if j != second.bottom]
    position = {second.bottom: first.top}
    position.update({j: m + k for k, j in enumerate(upper)})

    taken = set(first.labels)
    labels = list(first.labels)
    for j in upper:
        label = second.labels[j]
        while label in taken:
            label += "'"
        taken.add(label)
        labels.append(label)

    size = m + len(upper)
    in_first = np.zeros(size, dtype=bool)
    in_first[:m] = True
    leq = np.zeros((size, size), dtype=bool)
    fusion = np.zeros((size, size), dtype=np.intp)
    leq[:m, :m] = first.leq
    fusion[:m, :m] = first.fusion
    second_part = [second.bottom] + upper
    for j in second_part:
        for k in second_part:
            x, y = position[j], position[k]
            leq[x, y] = second.leq[j, k]
            fusion[x, y] = position[int(second.fusion[j, k])]
    for x in range(m):
        for y in range(m, size):
            if x != first.top:
                leq[x, y] = True
                fusion[x, y] = fusion[y, x] = x
    leq[first.top, m:] = True
    return build_lattice(labels, leq, fusion, name=f"ordinal_sum({first.name},{second.name})")


_NULLARY = {"boolean2": boolean2, "wnm5": wnm5, "mtl6": mtl6}
_CHAINS = {"lukasiewicz": lukasiewicz, "godel": godel}
_BINARY = {"product": product, "ordinal_sum": ordinal_sum}


@lark.v_args(inline=True)
class _ReferenceBuilder(lark.Transformer):
    def number(self, token):
        return int(token)

    def algebra(self, name, *args):
        args = [arg for arg in args if arg is not None]
        return preset(str(name), *args)


def preset(name, *params):
    """
    Build a named algebra.

    Parameters
    ----------
    name: str
        One of ``lukasiewicz``, ``godel`` (one integer parameter ``n >= 2``), ``boolean2``,
        ``wnm5``, ``mtl6`` (no parameters), ``product``, ``ordinal_sum`` (two algebras)
    params
        Parameters of the preset

    Returns
    -------
    ResiduatedLattice

    Raises
    ------
    BadParam
        Unknown name, wrong number or type of parameters, or ``n < 2``.
    """
    if name in _NULLARY:
        if params:
            raise BadParam(f"Preset {name!r} takes no parameters")
        return _NULLARY[name]()
    if name in _CHAINS:
        if len(params) != 1 or not isinstance(params[0], int):
            raise BadParam(f"Preset {name!r} takes one integer parameter")
        return _CHAINS[name](params[0])
    if name in _BINARY:
        if len(params) != 2 or not all(isinstance(p, ResiduatedLattice) for p in params):
            raise BadParam(f"Preset {name!r} takes two algebras")
        return _BINARY[name](*params)
    raise BadParam(f"Unknown preset {name!r}")


@functools.lru_cache(maxsize=None)
def _preset_from_text(text):
    try:
        tree = _reference_parser.parse(text)
    except lark.exceptions.LarkError as ex:
        raise AlgebraFormatError(f"Can not parse algebra reference {text!r}: {ex}") from None
    try:
        return _ReferenceBuilder().transform(tree)
    except lark.exceptions.VisitError as ex:
        raise ex.orig_exc from None


def resolve_algebra(reference, *, constants=None, base_dir=None):
    """
    Turn an algebra reference into a validated algebra.

    Parameters
    ----------
    reference: str or ResiduatedLattice
        Preset expression or path of an algebra file; ``^c`` at the end enables constants
    constants: bool or None
        Force the constants flag; ``None`` keeps what the reference says
    base_dir: str or None
        Directory that relative file references are resolved against

    Returns
    -------
    ResiduatedLattice
    """
    if isinstance(reference, ResiduatedLattice):
        algebra = reference
    else:
        text = reference.strip()
        with_constants = text.endswith("^c")
        if with_constants:
            text = text[:-2].strip()
        path = os.path.join(base_dir, text) if base_dir and not os.path.isabs(text) else text
        if os.path.isfile(path):
            from .textio import load_algebra

            algebra = load_algebra(path)
        else:
            algebra = _preset_from_text(text)
        if with_constants:
            algebra = algebra.with_constants(True)
    if constants is not None:
        algebra = algebra.with_constants(constants)
    return algebra
