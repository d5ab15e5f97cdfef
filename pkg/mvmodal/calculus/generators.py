"""
Book-keeping and witnessing axioms for canonical constants.
"""
from ..errors import ConstantsDisabled
from ..formula.ast import ONE, ZERO, And, Const, Fusion, Implies, Or, Var, disj, iff

BOOKKEEPING_OPERATIONS = ((And, "meet"), (Or, "join"), (Fusion, "fusion"), (Implies, "residuum"))


def constant(algebra, a):
    """The constant naming element ``a``; the bounds are written ``0`` and ``1``."""
    if a == algebra.bottom:
        return ZERO
    if a == algebra.top:
        return ONE
    return Const(algebra.labels[a])


def _require_constants(algebra):
    if not algebra.constants:
        raise ConstantsDisabled(f"Canonical constants are disabled for {algebra.reference}")


def generate_bookkeeping(algebra):
    """
    ``(@a * @b) <-> @c`` with ``c = a * b`` for every pair of elements and every binary
    connective, connectives outermost, then ``a``, then ``b``.

    Raises
    ------
    ConstantsDisabled
    """
    _require_constants(algebra)
    formulas = []
    for connective, table in BOOKKEEPING_OPERATIONS:
        values = getattr(algebra, table)
        for a in algebra.elements:
            for b in algebra.elements:
                left = connective(constant(algebra, a), constant(algebra, b))
                formulas.append(iff(left, constant(algebra, int(values[a, b]))))
    return formulas


def generate_witnessing(algebra, variable="p"):
    """
    ``(p <-> @a1) \\/ ... \\/ (p <-> @an)`` over all elements in index order.

    Raises
    ------
    ConstantsDisabled
    """
    _require_constants(algebra)
    p = Var(variable)
    return disj([iff(p, constant(algebra, a)) for a in algebra.elements])
