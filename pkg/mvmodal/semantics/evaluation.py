"""
Vectorized evaluation of formulas over batches of Kripke models.

Values are arrays of element indices. A relation has shape ``batch + (W, W)`` and every
variable value has shape ``batch + (W,)``; batch axes broadcast, so the search engine can
evaluate one formula on many frames and valuations with a single pass over the formula tree.
"""
import numpy as np

from ..errors import DiamondUnsupported, UnknownConstant, UnknownVariable
from ..formula.ast import And, Box, Const, Diamond, Fusion, Implies, Meta, MetaConst, One, Or, Var, Zero

_BINARY_TABLES = {And: "meet", Or: "join", Fusion: "fusion", Implies: "residuum"}


def reduce_last(table, values, start):
    """Fold the last axis of ``values`` with a binary operation table."""
    result = np.full(values.shape[:-1], start, dtype=np.intp)
    for k in range(values.shape[-1]):
        result = table[result, values[..., k]]
    return result


def box_values(algebra, relation, values):
    """``[]`` at every world: meet over successors of ``R(w, w') -> values(w')``."""
    return reduce_last(algebra.meet, algebra.residuum[relation, values[..., None, :]], algebra.top)


def diamond_values(algebra, relation, values):
    """``<>`` at every world: join over successors of ``R(w, w') * values(w')``."""
    return reduce_last(algebra.join, algebra.fusion[relation, values[..., None, :]], algebra.bottom)


class Evaluator:
    """
    Evaluate formulas in one fixed setting, sharing values of common subformulas.

    Parameters
    ----------
    algebra: ResiduatedLattice
    valuation: Mapping
        Variable name -> array of element indices (``batch + (W,)``, or a scalar for non-modal use)
    relation: numpy.ndarray (optional)
        Accessibility values, ``batch + (W, W)``; ``None`` for non-modal formulas
    default: int (optional)
        Value of variables missing from ``valuation``; missing variables are an error when ``None``
    box_table: array-like (optional)
        Unary table interpreting ``[]`` directly (modal matrices); replaces the relation
    """

    def __init__(self, algebra, valuation, relation=None, *, default=None, box_table=None):
        self.algebra = algebra
        self.valuation = valuation
        self.relation = None if relation is None else np.asarray(relation, dtype=np.intp)
        self.default = default
        self.box_table = None if box_table is None else np.asarray(box_table, dtype=np.intp)
        self._memo = {}

    def _constant(self, index):
        if self.relation is None:
            return np.intp(index)
        return np.full(self.relation.shape[-1], index, dtype=np.intp)

    def _variable(self, name):
        if name in self.valuation:
            return np.asarray(self.valuation[name], dtype=np.intp)
        if self.default is None:
            raise UnknownVariable(f"Variable {name!r} has no value")
        return self._constant(self.default)

    def _modal(self, node, child):
        if self.box_table is not None:
            if isinstance(node, Diamond):
                raise DiamondUnsupported("A box table does not interpret <>")
            return self.box_table[child]
        if self.relation is None:
            raise DiamondUnsupported(f"No accessibility relation to interpret {node}")
        if isinstance(node, Box):
            return box_values(self.algebra, self.relation, np.asarray(child))
        return diamond_values(self.algebra, self.relation, np.asarray(child))

    def __call__(self, phi):
        found = self._memo.get(phi)
        if found is not None:
            return found
        if isinstance(phi, Var):
            value = self._variable(phi.name)
        elif isinstance(phi, Zero):
            value = self._constant(self.algebra.bottom)
        elif isinstance(phi, One):
            value = self._constant(self.algebra.top)
        elif isinstance(phi, Const):
            if phi.label not in self.algebra.labels:
                raise UnknownConstant(f"@{phi.label} does not name an element of {self.algebra.name}")
            value = self._constant(self.algebra.index(phi.label))
        elif isinstance(phi, (Box, Diamond)):
            value = self._modal(phi, self(phi.child))
        elif type(phi) in _BINARY_TABLES:
            table = getattr(self.algebra, _BINARY_TABLES[type(phi)])
            value = table[self(phi.left), self(phi.right)]
        elif isinstance(phi, (Meta, MetaConst)):
            raise TypeError(f"Schema metavariable {phi} can not be evaluated")
        else:
            raise TypeError(f"Not a formula: {phi!r}")
        self._memo[phi] = value
        return value


def evaluate(algebra, phi, valuation, relation=None, *, default=None, box_table=None):
    """
    Values of ``phi`` at every world of every model in a batch.

    See :class:`Evaluator` for the parameters. Returns an array of element indices with the
    broadcast shape of the inputs.
    """
    return Evaluator(algebra, valuation, relation, default=default, box_table=box_table)(phi)


def index_digits(indices, base, width):
    """
    Base ``base`` digits of ``indices``, most significant first.

    Returns
    -------
    numpy.ndarray
        Shape ``indices.shape + (width,)``
    """
    remaining = np.array(indices, dtype=np.int64)
    digits = np.empty(remaining.shape + (width,), dtype=np.intp)
    for position in range(width - 1, -1, -1):
        digits[..., position] = remaining % base
        remaining //= base
    return digits


def assignments(size, names, start=0, stop=None):
    """
    Assignments of ``size`` elements to ``names`` with canonical indices in ``[start, stop)``.

    Assignments are ordered lexicographically, the first name varying slowest.

    Returns
    -------
    dict
        Name -> array of element indices, one entry per assignment
    """
    names = list(names)
    stop = size ** len(names) if stop is None else stop
    digits = index_digits(np.arange(start, stop), size, len(names))
    return {name: digits[:, i] for i, name in enumerate(names)}


def all_assignments(size, names):
    """Every assignment of ``size`` elements to ``names`` (see :func:`assignments`)."""
    return assignments(size, names)


def check_constants(algebra, *formulas):
    """
    Raise ``UnknownConstant`` when canonical constants are used but disabled or unknown.
    """
    from ..formula.ast import constants

    labels = constants(*formulas)
    if labels and not algebra.constants:
        raise UnknownConstant(f"Canonical constants are disabled for {algebra.name}: @{labels[0]}")
    for label in labels:
        if label not in algebra.labels:
            raise UnknownConstant(f"@{label} does not name an element of {algebra.name}")
