"""
Kripke frames and models valued in a finite residuated lattice.
"""
import enum
from typing import Dict, Tuple

import numpy as np

from ..errors import BadParam, ModelFormatError, PrerequisiteFails
from ..formula.ast import neg
from .evaluation import Evaluator, check_constants


class FrameClass(enum.Enum):
    """Frame classes by the range of the accessibility relation."""

    ALL = "all"
    IDEMPOTENT = "idem"
    CRISP = "crisp"
    BOOLEAN = "boolean"

    def allowed_values(self, algebra):
        """Element indices an accessibility value may take in this class, ascending."""
        from ..algebra.analysis import boolean_elements, idempotent_elements

        if self is FrameClass.ALL:
            return tuple(algebra.elements)
        if self is FrameClass.IDEMPOTENT:
            return idempotent_elements(algebra)
        if self is FrameClass.BOOLEAN:
            return boolean_elements(algebra)
        return tuple(sorted({algebra.bottom, algebra.top}))

    @classmethod
    def parse(cls, text):
        for member in cls:
            if text.lower() in (member.value, member.name.lower()):
                return member
        raise BadParam(f"Unknown frame class {text!r}; expected one of {[m.value for m in cls]}")


def _frozen_table(values, shape):
    table = np.array(values, dtype=np.intp)
    if table.shape != shape:
        raise ModelFormatError(f"Expected a table of shape {shape}, got {table.shape}")
    table.setflags(write=False)
    return table


class KripkeFrame:
    """
    Worlds with an accessibility relation valued in an algebra.

    Parameters
    ----------
    algebra: ResiduatedLattice
    worlds: sequence of str
        World names, in order
    relation: array-like
        ``relation[i][j]`` is the element index of ``R(worlds[i], worlds[j])``
    """

    def __init__(self, algebra, worlds, relation):
        self.algebra = algebra
        self.worlds = tuple(str(w) for w in worlds)
        if not self.worlds:
            raise ModelFormatError("A frame needs at least one world")
        if len(set(self.worlds)) != len(self.worlds):
            raise ModelFormatError(f"World names are not distinct: {self.worlds}")
        n = len(self.worlds)
        self.relation = _frozen_table(relation, (n, n))
        if ((self.relation < 0) | (self.relation >= algebra.size)).any():
            raise ModelFormatError("Accessibility values must be elements of the algebra")

    @property
    def size(self):
        return len(self.worlds)

    def world_index(self, world):
        if isinstance(world, (int, np.integer)):
            if not 0 <= world < self.size:
                raise ModelFormatError(f"World index {world} is out of range")
            return int(world)
        try:
            return self.worlds.index(str(world))
        except ValueError:
            raise ModelFormatError(f"Unknown world {world!r}") from None

    def value_range(self):
        return tuple(int(v) for v in np.unique(self.relation))

    def __eq__(self, other):
        if not isinstance(other, KripkeFrame):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.worlds == other.worlds
            and np.array_equal(self.relation, other.relation)
        )

    def __hash__(self):
        return hash((self.worlds, self.relation.tobytes()))

    def __repr__(self):
        return f"KripkeFrame({self.algebra.reference!r}, worlds={list(self.worlds)})"


def frame_classes(frame):
    """The set of :class:`FrameClass` members the frame belongs to."""
    values = set(frame.value_range())
    return {cls for cls in FrameClass if values <= set(cls.allowed_values(frame.algebra))}


class KripkeModel:
    """
    A frame with a valuation.

    Parameters
    ----------
    frame: KripkeFrame
    valuation: dict
        Variable name -> sequence of element indices, one per world
    default: int (optional)
        Value of variables without an entry; the top element when omitted
    """

    def __init__(self, frame, valuation=None, *, default=None):
        self.frame = frame
        self.algebra = frame.algebra
        self.default = self.algebra.top if default is None else int(default)
        self.valuation: Dict[str, np.ndarray] = {}
        for name, values in (valuation or {}).items():
            self.valuation[str(name)] = _frozen_table(values, (frame.size,))

    @property
    def worlds(self):
        return self.frame.worlds

    def value(self, variable, world):
        w = self.frame.world_index(world)
        values = self.valuation.get(variable)
        return self.default if values is None else int(values[w])

    def values(self, phi):
        """Element indices of ``phi`` at every world, in world order."""
        check_constants(self.algebra, phi)
        evaluator = Evaluator(self.algebra, self.valuation, self.frame.relation, default=self.default)
        return np.broadcast_to(evaluator(phi), (self.frame.size,))

    def eval(self, phi, world):
        """The value of ``phi`` at ``world`` (name or index) as an :class:`Element`."""
        index = int(self.values(phi)[self.frame.world_index(world)])
        return self.algebra.element(index)

    def valid_at(self, phi, world):
        return self.eval(phi, world).index == self.algebra.top

    def valid(self, phi):
        """Validity in the model: value ``1`` at every world."""
        return bool((self.values(phi) == self.algebra.top).all())

    def positively_valid(self, phi):
        """Value different from ``0`` at every world."""
        return bool((self.values(phi) != self.algebra.bottom).all())

    def positively_satisfied_somewhere(self, phi):
        return bool((self.values(phi) != self.algebra.bottom).any())

    def with_relation(self, relation):
        return KripkeModel(KripkeFrame(self.algebra, self.worlds, relation), self.valuation, default=self.default)

    def __eq__(self, other):
        if not isinstance(other, KripkeModel):
            return NotImplemented
        names = set(self.valuation) | set(other.valuation)
        return (
            self.frame == other.frame
            and self.default == other.default
            and all(self.value(n, w) == other.value(n, w) for n in names for w in range(self.frame.size))
        )

    def __repr__(self):
        worlds, variables = list(self.worlds), sorted(self.valuation)
        return f"KripkeModel({self.algebra.reference!r}, worlds={worlds}, variables={variables})"


def valid_at(model, phi, world):
    return model.valid_at(phi, world)


def valid_in_model(model, phi):
    return model.valid(phi)


def positively_valid(model, phi):
    return model.positively_valid(phi)


def level_cuts(frame):
    """
    The crisp relations ``R_a = {(w, w') : a <= R(w, w')}`` for every element ``a`` above the bottom.

    Over a chain the family is non-increasing in ``a`` and determines the frame.

    Returns
    -------
    dict
        Element label -> boolean matrix
    """
    algebra = frame.algebra
    return {
        algebra.labels[a]: algebra.leq[a, frame.relation]
        for a in algebra.elements
        if a != algebra.bottom
    }


def from_level_cuts(algebra, worlds, cuts):
    """
    Rebuild a frame over a chain from its level cuts.

    ``R(w, w')`` is the greatest ``a`` with ``(w, w')`` in ``R_a``, or the bottom when there is none.
    """
    from ..algebra.analysis import is_chain

    if not is_chain(algebra):
        raise PrerequisiteFails(f"{algebra.reference} is not a chain")
    n = len(worlds)
    relation = np.full((n, n), algebra.bottom, dtype=np.intp)
    for label, cut in cuts.items():
        a = algebra.index(label)
        cut = np.asarray(cut, dtype=bool)
        relation = np.where(cut, algebra.join[relation, a], relation)
    return KripkeFrame(algebra, worlds, relation)


def dual_check(model, phi) -> Tuple[bool, bool]:
    """
    Validity of ``phi`` next to the absence of positive satisfaction of ``~phi``.

    Over an involutive algebra both entries agree.
    """
    from ..algebra.analysis import is_involutive

    if not is_involutive(model.algebra):
        raise PrerequisiteFails(f"{model.algebra.reference} is not involutive")
    return model.valid(phi), not model.positively_satisfied_somewhere(neg(phi))
