"""
Structural transformations of models: projection of Boolean models onto crisp ones and
crispification at a world.
"""
import logging
from typing import List, NamedTuple, Optional

import numpy as np
from pydantic import BaseModel

from ..errors import ConstantsDisabled, NoUniqueCoatom, NotBooleanFrame
from ..formula.ast import Box, Const, Diamond, Implies, Or, subformulas
from .evaluation import Evaluator
from .kripke import FrameClass, KripkeModel, frame_classes

logger = logging.getLogger(__name__)


class BooleanProjection(NamedTuple):
    decomposition: object
    models: List[KripkeModel]

    def violations(self, model, formulas):
        """
        Pairs ``(factor, formula, world)`` where projecting the value of the Boolean model differs
        from projecting the value of the crisp model of that factor.
        """
        found = []
        for phi in formulas:
            whole = model.values(phi)
            for i, crisp in enumerate(self.models):
                projection = np.asarray(self.decomposition.projections[i])
                mismatch = projection[whole] != projection[crisp.values(phi)]
                found.extend((i, phi, model.worlds[w]) for w in np.flatnonzero(mismatch))
        return found


def boolean_projection(model):
    """
    Split a model over a Boolean frame into crisp models, one per factor of the Boolean
    decomposition of the algebra.

    The model for factor ``i`` keeps the worlds and the valuation and has ``R_i(w, w') = 1`` exactly
    when ``R(w, w')`` projects to the top of factor ``i``. Projections of values are preserved:
    ``pi_i(V(phi, w)) = pi_i(V_i(phi, w))``.

    Returns
    -------
    BooleanProjection

    Raises
    ------
    NotBooleanFrame
        Some accessibility value is not a Boolean element.
    """
    from ..algebra.decomposition import boolean_decomposition

    if FrameClass.BOOLEAN not in frame_classes(model.frame):
        raise NotBooleanFrame(f"The frame of {model!r} has accessibility values that are not Boolean")
    algebra = model.algebra
    decomposition = boolean_decomposition(algebra)
    models = []
    for factor, projection in zip(decomposition.factors, decomposition.projections):
        projection = np.asarray(projection)
        relation = np.where(projection[model.frame.relation] == factor.top, algebra.top, algebra.bottom)
        models.append(model.with_relation(relation))
    logger.debug("Projected a %d-world Boolean model onto %d crisp models", model.frame.size, len(models))
    return BooleanProjection(decomposition, models)


class CrispEntry(BaseModel):
    formula: str
    axiom_holds: bool
    box_value: str
    crisp_box_value: str
    agrees: bool


class CrispReport(BaseModel):
    world: str
    coatom: str
    entries: List[CrispEntry]

    @property
    def crisp_equivalent(self):
        return all(entry.axiom_holds for entry in self.entries)


def crispify(model, world, formulas):
    """
    Keep only the accessibility values equal to ``1`` and compare boxes at ``world``.

    For every formula ``phi`` the report says whether ``[](@k \\/ phi) -> (@k \\/ []phi)`` holds at
    ``world`` (``k`` the unique coatom) and whether ``[]phi`` has the same value in the crisp model.

    Returns
    -------
    (KripkeModel, CrispReport)

    Raises
    ------
    NoUniqueCoatom
    ConstantsDisabled
    """
    from ..algebra.analysis import unique_coatom

    algebra = model.algebra
    k = unique_coatom(algebra)
    if k is None:
        raise NoUniqueCoatom(f"{algebra.reference} has no unique coatom")
    if not algebra.constants:
        raise ConstantsDisabled(f"Crispification compares values with the coatom constant of {algebra.name}")
    relation = np.where(model.frame.relation == algebra.top, algebra.top, algebra.bottom)
    crisp = model.with_relation(relation)
    coatom = Const(algebra.labels[k])
    entries = []
    for phi in formulas:
        axiom = Implies(Box(Or(coatom, phi)), Or(coatom, Box(phi)))
        box_value = model.eval(Box(phi), world)
        crisp_value = crisp.eval(Box(phi), world)
        entries.append(
            CrispEntry(
                formula=str(phi),
                axiom_holds=model.valid_at(axiom, world),
                box_value=box_value.label,
                crisp_box_value=crisp_value.label,
                agrees=box_value == crisp_value,
            )
        )
    report = CrispReport(world=model.worlds[model.frame.world_index(world)], coatom=coatom.label, entries=entries)
    return crisp, report


def witness_failure(model, formulas) -> Optional[tuple]:
    """
    The first ``(modal subformula, world)`` whose value is not attained by a single successor.
    """
    algebra = model.algebra
    relation = model.frame.relation
    evaluator = Evaluator(algebra, model.valuation, relation, default=model.default)
    seen = set()
    for phi in formulas:
        for node in subformulas(phi):
            if node in seen or not isinstance(node, (Box, Diamond)):
                continue
            seen.add(node)
            child = np.broadcast_to(evaluator(node.child), (model.frame.size,))
            value = np.broadcast_to(evaluator(node), (model.frame.size,))
            table = algebra.residuum if isinstance(node, Box) else algebra.fusion
            candidates = table[relation, child[None, :]]
            attained = (candidates == value[:, None]).any(axis=1)
            if not attained.all():
                return node, model.worlds[int(np.argmin(attained))]
    return None


def is_modally_witnessed(model, formulas):
    """
    Whether every modal subformula of ``formulas`` takes at every world the value contributed by
    one of the successors.
    """
    return witness_failure(model, formulas) is None
