"""
Decomposition of a finite residuated lattice into factors without nontrivial Boolean elements.
"""
import itertools
import logging
from typing import Dict, List, NamedTuple, Tuple

from ..errors import DecompositionFails
from .analysis import boolean_elements
from .filters import filter_generated, quotient
from .lattice import ResiduatedLattice

logger = logging.getLogger(__name__)


class Decomposition(NamedTuple):
    """
    ``factors[i]`` with projections ``projections[i][x]``; ``embedding`` maps tuples of factor
    elements back to elements of the decomposed algebra.
    """

    algebra: ResiduatedLattice
    factors: List[ResiduatedLattice]
    projections: List[Tuple[int, ...]]
    embedding: Dict[Tuple[int, ...], int]

    def project(self, element):
        return tuple(p[element] for p in self.projections)


def _split(algebra):
    nontrivial = [e for e in boolean_elements(algebra) if e not in (algebra.bottom, algebra.top)]
    if not nontrivial:
        return [(algebra, tuple(algebra.elements))]
    e = nontrivial[0]
    parts = []
    for generator in (e, algebra.neg(e)):
        factor, projection = quotient(algebra, filter_generated(algebra, {generator}))
        for sub, sub_projection in _split(factor):
            parts.append((sub, tuple(sub_projection[projection[x]] for x in algebra.elements)))
    return parts


def _verify(algebra, factors, projections):
    """The product of the projections is an isomorphism onto the product of the factors."""
    images = {}
    for x in algebra.elements:
        image = tuple(p[x] for p in projections)
        if image in images:
            raise DecompositionFails(f"Decomposition is not injective at {algebra.labels[x]}")
        images[image] = x
    size = 1
    for factor in factors:
        size *= factor.size
    if size != algebra.size:
        raise DecompositionFails("Decomposition is not surjective")
    for x, y in itertools.product(algebra.elements, repeat=2):
        for table in ("fusion", "meet", "join", "residuum"):
            whole = getattr(algebra, table)[x, y]
            for factor, p in zip(factors, projections):
                if getattr(factor, table)[p[x], p[y]] != p[whole]:
                    raise DecompositionFails(f"Projection does not preserve {table} at ({x}, {y})")
    return images


def boolean_decomposition(algebra):
    """
    Split an algebra along its Boolean elements.

    A Boolean element ``e`` splits ``A`` into ``A/<e>`` and ``A/<~e>``; the split is repeated until no
    factor has Boolean elements other than ``0`` and ``1``. The resulting isomorphism is verified
    exhaustively on all operations.

    Returns
    -------
    Decomposition
    """
    parts = _split(algebra)
    factors = [factor for factor, _ in parts]
    projections = [projection for _, projection in parts]
    embedding = _verify(algebra, factors, projections)
    logger.debug("Decomposed %s into %d factor(s)", algebra.name, len(factors))
    return Decomposition(algebra, factors, projections, embedding)
