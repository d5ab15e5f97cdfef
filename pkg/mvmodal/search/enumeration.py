"""
Bounded exhaustive search for countermodels.

For every number of worlds from ``min_worlds`` to ``max_worlds`` the search visits every frame of
the requested class and every valuation of the variables of the query, in canonical order:

* frames by accessibility tables read row by row, each cell ranging over the values the class
  allows in ascending element order, the last cell varying fastest;
* valuations by variable (sorted by name) and then by world, the last world of the last
  variable varying fastest;
* worlds ascending.

The first countermodel in this order is returned, whatever the number of worker threads: chunks
are handed to the workers in canonical order and merged by the canonical minimum.

Consequence queries evaluate their premises first; a chunk in which no cell satisfies the premises
is dropped without evaluating the conclusion.
"""
import itertools
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..errors import BudgetExceeded, PremiseFails, SearchInconsistency
from ..formula.ast import Box, Implies, Var, variables
from ..logging_setup import PPrintForLogging
from ..semantics.evaluation import Evaluator, check_constants, index_digits
from ..semantics.kripke import FrameClass, KripkeFrame, KripkeModel
from ..semantics.modelio import dump_model
from .msg import REFUTED, VALID_UP_TO, DefinabilityResult, SearchBudget, Verdict

logger = logging.getLogger(__name__)

# Upper bound on ``models x worlds x worlds`` cells evaluated in one chunk.
CHUNK_CELLS = 1 << 21


def world_names(count):
    return [f"w{i}" for i in range(count)]


class SearchSpace:
    """
    Frames of a class with a fixed number of worlds, together with all valuations of ``names``.

    Parameters
    ----------
    algebra: ResiduatedLattice
    frame_class: FrameClass
    names: list of str
        Variables, sorted
    worlds: int
    """

    def __init__(self, algebra, frame_class, names, worlds):
        self.algebra = algebra
        self.frame_class = frame_class
        self.names = list(names)
        self.worlds = worlds
        self.allowed = np.array(frame_class.allowed_values(algebra), dtype=np.intp)
        self.frame_count = len(self.allowed) ** (worlds * worlds)
        self.valuation_count = algebra.size ** (len(self.names) * worlds)

    @property
    def model_count(self):
        return self.frame_count * self.valuation_count

    def relations(self, start, stop):
        """Accessibility tables of frames ``start .. stop - 1``, shape ``(stop - start, W, W)``."""
        digits = index_digits(np.arange(start, stop), len(self.allowed), self.worlds * self.worlds)
        return self.allowed[digits].reshape(-1, self.worlds, self.worlds)

    def valuations(self, start, stop):
        """Variable name -> values of valuations ``start .. stop - 1``, shape ``(stop - start, W)``."""
        width = self.worlds
        digits = index_digits(np.arange(start, stop), self.algebra.size, len(self.names) * width)
        return {name: digits[:, i * width : (i + 1) * width] for i, name in enumerate(self.names)}

    def chunks(self):
        """``(frame_start, frame_stop, valuation_start, valuation_stop)`` in canonical order."""
        per_chunk = max(1, CHUNK_CELLS // (self.worlds * self.worlds))
        if self.valuation_count <= per_chunk:
            step = max(1, per_chunk // self.valuation_count)
            for start in range(0, self.frame_count, step):
                yield start, min(self.frame_count, start + step), 0, self.valuation_count
        else:
            for frame in range(self.frame_count):
                for start in range(0, self.valuation_count, per_chunk):
                    yield frame, frame + 1, start, min(self.valuation_count, start + per_chunk)

    def evaluator(self, chunk):
        f0, f1, v0, v1 = chunk
        relation = self.relations(f0, f1)[:, None, :, :]
        valuation = {name: values[None, :, :] for name, values in self.valuations(v0, v1).items()}
        return Evaluator(self.algebra, valuation, relation)

    def model(self, frame, valuation):
        relation = self.relations(frame, frame + 1)[0]
        values = {name: v[0] for name, v in self.valuations(valuation, valuation + 1).items()}
        return KripkeModel(KripkeFrame(self.algebra, world_names(self.worlds), relation), values)


class _Query:
    """What counts as a refutation, per (frame, valuation, world)."""

    kind = "valid"

    def __init__(self, premises, conclusion):
        self.premises = list(premises)
        self.conclusion = conclusion

    @property
    def formulas(self):
        return self.premises + [self.conclusion]

    def mask(self, evaluate, top, shape):
        return np.broadcast_to(evaluate(self.conclusion) != top, shape)

    def holds_at(self, model, world):
        return not model.valid_at(self.conclusion, world)


class _LocalQuery(_Query):
    kind = "local"

    def mask(self, evaluate, top, shape):
        holding = np.ones(shape, dtype=bool)
        for gamma in self.premises:
            holding &= np.broadcast_to(evaluate(gamma) == top, shape)
            if not holding.any():
                return holding
        return holding & (evaluate(self.conclusion) != top)

    def holds_at(self, model, world):
        return all(model.valid_at(g, world) for g in self.premises) and not model.valid_at(self.conclusion, world)


class _GlobalQuery(_Query):
    kind = "global"

    def mask(self, evaluate, top, shape):
        valid = np.ones(shape[:-1], dtype=bool)
        for gamma in self.premises:
            valid &= np.broadcast_to(evaluate(gamma) == top, shape).all(axis=-1)
            if not valid.any():
                return np.zeros(shape, dtype=bool)
        return valid[..., None] & np.broadcast_to(evaluate(self.conclusion) != top, shape)

    def holds_at(self, model, world):
        return all(model.valid(g) for g in self.premises) and not model.valid_at(self.conclusion, world)


def _first_hit(space, query, chunk):
    evaluate = space.evaluator(chunk)
    f0, f1, v0, v1 = chunk
    mask = query.mask(evaluate, space.algebra.top, (f1 - f0, v1 - v0, space.worlds))
    if not mask.any():
        return None
    f, v, w = (int(i) for i in np.argwhere(mask)[0])
    return f0 + f, v0 + v, w


def _ordered_results(function, items, jobs):
    """``function`` applied to ``items`` in order, ``jobs`` at a time on worker threads."""
    items = iter(items)
    if jobs == 1:
        for item in items:
            yield item, function(item)
        return
    with ThreadPoolExecutor(max_workers=jobs) as executor:
        while True:
            batch = list(itertools.islice(items, 4 * jobs))
            if not batch:
                return
            futures = [executor.submit(function, item) for item in batch]
            for item, future in zip(batch, futures):
                yield item, future.result()


def _check_budget(checked, space, budget):
    if budget.model_cap is not None and checked + space.model_count > budget.model_cap:
        raise BudgetExceeded(
            f"Searching {space.worlds} world(s) needs {space.model_count} models after {checked} already "
            f"visited; the cap is {budget.model_cap}",
            checked + space.model_count,
            budget.model_cap,
        )


def _search(algebra, frame_class, query, budget):
    frame_class = FrameClass.parse(frame_class) if isinstance(frame_class, str) else frame_class
    check_constants(algebra, *query.formulas)
    names = variables(*query.formulas)
    checked = 0
    for worlds in range(budget.min_worlds, budget.max_worlds + 1):
        space = SearchSpace(algebra, frame_class, names, worlds)
        _check_budget(checked, space, budget)
        logger.info(
            "Searching %d world(s): %d frames x %d valuations = %d models",
            worlds,
            space.frame_count,
            space.valuation_count,
            space.model_count,
        )
        for chunk, hit in _ordered_results(lambda c: _first_hit(space, query, c), space.chunks(), budget.jobs):
            logger.debug("Chunk %s done", chunk)
            checked += (chunk[1] - chunk[0]) * (chunk[3] - chunk[2])
            if hit is not None:
                frame, valuation, world = hit
                model = space.model(frame, valuation)
                name = model.worlds[world]
                if not query.holds_at(model, name):
                    raise SearchInconsistency(
                        f"Countermodel failed re-verification at {name}:\n{dump_model(model)}"
                    )
                logger.info("Countermodel with %d world(s) found after %d models", worlds, checked)
                return _verdict(algebra, frame_class, query, budget, checked, model, name)
        logger.info("No countermodel with %d world(s)", worlds)
    return _verdict(algebra, frame_class, query, budget, checked)


def _verdict(algebra, frame_class, query, budget, checked, model=None, world=None):
    record = dict(
        query=query.kind,
        algebra=algebra.reference,
        frame_class=frame_class.value,
        formula=str(query.conclusion),
        premises=[str(g) for g in query.premises],
        max_worlds=budget.max_worlds,
        models_checked=checked,
    )
    if model is None:
        return Verdict(status=VALID_UP_TO, **record)
    verdict = Verdict(
        status=REFUTED,
        world=world,
        value=model.eval(query.conclusion, world).label,
        model_text=dump_model(model),
        countermodel=model,
        **record,
    )
    logger.debug("Verdict: %s", PPrintForLogging(verdict.record()))
    return verdict


def as_budget(budget):
    return budget if isinstance(budget, SearchBudget) else SearchBudget(max_worlds=int(budget))


def validity_search(algebra, frame_class, phi, budget):
    """
    Search for a model in the class and a world where ``phi`` is not ``1``.

    Parameters
    ----------
    algebra: ResiduatedLattice
    frame_class: FrameClass or str
    phi: Formula
    budget: SearchBudget or int
        An integer is taken as ``max_worlds``.

    Returns
    -------
    Verdict

    Raises
    ------
    BudgetExceeded
        The next world count would exceed the model cap; no verdict is given.
    """
    return _search(algebra, frame_class, _Query([], phi), as_budget(budget))


def local_consequence_refute(algebra, frame_class, premises, phi, budget):
    """Search for a world where all ``premises`` are ``1`` and ``phi`` is not."""
    return _search(algebra, frame_class, _LocalQuery(premises, phi), as_budget(budget))


def global_consequence_refute(algebra, frame_class, premises, phi, budget):
    """Search for a model validating all ``premises`` with a world where ``phi`` is not ``1``."""
    return _search(algebra, frame_class, _GlobalQuery(premises, phi), as_budget(budget))


# Frame validity


def _frame_refuted(space, formulas, chunk):
    """Per frame of the chunk: some valuation and world give some formula a value below ``1``."""
    evaluate = space.evaluator(chunk)
    f0, f1, v0, v1 = chunk
    shape = (f1 - f0, v1 - v0, space.worlds)
    refuted = np.zeros(f1 - f0, dtype=bool)
    for phi in formulas:
        refuted |= np.broadcast_to(evaluate(phi) != space.algebra.top, shape).any(axis=(1, 2))
    return refuted


def _frames_valid(space, formulas, jobs):
    """Frame index -> validity of all ``formulas``, yielded in canonical order in blocks."""
    pending = {}
    for chunk, refuted in _ordered_results(lambda c: _frame_refuted(space, formulas, c), space.chunks(), jobs):
        f0, f1, v0, v1 = chunk
        previous = pending.pop(f0, np.zeros(f1 - f0, dtype=bool))
        refuted = previous | refuted
        if v1 == space.valuation_count:
            yield f0, ~refuted
        else:
            pending[f0] = refuted


def frame_valid(algebra, frame, formulas):
    """Whether every formula is ``1`` at every world under every valuation of the frame."""
    formulas = list(formulas)
    check_constants(algebra, *formulas)
    names = variables(*formulas)
    relation = frame.relation[None, None, :, :]
    total = algebra.size ** (len(names) * frame.size)
    per_chunk = max(1, CHUNK_CELLS // (frame.size * frame.size))
    for start in range(0, total, per_chunk):
        stop = min(total, start + per_chunk)
        digits = index_digits(np.arange(start, stop), algebra.size, len(names) * frame.size)
        valuation = {
            name: digits[None, :, i * frame.size : (i + 1) * frame.size] for i, name in enumerate(names)
        }
        evaluate = Evaluator(algebra, valuation, relation)
        for phi in formulas:
            if (evaluate(phi) != algebra.top).any():
                return False
    return True


def frame_definability_check(formulas, frame_class, algebra, budget):
    """
    Check that, among all frames with at most ``max_worlds`` worlds, the frames validating
    ``formulas`` are exactly the frames of ``frame_class``.

    Returns
    -------
    DefinabilityResult
        With the first frame (canonical order) on which validity and membership disagree.
    """
    budget = as_budget(budget)
    frame_class = FrameClass.parse(frame_class) if isinstance(frame_class, str) else frame_class
    formulas = list(formulas)
    check_constants(algebra, *formulas)
    names = variables(*formulas)
    allowed = set(frame_class.allowed_values(algebra))
    checked = frames_checked = 0
    record = dict(
        algebra=algebra.reference,
        frame_class=frame_class.value,
        formulas=[str(phi) for phi in formulas],
        max_worlds=budget.max_worlds,
    )
    for worlds in range(budget.min_worlds, budget.max_worlds + 1):
        space = SearchSpace(algebra, FrameClass.ALL, names, worlds)
        _check_budget(checked, space, budget)
        logger.info("Checking definability on %d frames with %d world(s)", space.frame_count, worlds)
        for start, valid in _frames_valid(space, formulas, budget.jobs):
            relations = space.relations(start, start + len(valid))
            in_class = np.isin(relations, list(allowed)).all(axis=(1, 2))
            mismatch = valid != in_class
            if mismatch.any():
                k = int(np.argmax(mismatch))
                frame = KripkeFrame(algebra, world_names(worlds), relations[k])
                frames_checked += k + 1
                text = dump_model(KripkeModel(frame))
                return DefinabilityResult(
                    frames_checked=frames_checked,
                    defines=False,
                    frame_valid=bool(valid[k]),
                    in_class=bool(in_class[k]),
                    frame_text=text,
                    frame=frame,
                    **record,
                )
            frames_checked += len(valid)
        checked += space.model_count
    return DefinabilityResult(frames_checked=frames_checked, defines=True, **record)


# Closure of consequence under rules

RESERVED_R = Var("$r")


def ordpres_check(algebra, frame_class, premises, phi, budget):
    """
    Finite order preservation: when ``{r -> g : g in premises} |- r -> phi`` holds exactly (fresh
    ``r``, boxes abstracted), search for a local countermodel of ``[]premises |- []phi``.

    Raises
    ------
    PremiseFails
        The non-modal premise does not hold.
    """
    from .consequence import nonmodal_counterexample

    premises = list(premises)
    witness = nonmodal_counterexample(
        algebra, [Implies(RESERVED_R, g) for g in premises], Implies(RESERVED_R, phi), abstract=True
    )
    if witness is not None:
        raise PremiseFails(f"{{r -> g}} does not entail r -> {phi}; fails at {witness}")
    return local_consequence_refute(algebra, frame_class, [Box(g) for g in premises], Box(phi), budget)


def rule_closure_probe(algebra, frame_class, phi, rule, budget):
    """
    Bounded check that global consequence is closed under a rule for the premise ``phi``.

    ``rule`` is ``"N"`` (``phi |- []phi``) or ``"Mon"`` (``a -> b |- []a -> []b`` with ``phi`` the
    implication ``a -> b``).
    """
    if rule == "N":
        return global_consequence_refute(algebra, frame_class, [phi], Box(phi), budget)
    if rule == "Mon":
        if not isinstance(phi, Implies):
            raise PremiseFails(f"(Mon) needs an implication, got {phi}")
        conclusion = Implies(Box(phi.left), Box(phi.right))
        return global_consequence_refute(algebra, frame_class, [phi], conclusion, budget)
    raise ValueError(f"Unknown rule {rule!r}; expected 'N' or 'Mon'")
