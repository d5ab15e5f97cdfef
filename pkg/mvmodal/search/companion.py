"""
Non-modal companions as a cheap test for modal validity.

A box-only formula valid on a class of frames has a companion that is a (conditional) tautology
of the algebra with constants. When the companion fails under an assignment ``h``, the chain
``w0 -> w1 -> ... -> wd`` with ``R(wn, wn+1) = h($rn)`` and variables constant along the chain
refutes the formula at ``w0``.
"""
import itertools
import logging

import numpy as np

from ..errors import PremiseFails, PropertyFails, SearchInconsistency
from ..formula.ast import ONE, ZERO, Box, Fusion, Implies, Var, iff, is_modal, variables
from ..formula.companion import companion, companion_variable
from ..formula.syntax import modal_depth, substitute
from ..semantics.kripke import KripkeFrame, KripkeModel
from ..semantics.modelio import dump_model
from .consequence import nonmodal_counterexample
from .enumeration import world_names
from .msg import DISCARDED, INCONCLUSIVE, CompanionVerdict, LiftResult

logger = logging.getLogger(__name__)

VARIANTS = ("Fr", "IFr", "CFr")


def _reserved(names):
    return [name for name in names if name.startswith("$r")]


def _crisp_counterexample(algebra, premises, pi):
    """Try every substitution of ``0`` and ``1`` for the companion variables."""
    reserved = _reserved(variables(pi, *premises))
    for choice in itertools.product((ZERO, ONE), repeat=len(reserved)):
        sigma = dict(zip(reserved, choice))
        witness = nonmodal_counterexample(
            algebra, [substitute(gamma, sigma) for gamma in premises], substitute(pi, sigma)
        )
        if witness is not None:
            for name, value in sigma.items():
                witness[name] = algebra.labels[algebra.top if value == ONE else algebra.bottom]
            return dict(sorted(witness.items()))
    return None


def chain_model(algebra, phi, assignment, premises=()):
    """
    The chain countermodel of an assignment refuting the level-indexed companion.

    Worlds ``w0 .. wd`` (``d`` the largest modal depth of ``phi`` and ``premises``),
    ``R(wn, wn+1) = h($rn)``, every other accessibility value ``0``, and every variable constant
    along the chain.
    """
    formulas = [phi, *premises]
    depth = max(modal_depth(psi) for psi in formulas)
    relation = np.full((depth + 1, depth + 1), algebra.bottom, dtype=np.intp)
    for n in range(depth):
        label = assignment.get(companion_variable(n))
        relation[n, n + 1] = algebra.index(label) if label is not None else algebra.top
    valuation = {
        name: [algebra.index(assignment[name])] * (depth + 1)
        for name in variables(*formulas)
        if name in assignment
    }
    return KripkeModel(KripkeFrame(algebra, world_names(depth + 1), relation), valuation)


def companion_discard(algebra, phi, variant="Fr", premises=()):
    """
    Try to discard the validity of a box-only formula on ``Fr``, ``IFr`` or ``CFr`` with its
    non-modal companion.

    ``Fr`` asks for a tautology of the algebra with constants; ``IFr`` assumes every companion
    variable idempotent (``$rn <-> $rn * $rn``); ``CFr`` substitutes ``0`` and ``1`` for them. A
    failing assignment is turned into the chain countermodel, which is re-verified.

    With ``premises`` the local consequence ``premises |- phi`` is discarded instead: the
    companions of the premises join the non-modal premises, and the chain model makes every
    premise ``1`` at ``w0``.

    Returns
    -------
    CompanionVerdict
        ``Discarded`` with the assignment and the countermodel, or ``Inconclusive``.

    Raises
    ------
    DiamondUnsupported
    """
    if variant not in VARIANTS:
        raise ValueError(f"Unknown variant {variant!r}; expected one of {VARIANTS}")
    algebra = algebra.with_constants()
    premises = list(premises)
    pi = companion(phi, indexing="level")
    gammas = [companion(gamma, indexing="level") for gamma in premises]
    record = dict(
        algebra=algebra.reference,
        variant=variant,
        formula=str(phi),
        companion=str(pi),
        premises=[str(gamma) for gamma in premises],
    )

    if variant == "Fr":
        assignment = nonmodal_counterexample(algebra, gammas, pi)
    elif variant == "IFr":
        idempotent = [iff(Var(r), Fusion(Var(r), Var(r))) for r in _reserved(variables(pi, *gammas))]
        assignment = nonmodal_counterexample(algebra, gammas + idempotent, pi)
    else:
        assignment = _crisp_counterexample(algebra, gammas, pi)

    if assignment is None:
        logger.info("Companion of %s is valid over %s (%s); inconclusive", phi, algebra.reference, variant)
        return CompanionVerdict(status=INCONCLUSIVE, **record)

    model = chain_model(algebra, phi, assignment, premises)
    value = model.eval(phi, "w0")
    holding = all(model.eval(gamma, "w0").index == algebra.top for gamma in premises)
    if value.index == algebra.top or not holding:
        raise SearchInconsistency(f"The chain model of {assignment} does not refute {phi}:\n{dump_model(model)}")
    return CompanionVerdict(
        status=DISCARDED,
        assignment=assignment,
        world="w0",
        value=value.label,
        model_text=dump_model(model),
        countermodel=model,
        **record,
    )


def companion_lift(algebra, delta, epsilon, formulas, phi, *, witnessed=False, arguments=None):
    """
    Lift a non-modal theorem about ``r -> phi_i`` to a modal one.

    When ``|- delta(r -> phi_1, ..., r -> phi_n) -> epsilon(r -> phi)`` holds in the algebra with
    constants (``r`` fresh), ``delta([]phi_1, ..., []phi_n) -> []epsilon(phi)`` is valid on all
    frames, provided ``delta`` is non-decreasing in every argument and ``epsilon`` is expanding.
    With ``witnessed`` the conclusion is ``delta([]phi_1, ...) -> epsilon([]phi)``, valid in all
    modally witnessed models, and ``epsilon`` need not be expanding.

    Parameters
    ----------
    delta: Formula
        Term whose arguments are ``arguments`` (its sorted variables by default)
    epsilon: Formula
        Term in one variable
    formulas: list of Formula
        ``phi_1 .. phi_n``, without modalities
    phi: Formula
        Without modalities

    Returns
    -------
    (Formula, LiftResult)

    Raises
    ------
    PropertyFails
        ``delta`` is not non-decreasing or ``epsilon`` is not expanding.
    PremiseFails
        The non-modal premise is not a theorem.
    """
    from ..algebra.terms import term_properties
    from ..errors import NonModalExpected

    algebra = algebra.with_constants()
    formulas = list(formulas)
    for psi in formulas + [phi]:
        if is_modal(psi):
            raise NonModalExpected(f"Expected a formula without modalities: {psi}")
    arguments = list(arguments) if arguments is not None else variables(delta)
    if len(arguments) != len(formulas):
        raise ValueError(f"delta has {len(arguments)} arguments but {len(formulas)} formulas were given")
    epsilon_vars = variables(epsilon)
    if len(epsilon_vars) > 1:
        raise ValueError(f"epsilon must have at most one variable, got {epsilon_vars}")
    epsilon_arg = epsilon_vars[0] if epsilon_vars else "p"

    delta_properties = term_properties(algebra, delta, names=arguments)
    if not delta_properties.monotone:
        raise PropertyFails(f"{delta} is not non-decreasing in every argument")
    if not witnessed:
        expanding = term_properties(algebra, epsilon, names=[epsilon_arg]).expanding
        if not expanding:
            raise PropertyFails(f"{epsilon} is not expanding")

    r = Var("$r")

    def fill_delta(values):
        return substitute(delta, dict(zip(arguments, values)))

    def fill_epsilon(value):
        return substitute(epsilon, {epsilon_arg: value})

    premise = Implies(fill_delta([Implies(r, psi) for psi in formulas]), fill_epsilon(Implies(r, phi)))
    witness = nonmodal_counterexample(algebra, [], premise)
    if witness is not None:
        raise PremiseFails(f"{premise} fails at {witness}")
    boxed = fill_delta([Box(psi) for psi in formulas])
    conclusion = Implies(boxed, fill_epsilon(Box(phi)) if witnessed else Box(fill_epsilon(phi)))
    result = LiftResult(
        algebra=algebra.reference,
        premise=str(premise),
        conclusion=str(conclusion),
        verified=True,
        witnessed=witnessed,
    )
    return conclusion, result
