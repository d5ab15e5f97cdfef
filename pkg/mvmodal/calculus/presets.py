"""
Preset calculi.

======== =====================================================================================
name     axiomatizes
======== =====================================================================================
table1   global logic of crisp frames over ``lukasiewicz(n)``: (K), box commutes with ``p + p``
         and ``p * p``; modus ponens and necessitation
table1md ``table1`` with (K) replaced by both directions of meet distributivity
table2   global logic of all frames over a Goedel algebra, explicit Goedel base (no oracle)
table3   theorems of all frames over ``A^c``: ``[]1``, meet distribution, constants commute
         with the box; modus ponens and monotonicity
table3k  ``table3`` plus (K)
table4   theorems of crisp frames over ``A^c`` for ``A`` with a unique coatom ``k``:
         ``table3`` plus ``[](@k \\/ phi) -> (@k \\/ []phi)``
table5   theorems of all frames over ``lukasiewicz(n)``: ``[]1``, meet distribution, modus
         ponens, monotonicity and the rules ``R_a`` written with characterizing formulas
cor_a16  non-modal logic of ``A^c`` for ``A`` with a unique coatom ``k``: book-keeping,
         witnessing, modus ponens and ``@k \\/ phi / phi``
cor_a17  non-modal logic of ``A^c`` for a simple ``A``: book-keeping, witnessing, modus ponens
======== =====================================================================================
"""
import functools
import logging

from ..algebra.analysis import classify, unique_coatom
from ..errors import BadParam, NotMVChain, PrerequisiteFails
from ..formula.ast import Box, Const, Implies, Meta, conj
from ..formula.eta import eta, is_mv_chain
from ..formula.syntax import make_schema
from ..semantics.kripke import FrameClass
from .base import EXPLICIT, ORACLE, PLAIN_ORACLE, Calculus, Rule, parse_rule_name
from .generators import generate_bookkeeping, generate_witnessing

logger = logging.getLogger(__name__)

PHI, PSI = Meta("phi"), Meta("psi")

MODUS_PONENS = Rule("MP", (PHI, Implies(PHI, PSI)), PSI)
NECESSITATION = Rule("N", (PHI,), Box(PHI))
MONOTONICITY = Rule("Mon", (Implies(PHI, PSI),), Implies(Box(PHI), Box(PSI)))


def _schemas(entries, **kwargs):
    return tuple(make_schema(name, text, **kwargs) for name, text in entries)


_K = ("K", "[](phi -> psi) -> ([]phi -> []psi)")
_BOX_ONE = ("Box1", "[]1")
_MEET = ("MD", "[]phi /\\ []psi -> [](phi /\\ psi)")
_MEET_CONVERSE = ("MDc", "[](phi /\\ psi) -> []phi /\\ []psi")
_TAU = (
    ("tau2", "[](phi + phi) <-> []phi + []phi"),
    ("tau1", "[](phi * phi) <-> []phi * []phi"),
)

_GOEDEL_BASE = (
    ("A1", "(phi -> psi) -> ((psi -> chi) -> (phi -> chi))"),
    ("A2", "phi * psi -> phi"),
    ("A3", "phi * psi -> psi * phi"),
    ("A4", "phi * (phi -> psi) -> psi * (psi -> phi)"),
    ("A5a", "(phi -> (psi -> chi)) -> (phi * psi -> chi)"),
    ("A5b", "(phi * psi -> chi) -> (phi -> (psi -> chi))"),
    ("A6", "((phi -> psi) -> chi) -> (((psi -> phi) -> chi) -> chi)"),
    ("A7", "0 -> phi"),
    ("G", "phi -> phi * phi"),
    ("C1", "phi /\\ psi -> phi"),
    ("C2", "phi /\\ psi -> psi"),
    ("C3", "(chi -> phi) -> ((chi -> psi) -> (chi -> phi /\\ psi))"),
    ("D1", "phi -> phi \\/ psi"),
    ("D2", "psi -> phi \\/ psi"),
    ("D3", "(phi -> chi) -> ((psi -> chi) -> (phi \\/ psi -> chi))"),
    ("T", "1"),
)
_DOUBLE_NEGATION = ("DN", "~~[]phi -> []~~phi")


def _require_lukasiewicz(algebra, name):
    if not is_mv_chain(algebra):
        raise PrerequisiteFails(f"{name} needs a finite MV chain lukasiewicz(n), got {algebra.reference}")


def _require_constants(algebra, name):
    if not algebra.constants:
        raise PrerequisiteFails(f"{name} needs canonical constants; use {algebra.reference}^c")


def _coatom(algebra, name):
    k = unique_coatom(algebra)
    if k is None:
        raise PrerequisiteFails(f"{name} needs a unique coatom; {algebra.reference} has none")
    return k


# Rules for characterizing formulas


def _element_metas(count, first):
    return [Meta(f"phi{first + i}") for i in range(count)]


def eta_rule(algebra, a, elements=None):
    """
    The rule ``R_a`` over a finite MV chain.

    With ``elements = (a1, ..., am)`` (default: every element but ``0``, ascending) the premises
    are, for every ``b > ~a``::

        (eta_{a1 * b}(phi1) /\\ ... /\\ eta_{am * b}(phim)) -> eta_{a * b}(phi)

    and the conclusion is ``(eta_{a1}([]phi1) /\\ ... /\\ eta_{am}([]phim)) -> eta_a([]phi)``. The
    default rule numbers its metavariables from ``phi2``, a rule with explicit elements from
    ``phi1``.

    Parameters
    ----------
    algebra: ResiduatedLattice
    a: int
        Element index, not the bottom
    elements: sequence of int, optional
    """
    if a == algebra.bottom:
        raise PrerequisiteFails("R_a is defined for a != 0")
    if elements is None:
        elements = [x for x in algebra.elements if x != algebra.bottom]
        metas = _element_metas(len(elements), 2)
        name = f"R_{algebra.labels[a]}"
    else:
        elements = list(elements)
        metas = _element_metas(len(elements), 1)
        name = f"R_{algebra.labels[a]}^{','.join(algebra.labels[x] for x in elements)}"
    f = algebra.fusion
    premises = []
    for b in algebra.elements:
        if algebra.leq[b, algebra.negation[a]]:
            continue
        antecedent = conj([eta(algebra, int(f[x, b]), phi) for x, phi in zip(elements, metas)])
        premises.append(Implies(antecedent, eta(algebra, int(f[a, b]), PHI)))
    antecedent = conj([eta(algebra, x, Box(phi)) for x, phi in zip(elements, metas)])
    return Rule(name, tuple(premises), Implies(antecedent, eta(algebra, a, Box(PHI))))


def _eta_rule_family(algebra):
    @functools.lru_cache(maxsize=None)
    def family(name):
        parsed = parse_rule_name(name)
        if parsed is None:
            return None
        label, element_labels = parsed
        if label not in algebra.labels:
            return None
        a = algebra.index(label)
        if a == algebra.bottom:
            return None
        if element_labels is None:
            return eta_rule(algebra, a)
        if any(x not in algebra.labels for x in element_labels):
            return None
        return eta_rule(algebra, a, [algebra.index(x) for x in element_labels])

    return family


# Presets


def table1(algebra, *, meet_distribution=False):
    name = "table1md" if meet_distribution else "table1"
    _require_lukasiewicz(algebra, name)
    first = (_MEET, _MEET_CONVERSE) if meet_distribution else (_K,)
    return Calculus(
        name=name,
        algebra=algebra,
        axioms=_schemas(first + _TAU),
        rules=(MODUS_PONENS, NECESSITATION),
        base=ORACLE,
        frame_class=FrameClass.CRISP,
    )


def table2(algebra):
    report = classify(algebra)
    if not report.is_godel:
        raise PrerequisiteFails(f"table2 needs a Goedel algebra, got {algebra.reference}")
    return Calculus(
        name="table2",
        algebra=algebra,
        axioms=_schemas(_GOEDEL_BASE + (_K, _DOUBLE_NEGATION)),
        rules=(MODUS_PONENS, NECESSITATION),
        base=EXPLICIT,
        frame_class=FrameClass.ALL,
    )


def _constant_axiom():
    return make_schema("Ax_a", "[](@a -> phi) <-> (@a -> []phi)", elements=("a",))


def table3(algebra, *, normal=False):
    name = "table3k" if normal else "table3"
    _require_constants(algebra, name)
    axioms = _schemas((_BOX_ONE, _MEET)) + (_constant_axiom(),)
    if normal:
        axioms += _schemas((_K,))
    return Calculus(
        name=name,
        algebra=algebra,
        axioms=axioms,
        rules=(MODUS_PONENS, MONOTONICITY),
        base=ORACLE,
        frame_class=FrameClass.IDEMPOTENT if normal else FrameClass.ALL,
    )


def table4(algebra):
    _require_constants(algebra, "table4")
    k = Const(algebra.labels[_coatom(algebra, "table4")])
    crisp = make_schema("KC", f"[]({k} \\/ phi) -> ({k} \\/ []phi)")
    return Calculus(
        name="table4",
        algebra=algebra,
        axioms=_schemas((_BOX_ONE, _MEET)) + (_constant_axiom(), crisp),
        rules=(MODUS_PONENS, MONOTONICITY),
        base=ORACLE,
        frame_class=FrameClass.CRISP,
    )


def table5(algebra):
    _require_lukasiewicz(algebra, "table5")
    rules = tuple(eta_rule(algebra, a) for a in algebra.elements if a != algebra.bottom)
    logger.debug("table5 over %s: %d rules R_a", algebra.reference, len(rules))
    return Calculus(
        name="table5",
        algebra=algebra,
        axioms=_schemas((_BOX_ONE, _MEET)),
        rules=(MODUS_PONENS, MONOTONICITY) + rules,
        base=ORACLE,
        frame_class=FrameClass.ALL,
        rule_family=_eta_rule_family(algebra),
    )


def _constant_axioms(algebra):
    bookkeeping = tuple(make_schema("BK", str(phi)) for phi in generate_bookkeeping(algebra))
    return bookkeeping + (make_schema("W", str(generate_witnessing(algebra, "phi"))),)


def cor_a16(algebra):
    _require_constants(algebra, "cor_a16")
    k = _coatom(algebra, "cor_a16")
    if k == algebra.bottom:
        raise PrerequisiteFails(f"cor_a16 needs a coatom other than 0; {algebra.reference} has two elements")
    coatom_rule = Rule("KR", (make_schema("", f"{Const(algebra.labels[k])} \\/ phi").formula,), PHI)
    return Calculus(
        name="cor_a16",
        algebra=algebra,
        axioms=_constant_axioms(algebra),
        rules=(MODUS_PONENS, coatom_rule),
        base=PLAIN_ORACLE,
    )


def cor_a17(algebra):
    _require_constants(algebra, "cor_a17")
    if not classify(algebra).is_simple:
        raise PrerequisiteFails(f"cor_a17 needs a simple algebra, got {algebra.reference}")
    return Calculus(
        name="cor_a17",
        algebra=algebra,
        axioms=_constant_axioms(algebra),
        rules=(MODUS_PONENS,),
        base=PLAIN_ORACLE,
    )


PRESETS = {
    "table1": table1,
    "table1md": functools.partial(table1, meet_distribution=True),
    "table2": table2,
    "table3": table3,
    "table3k": functools.partial(table3, normal=True),
    "table4": table4,
    "table5": table5,
    "cor_a16": cor_a16,
    "cor_a17": cor_a17,
}


def preset_calculus(name, algebra):
    """
    Build a preset calculus over an algebra.

    Raises
    ------
    PrerequisiteFails
        The algebra does not meet the preset's requirements (no constants, no unique coatom, not
        an MV chain, ...).
    BadParam
        Unknown preset name.
    """
    if name not in PRESETS:
        raise BadParam(f"Unknown calculus {name!r}; expected one of {sorted(PRESETS)}")
    try:
        return PRESETS[name](algebra)
    except NotMVChain as error:
        raise PrerequisiteFails(str(error)) from error
