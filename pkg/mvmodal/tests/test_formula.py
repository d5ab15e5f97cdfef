import pytest
from hypothesis import given, settings

from mvmodal.algebra.presets import boolean2, godel, lukasiewicz
from mvmodal.algebra.terms import term_function
from mvmodal.errors import (
    DiamondUnsupported,
    FormulaSyntaxError,
    NotMVChain,
    PrerequisiteFails,
    UnknownConstant,
)
from mvmodal.formula.ast import (
    ONE,
    ZERO,
    And,
    Box,
    Const,
    Diamond,
    Fusion,
    Implies,
    MetaConst,
    Or,
    Var,
    constants,
    iff,
    is_modal,
    neg,
    oplus,
    subformulas,
    variables,
)
from mvmodal.formula.companion import companion, standard_translation
from mvmodal.formula.eta import characteristic_table, characterizing_formula, eta, unary_term_clone
from mvmodal.formula.parser import parse, render
from mvmodal.formula.syntax import (
    box_degrees,
    diamond_to_box,
    instances,
    make_schema,
    match_schema,
    modal_depth,
    substitute,
)
from mvmodal.semantics.kripke import KripkeFrame, KripkeModel
from mvmodal.tests.strategies import formulas, relations, valuations

p, q, r = Var("p"), Var("q"), Var("r")


# Parsing


@pytest.mark.parametrize(
    "text, expected",
    [
        ("p -> q -> r", Implies(p, Implies(q, r))),
        ("p /\\ q \\/ r", Or(And(p, q), r)),
        ("p \\/ q /\\ r", Or(p, And(q, r))),
        ("p * q + r", oplus(Fusion(p, q), r)),
        ("p + q /\\ r", And(oplus(p, q), r)),
        ("~[]p", neg(Box(p))),
        ("[]~p", Box(neg(p))),
        ("<>p * q", Fusion(Diamond(p), q)),
        ("p <-> q <-> r", iff(iff(p, q), r)),
        ("p <-> q -> r", iff(p, Implies(q, r))),
        ("p^3", Fusion(Fusion(p, p), p)),
        ("p^0", ONE),
        ("2.p", oplus(p, p)),
        ("0 -> 1", Implies(ZERO, ONE)),
        ("@0.5 -> p", Implies(Const("0.5"), p)),
        ("@{1/3}", Const("1/3")),
        ("(((p)))", p),
    ],
)
def test_parse(text, expected):
    assert parse(text) == expected


@pytest.mark.parametrize(
    "text, rendered",
    [
        ("p + p", "p + p"),
        ("p -> 0", "~p"),
        ("(p -> q) * (q -> p)", "p <-> q"),
        ("(p -> q) -> r", "(p -> q) -> r"),
        ("[](p * q)", "[](p * q)"),
        ("@{1/3} \\/ @0.5", "@{1/3} \\/ @0.5"),
    ],
)
def test_render(text, rendered):
    assert render(parse(text)) == rendered
    assert str(parse(text)) == rendered


@pytest.mark.parametrize("text, position", [("p & q", 2), ("p q", 2), ("3", 0), ("$r0", 0)])
def test_parse_error_position(text, position):
    with pytest.raises(FormulaSyntaxError) as excinfo:
        parse(text)
    assert excinfo.value.position == position
    assert excinfo.value.source == text


@pytest.mark.parametrize("text", ["", "p ->", "(p", "[]", "p \\/ \\/ q"])
def test_parse_error(text):
    with pytest.raises(FormulaSyntaxError):
        parse(text)


def test_parse_reserved_and_constants():
    assert parse("$r0 -> p", allow_reserved=True) == Implies(Var("$r0"), p)
    with pytest.raises(UnknownConstant):
        parse("@0.5", allow_constants=False)


@given(formulas(constants=("0.5", "1/3"), diamond=True, max_leaves=15))
@settings(max_examples=1000, deadline=None)
def test_render_parse(phi):
    assert parse(render(phi)) == phi


def test_traversal():
    phi = parse("[](p -> q) -> @0.5 * []p")
    assert variables(phi) == ["p", "q"]
    assert constants(phi) == ["0.5"]
    assert is_modal(phi)
    assert not is_modal(parse("p -> q"))
    # children come before their parents
    found = subformulas(phi)
    assert found[-1] == phi
    assert found.index(p) < found.index(Box(p))


# Structure


def test_modal_depth_and_degrees():
    phi = parse("[](p -> []q) -> ([]p -> []q)")
    assert modal_depth(phi) == 2
    assert box_degrees(phi) == [1, 0, 0, 0]
    assert modal_depth(parse("p * q")) == 0


def test_substitute():
    phi = parse("[]p -> q")
    assert substitute(phi, {"p": parse("q * q")}) == parse("[](q * q) -> q")
    # simultaneous
    assert substitute(parse("p -> q"), {"p": q, "q": p}) == parse("q -> p")


def test_match_schema():
    schema = make_schema("K", "[](phi -> psi) -> ([]phi -> []psi)")
    assert schema.metavariables == ["phi", "psi"]
    binding = match_schema(parse("[](p -> q * q) -> ([]p -> [](q * q))"), schema)
    assert binding == {"phi": p, "psi": Fusion(q, q)}
    assert match_schema(parse("[](p -> q) -> ([]q -> []p)"), schema) is None


def test_match_schema_side_condition():
    algebra = lukasiewicz(3).with_constants()
    schema = make_schema("C", "[](@a \\/ p) -> (@a \\/ []p)", elements=["a"], conditions={"a": "coatom"})
    assert schema.element_metavariables == ["a"]
    assert isinstance(schema.formula.left.child.left, MetaConst)
    binding = match_schema(parse("[](@0.5 \\/ q) -> (@0.5 \\/ []q)"), schema, algebra)
    assert binding == {"a": Const("0.5"), "p": q}
    assert match_schema(parse("[](@1 \\/ q) -> (@1 \\/ []q)"), schema, algebra) is None
    assert len(list(instances(schema, algebra, [p, q]))) == 2


def test_make_schema_bad_condition():
    with pytest.raises(ValueError):
        make_schema("C", "@a -> p", elements=["a"], conditions={"a": "prime"})


def test_schema_instances():
    schema = make_schema("K", "[](phi -> psi) -> ([]phi -> []psi)")
    found = list(instances(schema, lukasiewicz(3), [p, q]))
    assert len(found) == 4
    assert parse("[](q -> p) -> ([]q -> []p)") in found


# Translations


@pytest.mark.parametrize(
    "indexing, expected",
    [("degree", "($r0 -> p) -> $r1 -> $r0 -> q"), ("level", "($r0 -> p) -> $r0 -> $r1 -> q")],
)
def test_companion(indexing, expected):
    pi = companion(parse("[]p -> [][]q"), indexing)
    assert render(pi) == expected
    assert pi == parse(expected, allow_reserved=True)


def test_companion_errors():
    with pytest.raises(DiamondUnsupported):
        companion(parse("<>p"))
    with pytest.raises(ValueError):
        companion(parse("[]p"), "depth")


@given(formulas())
@settings(max_examples=100, deadline=None)
def test_companion_is_nonmodal(phi):
    pi = companion(phi)
    assert not is_modal(pi)
    assert set(variables(phi)) <= set(variables(pi))


@pytest.mark.parametrize(
    "text, free_var, expected",
    [
        ("[]p -> q", "x", "∀y(Rxy → Py) → Qx"),
        ("[][]p", "x", "∀y(Rxy → ∀z(Ryz → Pz))"),
        ("<>(p * q)", "x", "∃y(Rxy ⊙ Py ⊙ Qy)"),
        ("[]p", "y", "∀z(Ryz → Pz)"),
        ("p /\\ (q \\/ 0)", "x", "Px ∧ (Qx ∨ 0)"),
    ],
)
def test_standard_translation(text, free_var, expected):
    assert standard_translation(parse(text), free_var) == expected


# Semantic identities


@given(
    formulas(diamond=True, max_leaves=12),
    valuations(lukasiewicz(3), 3),
    relations(lukasiewicz(3), 3),
)
@settings(max_examples=100, deadline=None)
def test_involutive_identities(phi, valuation, relation):
    algebra = lukasiewicz(3)
    model = KripkeModel(KripkeFrame(algebra, ["a", "b", "c"], relation), valuation)
    assert (model.values(neg(neg(phi))) == model.values(phi)).all()
    assert (model.values(diamond_to_box(phi, algebra)) == model.values(phi)).all()


def test_diamond_to_box_requires_involution():
    assert diamond_to_box(parse("<>p"), lukasiewicz(3)) == parse("~[]~p")
    with pytest.raises(PrerequisiteFails):
        diamond_to_box(parse("<>p"), godel(3))


# Characterizing formulas


def test_characterizing_formula_lukasiewicz3(l3):
    assert characterizing_formula(l3, l3.index("0.5")) == parse("p + p")
    assert characterizing_formula(l3, l3.top) == parse("p * p")
    assert characterizing_formula(l3, l3.bottom) == ONE
    assert eta(l3, l3.index("0.5"), parse("[]q")) == parse("[]q + []q")


@pytest.mark.parametrize("n", [3, 4, 5])
def test_characterizing_formula_tables(n):
    algebra = lukasiewicz(n)
    for a in algebra.elements:
        term = characterizing_formula(algebra, a)
        table = term_function(algebra, term, names=["p"])
        assert tuple(int(v) for v in table) == characteristic_table(algebra, a)


def test_characterizing_formula_needs_mv_chain(g3, b2xl3):
    with pytest.raises(NotMVChain):
        characterizing_formula(g3, g3.top)
    with pytest.raises(NotMVChain):
        characterizing_formula(b2xl3, b2xl3.top)


def test_unary_term_clone(l3):
    assert len(unary_term_clone(boolean2())) == 4
    clone = unary_term_clone(l3)
    assert clone[(0, 1, 2)] == p
    for table, term in clone.items():
        assert tuple(int(v) for v in term_function(l3, term, names=["p"])) == table
