import numpy as np
import pytest
from hypothesis import given, settings

from mvmodal.algebra.analysis import boolean_elements
from mvmodal.algebra.presets import boolean2, godel, lukasiewicz, product
from mvmodal.errors import (
    ConstantsDisabled,
    ModelFormatError,
    NoUniqueCoatom,
    NotBooleanFrame,
    PrerequisiteFails,
    UnknownConstant,
    UnknownVariable,
)
from mvmodal.formula.ast import Box, Var
from mvmodal.formula.parser import parse
from mvmodal.semantics.evaluation import Evaluator, assignments, evaluate, index_digits
from mvmodal.semantics.kripke import (
    FrameClass,
    KripkeFrame,
    KripkeModel,
    dual_check,
    frame_classes,
    from_level_cuts,
    level_cuts,
)
from mvmodal.semantics.modelio import dump_model, load_model, parse_model
from mvmodal.semantics.transforms import boolean_projection, crispify, is_modally_witnessed, witness_failure
from mvmodal.tests.strategies import formulas, relations, valuations

K_MODEL = """
# counterexample to (K) over the three-element MV chain
algebra: lukasiewicz(3)
constants: off
worlds: w u
R: w u = 0.5
val: p @ u = 0.5
val: q @ u = 0
"""

NONCRISP_MODEL = """
algebra: lukasiewicz(3)
constants: on
worlds: w0 w1 w2
R: w0 w1 = 1
R: w0 w2 = 0.5
val: p @ w2 = 0
val: q @ w1 = 0
"""


@pytest.fixture
def k_model():
    return parse_model(K_MODEL)


# Evaluation


@pytest.mark.parametrize(
    "text, values",
    [
        ("[](p -> q)", ["1", "1"]),
        ("[]p", ["1", "1"]),
        ("[]q", ["0.5", "1"]),
        ("[](p -> q) -> ([]p -> []q)", ["0.5", "1"]),
        ("<>p", ["0", "0"]),
        ("<>1", ["0.5", "0"]),
        ("p * p", ["1", "0"]),
        ("p + q", ["1", "0.5"]),
    ],
)
def test_model_values(k_model, text, values):
    phi = parse(text)
    assert [k_model.eval(phi, w).label for w in k_model.worlds] == values


def test_model_access(k_model):
    assert k_model.worlds == ("w", "u")
    assert k_model.value("p", "w") == k_model.algebra.top
    assert k_model.eval(Var("p"), "u") == (1, "0.5")
    assert k_model.eval(Var("p"), 1).label == "0.5"
    assert not k_model.valid(parse("[]q"))
    assert k_model.valid_at(parse("[]q"), "u")
    assert k_model.positively_valid(parse("[]q"))
    with pytest.raises(ModelFormatError):
        k_model.eval(Var("p"), "v")
    with pytest.raises(ModelFormatError):
        k_model.eval(Var("p"), 2)


def test_constants_in_models(k_model):
    with pytest.raises(UnknownConstant):
        k_model.values(parse("@0.5"))
    model = parse_model(NONCRISP_MODEL)
    assert model.eval(parse("@0.5 -> p"), "w2").label == "0.5"
    with pytest.raises(UnknownConstant):
        model.values(parse("@0.75"))


def test_batched_evaluation(l3):
    relation = np.array([[[0, 2], [0, 0]], [[0, 1], [0, 0]]])
    values = evaluate(l3, parse("[]p"), {"p": np.array([2, 1])}, relation)
    assert values.tolist() == [[1, 2], [2, 2]]
    # formulas without modalities broadcast over the batch
    assert Evaluator(l3, {"p": np.array([0, 1, 2])})(parse("p + p")).tolist() == [0, 2, 2]


def test_box_table(l3):
    evaluator = Evaluator(l3, {"p": np.array([0, 1, 2])}, box_table=[2, 2, 2])
    assert evaluator(parse("[]p -> p")).tolist() == [0, 1, 2]


def test_unknown_variable(l3):
    with pytest.raises(UnknownVariable):
        Evaluator(l3, {})(Var("p"))
    assert Evaluator(l3, {}, default=l3.bottom)(parse("p -> p")) == l3.top


def test_assignments():
    found = assignments(3, ["p", "q"])
    assert found["p"].tolist() == [0, 0, 0, 1, 1, 1, 2, 2, 2]
    assert found["q"].tolist() == [0, 1, 2, 0, 1, 2, 0, 1, 2]
    assert assignments(3, ["p", "q"], 4, 6)["q"].tolist() == [1, 2]
    assert index_digits([5, 7], 3, 2).tolist() == [[1, 2], [2, 1]]


# Frames


def test_frame_classes(k_model, l3):
    assert frame_classes(k_model.frame) == {FrameClass.ALL}
    crisp = KripkeFrame(l3, ["a", "b"], [[2, 0], [2, 2]])
    assert frame_classes(crisp) == {FrameClass.ALL, FrameClass.IDEMPOTENT, FrameClass.CRISP, FrameClass.BOOLEAN}
    idempotent = KripkeFrame(godel(3), ["a"], [[1]])
    assert frame_classes(idempotent) == {FrameClass.ALL, FrameClass.IDEMPOTENT}


@pytest.mark.parametrize(
    "text, member", [("all", "ALL"), ("idem", "IDEMPOTENT"), ("Crisp", "CRISP"), ("boolean", "BOOLEAN")]
)
def test_frame_class_parse(text, member):
    assert FrameClass.parse(text) is FrameClass[member]


def test_allowed_values(b2xl3):
    assert FrameClass.BOOLEAN.allowed_values(b2xl3) == (0, 2, 3, 5)
    assert FrameClass.CRISP.allowed_values(b2xl3) == (0, 5)


@pytest.mark.parametrize(
    "worlds, relation",
    [([], []), (["a", "a"], [[0, 0], [0, 0]]), (["a"], [[3]]), (["a"], [[0, 0]])],
)
def test_frame_errors(l3, worlds, relation):
    with pytest.raises(ModelFormatError):
        KripkeFrame(l3, worlds, relation)


def test_level_cuts(k_model, l3):
    cuts = level_cuts(k_model.frame)
    assert sorted(cuts) == ["0.5", "1"]
    assert cuts["0.5"].tolist() == [[False, True], [False, False]]
    assert not cuts["1"].any()
    assert from_level_cuts(l3, k_model.worlds, cuts) == k_model.frame


def test_level_cuts_need_chain(b2xl3):
    with pytest.raises(PrerequisiteFails):
        from_level_cuts(b2xl3, ["w"], {})


@given(formulas(max_leaves=8), valuations(lukasiewicz(3), 2), relations(lukasiewicz(3), 2))
@settings(max_examples=100, deadline=None)
def test_dual_check(phi, valuation, relation):
    model = KripkeModel(KripkeFrame(lukasiewicz(3), ["a", "b"], relation), valuation)
    valid, dual = dual_check(model, phi)
    assert valid == dual


def test_dual_check_needs_involution():
    model = KripkeModel(KripkeFrame(godel(3), ["a"], [[0]]))
    with pytest.raises(PrerequisiteFails):
        dual_check(model, parse("p"))


# Model files


def test_dump_model(k_model):
    assert dump_model(k_model).splitlines() == [
        "algebra: lukasiewicz(3)",
        "constants: off",
        "worlds: w u",
        "R: w u = 0.5",
        "val: p @ u = 0.5",
        "val: q @ u = 0",
    ]
    assert parse_model(dump_model(k_model, comment="two worlds")) == k_model


def test_model_default(tmp_path):
    path = tmp_path / "model.txt"
    path.write_text("algebra: godel(3)\nworlds: a b\ndefault: 0\nval: p @ b = 0.5\n")
    model = load_model(str(path))
    assert model.value("p", "a") == 0
    assert model.value("q", "b") == 0
    assert "default: 0" in dump_model(model)
    assert parse_model(dump_model(model)) == model


def test_model_with_algebra_file(tmp_path):
    (tmp_path / "b.alg").write_text("universe: 0 1\nleq:\n1 1\n0 1\nfusion:\n0 0\n0 1\n")
    (tmp_path / "m.txt").write_text("algebra: b.alg\nworlds: w\nR: w w = 1\n")
    model = load_model(str(tmp_path / "m.txt"))
    assert model.algebra == boolean2()
    assert model.valid(parse("[]p -> p"))


@pytest.mark.parametrize(
    "text",
    [
        "worlds: w\n",
        "algebra: lukasiewicz(3)\n",
        "algebra: lukasiewicz(3)\nworlds: w w\n",
        "algebra: lukasiewicz(3)\nworlds: w\nR: w v = 1\n",
        "algebra: lukasiewicz(3)\nworlds: w\nR: w w = 0.75\n",
        "algebra: lukasiewicz(3)\nworlds: w\nR: w w\n",
        "algebra: lukasiewicz(3)\nworlds: w\nval: p = 1\n",
        "algebra: lukasiewicz(3)\nworlds: w\nconstants: maybe\n",
        "algebra: lukasiewicz(3)\nalgebra: godel(3)\nworlds: w\n",
        "algebra: lukasiewicz(3)\nworlds: w\ncolour: red\n",
        "algebra: lukasiewicz(3)\nworlds: w\nstray line\n",
    ],
)
def test_parse_model_fails(text):
    with pytest.raises(ModelFormatError):
        parse_model(text)


# Transformations


def test_crispify():
    model = parse_model(NONCRISP_MODEL)
    crisp, report = crispify(model, "w0", [parse("p"), parse("q")])
    assert crisp.frame.relation.tolist() == [[0, 2, 0], [0, 0, 0], [0, 0, 0]]
    assert report.world == "w0"
    assert report.coatom == "0.5"
    first, second = report.entries
    assert (first.axiom_holds, first.box_value, first.crisp_box_value, first.agrees) == (False, "0.5", "1", False)
    assert (second.axiom_holds, second.box_value, second.crisp_box_value, second.agrees) == (True, "0", "0", True)
    assert not report.crisp_equivalent


def test_crispify_errors(k_model, b2xl3):
    with pytest.raises(ConstantsDisabled):
        crispify(k_model, "w", [parse("p")])
    model = KripkeModel(KripkeFrame(b2xl3.with_constants(), ["w"], [[5]]))
    with pytest.raises(NoUniqueCoatom):
        crispify(model, "w", [parse("p")])


_B2XL3 = product(boolean2(), lukasiewicz(3))


@given(
    relations(_B2XL3, 2, allowed=boolean_elements(_B2XL3)),
    valuations(_B2XL3, 2),
    formulas(max_leaves=8),
)
@settings(max_examples=50, deadline=None)
def test_boolean_projection(relation, valuation, phi):
    model = KripkeModel(KripkeFrame(_B2XL3, ["a", "b"], relation), valuation)
    projection = boolean_projection(model)
    assert len(projection.models) == 2
    for crisp in projection.models:
        assert FrameClass.CRISP in frame_classes(crisp.frame)
    assert projection.violations(model, [phi]) == []


def test_boolean_projection_needs_boolean_frame(b2xl3):
    model = KripkeModel(KripkeFrame(b2xl3, ["w"], [[b2xl3.index("(1,0.5)")]]))
    with pytest.raises(NotBooleanFrame):
        boolean_projection(model)


def test_witnessing(k_model, b2xb2):
    assert is_modally_witnessed(k_model, [parse("[]p -> <>q")])
    top = b2xb2.top
    frame = KripkeFrame(b2xb2, ["w", "u", "v"], [[0, top, top], [0, 0, 0], [0, 0, 0]])
    model = KripkeModel(frame, {"p": [top, b2xb2.index("(0,1)"), b2xb2.index("(1,0)")]})
    assert model.eval(Box(Var("p")), "w").label == "(0,0)"
    assert witness_failure(model, [parse("[]p")]) == (Box(Var("p")), "w")
    assert not is_modally_witnessed(model, [parse("[]p")])
