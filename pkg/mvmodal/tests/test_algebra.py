import numpy as np
import pytest

from mvmodal.algebra.analysis import (
    check_laws,
    classify,
    is_isomorphic,
    local_deduction_report,
    power_stabilization,
    proof_by_cases_holds,
)
from mvmodal.algebra import decomposition as decomposition_module
from mvmodal.algebra.decomposition import boolean_decomposition
from mvmodal.algebra.filters import filter_generated, quotient
from mvmodal.algebra.lattice import build_lattice
from mvmodal.algebra.presets import (
    boolean2,
    godel,
    lukasiewicz,
    mtl6,
    ordinal_sum,
    preset,
    product,
    ratio_label,
    resolve_algebra,
    wnm5,
)
from mvmodal.algebra.terms import quasiequation_holds, term_function, term_properties
from mvmodal.algebra.textio import dump_algebra, load_algebra, parse_algebra
from mvmodal.errors import (
    AlgebraFormatError,
    BadParam,
    DecompositionFails,
    MvModalError,
    NonModalExpected,
    NotALattice,
    NotAMonoid,
    ResiduationFails,
    UnknownConstant,
)
from mvmodal.formula.ast import ONE
from mvmodal.formula.parser import parse

DIAMOND5 = """
# the five-element Heyting algebra with two incomparable atoms
name: diamond5
universe: 0 a b c 1
leq:
1 1 1 1 1
0 1 0 1 1
0 0 1 1 1
0 0 0 1 1
0 0 0 0 1
fusion:
0 0 0 0 0
0 a 0 a a
0 0 b b b
0 a b c c
0 a b c 1
"""

_ALL_PRESETS = [
    "boolean2",
    "lukasiewicz(3)",
    "lukasiewicz(5)",
    "godel(4)",
    "wnm5",
    "mtl6",
    "product(boolean2,lukasiewicz(3))",
    "ordinal_sum(lukasiewicz(3),godel(3))",
]


@pytest.mark.parametrize(
    "numerator, denominator, label",
    [(0, 2, "0"), (1, 2, "0.5"), (2, 2, "1"), (1, 4, "0.25"), (1, 3, "1/3"), (2, 6, "1/3")],
)
def test_ratio_label(numerator, denominator, label):
    assert ratio_label(numerator, denominator) == label


@pytest.mark.parametrize("reference", _ALL_PRESETS)
def test_presets_are_residuated(reference):
    algebra = resolve_algebra(reference)
    n = algebra.size
    idx = np.arange(n)
    # a * b <= c  iff  b <= a -> c
    lhs = algebra.leq[algebra.fusion[:, :, None], idx[None, None, :]]
    rhs = algebra.leq[idx[None, :, None], algebra.residuum[:, None, :]]
    assert np.array_equal(lhs, rhs)
    assert algebra.leq[algebra.bottom].all()
    assert algebra.leq[:, algebra.top].all()
    assert np.array_equal(algebra.fusion[algebra.top], idx)


def test_lukasiewicz3_tables(l3):
    assert l3.labels == ("0", "0.5", "1")
    half = l3.index("0.5")
    assert l3.label(l3.fusion[half, half]) == "0"
    assert l3.label(l3.residuum[half, l3.bottom]) == "0.5"
    assert l3.label(l3.oplus(half, half)) == "1"
    assert l3.reference == "lukasiewicz(3)"
    assert l3.with_constants().reference == "lukasiewicz(3)^c"


def test_powers_and_multiples(l3, g3):
    half = l3.index("0.5")
    assert [l3.label(l3.power(half, m)) for m in range(3)] == ["1", "0.5", "0"]
    assert [l3.label(l3.times(m, half)) for m in range(3)] == ["0", "0.5", "1"]
    assert all(g3.power(a, 5) == a for a in range(1, len(g3)))


def test_lukasiewicz2_is_boolean2():
    assert lukasiewicz(2) == boolean2()
    assert godel(2) == boolean2()


def test_equality_ignores_name(l3):
    assert l3.renamed("other") == l3
    assert l3.with_constants() == l3
    assert l3 != godel(3)


def test_unknown_label(l3):
    with pytest.raises(UnknownConstant):
        l3.index("0.75")


@pytest.mark.parametrize(
    "reference, size",
    [("lukasiewicz(4)", 4), ("product(boolean2, godel(3))", 6), ("ordinal_sum(boolean2,boolean2)", 3)],
)
def test_resolve_algebra(reference, size):
    assert resolve_algebra(reference).size == size


def test_resolve_algebra_constants():
    algebra = resolve_algebra("lukasiewicz(3)^c")
    assert algebra.constants
    assert not resolve_algebra("lukasiewicz(3)^c", constants=False).constants
    assert resolve_algebra("wnm5", constants=True).reference == "wnm5^c"


@pytest.mark.parametrize(
    "reference, exception",
    [
        ("lukasiewicz(1)", BadParam),
        ("lukasiewicz", BadParam),
        ("boolean2(3)", BadParam),
        ("nosuchalgebra", BadParam),
        ("product(boolean2, 3)", BadParam),
        ("lukasiewicz(", AlgebraFormatError),
    ],
)
def test_resolve_algebra_fails(reference, exception):
    with pytest.raises(exception):
        resolve_algebra(reference)


def test_preset_params():
    assert preset("godel", 5) == godel(5)
    with pytest.raises(BadParam):
        preset("godel", "5")


def test_ordinal_sum_labels():
    algebra = ordinal_sum(lukasiewicz(3), lukasiewicz(3))
    assert algebra.labels == ("0", "0.5", "1", "0.5'", "1'")
    assert is_isomorphic(ordinal_sum(boolean2(), boolean2()), godel(3))


def test_product_labels(b2xl3):
    assert b2xl3.labels == ("(0,0)", "(0,0.5)", "(0,1)", "(1,0)", "(1,0.5)", "(1,1)")
    assert b2xl3.label(b2xl3.top) == "(1,1)"


# Construction errors


def test_build_not_a_lattice():
    leq = [[1, 1, 1], [0, 1, 0], [0, 0, 1]]
    fusion = [["0", "0", "0"], ["0", "a", "0"], ["0", "0", "b"]]
    with pytest.raises(NotALattice) as excinfo:
        build_lattice(["0", "a", "b"], leq, fusion)
    assert excinfo.value.pair == ("a", "b")


def test_build_not_antisymmetric():
    with pytest.raises(NotALattice):
        build_lattice(["0", "1"], [[1, 1], [1, 1]], [[0, 0], [0, 1]])


def test_build_not_commutative():
    leq = [[1, 1, 1], [0, 1, 1], [0, 0, 1]]
    fusion = [["0", "a", "0"], ["0", "a", "a"], ["0", "a", "1"]]
    with pytest.raises(NotAMonoid):
        build_lattice(["0", "a", "1"], leq, fusion)


def test_build_residuation_fails():
    # associative and commutative with unit 1, but not monotone: 0 * a = a
    leq = [[1, 1, 1], [0, 1, 1], [0, 0, 1]]
    fusion = [["0", "a", "0"], ["a", "a", "a"], ["0", "a", "1"]]
    with pytest.raises(ResiduationFails) as excinfo:
        build_lattice(["0", "a", "1"], leq, fusion)
    assert excinfo.value.triple == ("0", "a", "0")


@pytest.mark.parametrize(
    "labels, leq, fusion",
    [
        (["0", "0"], [[1, 1], [0, 1]], [[0, 0], [0, 1]]),
        (["0", "1"], [[1, 1], [0, 1]], [[0, 0]]),
        (["0", "1"], [[1, 1], [0, 1]], [[0, 0], [0, 7]]),
        (["0", "1"], [[1, 1], [0, 1]], [["0", "0"], ["0", "x"]]),
        ([], [], []),
    ],
)
def test_build_bad_param(labels, leq, fusion):
    with pytest.raises(BadParam):
        build_lattice(labels, leq, fusion)


# Text format


def test_parse_algebra_file(tmp_path):
    path = tmp_path / "diamond5.alg"
    path.write_text(DIAMOND5)
    algebra = load_algebra(str(path))
    assert algebra.labels == ("0", "a", "b", "c", "1")
    assert algebra.name == str(path)
    assert resolve_algebra("diamond5.alg", base_dir=str(tmp_path)) == algebra
    assert parse_algebra(dump_algebra(algebra)) == algebra


def test_dump_algebra(l3):
    text = dump_algebra(l3)
    assert text.splitlines()[:3] == ["name: lukasiewicz(3)", "universe: 0 0.5 1", "leq:"]
    assert parse_algebra(text) == l3


@pytest.mark.parametrize(
    "text",
    [
        "universe: 0 1\nleq:\n1 1\n0 1\n",
        "universe: 0 1\nleq:\n1 1\n0 1\nfusion:\n0 0\n",
        "leq:\n1 1\n0 1\nuniverse: 0 1\n",
        "universe: 0 1\nleq:\n1 x\n0 1\nfusion:\n0 0\n0 1\n",
        "colour: red\n",
    ],
)
def test_parse_algebra_fails(text):
    with pytest.raises(AlgebraFormatError):
        parse_algebra(text)


# Classification


def test_classify_lukasiewicz(l3):
    report = classify(l3)
    assert report.idempotents == ["0", "1"]
    assert report.booleans == ["0", "1"]
    assert report.coatoms == ["0.5"]
    assert report.unique_coatom == "0.5"
    assert report.is_chain and report.is_mv and report.is_involutive and report.is_simple
    assert not report.is_godel
    assert not report.is_heyting


def test_classify_godel(g3):
    report = classify(g3)
    assert report.idempotents == ["0", "0.5", "1"]
    assert report.is_godel and report.is_heyting and report.is_bl
    assert not report.is_mv
    assert not report.is_involutive
    assert not report.is_simple


def test_classify_product(b2xl3):
    report = classify(b2xl3)
    assert report.booleans == ["(0,0)", "(0,1)", "(1,0)", "(1,1)"]
    assert report.coatoms == ["(0,1)", "(1,0.5)"]
    assert report.unique_coatom is None
    assert not report.is_chain
    assert not report.top_join_irreducible


def test_classify_wnm(wnm):
    report = classify(wnm)
    assert report.idempotents == ["0", "0.5", "0.75", "1"]
    assert report.is_mtl
    assert not report.is_bl


def test_classify_heyting_diamond():
    report = classify(parse_algebra(DIAMOND5))
    assert report.is_heyting
    assert not report.is_mtl
    assert report.unique_coatom == "c"
    assert report.top_join_irreducible


@pytest.mark.parametrize("algebra", [lukasiewicz(4), godel(3), wnm5(), mtl6(), product(boolean2(), godel(3))])
def test_laws_hold_in_mtl_algebras(algebra):
    report = check_laws(algebra)
    assert report.ok, report.failing()


def test_laws_fail_in_diamond():
    report = check_laws(parse_algebra(DIAMOND5))
    assert report.failing() == ["residuum_over_join", "meet_antecedent", "prelinearity"]
    assert report.laws["prelinearity"] == {"x": "a", "y": "b"}
    assert report.laws["residuum_over_join"] == {"x": "c", "y1": "a", "y2": "b"}
    assert report.passed("fusion_over_join")


# Deduction properties


def test_local_deduction_lukasiewicz(l3):
    report = local_deduction_report(l3)
    assert report.simple and report.trivial_idempotents and report.nilpotent
    assert report.stabilization == 2
    assert report.consistent


def test_local_deduction_godel(g3):
    report = local_deduction_report(g3)
    assert not report.simple
    assert not report.trivial_idempotents
    assert not report.nilpotent
    assert report.stabilization == 1
    assert report.consistent


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_power_stabilization_lukasiewicz(n):
    assert power_stabilization(lukasiewicz(n)) == max(1, n - 1)


def test_proof_by_cases(l3, b2xb2):
    assert proof_by_cases_holds(l3) == (True, None)
    holds, pair = proof_by_cases_holds(b2xb2)
    assert not holds
    assert sorted(pair) == ["(0,1)", "(1,0)"]


def test_isomorphism():
    assert is_isomorphic(product(boolean2(), lukasiewicz(3)), product(lukasiewicz(3), boolean2()))
    assert not is_isomorphic(lukasiewicz(3), godel(3))
    assert not is_isomorphic(lukasiewicz(3), lukasiewicz(4))


# Filters, quotients and decomposition


def test_filter_and_quotient(g3):
    f = filter_generated(g3, {g3.index("0.5")})
    assert f.labels == ["0.5", "1"]
    assert not f.is_trivial()
    result = quotient(g3, f)
    assert result.algebra == boolean2()
    assert result.projection == (0, 1, 1)


def test_filter_of_lukasiewicz_is_everything(l3):
    assert filter_generated(l3, {l3.index("0.5")}).labels == ["0", "0.5", "1"]
    assert filter_generated(l3, set()).is_trivial()


def test_boolean_decomposition(b2xl3):
    decomposition = boolean_decomposition(b2xl3)
    assert sorted(factor.size for factor in decomposition.factors) == [2, 3]
    assert len(decomposition.embedding) == b2xl3.size
    for x in b2xl3.elements:
        assert decomposition.embedding[decomposition.project(x)] == x


def test_decomposition_of_chain(l3):
    decomposition = boolean_decomposition(l3)
    assert decomposition.factors == [l3]


def test_decomposition_verification_fails(l3, monkeypatch):
    doubled = [(l3, tuple(l3.elements)), (l3, tuple(l3.elements))]
    monkeypatch.setattr(decomposition_module, "_split", lambda algebra: doubled)
    with pytest.raises(DecompositionFails) as excinfo:
        boolean_decomposition(l3)
    assert isinstance(excinfo.value, MvModalError)
    assert "not surjective" in str(excinfo.value)


# Terms


def test_term_function(l3):
    table = term_function(l3, parse("p + p"))
    assert [l3.label(v) for v in table] == ["0", "1", "1"]
    assert term_function(l3, parse("p"), 2).shape == (3, 3)
    with pytest.raises(NonModalExpected):
        term_function(l3, parse("[]p"))


@pytest.mark.parametrize(
    "text, monotone, expanding",
    [("p + p", True, True), ("p * p", True, False), ("~p", False, False), ("p", True, True)],
)
def test_term_properties(l3, text, monotone, expanding):
    props = term_properties(l3, parse(text), names=["p"])
    assert props.monotone == monotone
    assert props.expanding == expanding


def test_quasiequation(l3, g3):
    premise = [(parse("p * p"), parse("p"))]
    conclusion = (parse("p \\/ ~p"), ONE)
    assert quasiequation_holds(l3, premise, conclusion) == (True, None)
    assert quasiequation_holds(g3, premise, conclusion) == (False, {"p": "0.5"})
