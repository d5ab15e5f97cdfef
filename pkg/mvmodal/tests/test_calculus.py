import os

import pytest

from mvmodal.algebra.presets import boolean2, godel, lukasiewicz, product
from mvmodal.calculus.base import EXPLICIT, PLAIN_ORACLE, parse_rule_name
from mvmodal.calculus.derivation import check_derivation, load_derivation, parse_derivation
from mvmodal.calculus.generators import generate_bookkeeping, generate_witnessing
from mvmodal.calculus.presets import PRESETS, eta_rule, preset_calculus
from mvmodal.calculus.soundness import axiom_soundness, rule_soundness, soundness_probe
from mvmodal.errors import (
    BadParam,
    ConstantsDisabled,
    DerivationFormatError,
    InvalidStep,
    PrerequisiteFails,
    UnknownSchema,
)
from mvmodal.formula.ast import ZERO, And, iff
from mvmodal.formula.parser import parse
from mvmodal.search.consequence import is_tautology

SHIPPED = ["crisp_eta_commutation.deriv", "eta_rules_lukasiewicz3.deriv", "fusion_distribution.deriv"]

TABLE3 = "calculus: table3(lukasiewicz(3)^c)\n"


def _check(text, **kwargs):
    derivation = parse_derivation(text)
    return check_derivation(derivation.build_calculus(), derivation, **kwargs)


# Derivations


@pytest.mark.parametrize("name", SHIPPED)
def test_shipped_derivations(data_dir, name):
    derivation = load_derivation(os.path.join(data_dir, name))
    report = check_derivation(derivation.build_calculus(), derivation, strict=False)
    assert report.ok, report.reason
    assert report.steps == len(derivation.steps)
    assert report.text().startswith("ok:")


def test_theorems_skip_assumptions():
    report = _check(TABLE3 + "1: p ; assume\n2: p -> q ; assume\n3: q ; mp 2 1\n4: []1 ; axiom Box1\n")
    assert report.ok
    assert report.theorems == ["[]1"]


def test_fusion_distribution_theorems(data_dir):
    derivation = load_derivation(os.path.join(data_dir, "fusion_distribution.deriv"))
    report = check_derivation(derivation.build_calculus(), derivation)
    assert len(report.theorems) == 10
    assert report.theorems[-1] == "[]p * []q -> [](p * q)"


def test_missing_rule_is_invalid():
    text = TABLE3 + "1: p ; assume\n2: []p ; nec 1\n"
    with pytest.raises(InvalidStep) as excinfo:
        _check(text)
    assert excinfo.value.step == 2
    report = _check(text, strict=False)
    assert (report.ok, report.invalid_step) == (False, 2)
    assert report.text().startswith("invalid step 2:")


@pytest.mark.parametrize(
    "steps, number",
    [
        ("1: p \\/ ~p ; nmtaut\n", 1),
        ("1: p ; mp 1 2\n", 1),
        ("1: p ; assume\n2: q ; mp 1 3\n", 2),
        ("1: p ; assume\n2: q ; assume\n3: q ; mp 1 2\n", 3),
        ("1: p -> q ; assume\n2: []q -> []p ; mon 1\n", 2),
        ("1: p ; assume\n2: q ; nmcons 1\n", 2),
        ("1: []p ; axiom Box1\n", 1),
        ("1: [](@0.5 -> p) <-> (@1 -> []p) ; axiom Ax_a\n", 1),
    ],
)
def test_invalid_steps(steps, number):
    with pytest.raises(InvalidStep) as excinfo:
        _check(TABLE3 + steps)
    assert excinfo.value.step == number


def test_constant_axiom_instance():
    assert _check(TABLE3 + "1: [](@0.5 -> p) <-> (@0.5 -> []p) ; axiom Ax_a\n").ok


def test_unknown_axiom():
    with pytest.raises(UnknownSchema):
        _check(TABLE3 + "1: p ; axiom Nope\n")


def test_explicit_base_has_no_oracle():
    with pytest.raises(InvalidStep):
        _check("calculus: table2(godel(3))\n1: p -> p ; nmtaut\n")


def test_plain_oracle_reads_constants_as_variables():
    # @0.5 <-> ~@0.5 holds for the constant but not for a variable
    text = "calculus: cor_a17(lukasiewicz(3)^c)\n1: @0.5 -> @0.5 ; nmtaut\n2: @0.5 <-> (@0.5 -> 0) ; nmtaut\n"
    with pytest.raises(InvalidStep) as excinfo:
        _check(text)
    assert excinfo.value.step == 2


@pytest.mark.parametrize(
    "text",
    [
        "1: p ; assume\n",
        TABLE3 + TABLE3,
        TABLE3 + "1: p\n",
        TABLE3 + "1: p ; frobnicate\n",
        TABLE3 + "1: p ; mp 1\n",
        TABLE3 + "1: p ; mp a b\n",
        TABLE3 + "1: p ; axiom\n",
        TABLE3 + "1: p ; nmcons\n",
        TABLE3 + "1: p ; assume\n1: q ; assume\n",
        TABLE3 + "2: p ; assume\n1: q ; assume\n",
        TABLE3 + "1: p & q ; assume\n",
        TABLE3 + "one: p ; assume\n",
    ],
)
def test_derivation_format_errors(text):
    with pytest.raises(DerivationFormatError):
        parse_derivation(text)


def test_derivation_comments_and_reserved_variables():
    derivation = parse_derivation(TABLE3 + "# comment\n1: $r0 -> $r0 ; nmtaut  # trailing\n")
    assert derivation.calculus == "table3"
    assert derivation.algebra == "lukasiewicz(3)^c"
    assert str(derivation.steps[0].justification) == "nmtaut"


# Presets


def test_preset_names(l3, l3c):
    assert sorted(PRESETS) == [
        "cor_a16",
        "cor_a17",
        "table1",
        "table1md",
        "table2",
        "table3",
        "table3k",
        "table4",
        "table5",
    ]
    assert preset_calculus("table1", l3).reference == "table1(lukasiewicz(3))"
    assert preset_calculus("table3k", l3c).reference == "table3k(lukasiewicz(3)^c)"
    assert preset_calculus("table2", godel(3)).base == EXPLICIT
    assert preset_calculus("cor_a16", l3c).base == PLAIN_ORACLE
    assert not preset_calculus("cor_a17", l3c).modal


@pytest.mark.parametrize(
    "name, algebra",
    [
        ("table1", godel(3)),
        ("table2", lukasiewicz(3)),
        ("table3", lukasiewicz(3)),
        ("table4", product(boolean2(), lukasiewicz(3)).with_constants()),
        ("table5", godel(4)),
        ("cor_a16", boolean2().with_constants()),
        ("cor_a17", godel(3).with_constants()),
    ],
)
def test_preset_prerequisites(name, algebra):
    with pytest.raises(PrerequisiteFails):
        preset_calculus(name, algebra)


def test_unknown_preset(l3):
    with pytest.raises(BadParam):
        preset_calculus("table9", l3)


def test_table4_coatom_axiom(l3c):
    calc = preset_calculus("table4", l3c)
    assert str(calc.axiom("KC")[0].formula) == "[](@0.5 \\/ phi) -> @0.5 \\/ []phi"


def test_rule_names():
    assert parse_rule_name("R_0.5^1") == ("0.5", ["1"])
    assert parse_rule_name("R_1") == ("1", None)
    assert parse_rule_name("R_1^0.5,1") == ("1", ["0.5", "1"])
    assert parse_rule_name("MP") is None


def test_eta_rules(l3):
    calc = preset_calculus("table5", l3)
    assert len(calc.rule("R_1").premises) == 2
    assert len(calc.rule("R_0.5").premises) == 1
    assert calc.has_rule("R_0.5^1,0.5")
    assert not calc.has_rule("R_0")
    assert not calc.has_rule("R_0.75")
    assert not calc.has_rule("N")
    with pytest.raises(PrerequisiteFails):
        eta_rule(l3, l3.bottom)


# Generators


def test_bookkeeping(l3c):
    formulas = generate_bookkeeping(l3c)
    assert len(formulas) == 4 * 9
    assert formulas[0] == iff(And(ZERO, ZERO), ZERO)
    assert parse("@0.5 * @0.5 <-> 0") in formulas
    assert parse("@0.5 -> 0 <-> @0.5") in formulas
    assert all(is_tautology(l3c, phi) for phi in formulas)


def test_witnessing(l3c):
    phi = generate_witnessing(l3c)
    assert phi == parse("(p <-> 0) \\/ (p <-> @0.5) \\/ (p <-> 1)")
    assert is_tautology(l3c, phi)
    assert generate_witnessing(l3c, "q") == parse("(q <-> 0) \\/ (q <-> @0.5) \\/ (q <-> 1)")


def test_generators_need_constants(l3):
    with pytest.raises(ConstantsDisabled):
        generate_bookkeeping(l3)
    with pytest.raises(ConstantsDisabled):
        generate_witnessing(l3)


# Soundness probes


def test_axiom_soundness(l3c):
    report = axiom_soundness(preset_calculus("table3", l3c), 2)
    assert report.sound
    assert len(report.checked) == 5
    assert report.frame_class == "all"
    assert report.text().startswith("table3(lukasiewicz(3)^c): 5 formula(s) checked [all, up to 2 world(s)]")


def test_nonmodal_axiom_soundness(l3c):
    report = axiom_soundness(preset_calculus("cor_a17", l3c), 1)
    assert report.sound
    assert report.frame_class is None
    assert len(report.checked) == 4 * 9 + 1


def test_k_is_unsound_on_all_frames(l3c):
    report = axiom_soundness(preset_calculus("table3k", l3c), 1, frame_class="all")
    assert not report.sound
    assert [v["axiom"] for v in report.violations] == ["K"]


def test_soundness_probe(data_dir, l3c):
    derivation = load_derivation(os.path.join(data_dir, "fusion_distribution.deriv"))
    report = soundness_probe(preset_calculus("table3k", l3c), [derivation], 2)
    assert report.sound
    assert report.frame_class == "idem"
    assert len(report.checked) == 10


def test_soundness_probe_needs_oracle():
    with pytest.raises(PrerequisiteFails):
        soundness_probe(preset_calculus("table2", godel(3)), [], 1)


def test_rule_soundness(l3):
    report = rule_soundness(preset_calculus("table1", l3), "N", [parse("p"), parse("p -> p")], 2)
    assert report.sound
    assert report.skipped == 1
    assert report.checked == ["[](p -> p)"]
