import pytest

from mvmodal.errors import NotFound
from mvmodal.scenarios import SCENARIOS, Transcript, run_scenario


@pytest.mark.parametrize("scenario_id", list(SCENARIOS))
def test_scenario_passes(scenario_id):
    result = run_scenario(scenario_id)
    assert result.passed, result.text()
    assert result.text().startswith(f"PASS {scenario_id}:")


def test_scenario_with_threads():
    assert run_scenario("prop312_definability", jobs=2).passed


def test_unknown_scenario():
    with pytest.raises(NotFound):
        run_scenario("fig9")


def test_transcript():
    t = Transcript()
    assert t.expect("answer", 42, 42)
    assert not t.expect("question", "six", "nine")
    assert not t.passed
    assert t.lines == ["ok   answer: 42", "FAIL question: expected nine, got six"]
