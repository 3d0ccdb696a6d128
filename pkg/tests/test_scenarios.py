import pytest

from src.attacks import (
    SCENARIOS,
    Verdict,
    run_scenarios,
    scenario_compromised_sn_binding,
    scenario_forward_secrecy_game,
    scenario_linkability_probe,
    scenario_replay_challenge,
)
from src.attacks.scenarios import REPLAY_VARIANTS
from src.errors import UsageError
from src.protocol_overrides import set_protocol_overrides
from src.session_state import SessionMode


def _assert_holds_with_discriminating_controls(verdict: Verdict):
    assert verdict.holds, verdict.details
    assert verdict.evidence
    assert verdict.controls
    for control in verdict.controls:
        assert control.is_control
        assert not control.holds, control.scenario


def test_replay_challenge():
    verdict = scenario_replay_challenge(seed=0)
    _assert_holds_with_discriminating_controls(verdict)
    for variant in REPLAY_VARIANTS:
        assert verdict.details[variant] == "ue_process_challenge"
    assert verdict.details["replayed_suci"]["hn_accepted"]
    assert verdict.details["replayed_suci"]["follow_up_completed"]


def test_replay_fails_without_the_mac_check():
    with set_protocol_overrides({"skip_ue_mac_check": True}):
        verdict = scenario_replay_challenge(seed=0)
    assert not verdict.holds


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_linkability_probe(seed):
    verdict = scenario_linkability_probe(seed=seed)
    _assert_holds_with_discriminating_controls(verdict)
    assert verdict.controls[0].details["repeated_same_ue"]


def test_linkability_probe_single_mode():
    verdict = scenario_linkability_probe(modes=(SessionMode.GUTI,))
    assert verdict.holds
    assert set(verdict.details) == {"linkability/guti"}


def test_compromised_sn_binding():
    verdict = scenario_compromised_sn_binding(seed=0)
    _assert_holds_with_discriminating_controls(verdict)
    closure = verdict.details["sn_binding/closure"]
    assert closure["early_secrets_in_state"] is False
    foreign = verdict.details["sn_binding/foreign_vector"]
    assert foreign["hn_refused"]
    assert foreign["stopped_at"] == "sn_verify_response"


def test_forward_secrecy_game():
    verdict = scenario_forward_secrecy_game(seed=0)
    _assert_holds_with_discriminating_controls(verdict)
    assert len(verdict.controls) == 3
    assert verdict.details["forward_secrecy/supi"]["exposed"] == []
    assert verdict.details["forward_secrecy/guti"]["exposed"] == []


def test_forward_secrecy_under_ecies_baseline():
    verdict = scenario_forward_secrecy_game(suite_name="ecies-x25519", seed=3)
    assert verdict.holds


def test_run_scenarios_expands_all():
    verdicts = run_scenarios(["all"], seed=1)
    assert [v.scenario for v in verdicts] == [
        "replay_challenge",
        "linkability",
        "compromised_sn_binding",
        "forward_secrecy",
    ]
    assert len(verdicts) == len(SCENARIOS)
    assert all(v.holds for v in verdicts)


def test_unknown_scenario():
    with pytest.raises(UsageError):
        run_scenarios(["nosuch"])


def test_verdict_needs_evidence_to_hold():
    with pytest.raises(ValueError):
        Verdict(scenario="x", holds=True)


def test_verdicts_flatten_into_json_lines():
    control = Verdict(scenario="x/control", holds=False, is_control=True)
    verdict = Verdict(scenario="x", holds=True, evidence=["a#1"], controls=[control])
    lines = verdict.to_jsonl().splitlines()
    assert len(lines) == 2
    assert '"is_control":true' in lines[1]
    assert verdict.controls_discriminate
