from src.attacks.closure import Knowledge, Sort, close, knowledge_from_entries
from src.attacks.scenarios import (
    SCENARIOS,
    run_scenarios,
    scenario_compromised_sn_binding,
    scenario_forward_secrecy_game,
    scenario_linkability_probe,
    scenario_replay_challenge,
)
from src.attacks.verdict import Verdict

__all__ = [
    "SCENARIOS",
    "Knowledge",
    "Sort",
    "Verdict",
    "close",
    "knowledge_from_entries",
    "run_scenarios",
    "scenario_compromised_sn_binding",
    "scenario_forward_secrecy_game",
    "scenario_linkability_probe",
    "scenario_replay_challenge",
]
