from src.sim.attacker import (
    Attacker,
    AttackerAction,
    AttackerContext,
    Compromise,
    CompromisedSecret,
    CompromiseTarget,
    Drop,
    Inject,
    Observe,
    Replay,
    Tamper,
    TapRule,
    attacker_act,
    flip_bit,
)
from src.sim.channel import Channel, Delivery, TapAction, TapDecision, TapPoint
from src.sim.transcript import ChannelKind, Direction, SessionTranscript, TranscriptEntry, write_transcripts

# run_session lives in src.session_graph, next to the graph it drives.

__all__ = [
    "Attacker",
    "AttackerAction",
    "AttackerContext",
    "Channel",
    "ChannelKind",
    "Compromise",
    "CompromiseTarget",
    "CompromisedSecret",
    "Delivery",
    "Direction",
    "Drop",
    "Inject",
    "Observe",
    "Replay",
    "SessionTranscript",
    "Tamper",
    "TapAction",
    "TapDecision",
    "TapPoint",
    "TapRule",
    "TranscriptEntry",
    "attacker_act",
    "flip_bit",
    "write_transcripts",
]
