"""One authentication session as a LangGraph state machine.

Each protocol step is a node. Nodes hand each other the delivered bytes via
`inbox` and pick their successor through `next_node`; every abort funnels
through `session_aborted` for cleanup.
"""

import logging
from typing import Optional

from langchain_core.runnables.config import RunnableConfig
from langgraph.graph import END, START, StateGraph
from pydantic import BaseModel, Field

from src.config_schema import SessionConfigSchema
from src.crypto.random_source import OsRandom, RandomSource
from src.nodes.node_hn import node_hn_finalize, node_hn_guti_auth_vector, node_hn_identify
from src.nodes.node_sn import (
    node_sn_assign_guti,
    node_sn_forward_challenge,
    node_sn_forward_identification,
    node_sn_identification_request,
    node_sn_resolve_guti,
    node_sn_verify_response,
)
from src.nodes.node_ue import (
    node_ue_guti_identification,
    node_ue_handle_guti_assignment,
    node_ue_identification_response,
    node_ue_process_challenge,
)
from src.nodes.transport import ABORT_NODE, session_world
from src.parties.hn import hn_abort_session
from src.parties.sn import sn_abort_session
from src.parties.ue import ue_end_session
from src.session_state import SessionMode, SessionState
from src.sim.attacker import Attacker
from src.sim.transcript import SessionTranscript
from src.world import World

logger = logging.getLogger(__name__)

graph_builder = StateGraph(SessionState, SessionConfigSchema)


# === START - route by session mode
def edge_route_by_mode(state: SessionState):
    return state.get("mode") or SessionMode.SUPI.value


graph_builder.add_conditional_edges(
    START,
    edge_route_by_mode,
    {"supi": "sn_identification_request", "guti": "ue_guti_identification"},
)


def edge_next_node(state: SessionState):
    next_node = state.get("next_node")
    if not next_node:
        raise ValueError("node finished without choosing a successor")
    return next_node


# Successors each node may pick; the abort node is reachable from all of them.
_ROUTES: dict[str, list[str]] = {
    "ue_guti_identification": ["sn_resolve_guti", "sn_identification_request"],
    "sn_resolve_guti": ["hn_guti_auth_vector", "ue_identification_response"],
    "hn_guti_auth_vector": ["sn_forward_challenge"],
    "sn_identification_request": ["ue_identification_response"],
    "ue_identification_response": ["sn_forward_identification"],
    "sn_forward_identification": ["hn_identify"],
    "hn_identify": ["sn_forward_challenge"],
    "sn_forward_challenge": ["ue_process_challenge"],
    "ue_process_challenge": ["sn_verify_response"],
    "sn_verify_response": ["hn_finalize"],
    "hn_finalize": ["sn_assign_guti"],
    "sn_assign_guti": ["ue_handle_guti_assignment", "session_completed"],
    "ue_handle_guti_assignment": ["session_completed"],
}

_NODES = {
    "ue_guti_identification": node_ue_guti_identification,
    "sn_resolve_guti": node_sn_resolve_guti,
    "hn_guti_auth_vector": node_hn_guti_auth_vector,
    "sn_identification_request": node_sn_identification_request,
    "ue_identification_response": node_ue_identification_response,
    "sn_forward_identification": node_sn_forward_identification,
    "hn_identify": node_hn_identify,
    "sn_forward_challenge": node_sn_forward_challenge,
    "ue_process_challenge": node_ue_process_challenge,
    "sn_verify_response": node_sn_verify_response,
    "hn_finalize": node_hn_finalize,
    "sn_assign_guti": node_sn_assign_guti,
    "ue_handle_guti_assignment": node_ue_handle_guti_assignment,
}

for name, node in _NODES.items():
    graph_builder.add_node(name, node)
    graph_builder.add_conditional_edges(
        name, edge_next_node, {target: target for target in [*_ROUTES[name], ABORT_NODE]}
    )


# === ABORT - erase ephemerals and pending SN state; HN keeps its staged key for a retry
def node_session_aborted(state: SessionState, config: RunnableConfig):
    world = session_world(config)
    ue = world.ue_for(config["configurable"].get("supi"))
    ue_end_session(ue)
    sn_abort_session(world.sn, state.get("session_id"))
    hn_abort_session(world.hn, state.get("session_id"))
    logger.info("session aborted at %s: %s", state.get("aborted_at"), state.get("abort_reason"))
    return {"inbox": None, "next_node": None}


graph_builder.add_node(ABORT_NODE, node_session_aborted)
graph_builder.add_edge(ABORT_NODE, END)


# === COMPLETED
def node_session_completed(state: SessionState, config: RunnableConfig):
    world = session_world(config)
    ue_end_session(world.ue_for(config["configurable"].get("supi")))
    return {"inbox": None, "next_node": None}


graph_builder.add_node("session_completed", node_session_completed)
graph_builder.add_edge("session_completed", END)

# === Compile Graph ===
graph = graph_builder.compile()


# === Running a session ===


class SessionOutcome(BaseModel):
    label: str = ""
    mode: SessionMode
    completed: bool
    aborted_at: Optional[str] = None
    abort_reason: Optional[str] = None
    fell_back_to_supi: bool = False
    assignment_delivered: bool = False
    session_id: Optional[bytes] = None
    supi_at_sn: Optional[str] = None
    ue_k_seaf: Optional[bytes] = Field(default=None, repr=False)
    sn_k_seaf: Optional[bytes] = Field(default=None, repr=False)
    hn_k_seaf: Optional[bytes] = Field(default=None, repr=False)

    @property
    def keys_agree(self) -> bool:
        return self.ue_k_seaf is not None and self.ue_k_seaf == self.sn_k_seaf == self.hn_k_seaf


class SessionResult(BaseModel):
    transcript: SessionTranscript
    outcome: SessionOutcome


def run_session(
    world: World,
    mode: SessionMode | str = SessionMode.SUPI,
    attacker: Optional[Attacker] = None,
    rng: Optional[RandomSource] = None,
    label: str = "",
    supi: Optional[str] = None,
) -> SessionResult:
    """Drives one full session through the graph.

    The attacker, when given, taps the radio channel for this session only.
    Provisioning problems raise ConfigurationError before any message is sent.
    """
    mode = SessionMode(mode)
    ue = world.ue_for(supi)
    world.check_provisioning(ue)
    if rng is None:
        rng = OsRandom()

    if attacker is not None:
        attacker.attach(world)
    world.active_session = label or f"session-{world.sessions_run}"
    try:
        final = graph.invoke(
            {"transcript": [], "mode": mode.value},
            config={
                "configurable": {"world": world, "rng": rng, "supi": ue.supi, "session_label": label},
            },
        )
    finally:
        world.active_session = None
        world.sessions_run += 1
        if attacker is not None:
            world.radio.taps.remove(attacker)

    aborted_at = final.get("aborted_at")
    outcome = SessionOutcome(
        label=label,
        mode=mode,
        completed=aborted_at is None,
        aborted_at=aborted_at,
        abort_reason=final.get("abort_reason"),
        fell_back_to_supi=bool(final.get("fell_back_to_supi")),
        assignment_delivered=bool(final.get("assignment_delivered")),
        session_id=final.get("session_id"),
        supi_at_sn=final.get("supi_at_sn"),
        ue_k_seaf=final.get("ue_k_seaf"),
        sn_k_seaf=final.get("sn_k_seaf"),
        hn_k_seaf=final.get("hn_k_seaf"),
    )
    return SessionResult(transcript=SessionTranscript(label=label, entries=final["transcript"]), outcome=outcome)
