import logging

from langchain_core.runnables.config import RunnableConfig

from src.errors import GutiFallback, ParseError, UeSilentAbort
from src.nodes.transport import abort, receive, send, session_rng, session_world
from src.parties.ue import (
    ue_guti_identification,
    ue_handle_guti_assignment,
    ue_identification_response,
    ue_open_guti_assignment,
    ue_process_challenge,
)
from src.session_state import SessionState
from src.sim.transcript import Direction
from src.wire import ChallengeMsg, IdRequestMsg, SecuredMsg

logger = logging.getLogger(__name__)


def _ue(config: RunnableConfig):
    return session_world(config).ue_for(config["configurable"].get("supi"))


def node_ue_guti_identification(state: SessionState, config: RunnableConfig):
    """UE opens a GUTI-based session, or falls back to waiting for an identification request"""
    try:
        msg = ue_guti_identification(_ue(config))
    except GutiFallback:
        return {"next_node": "sn_identification_request", "fell_back_to_supi": True}
    return send(state, config, msg, Direction.UE_TO_SN, "sn_resolve_guti")


def node_ue_identification_response(state: SessionState, config: RunnableConfig):
    try:
        receive(state, IdRequestMsg)
    except ParseError:
        return abort("ue_identification_response", "no identification request")
    msg = ue_identification_response(_ue(config), session_rng(config))
    return send(state, config, msg, Direction.UE_TO_SN, "sn_forward_identification")


def node_ue_process_challenge(state: SessionState, config: RunnableConfig):
    ue = _ue(config)
    try:
        challenge = receive(state, ChallengeMsg)
    except ParseError:
        # Undecodable challenge: same silent treatment as a failed MAC.
        return abort("ue_process_challenge", "challenge did not parse")
    try:
        response = ue_process_challenge(ue, challenge)
    except UeSilentAbort as e:
        return abort("ue_process_challenge", e.step)
    return send(
        state,
        config,
        response,
        Direction.UE_TO_SN,
        "sn_verify_response",
        ue_k_seaf=ue.session_keys.k_seaf,
    )


def node_ue_handle_guti_assignment(state: SessionState, config: RunnableConfig):
    ue = _ue(config)
    try:
        secured = receive(state, SecuredMsg)
        assignment = ue_open_guti_assignment(ue, secured)
    except (ParseError, UeSilentAbort):
        logger.info("UE %s discarded a GUTI assignment", ue.supi)
        return {"next_node": "session_completed", "assignment_delivered": False}
    ue_handle_guti_assignment(ue, assignment)
    return {"next_node": "session_completed", "assignment_delivered": True}
