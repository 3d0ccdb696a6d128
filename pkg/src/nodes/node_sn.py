import logging

from langchain_core.runnables.config import RunnableConfig

from src.errors import ParseError, SnAbort
from src.nodes.transport import ABORT_NODE, abort, receive, send, session_rng, session_world
from src.parties.sn import (
    sn_forward_challenge,
    sn_forward_identification,
    sn_resolve_guti,
    sn_verify_response,
)
from src.session_state import SessionState
from src.sim.transcript import Direction
from src.wire import (
    GutiIdMsg,
    GutiSnToHnMsg,
    HnToSnAuthMsg,
    IdRequestMsg,
    IdResponseMsg,
    ResponseMsg,
    encode,
)

logger = logging.getLogger(__name__)


def node_sn_identification_request(state: SessionState, config: RunnableConfig):
    return send(state, config, IdRequestMsg(), Direction.SN_TO_UE, "ue_identification_response")


def node_sn_forward_identification(state: SessionState, config: RunnableConfig):
    world = session_world(config)
    try:
        msg = receive(state, IdResponseMsg)
    except ParseError as e:
        logger.info("SN %s dropped an identification response: %s", world.sn.id_sn, e)
        return abort("sn_forward_identification", "identification response did not parse")
    if msg.id_hn != world.hn.id_hn:
        return abort("sn_forward_identification", f"no route to home network {msg.id_hn}")

    forwarded, session_id = sn_forward_identification(world.sn, msg, session_rng(config))
    return send(state, config, forwarded, Direction.SN_TO_HN, "hn_identify", session_id=session_id)


def node_sn_resolve_guti(state: SessionState, config: RunnableConfig):
    world = session_world(config)
    try:
        msg = receive(state, GutiIdMsg)
    except ParseError:
        return abort("sn_resolve_guti", "GUTI message did not parse")

    forwarded, session_id = sn_resolve_guti(world.sn, msg, session_rng(config))
    if isinstance(forwarded, GutiSnToHnMsg):
        return send(state, config, forwarded, Direction.SN_TO_HN, "hn_guti_auth_vector", session_id=session_id)
    return send(
        state,
        config,
        forwarded,
        Direction.SN_TO_UE,
        "ue_identification_response",
        fell_back_to_supi=True,
    )


def node_sn_forward_challenge(state: SessionState, config: RunnableConfig):
    world = session_world(config)
    try:
        vector = receive(state, HnToSnAuthMsg)
        challenge = sn_forward_challenge(world.sn, vector, state["session_id"])
    except (ParseError, SnAbort) as e:
        return abort("sn_forward_challenge", str(e))
    return send(state, config, challenge, Direction.SN_TO_UE, "ue_process_challenge")


def node_sn_verify_response(state: SessionState, config: RunnableConfig):
    world = session_world(config)
    try:
        response = receive(state, ResponseMsg)
        completion = sn_verify_response(world.sn, response, state["session_id"], session_rng(config))
    except ParseError:
        return abort("sn_verify_response", "response did not parse")
    except SnAbort as e:
        return abort("sn_verify_response", e.reason)

    return send(
        state,
        config,
        completion.confirm,
        Direction.SN_TO_HN,
        "hn_finalize",
        sn_k_seaf=completion.k_seaf,
        supi_at_sn=completion.supi,
        secured_assignment=encode(completion.secured_assignment),
    )


def node_sn_assign_guti(state: SessionState, config: RunnableConfig):
    """Sends the sealed GUTI assignment produced by the successful verification"""
    update = send(state, config, state["secured_assignment"], Direction.SN_TO_UE, "ue_handle_guti_assignment")
    if update["next_node"] == ABORT_NODE:
        # The network side has completed; only the UE misses its new GUTI.
        update.update(next_node="session_completed", assignment_delivered=False)
        update.pop("aborted_at")
        update.pop("abort_reason")
    return update
