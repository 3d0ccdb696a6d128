import logging

from langchain_core.runnables.config import RunnableConfig

from src.errors import HnAbort, ParseError
from src.nodes.transport import abort, receive, send, session_rng, session_world
from src.parties.hn import hn_auth_vector, hn_finalize, hn_guti_auth_vector, hn_identify
from src.session_state import SessionState
from src.sim.transcript import Direction
from src.wire import ConfirmMsg, GutiSnToHnMsg, SnToHnIdentMsg

logger = logging.getLogger(__name__)


def node_hn_identify(state: SessionState, config: RunnableConfig):
    """Identifies the UE and answers with a fresh authentication vector"""
    world = session_world(config)
    try:
        msg = receive(state, SnToHnIdentMsg)
        # The core channel authenticates its peer, so the claimed ID_SN is the sender's own.
        found = hn_identify(world.hn, msg, claimed_id_sn=world.sn.id_sn)
        bundle = hn_auth_vector(
            world.hn,
            found.record,
            found.pk_u,
            msg.r_sn,
            found.id_sn,
            session_rng(config),
            session_id=found.session_id,
        )
    except ParseError:
        return abort("hn_identify", "identification did not parse")
    except HnAbort as e:
        # The SN drops the session and tells the UE nothing.
        return abort("hn_identify", e.code)
    return send(
        state,
        config,
        bundle.to_message(),
        Direction.HN_TO_SN,
        "sn_forward_challenge",
        hn_k_seaf=bundle.retained.k_seaf,
    )


def node_hn_guti_auth_vector(state: SessionState, config: RunnableConfig):
    world = session_world(config)
    try:
        msg = receive(state, GutiSnToHnMsg)
        bundle = hn_guti_auth_vector(world.hn, msg, world.sn.id_sn)
    except ParseError:
        return abort("hn_guti_auth_vector", "vector request did not parse")
    except HnAbort as e:
        return abort("hn_guti_auth_vector", e.code)
    return send(
        state,
        config,
        bundle.to_message(),
        Direction.HN_TO_SN,
        "sn_forward_challenge",
        hn_k_seaf=bundle.retained.k_seaf,
    )


def node_hn_finalize(state: SessionState, config: RunnableConfig):
    world = session_world(config)
    try:
        confirm = receive(state, ConfirmMsg)
    except ParseError:
        return abort("hn_finalize", "confirmation did not parse")
    hn_finalize(world.hn, confirm, state["session_id"])
    return {"next_node": "sn_assign_guti", "inbox": None}
