from typing import Any, TypeVar, Union

from langchain_core.runnables.config import RunnableConfig

from src.crypto.random_source import RandomSource
from src.errors import ParseError
from src.session_state import SessionState
from src.sim.transcript import ChannelKind, Direction
from src.wire import WireMessage, decode, encode
from src.world import World

MessageT = TypeVar("MessageT", bound=WireMessage)

ABORT_NODE = "session_aborted"


def session_world(config: RunnableConfig) -> World:
    return config["configurable"]["world"]


def session_rng(config: RunnableConfig) -> RandomSource:
    return config["configurable"]["rng"]


def session_label(config: RunnableConfig) -> str:
    return config["configurable"].get("session_label", "")


def next_step(state: SessionState) -> int:
    return len(state.get("transcript") or [])


def send(
    state: SessionState,
    config: RunnableConfig,
    msg: Union[WireMessage, bytes],
    direction: Direction,
    next_node: str,
    **updates: Any,
) -> dict:
    """Puts a message on its channel; the receiving node is `next_node`"""
    world = session_world(config)
    channel = world.radio if direction.channel is ChannelKind.RADIO else world.core
    data = encode(msg) if isinstance(msg, WireMessage) else msg
    delivery = channel.transmit(data, direction, next_step(state), session_label(config))
    update = {"transcript": delivery.entries, "inbox": delivery.payload, **updates}
    if delivery.payload is None:
        update.update(next_node=ABORT_NODE, aborted_at=next_node, abort_reason="nothing delivered")
    else:
        update["next_node"] = next_node
    return update


def receive(state: SessionState, expected: type[MessageT]) -> MessageT:
    data = state.get("inbox")
    if data is None:
        raise ParseError(0, "no message delivered")
    msg = decode(data)
    if not isinstance(msg, expected):
        raise ParseError(0, f"expected {expected.__name__}, got {type(msg).__name__}")
    return msg


def abort(step: str, reason: str, **updates: Any) -> dict:
    return {"next_node": ABORT_NODE, "aborted_at": step, "abort_reason": reason, "inbox": None, **updates}
