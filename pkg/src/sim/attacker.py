"""Dolev-Yao attacker on the radio channel.

The attacker sees every radio message, and may drop, tamper, replay or inject
at message boundaries. It never reaches into a party's computation. Long-term
secrets can be handed to it explicitly between sessions (compromise), which is
what the forward-secrecy games build on.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Any, Callable, Optional, Union

from src.errors import ThreatModelViolation
from src.sim.channel import TapAction, TapDecision, TapPoint
from src.sim.transcript import ChannelKind, Direction, TranscriptEntry
from src.wire import MessageType

if TYPE_CHECKING:
    from src.world import World

logger = logging.getLogger(__name__)


class CompromiseTarget(str, Enum):
    UE_LONG_TERM_KEY = "ue.k"
    HN_SECRET_KEY = "hn.sk_h"
    HN_REGISTRY = "hn.registry"
    SN_SESSION_KEY = "sn.k_seaf"


@dataclass(frozen=True)
class CompromisedSecret:
    target: CompromiseTarget
    value: Any
    # Number of sessions the world had run when the secret leaked.
    acquired_at: int
    subject: str = ""


@dataclass
class AttackerContext:
    observed: list[bytes] = field(default_factory=list)
    injected: list[bytes] = field(default_factory=list)
    compromised: list[CompromisedSecret] = field(default_factory=list)

    def secrets(self, target: CompromiseTarget) -> list[CompromisedSecret]:
        return [c for c in self.compromised if c.target is target]


# === Actions ===


@dataclass(frozen=True)
class Observe:
    pass


@dataclass(frozen=True)
class Drop:
    pass


@dataclass(frozen=True)
class Replay:
    entry: TranscriptEntry


@dataclass(frozen=True)
class Tamper:
    entry: TranscriptEntry
    mutation: Callable[[bytes], bytes]


@dataclass(frozen=True)
class Inject:
    data: bytes


@dataclass(frozen=True)
class Compromise:
    target: CompromiseTarget
    subject: str = ""
    session_id: Optional[bytes] = None


AttackerAction = Union[Observe, Drop, Replay, Tamper, Inject, Compromise]


def flip_bit(index: int) -> Callable[[bytes], bytes]:
    """Mutation flipping one bit, counted from the most significant bit of byte 0"""

    def mutate(data: bytes) -> bytes:
        out = bytearray(data)
        out[index // 8] ^= 0x80 >> (index % 8)
        return bytes(out)

    return mutate


def _require_radio(entry: TranscriptEntry) -> None:
    if entry.channel is not ChannelKind.RADIO:
        raise ThreatModelViolation(f"entry {entry.ref} travelled on the core channel")


def _read_secret(world: "World", action: Compromise) -> tuple[Any, str]:
    if action.target is CompromiseTarget.UE_LONG_TERM_KEY:
        ue = world.ue_for(action.subject or None)
        return ue.k, ue.supi
    if action.target is CompromiseTarget.HN_SECRET_KEY:
        return world.hn.kem_pair.sk, world.hn.id_hn
    if action.target is CompromiseTarget.HN_REGISTRY:
        snapshot = {supi: (r.k, r.k_s) for supi, r in world.hn.registry.items()}
        return snapshot, world.hn.id_hn
    established = world.sn.established.get(action.session_id or b"")
    if established is None:
        raise ThreatModelViolation("no established session with that id at the SN")
    return established.k_seaf, action.session_id.hex()


def attacker_act(
    ctx: AttackerContext, action: AttackerAction, world: Optional["World"] = None
) -> tuple[AttackerContext, TapDecision]:
    if isinstance(action, Observe):
        return ctx, TapDecision.passthrough()
    if isinstance(action, Drop):
        return ctx, TapDecision(TapAction.DROP)
    if isinstance(action, Replay):
        _require_radio(action.entry)
        ctx.injected.append(action.entry.data)
        return ctx, TapDecision(TapAction.INJECT, action.entry.data)
    if isinstance(action, Tamper):
        _require_radio(action.entry)
        mutated = action.mutation(action.entry.data)
        ctx.injected.append(mutated)
        return ctx, TapDecision(TapAction.REPLACE, mutated)
    if isinstance(action, Inject):
        ctx.injected.append(action.data)
        return ctx, TapDecision(TapAction.INJECT, action.data)

    if world is None:
        raise ThreatModelViolation("compromise needs the world it targets")
    if world.active_session is not None:
        raise ThreatModelViolation("compromise is only possible between sessions, never of in-flight ephemerals")
    value, subject = _read_secret(world, action)
    ctx.compromised.append(
        CompromisedSecret(target=action.target, value=value, acquired_at=world.sessions_run, subject=subject)
    )
    logger.info("attacker compromised %s (%s)", action.target.value, subject)
    return ctx, TapDecision.passthrough()


# === Scripted attacker ===


@dataclass
class TapRule:
    act: Callable[[AttackerContext, TapPoint], AttackerAction]
    message_type: Optional[MessageType] = None
    direction: Optional[Direction] = None
    session_label: Optional[str] = None
    # None means the rule never runs out.
    remaining: Optional[int] = None

    def matches(self, point: TapPoint) -> bool:
        if self.remaining is not None and self.remaining <= 0:
            return False
        if self.message_type is not None and point.message_type is not self.message_type:
            return False
        if self.direction is not None and point.direction is not self.direction:
            return False
        if self.session_label is not None and point.session_label != self.session_label:
            return False
        return True


class Attacker:
    """Records every radio message and applies the first matching rule"""

    def __init__(self, rules: Optional[list[TapRule]] = None, ctx: Optional[AttackerContext] = None):
        self.rules = list(rules or [])
        self.ctx = ctx or AttackerContext()
        self.entries: list[TranscriptEntry] = []

    def __call__(self, point: TapPoint) -> TapDecision:
        self.ctx.observed.append(point.data)
        self.entries.append(point.entry)
        for rule in self.rules:
            if rule.matches(point):
                if rule.remaining is not None:
                    rule.remaining -= 1
                self.ctx, decision = attacker_act(self.ctx, rule.act(self.ctx, point))
                return decision
        return TapDecision.passthrough()

    def attach(self, world: "World") -> "Attacker":
        world.radio.add_tap(self)
        return self

    def compromise(self, world: "World", target: CompromiseTarget, **kwargs: Any) -> CompromisedSecret:
        self.ctx, _ = attacker_act(self.ctx, Compromise(target, **kwargs), world=world)
        return self.ctx.compromised[-1]

    def recorded(self, message_type: MessageType, session_label: Optional[str] = None) -> list[TranscriptEntry]:
        return [
            e
            for e in self.entries
            if e.data[:1] == bytes([message_type]) and (session_label is None or e.session_label == session_label)
        ]
