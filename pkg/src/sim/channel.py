"""The two simulated channels.

Radio carries UE<->SN traffic and runs every message through the attacker
taps. Core carries SN<->HN traffic, is authenticated and confidential, and
accepts no taps at all.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

from src.errors import ThreatModelViolation, UsageError
from src.sim.transcript import ChannelKind, Direction, TranscriptEntry
from src.wire import MessageType, peek_type

logger = logging.getLogger(__name__)


class TapAction(str, Enum):
    PASS = "pass"
    DROP = "drop"
    REPLACE = "replace"
    INJECT = "inject"


@dataclass(frozen=True)
class TapDecision:
    action: TapAction
    data: Optional[bytes] = None

    @classmethod
    def passthrough(cls) -> "TapDecision":
        return cls(TapAction.PASS)


@dataclass(frozen=True)
class TapPoint:
    """A radio message at the moment it crosses the attacker's position"""

    step: int
    direction: Direction
    data: bytes
    session_label: str = ""

    @property
    def message_type(self) -> Optional[MessageType]:
        return peek_type(self.data)

    @property
    def entry(self) -> TranscriptEntry:
        return TranscriptEntry(
            step=self.step,
            channel=ChannelKind.RADIO,
            direction=self.direction,
            data=self.data,
            session_label=self.session_label,
        )


Tap = Callable[[TapPoint], TapDecision]


@dataclass
class Delivery:
    entries: list[TranscriptEntry]
    # None when the message never reached the receiver.
    payload: Optional[bytes]


@dataclass
class Channel:
    kind: ChannelKind
    taps: list[Tap] = field(default_factory=list)

    def add_tap(self, tap: Tap) -> None:
        if self.kind is ChannelKind.CORE:
            raise ThreatModelViolation("the core channel is authenticated and confidential, it cannot be tapped")
        self.taps.append(tap)

    def clear_taps(self) -> None:
        self.taps.clear()

    def transmit(self, data: bytes, direction: Direction, step: int, session_label: str = "") -> Delivery:
        if direction.channel is not self.kind:
            raise UsageError(f"{direction.value} traffic does not travel on the {self.kind.value} channel")

        def entry(at: int, payload: bytes, delivered: bool, *annotations: str) -> TranscriptEntry:
            return TranscriptEntry(
                step=at,
                channel=self.kind,
                direction=direction,
                data=payload,
                delivered=delivered,
                session_label=session_label,
                annotations=annotations,
            )

        if self.kind is ChannelKind.CORE:
            return Delivery([entry(step, data, True)], data)

        current: Optional[bytes] = data
        effect: Optional[TapAction] = None
        for tap in self.taps:
            decision = tap(TapPoint(step=step, direction=direction, data=current, session_label=session_label))
            if decision.action is TapAction.PASS:
                continue
            if decision.action is TapAction.DROP:
                current, effect = None, TapAction.DROP
                break
            current, effect = decision.data, decision.action

        if effect is None:
            return Delivery([entry(step, data, True)], data)
        if effect is TapAction.DROP:
            logger.debug("radio message at step %d dropped", step)
            return Delivery([entry(step, data, False, "dropped")], None)

        label = "tampered" if effect is TapAction.REPLACE else "injected"
        logger.debug("radio message at step %d %s", step, label)
        return Delivery(
            [entry(step, data, False, "superseded"), entry(step + 1, current, True, label)],
            current,
        )
