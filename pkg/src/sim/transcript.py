from enum import Enum
from pathlib import Path
from typing import Iterable

from pydantic import BaseModel, ConfigDict, Field

from src.wire import HexBytes


class ChannelKind(str, Enum):
    RADIO = "radio"
    CORE = "core"


class Direction(str, Enum):
    UE_TO_SN = "ue->sn"
    SN_TO_UE = "sn->ue"
    SN_TO_HN = "sn->hn"
    HN_TO_SN = "hn->sn"

    @property
    def channel(self) -> ChannelKind:
        if self in (Direction.UE_TO_SN, Direction.SN_TO_UE):
            return ChannelKind.RADIO
        return ChannelKind.CORE


class TranscriptEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    step: int
    channel: ChannelKind
    direction: Direction
    data: HexBytes
    # False when the attacker dropped or replaced these bytes before delivery.
    delivered: bool = True
    session_label: str = ""
    annotations: tuple[str, ...] = ()

    @property
    def ref(self) -> str:
        label = f"{self.session_label}#" if self.session_label else "#"
        return f"{label}{self.step}"


class SessionTranscript(BaseModel):
    label: str = ""
    entries: list[TranscriptEntry] = Field(default_factory=list)

    def radio(self) -> list[TranscriptEntry]:
        return [e for e in self.entries if e.channel is ChannelKind.RADIO]

    def core(self) -> list[TranscriptEntry]:
        return [e for e in self.entries if e.channel is ChannelKind.CORE]

    def delivered(self) -> list[TranscriptEntry]:
        return [e for e in self.entries if e.delivered]

    def to_jsonl(self) -> str:
        return "".join(entry.model_dump_json() + "\n" for entry in self.entries)


def write_transcripts(path: Path, transcripts: Iterable[SessionTranscript]) -> int:
    """Writes one JSON line per entry across all transcripts; returns the entry count"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with path.open("w", encoding="utf-8") as f:
        for transcript in transcripts:
            for entry in transcript.entries:
                f.write(entry.model_dump_json())
                f.write("\n")
                count += 1
    return count
