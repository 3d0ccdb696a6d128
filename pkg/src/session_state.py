import operator
from enum import Enum
from typing import Annotated, Optional

from typing_extensions import TypedDict

from src.sim.transcript import TranscriptEntry

# State keys without an annotation are overwritten by each node update.


class SessionMode(str, Enum):
    SUPI = "supi"
    GUTI = "guti"


class SessionState(TypedDict, total=False):
    # Append-only: every node returns only the entries it produced.
    transcript: Annotated[list[TranscriptEntry], operator.add]

    mode: str

    # Bytes delivered to the node that runs next, None if nothing arrived
    inbox: Optional[bytes]

    # Next node to go to
    next_node: Optional[str]

    session_id: Optional[bytes]
    fell_back_to_supi: bool

    # Filled on abort
    aborted_at: Optional[str]
    abort_reason: Optional[str]

    # Session results as each party sees them
    ue_k_seaf: Optional[bytes]
    sn_k_seaf: Optional[bytes]
    hn_k_seaf: Optional[bytes]
    supi_at_sn: Optional[str]
    secured_assignment: Optional[bytes]
    assignment_delivered: bool
