from pydantic import BaseModel, ConfigDict, Field

from src.crypto import aead_open, aead_seal, hash_h, kdf
from src.wire import GutiAssignMsg, SecuredMsg, decode, encode
from src.errors import ParseError

GUTI_LEN = 16
R_SN_LEN = 32


class SessionKeys(BaseModel):
    model_config = ConfigDict(frozen=True)

    ck: bytes = Field(repr=False)
    ik: bytes = Field(repr=False)
    k_ausf: bytes = Field(repr=False)
    k_seaf: bytes = Field(repr=False)


def session_id_for(first: bytes, r_sn: bytes) -> bytes:
    """c1 on the SUPI path, R_SN' on the GUTI path (the HN never sees the GUTI)"""
    return hash_h([first, r_sn])


def assignment_key(k_seaf: bytes) -> bytes:
    return kdf([k_seaf, b"guti-assignment"])


def seal_assignment(k_seaf: bytes, assignment: GutiAssignMsg) -> SecuredMsg:
    return SecuredMsg(body=aead_seal(assignment_key(k_seaf), encode(assignment)))


def open_assignment(k_seaf: bytes, secured: SecuredMsg) -> GutiAssignMsg:
    plaintext = aead_open(assignment_key(k_seaf), secured.body)
    msg = decode(plaintext)
    if not isinstance(msg, GutiAssignMsg):
        raise ParseError(0, f"sealed payload is {type(msg).__name__}, not a GUTI assignment")
    return msg


__all__ = [
    "GUTI_LEN",
    "R_SN_LEN",
    "SessionKeys",
    "assignment_key",
    "open_assignment",
    "seal_assignment",
    "session_id_for",
]
