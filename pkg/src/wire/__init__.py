from src.wire.codec import decode, encode, pack_fields, peek_type, unpack_fields
from src.wire.messages import (
    Autn,
    Bytes16,
    Bytes32,
    ChallengeMsg,
    ConfirmMsg,
    GutiAssignMsg,
    GutiIdMsg,
    GutiSnToHnMsg,
    HexBytes,
    HnToSnAuthMsg,
    IdRequestMsg,
    IdResponseMsg,
    MessageType,
    ResponseMsg,
    SecuredMsg,
    SnToHnIdentMsg,
    WireMessage,
)

__all__ = [
    "Autn",
    "Bytes16",
    "Bytes32",
    "ChallengeMsg",
    "ConfirmMsg",
    "GutiAssignMsg",
    "GutiIdMsg",
    "GutiSnToHnMsg",
    "HexBytes",
    "HnToSnAuthMsg",
    "IdRequestMsg",
    "IdResponseMsg",
    "MessageType",
    "ResponseMsg",
    "SecuredMsg",
    "SnToHnIdentMsg",
    "WireMessage",
    "decode",
    "encode",
    "pack_fields",
    "peek_type",
    "unpack_fields",
]
