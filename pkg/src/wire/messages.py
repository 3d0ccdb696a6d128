from enum import Enum, IntEnum
from typing import Annotated, Any, ClassVar, Optional

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer


def _from_hex(value: Any) -> Any:
    if isinstance(value, str):
        return bytes.fromhex(value)
    return value


# Raw bytes in memory, lowercase hex in JSON records.
HexBytes = Annotated[
    bytes,
    BeforeValidator(_from_hex),
    PlainSerializer(lambda b: b.hex(), return_type=str, when_used="json"),
]
Bytes32 = Annotated[HexBytes, Field(min_length=32, max_length=32)]
Bytes16 = Annotated[HexBytes, Field(min_length=16, max_length=16)]


class MessageType(IntEnum):
    ID_REQUEST = 0x01
    ID_RESPONSE = 0x02
    SN_TO_HN_IDENT = 0x03
    HN_TO_SN_AUTH = 0x04
    CHALLENGE = 0x05
    RESPONSE = 0x06
    CONFIRM = 0x07
    GUTI_ID = 0x08
    GUTI_SN_TO_HN = 0x09
    GUTI_ASSIGN = 0x0A
    SECURED = 0x0B


class FieldKind(Enum):
    BYTES = "bytes"
    TEXT = "text"
    AUTN = "autn"
    OPTIONAL_BYTES = "optional_bytes"
    FLAG = "flag"


class Autn(BaseModel):
    """AUTN = CONC || MAC"""

    model_config = ConfigDict(frozen=True)

    conc: Bytes32
    mac: Bytes32

    def to_bytes(self) -> bytes:
        return self.conc + self.mac

    @classmethod
    def from_bytes(cls, data: bytes) -> "Autn":
        return cls(conc=data[:32], mac=data[32:])


class WireMessage(BaseModel):
    model_config = ConfigDict(frozen=True)

    message_type: ClassVar[MessageType]
    # Field order on the wire; mirrors declaration order.
    wire_fields: ClassVar[tuple[tuple[str, FieldKind], ...]] = ()


class IdRequestMsg(WireMessage):
    """SN asks the UE to identify itself; empty payload"""

    message_type = MessageType.ID_REQUEST


class IdResponseMsg(WireMessage):
    message_type = MessageType.ID_RESPONSE
    wire_fields = (
        ("c1", FieldKind.BYTES),
        ("suci_conc", FieldKind.BYTES),
        ("mac_u", FieldKind.BYTES),
        ("id_hn", FieldKind.TEXT),
    )

    c1: HexBytes = Field(description="KEM ciphertext under pk_H")
    suci_conc: HexBytes = Field(description="AEAD of SUPI || pk_U || ID_SN under K_s1")
    mac_u: Bytes32
    id_hn: str


class SnToHnIdentMsg(WireMessage):
    message_type = MessageType.SN_TO_HN_IDENT
    wire_fields = (
        ("c1", FieldKind.BYTES),
        ("suci_conc", FieldKind.BYTES),
        ("mac_u", FieldKind.BYTES),
        ("r_sn", FieldKind.BYTES),
    )

    c1: HexBytes
    suci_conc: HexBytes
    mac_u: Bytes32
    r_sn: Bytes32


class HnToSnAuthMsg(WireMessage):
    message_type = MessageType.HN_TO_SN_AUTH
    wire_fields = (
        ("autn", FieldKind.AUTN),
        ("hxres_star", FieldKind.BYTES),
        ("m", FieldKind.BYTES),
        ("c2", FieldKind.OPTIONAL_BYTES),
    )

    autn: Autn
    hxres_star: Bytes32
    m: HexBytes = Field(description="AEAD of K_seaf || SUPI under K3")
    c2: Optional[HexBytes] = Field(default=None, description="Absent on the GUTI path")


class ChallengeMsg(WireMessage):
    message_type = MessageType.CHALLENGE
    wire_fields = (("autn", FieldKind.AUTN), ("c2", FieldKind.OPTIONAL_BYTES))

    autn: Autn
    c2: Optional[HexBytes] = None


class ResponseMsg(WireMessage):
    message_type = MessageType.RESPONSE
    wire_fields = (("res_star", FieldKind.BYTES),)

    res_star: Bytes32


class ConfirmMsg(WireMessage):
    message_type = MessageType.CONFIRM
    wire_fields = (("ok", FieldKind.FLAG),)

    ok: bool = True


class GutiIdMsg(WireMessage):
    message_type = MessageType.GUTI_ID
    wire_fields = (("guti", FieldKind.BYTES),)

    guti: Bytes16


class GutiSnToHnMsg(WireMessage):
    message_type = MessageType.GUTI_SN_TO_HN
    wire_fields = (
        ("supi", FieldKind.TEXT),
        ("r_sn_prime", FieldKind.BYTES),
        ("r_sn", FieldKind.BYTES),
    )

    supi: str
    r_sn_prime: Bytes32
    r_sn: Bytes32


class GutiAssignMsg(WireMessage):
    message_type = MessageType.GUTI_ASSIGN
    wire_fields = (("guti_new", FieldKind.BYTES), ("r_sn_prime_new", FieldKind.BYTES))

    guti_new: Bytes16
    r_sn_prime_new: Bytes32


class SecuredMsg(WireMessage):
    """An encoded message sealed under a key from the established session"""

    message_type = MessageType.SECURED
    wire_fields = (("body", FieldKind.BYTES),)

    body: HexBytes


MESSAGE_CLASSES: dict[MessageType, type[WireMessage]] = {
    cls.message_type: cls
    for cls in (
        IdRequestMsg,
        IdResponseMsg,
        SnToHnIdentMsg,
        HnToSnAuthMsg,
        ChallengeMsg,
        ResponseMsg,
        ConfirmMsg,
        GutiIdMsg,
        GutiSnToHnMsg,
        GutiAssignMsg,
        SecuredMsg,
    )
}
