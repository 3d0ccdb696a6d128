"""Bit-exact codec: 1-byte message tag, then every field as a 4-byte big-endian
length prefix plus raw bytes, in declaration order. Optional fields carry a
1-byte presence flag ahead of the length-prefixed value.
"""

import struct
from typing import Any, Sequence

from pydantic import ValidationError

from src.errors import EncodingError, ParseError
from src.wire.messages import MESSAGE_CLASSES, Autn, FieldKind, MessageType, WireMessage

_LEN = struct.Struct(">I")


def pack_fields(fields: Sequence[bytes]) -> bytes:
    return b"".join(_LEN.pack(len(f)) + f for f in fields)


class _Reader:
    def __init__(self, data: bytes, offset: int = 0):
        self.data = data
        self.offset = offset

    def take(self, n: int) -> bytes:
        if self.offset + n > len(self.data):
            raise ParseError(self.offset, f"need {n} bytes, {len(self.data) - self.offset} left")
        chunk = self.data[self.offset : self.offset + n]
        self.offset += n
        return chunk

    def field(self) -> bytes:
        (length,) = _LEN.unpack(self.take(_LEN.size))
        return self.take(length)

    def at_end(self) -> bool:
        return self.offset == len(self.data)


def unpack_fields(data: bytes, count: int | None = None) -> list[bytes]:
    reader = _Reader(data)
    fields = []
    while not reader.at_end():
        fields.append(reader.field())
    if count is not None and len(fields) != count:
        raise ParseError(len(data), f"expected {count} fields, found {len(fields)}")
    return fields


def _encode_field(kind: FieldKind, value: Any) -> bytes:
    if kind is FieldKind.BYTES:
        return pack_fields([value])
    if kind is FieldKind.TEXT:
        try:
            return pack_fields([value.encode("utf-8")])
        except UnicodeEncodeError as e:
            raise EncodingError(f"text field is not encodable as UTF-8: {e.reason}") from e
    if kind is FieldKind.AUTN:
        return pack_fields([value.to_bytes()])
    if kind is FieldKind.FLAG:
        return pack_fields([b"\x01" if value else b"\x00"])
    if kind is FieldKind.OPTIONAL_BYTES:
        if value is None:
            return b"\x00"
        return b"\x01" + pack_fields([value])
    raise EncodingError(f"unknown field kind {kind}")


def encode(msg: WireMessage) -> bytes:
    try:
        # Re-validate: model_construct or mutation can bypass the field invariants.
        type(msg).model_validate(msg.model_dump())
    except ValidationError as e:
        raise EncodingError(f"{type(msg).__name__} violates its invariants: {e}") from e
    out = [bytes([msg.message_type])]
    for name, kind in msg.wire_fields:
        out.append(_encode_field(kind, getattr(msg, name)))
    return b"".join(out)


def _decode_field(reader: _Reader, kind: FieldKind) -> Any:
    if kind is FieldKind.BYTES:
        return reader.field()
    if kind is FieldKind.TEXT:
        start = reader.offset
        raw = reader.field()
        try:
            return raw.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(start, "invalid UTF-8 text field") from e
    if kind is FieldKind.AUTN:
        start = reader.offset
        raw = reader.field()
        if len(raw) != 64:
            raise ParseError(start, f"AUTN must be 64 bytes, got {len(raw)}")
        return Autn.from_bytes(raw)
    if kind is FieldKind.FLAG:
        start = reader.offset
        raw = reader.field()
        if raw not in (b"\x00", b"\x01"):
            raise ParseError(start, "flag must be a single 0x00/0x01 byte")
        return raw == b"\x01"
    if kind is FieldKind.OPTIONAL_BYTES:
        start = reader.offset
        flag = reader.take(1)
        if flag == b"\x00":
            return None
        if flag != b"\x01":
            raise ParseError(start, f"bad presence flag {flag.hex()}")
        return reader.field()
    raise ParseError(reader.offset, f"unknown field kind {kind}")


def decode(data: bytes) -> WireMessage:
    if not data:
        raise ParseError(0, "empty input")
    try:
        message_type = MessageType(data[0])
    except ValueError:
        raise ParseError(0, f"unknown message tag 0x{data[0]:02x}") from None
    cls = MESSAGE_CLASSES[message_type]
    reader = _Reader(data, offset=1)
    values = {name: _decode_field(reader, kind) for name, kind in cls.wire_fields}
    if not reader.at_end():
        raise ParseError(reader.offset, f"{len(data) - reader.offset} trailing bytes")
    try:
        return cls(**values)
    except ValidationError as e:
        raise ParseError(1, f"{cls.__name__} field invariant violated: {e.errors()[0]['msg']}") from e


def peek_type(data: bytes) -> MessageType | None:
    if not data:
        return None
    try:
        return MessageType(data[0])
    except ValueError:
        return None
