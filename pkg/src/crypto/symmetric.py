import struct
from enum import Enum
from typing import Sequence

from cryptography.exceptions import InvalidSignature, InvalidTag
from cryptography.hazmat.primitives import hashes, hmac
from cryptography.hazmat.primitives.ciphers.aead import AESGCM

from src.errors import AeadAuthenticationError, UsageError

# Every symmetric value in the protocol is 256 bits wide so all XORs line up.
KEY_LEN = 32
AEAD_TAG_LEN = 16
# Keys are single use per session, a fixed nonce never repeats under one key.
_AEAD_NONCE = bytes(12)


class PrfIndex(Enum):
    F1 = 0x01
    F2 = 0x02
    F3 = 0x03
    F4 = 0x04
    F5 = 0x05
    F1S = 0x06
    F5S = 0x07


def length_prefixed(inputs: Sequence[bytes]) -> bytes:
    return b"".join(struct.pack(">I", len(x)) + bytes(x) for x in inputs)


def _require_key(key: bytes) -> None:
    if len(key) != KEY_LEN:
        raise UsageError(f"key must be {KEY_LEN} bytes, got {len(key)}")


def _require_inputs(inputs: Sequence[bytes]) -> None:
    if not inputs:
        raise UsageError("input list must not be empty")


def sha256(data: bytes) -> bytes:
    digest = hashes.Hash(hashes.SHA256())
    digest.update(data)
    return digest.finalize()


def hmac_tag(key: bytes, data: bytes) -> bytes:
    _require_key(key)
    h = hmac.HMAC(key, hashes.SHA256())
    h.update(data)
    return h.finalize()


def hmac_verify(key: bytes, data: bytes, tag: bytes) -> bool:
    _require_key(key)
    h = hmac.HMAC(key, hashes.SHA256())
    h.update(data)
    try:
        h.verify(tag)
    except InvalidSignature:
        return False
    return True


def prf_f(index: PrfIndex, key: bytes, inputs: Sequence[bytes]) -> bytes:
    """f1..f5, f1*, f5*: HMAC-SHA-256 over a one-byte index tag and length-prefixed inputs"""
    _require_key(key)
    _require_inputs(inputs)
    return hmac_tag(key, bytes([index.value]) + length_prefixed(inputs))


def f1(key: bytes, inputs: Sequence[bytes]) -> bytes:
    return prf_f(PrfIndex.F1, key, inputs)


def f2(key: bytes, inputs: Sequence[bytes]) -> bytes:
    return prf_f(PrfIndex.F2, key, inputs)


def f3(key: bytes, inputs: Sequence[bytes]) -> bytes:
    return prf_f(PrfIndex.F3, key, inputs)


def f4(key: bytes, inputs: Sequence[bytes]) -> bytes:
    return prf_f(PrfIndex.F4, key, inputs)


def f5(key: bytes, inputs: Sequence[bytes]) -> bytes:
    return prf_f(PrfIndex.F5, key, inputs)


def kdf(inputs: Sequence[bytes]) -> bytes:
    _require_inputs(inputs)
    return sha256(length_prefixed(inputs))


def hash_h(inputs: Sequence[bytes]) -> bytes:
    """Serves both as the ratchet hash h and as the HXRES* hash"""
    _require_inputs(inputs)
    return sha256(length_prefixed(inputs))


def xor_bytes(a: bytes, b: bytes) -> bytes:
    if len(a) != len(b):
        raise UsageError(f"xor of unequal lengths {len(a)} and {len(b)}")
    return bytes(x ^ y for x, y in zip(a, b))


def aead_seal(key: bytes, plaintext: bytes) -> bytes:
    _require_key(key)
    if not plaintext:
        raise UsageError("plaintext must not be empty")
    return AESGCM(key).encrypt(_AEAD_NONCE, plaintext, None)


def aead_open(key: bytes, ciphertext: bytes) -> bytes:
    _require_key(key)
    if len(ciphertext) <= AEAD_TAG_LEN:
        raise AeadAuthenticationError("ciphertext shorter than the tag")
    try:
        return AESGCM(key).decrypt(_AEAD_NONCE, ciphertext, None)
    except InvalidTag as e:
        raise AeadAuthenticationError("authentication failed") from e
