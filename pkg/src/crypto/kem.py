import logging
from abc import ABC, abstractmethod
from functools import lru_cache
from typing import Callable

from pydantic import BaseModel, ConfigDict, Field

from src.crypto.random_source import RandomSource
from src.crypto.symmetric import KEY_LEN, hash_h, hmac_tag
from src.errors import DecapsulationError, EncodingError, SuiteUnavailableError

logger = logging.getLogger(__name__)


class KemKeyPair(BaseModel):
    model_config = ConfigDict(frozen=True)

    pk: bytes
    sk: bytes = Field(repr=False)


class KemSuite(ABC):
    """One KEM algorithm: KeyGen, Encaps, Decaps plus its size metadata"""

    name: str
    sk_len: int
    pk_len: int
    ct_len: int
    key_len: int

    @abstractmethod
    def keygen(self, rng: RandomSource) -> tuple[bytes, bytes]:
        """Returns (pk, sk)"""

    @abstractmethod
    def encaps(self, pk: bytes, rng: RandomSource) -> tuple[bytes, bytes]:
        """Returns (ct, shared secret)"""

    @abstractmethod
    def decaps(self, sk: bytes, ct: bytes) -> bytes:
        pass

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r})"


class TestKem(KemSuite):
    """Insecure deterministic KEM. A test double, never use outside tests and simulations.

    sk is 32 random bytes, pk = PRF(sk, "pk"), ct = r for 32 random bytes r,
    k = h(pk, r).
    """

    __test__ = False

    name = "test"
    sk_len = 32
    pk_len = 32
    ct_len = 32
    key_len = 32

    def keygen(self, rng: RandomSource) -> tuple[bytes, bytes]:
        sk = rng.random_bytes(32)
        return hmac_tag(sk, b"pk"), sk

    def encaps(self, pk: bytes, rng: RandomSource) -> tuple[bytes, bytes]:
        r = rng.random_bytes(32)
        return r, hash_h([pk, r])

    def decaps(self, sk: bytes, ct: bytes) -> bytes:
        return hash_h([hmac_tag(sk, b"pk"), ct])


# === Registry ===
# Factories are resolved lazily so a missing backend library only fails its own suite.
_SUITE_FACTORIES: dict[str, Callable[[], KemSuite]] = {}


def register_suite(name: str):
    def decorator(factory: Callable[[], KemSuite]):
        _SUITE_FACTORIES[name] = factory
        return factory

    return decorator


register_suite("test")(TestKem)


def registered_suites() -> list[str]:
    return sorted(_SUITE_FACTORIES)


@lru_cache(maxsize=None)
def get_suite(name: str) -> KemSuite:
    factory = _SUITE_FACTORIES.get(name)
    if factory is None:
        raise SuiteUnavailableError(name, "not registered")
    return factory()


# === Checked operations ===


def _to_protocol_key(shared: bytes) -> bytes:
    # Backends with wider secrets (HQC: 64 bytes) are compressed to the protocol width.
    if len(shared) == KEY_LEN:
        return shared
    return hash_h([shared])


def kem_keygen(suite: KemSuite, rng: RandomSource) -> KemKeyPair:
    pk, sk = suite.keygen(rng)
    if len(pk) != suite.pk_len or len(sk) != suite.sk_len:
        raise EncodingError(
            f"{suite.name} keygen produced pk={len(pk)} sk={len(sk)} bytes, "
            f"expected pk={suite.pk_len} sk={suite.sk_len}"
        )
    return KemKeyPair(pk=pk, sk=sk)


def kem_encaps(suite: KemSuite, pk: bytes, rng: RandomSource) -> tuple[bytes, bytes]:
    if len(pk) != suite.pk_len:
        raise EncodingError(f"{suite.name} public key must be {suite.pk_len} bytes, got {len(pk)}")
    ct, shared = suite.encaps(pk, rng)
    if len(ct) != suite.ct_len or len(shared) != suite.key_len:
        raise EncodingError(f"{suite.name} encaps produced ct={len(ct)} key={len(shared)} bytes")
    return ct, _to_protocol_key(shared)


def kem_decaps(suite: KemSuite, sk: bytes, ct: bytes) -> bytes:
    if len(sk) != suite.sk_len:
        raise EncodingError(f"{suite.name} secret key must be {suite.sk_len} bytes, got {len(sk)}")
    if len(ct) != suite.ct_len:
        raise EncodingError(f"{suite.name} ciphertext must be {suite.ct_len} bytes, got {len(ct)}")
    try:
        shared = suite.decaps(sk, ct)
    except (ValueError, RuntimeError) as e:
        raise DecapsulationError(f"{suite.name} decapsulation failed") from e
    if shared is None or len(shared) != suite.key_len:
        raise DecapsulationError(f"{suite.name} decapsulation returned no key")
    return _to_protocol_key(shared)
