from src.crypto import backends  # noqa: F401  registers the real backends
from src.crypto.kem import (
    KemKeyPair,
    KemSuite,
    TestKem,
    get_suite,
    kem_decaps,
    kem_encaps,
    kem_keygen,
    register_suite,
    registered_suites,
)
from src.crypto.random_source import OsRandom, RandomSource, SeededRandom
from src.crypto.symmetric import (
    AEAD_TAG_LEN,
    KEY_LEN,
    PrfIndex,
    aead_open,
    aead_seal,
    f1,
    f2,
    f3,
    f4,
    f5,
    hash_h,
    hmac_tag,
    hmac_verify,
    kdf,
    prf_f,
    xor_bytes,
)

__all__ = [
    "AEAD_TAG_LEN",
    "KEY_LEN",
    "KemKeyPair",
    "KemSuite",
    "OsRandom",
    "PrfIndex",
    "RandomSource",
    "SeededRandom",
    "TestKem",
    "aead_open",
    "aead_seal",
    "f1",
    "f2",
    "f3",
    "f4",
    "f5",
    "get_suite",
    "hash_h",
    "hmac_tag",
    "hmac_verify",
    "kdf",
    "kem_decaps",
    "kem_encaps",
    "kem_keygen",
    "prf_f",
    "register_suite",
    "registered_suites",
    "xor_bytes",
]
