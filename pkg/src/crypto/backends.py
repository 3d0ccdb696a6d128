"""Real KEM backends, registered by the name used with the CLI `--kem` flag.

Post-quantum suites come from liboqs (via liboqs-python); the ECIES baselines
are KEM-shaped wrappers over X25519 / P-256 from `cryptography`.
"""

import logging
from typing import Sequence

from cryptography.hazmat.primitives import serialization
from cryptography.hazmat.primitives.asymmetric import ec, x25519

from src.crypto.kem import KemSuite, register_suite
from src.crypto.random_source import RandomSource
from src.crypto.symmetric import hash_h
from src.errors import SuiteUnavailableError

logger = logging.getLogger(__name__)


class OqsKem(KemSuite):
    """liboqs-backed KEM. liboqs draws its own randomness, so `rng` is not consulted."""

    def __init__(self, name: str, algorithms: Sequence[str]):
        try:
            import oqs
        except ImportError as e:
            raise SuiteUnavailableError(name, "liboqs-python is not installed") from e

        enabled = set(oqs.get_enabled_kem_mechanisms())
        algorithm = next((a for a in algorithms if a in enabled), None)
        if algorithm is None:
            raise SuiteUnavailableError(name, f"none of {list(algorithms)} enabled in liboqs")

        self._oqs = oqs
        self.name = name
        self.algorithm = algorithm
        with oqs.KeyEncapsulation(algorithm) as kem:
            details = kem.details
        self.sk_len = details["length_secret_key"]
        self.pk_len = details["length_public_key"]
        self.ct_len = details["length_ciphertext"]
        self.key_len = details["length_shared_secret"]
        logger.debug("Loaded %s as liboqs %s", name, algorithm)

    def keygen(self, rng: RandomSource) -> tuple[bytes, bytes]:
        with self._oqs.KeyEncapsulation(self.algorithm) as kem:
            pk = kem.generate_keypair()
            return bytes(pk), bytes(kem.export_secret_key())

    def encaps(self, pk: bytes, rng: RandomSource) -> tuple[bytes, bytes]:
        with self._oqs.KeyEncapsulation(self.algorithm) as kem:
            ct, shared = kem.encap_secret(pk)
            return bytes(ct), bytes(shared)

    def decaps(self, sk: bytes, ct: bytes) -> bytes:
        with self._oqs.KeyEncapsulation(self.algorithm, secret_key=sk) as kem:
            return bytes(kem.decap_secret(ct))


class EciesX25519Kem(KemSuite):
    """ECIES-style KEM: ct is an ephemeral public key, k = h(shared secret, ct)"""

    name = "ecies-x25519"
    sk_len = 32
    pk_len = 32
    ct_len = 32
    key_len = 32

    @staticmethod
    def _public_raw(private: x25519.X25519PrivateKey) -> bytes:
        return private.public_key().public_bytes(
            serialization.Encoding.Raw, serialization.PublicFormat.Raw
        )

    def keygen(self, rng: RandomSource) -> tuple[bytes, bytes]:
        sk = rng.random_bytes(32)
        return self._public_raw(x25519.X25519PrivateKey.from_private_bytes(sk)), sk

    def encaps(self, pk: bytes, rng: RandomSource) -> tuple[bytes, bytes]:
        ephemeral = x25519.X25519PrivateKey.from_private_bytes(rng.random_bytes(32))
        shared = ephemeral.exchange(x25519.X25519PublicKey.from_public_bytes(pk))
        ct = self._public_raw(ephemeral)
        return ct, hash_h([shared, ct])

    def decaps(self, sk: bytes, ct: bytes) -> bytes:
        private = x25519.X25519PrivateKey.from_private_bytes(sk)
        shared = private.exchange(x25519.X25519PublicKey.from_public_bytes(ct))
        return hash_h([shared, ct])


class EciesP256Kem(KemSuite):
    """P-256 variant; points travel SEC1-compressed (33 bytes)"""

    name = "ecies-p256"
    sk_len = 32
    pk_len = 33
    ct_len = 33
    key_len = 32

    _ORDER = 0xFFFFFFFF00000000FFFFFFFFFFFFFFFFBCE6FAADA7179E84F3B9CAC2FC632551

    def _private_from(self, seed: bytes) -> ec.EllipticCurvePrivateKey:
        scalar = int.from_bytes(seed, "big") % (self._ORDER - 1) + 1
        return ec.derive_private_key(scalar, ec.SECP256R1())

    @staticmethod
    def _public_compressed(private: ec.EllipticCurvePrivateKey) -> bytes:
        return private.public_key().public_bytes(
            serialization.Encoding.X962, serialization.PublicFormat.CompressedPoint
        )

    def keygen(self, rng: RandomSource) -> tuple[bytes, bytes]:
        private = self._private_from(rng.random_bytes(32))
        sk = private.private_numbers().private_value.to_bytes(32, "big")
        return self._public_compressed(private), sk

    def encaps(self, pk: bytes, rng: RandomSource) -> tuple[bytes, bytes]:
        ephemeral = self._private_from(rng.random_bytes(32))
        peer = ec.EllipticCurvePublicKey.from_encoded_point(ec.SECP256R1(), pk)
        shared = ephemeral.exchange(ec.ECDH(), peer)
        ct = self._public_compressed(ephemeral)
        return ct, hash_h([shared, ct])

    def decaps(self, sk: bytes, ct: bytes) -> bytes:
        private = ec.derive_private_key(int.from_bytes(sk, "big"), ec.SECP256R1())
        peer = ec.EllipticCurvePublicKey.from_encoded_point(ec.SECP256R1(), ct)
        return hash_h([private.exchange(ec.ECDH(), peer), ct])


# Newer liboqs releases expose Kyber512 as ML-KEM-512 with identical sizes.
register_suite("kyber")(lambda: OqsKem("kyber", ["Kyber512", "ML-KEM-512"]))
register_suite("mceliece")(lambda: OqsKem("mceliece", ["Classic-McEliece-348864"]))
register_suite("bike")(lambda: OqsKem("bike", ["BIKE-L1"]))
register_suite("hqc")(lambda: OqsKem("hqc", ["HQC-128"]))
register_suite("ecies-x25519")(EciesX25519Kem)
register_suite("ecies-p256")(EciesP256Kem)
