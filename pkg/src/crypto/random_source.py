import random
import secrets
from typing import Protocol, runtime_checkable


@runtime_checkable
class RandomSource(Protocol):
    def random_bytes(self, n: int) -> bytes: ...


class SeededRandom:
    """Deterministic byte stream for tests and reproducible simulations"""

    def __init__(self, seed: int):
        self.seed = seed
        self._rng = random.Random(seed)

    def random_bytes(self, n: int) -> bytes:
        return self._rng.randbytes(n)


class OsRandom:
    def random_bytes(self, n: int) -> bytes:
        return secrets.token_bytes(n)
