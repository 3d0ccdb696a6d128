"""Cost reports: KEM running times (bench) and communication sizes (sizes).

Timings are medians over the configured iteration count; absolute numbers
depend on the machine, the per-suite ordering is what carries over.
"""

import logging
import statistics
import time
from typing import Callable, Optional

from pydantic import BaseModel, Field

from src.crypto import get_suite, kem_decaps, kem_encaps, kem_keygen
from src.crypto.random_source import OsRandom, SeededRandom
from src.errors import AkaError
from src.session_graph import run_session
from src.session_state import SessionMode
from src.wire import MessageType
from src.world import provision_world

logger = logging.getLogger(__name__)

_NS_PER_MS = 1_000_000


class OpTiming(BaseModel):
    median_ms: float
    iqr_ms: float


class BenchRow(BaseModel):
    name: str
    available: bool = True
    reason: Optional[str] = None
    iterations: int = 0
    keygen: Optional[OpTiming] = None
    encaps: Optional[OpTiming] = None
    decaps: Optional[OpTiming] = None
    # KeyGen + Encaps + Decaps at the UE, Encaps + Decaps at the HN
    ue_cost_ms: Optional[float] = None
    hn_cost_ms: Optional[float] = None
    dispersion_ms: Optional[float] = None


class BenchReport(BaseModel):
    rows: list[BenchRow] = Field(default_factory=list)

    def ordering(self, key: str) -> list[str]:
        available = [r for r in self.rows if r.available]
        return [r.name for r in sorted(available, key=lambda r: getattr(r, key))]

    def to_text(self) -> str:
        header = ("suite", "iters", "keygen ms", "encaps ms", "decaps ms", "UE ms", "HN ms", "IQR ms")
        lines = [header]
        for r in self.rows:
            if not r.available:
                lines.append((r.name, "-", "unavailable", "", "", "", "", ""))
                continue
            lines.append(
                (
                    r.name,
                    str(r.iterations),
                    f"{r.keygen.median_ms:.4f}",
                    f"{r.encaps.median_ms:.4f}",
                    f"{r.decaps.median_ms:.4f}",
                    f"{r.ue_cost_ms:.4f}",
                    f"{r.hn_cost_ms:.4f}",
                    f"{r.dispersion_ms:.4f}",
                )
            )
        return _align(lines)

    def to_jsonl(self) -> str:
        return "".join(r.model_dump_json(exclude_none=True) + "\n" for r in self.rows)


def _timing(samples_ns: list[int]) -> OpTiming:
    samples = [s / _NS_PER_MS for s in samples_ns]
    if len(samples) >= 2:
        q1, _, q3 = statistics.quantiles(samples, n=4)
    else:
        q1 = q3 = samples[0]
    return OpTiming(median_ms=statistics.median(samples), iqr_ms=q3 - q1)


def _time_ns(op: Callable[[], object]) -> int:
    t0 = time.perf_counter_ns()
    op()
    return time.perf_counter_ns() - t0


def bench_suite(name: str, iterations: int) -> BenchRow:
    try:
        suite = get_suite(name)
        rng = OsRandom()
        keygen_ns, encaps_ns, decaps_ns = [], [], []
        for _ in range(iterations):
            pair = None

            def keygen():
                nonlocal pair
                pair = kem_keygen(suite, rng)

            keygen_ns.append(_time_ns(keygen))
            ct = None

            def encaps():
                nonlocal ct
                ct, _ = kem_encaps(suite, pair.pk, rng)

            encaps_ns.append(_time_ns(encaps))
            decaps_ns.append(_time_ns(lambda: kem_decaps(suite, pair.sk, ct)))
    except (AkaError, ImportError, RuntimeError) as e:
        logger.warning("suite %s unavailable for benchmarking: %s", name, e)
        return BenchRow(name=name, available=False, reason=str(e))

    ue_samples = [k + e + d for k, e, d in zip(keygen_ns, encaps_ns, decaps_ns)]
    hn_samples = [e + d for e, d in zip(encaps_ns, decaps_ns)]
    ue = _timing(ue_samples)
    return BenchRow(
        name=name,
        iterations=iterations,
        keygen=_timing(keygen_ns),
        encaps=_timing(encaps_ns),
        decaps=_timing(decaps_ns),
        ue_cost_ms=ue.median_ms,
        hn_cost_ms=_timing(hn_samples).median_ms,
        dispersion_ms=ue.iqr_ms,
    )


def build_bench_report(names: list[str], iterations: int) -> BenchReport:
    return BenchReport(rows=[bench_suite(name, iterations) for name in names])


# === Sizes ===

SUPI_PATH_MESSAGES = (
    MessageType.ID_RESPONSE,
    MessageType.HN_TO_SN_AUTH,
    MessageType.CHALLENGE,
    MessageType.RESPONSE,
)
GUTI_PATH_MESSAGES = (MessageType.GUTI_ID, MessageType.HN_TO_SN_AUTH, MessageType.CHALLENGE)


class SizeRow(BaseModel):
    name: str
    available: bool = True
    reason: Optional[str] = None
    sk_len: Optional[int] = None
    pk_len: Optional[int] = None
    ct_len: Optional[int] = None
    key_len: Optional[int] = None
    # Encoded byte counts keyed by message name, measured from a seeded session
    supi_messages: dict[str, int] = Field(default_factory=dict)
    guti_messages: dict[str, int] = Field(default_factory=dict)


class SizeReport(BaseModel):
    rows: list[SizeRow] = Field(default_factory=list)

    def to_text(self) -> str:
        names = [t.name for t in SUPI_PATH_MESSAGES] + [f"GUTI:{t.name}" for t in GUTI_PATH_MESSAGES]
        lines = [("suite", "sk", "pk", "ct", "key", *names)]
        for r in self.rows:
            if not r.available:
                lines.append((r.name, "unavailable", *[""] * (3 + len(names))))
                continue
            measured = [str(r.supi_messages.get(t.name, "")) for t in SUPI_PATH_MESSAGES]
            measured += [str(r.guti_messages.get(t.name, "")) for t in GUTI_PATH_MESSAGES]
            lines.append((r.name, str(r.sk_len), str(r.pk_len), str(r.ct_len), str(r.key_len), *measured))
        return _align(lines)

    def to_jsonl(self) -> str:
        return "".join(r.model_dump_json(exclude_none=True) + "\n" for r in self.rows)


def _message_sizes(entries, wanted: tuple[MessageType, ...]) -> dict[str, int]:
    sizes = {}
    for entry in entries:
        tag = entry.data[0]
        for message_type in wanted:
            if tag == message_type and message_type.name not in sizes:
                sizes[message_type.name] = len(entry.data)
    return sizes


def size_suite(name: str, seed: int = 0) -> SizeRow:
    try:
        suite = get_suite(name)
        world = provision_world(SeededRandom(seed), suite.name)
        rng = SeededRandom(seed + 1)
        supi = run_session(world, SessionMode.SUPI, rng=rng, label="sizes-supi")
        guti = run_session(world, SessionMode.GUTI, rng=rng, label="sizes-guti")
    except (AkaError, ImportError, RuntimeError) as e:
        logger.warning("suite %s unavailable for sizing: %s", name, e)
        return SizeRow(name=name, available=False, reason=str(e))

    return SizeRow(
        name=suite.name,
        sk_len=suite.sk_len,
        pk_len=suite.pk_len,
        ct_len=suite.ct_len,
        key_len=suite.key_len,
        supi_messages=_message_sizes(supi.transcript.entries, SUPI_PATH_MESSAGES),
        guti_messages=_message_sizes(guti.transcript.entries, GUTI_PATH_MESSAGES),
    )


def build_size_report(names: list[str], seed: int = 0) -> SizeReport:
    return SizeReport(rows=[size_suite(name, seed) for name in names])


def _align(lines: list[tuple[str, ...]]) -> str:
    widths = [max(len(line[i]) for line in lines) for i in range(len(lines[0]))]
    return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip() for line in lines) + "\n"
