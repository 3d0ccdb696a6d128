"""Attacker deduction over concrete protocol values.

Knowledge is a set of byte strings tagged with the role they can play
(a KEM secret key, an AUTN, a candidate K*, ...). A closure applies every
rule to the current knowledge once per round, up to a fixed depth, the way a
Dolev-Yao attacker composes protocol operations on what it has seen.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Iterator

from cryptography.hazmat.primitives import constant_time

from src.crypto import aead_open, f1, f2, f3, f4, f5, get_suite, hash_h, kdf, kem_decaps, xor_bytes
from src.errors import AkaError
from src.parties.derivation import assignment_key
from src.sim.transcript import ChannelKind, TranscriptEntry
from src.wire import (
    ChallengeMsg,
    GutiAssignMsg,
    GutiIdMsg,
    IdResponseMsg,
    ResponseMsg,
    SecuredMsg,
    decode,
    unpack_fields,
)

logger = logging.getLogger(__name__)

FORWARD_SECRECY_DEPTH = 4
SN_BINDING_DEPTH = 3


class Sort(str, Enum):
    LONG_TERM = "long_term"
    KEM_SK = "kem_sk"
    KEM_CT = "kem_ct"
    # Candidate K*: a decapsulated key or a masked ratchet key
    SHARED = "shared"
    RATCHET = "ratchet"
    MASKED = "masked"
    MASK_NONCE = "mask_nonce"
    NONCE = "nonce"
    SESSION_KEY = "session_key"
    AEAD_KEY = "aead_key"
    AEAD = "aead"
    AUTN = "autn"
    IDENT = "ident"
    VALUE = "value"


KEY_SORTS = (Sort.SHARED, Sort.RATCHET, Sort.MASKED, Sort.SESSION_KEY, Sort.AEAD_KEY, Sort.VALUE)


class Knowledge:
    def __init__(self, items: Iterable[tuple[Sort, bytes]] = ()):
        self._by_sort: dict[Sort, set[bytes]] = defaultdict(set)
        for sort, value in items:
            self.add(sort, value)

    def add(self, sort: Sort, value: bytes) -> bool:
        if value in self._by_sort[sort]:
            return False
        self._by_sort[sort].add(value)
        return True

    def of(self, *sorts: Sort) -> set[bytes]:
        out: set[bytes] = set()
        for sort in sorts:
            out |= self._by_sort.get(sort, set())
        return out

    def items(self) -> Iterator[tuple[Sort, bytes]]:
        for sort, values in self._by_sort.items():
            for value in values:
                yield sort, value

    def copy(self) -> "Knowledge":
        return Knowledge(self.items())

    def __contains__(self, value: bytes) -> bool:
        return any(value in values for values in self._by_sort.values())

    def __len__(self) -> int:
        return sum(len(values) for values in self._by_sort.values())


@dataclass
class ClosureRound:
    known: Knowledge
    # Values first derived in the previous round (the seed in round one)
    fresh: Knowledge
    seed: Knowledge
    suite_name: str


Rule = Callable[[ClosureRound], Iterable[tuple[Sort, bytes]]]


# === Rules ===


def rule_decaps(r: ClosureRound) -> Iterator[tuple[Sort, bytes]]:
    suite = get_suite(r.suite_name)
    for sk in r.known.of(Sort.KEM_SK):
        for ct in r.known.of(Sort.KEM_CT):
            try:
                yield Sort.SHARED, kem_decaps(suite, sk, ct)
            except AkaError:
                continue


def _plaintext_items(plaintext: bytes) -> Iterator[tuple[Sort, bytes]]:
    try:
        msg = decode(plaintext)
    except AkaError:
        msg = None
    if isinstance(msg, GutiAssignMsg):
        yield Sort.IDENT, msg.guti_new
        yield Sort.MASK_NONCE, msg.r_sn_prime_new
        return
    try:
        fields = unpack_fields(plaintext)
    except AkaError:
        yield Sort.VALUE, plaintext
        return
    for value in fields:
        yield Sort.IDENT, value
        if len(value) == 32:
            yield Sort.SESSION_KEY, value


def rule_open(r: ClosureRound) -> Iterator[tuple[Sort, bytes]]:
    for ciphertext in r.known.of(Sort.AEAD):
        for key in r.known.of(*KEY_SORTS):
            if len(key) != 32:
                continue
            try:
                plaintext = aead_open(key, ciphertext)
            except AkaError:
                continue
            yield from _plaintext_items(plaintext)


def rule_assignment_key(r: ClosureRound) -> Iterator[tuple[Sort, bytes]]:
    for key in r.known.of(Sort.SESSION_KEY):
        yield Sort.AEAD_KEY, assignment_key(key)


def rule_challenge_open(r: ClosureRound) -> Iterator[tuple[Sort, bytes]]:
    """With K and the right K*, an AUTN yields R_SN and the whole key schedule"""
    idents = r.known.of(Sort.IDENT)
    for k in r.known.of(Sort.LONG_TERM):
        for k_star in r.known.of(Sort.SHARED, Sort.MASKED):
            for autn in r.known.of(Sort.AUTN):
                conc, mac = autn[:32], autn[32:]
                ak = f5(k, [k_star])
                r_sn = xor_bytes(conc, ak)
                if not constant_time.bytes_eq(f1(k, [k_star, r_sn]), mac):
                    continue
                res, ck, ik = f2(k, [k_star]), f3(k, [k_star]), f4(k, [k_star])
                yield Sort.NONCE, r_sn
                yield Sort.SESSION_KEY, ck
                yield Sort.SESSION_KEY, ik
                for id_sn in idents:
                    res_star = kdf([ck, ik, k_star, res, id_sn])
                    k_ausf = kdf([ck, ik, k_star, conc, id_sn])
                    yield Sort.SESSION_KEY, res_star
                    yield Sort.SESSION_KEY, k_ausf
                    yield Sort.SESSION_KEY, kdf([k_ausf, id_sn])
                    yield Sort.AEAD_KEY, xor_bytes(res_star, ak)


def rule_ratchet(r: ClosureRound) -> Iterator[tuple[Sort, bytes]]:
    for k_star in r.known.of(Sort.SHARED, Sort.MASKED):
        for r_sn in r.known.of(Sort.NONCE):
            yield Sort.RATCHET, hash_h([k_star, r_sn])


def rule_mask(r: ClosureRound) -> Iterator[tuple[Sort, bytes]]:
    for k_s in r.known.of(Sort.RATCHET):
        for r_sn_prime in r.known.of(Sort.MASK_NONCE):
            yield Sort.MASKED, xor_bytes(k_s, r_sn_prime)


def rule_xor(r: ClosureRound) -> Iterator[tuple[Sort, bytes]]:
    """XOR of a freshly derived value with a seed value; reaches every XOR of up to depth+1 seed values"""
    seed = {v for v in r.seed.of(*KEY_SORTS, Sort.NONCE) if len(v) == 32}
    for a in r.fresh.of(*KEY_SORTS, Sort.NONCE):
        if len(a) != 32:
            continue
        for b in seed:
            if a != b:
                yield Sort.VALUE, xor_bytes(a, b)


FORWARD_SECRECY_RULES: tuple[Rule, ...] = (
    rule_decaps,
    rule_open,
    rule_assignment_key,
    rule_challenge_open,
    rule_ratchet,
    rule_mask,
)
SN_BINDING_RULES: tuple[Rule, ...] = (rule_xor, rule_open)


@dataclass
class ClosureResult:
    knowledge: Knowledge
    rounds: int
    saturated: bool
    sizes: list[int] = field(default_factory=list)

    def __contains__(self, value: bytes) -> bool:
        return value in self.knowledge


def close(seed: Knowledge, rules: Iterable[Rule], suite_name: str, depth: int) -> ClosureResult:
    rules = tuple(rules)
    known = seed.copy()
    fresh = seed.copy()
    sizes = [len(known)]
    for round_no in range(1, depth + 1):
        r = ClosureRound(known=known.copy(), fresh=fresh, seed=seed, suite_name=suite_name)
        fresh = Knowledge()
        for rule in rules:
            for sort, value in rule(r):
                if known.add(sort, value):
                    fresh.add(sort, value)
        sizes.append(len(known))
        if len(fresh) == 0:
            logger.debug("closure saturated after %d rounds", round_no)
            return ClosureResult(known, round_no, True, sizes)
    return ClosureResult(known, depth, False, sizes)


# === Seeding from transcripts ===


def knowledge_from_entries(entries: Iterable[TranscriptEntry], knowledge: Knowledge | None = None) -> Knowledge:
    """Everything a radio observer learns from the bytes it saw"""
    knowledge = knowledge if knowledge is not None else Knowledge()
    for entry in entries:
        if entry.channel is not ChannelKind.RADIO:
            continue
        try:
            msg = decode(entry.data)
        except AkaError:
            knowledge.add(Sort.VALUE, entry.data)
            continue
        if isinstance(msg, IdResponseMsg):
            knowledge.add(Sort.KEM_CT, msg.c1)
            knowledge.add(Sort.AEAD, msg.suci_conc)
            knowledge.add(Sort.VALUE, msg.mac_u)
            knowledge.add(Sort.IDENT, msg.id_hn.encode("utf-8"))
        elif isinstance(msg, ChallengeMsg):
            knowledge.add(Sort.AUTN, msg.autn.to_bytes())
            knowledge.add(Sort.VALUE, msg.autn.conc)
            knowledge.add(Sort.VALUE, msg.autn.mac)
            if msg.c2 is not None:
                knowledge.add(Sort.KEM_CT, msg.c2)
        elif isinstance(msg, ResponseMsg):
            knowledge.add(Sort.VALUE, msg.res_star)
        elif isinstance(msg, GutiIdMsg):
            knowledge.add(Sort.IDENT, msg.guti)
        elif isinstance(msg, SecuredMsg):
            knowledge.add(Sort.AEAD, msg.body)
    return knowledge
