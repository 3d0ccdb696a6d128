"""Adversary games. Each one runs real sessions through the simulator and
returns a Verdict with the transcript entries that witness it, plus at least
one deliberately weakened control run that must not hold.
"""

import logging
from typing import Callable, Optional

from src.attacks.closure import (
    FORWARD_SECRECY_DEPTH,
    FORWARD_SECRECY_RULES,
    SN_BINDING_DEPTH,
    SN_BINDING_RULES,
    Knowledge,
    Sort,
    close,
    knowledge_from_entries,
)
from src.attacks.verdict import Verdict, combine
from src.crypto import get_suite, kem_decaps
from src.crypto.kem import KemKeyPair
from src.crypto.random_source import SeededRandom
from src.errors import HnAbort, SnAbort, UeSilentAbort, UsageError
from src.parties.hn import hn_auth_vector, hn_identify
from src.parties.sn import sn_forward_challenge, sn_forward_identification, sn_verify_response
from src.parties.ue import ue_end_session, ue_identification_response, ue_process_challenge
from src.protocol_overrides import set_protocol_overrides
from src.session_graph import SessionResult, run_session
from src.session_state import SessionMode
from src.sim.attacker import Attacker, CompromiseTarget, Drop, Inject, Replay, TapRule
from src.sim.channel import TapDecision, TapPoint
from src.sim.transcript import Direction, TranscriptEntry
from src.wire import Autn, ChallengeMsg, MessageType, decode, encode
from src.world import World, provision_world

logger = logging.getLogger(__name__)

UE_1 = "imsi-001010000000001"
UE_2 = "imsi-001010000000002"
ROGUE_SN = "sn.mnc099.mcc001"

REPLAY_VARIANTS = ("replayed_c2_and_autn", "replayed_c2_fresh_autn", "fresh_c2_replayed_autn")


def _world(suite_name: str, seed: int, supis: tuple[str, ...] = (UE_1,), **kwargs) -> tuple[World, SeededRandom]:
    rng = SeededRandom(seed)
    return provision_world(rng, suite_name, supis=supis, **kwargs), rng


def _ue_silent_after(result: SessionResult, step: int) -> bool:
    return not any(e.direction is Direction.UE_TO_SN and e.step > step for e in result.transcript.entries)


def _injected(result: SessionResult) -> list[TranscriptEntry]:
    return [e for e in result.transcript.entries if {"injected", "tampered"} & set(e.annotations)]


def _substitute_challenge(build: Callable[[ChallengeMsg], ChallengeMsg]) -> TapRule:
    return TapRule(
        message_type=MessageType.CHALLENGE,
        remaining=1,
        act=lambda ctx, point: Inject(encode(build(decode(point.data)))),
    )


# === Replayed challenges ===


def _craft(variant: str, recorded: ChallengeMsg, fresh: ChallengeMsg) -> ChallengeMsg:
    if variant == "replayed_c2_and_autn":
        return recorded
    if variant == "replayed_c2_fresh_autn":
        return ChallengeMsg(autn=fresh.autn, c2=recorded.c2)
    return ChallengeMsg(autn=recorded.autn, c2=fresh.c2)


def _replay_variant(
    world: World, rng: SeededRandom, recorded: ChallengeMsg, variant: str, label: str
) -> tuple[bool, SessionResult]:
    attacker = Attacker([_substitute_challenge(lambda fresh: _craft(variant, recorded, fresh))])
    result = run_session(world, SessionMode.SUPI, attacker=attacker, rng=rng, label=label)
    injected = _injected(result)
    detected = (
        result.outcome.aborted_at == "ue_process_challenge"
        and bool(injected)
        and _ue_silent_after(result, injected[0].step)
    )
    return detected, result


def _replayed_suci(world: World, rng: SeededRandom, recorded: TranscriptEntry, original_r_sn: bytes) -> Verdict:
    ue = world.ue
    before = (ue.k_s, ue.guti, ue.r_sn_prime, ue.k_s_pending)
    attacker = Attacker(
        [TapRule(message_type=MessageType.ID_RESPONSE, remaining=1, act=lambda ctx, point: Replay(recorded))]
    )
    result = run_session(world, SessionMode.SUPI, attacker=attacker, rng=rng, label="C-replayed-suci")
    vectors = [e for e in result.transcript.entries if e.direction is Direction.HN_TO_SN]
    forwarded = [e for e in result.transcript.entries if e.direction is Direction.SN_TO_HN]
    r_sn_fresh = bool(forwarded) and decode(forwarded[0].data).r_sn != original_r_sn
    intact = (ue.k_s, ue.guti, ue.r_sn_prime, ue.k_s_pending) == before
    follow_up = run_session(world, SessionMode.GUTI, rng=rng, label="D-after-replay")
    holds = (
        bool(vectors)
        and r_sn_fresh
        and result.outcome.aborted_at == "ue_process_challenge"
        and intact
        and follow_up.outcome.completed
    )
    return Verdict(
        scenario="replay_challenge/replayed_suci",
        holds=holds,
        evidence=[recorded.ref, *(e.ref for e in _injected(result)), *(e.ref for e in vectors)],
        details={
            "hn_accepted": bool(vectors),
            "aborted_at": result.outcome.aborted_at,
            "ue_state_intact": intact,
            "follow_up_completed": follow_up.outcome.completed,
        },
    )


def scenario_replay_challenge(suite_name: str = "test", seed: int = 0) -> Verdict:
    world, rng = _world(suite_name, seed)
    recorder = Attacker()
    session_a = run_session(world, SessionMode.SUPI, attacker=recorder, rng=rng, label="A")
    if not session_a.outcome.completed:
        return Verdict(scenario="replay_challenge", holds=False, details={"setup": "honest session A aborted"})

    recorded_entry = recorder.recorded(MessageType.CHALLENGE, "A")[0]
    recorded = decode(recorded_entry.data)
    evidence = [recorded_entry.ref]
    details: dict = {}
    holds = True
    for variant in REPLAY_VARIANTS:
        detected, result = _replay_variant(world, rng, recorded, variant, f"B-{variant}")
        details[variant] = result.outcome.aborted_at or "completed"
        evidence += [e.ref for e in _injected(result)]
        holds = holds and detected

    original_r_sn = decode(session_a.transcript.core()[0].data).r_sn
    suci = _replayed_suci(world, rng, recorder.recorded(MessageType.ID_RESPONSE, "A")[0], original_r_sn)
    details["replayed_suci"] = suci.details

    # Controls: an untouched replay of the session's own challenge, and a UE without the MAC check.
    own = run_session(
        world,
        SessionMode.SUPI,
        attacker=Attacker([TapRule(message_type=MessageType.CHALLENGE, remaining=1, act=lambda c, p: Replay(p.entry))]),
        rng=rng,
        label="E-own-challenge",
    )
    with set_protocol_overrides({"skip_ue_mac_check": True}):
        unchecked, unchecked_result = _replay_variant(world, rng, recorded, REPLAY_VARIANTS[0], "F-no-mac-check")
    controls = [
        Verdict(
            scenario="replay_challenge/control:own_challenge",
            holds=own.outcome.aborted_at == "ue_process_challenge",
            is_control=True,
            evidence=[e.ref for e in _injected(own)],
            details={"outcome": own.outcome.aborted_at or "completed"},
        ),
        Verdict(
            scenario="replay_challenge/control:no_mac_check",
            holds=unchecked,
            is_control=True,
            evidence=[e.ref for e in _injected(unchecked_result)],
            details={"outcome": unchecked_result.outcome.aborted_at or "completed"},
        ),
    ]
    return Verdict(
        scenario="replay_challenge",
        holds=holds and suci.holds,
        evidence=evidence + suci.evidence,
        details=details,
        controls=controls,
    )


# === Linkability ===


def _radio_field_values(result: SessionResult) -> set[bytes]:
    values: set[bytes] = set()
    for entry in result.transcript.radio():
        if not entry.delivered:
            continue
        msg = decode(entry.data)
        values.add(entry.data[:1])
        for name, _ in msg.wire_fields:
            value = getattr(msg, name)
            if value is None:
                continue
            if isinstance(value, Autn):
                values.update((value.conc, value.mac))
            elif isinstance(value, str):
                values.add(value.encode("utf-8"))
            elif isinstance(value, bool):
                values.add(bytes([value]))
            else:
                values.add(value)
    return values


def _protocol_constants(world: World) -> set[bytes]:
    return {bytes([t]) for t in MessageType} | {world.hn.id_hn.encode("utf-8")}


def _linkability_run(suite_name: str, seed: int, mode: SessionMode, sticky_ue: bool = False) -> Verdict:
    world, rng = _world(suite_name, seed, supis=(UE_1, UE_2))
    if mode is SessionMode.GUTI:
        for supi in (UE_1, UE_2):
            run_session(world, SessionMode.SUPI, rng=rng, supi=supi, label=f"setup-{supi}")

    overrides = {"reuse_ue_identification": {}} if sticky_ue else {}
    with set_protocol_overrides(overrides):
        first = run_session(world, mode, rng=rng, supi=UE_1, label=f"{mode.value}-ue1-a")
        second = run_session(world, mode, rng=rng, supi=UE_1, label=f"{mode.value}-ue1-b")
    other = run_session(world, mode, rng=rng, supi=UE_2, label=f"{mode.value}-ue2")

    runs = (first, second, other)
    same_ue = _radio_field_values(first) & _radio_field_values(second)
    cross_ue = _radio_field_values(first) & _radio_field_values(other)
    completed = all(r.outcome.completed and not r.outcome.fell_back_to_supi for r in runs)
    holds = completed and same_ue == cross_ue and same_ue <= _protocol_constants(world)
    name = f"linkability/{mode.value}" + ("/control:sticky_ue" if sticky_ue else "")
    return Verdict(
        scenario=name,
        holds=holds,
        is_control=sticky_ue,
        evidence=[e.ref for r in runs for e in r.transcript.radio()],
        details={
            "completed": completed,
            "repeated_same_ue": sorted(v.hex() for v in same_ue - _protocol_constants(world)),
            "repeated_cross_ue": sorted(v.hex() for v in cross_ue - _protocol_constants(world)),
        },
    )


def scenario_linkability_probe(
    suite_name: str = "test", seed: int = 0, modes: tuple[SessionMode, ...] = (SessionMode.SUPI, SessionMode.GUTI)
) -> Verdict:
    parts = [_linkability_run(suite_name, seed, SessionMode(mode)) for mode in modes]
    verdict = combine("linkability", parts)
    verdict.controls.append(_linkability_run(suite_name, seed, SessionMode.SUPI, sticky_ue=True))
    return verdict


# === Compromised SN ===


class _SnStateWitness:
    """Snapshots what the SN holds when it forwards the challenge, before any RES* exists"""

    def __init__(self, world: World):
        self.world = world
        self.seen: list[TranscriptEntry] = []
        self.knowledge: Optional[Knowledge] = None
        self.early_secrets: Optional[bool] = None

    def __call__(self, point: TapPoint) -> TapDecision:
        self.seen.append(point.entry)
        if point.message_type is MessageType.CHALLENGE and self.knowledge is None:
            sn = self.world.sn
            session_id, pending = next(iter(sn.pending.items()))
            self.early_secrets = pending.supi is not None or session_id in sn.established
            self.knowledge = knowledge_from_entries(
                self.seen,
                Knowledge(
                    [
                        (Sort.NONCE, pending.r_sn),
                        (Sort.VALUE, pending.hxres_star),
                        (Sort.AEAD, pending.m),
                        (Sort.IDENT, sn.id_sn.encode("utf-8")),
                    ]
                ),
            )
        return TapDecision.passthrough()


def _sn_closure_part(suite_name: str, seed: int) -> Verdict:
    world, rng = _world(suite_name, seed)
    witness = _SnStateWitness(world)
    world.radio.add_tap(witness)
    try:
        result = run_session(world, SessionMode.SUPI, rng=rng, label="sn-honest")
    finally:
        world.radio.taps.remove(witness)
    if witness.knowledge is None or not result.outcome.completed:
        return Verdict(scenario="sn_binding/closure", holds=False, details={"setup": "session did not complete"})

    targets = (result.outcome.sn_k_seaf, result.outcome.supi_at_sn.encode("utf-8"))
    before = _sn_knowledge_closure(witness.knowledge, suite_name)
    leaked = [t for t in targets if t in before]
    challenge_ref = next(e.ref for e in result.transcript.radio() if e.data[:1] == bytes([MessageType.CHALLENGE]))

    response = next(e for e in result.transcript.radio() if e.data[:1] == bytes([MessageType.RESPONSE]))
    after_knowledge = witness.knowledge.copy()
    after_knowledge.add(Sort.VALUE, decode(response.data).res_star)
    after = _sn_knowledge_closure(after_knowledge, suite_name)
    control = Verdict(
        scenario="sn_binding/control:after_res_star",
        holds=not all(t in after for t in targets),
        is_control=True,
        evidence=[response.ref],
        details={"closure_size": len(after.knowledge)},
    )
    return Verdict(
        scenario="sn_binding/closure",
        holds=not leaked and witness.early_secrets is False,
        evidence=[challenge_ref],
        details={
            "closure_size": len(before.knowledge),
            "rounds": before.rounds,
            "early_secrets_in_state": witness.early_secrets,
        },
        controls=[control],
    )


def _sn_knowledge_closure(seed_knowledge: Knowledge, suite_name: str):
    return close(seed_knowledge, SN_BINDING_RULES, suite_name, SN_BINDING_DEPTH)


def _swapped_challenge_part(suite_name: str, seed: int) -> Verdict:
    """The SN withholds UE1's challenge and serves it to UE2 in a parallel session"""
    world, rng = _world(suite_name, seed, supis=(UE_1, UE_2))
    withheld = Attacker([TapRule(message_type=MessageType.CHALLENGE, remaining=1, act=lambda c, p: Drop())])
    run_session(world, SessionMode.SUPI, attacker=withheld, rng=rng, supi=UE_1, label="parallel-ue1")
    stolen = withheld.recorded(MessageType.CHALLENGE, "parallel-ue1")[0]

    swapped = Attacker(
        [TapRule(message_type=MessageType.CHALLENGE, remaining=1, act=lambda c, p: Inject(stolen.data))]
    )
    result = run_session(world, SessionMode.SUPI, attacker=swapped, rng=rng, supi=UE_2, label="parallel-ue2")
    injected = _injected(result)
    holds = (
        result.outcome.aborted_at == "ue_process_challenge"
        and bool(injected)
        and _ue_silent_after(result, injected[0].step)
        and result.outcome.sn_k_seaf is None
    )
    return Verdict(
        scenario="sn_binding/swapped_challenge",
        holds=holds,
        evidence=[stolen.ref, *(e.ref for e in injected)],
        details={"aborted_at": result.outcome.aborted_at, "reason": result.outcome.abort_reason},
    )


def _foreign_vector_part(suite_name: str, seed: int) -> Verdict:
    """The SN asks the HN for a vector while presenting another SN's identity"""
    world, rng = _world(suite_name, seed, extra_sns=(ROGUE_SN,))
    ue = world.ue
    id_response = ue_identification_response(ue, rng)
    forwarded, session_id = sn_forward_identification(world.sn, id_response, rng)

    try:
        hn_identify(world.hn, forwarded, claimed_id_sn=ROGUE_SN)
        hn_refused = False
    except HnAbort as e:
        hn_refused = e.code == HnAbort.IDENTIFICATION_REJECTED

    stopped_at = None
    bundle = None
    try:
        with set_protocol_overrides({"skip_hn_id_sn_check": True}):
            found = hn_identify(world.hn, forwarded, claimed_id_sn=ROGUE_SN)
        bundle = hn_auth_vector(
            world.hn, found.record, found.pk_u, forwarded.r_sn, ROGUE_SN, rng, session_id=found.session_id
        )
        challenge = sn_forward_challenge(world.sn, bundle.to_message(), session_id)
        response = ue_process_challenge(ue, challenge)
        sn_verify_response(world.sn, response, session_id, rng)
    except UeSilentAbort:
        stopped_at = "ue_process_challenge"
    except SnAbort as e:
        stopped_at = f"sn_{e.step}"
    finally:
        ue_end_session(ue)

    ue_k_seaf = ue.session_keys.k_seaf if ue.session_keys else None
    keys_split = bundle is None or ue_k_seaf != bundle.retained.k_seaf
    return Verdict(
        scenario="sn_binding/foreign_vector",
        holds=hn_refused and stopped_at is not None and keys_split,
        evidence=["party:hn_identify", f"party:{stopped_at}"],
        details={"hn_refused": hn_refused, "stopped_at": stopped_at, "keys_split": keys_split},
    )


def scenario_compromised_sn_binding(suite_name: str = "test", seed: int = 0) -> Verdict:
    parts = [
        _sn_closure_part(suite_name, seed),
        _swapped_challenge_part(suite_name, seed),
        _foreign_vector_part(suite_name, seed),
    ]
    return combine("compromised_sn_binding", parts)


# === Forward and backward secrecy ===


class _EphemeralWitness:
    """Keeps the UE's KEM key pair seen at challenge time; ground truth for K_s2 and the sk_U control"""

    def __init__(self, world: World):
        self.world = world
        self.pairs: dict[str, KemKeyPair] = {}

    def __call__(self, point: TapPoint) -> TapDecision:
        ephemeral = self.world.ue.ephemeral
        if point.message_type is MessageType.CHALLENGE and ephemeral is not None:
            self.pairs[point.session_label] = ephemeral
        return TapDecision.passthrough()


def _attacker_knowledge(world: World, attacker: Attacker) -> Knowledge:
    knowledge = knowledge_from_entries(attacker.entries)
    knowledge.add(Sort.IDENT, world.sn.id_sn.encode("utf-8"))
    knowledge.add(Sort.IDENT, world.hn.id_hn.encode("utf-8"))
    for secret in attacker.ctx.compromised:
        if secret.target is CompromiseTarget.UE_LONG_TERM_KEY:
            knowledge.add(Sort.LONG_TERM, secret.value)
        elif secret.target is CompromiseTarget.HN_SECRET_KEY:
            knowledge.add(Sort.KEM_SK, secret.value)
        elif secret.target is CompromiseTarget.HN_REGISTRY:
            for k, k_s in secret.value.values():
                knowledge.add(Sort.LONG_TERM, k)
                if k_s is not None:
                    knowledge.add(Sort.RATCHET, k_s)
        else:
            knowledge.add(Sort.SESSION_KEY, secret.value)
    return knowledge


def _fs_closure(knowledge: Knowledge, suite_name: str):
    return close(knowledge, FORWARD_SECRECY_RULES, suite_name, FORWARD_SECRECY_DEPTH)


def _compromise_long_term(world: World, attacker: Attacker) -> list[int]:
    secrets = [
        attacker.compromise(world, CompromiseTarget.UE_LONG_TERM_KEY),
        attacker.compromise(world, CompromiseTarget.HN_SECRET_KEY),
        attacker.compromise(world, CompromiseTarget.HN_REGISTRY),
    ]
    return [s.acquired_at for s in secrets]


def _fs_supi_part(suite_name: str, seed: int) -> Verdict:
    world, rng = _world(suite_name, seed)
    observer = Attacker()
    witness = _EphemeralWitness(world)
    world.radio.add_tap(witness)
    result = run_session(world, SessionMode.SUPI, attacker=observer, rng=rng, label="fs-supi")
    world.radio.taps.remove(witness)
    if not result.outcome.completed:
        return Verdict(scenario="forward_secrecy/supi", holds=False, details={"setup": "session aborted"})

    acquired_at = _compromise_long_term(world, observer)
    challenge_entry = observer.recorded(MessageType.CHALLENGE, "fs-supi")[0]
    sk_u = witness.pairs["fs-supi"].sk
    k_s2 = kem_decaps(get_suite(suite_name), sk_u, decode(challenge_entry.data).c2)

    knowledge = _attacker_knowledge(world, observer)
    closure = _fs_closure(knowledge, suite_name)
    exposed = [name for name, v in (("k_seaf", result.outcome.ue_k_seaf), ("k_s2", k_s2)) if v in closure]

    with_sk_u = knowledge.copy()
    with_sk_u.add(Sort.KEM_SK, sk_u)
    control_closure = _fs_closure(with_sk_u, suite_name)
    control = Verdict(
        scenario="forward_secrecy/supi/control:sk_u",
        holds=result.outcome.ue_k_seaf not in control_closure,
        is_control=True,
        evidence=[challenge_entry.ref],
        details={"closure_size": len(control_closure.knowledge)},
    )
    return Verdict(
        scenario="forward_secrecy/supi",
        holds=not exposed and min(acquired_at) > 0,
        evidence=[e.ref for e in observer.entries],
        details={"exposed": exposed, "closure_size": len(closure.knowledge), "compromised_after": min(acquired_at)},
        controls=[control],
    )


def _fs_guti_part(suite_name: str, seed: int) -> Verdict:
    world, rng = _world(suite_name, seed)
    observer = Attacker()
    first = run_session(world, SessionMode.SUPI, attacker=observer, rng=rng, label="fs-guti-1")
    pre_ratchet_k_s = world.hn.registry[world.ue.supi].k_s
    r_sn_prime = world.ue.r_sn_prime
    second = run_session(world, SessionMode.GUTI, attacker=observer, rng=rng, label="fs-guti-2")
    if not (first.outcome.completed and second.outcome.completed) or second.outcome.fell_back_to_supi:
        return Verdict(scenario="forward_secrecy/guti", holds=False, details={"setup": "GUTI chain broke"})

    acquired_at = _compromise_long_term(world, observer)
    knowledge = _attacker_knowledge(world, observer)
    closure = _fs_closure(knowledge, suite_name)
    targets = {"k_seaf_1": first.outcome.ue_k_seaf, "k_seaf_2": second.outcome.ue_k_seaf}
    exposed = [name for name, v in targets.items() if v in closure]

    # The key the ratchet replaced, plus the R_SN' the SN stored next to the GUTI.
    with_old_k_s = knowledge.copy()
    with_old_k_s.add(Sort.RATCHET, pre_ratchet_k_s)
    with_old_k_s.add(Sort.MASK_NONCE, r_sn_prime)
    control_closure = _fs_closure(with_old_k_s, suite_name)
    control = Verdict(
        scenario="forward_secrecy/guti/control:pre_ratchet_k_s",
        holds=second.outcome.ue_k_seaf not in control_closure,
        is_control=True,
        evidence=[e.ref for e in second.transcript.radio()],
        details={"closure_size": len(control_closure.knowledge)},
    )
    return Verdict(
        scenario="forward_secrecy/guti",
        holds=not exposed and min(acquired_at) > 1,
        evidence=[e.ref for e in observer.entries],
        details={"exposed": exposed, "closure_size": len(closure.knowledge), "compromised_after": min(acquired_at)},
        controls=[control],
    )


def _backward_part(suite_name: str, seed: int) -> Verdict:
    world, rng = _world(suite_name, seed)
    observer = Attacker()
    first = run_session(world, SessionMode.SUPI, attacker=observer, rng=rng, label="bs-1")
    if not first.outcome.completed:
        return Verdict(scenario="forward_secrecy/backward", holds=False, details={"setup": "session aborted"})
    leaked = observer.compromise(world, CompromiseTarget.SN_SESSION_KEY, session_id=first.outcome.session_id)
    pre_ratchet_k_s = world.hn.registry[world.ue.supi].k_s
    second = run_session(world, SessionMode.GUTI, attacker=observer, rng=rng, label="bs-2")
    if not second.outcome.completed:
        return Verdict(scenario="forward_secrecy/backward", holds=False, details={"setup": "GUTI session aborted"})

    knowledge = _attacker_knowledge(world, observer)
    closure = _fs_closure(knowledge, suite_name)

    weakened = knowledge.copy()
    weakened.add(Sort.LONG_TERM, world.ue.k)
    weakened.add(Sort.RATCHET, pre_ratchet_k_s)
    control_closure = _fs_closure(weakened, suite_name)
    control = Verdict(
        scenario="forward_secrecy/backward/control:long_term_and_k_s",
        holds=second.outcome.ue_k_seaf not in control_closure,
        is_control=True,
        evidence=[e.ref for e in second.transcript.radio()],
        details={"closure_size": len(control_closure.knowledge)},
    )
    return Verdict(
        scenario="forward_secrecy/backward",
        holds=second.outcome.ue_k_seaf not in closure and leaked.value in closure,
        evidence=[e.ref for e in observer.entries],
        details={"closure_size": len(closure.knowledge), "leaked_after": leaked.acquired_at},
        controls=[control],
    )


def scenario_forward_secrecy_game(suite_name: str = "test", seed: int = 0) -> Verdict:
    parts = [
        _fs_supi_part(suite_name, seed),
        _fs_guti_part(suite_name, seed),
        _backward_part(suite_name, seed),
    ]
    return combine("forward_secrecy", parts)


# === Registry ===

SCENARIOS: dict[str, Callable[..., Verdict]] = {
    "replay": scenario_replay_challenge,
    "linkability": scenario_linkability_probe,
    "sn-binding": scenario_compromised_sn_binding,
    "forward-secrecy": scenario_forward_secrecy_game,
}


def run_scenarios(names: list[str], suite_name: str = "test", seed: int = 0) -> list[Verdict]:
    if "all" in names:
        names = list(SCENARIOS)
    unknown = [n for n in names if n not in SCENARIOS]
    if unknown:
        raise UsageError(f"unknown scenario {', '.join(unknown)}; choose from {', '.join([*SCENARIOS, 'all'])}")
    verdicts = []
    for name in names:
        verdict = SCENARIOS[name](suite_name=suite_name, seed=seed)
        logger.info("scenario %s holds=%s", name, verdict.holds)
        verdicts.append(verdict)
    return verdicts
