import pytest

from src.crypto import SeededRandom
from src.errors import ConfigurationError
from src.session_graph import graph, run_session
from src.session_state import SessionMode
from src.sim import Attacker, ChannelKind, Direction, Drop, Tamper, TapRule, flip_bit
from src.wire import ChallengeMsg, MessageType, ResponseMsg, decode, encode
from src.world import provision_world

from tests.conftest import OTHER_SUPI, SUPI

CHALLENGE_AUTN_START = 1 + 4
CHALLENGE_C2_START = CHALLENGE_AUTN_START + 64 + 1 + 4


def _ratchet_agrees(world, supi=SUPI) -> bool:
    return world.ues[supi].k_s is not None and world.ues[supi].k_s == world.hn.registry[supi].k_s


def test_graph_has_a_node_per_protocol_step():
    nodes = set(graph.get_graph().nodes)
    for name in (
        "ue_guti_identification",
        "sn_resolve_guti",
        "hn_guti_auth_vector",
        "sn_identification_request",
        "ue_identification_response",
        "sn_forward_identification",
        "hn_identify",
        "sn_forward_challenge",
        "ue_process_challenge",
        "sn_verify_response",
        "hn_finalize",
        "sn_assign_guti",
        "ue_handle_guti_assignment",
        "session_aborted",
        "session_completed",
    ):
        assert name in nodes


class TestHonestSessions:
    def test_supi_session(self, world, rng):
        result = run_session(world, SessionMode.SUPI, rng=rng, label="one")
        outcome = result.outcome
        assert outcome.completed
        assert outcome.keys_agree
        assert outcome.supi_at_sn == SUPI
        assert outcome.assignment_delivered
        assert [e.step for e in result.transcript.entries] == list(range(8))
        assert [e.direction for e in result.transcript.entries] == [
            Direction.SN_TO_UE,
            Direction.UE_TO_SN,
            Direction.SN_TO_HN,
            Direction.HN_TO_SN,
            Direction.SN_TO_UE,
            Direction.UE_TO_SN,
            Direction.SN_TO_HN,
            Direction.SN_TO_UE,
        ]
        assert all(e.session_label == "one" for e in result.transcript.entries)
        assert _ratchet_agrees(world)

    def test_session_leaves_no_pending_state(self, world, rng):
        run_session(world, SessionMode.SUPI, rng=rng)
        assert world.sn.pending == {}
        assert world.hn.pending == {}
        assert world.ue.ephemeral is None
        assert world.sessions_run == 1
        assert world.active_session is None

    def test_many_seeded_supi_sessions(self):
        for seed in range(1000):
            world = provision_world(SeededRandom(seed))
            outcome = run_session(world, SessionMode.SUPI, rng=SeededRandom(seed + 10_000)).outcome
            assert outcome.completed, f"seed {seed}"
            assert outcome.keys_agree, f"seed {seed}"
            assert outcome.supi_at_sn == world.ue.supi

    def test_seeded_runs_are_reproducible(self):
        first = run_session(provision_world(SeededRandom(7)), rng=SeededRandom(8)).transcript
        second = run_session(provision_world(SeededRandom(7)), rng=SeededRandom(8)).transcript
        assert first.to_jsonl() == second.to_jsonl()

    def test_guti_chain(self, world, rng):
        first = run_session(world, SessionMode.SUPI, rng=rng, label="chain-0")
        assert first.outcome.completed and _ratchet_agrees(world)
        gutis = {world.ue.guti}
        for i in range(1, 6):
            result = run_session(world, SessionMode.GUTI, rng=rng, label=f"chain-{i}")
            assert result.outcome.completed
            assert not result.outcome.fell_back_to_supi
            assert result.outcome.keys_agree
            assert result.transcript.entries[0].direction is Direction.UE_TO_SN
            assert decode(result.transcript.entries[3].data).c2 is None
            assert _ratchet_agrees(world)
            gutis.add(world.ue.guti)
        assert len(gutis) == 6
        assert len(world.sn.guti_table) == 1

    def test_thousand_guti_sessions_after_one_bootstrap(self, world, rng):
        bootstrap = run_session(world, SessionMode.SUPI, rng=rng, label="bootstrap")
        assert bootstrap.outcome.completed
        transcripts = [bootstrap.transcript]
        for i in range(1000):
            result = run_session(world, SessionMode.GUTI, rng=rng, label=f"guti-{i}")
            assert result.outcome.completed, f"session {i}"
            assert not result.outcome.fell_back_to_supi, f"session {i}"
            assert result.outcome.keys_agree, f"session {i}"
            transcripts.append(result.transcript)
        assert _ratchet_agrees(world)
        assert len(world.sn.guti_table) == 1
        assert len(world.sn.established) == 1001

        r_sns = [
            decode(entry.data).r_sn
            for transcript in transcripts
            for entry in transcript.entries
            if entry.data[0] in (MessageType.SN_TO_HN_IDENT, MessageType.GUTI_SN_TO_HN)
        ]
        assert len(r_sns) == 1001
        assert len(set(r_sns)) == len(r_sns)

    def test_hn_private_key_never_travels(self, world, rng):
        sk_h = world.hn.kem_pair.sk
        entries = []
        for i in range(30):
            mode = SessionMode.SUPI if i % 3 == 0 else SessionMode.GUTI
            result = run_session(world, mode, rng=rng, label=f"mixed-{i}")
            assert result.outcome.completed
            entries.extend(result.transcript.entries)
        assert {e.channel for e in entries} == {ChannelKind.RADIO, ChannelKind.CORE}
        for entry in entries:
            assert sk_h not in entry.data, entry.ref

    def test_established_sessions_are_capped(self, world, rng):
        world.sn.established_limit = 3
        session_ids = [run_session(world, SessionMode.GUTI, rng=rng).outcome.session_id for _ in range(5)]
        assert list(world.sn.established) == session_ids[-3:]

    def test_guti_mode_without_state_falls_back(self, world, rng):
        result = run_session(world, SessionMode.GUTI, rng=rng)
        assert result.outcome.completed
        assert result.outcome.fell_back_to_supi
        assert _ratchet_agrees(world)

    def test_two_subscribers_keep_separate_state(self, two_ue_world, rng):
        for supi in (SUPI, OTHER_SUPI, SUPI, OTHER_SUPI):
            outcome = run_session(two_ue_world, SessionMode.GUTI, rng=rng, supi=supi).outcome
            assert outcome.completed and outcome.supi_at_sn == supi
        assert _ratchet_agrees(two_ue_world, SUPI) and _ratchet_agrees(two_ue_world, OTHER_SUPI)
        assert two_ue_world.ues[SUPI].k_s != two_ue_world.ues[OTHER_SUPI].k_s


class TestInterference:
    def test_dropped_challenge_aborts_cleanly(self, world, rng):
        attacker = Attacker([TapRule(message_type=MessageType.CHALLENGE, act=lambda c, p: Drop())])
        result = run_session(world, SessionMode.SUPI, attacker=attacker, rng=rng)
        assert not result.outcome.completed
        assert result.outcome.aborted_at == "ue_process_challenge"
        dropped = [e for e in result.transcript.entries if "dropped" in e.annotations]
        assert len(dropped) == 1 and not dropped[0].delivered
        assert result.outcome.ue_k_seaf is None
        assert world.sn.pending == {}
        assert world.hn.pending == {}
        assert world.ue.ephemeral is None
        assert attacker not in world.radio.taps

    def test_hn_keeps_staged_key_after_abort(self, guti_world, rng):
        committed = guti_world.hn.registry[SUPI].k_s
        attacker = Attacker([TapRule(message_type=MessageType.RESPONSE, act=lambda c, p: Drop())])
        result = run_session(guti_world, SessionMode.GUTI, attacker=attacker, rng=rng)
        assert result.outcome.aborted_at == "sn_verify_response"
        assert guti_world.hn.registry[SUPI].k_s == committed
        assert guti_world.hn.pending == {}
        assert guti_world.hn.registry[SUPI].k_s_staged is not None
        retry = run_session(guti_world, SessionMode.GUTI, rng=rng)
        assert retry.outcome.completed and not retry.outcome.fell_back_to_supi
        assert _ratchet_agrees(guti_world)

    def test_lost_assignment_recovers_through_supi(self, guti_world, rng):
        attacker = Attacker([TapRule(message_type=MessageType.SECURED, act=lambda c, p: Drop())])
        lost = run_session(guti_world, SessionMode.GUTI, attacker=attacker, rng=rng, label="lost")
        assert lost.outcome.completed
        assert not lost.outcome.assignment_delivered
        assert lost.outcome.keys_agree
        # HN committed, the UE still holds the old key next to its staged one
        assert guti_world.ue.k_s != guti_world.hn.registry[SUPI].k_s
        assert guti_world.ue.k_s_pending == guti_world.hn.registry[SUPI].k_s

        recovered = run_session(guti_world, SessionMode.GUTI, rng=rng, label="recover")
        assert recovered.outcome.completed
        assert recovered.outcome.fell_back_to_supi
        assert _ratchet_agrees(guti_world)

        after = run_session(guti_world, SessionMode.GUTI, rng=rng, label="after")
        assert after.outcome.completed and not after.outcome.fell_back_to_supi

    @pytest.mark.parametrize(
        "bit",
        [*range(CHALLENGE_AUTN_START * 8, (CHALLENGE_AUTN_START + 64) * 8), *range(CHALLENGE_C2_START * 8, (CHALLENGE_C2_START + 32) * 8)],
    )
    def test_any_flipped_challenge_bit_is_rejected_silently(self, bit):
        world = provision_world(SeededRandom(0))
        attacker = Attacker(
            [TapRule(message_type=MessageType.CHALLENGE, act=lambda c, p: Tamper(p.entry, flip_bit(bit)))]
        )
        result = run_session(world, SessionMode.SUPI, attacker=attacker, rng=SeededRandom(1))
        tampered = [e for e in result.transcript.entries if "tampered" in e.annotations]
        assert len(tampered) == 1
        assert isinstance(decode(tampered[0].data), ChallengeMsg)
        assert result.outcome.aborted_at == "ue_process_challenge"
        assert not any(e.step > tampered[0].step and e.direction is Direction.UE_TO_SN for e in result.transcript.entries)

    def test_wrong_message_type_aborts(self, world, rng):
        junk = encode(ResponseMsg(res_star=bytes(32)))
        attacker = Attacker([TapRule(message_type=MessageType.ID_REQUEST, act=lambda c, p: Tamper(p.entry, lambda _: junk))])
        result = run_session(world, SessionMode.SUPI, attacker=attacker, rng=rng)
        assert result.outcome.aborted_at == "ue_identification_response"


def test_core_traffic_is_never_tapped(world, rng):
    attacker = Attacker()
    result = run_session(world, SessionMode.SUPI, attacker=attacker, rng=rng)
    assert len(attacker.entries) == len(result.transcript.radio())
    assert all(e.channel is ChannelKind.RADIO for e in attacker.entries)
    assert len(result.transcript.core()) == 3


def test_unregistered_ue_is_a_configuration_error(world, rng):
    del world.hn.registry[SUPI]
    with pytest.raises(ConfigurationError):
        run_session(world, SessionMode.SUPI, rng=rng)
    assert world.sessions_run == 0
