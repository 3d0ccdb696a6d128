import json

import pytest

from src.errors import ThreatModelViolation, UsageError
from src.session_graph import run_session
from src.session_state import SessionMode
from src.sim import (
    Attacker,
    AttackerContext,
    Channel,
    ChannelKind,
    CompromiseTarget,
    Direction,
    Drop,
    Inject,
    Observe,
    Replay,
    SessionTranscript,
    Tamper,
    TapAction,
    TapDecision,
    TapRule,
    TranscriptEntry,
    attacker_act,
    flip_bit,
    write_transcripts,
)
from src.wire import MessageType

from tests.conftest import SUPI


def _core_entry() -> TranscriptEntry:
    return TranscriptEntry(step=2, channel=ChannelKind.CORE, direction=Direction.SN_TO_HN, data=b"\x03")


class TestChannel:
    def test_core_refuses_taps(self):
        with pytest.raises(ThreatModelViolation):
            Channel(ChannelKind.CORE).add_tap(lambda point: TapDecision.passthrough())

    def test_direction_must_match_channel(self):
        with pytest.raises(UsageError):
            Channel(ChannelKind.RADIO).transmit(b"\x01", Direction.SN_TO_HN, 0)

    def test_untapped_radio_delivers_verbatim(self):
        delivery = Channel(ChannelKind.RADIO).transmit(b"\x01", Direction.SN_TO_UE, 4, "s")
        assert delivery.payload == b"\x01"
        assert [(e.step, e.delivered, e.annotations) for e in delivery.entries] == [(4, True, ())]

    def test_drop_records_undelivered_entry(self):
        channel = Channel(ChannelKind.RADIO)
        channel.add_tap(lambda point: TapDecision(TapAction.DROP))
        delivery = channel.transmit(b"\x06", Direction.UE_TO_SN, 5)
        assert delivery.payload is None
        assert delivery.entries[0].annotations == ("dropped",)
        assert not delivery.entries[0].delivered

    def test_injection_supersedes_original(self):
        channel = Channel(ChannelKind.RADIO)
        channel.add_tap(lambda point: TapDecision(TapAction.INJECT, b"\x05forged"))
        delivery = channel.transmit(b"\x05real", Direction.SN_TO_UE, 4)
        original, injected = delivery.entries
        assert (original.step, original.delivered, original.annotations) == (4, False, ("superseded",))
        assert (injected.step, injected.data, injected.annotations) == (5, b"\x05forged", ("injected",))
        assert delivery.payload == b"\x05forged"


class TestAttackerActions:
    def test_observe_passes(self):
        ctx, decision = attacker_act(AttackerContext(), Observe())
        assert decision.action is TapAction.PASS

    def test_core_entries_cannot_be_replayed_or_tampered(self):
        with pytest.raises(ThreatModelViolation):
            attacker_act(AttackerContext(), Replay(_core_entry()))
        with pytest.raises(ThreatModelViolation):
            attacker_act(AttackerContext(), Tamper(_core_entry(), flip_bit(0)))

    def test_tamper_flips_the_requested_bit(self):
        entry = TranscriptEntry(step=0, channel=ChannelKind.RADIO, direction=Direction.SN_TO_UE, data=b"\x00\x00")
        ctx, decision = attacker_act(AttackerContext(), Tamper(entry, flip_bit(9)))
        assert decision == TapDecision(TapAction.REPLACE, b"\x00\x40")
        assert ctx.injected == [b"\x00\x40"]

    def test_inject_is_recorded(self):
        ctx, decision = attacker_act(AttackerContext(), Inject(b"\x01"))
        assert decision.action is TapAction.INJECT
        assert ctx.injected == [b"\x01"]

    def test_drop(self):
        _, decision = attacker_act(AttackerContext(), Drop())
        assert decision.action is TapAction.DROP


class TestCompromise:
    def test_long_term_secrets_between_sessions(self, world, rng):
        attacker = Attacker()
        run_session(world, SessionMode.SUPI, attacker=attacker, rng=rng)
        k = attacker.compromise(world, CompromiseTarget.UE_LONG_TERM_KEY)
        sk = attacker.compromise(world, CompromiseTarget.HN_SECRET_KEY)
        registry = attacker.compromise(world, CompromiseTarget.HN_REGISTRY)
        assert (k.value, k.subject, k.acquired_at) == (world.ue.k, SUPI, 1)
        assert sk.value == world.hn.kem_pair.sk
        assert registry.value[SUPI] == (world.ue.k, world.ue.k_s)
        assert len(attacker.ctx.secrets(CompromiseTarget.HN_REGISTRY)) == 1

    def test_session_key_of_an_established_session(self, world, rng):
        result = run_session(world, SessionMode.SUPI, rng=rng)
        leaked = Attacker().compromise(world, CompromiseTarget.SN_SESSION_KEY, session_id=result.outcome.session_id)
        assert leaked.value == result.outcome.sn_k_seaf

    def test_unknown_session_key(self, world):
        with pytest.raises(ThreatModelViolation):
            Attacker().compromise(world, CompromiseTarget.SN_SESSION_KEY, session_id=b"\x00" * 32)

    def test_no_compromise_during_a_session(self, world, rng):
        attacker = Attacker()
        seen = []

        def mid_session(ctx, point):
            try:
                attacker.compromise(world, CompromiseTarget.UE_LONG_TERM_KEY)
            except ThreatModelViolation:
                seen.append(point.step)
            return Observe()

        attacker.rules.append(TapRule(message_type=MessageType.CHALLENGE, act=mid_session))
        assert run_session(world, SessionMode.SUPI, attacker=attacker, rng=rng).outcome.completed
        assert seen and not attacker.ctx.compromised


class TestScriptedAttacker:
    def test_rules_match_type_label_and_budget(self, world, rng):
        attacker = Attacker(
            [TapRule(message_type=MessageType.CHALLENGE, session_label="second", remaining=1, act=lambda c, p: Drop())]
        )
        first = run_session(world, SessionMode.SUPI, attacker=attacker, rng=rng, label="first")
        second = run_session(world, SessionMode.SUPI, attacker=attacker, rng=rng, label="second")
        third = run_session(world, SessionMode.SUPI, attacker=attacker, rng=rng, label="second")
        assert first.outcome.completed
        assert second.outcome.aborted_at == "ue_process_challenge"
        assert third.outcome.completed
        assert attacker.rules[0].remaining == 0

    def test_recorded_filters_by_type_and_session(self, world, rng):
        attacker = Attacker()
        run_session(world, SessionMode.SUPI, attacker=attacker, rng=rng, label="a")
        run_session(world, SessionMode.GUTI, attacker=attacker, rng=rng, label="b")
        assert len(attacker.recorded(MessageType.CHALLENGE)) == 2
        assert len(attacker.recorded(MessageType.ID_RESPONSE, "b")) == 0
        assert len(attacker.recorded(MessageType.GUTI_ID, "b")) == 1

    def test_replayed_entry_is_delivered_and_marked(self, world, rng):
        recorder = Attacker()
        run_session(world, SessionMode.SUPI, attacker=recorder, rng=rng, label="a")
        old = recorder.recorded(MessageType.CHALLENGE, "a")[0]
        replayer = Attacker([TapRule(message_type=MessageType.CHALLENGE, act=lambda c, p: Replay(old))])
        result = run_session(world, SessionMode.SUPI, attacker=replayer, rng=rng, label="b")
        injected = [e for e in result.transcript.entries if "injected" in e.annotations]
        assert injected[0].data == old.data
        assert result.outcome.aborted_at == "ue_process_challenge"


def test_transcripts_are_written_as_json_lines(tmp_path, world, rng):
    results = [run_session(world, SessionMode.SUPI, rng=rng, label=f"s{i}") for i in range(2)]
    path = tmp_path / "out" / "t.jsonl"
    count = write_transcripts(path, [r.transcript for r in results])
    lines = path.read_text().splitlines()
    assert count == len(lines) == 16
    first = json.loads(lines[0])
    assert first["direction"] == "sn->ue"
    assert first["data"] == "01"
    assert first["session_label"] == "s0"


def test_transcript_entry_refs():
    entry = TranscriptEntry(step=3, channel=ChannelKind.RADIO, direction=Direction.UE_TO_SN, data=b"\x06", session_label="x")
    assert entry.ref == "x#3"
    assert SessionTranscript(entries=[entry, _core_entry()]).radio() == [entry]
