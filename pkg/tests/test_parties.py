"""Party-level protocol steps, driven by hand without the session graph."""

import pytest

from src.crypto import SeededRandom, aead_open, get_suite, hash_h, kem_decaps, kem_encaps, xor_bytes
from src.errors import AeadAuthenticationError, GutiFallback, HnAbort, SnAbort, UeSilentAbort
from src.parties import (
    hn_auth_vector,
    hn_finalize,
    hn_guti_auth_vector,
    hn_identify,
    seal_assignment,
    sn_forward_challenge,
    sn_forward_identification,
    sn_resolve_guti,
    sn_verify_response,
    ue_guti_identification,
    ue_handle_guti_assignment,
    ue_identification_response,
    ue_open_guti_assignment,
    ue_process_challenge,
)
from src.protocol_overrides import set_protocol_overrides
from src.wire import ChallengeMsg, GutiIdMsg, IdRequestMsg, ResponseMsg, SnToHnIdentMsg, unpack_fields

from tests.conftest import SUPI


def _identify(world, rng):
    ue = world.ue
    id_response = ue_identification_response(ue, rng)
    forwarded, session_id = sn_forward_identification(world.sn, id_response, rng)
    found = hn_identify(world.hn, forwarded, claimed_id_sn=world.sn.id_sn)
    return id_response, forwarded, session_id, found


def _full_supi_session(world, rng):
    _, forwarded, session_id, found = _identify(world, rng)
    bundle = hn_auth_vector(
        world.hn, found.record, found.pk_u, forwarded.r_sn, found.id_sn, rng, session_id=found.session_id
    )
    challenge = sn_forward_challenge(world.sn, bundle.to_message(), session_id)
    response = ue_process_challenge(world.ue, challenge)
    completion = sn_verify_response(world.sn, response, session_id, rng)
    hn_finalize(world.hn, completion.confirm, session_id)
    assignment = ue_open_guti_assignment(world.ue, completion.secured_assignment)
    ue_handle_guti_assignment(world.ue, assignment)
    return bundle, completion


class TestIdentification:
    def test_suci_hides_supi_and_opens_at_hn(self, world, rng):
        id_response, forwarded, session_id, found = _identify(world, rng)
        assert SUPI.encode() not in id_response.suci_conc
        assert found.supi == SUPI
        assert found.pk_u == world.ue.ephemeral.pk
        assert found.session_id == session_id

    def test_sn_draws_fresh_r_sn_per_session(self, world, rng):
        _, first, _, _ = _identify(world, rng)
        _, second, _, _ = _identify(world, rng)
        assert first.r_sn != second.r_sn

    def test_every_identification_failure_uses_one_code(self, world, rng):
        _, forwarded, _, _ = _identify(world, rng)
        broken = [
            forwarded.model_copy(update={"mac_u": bytes(32)}),
            forwarded.model_copy(update={"suci_conc": forwarded.suci_conc[:-1] + b"\x00"}),
            forwarded.model_copy(update={"c1": bytes(len(forwarded.c1))}),
        ]
        for msg in broken:
            with pytest.raises(HnAbort) as exc:
                hn_identify(world.hn, SnToHnIdentMsg(**msg.model_dump()), claimed_id_sn=world.sn.id_sn)
            assert exc.value.code == HnAbort.IDENTIFICATION_REJECTED

    def test_hn_rejects_mismatched_serving_network(self, world, rng):
        _, forwarded, _, _ = _identify(world, rng)
        with pytest.raises(HnAbort):
            hn_identify(world.hn, forwarded, claimed_id_sn="sn.mnc099.mcc001")

    def test_hn_rejects_unknown_subscriber(self, world, rng):
        _, forwarded, _, _ = _identify(world, rng)
        del world.hn.registry[SUPI]
        with pytest.raises(HnAbort):
            hn_identify(world.hn, forwarded, claimed_id_sn=world.sn.id_sn)


class TestChallenge:
    def test_all_parties_agree_on_k_seaf(self, world, rng):
        bundle, completion = _full_supi_session(world, rng)
        assert completion.supi == SUPI
        assert completion.k_seaf == bundle.retained.k_seaf == world.ue.session_keys.k_seaf

    def test_k_s_ratchets_in_step(self, world, rng):
        _full_supi_session(world, rng)
        record = world.hn.registry[SUPI]
        assert world.ue.k_s is not None
        assert world.ue.k_s == record.k_s
        assert record.k_s_staged is None
        assert world.ue.ephemeral is None
        assert world.ue.guti in world.sn.guti_table

    def test_hn_retains_xres_star_and_k3(self, world, rng):
        _, forwarded, _, found = _identify(world, rng)
        bundle = hn_auth_vector(
            world.hn, found.record, found.pk_u, forwarded.r_sn, found.id_sn, rng, session_id=found.session_id
        )
        assert bundle.hxres_star == hash_h([forwarded.r_sn, bundle.retained.xres_star])
        k_seaf, supi = unpack_fields(aead_open(bundle.retained.k3, bundle.m), count=2)
        assert (k_seaf, supi) == (bundle.retained.k_seaf, SUPI.encode())

    def test_ue_rejects_tampered_mac_and_erases_ephemeral(self, world, rng):
        _, forwarded, session_id, found = _identify(world, rng)
        bundle = hn_auth_vector(
            world.hn, found.record, found.pk_u, forwarded.r_sn, found.id_sn, rng, session_id=found.session_id
        )
        challenge = sn_forward_challenge(world.sn, bundle.to_message(), session_id)
        mac = bytes([challenge.autn.mac[0] ^ 1]) + challenge.autn.mac[1:]
        tampered = ChallengeMsg(autn=challenge.autn.model_copy(update={"mac": mac}), c2=challenge.c2)
        with pytest.raises(UeSilentAbort) as exc:
            ue_process_challenge(world.ue, tampered)
        assert exc.value.step == "mac_check"
        assert world.ue.ephemeral is None
        assert world.ue.k_s_pending is None

    def test_mac_check_override_lets_forgeries_through(self, world, rng):
        _, forwarded, session_id, found = _identify(world, rng)
        bundle = hn_auth_vector(
            world.hn, found.record, found.pk_u, forwarded.r_sn, found.id_sn, rng, session_id=found.session_id
        )
        challenge = sn_forward_challenge(world.sn, bundle.to_message(), session_id)
        forged = ChallengeMsg(autn=challenge.autn.model_copy(update={"mac": bytes(32)}), c2=challenge.c2)
        with set_protocol_overrides({"skip_ue_mac_check": True}):
            ue_process_challenge(world.ue, forged)

    def test_wrong_res_star_aborts_at_sn(self, world, rng):
        _, forwarded, session_id, found = _identify(world, rng)
        bundle = hn_auth_vector(
            world.hn, found.record, found.pk_u, forwarded.r_sn, found.id_sn, rng, session_id=found.session_id
        )
        sn_forward_challenge(world.sn, bundle.to_message(), session_id)
        with pytest.raises(SnAbort) as exc:
            sn_verify_response(world.sn, ResponseMsg(res_star=bytes(32)), session_id, rng)
        assert exc.value.step == "verify_response"
        assert session_id not in world.sn.established

    def test_sn_cannot_open_m_before_the_response(self, world, rng):
        _, forwarded, session_id, found = _identify(world, rng)
        bundle = hn_auth_vector(
            world.hn, found.record, found.pk_u, forwarded.r_sn, found.id_sn, rng, session_id=found.session_id
        )
        sn_forward_challenge(world.sn, bundle.to_message(), session_id)
        pending = world.sn.pending[session_id]
        assert pending.supi is None
        guess = xor_bytes(pending.hxres_star, xor_bytes(pending.autn.conc, pending.r_sn))
        with pytest.raises(AeadAuthenticationError):
            aead_open(guess, pending.m)

    def test_unknown_session_at_sn(self, world, rng):
        _, forwarded, session_id, found = _identify(world, rng)
        bundle = hn_auth_vector(
            world.hn, found.record, found.pk_u, forwarded.r_sn, found.id_sn, rng, session_id=found.session_id
        )
        with pytest.raises(SnAbort):
            sn_forward_challenge(world.sn, bundle.to_message(), b"\x00" * 32)

    def test_c2_decapsulates_to_the_ue_only(self, world, rng):
        suite = get_suite("test")
        _, forwarded, _, found = _identify(world, rng)
        bundle = hn_auth_vector(
            world.hn, found.record, found.pk_u, forwarded.r_sn, found.id_sn, rng, session_id=found.session_id
        )
        assert kem_decaps(suite, world.ue.ephemeral.sk, bundle.c2) != kem_decaps(suite, world.hn.kem_pair.sk, bundle.c2)

    def test_hn_refuses_malformed_pk_u(self, world, rng):
        _, forwarded, _, found = _identify(world, rng)
        with pytest.raises(HnAbort) as exc:
            hn_auth_vector(world.hn, found.record, b"\x00", forwarded.r_sn, found.id_sn, rng, session_id=found.session_id)
        assert exc.value.code == HnAbort.VECTOR_REJECTED


class TestGutiPath:
    def test_fresh_ue_falls_back(self, world):
        with pytest.raises(GutiFallback):
            ue_guti_identification(world.ue)

    def test_unknown_guti_asks_for_identification(self, world, rng):
        reply, session_id = sn_resolve_guti(world.sn, GutiIdMsg(guti=b"\x09" * 16), rng)
        assert isinstance(reply, IdRequestMsg)
        assert session_id is None

    def test_guti_session_ratchets_again(self, world, rng):
        _full_supi_session(world, rng)
        old_guti, old_k_s = world.ue.guti, world.ue.k_s

        forwarded, session_id = sn_resolve_guti(world.sn, ue_guti_identification(world.ue), rng)
        bundle = hn_guti_auth_vector(world.hn, forwarded, world.sn.id_sn)
        assert bundle.c2 is None
        challenge = sn_forward_challenge(world.sn, bundle.to_message(), session_id)
        assert challenge.c2 is None
        response = ue_process_challenge(world.ue, challenge)
        completion = sn_verify_response(world.sn, response, session_id, rng)
        hn_finalize(world.hn, completion.confirm, session_id)
        ue_handle_guti_assignment(world.ue, ue_open_guti_assignment(world.ue, completion.secured_assignment))

        assert completion.k_seaf == world.ue.session_keys.k_seaf
        assert world.ue.guti != old_guti
        assert old_guti not in world.sn.guti_table
        assert world.ue.k_s != old_k_s
        assert world.ue.k_s == world.hn.registry[SUPI].k_s

    def test_unconfirmed_session_keeps_old_k_s_at_hn(self, world, rng):
        _full_supi_session(world, rng)
        committed = world.hn.registry[SUPI].k_s
        forwarded, _ = sn_resolve_guti(world.sn, ue_guti_identification(world.ue), rng)
        hn_guti_auth_vector(world.hn, forwarded, world.sn.id_sn)
        record = world.hn.registry[SUPI]
        assert record.k_s == committed
        assert record.k_s_staged is not None and record.k_s_staged != committed

    def test_guti_vector_needs_ratchet_state(self, world, rng):
        _full_supi_session(world, rng)
        forwarded, _ = sn_resolve_guti(world.sn, ue_guti_identification(world.ue), rng)
        world.hn.registry[SUPI].k_s = None
        with pytest.raises(HnAbort) as exc:
            hn_guti_auth_vector(world.hn, forwarded, world.sn.id_sn)
        assert exc.value.code == HnAbort.VECTOR_REJECTED

    def test_assignment_under_wrong_key_is_ignored_silently(self, world, rng):
        _, completion = _full_supi_session(world, rng)
        other = SeededRandom(99)
        forged = seal_assignment(other.random_bytes(32), completion.assignment)
        with pytest.raises(UeSilentAbort):
            ue_open_guti_assignment(world.ue, forged)


def test_kem_encaps_to_ue_key_is_what_hn_uses(world, rng):
    suite = get_suite("test")
    ue = world.ue
    ue_identification_response(ue, rng)
    ct, key = kem_encaps(suite, ue.ephemeral.pk, rng)
    assert kem_decaps(suite, ue.ephemeral.sk, ct) == key
