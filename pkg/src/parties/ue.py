"""UE state machine: USIM and ME modelled as one secure entity.

The USIM/ME split of the challenge handling is kept as two internal
functions (`_usim_resp`, `_me_resp`) over a single state object.
"""

import logging
from typing import Optional

from cryptography.hazmat.primitives import constant_time
from pydantic import BaseModel, Field

from src.crypto import (
    aead_seal,
    f1,
    f2,
    f3,
    f4,
    f5,
    get_suite,
    hash_h,
    hmac_tag,
    kdf,
    kem_decaps,
    kem_encaps,
    kem_keygen,
    xor_bytes,
)
from src.crypto.kem import KemKeyPair
from src.crypto.random_source import RandomSource
from src.errors import (
    AeadAuthenticationError,
    ConfigurationError,
    DecapsulationError,
    EncodingError,
    GutiFallback,
    ParseError,
    UeSilentAbort,
)
from src.parties.derivation import SessionKeys, open_assignment
from src.protocol_overrides import override
from src.wire import (
    ChallengeMsg,
    GutiAssignMsg,
    GutiIdMsg,
    IdResponseMsg,
    ResponseMsg,
    SecuredMsg,
    pack_fields,
)

logger = logging.getLogger(__name__)


class UeState(BaseModel):
    supi: str
    # Long-term key, confined to this object.
    k: bytes = Field(repr=False)
    suite_name: str = "test"
    pk_h: Optional[bytes] = Field(default=None, repr=False)
    id_hn: str
    id_sn_expected: str
    guti: Optional[bytes] = None
    k_s: Optional[bytes] = Field(default=None, repr=False)
    # Staged ratchet key, kept next to the old k_s until the SN confirms.
    k_s_pending: Optional[bytes] = Field(default=None, repr=False)
    r_sn_prime: Optional[bytes] = Field(default=None, repr=False)
    ephemeral: Optional[KemKeyPair] = Field(default=None, repr=False)
    session_keys: Optional[SessionKeys] = Field(default=None, repr=False)


# === Identification ===


def ue_identification_response(state: UeState, rng: RandomSource) -> IdResponseMsg:
    if state.pk_h is None:
        raise ConfigurationError(f"UE {state.supi} has no HN public key provisioned")

    sticky = override("reuse_ue_identification")
    if sticky is not None and "message" in sticky:
        state.ephemeral = sticky["ephemeral"]
        return sticky["message"]

    suite = get_suite(state.suite_name)
    ephemeral = kem_keygen(suite, rng)
    c1, k_s1 = kem_encaps(suite, state.pk_h, rng)
    plaintext = pack_fields(
        [state.supi.encode("utf-8"), ephemeral.pk, state.id_sn_expected.encode("utf-8")]
    )
    suci_conc = aead_seal(k_s1, plaintext)
    mac_u = hmac_tag(k_s1, suci_conc)
    del k_s1

    state.ephemeral = ephemeral
    msg = IdResponseMsg(c1=c1, suci_conc=suci_conc, mac_u=mac_u, id_hn=state.id_hn)
    if sticky is not None:
        sticky.update(message=msg, ephemeral=ephemeral)
    return msg


def ue_guti_identification(state: UeState) -> GutiIdMsg:
    if state.guti is None or state.k_s is None or state.r_sn_prime is None:
        raise GutiFallback(f"UE {state.supi} holds no usable GUTI state")
    return GutiIdMsg(guti=state.guti)


# === Challenge ===


def _usim_resp(k: bytes, k_star: bytes, conc: bytes, mac: bytes) -> tuple[bytes, bytes, bytes, bytes]:
    """Returns (RES, CK, IK, R_SN) or aborts on a MAC mismatch"""
    ak = f5(k, [k_star])
    r_sn = xor_bytes(conc, ak)
    if not override("skip_ue_mac_check", False):
        if not constant_time.bytes_eq(f1(k, [k_star, r_sn]), mac):
            raise UeSilentAbort("mac_check")
    res = f2(k, [k_star])
    return res, f3(k, [k_star]), f4(k, [k_star]), r_sn


def _me_resp(
    ck: bytes, ik: bytes, k_star: bytes, res: bytes, conc: bytes, id_sn: bytes
) -> tuple[bytes, bytes, bytes]:
    """Returns (RES*, K_ausf, K_seaf)"""
    res_star = kdf([ck, ik, k_star, res, id_sn])
    k_ausf = kdf([ck, ik, k_star, conc, id_sn])
    k_seaf = kdf([k_ausf, id_sn])
    return res_star, k_ausf, k_seaf


def _challenge_key(state: UeState, msg: ChallengeMsg) -> bytes:
    if msg.c2 is not None:
        if state.ephemeral is None:
            raise UeSilentAbort("no_ephemeral_key")
        try:
            return kem_decaps(get_suite(state.suite_name), state.ephemeral.sk, msg.c2)
        except (DecapsulationError, EncodingError):
            raise UeSilentAbort("decapsulation") from None
    if state.k_s is None or state.r_sn_prime is None:
        raise UeSilentAbort("no_ratchet_key")
    return xor_bytes(state.k_s, state.r_sn_prime)


def ue_process_challenge(state: UeState, msg: ChallengeMsg) -> ResponseMsg:
    """Verifies AUTN and answers with RES*; raises UeSilentAbort and sends nothing otherwise.

    K* is K_s2 = Decaps(c2, sk_U) on the SUPI path and K_S' = K_S xor R_SN' on
    the GUTI path.
    """
    try:
        k_star = _challenge_key(state, msg)
        res, ck, ik, r_sn = _usim_resp(state.k, k_star, msg.autn.conc, msg.autn.mac)
    except UeSilentAbort as abort:
        logger.info("UE %s aborted silently at %s", state.supi, abort.step)
        state.ephemeral = None
        raise

    res_star, k_ausf, k_seaf = _me_resp(
        ck, ik, k_star, res, msg.autn.conc, state.id_sn_expected.encode("utf-8")
    )
    state.session_keys = SessionKeys(ck=ck, ik=ik, k_ausf=k_ausf, k_seaf=k_seaf)
    state.k_s_pending = hash_h([k_star, r_sn])
    return ResponseMsg(res_star=res_star)


# === Ratchet completion ===


def ue_open_guti_assignment(state: UeState, secured: SecuredMsg) -> GutiAssignMsg:
    if state.session_keys is None:
        raise UeSilentAbort("no_session_keys")
    try:
        return open_assignment(state.session_keys.k_seaf, secured)
    except (AeadAuthenticationError, ParseError):
        raise UeSilentAbort("guti_assignment") from None


def ue_handle_guti_assignment(state: UeState, msg: GutiAssignMsg) -> UeState:
    """The assignment doubles as the SN's completion confirmation"""
    if state.k_s_pending is None:
        logger.info("UE %s ignored a GUTI assignment with no pending session", state.supi)
        return state
    state.guti = msg.guti_new
    state.r_sn_prime = msg.r_sn_prime_new
    state.k_s = state.k_s_pending
    state.k_s_pending = None
    state.ephemeral = None
    return state


def ue_end_session(state: UeState) -> UeState:
    """Erases the ephemeral KEM key once a session ends without an assignment"""
    state.ephemeral = None
    return state
