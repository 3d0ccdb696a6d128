import logging
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from src.crypto import (
    aead_open,
    aead_seal,
    f1,
    f2,
    f3,
    f4,
    f5,
    get_suite,
    hash_h,
    hmac_verify,
    kdf,
    kem_decaps,
    kem_encaps,
    xor_bytes,
)
from src.crypto.kem import KemKeyPair
from src.crypto.random_source import RandomSource
from src.errors import AkaError, HnAbort
from src.parties.derivation import session_id_for
from src.persistence import read_records, write_records_atomically
from src.protocol_overrides import override
from src.wire import (
    Autn,
    ConfirmMsg,
    GutiSnToHnMsg,
    HexBytes,
    HnToSnAuthMsg,
    SnToHnIdentMsg,
    pack_fields,
    unpack_fields,
)

logger = logging.getLogger(__name__)


class SubscriberRecord(BaseModel):
    supi: str
    k: HexBytes = Field(repr=False)
    k_s: Optional[HexBytes] = Field(default=None, repr=False)
    # Present only between vector issuance and the SN's confirmation.
    k_s_staged: Optional[HexBytes] = Field(default=None, repr=False, exclude=True)


class PendingSession(BaseModel):
    supi: str
    xres_star: bytes = Field(repr=False)
    k_seaf: bytes = Field(repr=False)


class HnState(BaseModel):
    id_hn: str
    suite_name: str = "test"
    kem_pair: KemKeyPair = Field(repr=False)
    registry: dict[str, SubscriberRecord] = Field(default_factory=dict)
    sn_allowlist: set[str] = Field(default_factory=set)
    pending: dict[bytes, PendingSession] = Field(default_factory=dict, repr=False)
    registry_path: Optional[Path] = None

    @property
    def pk_h(self) -> bytes:
        return self.kem_pair.pk


class RetainedSecrets(BaseModel):
    model_config = ConfigDict(frozen=True)

    xres_star: bytes = Field(repr=False)
    k_seaf: bytes = Field(repr=False)
    k3: bytes = Field(repr=False)


class AuthVectorBundle(BaseModel):
    model_config = ConfigDict(frozen=True)

    autn: Autn
    hxres_star: bytes
    m: bytes
    c2: Optional[bytes] = None
    retained: RetainedSecrets = Field(repr=False)

    def to_message(self) -> HnToSnAuthMsg:
        return HnToSnAuthMsg(autn=self.autn, hxres_star=self.hxres_star, m=self.m, c2=self.c2)


class Identification(BaseModel):
    supi: str
    pk_u: bytes
    id_sn: str
    session_id: bytes
    record: SubscriberRecord


# === Registry persistence ===


def load_registry(path: Path) -> dict[str, SubscriberRecord]:
    return {record.supi: record for record in read_records(path, SubscriberRecord)}


def save_registry(state: HnState) -> None:
    if state.registry_path is not None:
        write_records_atomically(state.registry_path, state.registry.values())


# === Identification ===


def hn_identify(state: HnState, msg: SnToHnIdentMsg, claimed_id_sn: str) -> Identification:
    """Decaps c1, opens the SUCI, checks MAC_U, ID_SN and the registry.

    Every failure surfaces as the same HnAbort code.
    """
    suite = get_suite(state.suite_name)
    try:
        k_s1 = kem_decaps(suite, state.kem_pair.sk, msg.c1)
        plaintext = aead_open(k_s1, msg.suci_conc)
        mac_ok = hmac_verify(k_s1, msg.suci_conc, msg.mac_u)
        supi_raw, pk_u, id_sn_raw = unpack_fields(plaintext, count=3)
        supi = supi_raw.decode("utf-8")
        id_sn = id_sn_raw.decode("utf-8")
    except (AkaError, UnicodeDecodeError):
        logger.info("HN %s rejected an identification", state.id_hn)
        raise HnAbort(HnAbort.IDENTIFICATION_REJECTED) from None

    id_sn_ok = override("skip_hn_id_sn_check", False) or (
        id_sn == claimed_id_sn and id_sn in state.sn_allowlist
    )
    record = state.registry.get(supi)
    if not (mac_ok and id_sn_ok and record is not None and len(pk_u) == suite.pk_len):
        logger.info("HN %s rejected an identification", state.id_hn)
        raise HnAbort(HnAbort.IDENTIFICATION_REJECTED)

    return Identification(
        supi=supi,
        pk_u=pk_u,
        id_sn=claimed_id_sn,
        session_id=session_id_for(msg.c1, msg.r_sn),
        record=record,
    )


# === Authentication vectors ===


def _auth_vector(
    k: bytes, k_star: bytes, r_sn: bytes, id_sn: str, supi: str, c2: Optional[bytes]
) -> AuthVectorBundle:
    id_sn_raw = id_sn.encode("utf-8")
    mac = f1(k, [k_star, r_sn])
    xres = f2(k, [k_star])
    ak = f5(k, [k_star])
    conc = xor_bytes(ak, r_sn)
    ck = f3(k, [k_star])
    ik = f4(k, [k_star])
    xres_star = kdf([ck, ik, k_star, xres, id_sn_raw])
    hxres_star = hash_h([r_sn, xres_star])
    k_ausf = kdf([ck, ik, k_star, conc, id_sn_raw])
    k_seaf = kdf([k_ausf, id_sn_raw])
    k3 = xor_bytes(xres_star, ak)
    m = aead_seal(k3, pack_fields([k_seaf, supi.encode("utf-8")]))
    return AuthVectorBundle(
        autn=Autn(conc=conc, mac=mac),
        hxres_star=hxres_star,
        m=m,
        c2=c2,
        retained=RetainedSecrets(xres_star=xres_star, k_seaf=k_seaf, k3=k3),
    )


def _stage(state: HnState, record: SubscriberRecord, k_star: bytes, r_sn: bytes,
           session_id: bytes, bundle: AuthVectorBundle) -> None:
    record.k_s_staged = hash_h([k_star, r_sn])
    state.pending[session_id] = PendingSession(
        supi=record.supi, xres_star=bundle.retained.xres_star, k_seaf=bundle.retained.k_seaf
    )


def hn_auth_vector(
    state: HnState,
    record: SubscriberRecord,
    pk_u: bytes,
    r_sn: bytes,
    id_sn: str,
    rng: RandomSource,
    *,
    session_id: bytes,
) -> AuthVectorBundle:
    try:
        c2, k_s2 = kem_encaps(get_suite(state.suite_name), pk_u, rng)
    except AkaError:
        logger.info("HN %s could not encapsulate to pk_U", state.id_hn)
        raise HnAbort(HnAbort.VECTOR_REJECTED) from None

    bundle = _auth_vector(record.k, k_s2, r_sn, id_sn, record.supi, c2)
    _stage(state, record, k_s2, r_sn, session_id, bundle)
    return bundle


def hn_guti_auth_vector(state: HnState, msg: GutiSnToHnMsg, id_sn: str) -> AuthVectorBundle:
    """GUTI path: K* = K_S xor R_SN', no encapsulation and no c2"""
    record = state.registry.get(msg.supi)
    if record is None or record.k_s is None or id_sn not in state.sn_allowlist:
        logger.info("HN %s rejected a GUTI vector request", state.id_hn)
        raise HnAbort(HnAbort.VECTOR_REJECTED)

    k_star = xor_bytes(record.k_s, msg.r_sn_prime)
    bundle = _auth_vector(record.k, k_star, msg.r_sn, id_sn, record.supi, None)
    _stage(state, record, k_star, msg.r_sn, session_id_for(msg.r_sn_prime, msg.r_sn), bundle)
    return bundle


# === Ratchet finalization ===


def hn_finalize(state: HnState, msg: ConfirmMsg, session_id: bytes) -> HnState:
    pending = state.pending.get(session_id)
    if pending is None or not msg.ok:
        logger.info("HN %s ignored a confirmation for an unknown session", state.id_hn)
        return state

    del state.pending[session_id]
    record = state.registry[pending.supi]
    if record.k_s_staged is not None:
        record.k_s = record.k_s_staged
        record.k_s_staged = None
    save_registry(state)
    return state


def hn_abort_session(state: HnState, session_id: Optional[bytes]) -> HnState:
    """Forgets the pending session. A staged K_S stays on the record until a later confirmation."""
    if session_id is not None:
        state.pending.pop(session_id, None)
    return state
