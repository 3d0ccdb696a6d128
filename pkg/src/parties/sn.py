"""Serving-network state machine.

The SN relays identification to the HN, draws R_SN, checks HXRES* and only
then recovers (SUPI, K_seaf) from the single sealed message M. It also owns
the GUTI table and hands out a fresh GUTI after every successful session.
"""

import logging
from pathlib import Path
from typing import Optional, Union

from cryptography.hazmat.primitives import constant_time
from pydantic import BaseModel, ConfigDict, Field

from src.crypto import aead_open, hash_h, xor_bytes
from src.crypto.random_source import RandomSource
from src.errors import AeadAuthenticationError, ParseError, SnAbort
from src.parties.derivation import GUTI_LEN, R_SN_LEN, seal_assignment, session_id_for
from src.persistence import read_records, write_records_atomically
from src.wire import (
    Autn,
    ChallengeMsg,
    ConfirmMsg,
    GutiAssignMsg,
    GutiIdMsg,
    GutiSnToHnMsg,
    HexBytes,
    HnToSnAuthMsg,
    IdRequestMsg,
    IdResponseMsg,
    ResponseMsg,
    SecuredMsg,
    SnToHnIdentMsg,
    unpack_fields,
)

logger = logging.getLogger(__name__)


class GutiRecord(BaseModel):
    guti: HexBytes
    supi: str
    r_sn_prime: HexBytes = Field(repr=False)


class SnPending(BaseModel):
    r_sn: bytes
    # Filled once the HN's vector arrives.
    hxres_star: Optional[bytes] = None
    autn: Optional[Autn] = None
    m: Optional[bytes] = None
    # Known up front only on the GUTI path.
    supi: Optional[str] = None


class EstablishedSession(BaseModel):
    model_config = ConfigDict(frozen=True)

    supi: str
    k_seaf: bytes = Field(repr=False)


class SnState(BaseModel):
    id_sn: str
    guti_table: dict[bytes, GutiRecord] = Field(default_factory=dict)
    pending: dict[bytes, SnPending] = Field(default_factory=dict)
    established: dict[bytes, EstablishedSession] = Field(default_factory=dict, repr=False)
    # Oldest sessions are evicted first once the limit is reached.
    established_limit: int = Field(default=1024, ge=1)
    table_path: Optional[Path] = None


class SnCompletion(BaseModel):
    """What a successful sn_verify_response hands back to the caller"""

    model_config = ConfigDict(frozen=True)

    session_id: bytes
    supi: str
    k_seaf: bytes = Field(repr=False)
    confirm: ConfirmMsg
    assignment: GutiAssignMsg = Field(repr=False)
    secured_assignment: SecuredMsg


# === GUTI table persistence ===


def load_guti_table(path: Path) -> dict[bytes, GutiRecord]:
    return {record.guti: record for record in read_records(path, GutiRecord)}


def save_guti_table(state: SnState) -> None:
    if state.table_path is not None:
        write_records_atomically(state.table_path, state.guti_table.values())


# === Identification ===


def sn_forward_identification(
    state: SnState, msg: IdResponseMsg, rng: RandomSource
) -> tuple[SnToHnIdentMsg, bytes]:
    r_sn = rng.random_bytes(R_SN_LEN)
    session_id = session_id_for(msg.c1, r_sn)
    state.pending[session_id] = SnPending(r_sn=r_sn)
    forwarded = SnToHnIdentMsg(c1=msg.c1, suci_conc=msg.suci_conc, mac_u=msg.mac_u, r_sn=r_sn)
    return forwarded, session_id


def sn_resolve_guti(
    state: SnState, msg: GutiIdMsg, rng: RandomSource
) -> tuple[Union[GutiSnToHnMsg, IdRequestMsg], Optional[bytes]]:
    """Known GUTI: request a vector from the HN. Unknown GUTI: ask the UE for its SUCI."""
    record = state.guti_table.get(msg.guti)
    if record is None:
        logger.info("SN %s saw an unknown GUTI, falling back to identification", state.id_sn)
        return IdRequestMsg(), None

    r_sn = rng.random_bytes(R_SN_LEN)
    session_id = session_id_for(record.r_sn_prime, r_sn)
    state.pending[session_id] = SnPending(r_sn=r_sn, supi=record.supi)
    forwarded = GutiSnToHnMsg(supi=record.supi, r_sn_prime=record.r_sn_prime, r_sn=r_sn)
    return forwarded, session_id


# === Authentication ===


def sn_forward_challenge(state: SnState, msg: HnToSnAuthMsg, session_id: bytes) -> ChallengeMsg:
    pending = state.pending.get(session_id)
    if pending is None:
        raise SnAbort("forward_challenge", "unknown session")
    pending.hxres_star = msg.hxres_star
    pending.autn = msg.autn
    pending.m = msg.m
    return ChallengeMsg(autn=msg.autn, c2=msg.c2)


def sn_verify_response(
    state: SnState, msg: ResponseMsg, session_id: bytes, rng: RandomSource
) -> SnCompletion:
    pending = state.pending.pop(session_id, None)
    if pending is None or pending.hxres_star is None or pending.autn is None or pending.m is None:
        raise SnAbort("verify_response", "no challenge outstanding")

    if not constant_time.bytes_eq(hash_h([pending.r_sn, msg.res_star]), pending.hxres_star):
        logger.info("SN %s rejected RES*", state.id_sn)
        raise SnAbort("verify_response", "HXRES* mismatch")

    f5_value = xor_bytes(pending.autn.conc, pending.r_sn)
    k3 = xor_bytes(msg.res_star, f5_value)
    try:
        k_seaf, supi_raw = unpack_fields(aead_open(k3, pending.m), count=2)
        supi = supi_raw.decode("utf-8")
    except (AeadAuthenticationError, ParseError, UnicodeDecodeError):
        logger.info("SN %s could not open M", state.id_sn)
        raise SnAbort("verify_response", "M did not open") from None

    if pending.supi is not None and pending.supi != supi:
        raise SnAbort("verify_response", "SUPI in M does not match the GUTI table")

    state.established[session_id] = EstablishedSession(supi=supi, k_seaf=k_seaf)
    while len(state.established) > state.established_limit:
        del state.established[next(iter(state.established))]
    assignment = sn_assign_guti(state, supi, rng)
    return SnCompletion(
        session_id=session_id,
        supi=supi,
        k_seaf=k_seaf,
        confirm=ConfirmMsg(ok=True),
        assignment=assignment,
        secured_assignment=seal_assignment(k_seaf, assignment),
    )


def sn_assign_guti(state: SnState, supi: str, rng: RandomSource) -> GutiAssignMsg:
    guti = rng.random_bytes(GUTI_LEN)
    while guti in state.guti_table:
        logger.debug("SN %s redrew a colliding GUTI", state.id_sn)
        guti = rng.random_bytes(GUTI_LEN)
    r_sn_prime = rng.random_bytes(R_SN_LEN)

    for stale in [g for g, record in state.guti_table.items() if record.supi == supi]:
        del state.guti_table[stale]
    state.guti_table[guti] = GutiRecord(guti=guti, supi=supi, r_sn_prime=r_sn_prime)
    save_guti_table(state)
    return GutiAssignMsg(guti_new=guti, r_sn_prime_new=r_sn_prime)


def sn_abort_session(state: SnState, session_id: Optional[bytes]) -> SnState:
    if session_id is not None:
        state.pending.pop(session_id, None)
    return state
