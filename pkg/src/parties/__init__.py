from src.parties.derivation import (
    GUTI_LEN,
    R_SN_LEN,
    SessionKeys,
    assignment_key,
    open_assignment,
    seal_assignment,
    session_id_for,
)
from src.parties.hn import (
    AuthVectorBundle,
    HnState,
    Identification,
    SubscriberRecord,
    hn_abort_session,
    hn_auth_vector,
    hn_finalize,
    hn_guti_auth_vector,
    hn_identify,
    load_registry,
)
from src.parties.sn import (
    GutiRecord,
    SnCompletion,
    SnState,
    load_guti_table,
    sn_abort_session,
    sn_assign_guti,
    sn_forward_challenge,
    sn_forward_identification,
    sn_resolve_guti,
    sn_verify_response,
)
from src.parties.ue import (
    UeState,
    ue_end_session,
    ue_guti_identification,
    ue_handle_guti_assignment,
    ue_identification_response,
    ue_open_guti_assignment,
    ue_process_challenge,
)

__all__ = [
    "GUTI_LEN",
    "R_SN_LEN",
    "AuthVectorBundle",
    "GutiRecord",
    "HnState",
    "Identification",
    "SessionKeys",
    "SnCompletion",
    "SnState",
    "SubscriberRecord",
    "UeState",
    "assignment_key",
    "hn_abort_session",
    "hn_auth_vector",
    "hn_finalize",
    "hn_guti_auth_vector",
    "hn_identify",
    "load_guti_table",
    "load_registry",
    "open_assignment",
    "seal_assignment",
    "session_id_for",
    "sn_abort_session",
    "sn_assign_guti",
    "sn_forward_challenge",
    "sn_forward_identification",
    "sn_resolve_guti",
    "sn_verify_response",
    "ue_end_session",
    "ue_guti_identification",
    "ue_handle_guti_assignment",
    "ue_identification_response",
    "ue_open_guti_assignment",
    "ue_process_challenge",
]
