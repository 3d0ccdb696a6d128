from contextlib import contextmanager
from contextvars import ContextVar
from typing import Any, Optional

# Deliberate protocol weakenings for negative controls. Honest runs never set these.
#   skip_ue_mac_check: UE accepts any AUTN
#   skip_hn_id_sn_check: HN issues vectors for whatever ID_SN the SN claims
#   reuse_ue_identification: dict cache, UE replays its first (c1, SUCI, pk_U)
protocol_overrides: ContextVar[Optional[dict[str, Any]]] = ContextVar(
    "protocol_overrides", default=None
)


@contextmanager
def set_protocol_overrides(overrides: dict[str, Any]):
    token = protocol_overrides.set(overrides)
    try:
        yield
    finally:
        protocol_overrides.reset(token)


def override(name: str, default: Any = None) -> Any:
    current = protocol_overrides.get()
    if current is None:
        return default
    return current.get(name, default)
