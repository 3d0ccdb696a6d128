import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from src.crypto import get_suite, kem_keygen
from src.crypto.random_source import RandomSource
from src.errors import ConfigurationError
from src.parties.hn import HnState, SubscriberRecord, load_registry
from src.parties.sn import SnState, load_guti_table
from src.parties.ue import UeState
from src.sim.channel import Channel
from src.sim.transcript import ChannelKind

logger = logging.getLogger(__name__)

DEFAULT_ID_SN = "sn.mnc001.mcc001"
DEFAULT_ID_HN = "hn.mnc001.mcc001"


@dataclass
class World:
    """One HN, one SN and any number of UEs, joined by a radio and a core channel"""

    sn: SnState
    hn: HnState
    ues: dict[str, UeState] = field(default_factory=dict)
    radio: Channel = field(default_factory=lambda: Channel(ChannelKind.RADIO))
    core: Channel = field(default_factory=lambda: Channel(ChannelKind.CORE))
    sessions_run: int = 0
    active_session: Optional[str] = None

    @property
    def ue(self) -> UeState:
        if not self.ues:
            raise ConfigurationError("world has no UE provisioned")
        return next(iter(self.ues.values()))

    def ue_for(self, supi: Optional[str]) -> UeState:
        if supi is None:
            return self.ue
        try:
            return self.ues[supi]
        except KeyError:
            raise ConfigurationError(f"no UE with SUPI {supi} in this world") from None

    def check_provisioning(self, ue: UeState) -> None:
        record = self.hn.registry.get(ue.supi)
        if record is None or record.k != ue.k:
            raise ConfigurationError(f"UE {ue.supi} is not registered at HN {self.hn.id_hn}")
        if ue.pk_h != self.hn.pk_h:
            raise ConfigurationError(f"UE {ue.supi} does not hold the public key of HN {self.hn.id_hn}")
        if ue.suite_name != self.hn.suite_name:
            raise ConfigurationError(f"UE {ue.supi} and HN disagree on the KEM suite")


def add_subscriber(world: World, supi: str, rng: RandomSource, k: Optional[bytes] = None) -> UeState:
    """Registers a subscriber at the HN and hands the matching UE to the world"""
    k = k if k is not None else rng.random_bytes(32)
    world.hn.registry[supi] = SubscriberRecord(supi=supi, k=k)
    ue = UeState(
        supi=supi,
        k=k,
        suite_name=world.hn.suite_name,
        pk_h=world.hn.pk_h,
        id_hn=world.hn.id_hn,
        id_sn_expected=world.sn.id_sn,
    )
    world.ues[supi] = ue
    return ue


def provision_world(
    rng: RandomSource,
    suite_name: str = "test",
    supis: tuple[str, ...] = ("imsi-001010000000001",),
    id_sn: str = DEFAULT_ID_SN,
    id_hn: str = DEFAULT_ID_HN,
    extra_sns: tuple[str, ...] = (),
    registry_path: Optional[Path] = None,
    table_path: Optional[Path] = None,
) -> World:
    suite = get_suite(suite_name)
    hn = HnState(
        id_hn=id_hn,
        suite_name=suite.name,
        kem_pair=kem_keygen(suite, rng),
        sn_allowlist={id_sn, *extra_sns},
        registry_path=registry_path,
    )
    if registry_path is not None:
        hn.registry.update(load_registry(registry_path))
    sn = SnState(id_sn=id_sn, table_path=table_path)
    if table_path is not None:
        sn.guti_table.update(load_guti_table(table_path))

    world = World(sn=sn, hn=hn)
    for supi in supis:
        existing = hn.registry.get(supi)
        add_subscriber(world, supi, rng, k=existing.k if existing else None)
        if existing is not None:
            hn.registry[supi].k_s = existing.k_s
    logger.debug("provisioned world with %d subscribers on suite %s", len(world.ues), suite.name)
    return world
