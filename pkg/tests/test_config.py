from pathlib import Path

import pytest

from src.config_schema import RunSettings, load_settings
from src.errors import UsageError


def test_defaults():
    settings = load_settings({}, environ={})
    assert settings == RunSettings()
    assert settings.kem_names == ["test"]
    assert settings.log_level == "WARNING"


def test_precedence_flags_over_file_over_environment(tmp_path):
    config = tmp_path / "bench.env"
    config.write_text("KEM=kyber,hqc\nITERS=50\n")
    environ = {"AKA_KEM": "bike", "AKA_ITERS": "7", "AKA_SEED": "3", "UNRELATED": "x"}

    from_env = load_settings({}, environ=environ)
    assert (from_env.kem, from_env.iters, from_env.seed) == ("bike", 7, 3)

    from_file = load_settings({}, config_file=config, environ=environ)
    assert (from_file.kem_names, from_file.iters, from_file.seed) == (["kyber", "hqc"], 50, 3)

    from_flags = load_settings({"iters": 9, "kem": None}, config_file=config, environ=environ)
    assert (from_flags.kem_names, from_flags.iters) == (["kyber", "hqc"], 9)


def test_out_becomes_a_path():
    assert load_settings({"out": "x/y.jsonl"}, environ={}).out == Path("x/y.jsonl")


def test_log_level_is_normalised():
    assert load_settings({}, environ={"AKA_LOG_LEVEL": "debug"}).log_level == "DEBUG"


@pytest.mark.parametrize(
    "flags",
    [{"mode": "imsi"}, {"sessions": -3}, {"iters": 0}, {"log_level": "chatty"}, {"seed": "seven"}],
)
def test_invalid_settings_are_usage_errors(flags):
    with pytest.raises(UsageError):
        load_settings(flags, environ={})


def test_missing_config_file(tmp_path):
    with pytest.raises(UsageError):
        load_settings({}, config_file=tmp_path / "absent.env", environ={})
