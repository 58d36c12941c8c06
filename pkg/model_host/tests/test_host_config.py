from pathlib import Path

import pytest

from model_host.config import ConfigError, HostConfig, load_config


def test_defaults_enable_every_role():
    cfg = HostConfig()
    assert cfg.enabled_roles == ("tts", "detector", "embedder", "mlm", "annotator")
    assert all(name == "reference" for name in cfg.backends.values())
    assert cfg.port == 0 and cfg.token == ""


def test_toml_round_trip(tmp_path: Path):
    (tmp_path / "clips").mkdir()
    config = tmp_path / "host.toml"
    config.write_text(
        """
[host]
host = "0.0.0.0"
port = 8111
token = "open-sesame"
seed = 42
device = "cpu"

[backends]
tts = "reference"
detector = "reference"

[calibration]
path = "clips"
threshold = 0.95
max_passes = 4
""",
        encoding="utf-8",
    )
    cfg = load_config(config)
    assert cfg.host == "0.0.0.0"
    assert cfg.port == 8111
    assert cfg.token == "open-sesame"
    assert cfg.seed == 42
    assert cfg.backends == {"tts": "reference", "detector": "reference"}
    assert cfg.enabled_roles == ("tts", "detector")
    # relative to the config file, not the process cwd
    assert cfg.calibration_path == (tmp_path / "clips").resolve()
    assert cfg.calibration_threshold == 0.95
    assert cfg.calibration_max_passes == 4


def test_missing_file_is_config_error(tmp_path: Path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "absent.toml")


def test_invalid_toml_is_config_error(tmp_path: Path):
    path = tmp_path / "bad.toml"
    path.write_text("[host\nport = ", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(path)


@pytest.mark.parametrize(
    "kwargs, fragment",
    [
        ({"port": -1}, "port"),
        ({"port": 70000}, "port"),
        ({"device": ""}, "device"),
        ({"backends": {}}, "enabled"),
        ({"backends": {"toaster": "reference"}}, "toaster"),
        ({"backends": {"tts": "imaginary"}}, "imaginary"),
        ({"calibration_threshold": 0.0}, "threshold"),
        ({"calibration_threshold": 1.5}, "threshold"),
        ({"calibration_max_passes": 0}, "pass"),
    ],
)
def test_invariant_violations(kwargs, fragment):
    with pytest.raises(ConfigError, match=fragment):
        HostConfig(**kwargs)


def test_backends_table_must_be_table(tmp_path: Path):
    path = tmp_path / "host.toml"
    path.write_text('backends = "reference"\n', encoding="utf-8")
    with pytest.raises(ConfigError, match="table"):
        load_config(path)
