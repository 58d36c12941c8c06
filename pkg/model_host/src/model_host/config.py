"""Host configuration: which backend serves each endpoint, where, and how."""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

ROLES = ("tts", "detector", "embedder", "mlm", "annotator")
KNOWN_BACKENDS = ("reference",)


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class HostConfig:
    """Validated host settings.

    ``backends`` maps an endpoint role to a backend implementation name;
    a role absent from the mapping is not served.  ``calibration_path``
    points at a directory of labeled clips applied to the detector at
    startup.
    """

    host: str = "127.0.0.1"
    port: int = 0
    token: str = ""
    seed: int = 0
    device: str = "cpu"
    backends: dict[str, str] = field(
        default_factory=lambda: {role: "reference" for role in ROLES}
    )
    calibration_path: Path | None = None
    calibration_threshold: float = 0.90
    calibration_max_passes: int = 10

    def __post_init__(self) -> None:
        if not 0 <= self.port <= 65535:
            raise ConfigError(f"port {self.port} outside 0-65535")
        if not self.device:
            raise ConfigError("device must be a non-empty string")
        if not self.backends:
            raise ConfigError("at least one endpoint must be enabled")
        unknown_roles = sorted(set(self.backends) - set(ROLES))
        if unknown_roles:
            raise ConfigError(f"unknown endpoint roles: {', '.join(unknown_roles)}")
        missing = sorted(
            f"{role} -> {name!r}"
            for role, name in self.backends.items()
            if name not in KNOWN_BACKENDS
        )
        if missing:
            raise ConfigError(f"no such backend for: {', '.join(missing)}")
        if not 0.0 < self.calibration_threshold <= 1.0:
            raise ConfigError(
                f"calibration threshold {self.calibration_threshold} outside (0, 1]"
            )
        if self.calibration_max_passes < 1:
            raise ConfigError("calibration needs at least one pass allowed")

    @property
    def enabled_roles(self) -> tuple[str, ...]:
        return tuple(role for role in ROLES if role in self.backends)


def load_config(path: Path | str) -> HostConfig:
    path = Path(path)
    try:
        data = tomllib.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"invalid TOML in {path}: {exc}") from exc

    host_table = data.get("host", {})
    calib_table = data.get("calibration", {})
    kwargs: dict = {}
    for key in ("host", "port", "token", "seed", "device"):
        if key in host_table:
            kwargs[key] = host_table[key]
    if "backends" in data:
        backends = data["backends"]
        if not isinstance(backends, dict):
            raise ConfigError("[backends] must be a table of role = name")
        kwargs["backends"] = {str(k): str(v) for k, v in backends.items()}
    if "path" in calib_table:
        kwargs["calibration_path"] = (path.parent / calib_table["path"]).resolve()
    if "threshold" in calib_table:
        kwargs["calibration_threshold"] = float(calib_table["threshold"])
    if "max_passes" in calib_table:
        kwargs["calibration_max_passes"] = int(calib_table["max_passes"])
    return HostConfig(**kwargs)
