"""Standalone model host speaking the oracle wire protocol."""

from .backends import build_backends
from .calibration import CalibrationFailed, CalibrationState, calibrate_detector
from .config import ConfigError, HostConfig, load_config
from .conformance import CheckResult, ConformanceReport, conformance_suite
from .server import serve
from .wav import BadWavError, decode_wav, encode_wav

__version__ = "0.1.0"

__all__ = [
    "BadWavError",
    "CalibrationFailed",
    "CalibrationState",
    "CheckResult",
    "ConfigError",
    "ConformanceReport",
    "HostConfig",
    "build_backends",
    "calibrate_detector",
    "conformance_suite",
    "decode_wav",
    "encode_wav",
    "load_config",
    "serve",
    "__version__",
]
