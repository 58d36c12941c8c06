"""Minimal PCM16 mono WAV encoding, enough to speak the wire protocol."""

from __future__ import annotations

import struct

import numpy as np


class BadWavError(ValueError):
    pass


def encode_wav(samples: np.ndarray, sample_rate: int) -> bytes:
    """float samples in [-1, 1] to a PCM16 mono RIFF container."""
    if sample_rate <= 0:
        raise BadWavError(f"sample rate {sample_rate} must be positive")
    pcm = np.clip(np.rint(np.asarray(samples, dtype=np.float64) * 32768.0), -32768, 32767)
    data = pcm.astype("<i2").tobytes()
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF",
        36 + len(data),
        b"WAVE",
        b"fmt ",
        16,
        1,  # PCM
        1,  # mono
        sample_rate,
        sample_rate * 2,
        2,
        16,
        b"data",
        len(data),
    )
    return header + data


def decode_wav(blob: bytes) -> tuple[np.ndarray, int]:
    """Parse PCM16 mono WAV bytes back to float samples and a rate."""
    if len(blob) < 44 or blob[:4] != b"RIFF" or blob[8:12] != b"WAVE":
        raise BadWavError("not a RIFF/WAVE container")
    pos = 12
    fmt = None
    data = None
    while pos + 8 <= len(blob):
        chunk_id = blob[pos : pos + 4]
        (size,) = struct.unpack_from("<I", blob, pos + 4)
        body = blob[pos + 8 : pos + 8 + size]
        if chunk_id == b"fmt ":
            fmt = body
        elif chunk_id == b"data":
            data = body
        pos += 8 + size + (size & 1)
    if fmt is None or data is None:
        raise BadWavError("missing fmt or data chunk")
    audio_format, channels, sample_rate, _, _, bits = struct.unpack_from("<HHIIHH", fmt, 0)
    if audio_format != 1 or channels != 1 or bits != 16:
        raise BadWavError(
            f"only PCM16 mono supported (format={audio_format}, "
            f"channels={channels}, bits={bits})"
        )
    samples = np.frombuffer(data[: len(data) - len(data) % 2], dtype="<i2")
    return samples.astype(np.float64) / 32768.0, sample_rate
