"""Audio plumbing: WAV I/O, mel spectrograms, DTW distance, duration.

The FFT under the mel front end is the package's own radix-2 implementation
(compiled when available); frames are windowed and transformed per frame with
no global padding, and a clip shorter than one analysis window is an error
rather than a silently padded edge case.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .oracles.types import AudioClip


class CorruptHeaderError(ValueError):
    """Byte stream is not a well-formed RIFF/WAVE file."""


class UnsupportedFormatError(ValueError):
    """WAV is valid but not 16-bit PCM mono."""


class ClipTooShortError(ValueError):
    """Clip has fewer samples than one analysis window."""


PCM_SCALE = 32768.0


def read_wav(data: bytes) -> AudioClip:
    """Parse a 16-bit PCM mono WAV byte stream.

    Sample values are scaled by 1/32768 into [-1, 1). Stereo, float, or
    compressed streams raise UnsupportedFormatError; structural damage raises
    CorruptHeaderError.
    """
    if len(data) < 12 or data[0:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise CorruptHeaderError("missing RIFF/WAVE signature")
    fmt: tuple[int, int, int] | None = None
    payload: bytes | None = None
    pos = 12
    while pos + 8 <= len(data):
        chunk_id = data[pos : pos + 4]
        (size,) = struct.unpack_from("<I", data, pos + 4)
        body = data[pos + 8 : pos + 8 + size]
        if len(body) < size:
            raise CorruptHeaderError(f"chunk {chunk_id!r} truncated")
        if chunk_id == b"fmt ":
            if size < 16:
                raise CorruptHeaderError("fmt chunk too small")
            audio_format, channels, sample_rate, _, _, bits = struct.unpack_from(
                "<HHIIHH", body, 0
            )
            if audio_format != 1:
                raise UnsupportedFormatError(f"audio format {audio_format} is not PCM")
            if channels != 1:
                raise UnsupportedFormatError(f"{channels} channels; only mono supported")
            if bits != 16:
                raise UnsupportedFormatError(f"{bits}-bit samples; only 16-bit supported")
            fmt = (audio_format, channels, sample_rate)
        elif chunk_id == b"data":
            payload = body
        pos += 8 + size + (size & 1)  # chunks are word-aligned
    if fmt is None:
        raise CorruptHeaderError("no fmt chunk")
    if payload is None:
        raise CorruptHeaderError("no data chunk")
    if len(payload) % 2:
        raise CorruptHeaderError("data chunk has a dangling byte")
    samples = np.frombuffer(payload, dtype="<i2").astype(np.float64) / PCM_SCALE
    return AudioClip(samples=samples, sample_rate=fmt[2])


def write_wav(clip: AudioClip) -> bytes:
    """Serialize a clip as 16-bit PCM mono WAV."""
    quantized = np.clip(np.rint(clip.samples * PCM_SCALE), -32768, 32767).astype("<i2")
    payload = quantized.tobytes()
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF",
        36 + len(payload),
        b"WAVE",
        b"fmt ",
        16,
        1,  # PCM
        1,  # mono
        clip.sample_rate,
        clip.sample_rate * 2,
        2,
        16,
        b"data",
        len(payload),
    )
    return header + payload


def duration(clip: AudioClip) -> float:
    """Length in seconds: sample count over rate, exact float division."""
    return len(clip.samples) / clip.sample_rate


@dataclass(frozen=True)
class MelParams:
    """Mel front-end settings. fmax=None means the Nyquist frequency."""

    n_fft: int = 1024
    hop: int = 256
    n_mels: int = 80
    fmin: float = 0.0
    fmax: float | None = None
    log_floor: float = 1e-10

    def __post_init__(self) -> None:
        if self.n_fft < 2 or self.n_fft & (self.n_fft - 1):
            raise ValueError("n_fft must be a power of two")
        if self.hop < 1:
            raise ValueError("hop must be >= 1")
        if self.n_mels < 1:
            raise ValueError("n_mels must be >= 1")


def _hz_to_mel(hz: np.ndarray | float) -> np.ndarray:
    hz = np.asarray(hz, dtype=np.float64)
    f_sp = 200.0 / 3.0
    mels = hz / f_sp
    log_step = np.log(6.4) / 27.0
    above = hz >= 1000.0
    mels = np.where(above, 15.0 + np.log(np.maximum(hz, 1e-12) / 1000.0) / log_step, mels)
    return mels


def _mel_to_hz(mels: np.ndarray) -> np.ndarray:
    f_sp = 200.0 / 3.0
    hz = mels * f_sp
    log_step = np.log(6.4) / 27.0
    above = mels >= 15.0
    return np.where(above, 1000.0 * np.exp(log_step * (mels - 15.0)), hz)


@lru_cache(maxsize=8)
def _filterbank(sr: int, n_fft: int, n_mels: int, fmin: float, fmax: float) -> np.ndarray:
    """Triangular filters on the linear-below-1kHz mel scale, area-normalized."""
    points = _mel_to_hz(np.linspace(_hz_to_mel(fmin), _hz_to_mel(fmax), n_mels + 2))
    bin_freqs = np.arange(n_fft // 2 + 1) * (sr / n_fft)
    fb = np.zeros((n_mels, len(bin_freqs)))
    for m in range(n_mels):
        lo, center, hi = points[m], points[m + 1], points[m + 2]
        up = (bin_freqs - lo) / max(center - lo, 1e-12)
        down = (hi - bin_freqs) / max(hi - center, 1e-12)
        fb[m] = np.maximum(0.0, np.minimum(up, down))
        fb[m] *= 2.0 / max(hi - lo, 1e-12)  # equal-area normalization
    return fb


def _hann(n: int) -> np.ndarray:
    # periodic analysis window
    return 0.5 - 0.5 * np.cos(2.0 * np.pi * np.arange(n) / n)


def frame_count(n_samples: int, params: MelParams) -> int:
    """floor((L - n_fft) / hop) + 1; requires L >= n_fft."""
    if n_samples < params.n_fft:
        raise ClipTooShortError(f"{n_samples} samples < n_fft={params.n_fft}")
    return (n_samples - params.n_fft) // params.hop + 1


def stft_magnitude(clip: AudioClip, params: MelParams | None = None) -> np.ndarray:
    """Hann-windowed one-sided magnitude STFT, shape (n_frames, n_fft//2+1)."""
    params = params or MelParams()
    n = frame_count(len(clip), params)
    window = _hann(params.n_fft)
    offsets = np.arange(n)[:, None] * params.hop + np.arange(params.n_fft)[None, :]
    frames = clip.samples[offsets] * window
    spectrum = _kernels.fft_frames(frames)[:, : params.n_fft // 2 + 1]
    return np.abs(spectrum)


def mel_spectrogram(clip: AudioClip, params: MelParams | None = None) -> np.ndarray:
    """Log-mel magnitude features, shape (n_frames, n_mels).

    Silence maps every cell to log10(log_floor); no global padding is applied,
    so the frame count is exactly floor((L - n_fft)/hop) + 1.
    """
    params = params or MelParams()
    magnitude = stft_magnitude(clip, params)
    fmax = params.fmax if params.fmax is not None else clip.sample_rate / 2.0
    fb = _filterbank(clip.sample_rate, params.n_fft, params.n_mels, params.fmin, fmax)
    mel = magnitude @ fb.T
    return np.log10(np.maximum(mel, params.log_floor))


def dtw_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Total alignment cost between two spectrogram-like sequences.

    Symmetric, zero for identical inputs, monotone under appended frames.
    """
    return _kernels.dtw_cost(a, b)
