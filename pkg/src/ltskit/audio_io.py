"""WAV ingestion and analysis-segment extraction.

Decodes RIFF/WAVE PCM files (8/16/24-bit integer and 32-bit float payloads,
mono or stereo) into a canonical mono stream in [-1, 1], and cuts the
fixed-length window the rest of the pipeline analyzes. No resampling is ever
performed here: clips keep their native rate and rate mismatches surface
later as frequency-axis errors at comparison time.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .errors import SegmentError, WavError

WAVE_FORMAT_PCM = 1
WAVE_FORMAT_IEEE_FLOAT = 3

#: Analysis window length used throughout: long enough for the speaker to
#: sweep their usual sound range, short enough to cut from every recording.
DEFAULT_SEGMENT_S = 30.0


@dataclass(frozen=True)
class AudioClip:
    """Mono sample stream with amplitudes in [-1, 1]."""

    samples: np.ndarray
    sample_rate: int
    source_path: str = ""

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.ndim != 1 or samples.size == 0:
            raise ValueError("samples must be a non-empty 1-D sequence")
        if int(self.sample_rate) <= 0:
            raise ValueError(f"sample_rate must be positive, got {self.sample_rate}")
        if float(np.max(np.abs(samples))) > 1.0:
            raise ValueError("amplitudes must lie in [-1, 1]")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sample_rate", int(self.sample_rate))

    @property
    def duration_s(self) -> float:
        return self.samples.size / self.sample_rate


@dataclass(frozen=True)
class SegmentConfig:
    """Where the analysis window sits inside a recording.

    The default trailing window keeps the settled part of a recording and
    drops the lead-in (where the speaker is still transitioning into the
    requested speaking state).
    """

    duration_s: float = DEFAULT_SEGMENT_S
    anchor: str = "end"
    offset_s: float = 0.0

    def __post_init__(self):
        if self.duration_s <= 0:
            raise ValueError(f"duration_s must be positive, got {self.duration_s}")
        if self.anchor not in ("start", "end"):
            raise ValueError(f"anchor must be 'start' or 'end', got {self.anchor!r}")
        if self.offset_s < 0:
            raise ValueError(f"offset_s must be non-negative, got {self.offset_s}")


def extract_segment(
    clip: AudioClip,
    duration_s: float = DEFAULT_SEGMENT_S,
    anchor: str = "end",
    offset_s: float = 0.0,
) -> AudioClip:
    """Cut a contiguous window of exactly round(duration_s * sample_rate) samples.

    anchor="end" takes the trailing window after discarding offset_s seconds
    from the tail; anchor="start" counts offset_s from the head.
    """
    cfg = SegmentConfig(duration_s=duration_s, anchor=anchor, offset_s=offset_s)
    n_seg = round(cfg.duration_s * clip.sample_rate)
    n_off = round(cfg.offset_s * clip.sample_rate)
    n = clip.samples.size
    if n_seg + n_off > n:
        raise SegmentError(
            f"insufficient duration: need {cfg.duration_s + cfg.offset_s:g} s "
            f"({n_seg + n_off} samples), clip {clip.source_path or '<memory>'} "
            f"has {n / clip.sample_rate:g} s ({n} samples)"
        )
    start = n_off if cfg.anchor == "start" else n - n_off - n_seg
    return AudioClip(
        samples=clip.samples[start : start + n_seg],
        sample_rate=clip.sample_rate,
        source_path=clip.source_path,
    )


def _parse_fmt(path: str, body: bytes) -> tuple[int, int, int, int, int]:
    if len(body) < 16:
        raise WavError(f"{path}: fmt chunk too short ({len(body)} bytes, need 16)")
    code, channels, sample_rate, _byte_rate, block_align, bits = struct.unpack(
        "<HHIIHH", body[:16]
    )
    if code not in (WAVE_FORMAT_PCM, WAVE_FORMAT_IEEE_FLOAT):
        raise WavError(
            f"{path}: unsupported format code {code} (only PCM=1 and IEEE float=3)"
        )
    if channels not in (1, 2):
        raise WavError(f"{path}: unsupported channel count {channels} (only 1 or 2)")
    if sample_rate <= 0:
        raise WavError(f"{path}: bad sample rate {sample_rate}")
    if code == WAVE_FORMAT_PCM and bits not in (8, 16, 24):
        raise WavError(f"{path}: unsupported PCM bit depth {bits} (only 8/16/24)")
    if code == WAVE_FORMAT_IEEE_FLOAT and bits != 32:
        raise WavError(f"{path}: unsupported float bit depth {bits} (only 32)")
    expected_align = channels * (bits // 8)
    if block_align != expected_align:
        raise WavError(
            f"{path}: block align {block_align} inconsistent with "
            f"{channels} channel(s) at {bits} bits (expected {expected_align})"
        )
    return code, channels, sample_rate, block_align, bits


def _payload_to_float(path: str, payload: bytes, code: int, bits: int) -> np.ndarray:
    bytes_per = bits // 8
    if len(payload) % bytes_per:
        raise WavError(
            f"{path}: data payload of {len(payload)} bytes is not a whole "
            f"number of {bytes_per}-byte samples"
        )
    if code == WAVE_FORMAT_IEEE_FLOAT:
        x = np.frombuffer(payload, dtype="<f4").astype(np.float64)
        # Float payloads may legally overshoot; clamp so downstream holds [-1, 1].
        return np.clip(x, -1.0, 1.0)
    if bits == 8:
        # 8-bit WAV is unsigned with a 128 offset.
        x = np.frombuffer(payload, dtype=np.uint8).astype(np.float64)
        return (x - 128.0) / 128.0
    if bits == 16:
        x = np.frombuffer(payload, dtype="<i2").astype(np.float64)
        return x / 32768.0
    # 24-bit: assemble little-endian triplets, then sign-extend.
    raw = np.frombuffer(payload, dtype=np.uint8).astype(np.int64)
    u = raw[0::3] | (raw[1::3] << 8) | (raw[2::3] << 16)
    signed = (u ^ 0x800000) - 0x800000
    return signed.astype(np.float64) / 8388608.0


def decode_wav(path) -> AudioClip:
    """Decode a RIFF/WAVE file into a mono AudioClip.

    Stereo input is downmixed by the per-frame arithmetic mean. Integer
    samples are rescaled by the type's maximum magnitude (1/32768 for
    16-bit, 1/8388608 for 24-bit, offset-then-1/128 for 8-bit). Unknown
    chunks are skipped, not errors.
    """
    path = str(path)
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise WavError(f"cannot read {path}: {exc}") from None

    if len(data) < 12:
        raise WavError(f"{path}: too short for a RIFF header ({len(data)} bytes)")
    riff, _size, wave_id = struct.unpack("<4sI4s", data[:12])
    if riff != b"RIFF":
        raise WavError(f"{path}: container id {riff!r} is not b'RIFF'")
    if wave_id != b"WAVE":
        raise WavError(f"{path}: form type {wave_id!r} is not b'WAVE'")

    fmt = None
    payload = None
    pos = 12
    while pos + 8 <= len(data):
        chunk_id, chunk_size = struct.unpack("<4sI", data[pos : pos + 8])
        body = data[pos + 8 : pos + 8 + chunk_size]
        if len(body) < chunk_size:
            raise WavError(
                f"{path}: chunk {chunk_id!r} truncated "
                f"({len(body)} of {chunk_size} bytes)"
            )
        if chunk_id == b"fmt ":
            fmt = _parse_fmt(path, body)
        elif chunk_id == b"data":
            payload = body
        pos += 8 + chunk_size + (chunk_size & 1)  # chunks are word-aligned

    if fmt is None:
        raise WavError(f"{path}: missing fmt chunk")
    if payload is None:
        raise WavError(f"{path}: missing data chunk")
    if len(payload) == 0:
        raise WavError(f"{path}: zero-length data payload")

    code, channels, sample_rate, _align, bits = fmt
    samples = _payload_to_float(path, payload, code, bits)
    if channels == 2:
        if samples.size % 2:
            raise WavError(f"{path}: stereo payload with an odd sample count")
        samples = samples.reshape(-1, 2).mean(axis=1)
    return AudioClip(samples=samples, sample_rate=sample_rate, source_path=path)
