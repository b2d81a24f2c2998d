"""AWGN and block-fading Rayleigh channels applied per resource element.

Within one 4-symbol mini-slot the fading is constant, so the frequency-domain
per-RE multiply is equivalent to time-domain convolution and much cheaper.
Es/N0 is defined per receive antenna per occupied RE against the unit-energy
constellation.
"""

import math
from dataclasses import dataclass

import numpy as np

from .modem import subcarrier_bins
from .numerology import OfdmConfig

__all__ = ["SnrSpec", "ChannelModel", "ChannelRealization", "draw_channel", "apply_channel"]


@dataclass(frozen=True)
class SnrSpec:
    """Es/N0 in dB per receive antenna per RE; ``inf`` means noiseless."""

    es_n0_db: float

    def __post_init__(self):
        if math.isnan(self.es_n0_db):
            raise ValueError("Es/N0 must not be NaN")

    @property
    def noise_var(self) -> float:
        if math.isinf(self.es_n0_db):
            return 0.0
        return 10.0 ** (-self.es_n0_db / 10.0)


@dataclass(frozen=True)
class ChannelModel:
    """``awgn``, ``rayleigh-flat`` or ``rayleigh-fs`` with ``taps`` taps."""

    kind: str
    taps: int = 1

    _KINDS = ("awgn", "rayleigh-flat", "rayleigh-fs")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown channel model {self.kind!r}; pick one of {self._KINDS}")
        if self.kind == "rayleigh-fs" and self.taps < 1:
            raise ValueError(f"frequency-selective model needs >= 1 tap, got {self.taps}")

    @classmethod
    def parse(cls, text: str) -> "ChannelModel":
        if text.startswith("rayleigh-fs:"):
            return cls("rayleigh-fs", taps=int(text.split(":", 1)[1]))
        return cls(text)

    def __str__(self):
        if self.kind == "rayleigh-fs":
            return f"rayleigh-fs:{self.taps}"
        return self.kind


@dataclass
class ChannelRealization:
    """Frequency response per antenna/symbol/subcarrier plus genie noise power."""

    h: np.ndarray            # complex (n_rx, n_symbols, n_subcarriers)
    noise_var: float = 0.0

    @property
    def n_rx(self) -> int:
        return self.h.shape[0]


def _selective_response(taps: int, cfg: OfdmConfig, rng: np.random.Generator) -> np.ndarray:
    """Per-subcarrier response of sample-spaced taps with exponential decay."""
    power = np.exp(-np.arange(taps, dtype=np.float64))
    power /= power.sum()
    gains = np.sqrt(power / 2.0) * (
        rng.standard_normal(taps) + 1j * rng.standard_normal(taps)
    )
    bins = subcarrier_bins(cfg)
    freq = np.where(bins > cfg.fft_size // 2, bins - cfg.fft_size, bins)
    phase = np.exp(-2j * np.pi * np.outer(freq, np.arange(taps)) / cfg.fft_size)
    return phase @ gains


def draw_channel(
    model: ChannelModel,
    n_rx: int,
    rng: np.random.Generator,
    cfg: OfdmConfig | None = None,
    n_symbols: int = 4,
) -> ChannelRealization:
    """Draw one mini-slot realization: H constant over the slot per antenna."""
    if n_rx not in (1, 2):
        raise ValueError(f"n_rx must be 1 or 2, got {n_rx}")
    cfg = cfg or OfdmConfig()
    n_sc = cfg.occupied_subcarriers
    h = np.empty((n_rx, n_symbols, n_sc), dtype=np.complex128)
    for a in range(n_rx):
        if model.kind == "awgn":
            h[a] = 1.0
        elif model.kind == "rayleigh-flat":
            g = (rng.standard_normal() + 1j * rng.standard_normal()) / np.sqrt(2.0)
            h[a] = g
        else:
            h[a] = _selective_response(model.taps, cfg, rng)[None, :]
    return ChannelRealization(h=h)


def apply_channel(
    grid: np.ndarray,
    ch: ChannelRealization,
    snr: SnrSpec,
    rng: np.random.Generator,
) -> np.ndarray:
    """Y[a] = H[a] * X + N[a]; noise i.i.d. across antennas and REs."""
    grid = np.asarray(grid, dtype=np.complex128)
    if ch.h.shape[1:] != grid.shape:
        raise ValueError(f"channel shape {ch.h.shape} does not match grid {grid.shape}")
    sigma2 = snr.noise_var
    ch.noise_var = sigma2
    rx = ch.h * grid[None, :, :]
    if sigma2 > 0.0:
        noise = rng.standard_normal(ch.h.shape) + 1j * rng.standard_normal(ch.h.shape)
        rx = rx + np.sqrt(sigma2 / 2.0) * noise
    return rx
