"""QPSK mapping / soft demapping and OFDM (de)modulation.

Transforms are unitary (``norm="ortho"``), so per-RE signal and noise powers
are the same in the frequency and time domains and one Es/N0 definition
serves both.  Subcarriers sit symmetrically around an unused DC bin.
"""

import numpy as np

from .numerology import OfdmConfig

__all__ = [
    "qpsk_modulate",
    "qpsk_llr",
    "subcarrier_bins",
    "ofdm_modulate",
    "ofdm_demodulate",
]

_SQRT2 = np.sqrt(2.0)


def qpsk_modulate(bits: np.ndarray) -> np.ndarray:
    """Map bit pairs (b0, b1) to ((1-2*b0) + 1j*(1-2*b1)) / sqrt(2)."""
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.size % 2:
        raise ValueError(f"QPSK needs an even number of bits, got {bits.size}")
    b = bits.reshape(-1, 2).astype(np.float64)
    return ((1.0 - 2.0 * b[:, 0]) + 1j * (1.0 - 2.0 * b[:, 1])) / _SQRT2


def qpsk_llr(y, channel_gain_sq, noise_var: float):
    """Per-bit LLRs (positive means bit 0) from matched-filter observations.

    ``y`` is the combined observation sum_a conj(h_a) * y_a.  The max-log LLR
    of a unit-energy QPSK symbol is 2*sqrt(2)*Re/Im(y) / noise_var; the
    combined gain (``channel_gain_sq``) cancels out of it, but stays in the
    signature for callers that track per-RE effective gain.
    """
    if noise_var <= 0:
        raise ValueError(f"noise variance must be positive, got {noise_var}")
    y = np.asarray(y, dtype=np.complex128)
    scale = 2.0 * _SQRT2 / noise_var
    return scale * y.real, scale * y.imag


def subcarrier_bins(cfg: OfdmConfig) -> np.ndarray:
    """FFT bin index for each occupied subcarrier, DC bin skipped.

    Subcarrier k counts upward in frequency: the lower half of the band maps
    to negative bins, the upper half to positive bins starting at +1.
    """
    n = cfg.occupied_subcarriers
    half = n // 2
    k = np.arange(n)
    return np.where(k < half, cfg.fft_size - half + k, k - half + 1)


def ofdm_modulate(grid_symbol: np.ndarray, cfg: OfdmConfig, symbol_index: int) -> np.ndarray:
    """One OFDM symbol: subcarrier mapping, unitary IFFT, cyclic prefix."""
    grid_symbol = np.asarray(grid_symbol, dtype=np.complex128)
    if grid_symbol.size != cfg.occupied_subcarriers:
        raise ValueError(
            f"expected {cfg.occupied_subcarriers} subcarrier values, got {grid_symbol.size}"
        )
    spectrum = np.zeros(cfg.fft_size, dtype=np.complex128)
    spectrum[subcarrier_bins(cfg)] = grid_symbol
    body = np.fft.ifft(spectrum, norm="ortho")
    cp = cfg.cp_len(symbol_index)
    return np.concatenate([body[-cp:], body])


def ofdm_demodulate(samples: np.ndarray, cfg: OfdmConfig, symbol_index: int) -> np.ndarray:
    """Inverse of :func:`ofdm_modulate`: strip CP, unitary FFT, extract bins."""
    samples = np.asarray(samples, dtype=np.complex128)
    expected = cfg.symbol_len(symbol_index)
    if samples.size != expected:
        raise ValueError(f"expected {expected} samples for symbol {symbol_index}, got {samples.size}")
    body = samples[cfg.cp_len(symbol_index):]
    spectrum = np.fft.fft(body, norm="ortho")
    return spectrum[subcarrier_bins(cfg)]
