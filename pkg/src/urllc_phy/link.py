"""Single mini-slot transmit/receive composition.

Two paths exist on purpose.  BLER sweeps use the frequency-domain path
(:func:`simulate_trial`): block fading within a mini-slot makes the per-RE
multiply equivalent to time-domain convolution, and skipping the transforms
keeps Monte-Carlo runs fast.  The latency profiler and the two-process mode
use the full time-domain path via :func:`tx_time_samples` /
:func:`rx_time_samples`.
"""

from dataclasses import dataclass

import numpy as np

from .channel import ChannelModel, SnrSpec, apply_channel, draw_channel
from .coding import DecodeOutcome, tb_decode, tb_encode
from .grid import GridMap, build_minislot_map, map_grid
from .modem import ofdm_demodulate, ofdm_modulate, qpsk_modulate
from .numerology import OfdmConfig, tbs_lookup
from .receiver import demod_metrics, estimate_channel
from .sequences import ScramblingConfig, descramble_llrs, scramble

__all__ = [
    "MIN_NOISE_VAR",
    "LinkConfig",
    "TrialResult",
    "simulate_trial",
    "tx_time_samples",
    "rx_time_samples",
    "minislot_sample_count",
    "tx_unit_sample_count",
]

# Noiseless runs still need a finite LLR scale.
MIN_NOISE_VAR = 1.0e-12


@dataclass(frozen=True)
class LinkConfig:
    ofdm: OfdmConfig = OfdmConfig()
    rnti: int = 1
    cell_id: int = 0
    estimator: str = "3step"  # "3step" or "genie"

    def __post_init__(self):
        if self.estimator not in ("3step", "genie"):
            raise ValueError(f"estimator must be '3step' or 'genie', got {self.estimator!r}")

    def grid_map(self) -> GridMap:
        return build_minislot_map(self.ofdm.n_rb)

    def scrambling(self, slot: int) -> ScramblingConfig:
        return ScramblingConfig(rnti=self.rnti, cell_id=self.cell_id, slot=slot)


@dataclass
class TrialResult:
    outcome: DecodeOutcome
    payload: np.ndarray
    block_error: bool


def simulate_trial(
    mcs: int,
    snr: SnrSpec,
    model: ChannelModel,
    n_rx: int,
    rng: np.random.Generator,
    link: LinkConfig,
    gmap: GridMap,
    slot: int = 0,
) -> TrialResult:
    """One independent mini-slot: fresh payload, channel and noise."""
    scfg = link.scrambling(slot)
    payload = rng.integers(0, 2, size=tbs_lookup(mcs), dtype=np.uint8)
    coded = tb_encode(payload, mcs, gmap.pdsch_capacity_bits)
    syms = qpsk_modulate(scramble(coded, scfg))
    grid = map_grid(syms, gmap, slot=slot, cell_id=link.cell_id)

    ch = draw_channel(model, n_rx, rng, cfg=link.ofdm)
    rx = apply_channel(grid, ch, snr, rng)

    est = ch.h if link.estimator == "genie" else estimate_channel(
        rx, gmap, slot=slot, cell_id=link.cell_id
    )
    noise_var = max(ch.noise_var, MIN_NOISE_VAR)
    llrs = descramble_llrs(demod_metrics(rx, est, gmap, noise_var), scfg)
    outcome = tb_decode(llrs, mcs)
    # A block error is a failed CRC; the CRC's false-accept rate is its own.
    return TrialResult(outcome=outcome, payload=payload, block_error=not outcome.crc_ok)


def minislot_sample_count(cfg: OfdmConfig) -> int:
    return sum(cfg.symbol_len(s) for s in range(4))


def tx_unit_sample_count(cfg: OfdmConfig) -> int:
    """Samples in the 14-symbol transmission unit (two 7-symbol slots)."""
    slot = cfg.cp_first + 6 * cfg.cp_other + 7 * cfg.fft_size
    return 2 * slot


def tx_time_samples(grid: np.ndarray, cfg: OfdmConfig) -> np.ndarray:
    """OFDM-modulate the 4 data symbols into one contiguous sample block."""
    return np.concatenate([ofdm_modulate(grid[s], cfg, s) for s in range(4)])


def rx_time_samples(samples: np.ndarray, cfg: OfdmConfig) -> np.ndarray:
    """Inverse of :func:`tx_time_samples`; extra trailing samples are ignored."""
    samples = np.asarray(samples, dtype=np.complex128)
    need = minislot_sample_count(cfg)
    if samples.size < need:
        raise ValueError(f"need {need} samples for 4 symbols, got {samples.size}")
    grid = np.empty((4, cfg.occupied_subcarriers), dtype=np.complex128)
    pos = 0
    for s in range(4):
        n = cfg.symbol_len(s)
        grid[s] = ofdm_demodulate(samples[pos:pos + n], cfg, s)
        pos += n
    return grid
