"""Pilot-based channel estimation and matched-filter metric generation.

Estimation runs in three steps: least-squares at the RS positions, linear
interpolation across frequency within Symb0 and Symb3 (linear extrapolation
past the outermost pilots), then linear interpolation across time for Symb1
and Symb2.  Metrics combine antennas by maximal-ratio weighting, which is
also the single-antenna matched filter.
"""

import numpy as np

from .grid import GridMap, rs_sequence
from .modem import qpsk_llr

__all__ = [
    "ls_estimate",
    "interpolate_freq",
    "interpolate_time",
    "estimate_channel",
    "demod_metrics",
]


def ls_estimate(rx_rs: np.ndarray, known_rs: np.ndarray) -> np.ndarray:
    """Per-pilot estimate y/x."""
    rx_rs = np.asarray(rx_rs, dtype=np.complex128)
    known_rs = np.asarray(known_rs, dtype=np.complex128)
    if rx_rs.shape != known_rs.shape:
        raise ValueError(f"pilot shapes differ: {rx_rs.shape} vs {known_rs.shape}")
    if np.any(known_rs == 0):
        raise ValueError("known pilots must be nonzero")
    return rx_rs / known_rs


def interpolate_freq(
    pilot_estimates: np.ndarray,
    pilot_positions: np.ndarray,
    n_sc: int,
) -> np.ndarray:
    """Linear interpolation between pilots, linear extrapolation at the edges."""
    est = np.asarray(pilot_estimates, dtype=np.complex128)
    pos = np.asarray(pilot_positions, dtype=np.int64)
    if est.size != pos.size:
        raise ValueError("one estimate per pilot position required")
    if est.size < 2:
        raise ValueError("frequency interpolation needs at least 2 pilots")
    if np.any(np.diff(pos) <= 0):
        raise ValueError("pilot positions must be strictly increasing")
    k = np.arange(n_sc)
    # segment per subcarrier, clamped so the edge segments extrapolate
    seg = np.clip(np.searchsorted(pos, k, side="right") - 1, 0, pos.size - 2)
    w = (k - pos[seg]) / (pos[seg + 1] - pos[seg])
    return est[seg] * (1.0 - w) + est[seg + 1] * w


def interpolate_time(h_symb0: np.ndarray, h_symb3: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Estimates for Symb1/Symb2, linear in the symbol index."""
    h0 = np.asarray(h_symb0, dtype=np.complex128)
    h3 = np.asarray(h_symb3, dtype=np.complex128)
    if h0.shape != h3.shape:
        raise ValueError(f"symbol estimates differ in shape: {h0.shape} vs {h3.shape}")
    return (2.0 * h0 + h3) / 3.0, (h0 + 2.0 * h3) / 3.0


def estimate_channel(
    rx_grids: np.ndarray,
    gmap: GridMap,
    slot: int = 0,
    cell_id: int = 0,
) -> np.ndarray:
    """Full 3-step estimate, shape (n_rx, 4, n_sc), from the received grids."""
    rx_grids = np.asarray(rx_grids, dtype=np.complex128)
    n_rx = rx_grids.shape[0]
    n_sc = gmap.n_subcarriers
    est = np.empty((n_rx, 4, n_sc), dtype=np.complex128)
    for a in range(n_rx):
        per_symbol = {}
        for symbol in (0, 3):
            sc = gmap.rs_subcarriers(symbol)
            pilots = rs_sequence(slot, symbol, cell_id, sc.size)
            h_p = ls_estimate(rx_grids[a, symbol, sc], pilots)
            per_symbol[symbol] = interpolate_freq(h_p, sc, n_sc)
        h1, h2 = interpolate_time(per_symbol[0], per_symbol[3])
        est[a, 0] = per_symbol[0]
        est[a, 1] = h1
        est[a, 2] = h2
        est[a, 3] = per_symbol[3]
    return est


def demod_metrics(
    rx_grids: np.ndarray,
    est: np.ndarray,
    gmap: GridMap,
    noise_var: float,
) -> np.ndarray:
    """Maximal-ratio combining over antennas, then QPSK LLRs in demap order.

    Output is the interleaved (b0, b1) stream of length E = 2 * #PDSCH.
    """
    rx_grids = np.asarray(rx_grids, dtype=np.complex128)
    est = np.asarray(est, dtype=np.complex128)
    if rx_grids.shape != est.shape:
        raise ValueError(f"grids {rx_grids.shape} and estimates {est.shape} must align")
    if noise_var <= 0:
        raise ValueError(f"noise variance must be positive, got {noise_var}")
    sym_idx, sc_idx = gmap.pdsch_idx
    y = rx_grids[:, sym_idx, sc_idx]
    h = est[:, sym_idx, sc_idx]
    z = (np.conj(h) * y).sum(axis=0)
    gain_sq = (np.abs(h) ** 2).sum(axis=0)
    llr0, llr1 = qpsk_llr(z, gain_sq, noise_var)
    out = np.empty(2 * z.size, dtype=np.float64)
    out[0::2] = llr0
    out[1::2] = llr1
    return out
