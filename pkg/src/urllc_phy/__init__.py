"""URLLC downlink physical layer: mini-slot link-level simulator, BLER and
latency measurement harness, and a two-process eNB/UE emulator.

The transmit chain is CRC + lifted base-graph-2 LDPC + circular-buffer rate
matching + scrambling + QPSK + OFDM over a 4-symbol mini-slot; the receive
chain runs 3-step pilot channel estimation, maximal-ratio combining, soft
demapping and normalized min-sum decoding.
"""

from .channel import ChannelModel, ChannelRealization, SnrSpec, apply_channel, draw_channel
from .coding import (
    CodewordLlr,
    DecodeOutcome,
    LdpcParams,
    crc16_attach,
    crc16_check,
    de_rate_match,
    ldpc_decode_minsum,
    ldpc_encode,
    ldpc_params_select,
    rate_match,
    tb_decode,
    tb_encode,
)
from .grid import GridMap, build_minislot_map, demap_pdsch, map_grid, pcfich_regs, rs_sequence
from .harness import BlerResult, LatencyReport, emit_csv, run_bler, run_latency, wilson_interval
from .link import LinkConfig, simulate_trial
from .modem import ofdm_demodulate, ofdm_modulate, qpsk_llr, qpsk_modulate
from .numerology import (
    MCS_TABLE,
    McsEntry,
    MiniSlotConfig,
    OfdmConfig,
    Platform,
    n_info,
    tbs_lookup,
)
from .receiver import demod_metrics, estimate_channel, interpolate_freq, interpolate_time, ls_estimate
from .sequences import ScramblingConfig, gold_sequence, scramble

__version__ = "0.1.0"
