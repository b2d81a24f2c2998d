"""Monte-Carlo BLER sweeps and the latency profiler.

Sweeps run trials on a small worker pool (two workers own the odd and even
trial indices, mirroring the dual-thread slot pipeline).  Each worker draws
from its own RNG stream seeded ``base_seed XOR worker_index`` and rounds are
aggregated in (round, worker) order, so a (seed, workers) pair reproduces
results bit-exactly no matter how threads are scheduled.

Latency is accounted on one monotonic clock: boundaries telescope, so
``t_proc_enb + t_tx + t_proc_ue`` equals ``t_end - t_start`` exactly.
"""

import multiprocessing
import socket
import time
from dataclasses import dataclass, field

import numpy as np

from .channel import ChannelModel, SnrSpec
from .coding import tb_decode
from .coding.crc import crc16_attach
from .coding.encoder import ldpc_encode
from .coding.rate_match import rate_match
from .coding.transport import params_for_mcs
from .framing import FRAME_KIND_IQ, IqFrame, decode_frame, encode_frame
from .grid import map_grid
from .link import (
    MIN_NOISE_VAR,
    LinkConfig,
    minislot_sample_count,
    rx_time_samples,
    simulate_trial,
    tx_time_samples,
    tx_unit_sample_count,
)
from .modem import qpsk_modulate
from .numerology import MiniSlotConfig, Platform, tbs_lookup
from .receiver import demod_metrics, estimate_channel
from .sequences import descramble_llrs, scramble

__all__ = [
    "BlerResult",
    "LatencyReport",
    "wilson_interval",
    "run_bler",
    "run_latency",
    "emit_csv",
    "emit_bler_csv",
    "emit_latency_csv",
    "median_stage_ns",
]

_WILSON_Z = 1.959963984540054  # 95% two-sided


def wilson_interval(errors: int, n: int) -> tuple[float, float]:
    """Wilson score interval for an error proportion; robust at low counts."""
    if n <= 0:
        raise ValueError("interval needs at least one trial")
    z2 = _WILSON_Z**2
    p = errors / n
    denom = 1.0 + z2 / n
    center = (p + z2 / (2 * n)) / denom
    half = _WILSON_Z * np.sqrt(p * (1.0 - p) / n + z2 / (4 * n * n)) / denom
    lo = 0.0 if errors == 0 else max(0.0, center - half)
    hi = 1.0 if errors == n else min(1.0, center + half)
    return lo, hi


@dataclass
class BlerResult:
    mcs: int
    snr_db: float
    blocks: int
    block_errors: int
    bler: float
    avg_iterations: float
    ci95: tuple[float, float]
    seed: int


def _worker_trials(args):
    """One worker round; returns the advanced RNG so streams persist."""
    (mcs, snr, model, n_rx, link, rng, count) = args
    gmap = link.grid_map()
    errors = 0
    iters = 0
    for _ in range(count):
        res = simulate_trial(mcs, snr, model, n_rx, rng, link, gmap)
        errors += res.block_error
        iters += res.outcome.iterations_used
    return errors, iters, rng


def _make_pool(workers: int):
    if workers < 2:
        return None
    try:
        return multiprocessing.get_context("fork").Pool(workers)
    except (ValueError, OSError):
        return None  # fall back to the inline path; results are identical


def run_bler(
    mcs: int,
    snr_points_db,
    model: ChannelModel = ChannelModel("awgn"),
    n_rx: int = 1,
    min_errors: int = 100,
    max_blocks: int = 10**6,
    seed: int = 0,
    workers: int = 2,
    link: LinkConfig = LinkConfig(),
) -> list[BlerResult]:
    """Sweep SNR points until ``min_errors`` block errors or ``max_blocks``.

    Results depend only on (seed, workers): worker streams round-trip through
    the pool, and the same trial sequence runs inline if no pool exists.
    """
    snr_points_db = list(snr_points_db)
    if not snr_points_db:
        raise ValueError("at least one SNR point is required")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    chunk = max(1, min(500, min_errors))
    # warm the JIT kernels before forking so children inherit compiled state
    _worker_trials((mcs, SnrSpec(float(snr_points_db[0])), model, n_rx, link,
                    np.random.default_rng(0), 1))
    pool = _make_pool(workers)
    results = []
    try:
        for snr_db in snr_points_db:
            snr = SnrSpec(float(snr_db))
            rngs = [np.random.default_rng(seed ^ w) for w in range(workers)]
            blocks = errors = iter_sum = 0
            while errors < min_errors and blocks < max_blocks:
                start = blocks
                end = min(blocks + chunk * workers, max_blocks)
                # worker w owns global trial indices congruent to w (mod workers)
                counts = [len(range(start + w, end, workers)) for w in range(workers)]
                tasks = [
                    (mcs, snr, model, n_rx, link, rngs[w], counts[w])
                    for w in range(workers)
                    if counts[w]
                ]
                outs = pool.map(_worker_trials, tasks) if pool else map(_worker_trials, tasks)
                for w, (err, its, rng) in zip(
                    [i for i in range(workers) if counts[i]], outs
                ):
                    errors += err
                    iter_sum += its
                    rngs[w] = rng
                blocks = end
            results.append(
                BlerResult(
                    mcs=mcs,
                    snr_db=float(snr_db),
                    blocks=blocks,
                    block_errors=errors,
                    bler=errors / blocks,
                    avg_iterations=iter_sum / blocks,
                    ci95=wilson_interval(errors, blocks),
                    seed=seed,
                )
            )
    finally:
        if pool:
            pool.close()
            pool.join()
    return results


@dataclass
class LatencyReport:
    """Eq.-style decomposition of one mini-slot, all values in nanoseconds."""

    mcs: int
    run: int
    t_start_ns: int
    t_end_ns: int
    t_proc_enb_ns: int
    t_tx_ns: int
    t_proc_ue_ns: int
    crc_ok: bool
    stages: dict[str, int] = field(default_factory=dict)

    @property
    def t_sum_ns(self) -> int:
        return self.t_end_ns - self.t_start_ns


class _SocketPipe:
    """Localhost datagram hop used by the socket latency mode."""

    def __init__(self):
        self.rx = socket.socket(socket.AF_INET, socket.SOCK_DGRAM)
        self.rx.bind(("127.0.0.1", 0))
        self.rx.settimeout(5.0)
        self.tx = socket.socket(socket.AF_INET, socket.SOCK_DGRAM)
        self.addr = self.rx.getsockname()

    def transfer(self, payload: bytes) -> bytes:
        self.tx.sendto(payload, self.addr)
        data, _ = self.rx.recvfrom(1 << 16)
        return data

    def close(self):
        self.tx.close()
        self.rx.close()


def run_latency(
    mcs: int,
    runs: int,
    mode: str = "inproc",
    minislot: MiniSlotConfig = MiniSlotConfig(),
    link: LinkConfig = LinkConfig(),
    seed: int = 0,
) -> list[LatencyReport]:
    """Profile noiseless mini-slots end to end on one monotonic clock."""
    if runs < 1:
        raise ValueError(f"runs must be >= 1, got {runs}")
    if mode not in ("inproc", "socket"):
        raise ValueError(f"mode must be 'inproc' or 'socket', got {mode!r}")
    cfg = link.ofdm
    gmap = link.grid_map()
    scfg = link.scrambling(slot=0)
    params = params_for_mcs(mcs)
    e = gmap.pdsch_capacity_bits
    rng = np.random.default_rng(seed)
    pipe = _SocketPipe() if mode == "socket" else None

    air = minislot.platform is Platform.AIR_EMULATION
    pad = tx_unit_sample_count(cfg) - minislot_sample_count(cfg) if air else 0

    reports = []
    try:
        for run in range(-1, runs):  # run -1 is an untimed JIT/cache warmup
            payload = rng.integers(0, 2, size=tbs_lookup(mcs), dtype=np.uint8)
            stages = {}
            clk = time.monotonic_ns
            t_start = clk()

            msg = np.zeros(params.k, dtype=np.uint8)
            msg[:params.b] = crc16_attach(payload)
            codeword = ldpc_encode(msg, params)
            t = clk(); stages["encode"] = t - t_start; prev = t

            coded = rate_match(codeword, e, params)
            t = clk(); stages["rate_match"] = t - prev; prev = t

            syms = qpsk_modulate(scramble(coded, scfg))
            grid = map_grid(syms, gmap, slot=0, cell_id=link.cell_id)
            t = clk(); stages["modulate"] = t - prev; prev = t

            samples = tx_time_samples(grid, cfg)
            if pad:
                samples = np.concatenate([samples, np.zeros(pad, dtype=samples.dtype)])
            t_enb_end = clk(); stages["ofdm"] = t_enb_end - prev

            if pipe is None:
                wire = samples
                t_ue_start = clk()
            else:
                frame = IqFrame(
                    kind=FRAME_KIND_IQ, seq=max(run, 0), slot=max(run, 0),
                    timestamp_ns=t_enb_end, samples=samples,
                )
                wire = decode_frame(pipe.transfer(encode_frame(frame))).samples
                t_ue_start = clk()
            prev = t_ue_start

            rx_grid = rx_time_samples(wire, cfg)[None, :, :]
            t = clk(); stages["demodulate"] = t - prev; prev = t

            est = estimate_channel(rx_grid, gmap, slot=0, cell_id=link.cell_id)
            t = clk(); stages["estimate"] = t - prev; prev = t

            llrs = descramble_llrs(demod_metrics(rx_grid, est, gmap, MIN_NOISE_VAR), scfg)
            t = clk(); stages["metrics"] = t - prev; prev = t

            outcome = tb_decode(llrs, mcs)
            t_end = clk(); stages["decode"] = t_end - prev

            if run < 0:
                continue
            reports.append(
                LatencyReport(
                    mcs=mcs,
                    run=run,
                    t_start_ns=t_start,
                    t_end_ns=t_end,
                    t_proc_enb_ns=t_enb_end - t_start,
                    t_tx_ns=t_ue_start - t_enb_end,
                    t_proc_ue_ns=t_end - t_ue_start,
                    crc_ok=outcome.crc_ok,
                    stages=stages,
                )
            )
    finally:
        if pipe is not None:
            pipe.close()
    return reports


def median_stage_ns(reports: list[LatencyReport], stage: str) -> float:
    """Median of one stage over successfully decoded runs."""
    vals = [r.stages[stage] for r in reports if r.crc_ok]
    if not vals:
        raise ValueError("no successfully decoded runs to summarize")
    return float(np.median(vals))


def _fmt(x) -> str:
    return repr(float(x)) if isinstance(x, float) else str(x)


BLER_CSV_HEADER = "mcs,snr_db,blocks,block_errors,bler,avg_iterations,ci95_low,ci95_high,seed"
LATENCY_CSV_HEADER = "mcs,run,t_proc_enb_ns,t_tx_ns,t_proc_ue_ns,t_sum_ns"


def emit_bler_csv(results: list[BlerResult]) -> str:
    rows = [BLER_CSV_HEADER]
    for r in results:
        rows.append(
            ",".join(
                [
                    str(r.mcs),
                    _fmt(r.snr_db),
                    str(r.blocks),
                    str(r.block_errors),
                    _fmt(r.bler),
                    _fmt(r.avg_iterations),
                    _fmt(r.ci95[0]),
                    _fmt(r.ci95[1]),
                    str(r.seed),
                ]
            )
        )
    return "\n".join(rows) + "\n"


def emit_latency_csv(reports: list[LatencyReport]) -> str:
    rows = [LATENCY_CSV_HEADER]
    for r in reports:
        rows.append(
            ",".join(
                [
                    str(r.mcs),
                    str(r.run),
                    str(r.t_proc_enb_ns),
                    str(r.t_tx_ns),
                    str(r.t_proc_ue_ns),
                    str(r.t_sum_ns),
                ]
            )
        )
    return "\n".join(rows) + "\n"


def emit_csv(results) -> str:
    """CSV text for a list of BlerResult or LatencyReport (header always)."""
    if results and isinstance(results[0], LatencyReport):
        return emit_latency_csv(results)
    if results and isinstance(results[0], BlerResult):
        return emit_bler_csv(results)
    if not results:
        return BLER_CSV_HEADER + "\n"
    raise TypeError(f"cannot emit CSV for {type(results[0]).__name__}")
