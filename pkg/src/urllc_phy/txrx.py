"""Two-process eNB/UE mode over localhost datagram sockets (or in-memory
loopback).

Control information travels as an explicit CONTROL frame ahead of each IQ
frame, replacing a shared-memory shortcut with a sideband message.  The UE
processes only the first four symbols of each transmission unit and discards
the idle tail.  Latency accounting at the UE uses the IQ frame timestamp as
``t_start``; both ends must share a host clock for that to mean anything
(eNB-side processing time is not observable here, so ``t_proc_enb`` is
reported as zero in this mode).
"""

import socket
import time
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .channel import SnrSpec
from .coding import tb_decode, tb_encode
from .framing import (
    FRAME_KIND_CONTROL,
    FRAME_KIND_END,
    FRAME_KIND_IQ,
    ControlSideband,
    FrameError,
    IqFrame,
    decode_frame,
    encode_frame,
)
from .grid import map_grid
from .harness import LatencyReport
from .link import (
    MIN_NOISE_VAR,
    LinkConfig,
    minislot_sample_count,
    rx_time_samples,
    tx_time_samples,
    tx_unit_sample_count,
)
from .modem import qpsk_modulate
from .numerology import tbs_lookup
from .receiver import demod_metrics, estimate_channel
from .sequences import ScramblingConfig, descramble_llrs, scramble

__all__ = [
    "LoopbackTransport",
    "UdpTransport",
    "EnbSummary",
    "UeSummary",
    "run_enb",
    "run_ue",
    "precise_sleep_ns",
    "parse_endpoint",
]


def parse_endpoint(text: str) -> tuple[str, int]:
    host, _, port = text.rpartition(":")
    if not host or not port.isdigit():
        raise ValueError(f"endpoint must be addr:port, got {text!r}")
    return host, int(port)


def precise_sleep_ns(delay_ns: int) -> None:
    """Sleep with sub-0.1 ms accuracy: coarse sleep, then spin."""
    end = time.monotonic_ns() + delay_ns
    while True:
        remaining = end - time.monotonic_ns()
        if remaining <= 0:
            return
        if remaining > 2_000_000:
            time.sleep((remaining - 1_000_000) / 1e9)


class LoopbackTransport:
    """In-memory datagram queue; one sender end, one receiver end."""

    def __init__(self):
        self._queue: deque[bytes] = deque()

    def send(self, data: bytes) -> None:
        self._queue.append(bytes(data))

    def recv(self, timeout: float | None = None) -> bytes:
        if not self._queue:
            raise TimeoutError("loopback queue is empty")
        return self._queue.popleft()

    def close(self) -> None:
        self._queue.clear()


class UdpTransport:
    """Datagram socket wrapper; UE side binds, eNB side targets a peer."""

    def __init__(self, bind: tuple[str, int] | None = None, peer: tuple[str, int] | None = None):
        self.sock = socket.socket(socket.AF_INET, socket.SOCK_DGRAM)
        if bind is not None:
            self.sock.setsockopt(socket.SOL_SOCKET, socket.SO_RCVBUF, 8 << 20)
            self.sock.bind(bind)
        self.peer = peer

    @property
    def address(self) -> tuple[str, int]:
        return self.sock.getsockname()

    def send(self, data: bytes) -> None:
        self.sock.sendto(data, self.peer)

    def recv(self, timeout: float | None = None) -> bytes:
        self.sock.settimeout(timeout)
        data, _ = self.sock.recvfrom(1 << 16)
        return data

    def close(self) -> None:
        self.sock.close()


@dataclass
class EnbSummary:
    slots_sent: int
    frames_sent: int
    bytes_sent: int
    duration_ns: int


@dataclass
class UeSlotReport:
    slot: int
    crc_ok: bool
    iterations: int
    latency: LatencyReport


@dataclass
class UeSummary:
    slots_received: int = 0
    crc_pass: int = 0
    seq_gaps: int = 0
    format_errors: int = 0
    control_missing: int = 0
    reports: list[UeSlotReport] = field(default_factory=list)


def run_enb(
    transport,
    mcs: int,
    n_slots: int,
    air: bool = False,
    snr_db: float = float("inf"),
    seed: int = 0,
    link: LinkConfig = LinkConfig(),
    inject_delay_ms: float = 0.0,
    pace: bool = True,
    pace_period_ns: int | None = None,
) -> EnbSummary:
    """Transmit ``n_slots`` mini-slots: CONTROL then IQ per slot, END last.

    With ``pace`` the sender holds the unit airtime between slots (or
    ``pace_period_ns`` when given) so a software UE can drain the socket.
    """
    gmap = link.grid_map()
    cfg = link.ofdm
    rng = np.random.default_rng(seed)
    snr = SnrSpec(snr_db)
    unit_len = tx_unit_sample_count(cfg) if air else minislot_sample_count(cfg)
    slot_period_ns = pace_period_ns or int(unit_len / cfg.sample_rate * 1e9)
    delay_ns = int(inject_delay_ms * 1e6)

    t0 = time.monotonic_ns()
    seq = 0
    sent_bytes = 0
    for slot in range(n_slots):
        scfg = ScramblingConfig(rnti=link.rnti, cell_id=link.cell_id, slot=slot)
        payload = rng.integers(0, 2, size=tbs_lookup(mcs), dtype=np.uint8)
        coded = tb_encode(payload, mcs, gmap.pdsch_capacity_bits)
        syms = qpsk_modulate(scramble(coded, scfg))
        grid = map_grid(syms, gmap, slot=slot, cell_id=link.cell_id)
        samples = tx_time_samples(grid, cfg)
        if snr.noise_var > 0.0:
            noise = rng.standard_normal(samples.size) + 1j * rng.standard_normal(samples.size)
            samples = samples + np.sqrt(snr.noise_var / 2.0) * noise
        if air:
            pad = np.zeros(tx_unit_sample_count(cfg) - samples.size, dtype=samples.dtype)
            samples = np.concatenate([samples, pad])

        control = ControlSideband(
            mcs=mcs, tbs_bits=tbs_lookup(mcs), slot=slot,
            rnti=link.rnti, cell_id=link.cell_id,
        )
        ctrl_bytes = encode_frame(
            IqFrame(kind=FRAME_KIND_CONTROL, seq=seq, slot=slot,
                    timestamp_ns=time.monotonic_ns(), control=control)
        )
        transport.send(ctrl_bytes)
        iq_frame = IqFrame(
            kind=FRAME_KIND_IQ, seq=seq + 1, slot=slot,
            timestamp_ns=time.monotonic_ns(),
            samples=samples.astype(np.complex64),
        )
        iq_bytes = encode_frame(iq_frame)
        if delay_ns:
            precise_sleep_ns(delay_ns)  # transport delay lands in t_tx
        transport.send(iq_bytes)
        seq += 2
        sent_bytes += len(ctrl_bytes) + len(iq_bytes)
        if pace:
            precise_sleep_ns(slot_period_ns)

    transport.send(
        encode_frame(IqFrame(kind=FRAME_KIND_END, seq=seq, slot=n_slots,
                             timestamp_ns=time.monotonic_ns()))
    )
    seq += 1
    return EnbSummary(
        slots_sent=n_slots,
        frames_sent=seq,
        bytes_sent=sent_bytes,
        duration_ns=time.monotonic_ns() - t0,
    )


def _warm_receive_chain(cfg, gmap, link, noise_var):
    """Trigger JIT compilation/loading before the first real slot arrives."""
    samples = np.zeros(minislot_sample_count(cfg), dtype=np.complex128)
    rx_grid = rx_time_samples(samples, cfg)[None, :, :]
    est = estimate_channel(rx_grid, gmap)
    llrs = descramble_llrs(demod_metrics(rx_grid, est, gmap, noise_var),
                           ScramblingConfig())
    tb_decode(llrs, 0)


def run_ue(
    transport,
    snr_db: float = float("inf"),
    link: LinkConfig = LinkConfig(),
    timeout: float = 10.0,
) -> UeSummary:
    """Receive until END: decode the first 4 symbols of each unit."""
    cfg = link.ofdm
    gmap = link.grid_map()
    data_len = minislot_sample_count(cfg)
    noise_var = max(SnrSpec(snr_db).noise_var, MIN_NOISE_VAR)
    _warm_receive_chain(cfg, gmap, link, noise_var)
    summary = UeSummary()
    controls: dict[int, ControlSideband] = {}
    next_seq = 0

    while True:
        try:
            data = transport.recv(timeout)
        except (TimeoutError, socket.timeout):
            break
        try:
            frame = decode_frame(data)
        except FrameError:
            summary.format_errors += 1
            continue
        if frame.seq != next_seq:
            summary.seq_gaps += 1
            if frame.seq < next_seq:
                continue  # stale duplicate/out-of-order: drop
        next_seq = frame.seq + 1

        if frame.kind == FRAME_KIND_END:
            break
        if frame.kind == FRAME_KIND_CONTROL:
            controls[frame.slot] = frame.control
            continue

        t_ue_start = time.monotonic_ns()
        control = controls.pop(frame.slot, None)
        if control is None:
            summary.control_missing += 1
            continue
        summary.slots_received += 1

        samples = frame.samples.astype(np.complex128)[:data_len]  # idle tail discarded
        rx_grid = rx_time_samples(samples, cfg)[None, :, :]
        est = estimate_channel(rx_grid, gmap, slot=control.slot, cell_id=control.cell_id)
        scfg = ScramblingConfig(rnti=control.rnti, cell_id=control.cell_id, slot=control.slot)
        llrs = descramble_llrs(demod_metrics(rx_grid, est, gmap, noise_var), scfg)
        outcome = tb_decode(llrs, control.mcs)
        t_end = time.monotonic_ns()

        summary.crc_pass += outcome.crc_ok
        summary.reports.append(
            UeSlotReport(
                slot=frame.slot,
                crc_ok=outcome.crc_ok,
                iterations=outcome.iterations_used,
                latency=LatencyReport(
                    mcs=control.mcs,
                    run=frame.slot,
                    t_start_ns=frame.timestamp_ns,
                    t_end_ns=t_end,
                    t_proc_enb_ns=0,  # not observable from the UE process
                    t_tx_ns=t_ue_start - frame.timestamp_ns,
                    t_proc_ue_ns=t_end - t_ue_start,
                    crc_ok=outcome.crc_ok,
                ),
            )
        )
    return summary
