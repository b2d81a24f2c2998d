"""Command-line front end: ``tables``, ``bler``, ``latency``, ``txrx``."""

import argparse
import sys

from .channel import ChannelModel
from .grid import CONTROL, PDSCH, RS, build_minislot_map, pcfich_regs
from .harness import emit_bler_csv, emit_latency_csv, run_bler, run_latency
from .link import LinkConfig
from .numerology import MCS_TABLE, MiniSlotConfig, Platform
from .txrx import UdpTransport, parse_endpoint, run_enb, run_ue

__all__ = ["main"]


def _parse_mcs_list(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        if ":" in part:
            lo, hi = part.split(":")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def _parse_snr_list(text: str) -> list[float]:
    if text == "inf":
        return [float("inf")]
    parts = text.split(":")
    if len(parts) == 3:
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise ValueError("SNR step must be positive")
        out = []
        v = start
        while v <= stop + 1e-9:
            out.append(round(v, 9))
            v += step
        return out
    return [float(p) for p in text.split(",")]


def _cmd_tables(args) -> int:
    if args.grid:
        gmap = build_minislot_map(n_rb=25)
        regs = {sc for reg in pcfich_regs(25) for sc in reg}
        label = {RS: "R", CONTROL: "C", PDSCH: "D"}
        print("RB0 resource map (R=RS, C=control, P=PCFICH REG, D=PDSCH)")
        print("sc | Symb0 Symb1 Symb2 Symb3")
        for sc in range(12):
            cells = []
            for sym in range(4):
                c = label[gmap.classes[sym, sc]]
                if sym == 0 and sc in regs:
                    c = "P"
                cells.append(c)
            print(f"{sc:2d} |   " + "     ".join(cells))
        return 0
    e = 2 * build_minislot_map(25).count(PDSCH)
    if args.csv:
        print("mcs,tbs,qm,rate")
        for m in MCS_TABLE:
            print(f"{m.index},{m.tbs},{m.modulation_order},{m.code_rate(e):.6f}")
    else:
        print(f"{'mcs':>3} {'tbs':>5} {'qm':>3} {'rate':>8}")
        for m in MCS_TABLE:
            print(f"{m.index:>3} {m.tbs:>5} {m.modulation_order:>3} {m.code_rate(e):>8.4f}")
    return 0


def _write_out(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _cmd_bler(args) -> int:
    link = LinkConfig(estimator=args.estimator)
    results = []
    for mcs in _parse_mcs_list(args.mcs):
        results.extend(
            run_bler(
                mcs,
                _parse_snr_list(args.snr),
                model=ChannelModel.parse(args.channel),
                n_rx=args.rx_antennas,
                min_errors=args.min_errors,
                max_blocks=args.max_blocks,
                seed=args.seed,
                workers=args.workers,
                link=link,
            )
        )
    _write_out(emit_bler_csv(results), args.out)
    return 0


def _cmd_latency(args) -> int:
    platform = Platform.AIR_EMULATION if args.air else Platform.SIMULATION
    reports = []
    for mcs in _parse_mcs_list(args.mcs):
        reports.extend(
            run_latency(
                mcs,
                args.runs,
                mode=args.mode,
                minislot=MiniSlotConfig(platform=platform),
                seed=args.seed,
            )
        )
    _write_out(emit_latency_csv(reports), args.out)
    return 0


def _cmd_txrx(args) -> int:
    if args.role == "enb":
        transport = UdpTransport(peer=parse_endpoint(args.peer))
        try:
            summary = run_enb(
                transport,
                mcs=args.mcs,
                n_slots=args.slots,
                air=args.air,
                snr_db=args.snr,
                seed=args.seed,
                inject_delay_ms=args.inject_delay_ms,
                pace=not args.no_pace,
                pace_period_ns=int(args.pace_ms * 1e6) if args.pace_ms else None,
            )
        finally:
            transport.close()
        print(
            f"enb: slots={summary.slots_sent} frames={summary.frames_sent} "
            f"bytes={summary.bytes_sent} duration_ns={summary.duration_ns}"
        )
        return 0

    transport = UdpTransport(bind=parse_endpoint(args.bind))
    try:
        summary = run_ue(transport, snr_db=args.snr, timeout=args.timeout)
    finally:
        transport.close()
    lines = ["slot,crc_ok,iterations,t_tx_ns,t_proc_ue_ns,t_sum_ns"]
    for rep in summary.reports:
        lat = rep.latency
        lines.append(
            f"{rep.slot},{int(rep.crc_ok)},{rep.iterations},"
            f"{lat.t_tx_ns},{lat.t_proc_ue_ns},{lat.t_sum_ns}"
        )
    _write_out("\n".join(lines) + "\n", args.out)
    print(
        f"ue: slots={summary.slots_received} crc_pass={summary.crc_pass} "
        f"seq_gaps={summary.seq_gaps} format_errors={summary.format_errors} "
        f"control_missing={summary.control_missing}"
    )
    return 0 if summary.slots_received else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="urllc-phy",
        description="URLLC downlink physical layer: tables, BLER sweeps, latency, two-process mode",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tables", help="print the MCS table or the RB resource map")
    p.add_argument("--csv", action="store_true", help="CSV instead of aligned text")
    p.add_argument("--grid", action="store_true", help="ASCII per-RE classification of one RB")
    p.set_defaults(func=_cmd_tables)

    p = sub.add_parser("bler", help="Monte-Carlo BLER sweep")
    p.add_argument("--mcs", required=True, help="index, comma list, or lo:hi range")
    p.add_argument("--snr", required=True, help="dB: start:stop:step, comma list, or 'inf'")
    p.add_argument("--channel", default="awgn", help="awgn | rayleigh-flat | rayleigh-fs:<taps>")
    p.add_argument("--rx-antennas", type=int, default=1, choices=(1, 2))
    p.add_argument("--min-errors", type=int, default=100)
    p.add_argument("--max-blocks", type=int, default=10**6)
    p.add_argument("--workers", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--estimator", default="3step", choices=("3step", "genie"))
    p.add_argument("--out", default=None, help="CSV path (stdout if omitted)")
    p.set_defaults(func=_cmd_bler)

    p = sub.add_parser("latency", help="per-stage latency decomposition")
    p.add_argument("--mcs", required=True, help="index, comma list, or lo:hi range")
    p.add_argument("--runs", type=int, default=50)
    p.add_argument("--mode", default="inproc", choices=("inproc", "socket"))
    p.add_argument("--air", action="store_true", help="pad to the 14-symbol unit")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="CSV path (stdout if omitted)")
    p.set_defaults(func=_cmd_latency)

    p = sub.add_parser("txrx", help="two-process eNB/UE over UDP")
    role = p.add_subparsers(dest="role", required=True)

    enb = role.add_parser("enb", help="transmit mini-slots")
    enb.add_argument("--peer", required=True, help="UE address as addr:port")
    enb.add_argument("--mcs", type=int, required=True)
    enb.add_argument("--slots", type=int, required=True)
    enb.add_argument("--air", action="store_true", help="emit full 14-symbol units")
    enb.add_argument("--snr", type=float, default=float("inf"), help="wire Es/N0 in dB")
    enb.add_argument("--seed", type=int, default=0)
    enb.add_argument("--inject-delay-ms", type=float, default=0.0)
    enb.add_argument("--no-pace", action="store_true", help="send without real-time pacing")
    enb.add_argument("--pace-ms", type=float, default=0.0,
                     help="override the inter-slot period (default: unit airtime)")
    enb.set_defaults(func=_cmd_txrx)

    ue = role.add_parser("ue", help="receive and decode mini-slots")
    ue.add_argument("--bind", required=True, help="listen address as addr:port")
    ue.add_argument("--snr", type=float, default=float("inf"), help="genie Es/N0 in dB")
    ue.add_argument("--timeout", type=float, default=10.0)
    ue.add_argument("--out", default=None, help="per-slot CSV path (stdout if omitted)")
    ue.set_defaults(func=_cmd_txrx)

    return parser


def _merge_negative_grid_args(argv):
    """Join ``--snr -5:-3:0.5`` into one token; argparse would otherwise
    mistake the negative grid for an option string."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok == "--snr" and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"--snr={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    args = _build_parser().parse_args(_merge_negative_grid_args(list(argv)))
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
