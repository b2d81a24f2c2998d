"""Per-stage latency decomposition of one mini-slot.

The accounting identity holds exactly per run:
t_proc_enb + t_tx + t_proc_ue == t_end - t_start, all on one monotonic
clock.  Socket mode routes the IQ samples through a localhost datagram
socket, which makes t_tx three orders of magnitude larger than the
in-process handoff.
"""

import numpy as np

from urllc_phy.harness import median_stage_ns, run_latency

for mode in ("inproc", "socket"):
    reports = run_latency(9, runs=40, mode=mode, seed=1)
    med = lambda field: np.median([getattr(r, field) for r in reports]) / 1e3
    print(f"mode={mode}: t_proc_enb={med('t_proc_enb_ns'):8.1f} us  "
          f"t_tx={med('t_tx_ns'):8.1f} us  t_proc_ue={med('t_proc_ue_ns'):8.1f} us  "
          f"t_sum={med('t_sum_ns'):8.1f} us")

print("\nstage medians (in-process, MCS sweep):")
print(f"{'mcs':>3} " + " ".join(f"{s:>10}" for s in
      ("encode", "rate_match", "modulate", "ofdm", "demodulate", "estimate", "metrics", "decode")))
for mcs in (4, 9, 14):
    reports = run_latency(mcs, runs=40, mode="inproc", seed=2)
    row = [median_stage_ns(reports, s) / 1e3 for s in
           ("encode", "rate_match", "modulate", "ofdm", "demodulate", "estimate", "metrics", "decode")]
    print(f"{mcs:>3} " + " ".join(f"{v:>9.1f}u" for v in row))
