"""Single vs dual receive antenna with maximal-ratio combining.

In AWGN the dual-antenna curve is the single-antenna curve shifted left by
the 3 dB array gain.  In flat Rayleigh block fading the second antenna also
doubles the diversity order, so the curve is much steeper and the gap grows
as the target BLER shrinks.  Expect a few minutes.
"""

from urllc_phy.channel import ChannelModel
from urllc_phy.harness import run_bler
from urllc_phy.link import LinkConfig

genie = LinkConfig(estimator="genie")

print("AWGN, genie channel, MCS 9:")
for n_rx, grid in [(1, [-1.5, -1.0, -0.5, 0.0]), (2, [-4.5, -4.0, -3.5, -3.0])]:
    res = run_bler(9, grid, model=ChannelModel("awgn"), n_rx=n_rx,
                   min_errors=80, max_blocks=20000, seed=5, link=genie)
    print(f"  {n_rx} antenna: " + "  ".join(f"{r.snr_db:+.1f}dB:{r.bler:.1e}" for r in res))

print("\nflat Rayleigh block fading, MCS 0:")
for n_rx, grid in [(1, [14.0, 18.0, 22.0, 26.0]), (2, [4.0, 7.0, 10.0, 13.0])]:
    res = run_bler(0, grid, model=ChannelModel("rayleigh-flat"), n_rx=n_rx,
                   min_errors=50, max_blocks=60000, seed=6)
    print(f"  {n_rx} antenna: " + "  ".join(f"{r.snr_db:+.1f}dB:{r.bler:.1e}" for r in res))

print("\nNote the slope difference in fading: one decade per ~10 dB with one")
print("antenna versus one decade per ~5 dB with two (diversity order 2).")
