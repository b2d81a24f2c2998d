"""A small BLER-vs-SNR sweep over three MCS indices in AWGN.

Writes bler_waterfall.csv next to this script; if matplotlib is available a
log-scale plot lands in bler_waterfall.png.  Expect a couple of minutes.
"""

from pathlib import Path

from urllc_phy.channel import ChannelModel
from urllc_phy.harness import emit_bler_csv, run_bler

HERE = Path(__file__).parent

sweeps = {
    0: [-8.0, -7.0, -6.0, -5.0, -4.0, -3.0],
    7: [-3.0, -2.0, -1.0, -0.5, 0.0, 0.5],
    14: [2.0, 3.0, 4.0, 4.5, 5.0, 5.5],
}

results = []
for mcs, grid in sweeps.items():
    res = run_bler(mcs, grid, model=ChannelModel("awgn"),
                   min_errors=80, max_blocks=30000, seed=42, workers=2)
    results.extend(res)
    print(f"MCS {mcs:2d}: " + "  ".join(f"{r.snr_db:+.1f}dB:{r.bler:.1e}" for r in res))

csv_path = HERE / "bler_waterfall.csv"
csv_path.write_text(emit_bler_csv(results))
print(f"\nwrote {csv_path}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("matplotlib not installed; skipping the plot")
else:
    fig, ax = plt.subplots()
    for mcs in sweeps:
        pts = [(r.snr_db, r.bler) for r in results if r.mcs == mcs and r.bler > 0]
        ax.semilogy(*zip(*pts), marker="o", label=f"MCS {mcs}")
    ax.set_xlabel("Es/N0 per RE [dB]")
    ax.set_ylabel("BLER")
    ax.grid(True, which="both", alpha=0.4)
    ax.legend()
    fig.savefig(HERE / "bler_waterfall.png", dpi=120)
    print(f"wrote {HERE / 'bler_waterfall.png'}")
