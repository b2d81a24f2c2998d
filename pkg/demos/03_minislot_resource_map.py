"""The 4-symbol mini-slot resource map and where the PCFICH groups sit."""

import numpy as np

from urllc_phy.grid import CONTROL, PDSCH, RS, build_minislot_map, pcfich_regs

gmap = build_minislot_map(25)
labels = {RS: "RS", CONTROL: "ctrl", PDSCH: "data"}

print("per-symbol RE classification (25 RB, 300 subcarriers):")
for sym in range(4):
    counts = {lbl: int((gmap.classes[sym] == cls).sum()) for cls, lbl in labels.items()}
    print(f"  Symb{sym}: " + "  ".join(f"{k}={v:3d}" for k, v in counts.items()))

print(f"\ntotals: RS={gmap.count(RS)}, control={gmap.count(CONTROL)}, "
      f"PDSCH={gmap.count(PDSCH)} -> E={gmap.pdsch_capacity_bits} bits at QPSK")

print("\nRS comb: Symb0 pilots at k % 6 == 0, Symb3 pilots at k % 6 == 3")
print("Symb0 pilots:", gmap.rs_subcarriers(0)[:6], "...")
print("Symb3 pilots:", gmap.rs_subcarriers(3)[:6], "...")

print("\nPCFICH resource element groups (4 REs each):")
for reg in pcfich_regs(25):
    print(f"  RB{reg[0] // 12:<2d} subcarriers {reg.tolist()}")
