"""MCS operating points and the information-bit budget of one mini-slot.

The 25-RB mini-slot offers 850 PDSCH resource elements = 1700 coded bits at
QPSK.  Each MCS index picks a transport block size; the effective code rate
is (tbs + 16 CRC bits) / 1700.
"""

from urllc_phy import MCS_TABLE, n_info
from urllc_phy.grid import PDSCH, build_minislot_map

gmap = build_minislot_map(25)
n_re = gmap.count(PDSCH)
e = gmap.pdsch_capacity_bits
print(f"PDSCH resource elements per mini-slot: {n_re}  ->  E = {e} coded bits\n")

print(f"{'mcs':>3} {'tbs':>5} {'rate':>8} {'n_info(R)':>10}")
for m in MCS_TABLE:
    rate = m.code_rate(e)
    # the information budget formula evaluated at this operating point
    budget = n_info(n_re, rate, m.modulation_order, m.layers)
    print(f"{m.index:>3} {m.tbs:>5} {rate:>8.4f} {budget:>10.1f}")

print("\nThe budget column equals tbs + 16: the CRC is the only overhead.")
