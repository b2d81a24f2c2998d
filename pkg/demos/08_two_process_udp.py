"""Two-process eNB/UE over localhost UDP, driven through the CLI.

Spawns the UE, waits for it to warm up, then streams 50 mini-slots from the
eNB process.  The UE prints a per-slot CSV and a one-line summary.
"""

import socket
import subprocess
import sys
import time

def free_port():
    s = socket.socket(socket.AF_INET, socket.SOCK_DGRAM)
    s.bind(("127.0.0.1", 0))
    port = s.getsockname()[1]
    s.close()
    return port

port = free_port()
print(f"starting UE on 127.0.0.1:{port} ...")
ue = subprocess.Popen(
    [sys.executable, "-m", "urllc_phy.cli", "txrx", "ue",
     "--bind", f"127.0.0.1:{port}", "--timeout", "10"],
    stdout=subprocess.PIPE, text=True,
)
time.sleep(4.0)  # UE kernel warm-up

print("starting eNB ...")
enb = subprocess.run(
    [sys.executable, "-m", "urllc_phy.cli", "txrx", "enb",
     "--peer", f"127.0.0.1:{port}", "--mcs", "9", "--slots", "50",
     "--seed", "3", "--pace-ms", "2.0"],
    capture_output=True, text=True,
)
print(enb.stdout.strip())

out, _ = ue.communicate(timeout=60)
lines = out.strip().split("\n")
print("\nUE per-slot output (first 5 rows):")
for line in lines[:6]:
    print(" ", line)
print("  ...")
print("\n" + lines[-1])
