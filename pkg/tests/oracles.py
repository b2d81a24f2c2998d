"""Independent reference implementations used to cross-check the library.

Everything here deliberately avoids the library's own computational paths:
the parity-check matrix is expanded densely from circulants, the CRC runs as
schoolbook polynomial long division over bit lists, and the Gold sequence is
stepped one register tick at a time.
"""

import numpy as np
from scipy import sparse

from urllc_phy.coding import load_base_graph


def lifted_parity_matrix(z_c: int) -> sparse.csr_matrix:
    """Expand every base entry into a Zc x Zc circulant: P[i, (i+s) mod Z] = 1."""
    sm = load_base_graph().shift_matrix(z_c)
    n_rows, n_cols = sm.shape
    rows, cols = [], []
    base_r, base_c = np.nonzero(sm >= 0)
    for r, c in zip(base_r, base_c):
        s = int(sm[r, c])
        i = np.arange(z_c)
        rows.append(r * z_c + i)
        cols.append(c * z_c + (i + s) % z_c)
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    data = np.ones(rows.size, dtype=np.uint8)
    return sparse.csr_matrix((data, (rows, cols)), shape=(n_rows * z_c, n_cols * z_c))


def syndrome_weight(h: sparse.csr_matrix, codewords: np.ndarray) -> int:
    """Number of violated checks of one codeword or a (n, batch) matrix."""
    return int(((h @ codewords) % 2).sum())


def crc16_long_division(payload_bits) -> list[int]:
    """Remainder of payload * x^16 modulo x^16 + x^12 + x^5 + 1, MSB first."""
    poly = [1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1]  # degree 16
    work = list(payload_bits) + [0] * 16
    for i in range(len(payload_bits)):
        if work[i]:
            for j, p in enumerate(poly):
                work[i + j] ^= p
    return work[-16:]


def gold_first_bits(c_init: int, count: int) -> list[int]:
    """Step both shift registers tick by tick; no array tricks."""
    x1 = [1] + [0] * 30
    x2 = [(c_init >> i) & 1 for i in range(31)]
    out = []
    produced = 0
    tick = 0
    while produced < count:
        if tick >= 1600:
            out.append(x1[0] ^ x2[0])
            produced += 1
        new1 = x1[3] ^ x1[0]
        new2 = x2[3] ^ x2[2] ^ x2[1] ^ x2[0]
        x1 = x1[1:] + [new1]
        x2 = x2[1:] + [new2]
        tick += 1
    return out


def qpsk_nearest_point(y: complex) -> tuple[int, int]:
    """Brute-force minimum-distance decision over the 4 constellation points."""
    best = None
    best_d = None
    for b0 in (0, 1):
        for b1 in (0, 1):
            p = ((1 - 2 * b0) + 1j * (1 - 2 * b1)) / np.sqrt(2.0)
            d = abs(y - p)
            if best_d is None or d < best_d:
                best_d = d
                best = (b0, b1)
    return best
