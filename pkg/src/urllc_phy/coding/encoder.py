"""Systematic encoder for the lifted base graph 2 code.

Parities are computed by back-substitution on the double-diagonal core
(block-columns 10..13) followed by the single-identity extension rows, so no
generator matrix is ever materialized.  ``P^s v`` on a length-Zc block reads
``v[(i + s) mod Zc]``, i.e. a cyclic left rotation by s.  The per-Zc plan is
cached and the bit work runs in a compiled kernel.
"""

from functools import lru_cache

import numba
import numpy as np

from .base_graph import (
    BASE_COLS,
    BASE_ROWS,
    PUNCTURED_COLS,
    SYSTEMATIC_COLS,
    LdpcParams,
    load_base_graph,
)

__all__ = ["ldpc_encode", "ldpc_encode_full"]


@lru_cache(maxsize=32)
def _encode_plan(z_c: int):
    """Flattened row entries plus the core-parity shift triple for ``z_c``."""
    sm = load_base_graph().shift_matrix(z_c)
    core_ptr = [0]
    core_cols, core_shifts = [], []
    for r in range(4):
        for c in np.nonzero(sm[r, :SYSTEMATIC_COLS] >= 0)[0]:
            core_cols.append(c)
            core_shifts.append(sm[r, c])
        core_ptr.append(len(core_cols))
    ext_ptr = [0]
    ext_cols, ext_shifts = [], []
    for r in range(4, BASE_ROWS):
        for c in np.nonzero(sm[r, :SYSTEMATIC_COLS + 4] >= 0)[0]:
            ext_cols.append(c)
            ext_shifts.append(sm[r, c])
        ext_ptr.append(len(ext_cols))

    x0, x2, x3 = int(sm[0, 10]), int(sm[2, 10]), int(sm[3, 10])
    # two of the col-10 shifts are equal; the odd one survives the row sum
    if x0 == x2:
        y = x3
    elif x0 == x3:
        y = x2
    else:
        y = x0
    return (
        np.asarray(core_ptr, dtype=np.int64),
        np.asarray(core_cols, dtype=np.int64),
        np.asarray(core_shifts, dtype=np.int64),
        np.asarray(ext_ptr, dtype=np.int64),
        np.asarray(ext_cols, dtype=np.int64),
        np.asarray(ext_shifts, dtype=np.int64),
        x0,
        x3,
        y,
    )


@numba.njit(cache=True, nogil=True)
def _encode_kernel(blocks, core_ptr, core_cols, core_shifts,
                   ext_ptr, ext_cols, ext_shifts, z, x0, x3, y):
    lam = np.zeros((4, z), dtype=np.uint8)
    for r in range(4):
        for e in range(core_ptr[r], core_ptr[r + 1]):
            c = core_cols[e]
            s = core_shifts[e]
            for i in range(z):
                pos = i + s
                if pos >= z:
                    pos -= z
                lam[r, i] ^= blocks[c, pos]
    total = np.empty(z, dtype=np.uint8)
    for i in range(z):
        total[i] = lam[0, i] ^ lam[1, i] ^ lam[2, i] ^ lam[3, i]
    for i in range(z):
        pos = i - y
        if pos < 0:
            pos += z
        blocks[10, i] = total[pos]         # p0 = P^{-y} (row sum)
    for i in range(z):
        p0x0 = blocks[10, (i + x0) % z]
        blocks[11, i] = lam[0, i] ^ p0x0
    for i in range(z):
        blocks[12, i] = lam[1, i] ^ blocks[11, i]
        blocks[13, i] = lam[3, i] ^ blocks[10, (i + x3) % z]
    for r in range(ext_ptr.size - 1):
        for e in range(ext_ptr[r], ext_ptr[r + 1]):
            c = ext_cols[e]
            s = ext_shifts[e]
            for i in range(z):
                pos = i + s
                if pos >= z:
                    pos -= z
                blocks[r + 14, i] ^= blocks[c, pos]


def ldpc_encode_full(msg_with_fillers: np.ndarray, params: LdpcParams) -> np.ndarray:
    """Full 52*Zc codeword (nothing punctured) for ``k`` systematic bits."""
    z = params.z_c
    msg = np.asarray(msg_with_fillers, dtype=np.uint8)
    if msg.size != params.k:
        raise ValueError(f"message must be {params.k} bits, got {msg.size}")
    if np.any(msg[params.b:]):
        raise ValueError("filler positions must be zero")

    blocks = np.zeros((BASE_COLS, z), dtype=np.uint8)
    blocks[:SYSTEMATIC_COLS] = msg.reshape(SYSTEMATIC_COLS, z)
    plan = _encode_plan(z)
    _encode_kernel(blocks, *plan[:6], z, *plan[6:])
    return blocks.reshape(-1)


def ldpc_encode(msg_with_fillers: np.ndarray, params: LdpcParams) -> np.ndarray:
    """Codeword with the first 2*Zc systematic bits punctured (length n)."""
    return ldpc_encode_full(msg_with_fillers, params)[PUNCTURED_COLS * params.z_c:]
