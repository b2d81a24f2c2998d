"""Circular-buffer rate matching (redundancy version 0) and its soft inverse.

The buffer is the punctured codeword (length n = 50*Zc).  Reading starts at
position 0, skips filler positions and wraps; repetition beyond one pass is
how low MCS indices reach the fixed coded-bit budget E.  On the receive side
LLRs for repeated positions add.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .base_graph import PUNCTURED_COLS, LdpcParams

__all__ = ["FILLER_LLR", "CodewordLlr", "rate_match", "de_rate_match"]

# Large enough to behave as a known zero, finite to avoid overflow.
FILLER_LLR = 1.0e3


@dataclass
class CodewordLlr:
    """Soft values for every circular-buffer position (length n).

    Sign convention: positive means bit 0.  Filler positions are pinned to
    +FILLER_LLR; the 2*Zc punctured systematic positions are not part of the
    buffer and enter the decoder as erasures.
    """

    llr: np.ndarray
    params: LdpcParams


@lru_cache(maxsize=64)
def _read_order(b: int, k_b: int, z_c: int, e: int) -> np.ndarray:
    """Buffer indices emitted by one rv0 read of length e (fillers skipped)."""
    params = LdpcParams(b=b, k_b=k_b, z_c=z_c)
    start, stop = params.filler_range
    offset = PUNCTURED_COLS * z_c
    keep = np.ones(params.n, dtype=bool)
    keep[start - offset: stop - offset] = False
    one_pass = np.nonzero(keep)[0]
    reps = -(-e // one_pass.size)  # ceil
    return np.tile(one_pass, reps)[:e].copy()


def rate_match(codeword: np.ndarray, e: int, params: LdpcParams) -> np.ndarray:
    """Select ``e`` coded bits from the circular buffer."""
    codeword = np.asarray(codeword, dtype=np.uint8)
    if codeword.size != params.n:
        raise ValueError(f"codeword must be {params.n} bits, got {codeword.size}")
    if e <= 0:
        raise ValueError(f"rate-matched length must be positive, got {e}")
    return codeword[_read_order(params.b, params.k_b, params.z_c, e)]


def de_rate_match(llrs: np.ndarray, e: int, params: LdpcParams) -> CodewordLlr:
    """Accumulate received LLRs onto their buffer positions."""
    llrs = np.asarray(llrs, dtype=np.float64)
    if llrs.size != e:
        raise ValueError(f"expected {e} LLRs, got {llrs.size}")
    buf = np.zeros(params.n, dtype=np.float64)
    np.add.at(buf, _read_order(params.b, params.k_b, params.z_c, e), llrs)
    start, stop = params.filler_range
    offset = PUNCTURED_COLS * params.z_c
    buf[start - offset: stop - offset] = FILLER_LLR
    return CodewordLlr(llr=buf, params=params)
