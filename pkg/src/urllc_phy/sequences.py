"""Length-31 Gold sequence generator and the scrambling built on it."""

from dataclasses import dataclass
from functools import lru_cache

import numba
import numpy as np

__all__ = [
    "gold_sequence",
    "ScramblingConfig",
    "pdsch_c_init",
    "scramble",
    "descramble_llrs",
]

_NC = 1600  # discarded warm-up outputs


@numba.njit(cache=True, nogil=True)
def _gold(c_init, n):
    total = _NC + n
    x1 = np.empty(total + 31, dtype=np.uint8)
    x2 = np.empty(total + 31, dtype=np.uint8)
    for i in range(31):
        x1[i] = 1 if i == 0 else 0
        x2[i] = (c_init >> i) & 1
    for i in range(total):
        x1[i + 31] = x1[i + 3] ^ x1[i]
        x2[i + 31] = x2[i + 3] ^ x2[i + 2] ^ x2[i + 1] ^ x2[i]
    out = np.empty(n, dtype=np.uint8)
    for i in range(n):
        out[i] = x1[i + _NC] ^ x2[i + _NC]
    return out


@lru_cache(maxsize=256)
def _gold_cached(c_init: int, n: int) -> np.ndarray:
    seq = _gold(np.uint64(c_init), n)
    seq.setflags(write=False)
    return seq


def gold_sequence(c_init: int, length: int) -> np.ndarray:
    """Gold sequence c(i) with x1 seeded to 0...01 and x2 to ``c_init``."""
    if length <= 0:
        raise ValueError(f"sequence length must be positive, got {length}")
    if not 0 <= c_init < 2**31:
        raise ValueError(f"c_init must be a 31-bit value, got {c_init}")
    return _gold_cached(int(c_init), int(length))


@dataclass(frozen=True)
class ScramblingConfig:
    rnti: int = 1
    cell_id: int = 0
    slot: int = 0

    def __post_init__(self):
        if not 0 <= self.rnti < 2**16:
            raise ValueError(f"rnti must fit 16 bits, got {self.rnti}")
        if not 0 <= self.cell_id <= 503:
            raise ValueError(f"cell_id must be in 0..503, got {self.cell_id}")


def pdsch_c_init(cfg: ScramblingConfig) -> int:
    return (cfg.rnti * 2**14 + cfg.slot * 2**9 + cfg.cell_id) % 2**31


def scramble(bits: np.ndarray, cfg: ScramblingConfig) -> np.ndarray:
    """XOR with the data scrambling sequence (its own inverse)."""
    bits = np.asarray(bits, dtype=np.uint8)
    return bits ^ gold_sequence(pdsch_c_init(cfg), bits.size)


def descramble_llrs(llrs: np.ndarray, cfg: ScramblingConfig) -> np.ndarray:
    """Undo scrambling in the soft domain: flip LLR signs where c(i) = 1."""
    llrs = np.asarray(llrs, dtype=np.float64)
    seq = gold_sequence(pdsch_c_init(cfg), llrs.size)
    return llrs * (1.0 - 2.0 * seq)
