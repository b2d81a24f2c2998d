"""Base graph 2 table, lifting-size selection and per-block coding parameters.

The shift-coefficient table lives in ``data/bg2_shifts.txt`` (format described
in the file header).  Blocks here are never segmented: the guarded maximum of
3840 payload+CRC bits is far above every supported transport block.
"""

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

__all__ = [
    "BASE_ROWS",
    "BASE_COLS",
    "SYSTEMATIC_COLS",
    "PUNCTURED_COLS",
    "LIFTING_SETS",
    "LIFTING_SIZES",
    "BaseGraph",
    "load_base_graph",
    "LdpcParams",
    "ldpc_params_select",
]

BASE_ROWS = 42
BASE_COLS = 52
SYSTEMATIC_COLS = 10   # information block-columns
PUNCTURED_COLS = 2     # leading systematic block-columns never transmitted
MAX_BLOCK_BITS = 3840  # single-code-block limit (10 * max Z = 384)

_DATA_FILE = "bg2_shifts.txt"


@dataclass(frozen=True)
class BaseGraph:
    """Parsed base graph: per lifting set, a dense (rows, cols) shift matrix
    with -1 marking null entries."""

    shifts: np.ndarray          # int16, shape (8, BASE_ROWS, BASE_COLS)
    lifting_sets: tuple[tuple[int, ...], ...]

    def set_index(self, z_c: int) -> int:
        for i, zs in enumerate(self.lifting_sets):
            if z_c in zs:
                return i
        raise ValueError(f"{z_c} is not a standard lifting size")

    def shift_matrix(self, z_c: int) -> np.ndarray:
        """(rows, cols) shifts modulo ``z_c``, -1 for null entries."""
        m = self.shifts[self.set_index(z_c)].copy()
        mask = m >= 0
        m[mask] = m[mask] % z_c
        return m


def _parse(text: str) -> BaseGraph:
    sets: dict[int, tuple[int, ...]] = {}
    shifts = np.full((8, BASE_ROWS, BASE_COLS), -1, dtype=np.int16)
    current_set = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("set "):
            idx_str, zs = line[4:].split(":")
            sets[int(idx_str)] = tuple(int(z) for z in zs.split())
        elif line.startswith("[set "):
            current_set = int(line[5:-1])
        else:
            row_str, entries = line.split(":", 1)
            r = int(row_str)
            for pair in entries.split():
                c, v = pair.split(":")
                shifts[current_set, r, int(c)] = int(v)
    if sorted(sets) != list(range(8)):
        raise ValueError("base graph file must define lifting sets 0..7")
    return BaseGraph(shifts=shifts, lifting_sets=tuple(sets[i] for i in range(8)))


@lru_cache(maxsize=1)
def load_base_graph() -> BaseGraph:
    text = resources.files(__package__).joinpath("data").joinpath(_DATA_FILE).read_text()
    bg = _parse(text)
    counts = (bg.shifts[0] >= 0).sum()
    if counts != 197:
        raise ValueError(f"base graph has {counts} entries, expected 197")
    return bg


LIFTING_SETS: tuple[tuple[int, ...], ...] = (
    (2, 4, 8, 16, 32, 64, 128, 256),
    (3, 6, 12, 24, 48, 96, 192, 384),
    (5, 10, 20, 40, 80, 160, 320),
    (7, 14, 28, 56, 112, 224),
    (9, 18, 36, 72, 144, 288),
    (11, 22, 44, 88, 176, 352),
    (13, 26, 52, 104, 208),
    (15, 30, 60, 120, 240),
)

LIFTING_SIZES: tuple[int, ...] = tuple(sorted(z for zs in LIFTING_SETS for z in zs))


@dataclass(frozen=True)
class LdpcParams:
    """Lifted-code dimensions for one transport block (payload + CRC = b bits).

    ``k`` counts all systematic bits (10 Zc, fillers included); ``n`` is the
    circular-buffer length 50 Zc, i.e. the codeword minus the 2 Zc punctured
    leading systematic bits.
    """

    b: int
    k_b: int
    z_c: int

    @property
    def k(self) -> int:
        return SYSTEMATIC_COLS * self.z_c

    @property
    def n(self) -> int:
        return (BASE_COLS - PUNCTURED_COLS) * self.z_c

    @property
    def filler_count(self) -> int:
        return self.k - self.b

    @property
    def filler_range(self) -> tuple[int, int]:
        """Systematic positions [b, k) holding filler zeros."""
        return self.b, self.k


@lru_cache(maxsize=128)
def ldpc_params_select(b: int) -> LdpcParams:
    """Pick (k_b, z_c) for a b-bit block (payload + CRC), b <= 3840."""
    if b <= 0:
        raise ValueError(f"block size must be positive, got {b}")
    if b > MAX_BLOCK_BITS:
        raise ValueError(
            f"block of {b} bits exceeds the single-code-block limit "
            f"{MAX_BLOCK_BITS}: segmentation required"
        )
    if b > 640:
        k_b = 10
    elif b > 560:
        k_b = 9
    elif b > 192:
        k_b = 8
    else:
        k_b = 6
    z_c = min(z for z in LIFTING_SIZES if k_b * z >= b)
    return LdpcParams(b=b, k_b=k_b, z_c=z_c)
