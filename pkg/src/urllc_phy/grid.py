"""Mini-slot resource map, reference-signal generation and PDSCH (de)mapping.

Layout over the 4 data symbols:

* Symb0: RS every 6th subcarrier starting at 0; every other RE is control
  (PCFICH/PHICH/PDCCH region, filled with placeholder symbols since control
  content travels sideband).
* Symb1, Symb2: all PDSCH.
* Symb3: RS every 6th subcarrier starting at 3; the rest PDSCH.

PDSCH symbols fill their REs symbol-major, frequency-ascending.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .sequences import gold_sequence

__all__ = [
    "RS",
    "CONTROL",
    "PDSCH",
    "N_SYMBOLS",
    "GridMap",
    "build_minislot_map",
    "pcfich_regs",
    "rs_c_init",
    "rs_sequence",
    "control_placeholder",
    "map_grid",
    "demap_pdsch",
]

RS, CONTROL, PDSCH = 0, 1, 2
N_SYMBOLS = 4
_RS_SPACING = 6
_RS_START = {0: 0, 3: 3}
_CONTROL_SEED = 0x5EED


@dataclass(frozen=True)
class GridMap:
    """Per-RE classification over (symbol, subcarrier) plus cached index sets."""

    n_rb: int
    classes: np.ndarray                      # uint8 (N_SYMBOLS, 12*n_rb)
    pdsch_idx: tuple[np.ndarray, np.ndarray] = field(repr=False, default=None)
    rs_idx: dict[int, np.ndarray] = field(repr=False, default=None)

    @property
    def n_subcarriers(self) -> int:
        return 12 * self.n_rb

    def count(self, cls: int) -> int:
        return int((self.classes == cls).sum())

    @property
    def pdsch_capacity_bits(self) -> int:
        return 2 * self.count(PDSCH)  # QPSK

    def rs_subcarriers(self, symbol: int) -> np.ndarray:
        if symbol not in _RS_START:
            raise ValueError(f"RS lives only in symbols 0 and 3, not {symbol}")
        return self.rs_idx[symbol]


@lru_cache(maxsize=8)
def build_minislot_map(n_rb: int) -> GridMap:
    if n_rb < 1:
        raise ValueError(f"n_rb must be >= 1, got {n_rb}")
    n_sc = 12 * n_rb
    classes = np.full((N_SYMBOLS, n_sc), PDSCH, dtype=np.uint8)
    k = np.arange(n_sc)
    classes[0] = np.where(k % _RS_SPACING == _RS_START[0], RS, CONTROL)
    classes[3] = np.where(k % _RS_SPACING == _RS_START[3], RS, PDSCH)
    sym_idx, sc_idx = np.nonzero(classes == PDSCH)  # row-major = symbol-major
    rs_idx = {s: np.nonzero(classes[s] == RS)[0] for s in (0, 3)}
    return GridMap(n_rb=n_rb, classes=classes, pdsch_idx=(sym_idx, sc_idx), rs_idx=rs_idx)


def pcfich_regs(n_rb: int) -> list[np.ndarray]:
    """Four 4-RE groups in Symb0, one in each of RBs 0/6/12/18.

    Each group is the first run of four consecutive control subcarriers of
    its RB (RS sits at offsets 0 and 6, so offsets 1..4 qualify).
    """
    if n_rb < 19:
        raise ValueError(f"PCFICH layout needs RB18, so n_rb >= 19 (got {n_rb})")
    return [np.arange(12 * rb + 1, 12 * rb + 5) for rb in (0, 6, 12, 18)]


def rs_c_init(slot: int, symbol: int, cell_id: int) -> int:
    return ((7 * (slot + 1) + symbol + 1) * (2 * cell_id + 1) * 2**10 + 2 * cell_id) % 2**31


@lru_cache(maxsize=256)
def _rs_cached(slot: int, symbol: int, cell_id: int, n_rs: int) -> np.ndarray:
    c = gold_sequence(rs_c_init(slot, symbol, cell_id), 2 * n_rs).astype(np.float64)
    seq = ((1.0 - 2.0 * c[0::2]) + 1j * (1.0 - 2.0 * c[1::2])) / np.sqrt(2.0)
    seq.setflags(write=False)
    return seq


def rs_sequence(slot: int, symbol: int, cell_id: int, n_rs: int) -> np.ndarray:
    """Unit-power QPSK pilots for one RS symbol, in frequency order."""
    if symbol not in _RS_START:
        raise ValueError(f"RS lives only in symbols 0 and 3, not {symbol}")
    return _rs_cached(slot, symbol, cell_id, n_rs)


@lru_cache(maxsize=16)
def control_placeholder(n_control: int) -> np.ndarray:
    """Deterministic unit-power QPSK filling the control region."""
    rng = np.random.default_rng(_CONTROL_SEED)
    bits = rng.integers(0, 2, size=2 * n_control).astype(np.float64)
    seq = ((1.0 - 2.0 * bits[0::2]) + 1j * (1.0 - 2.0 * bits[1::2])) / np.sqrt(2.0)
    seq.setflags(write=False)
    return seq


def map_grid(pdsch_syms: np.ndarray, gmap: GridMap, slot: int = 0, cell_id: int = 0) -> np.ndarray:
    """Assemble the complex resource grid for one mini-slot."""
    pdsch_syms = np.asarray(pdsch_syms, dtype=np.complex128)
    n_pdsch = gmap.count(PDSCH)
    if pdsch_syms.size != n_pdsch:
        raise ValueError(f"grid holds {n_pdsch} PDSCH symbols, got {pdsch_syms.size}")
    grid = np.zeros((N_SYMBOLS, gmap.n_subcarriers), dtype=np.complex128)
    for symbol in (0, 3):
        sc = gmap.rs_subcarriers(symbol)
        grid[symbol, sc] = rs_sequence(slot, symbol, cell_id, sc.size)
    ctrl = gmap.classes == CONTROL
    grid[ctrl] = control_placeholder(int(ctrl.sum()))
    grid[gmap.pdsch_idx] = pdsch_syms
    return grid


def demap_pdsch(grid: np.ndarray, gmap: GridMap) -> np.ndarray:
    """Extract PDSCH REs in mapping order."""
    grid = np.asarray(grid)
    if grid.shape != (N_SYMBOLS, gmap.n_subcarriers):
        raise ValueError(
            f"grid shape {grid.shape} does not match map ({N_SYMBOLS}, {gmap.n_subcarriers})"
        )
    return grid[gmap.pdsch_idx]
