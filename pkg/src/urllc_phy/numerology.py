"""OFDM/mini-slot numerology and the MCS/TBS table.

Everything here is immutable after construction and safe to share across
workers.  The default configuration is a 5 MHz FDD carrier: 15 kHz
subcarrier spacing, 512-point FFT, 25 resource blocks, 7.68 Msps.
"""

from dataclasses import dataclass
from enum import Enum

__all__ = [
    "OfdmConfig",
    "Platform",
    "MiniSlotConfig",
    "McsEntry",
    "MCS_TABLE",
    "mcs_entry",
    "tbs_lookup",
    "n_info",
    "pdsch_bit_capacity",
]

CRC_BITS = 16


class Platform(Enum):
    SIMULATION = "simulation"
    AIR_EMULATION = "air-emulation"


@dataclass(frozen=True)
class OfdmConfig:
    """Carrier numerology.

    ``sample_rate`` is tied to ``fft_size * subcarrier_spacing``; the cyclic
    prefix is 40 samples on the first symbol of a mini-slot and 36 on the
    rest (LTE normal CP at 7.68 Msps).
    """

    subcarrier_spacing: float = 15_000.0
    fft_size: int = 512
    n_rb: int = 25
    cp_first: int = 40
    cp_other: int = 36

    def __post_init__(self):
        if self.n_rb < 1:
            raise ValueError(f"n_rb must be >= 1, got {self.n_rb}")
        if self.occupied_subcarriers + 1 > self.fft_size:
            raise ValueError(
                f"{self.n_rb} RBs ({self.occupied_subcarriers} subcarriers + DC) "
                f"do not fit in a {self.fft_size}-point FFT"
            )
        if self.cp_first <= 0 or self.cp_other <= 0:
            raise ValueError("cyclic prefix lengths must be positive")

    @property
    def occupied_subcarriers(self) -> int:
        return 12 * self.n_rb

    @property
    def sample_rate(self) -> float:
        return self.fft_size * self.subcarrier_spacing

    def cp_len(self, symbol_index: int) -> int:
        return self.cp_first if symbol_index == 0 else self.cp_other

    def symbol_len(self, symbol_index: int) -> int:
        return self.fft_size + self.cp_len(symbol_index)


@dataclass(frozen=True)
class MiniSlotConfig:
    """Mini-slot TTI shape: 4 data symbols inside a 14-symbol TX unit.

    In SIMULATION mode only the 4 data symbols exist; in AIR_EMULATION the
    unit is padded with idle samples to the full 14-symbol duration.
    """

    data_symbols: int = 4
    tx_unit_symbols: int = 14
    platform: Platform = Platform.SIMULATION

    def __post_init__(self):
        if self.data_symbols != 4:
            raise ValueError("mini-slot carries exactly 4 data symbols")
        if self.tx_unit_symbols != 14:
            raise ValueError("transmission unit is exactly 14 symbols")


@dataclass(frozen=True)
class McsEntry:
    index: int
    tbs: int
    modulation_order: int = 2  # QPSK only
    layers: int = 1

    def code_rate(self, e: int) -> float:
        """Effective rate (payload + CRC) / coded bits for budget ``e``."""
        return (self.tbs + CRC_BITS) / e


# URLLC transport block sizes, QPSK throughout.
_URLLC_TBS = (48, 64, 72, 104, 128, 160, 192, 256, 320, 432, 504, 640, 768, 888, 984)

MCS_TABLE: tuple[McsEntry, ...] = tuple(
    McsEntry(index=i, tbs=t) for i, t in enumerate(_URLLC_TBS)
)


def mcs_entry(mcs: int) -> McsEntry:
    if not 0 <= mcs < len(MCS_TABLE):
        raise ValueError(f"MCS index {mcs} out of range 0..{len(MCS_TABLE) - 1}")
    return MCS_TABLE[mcs]


def tbs_lookup(mcs: int) -> int:
    """Transport block size in bits for MCS index 0..14."""
    return mcs_entry(mcs).tbs


def n_info(n_re: int | float, r: float, q_m: int, v: int) -> float:
    """Information bit budget N_RE * R * Q_m * v (no quantization)."""
    if n_re <= 0 or q_m <= 0 or v <= 0:
        raise ValueError("n_re, q_m and v must be positive")
    if not 0.0 < r <= 1.0:
        raise ValueError(f"code rate must be in (0, 1], got {r}")
    return n_re * r * q_m * v


def pdsch_bit_capacity(n_pdsch_re: int, q_m: int = 2) -> int:
    """Coded-bit budget E for a mini-slot with ``n_pdsch_re`` data REs."""
    return n_pdsch_re * q_m
