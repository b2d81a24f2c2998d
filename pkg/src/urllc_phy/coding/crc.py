"""CRC-16 attachment for transport blocks (generator x^16 + x^12 + x^5 + 1)."""

import numba
import numpy as np

__all__ = ["CRC_LEN", "crc16", "crc16_attach", "crc16_check"]

CRC_LEN = 16
_POLY = 0x1021  # x^16 + x^12 + x^5 + 1, register seeded with zeros


@numba.njit(cache=True, nogil=True)
def _crc16_register(bits):
    reg = 0
    for i in range(bits.size):
        fb = (reg >> 15) ^ bits[i]
        reg = ((reg << 1) & 0xFFFF) ^ (_POLY if fb else 0)
    return reg


def crc16(payload: np.ndarray) -> np.ndarray:
    """16 parity bits of ``payload`` (MSB of the register first)."""
    payload = np.ascontiguousarray(payload, dtype=np.uint8)
    reg = _crc16_register(payload)
    return ((reg >> np.arange(15, -1, -1)) & 1).astype(np.uint8)


def crc16_attach(payload: np.ndarray) -> np.ndarray:
    """Append the CRC-16 parity bits to ``payload``."""
    payload = np.asarray(payload, dtype=np.uint8)
    if payload.size == 0:
        raise ValueError("cannot attach a CRC to an empty payload")
    return np.concatenate([payload, crc16(payload)])


def crc16_check(block: np.ndarray) -> bool:
    """True iff the trailing 16 bits of ``block`` match its payload CRC."""
    block = np.asarray(block, dtype=np.uint8)
    if block.size <= CRC_LEN:
        raise ValueError(f"block of {block.size} bits has no room for a {CRC_LEN}-bit CRC")
    return bool(np.array_equal(crc16(block[:-CRC_LEN]), block[-CRC_LEN:]))
