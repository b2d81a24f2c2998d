"""Transport-block level composition of the coding chain."""

import numpy as np

from ..numerology import CRC_BITS, tbs_lookup
from .base_graph import LdpcParams, ldpc_params_select
from .crc import crc16_attach
from .decoder import DEFAULT_MAX_ITER, DecodeOutcome, ldpc_decode_minsum
from .encoder import ldpc_encode
from .rate_match import de_rate_match, rate_match

__all__ = ["params_for_mcs", "tb_encode", "tb_decode"]


def params_for_mcs(mcs: int) -> LdpcParams:
    return ldpc_params_select(tbs_lookup(mcs) + CRC_BITS)


def tb_encode(payload: np.ndarray, mcs: int, e: int) -> np.ndarray:
    """CRC attachment, encoding and rate matching for one transport block."""
    payload = np.asarray(payload, dtype=np.uint8)
    tbs = tbs_lookup(mcs)
    if payload.size != tbs:
        raise ValueError(f"MCS {mcs} carries {tbs} payload bits, got {payload.size}")
    params = params_for_mcs(mcs)
    msg = np.zeros(params.k, dtype=np.uint8)
    msg[:params.b] = crc16_attach(payload)
    return rate_match(ldpc_encode(msg, params), e, params)


def tb_decode(llrs: np.ndarray, mcs: int, max_iter: int = DEFAULT_MAX_ITER) -> DecodeOutcome:
    """Soft-input decode of one transport block; length of ``llrs`` is E."""
    llrs = np.asarray(llrs, dtype=np.float64)
    params = params_for_mcs(mcs)
    cw = de_rate_match(llrs, llrs.size, params)
    return ldpc_decode_minsum(cw, params, max_iter=max_iter)
