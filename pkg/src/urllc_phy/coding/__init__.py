"""Transport-block channel coding: CRC, lifted base-graph-2 encode/decode,
circular-buffer rate matching."""

from .base_graph import (
    LIFTING_SETS,
    LIFTING_SIZES,
    BaseGraph,
    LdpcParams,
    ldpc_params_select,
    load_base_graph,
)
from .crc import CRC_LEN, crc16, crc16_attach, crc16_check
from .decoder import DEFAULT_MAX_ITER, MINSUM_ALPHA, DecodeOutcome, ldpc_decode_minsum
from .encoder import ldpc_encode, ldpc_encode_full
from .rate_match import FILLER_LLR, CodewordLlr, de_rate_match, rate_match
from .transport import params_for_mcs, tb_decode, tb_encode

__all__ = [
    "LIFTING_SETS",
    "LIFTING_SIZES",
    "BaseGraph",
    "LdpcParams",
    "ldpc_params_select",
    "load_base_graph",
    "CRC_LEN",
    "crc16",
    "crc16_attach",
    "crc16_check",
    "DEFAULT_MAX_ITER",
    "MINSUM_ALPHA",
    "DecodeOutcome",
    "ldpc_decode_minsum",
    "ldpc_encode",
    "ldpc_encode_full",
    "FILLER_LLR",
    "CodewordLlr",
    "de_rate_match",
    "rate_match",
    "params_for_mcs",
    "tb_decode",
    "tb_encode",
]
