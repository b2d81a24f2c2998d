import numpy as np
import pytest

from urllc_phy.coding import (
    FILLER_LLR,
    de_rate_match,
    ldpc_encode,
    params_for_mcs,
    rate_match,
)
from urllc_phy.coding.base_graph import PUNCTURED_COLS


def encoded_block(mcs, rng):
    params = params_for_mcs(mcs)
    msg = np.zeros(params.k, dtype=np.uint8)
    msg[:params.b] = rng.integers(0, 2, params.b)
    return params, ldpc_encode(msg, params)


def filler_mask(params):
    start, stop = params.filler_range
    off = PUNCTURED_COLS * params.z_c
    mask = np.zeros(params.n, dtype=bool)
    mask[start - off: stop - off] = True
    return mask


def test_single_pass_is_codeword_minus_fillers(rng):
    params, cw = encoded_block(5, rng)
    e = params.n - params.filler_count
    assert np.array_equal(rate_match(cw, e, params), cw[~filler_mask(params)])


def test_two_passes_repeat(rng):
    params, cw = encoded_block(5, rng)
    one = params.n - params.filler_count
    out = rate_match(cw, 2 * one, params)
    assert np.array_equal(out[:one], out[one:])


def test_mcs0_repetition_count(rng):
    # E=1700 over a 504-bit buffer: every position comes out at least 3 times
    params, cw = encoded_block(0, rng)
    assert params.n == 550 and params.filler_count == 46
    positions = np.tile(np.nonzero(~filler_mask(params))[0], 4)[:1700]
    counts = np.bincount(positions, minlength=params.n)
    assert counts[~filler_mask(params)].min() >= 3
    assert counts[filler_mask(params)].max() == 0
    assert 1700 // (550 - 46) == 3


def test_de_rate_match_accumulates(rng):
    params, _ = encoded_block(0, rng)
    one = params.n - params.filler_count
    lam = 0.7
    cw_llr = de_rate_match(np.full(3 * one, lam), 3 * one, params)
    nonfiller = cw_llr.llr[~filler_mask(params)]
    assert np.allclose(nonfiller, 3 * lam)
    assert np.all(cw_llr.llr[filler_mask(params)] == FILLER_LLR)


def test_hard_value_roundtrip_recovers_sign_pattern(rng):
    params, cw = encoded_block(9, rng)
    e = 1700
    tx = rate_match(cw, e, params)
    cw_llr = de_rate_match(1.0 - 2.0 * tx.astype(np.float64), e, params)
    seen = np.zeros(params.n, dtype=bool)
    seen[np.tile(np.nonzero(~filler_mask(params))[0], 2)[:e]] = True
    bipolar = 1.0 - 2.0 * cw.astype(np.float64)
    assert np.all(np.sign(cw_llr.llr[seen]) == np.sign(bipolar[seen]))


def test_length_validation(rng):
    params, cw = encoded_block(0, rng)
    with pytest.raises(ValueError):
        rate_match(cw[:-1], 100, params)
    with pytest.raises(ValueError):
        rate_match(cw, 0, params)
    with pytest.raises(ValueError):
        de_rate_match(np.zeros(10), 11, params)
