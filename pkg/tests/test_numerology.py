import pytest

from urllc_phy.numerology import (
    MCS_TABLE,
    MiniSlotConfig,
    OfdmConfig,
    n_info,
    tbs_lookup,
)

TABLE_I_URLLC = [48, 64, 72, 104, 128, 160, 192, 256, 320, 432, 504, 640, 768, 888, 984]


def test_tbs_lookup_reference_points():
    assert tbs_lookup(0) == 48
    assert tbs_lookup(9) == 432
    assert tbs_lookup(14) == 984


def test_full_table_and_modulation():
    assert [m.tbs for m in MCS_TABLE] == TABLE_I_URLLC
    assert all(m.modulation_order == 2 for m in MCS_TABLE)
    assert all(m.layers == 1 for m in MCS_TABLE)


def test_tbs_strictly_increasing():
    tbs = [tbs_lookup(i) for i in range(15)]
    assert all(a < b for a, b in zip(tbs, tbs[1:]))


@pytest.mark.parametrize("mcs", [-1, 15, 100])
def test_tbs_lookup_range_error(mcs):
    with pytest.raises(ValueError):
        tbs_lookup(mcs)


def test_effective_rate_below_one():
    # E = 2 * 850 PDSCH REs at 25 RB
    for m in MCS_TABLE:
        assert m.tbs + 16 <= 1700
        assert m.code_rate(1700) < 1.0


def test_n_info_examples():
    assert n_info(100, 0.5, 2, 1) == pytest.approx(100.0)
    assert n_info(850, 1.0, 2, 1) == pytest.approx(1700.0)
    assert n_info(850, 0.1172, 2, 1) == pytest.approx(199.24)


def test_n_info_rejects_bad_inputs():
    with pytest.raises(ValueError):
        n_info(0, 0.5, 2, 1)
    with pytest.raises(ValueError):
        n_info(100, 0.0, 2, 1)
    with pytest.raises(ValueError):
        n_info(100, 1.5, 2, 1)


def test_ofdm_config_defaults():
    cfg = OfdmConfig()
    assert cfg.occupied_subcarriers == 300
    assert cfg.sample_rate == pytest.approx(7.68e6)
    assert cfg.symbol_len(0) == 552
    assert cfg.symbol_len(3) == 548


def test_ofdm_config_validation():
    with pytest.raises(ValueError):
        OfdmConfig(n_rb=0)
    with pytest.raises(ValueError):
        OfdmConfig(n_rb=43)  # 516 subcarriers + DC > 512
    with pytest.raises(ValueError):
        OfdmConfig(cp_first=0)


def test_minislot_shape_is_fixed():
    cfg = MiniSlotConfig()
    assert cfg.data_symbols == 4
    assert cfg.tx_unit_symbols == 14
    with pytest.raises(ValueError):
        MiniSlotConfig(data_symbols=7)
