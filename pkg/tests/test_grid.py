import numpy as np
import pytest

from urllc_phy.grid import (
    CONTROL,
    PDSCH,
    RS,
    build_minislot_map,
    demap_pdsch,
    map_grid,
    pcfich_regs,
    rs_sequence,
)


def test_single_rb_rs_positions():
    gmap = build_minislot_map(1)
    assert gmap.rs_subcarriers(0).tolist() == [0, 6]
    assert gmap.rs_subcarriers(3).tolist() == [3, 9]


def test_symbol_roles():
    gmap = build_minislot_map(25)
    assert not np.any(gmap.classes[0] == PDSCH)           # Symb0: no data
    assert np.all(gmap.classes[1] == PDSCH)               # Symb1/2: data only
    assert np.all(gmap.classes[2] == PDSCH)
    assert not np.any(gmap.classes[3] == CONTROL)


def test_counts_at_25_rb():
    gmap = build_minislot_map(25)
    assert gmap.count(PDSCH) == 850 == 25 * (12 + 12 + 10)
    assert gmap.count(CONTROL) == 250
    assert gmap.count(RS) == 100
    assert gmap.pdsch_capacity_bits == 1700


@pytest.mark.parametrize("n_rb", [1, 5, 19, 25, 40])
def test_classification_partition(n_rb):
    gmap = build_minislot_map(n_rb)
    assert gmap.count(RS) + gmap.count(CONTROL) + gmap.count(PDSCH) == 48 * n_rb


def test_rs_pattern_modulo():
    gmap = build_minislot_map(25)
    assert np.all(gmap.rs_subcarriers(0) % 6 == 0)
    assert np.all(gmap.rs_subcarriers(3) % 6 == 3)


def test_pcfich_regs():
    regs = pcfich_regs(25)
    assert [r[0] // 12 for r in regs] == [0, 6, 12, 18]
    gmap = build_minislot_map(25)
    for reg in regs:
        assert reg.size == 4
        assert np.all(np.diff(reg) == 1)                  # consecutive REs
        assert np.all(gmap.classes[0, reg] == CONTROL)    # never on RS
    with pytest.raises(ValueError):
        pcfich_regs(10)


def test_rs_sequence_properties():
    a = rs_sequence(0, 0, 0, 50)
    b = rs_sequence(0, 0, 0, 50)
    c = rs_sequence(0, 3, 0, 50)
    assert np.allclose(np.abs(a), 1.0)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    with pytest.raises(ValueError):
        rs_sequence(0, 1, 0, 50)


def test_map_demap_roundtrip(rng):
    gmap = build_minislot_map(25)
    syms = (rng.normal(size=850) + 1j * rng.normal(size=850)) / np.sqrt(2)
    grid = map_grid(syms, gmap, slot=2, cell_id=17)
    assert np.array_equal(demap_pdsch(grid, gmap), syms)


def test_grid_power_budget(rng):
    gmap = build_minislot_map(25)
    syms = qpsk = (1.0 - 2.0 * rng.integers(0, 2, (850, 2)).astype(float)) @ np.array([1, 1j]) / np.sqrt(2)
    grid = map_grid(syms, gmap)
    expected = np.sum(np.abs(syms) ** 2) + gmap.count(RS) + gmap.count(CONTROL)
    assert np.sum(np.abs(grid) ** 2) == pytest.approx(expected)


def test_pdsch_order_is_symbol_major(rng):
    gmap = build_minislot_map(1)
    syms = np.arange(1, gmap.count(PDSCH) + 1).astype(np.complex128)
    grid = map_grid(syms, gmap)
    # first 12 symbols land on Symb1 in ascending subcarrier order
    assert np.array_equal(grid[1], syms[:12])
    assert np.array_equal(grid[2], syms[12:24])


def test_map_grid_length_check(rng):
    gmap = build_minislot_map(25)
    with pytest.raises(ValueError):
        map_grid(np.zeros(849, dtype=np.complex128), gmap)
    with pytest.raises(ValueError):
        demap_pdsch(np.zeros((4, 299), dtype=np.complex128), gmap)


def test_demap_extraction_stable(rng):
    gmap = build_minislot_map(25)
    syms = rng.normal(size=850) + 1j * rng.normal(size=850)
    grid = map_grid(syms, gmap)
    assert np.array_equal(demap_pdsch(grid, gmap), demap_pdsch(grid, gmap))
