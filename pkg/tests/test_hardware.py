import math

import pytest

from polarpsg.hardware import (
    DelayModel, PsgMode, comparison_table, critical_path, mux_network_report, resource_report,
    shifter_report,
)


def test_mux_network():
    rep = mux_network_report(1024)
    assert rep.mux_count == 512 * 9 == 4608
    assert mux_network_report(4).mux_count == 2
    assert rep.select_bits[5] == 0b101
    assert rep.select_string(5) == "0101"
    assert sorted(rep.select_bits) == list(range(10))


def test_shifter():
    assert (shifter_report(1024).mux_count, shifter_report(1024).decoder_k) == (4599, 4)
    assert (shifter_report(4).mux_count, shifter_report(4).decoder_k) == (1, 1)
    assert (shifter_report(16).mux_count, shifter_report(16).decoder_k) == (21, 2)
    assert shifter_report(16).shift_amounts == (1, 2, 4, 8)


@pytest.mark.parametrize("n", [0, 2, 6])
def test_small_or_invalid_n(n):
    with pytest.raises(ValueError):
        mux_network_report(n)
    with pytest.raises(ValueError):
        resource_report(n)


def test_critical_path():
    unit = DelayModel()
    assert critical_path(1024, unit, PsgMode.SR_CB_PSG) == 6
    assert critical_path(4, unit, PsgMode.SR_CB_PSG) == 3
    for n in (4, 64, 4096):
        assert critical_path(n, unit, PsgMode.SR_PSG) == 2
    d = DelayModel(d_mux=0.5, d_and=0.2, d_xor=0.3)
    assert critical_path(1024, d, "SR_CB_PSG") == pytest.approx(2.5)
    with pytest.raises(ValueError):
        DelayModel(d_mux=-1)


def test_resource_report():
    assert resource_report(1024).as_dict() == {
        "dff": 512, "mux": 9207, "xor": 511, "and": 512, "rom_bits": 104858}
    r4 = resource_report(4)
    assert (r4.dff, r4.mux, r4.xor, r4.and_g) == (2, 3, 1, 2)
    sr = resource_report(1024, PsgMode.SR_PSG)
    assert (sr.dff, sr.mux, sr.xor, sr.and_g) == (1024, None, 1022, 512)
    fb = resource_report(16, PsgMode.FB_PSG)
    assert (fb.dff, fb.mux, fb.xor) == (21, 14, 7)


def test_mux_totals_consistent():
    n = 4
    while n <= 4096:
        total = mux_network_report(n).mux_count + shifter_report(n).mux_count
        assert total == resource_report(n).mux
        assert resource_report(n).rom_bits == math.ceil(n * n / 10)
        n *= 2


def test_comparison_table_rows():
    rows = comparison_table(1024)
    assert [r["design"] for r in rows] == ["SR_PSG", "SR_CB_PSG", "FB_PSG"]
    assert rows[1]["critical_path"] == 6
