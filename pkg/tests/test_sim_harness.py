import io
import math

import numpy as np
import pytest

from polarpsg.fast_ssc import NO_SPC
from polarpsg.polar_core import construct_frozen
from polarpsg.sim_harness import (
    LARGE_LLR, PUBLISHED_N1024, ChannelParams, bpsk_awgn, decode_batch, format_latency_table,
    frame_rng, latency_table, monte_carlo, q_function, simulate_frames, sweep, write_rows,
)


def test_channel_params():
    p = ChannelParams(0.0, 0.5)
    assert p.sigma2 == pytest.approx(1.0)
    assert ChannelParams(math.inf).sigma2 == 0.0
    with pytest.raises(ValueError):
        ChannelParams(1.0, 0.0)


def test_bpsk_signs_and_scale():
    rng = np.random.default_rng(0)
    out = bpsk_awgn(np.array([0, 1]), ChannelParams(math.inf), rng)
    assert out.tolist() == [LARGE_LLR, -LARGE_LLR]

    class Silent:
        def standard_normal(self, shape):
            return np.zeros(shape)

    p = ChannelParams(3.0, 0.5)
    assert bpsk_awgn(np.array([1]), p, Silent())[0] == pytest.approx(-2 / p.sigma2)


def test_llr_mean_statistical():
    p = ChannelParams(1.0, 0.5)
    llr = bpsk_awgn(np.zeros(100_000, dtype=np.uint8), p, np.random.default_rng(5))
    # LLR ~ N(2/s2, 4/s2)
    se = math.sqrt(4 / p.sigma2) / math.sqrt(llr.size)
    assert abs(llr.mean() - 2 / p.sigma2) < 3 * se


def test_frames_replay_independently():
    cfg = construct_frozen(32, 16)
    p = ChannelParams(2.0, 0.5, seed=9)
    u_all, x_all, llr_all = simulate_frames(cfg, p, 0, 10)
    u_one, _, llr_one = simulate_frames(cfg, p, 7, 1)
    assert np.array_equal(u_all[7], u_one[0])
    assert np.array_equal(llr_all[7], llr_one[0])
    assert not u_all[:, cfg.frozen == 1].any()
    a = frame_rng(1, 2).random(3)
    assert np.array_equal(a, frame_rng(1, 2).random(3))


def test_noiseless_has_no_errors():
    cfg = construct_frozen(64, 32)
    st = monte_carlo(cfg, "fast-ssc", ChannelParams(math.inf, 0.5), min_frames=200,
                     min_errors=0, batch=100)
    assert st.frames == 200 and st.frame_errors == 0 and st.bit_errors == 0
    assert st.avg_latency < 2 * 64 - 2


def test_monte_carlo_is_deterministic_across_workers():
    cfg = construct_frozen(64, 32)
    p = ChannelParams(1.5, 0.5, seed=3)
    runs = [monte_carlo(cfg, "sc", p, min_frames=300, min_errors=40, batch=100, workers=w)
            for w in (1, 1, 4)]
    assert runs[0] == runs[1] == runs[2]
    assert runs[0].frame_errors >= 40 and runs[0].frame_errors <= runs[0].frames
    assert runs[0].bit_errors <= runs[0].frames * cfg.k


def test_sc_and_no_spc_agree_frame_by_frame():
    cfg = construct_frozen(128, 64)
    _, _, llr = simulate_frames(cfg, ChannelParams(2.0, 0.5, seed=11), 0, 300)
    a, _ = decode_batch(cfg, llr, "sc")
    b, _ = decode_batch(cfg, llr, "fast-ssc", NO_SPC)
    assert np.array_equal(a, b)


def test_fer_decreases_with_snr():
    cfg = construct_frozen(64, 32)
    rows = sweep(cfg, "fast-ssc", [1.0, 2.5, 4.0], seed=1, min_frames=2000, min_errors=0,
                 max_frames=2000, batch=1000)
    fers = [r.fer for r in rows]
    assert fers[0] > fers[1] > fers[2]


def test_uncoded_ber_near_theory():
    cfg = construct_frozen(1024, 1024)
    st = monte_carlo(cfg, "uncoded", ChannelParams(4.0, 1.0, seed=2), min_frames=200,
                     min_errors=0, max_frames=200, batch=50)
    theory = q_function(math.sqrt(2 * 10 ** 0.4))
    assert st.info_bits_per_frame == 1024
    assert abs(st.ber - theory) / theory < 0.1


def test_write_rows_csv_and_jsonl():
    cfg = construct_frozen(16, 8)
    rows = sweep(cfg, "sc", [3.0], min_frames=50, min_errors=0, max_frames=50, batch=50)
    buf = io.StringIO()
    write_rows(rows, buf, "csv")
    header = buf.getvalue().splitlines()[0]
    assert header == "ebn0_db,rate,decoder,frames,ber,fer,avg_latency"
    buf = io.StringIO()
    write_rows(rows, buf, "jsonl")
    assert buf.getvalue().count("\n") == 1
    with pytest.raises(ValueError):
        write_rows(rows, io.StringIO(), "xml")


def test_latency_table_rows():
    rows = latency_table(64, [1.0, 0.5])
    assert rows[0].latency == 1
    assert rows[0].reduction_pct == pytest.approx(100 * (2 * 64 - 3) / (2 * 64 - 2))
    text = format_latency_table(rows, 64)
    assert "767" in text and "263" in text


def test_published_reference_values():
    t = PUBLISHED_N1024
    for lat, red in zip(t["latency"], t["reduction_pct"]):
        assert 100 * (t["baseline"] - lat) / t["baseline"] == pytest.approx(red, abs=0.05)
