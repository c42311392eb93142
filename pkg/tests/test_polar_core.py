import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from polarpsg.polar_core import (
    CodeConfig, bhattacharyya_parameters, construct_frozen, embed, encode, generator_matrix,
    generator_row, load_frozen_file, polar_transform, save_frozen_file,
)

from conftest import kron_encode, kron_power


def test_construct_trivial_cases():
    assert construct_frozen(2, 1, 0.5).frozen.tolist() == [1, 0]
    assert construct_frozen(4, 4, 0.5).frozen.tolist() == [0, 0, 0, 0]
    assert construct_frozen(4, 0, 0.5).frozen.tolist() == [1, 1, 1, 1]


def test_bhattacharyya_n8_hand_values():
    # Z = 0.5 -> (0.75, 0.25) -> (0.9375, 0.5625, 0.4375, 0.0625) -> ...
    expected = [0.99609375, 0.87890625, 0.80859375, 0.31640625,
                0.68359375, 0.19140625, 0.12109375, 0.00390625]
    assert np.allclose(bhattacharyya_parameters(8, 0.5), expected, rtol=0, atol=1e-15)
    cfg = construct_frozen(8, 4, 0.5)
    assert cfg.frozen.tolist() == [1, 1, 1, 0, 1, 0, 0, 0]
    assert cfg.frozen.sum() == 4


def test_construct_ties_freeze_lower_index():
    # Z = 1 makes every channel useless: all parameters tie at 1.0
    cfg = construct_frozen(8, 5, 1.0)
    assert cfg.frozen.tolist() == [1, 1, 1, 0, 0, 0, 0, 0]


@pytest.mark.parametrize("n,k", [(6, 2), (0, 0), (8, 9), (8, -1)])
def test_construct_rejects_bad_arguments(n, k):
    with pytest.raises(ValueError):
        construct_frozen(n, k)


def test_codeconfig_invariants():
    with pytest.raises(ValueError):
        CodeConfig(8, 4, [1, 1, 1, 0, 0, 0, 0, 0])
    with pytest.raises(ValueError):
        CodeConfig(12, 6, np.ones(12))
    with pytest.raises(ValueError):
        CodeConfig.from_frozen_indices(8, [0, 8])
    cfg = CodeConfig.from_frozen_indices(8, [0, 1, 2, 4])
    assert cfg.k == 4 and cfg.m == 3
    assert cfg.info_indices.tolist() == [3, 5, 6, 7]


def test_generator_row_examples():
    assert generator_row(2, 1).tolist() == [1, 1]
    assert generator_row(4, 0).tolist() == [1, 0, 0, 0]
    assert generator_row(4, 3).tolist() == [1, 1, 1, 1]
    with pytest.raises(IndexError):
        generator_row(4, 4)


@pytest.mark.parametrize("n", [2, 4, 8, 16, 32, 64])
def test_generator_matches_kronecker_power(n):
    g = kron_power(n)
    assert np.array_equal(generator_matrix(n), g)
    for i in range(n):
        assert np.array_equal(generator_row(n, i), g[i])


@pytest.mark.parametrize("n", [2, 4, 8, 16, 32, 64])
def test_lower_triangular_unit_diagonal(n):
    g = generator_matrix(n)
    assert np.all(np.diag(g) == 1)
    assert not np.any(np.triu(g, 1))


@pytest.mark.parametrize("n", [2, 4, 8, 16, 32, 64])
def test_encode_unit_vectors_give_rows(n):
    cfg = CodeConfig(n, n, np.zeros(n))
    for i in range(n):
        e = np.zeros(n, dtype=np.uint8)
        e[i] = 1
        assert np.array_equal(encode(cfg, e), generator_row(n, i))


def test_encode_examples():
    assert not encode(CodeConfig(8, 8, np.zeros(8)), np.zeros(8)).any()
    assert encode(CodeConfig(2, 2, np.zeros(2)), [0, 1]).tolist() == [1, 1]
    assert encode(CodeConfig(4, 4, np.zeros(4)), [0, 1, 0, 1]).tolist() == [0, 0, 1, 1]


def test_encode_rejects_bad_messages(code_8_4):
    with pytest.raises(ValueError):
        encode(code_8_4, np.zeros(4))
    u = np.zeros(8, dtype=np.uint8)
    u[0] = 1
    with pytest.raises(ValueError):
        encode(code_8_4, u)


@settings(max_examples=200, deadline=None)
@given(m=st.integers(1, 8), data=st.data())
def test_encode_is_linear(m, data):
    n = 1 << m
    bits = st.lists(st.integers(0, 1), min_size=n, max_size=n)
    u = np.array(data.draw(bits), dtype=np.uint8)
    v = np.array(data.draw(bits), dtype=np.uint8)
    assert np.array_equal(polar_transform(u ^ v), polar_transform(u) ^ polar_transform(v))
    assert np.array_equal(polar_transform(u), kron_encode(u))


def test_transform_is_involution(rng):
    u = rng.integers(0, 2, size=(50, 128), dtype=np.uint8)
    assert np.array_equal(polar_transform(polar_transform(u)), u)


@pytest.mark.parametrize("n", [4, 8, 16, 32, 64])
def test_aligned_row_blocks_are_constant(n):
    # row of the last bit of an aligned width-nc block is constant on aligned column blocks
    nc = 1
    while nc <= n:
        for b in range(n // nc):
            row = generator_row(n, b * nc + nc - 1).reshape(-1, nc)
            assert np.all(row == row[:, :1])
        nc *= 2


def test_embed(code_8_4):
    u = embed(code_8_4, [1, 0, 1, 1])
    assert u.tolist() == [0, 0, 0, 1, 0, 0, 1, 1]


def test_frozen_file_roundtrip(tmp_path, code_8_4):
    path = tmp_path / "f.txt"
    save_frozen_file(code_8_4, path)
    assert path.read_text().split() == ["8", "4", "0", "1", "2", "4"]
    assert load_frozen_file(path) == code_8_4


@pytest.mark.parametrize("text", ["8 4\n0 1 2\n", "8 4\n0 2 1 4\n", "8 4\n0 1 2 x\n", "8\n"])
def test_frozen_file_rejects_malformed(tmp_path, text):
    path = tmp_path / "bad.txt"
    path.write_text(text)
    with pytest.raises(ValueError):
        load_frozen_file(path)
