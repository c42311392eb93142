import sys
import numpy as np
import pytest

from polarpsg.polar_core import CodeConfig, construct_frozen

KERNEL = np.array([[1, 0], [1, 1]], dtype=np.int64)


def kron_power(n):
    """F^{(x)m} by repeated np.kron, independent of the bit-pattern shortcut."""
    g = np.array([[1]], dtype=np.int64)
    while g.shape[0] < n:
        g = np.kron(g, KERNEL)
    return g


def kron_encode(u):
    u = np.asarray(u, dtype=np.int64)
    return (u @ kron_power(u.shape[-1]) % 2).astype(np.uint8)


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


@pytest.fixture
def code_8_4():
    # frozen {0, 1, 2, 4}: REP(4) followed by SPC(4)
    return CodeConfig.from_frozen_indices(8, [0, 1, 2, 4])


def random_code(rng, n):
    k = int(rng.integers(0, n + 1))
    frozen = np.zeros(n, dtype=np.uint8)
    frozen[rng.choice(n, size=n - k, replace=False)] = 1
    return CodeConfig(n, k, frozen)


def half_rate(n):
    return construct_frozen(n, n // 2)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
