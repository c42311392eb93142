"""
Polar code construction, generator-matrix arithmetic and encoding.

All bit vectors use natural index order: ``u[0]`` is the first decoded bit,
``x[0]`` the first code bit, and row ``i`` of ``G = F^{(x)m}`` is the row
multiplied by ``u[i]``. No bit-reversal permutation is applied anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np


def is_power_of_two(n) -> bool:
    return isinstance(n, (int, np.integer)) and n >= 1 and (n & (n - 1)) == 0


def log2_exact(n: int) -> int:
    if not is_power_of_two(n):
        raise ValueError(f"n must be a power of two, got {n}")
    return int(n).bit_length() - 1


def as_bits(bits, length: int | None = None) -> np.ndarray:
    """Validate and convert a sequence of 0/1 values to a ``uint8`` array."""
    arr = np.asarray(bits)
    if arr.dtype == bool:
        arr = arr.astype(np.uint8)
    if arr.size and not np.all((arr == 0) | (arr == 1)):
        raise ValueError("bit vector may only contain 0 and 1")
    arr = arr.astype(np.uint8)
    if length is not None and arr.shape[-1:] != (length,):
        raise ValueError(f"expected bit vector of length {length}, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class CodeConfig:
    """An (n, k) polar code: block length, message length and frozen mask.

    ``frozen[i] == 1`` marks position ``i`` of ``u`` as frozen (always 0).
    """

    n: int
    k: int
    frozen: np.ndarray = field(repr=False)

    def __post_init__(self):
        log2_exact(self.n)
        if self.n < 2:
            raise ValueError("block length must be at least 2")
        mask = as_bits(self.frozen, self.n)
        if mask.ndim != 1:
            raise ValueError("frozen mask must be one-dimensional")
        if int(mask.sum()) != self.n - self.k:
            raise ValueError(
                f"frozen mask has {int(mask.sum())} ones, expected n - k = {self.n - self.k}")
        mask.setflags(write=False)
        object.__setattr__(self, "frozen", mask)

    @property
    def m(self) -> int:
        return log2_exact(self.n)

    @property
    def rate(self) -> float:
        return self.k / self.n

    @property
    def info_indices(self) -> np.ndarray:
        return np.flatnonzero(self.frozen == 0)

    @property
    def frozen_indices(self) -> np.ndarray:
        return np.flatnonzero(self.frozen)

    @classmethod
    def from_frozen_indices(cls, n: int, indices) -> "CodeConfig":
        mask = np.zeros(n, dtype=np.uint8)
        idx = np.asarray(list(indices), dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= n):
            raise ValueError("frozen index out of range")
        if len(set(idx.tolist())) != idx.size:
            raise ValueError("duplicate frozen index")
        mask[idx] = 1
        return cls(n, n - idx.size, mask)

    def __eq__(self, other):
        if not isinstance(other, CodeConfig):
            return NotImplemented
        return self.n == other.n and self.k == other.k and np.array_equal(self.frozen, other.frozen)

    def __hash__(self):
        return hash((self.n, self.k, self.frozen.tobytes()))


def bhattacharyya_parameters(n: int, design_param: float = 0.5) -> np.ndarray:
    """Bhattacharyya parameters of the ``n`` synthetic channels of a BEC(design_param).

    Uses ``Z(2i) = 2Z(i) - Z(i)^2`` and ``Z(2i+1) = Z(i)^2``, which for the
    natural-order ``F^{(x)m}`` puts the first channel operation in the most
    significant index bit.
    """
    m = log2_exact(n)
    if not 0.0 <= design_param <= 1.0:
        raise ValueError("BEC erasure probability must lie in [0, 1]")
    z = np.array([float(design_param)])
    for _ in range(m):
        nxt = np.empty(2 * z.size)
        nxt[0::2] = 2 * z - z * z
        nxt[1::2] = z * z
        z = nxt
    return z


def construct_frozen(n: int, k: int, design_param: float = 0.5) -> CodeConfig:
    """Freeze the ``n - k`` least reliable positions under the BEC recursion.

    Ties in the Bhattacharyya parameter freeze the lower index first.
    """
    log2_exact(n)
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    z = bhattacharyya_parameters(n, design_param)
    # stable sort on -Z keeps lower indices first among equal parameters
    order = np.argsort(-z, kind="stable")
    mask = np.zeros(n, dtype=np.uint8)
    mask[order[: n - k]] = 1
    return CodeConfig(n, k, mask)


def generator_entry(i: int, k: int) -> int:
    """``c_{i,k}`` of ``F^{(x)m}``: 1 iff column index ``k`` is a bit-submask of row ``i``."""
    return int((k & ~i) == 0)


def generator_row(n: int, i: int) -> np.ndarray:
    """Row ``i`` of ``F^{(x)m}`` computed from index bit patterns."""
    log2_exact(n)
    if not 0 <= i < n:
        raise IndexError(f"row index {i} out of range for n={n}")
    cols = np.arange(n)
    return ((cols & ~i) == 0).astype(np.uint8)


def generator_matrix(n: int) -> np.ndarray:
    """The full ``n x n`` matrix; meant for small ``n`` and for cross-checks."""
    rows = np.arange(n)[:, None]
    cols = np.arange(n)[None, :]
    return ((cols & ~rows) == 0).astype(np.uint8)


def polar_transform(u: np.ndarray) -> np.ndarray:
    """Compute ``u @ F^{(x)m}`` over GF(2) along the last axis.

    Accepts any leading batch shape. ``F^{(x)m}`` is its own inverse, so
    this maps codewords back to messages too.
    """
    x = np.array(u, dtype=np.uint8, copy=True)
    n = x.shape[-1]
    m = log2_exact(n)
    lead = x.shape[:-1]
    half = n // 2
    for _ in range(m):
        # one butterfly stage per index bit; stages act on distinct bits and commute
        v = x.reshape(*lead, n // (2 * half), 2, half)
        v[..., 0, :] ^= v[..., 1, :]
        half //= 2
    return x


def encode(cfg: CodeConfig, u) -> np.ndarray:
    """Encode a full-length message ``u`` (frozen positions must be 0)."""
    u = as_bits(u)
    if u.shape[-1:] != (cfg.n,):
        raise ValueError(f"message length must be {cfg.n}, got {u.shape[-1] if u.ndim else 0}")
    if np.any(u[..., cfg.frozen == 1]):
        raise ValueError("message has a nonzero frozen position")
    return polar_transform(u)


def embed(cfg: CodeConfig, info_bits) -> np.ndarray:
    """Place ``k`` information bits into a length-``n`` message with zeros at frozen positions."""
    info = as_bits(info_bits, cfg.k)
    u = np.zeros(info.shape[:-1] + (cfg.n,), dtype=np.uint8)
    u[..., cfg.info_indices] = info
    return u


def load_frozen_file(path) -> CodeConfig:
    """Read a frozen set: first line ``n k``, then ``n - k`` ascending frozen indices."""
    text = Path(path).read_text()
    tokens = text.split()
    if len(tokens) < 2:
        raise ValueError(f"{path}: missing 'n k' header")
    try:
        values = [int(t) for t in tokens]
    except ValueError as exc:
        raise ValueError(f"{path}: non-integer token") from exc
    n, k, indices = values[0], values[1], values[2:]
    if len(indices) != n - k:
        raise ValueError(f"{path}: expected {n - k} frozen indices, found {len(indices)}")
    if any(b <= a for a, b in zip(indices, indices[1:])):
        raise ValueError(f"{path}: frozen indices must be strictly ascending")
    return CodeConfig.from_frozen_indices(n, indices)


def save_frozen_file(cfg: CodeConfig, path) -> None:
    idx = " ".join(str(i) for i in cfg.frozen_indices)
    Path(path).write_text(f"{cfg.n} {cfg.k}\n{idx}\n")
