"""
Reference successive-cancellation decoder and the re-encoding partial-sum oracle.

LLR convention: a positive value means bit 0 is more likely. The kernels are
the hardware min-sum pair

    f(a, b) = sign(a) sign(b) min(|a|, |b|)
    g(a, b, beta) = b + (1 - 2 beta) a

with ``sign(0) = +1`` and the hard decision ``h(alpha) = 0 if alpha >= 0``.

The decoders accept a single frame of shape ``(n,)`` or a batch of shape
``(frames, n)``; batches share the frozen mask so the tree walk is the same
for every row.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .polar_core import CodeConfig, as_bits, log2_exact, polar_transform


class DecodeListener:
    """Hooks called by the decoders while walking the tree (single-frame only).

    ``block`` fires whenever a subtree is resolved in one shot: a leaf in
    plain SC, a constituent code in fast-SSC. ``feedback`` fires right before
    a ``g`` evaluation, with the left sibling's partial sums.
    """

    def block(self, start: int, kind, beta: np.ndarray, u: np.ndarray) -> None:
        pass

    def feedback(self, stage: int, start: int, beta_l: np.ndarray) -> np.ndarray | None:
        """Return an override for ``beta_l`` or ``None`` to keep the decoder's own."""
        return None


@dataclass
class DecodeResult:
    u_hat: np.ndarray
    x_hat: np.ndarray


def _check_finite(values):
    arr = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("soft values must be finite")
    return arr


def hard_decision(alpha):
    """0 where ``alpha >= 0``, 1 otherwise (scalar or array)."""
    arr = _check_finite(alpha)
    out = (arr < 0).astype(np.uint8)
    return int(out) if out.ndim == 0 else out


def _sign(a):
    return np.where(a >= 0, 1.0, -1.0)


def _f(a, b):
    return _sign(a) * _sign(b) * np.minimum(np.abs(a), np.abs(b))


def _g(a, b, beta):
    return b + (1.0 - 2.0 * beta) * a


def f_op(a, b):
    """Min-sum check-node update (left child LLR)."""
    a, b = _check_finite(a), _check_finite(b)
    out = _f(a, b)
    return float(out) if out.ndim == 0 else out


def g_op(a, b, beta):
    """Variable-node update (right child LLR) using the left sibling's partial sum."""
    a, b = _check_finite(a), _check_finite(b)
    beta = as_bits(beta)
    out = _g(a, b, beta)
    return float(out) if out.ndim == 0 else out


def combine(beta_l, beta_r) -> np.ndarray:
    """Merge sibling partial sums: ``[beta_l ^ beta_r, beta_r]``."""
    beta_l, beta_r = as_bits(beta_l), as_bits(beta_r)
    if beta_l.shape != beta_r.shape:
        raise ValueError(f"partial-sum lengths differ: {beta_l.shape} vs {beta_r.shape}")
    return np.concatenate([beta_l ^ beta_r, beta_r], axis=-1)


def oracle_partial_sums(u_hat_prefix, s: int) -> np.ndarray:
    """Partial sums of the last ``2**s`` decided bits, by re-encoding them.

    This is the feedback that ``g`` needs at stage ``s`` once a left subtree
    of size ``2**s`` has been decided.
    """
    prefix = as_bits(u_hat_prefix)
    size = 1 << s
    if prefix.ndim != 1 or prefix.size == 0 or prefix.size % size:
        raise ValueError(f"prefix of length {prefix.size} is not aligned to 2**{s}")
    return polar_transform(prefix[-size:])


def _sc_node(llr, frozen, start, u_hat, listener):
    size = llr.shape[-1]
    if size == 1:
        if frozen[start]:
            beta = np.zeros_like(llr, dtype=np.uint8)
        else:
            beta = (llr < 0).astype(np.uint8)
        u_hat[..., start] = beta[..., 0]
        if listener is not None:
            listener.block(start, "RATE0" if frozen[start] else "RATE1", beta.copy(), beta.copy())
        return beta
    half = size // 2
    a, b = llr[..., :half], llr[..., half:]
    beta_l = _sc_node(_f(a, b), frozen, start, u_hat, listener)
    if listener is not None:
        override = listener.feedback(log2_exact(half), start, beta_l.copy())
        if override is not None:
            beta_l = as_bits(override, half)
    beta_r = _sc_node(_g(a, b, beta_l), frozen, start + half, u_hat, listener)
    return np.concatenate([beta_l ^ beta_r, beta_r], axis=-1)


def sc_decode(cfg: CodeConfig, llr, listener: DecodeListener | None = None) -> DecodeResult:
    """Depth-first SC decoding of one frame or a batch of frames."""
    llr = _check_finite(llr)
    if llr.shape[-1:] != (cfg.n,) or llr.ndim > 2:
        raise ValueError(f"expected LLRs of shape (n,) or (frames, n) with n={cfg.n}, got {llr.shape}")
    if listener is not None and llr.ndim != 1:
        raise ValueError("listeners are only supported for single frames")
    u_hat = np.zeros(llr.shape, dtype=np.uint8)
    x_hat = _sc_node(llr, cfg.frozen, 0, u_hat, listener)
    return DecodeResult(u_hat=u_hat, x_hat=x_hat)
