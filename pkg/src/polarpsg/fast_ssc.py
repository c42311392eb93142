"""
Constituent-code (fast-SSC) decoding and its cycle-latency model.

Subtrees whose frozen pattern is all-frozen (RATE0), all-information (RATE1),
single parity check (SPC, only the first bit frozen) or repetition (REP, only
the last bit free) are decoded in one shot instead of by tree traversal.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .polar_core import CodeConfig, as_bits, is_power_of_two, log2_exact, polar_transform
from .sc_reference import DecodeListener, DecodeResult, _check_finite, _f, _g


class NodeKind(str, Enum):
    RATE0 = "RATE0"
    RATE1 = "RATE1"
    SPC = "SPC"
    REP = "REP"
    MIXED = "MIXED"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Caps:
    """Size limits for constituent blocks; ``None`` means unlimited.

    ``max_spc=1`` disables SPC nodes (they need length >= 2). ``max_block``
    caps every kind, so ``max_block=1`` reproduces plain SC.
    """

    max_spc: int | None = None
    max_rep: int | None = None
    max_block: int | None = None

    def __post_init__(self):
        for name in ("max_spc", "max_rep", "max_block"):
            cap = getattr(self, name)
            if cap is not None and not is_power_of_two(cap):
                raise ValueError(f"{name} must be a power of two or None, got {cap}")

    def allows(self, kind: NodeKind, length: int) -> bool:
        if self.max_block is not None and length > self.max_block:
            return False
        if kind is NodeKind.SPC and self.max_spc is not None:
            return length <= self.max_spc
        if kind is NodeKind.REP and self.max_rep is not None:
            return length <= self.max_rep
        return True


NO_SPC = Caps(max_spc=1)
PLAIN_SC = Caps(max_block=1)


@dataclass(frozen=True)
class Block:
    start: int
    length: int
    kind: NodeKind

    @property
    def stop(self) -> int:
        return self.start + self.length

    @property
    def last(self) -> int:
        return self.start + self.length - 1


@dataclass(frozen=True)
class DecodeSchedule:
    n: int
    blocks: tuple[Block, ...]

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self):
        return len(self.blocks)

    def __post_init__(self):
        object.__setattr__(self, "_by_start", {b.start: b for b in self.blocks})

    def block_at(self, start: int, length: int) -> Block | None:
        blk = self._by_start.get(start)
        return blk if blk is not None and blk.length == length else None


def classify(frozen_sub) -> NodeKind:
    """Constituent-code kind of a frozen sub-mask.

    A length-2 ``[1, 0]`` mask is both SPC and REP; it is reported as REP
    since that decoder is cheaper (1 cycle vs 2) and gives the same result.
    """
    sub = as_bits(frozen_sub)
    if not is_power_of_two(sub.size):
        raise ValueError(f"sub-mask length must be a power of two, got {sub.size}")
    ones = int(sub.sum())
    if ones == sub.size:
        return NodeKind.RATE0
    if ones == 0:
        return NodeKind.RATE1
    if sub.size >= 2 and sub[-1] == 0 and ones == sub.size - 1:
        return NodeKind.REP
    if sub.size >= 2 and sub[0] == 1 and ones == 1:
        return NodeKind.SPC
    return NodeKind.MIXED


def build_schedule(cfg: CodeConfig, caps: Caps | None = None) -> DecodeSchedule:
    """Greedy top-down split of ``[0, n)`` into maximal constituent blocks."""
    caps = caps or Caps()
    frozen = cfg.frozen
    blocks = []

    def visit(start, length):
        kind = classify(frozen[start:start + length])
        if kind is not NodeKind.MIXED and caps.allows(kind, length):
            blocks.append(Block(start, length, kind))
            return
        half = length // 2
        visit(start, half)
        visit(start + half, half)

    visit(0, cfg.n)
    return DecodeSchedule(cfg.n, tuple(blocks))


def decode_rate0(llr) -> np.ndarray:
    llr = _check_finite(llr)
    return np.zeros(llr.shape, dtype=np.uint8)


def decode_rate1(llr) -> np.ndarray:
    llr = _check_finite(llr)
    return (llr < 0).astype(np.uint8)


def decode_spc(llr) -> np.ndarray:
    """Hard decisions with the least reliable bit flipped if parity is odd.

    Ties in ``|llr|`` flip the lowest index.
    """
    llr = _check_finite(llr)
    if llr.shape[-1] < 2:
        raise ValueError("SPC nodes need length >= 2")
    return _spc(llr)


def decode_rep(llr) -> np.ndarray:
    """Threshold the LLR sum and repeat the decision over the block."""
    llr = _check_finite(llr)
    if llr.shape[-1] < 2:
        raise ValueError("REP nodes need length >= 2")
    return _rep(llr)


def _spc(llr):
    hard = (llr < 0).astype(np.uint8)
    odd = np.bitwise_xor.reduce(hard, axis=-1).astype(bool)
    if np.any(odd):
        weakest = np.argmin(np.abs(llr), axis=-1)
        rows = np.flatnonzero(np.atleast_1d(odd))
        if hard.ndim == 1:
            hard[weakest] ^= 1
        else:
            hard[rows, weakest[rows]] ^= 1
    return hard


def _rep(llr):
    # fold halves so the sum is accumulated in the same order as SC's g(., ., 0) chain
    total = llr
    while total.shape[-1] > 1:
        half = total.shape[-1] // 2
        total = total[..., :half] + total[..., half:]
    bit = (total < 0).astype(np.uint8)
    return np.repeat(bit, llr.shape[-1], axis=-1)


_BLOCK_DECODERS = {
    NodeKind.RATE0: lambda llr: np.zeros(llr.shape, dtype=np.uint8),
    NodeKind.RATE1: lambda llr: (llr < 0).astype(np.uint8),
    NodeKind.SPC: _spc,
    NodeKind.REP: _rep,
}


def node_latency(kind: NodeKind, n_c: int) -> int:
    """Cycles to decode one constituent block of length ``n_c``."""
    kind = NodeKind(kind)
    m = log2_exact(n_c)
    if kind in (NodeKind.RATE0, NodeKind.RATE1):
        return 1
    if kind is NodeKind.SPC:
        return m + 1
    if kind is NodeKind.REP:
        return m
    raise ValueError("MIXED nodes have no one-shot latency")


def block_cycles(block: Block) -> int:
    # single-bit leaves are decided in the cycle of their parent's f/g, as in the 2n-2 SC count
    return 0 if block.length == 1 else node_latency(block.kind, block.length)


def schedule_latency(schedule: DecodeSchedule) -> int:
    """Total cycles: one per f and one per g at every traversed internal node, plus block costs.

    Traversed internal nodes form a full binary tree with ``len(blocks)``
    leaves, so there are ``len(blocks) - 1`` of them.
    """
    internal = len(schedule.blocks) - 1
    return 2 * internal + sum(block_cycles(b) for b in schedule.blocks)


def baseline_latency(n: int) -> int:
    """Plain tree SC: ``2n - 2`` cycles."""
    return 2 * n - 2


def _fast_node(llr, schedule, start, u_hat, listener):
    size = llr.shape[-1]
    blk = schedule.block_at(start, size)
    if blk is not None:
        beta = _BLOCK_DECODERS[blk.kind](llr)
        u_blk = polar_transform(beta) if size > 1 else beta.copy()
        u_hat[..., start:start + size] = u_blk
        if listener is not None:
            listener.block(start, blk.kind, beta.copy(), u_blk.copy())
        return beta
    half = size // 2
    a, b = llr[..., :half], llr[..., half:]
    beta_l = _fast_node(_f(a, b), schedule, start, u_hat, listener)
    if listener is not None:
        override = listener.feedback(log2_exact(half), start, beta_l.copy())
        if override is not None:
            beta_l = as_bits(override, half)
    beta_r = _fast_node(_g(a, b, beta_l), schedule, start + half, u_hat, listener)
    return np.concatenate([beta_l ^ beta_r, beta_r], axis=-1)


def fast_ssc_decode(cfg: CodeConfig, llr, caps: Caps | None = None,
                    listener: DecodeListener | None = None,
                    schedule: DecodeSchedule | None = None):
    """Decode with constituent-code shortcuts.

    Returns
    -------
    result : DecodeResult
        ``u_hat`` and the re-encoded ``x_hat``; batch inputs give batch outputs.
    latency : int
        Cycle count of the pruned tree under the per-node cost model.
    """
    llr = _check_finite(llr)
    if llr.shape[-1:] != (cfg.n,) or llr.ndim > 2:
        raise ValueError(f"expected LLRs of shape (n,) or (frames, n) with n={cfg.n}, got {llr.shape}")
    if listener is not None and llr.ndim != 1:
        raise ValueError("listeners are only supported for single frames")
    if schedule is None:
        schedule = build_schedule(cfg, caps)
    u_hat = np.zeros(llr.shape, dtype=np.uint8)
    x_hat = _fast_node(llr, schedule, 0, u_hat, listener)
    return DecodeResult(u_hat=u_hat, x_hat=x_hat), schedule_latency(schedule)
