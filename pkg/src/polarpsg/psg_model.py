"""
Bit-exact functional model of shift-register partial-sum generators.

Two update rules share one register window ``R_0 .. R_{W-1}`` with
``W = n/2``:

* conventional (one decided bit per commit)::

      R_0 <- u * c[0]
      R_k <- R_{k-1} ^ (u * c[k])

* constituent-code (a whole block ``beta_c`` of length ``n_c`` per commit)::

      R_k <- beta_c[p(k)]                           for k <  n_c
      R_k <- R_{k-n_c} ^ (c[k] & beta_c[p(k)])      for k >= n_c
      p(k) = n_c - 1 - (k mod n_c)

``c`` is the generator row of the last bit covered by the commit. Values
shifted past ``R_{W-1}`` are dropped; they are never read again. After a
left subtree of size ``2**s`` completes, its partial sums sit reversed in
``R_0 .. R_{2**s - 1}``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace

import numpy as np

from .fast_ssc import Caps, DecodeSchedule, build_schedule, fast_ssc_decode
from .polar_core import CodeConfig, as_bits, generator_row, is_power_of_two, log2_exact
from .sc_reference import DecodeListener, oracle_partial_sums

log = logging.getLogger(__name__)


class PsgScheduleError(ValueError):
    """A commit or read arrived out of the order the generator supports."""


@dataclass(frozen=True)
class PsgState:
    n: int
    regs: np.ndarray
    commits: int = 0
    bits_consumed: int = 0

    @property
    def width(self) -> int:
        return self.n // 2


def psg_reset(cfg: CodeConfig | int) -> PsgState:
    n = cfg if isinstance(cfg, (int, np.integer)) else cfg.n
    log2_exact(n)
    return PsgState(n=int(n), regs=np.zeros(max(n // 2, 1), dtype=np.uint8))


def _check_row(state, row):
    row = as_bits(row)
    if row.shape != (state.n,):
        raise ValueError(f"generator row must have length {state.n}, got {row.shape}")
    return row


def psg_commit_bit(state: PsgState, u_hat: int, row) -> PsgState:
    """Absorb one decided bit (conventional shift-register rule)."""
    if state.bits_consumed >= state.n:
        raise PsgScheduleError("all n bits already committed")
    row = _check_row(state, row)
    u = int(u_hat) & 1
    w = state.width
    regs = np.empty_like(state.regs)
    regs[0] = u & row[0]
    regs[1:] = state.regs[:-1] ^ (u & row[1:w])
    return replace(state, regs=regs, bits_consumed=state.bits_consumed + 1,
                   commits=state.commits + 1)


def psg_commit_block(state: PsgState, beta_c, row) -> PsgState:
    """Absorb the partial sums of a whole constituent block in one step.

    ``row`` is the generator row of the block's last bit.
    """
    beta_c = as_bits(beta_c)
    n_c = beta_c.size
    w = state.width
    if beta_c.ndim != 1 or not is_power_of_two(n_c):
        raise ValueError(f"block length must be a power of two, got {beta_c.shape}")
    if n_c > w:
        raise PsgScheduleError(f"block of length {n_c} exceeds the {w}-register window")
    if state.bits_consumed % n_c:
        raise PsgScheduleError(
            f"block of length {n_c} cannot start at bit {state.bits_consumed}")
    if state.bits_consumed + n_c > state.n:
        raise PsgScheduleError("block runs past the end of the codeword")
    row = _check_row(state, row)
    k = np.arange(w)
    reversed_beta = beta_c[n_c - 1 - (k % n_c)]
    regs = np.empty_like(state.regs)
    regs[:n_c] = reversed_beta[:n_c]
    regs[n_c:] = state.regs[:w - n_c] ^ (row[n_c:w] & reversed_beta[n_c:])
    return replace(state, regs=regs, bits_consumed=state.bits_consumed + n_c,
                   commits=state.commits + 1)


def psg_read_block(state: PsgState, s: int) -> np.ndarray:
    """Partial sums of the just-completed left subtree of size ``2**s``, natural order."""
    size = 1 << s
    if size > state.width:
        raise PsgScheduleError(f"stage {s} is wider than the {state.width}-register window")
    done = state.bits_consumed
    if done == 0 or done % size or (done // size) % 2 == 0:
        raise PsgScheduleError(
            f"no left subtree of size {size} completes at bit {done}")
    return state.regs[size - 1::-1].copy()


@dataclass
class MaskReport:
    row: np.ndarray
    block_masks: np.ndarray
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def blockwise_mask_property(n: int, i: int, n_c: int) -> MaskReport:
    """Check that row ``i`` is constant over every aligned column block of width ``n_c``.

    ``i`` must be the last index of an aligned block of length ``n_c``. When
    the property holds the per-register mask collapses to one bit per block.
    """
    if not is_power_of_two(n_c) or n_c > n:
        raise ValueError(f"invalid block length {n_c} for n={n}")
    if (i + 1) % n_c:
        raise ValueError(f"row {i} is not the last bit of an aligned block of length {n_c}")
    row = generator_row(n, i)
    chunks = row.reshape(-1, n_c)
    violations = [b for b in range(chunks.shape[0]) if np.any(chunks[b] != chunks[b, 0])]
    return MaskReport(row=row, block_masks=chunks[:, 0].copy(), violations=violations)


def schedule_mask_report(cfg: CodeConfig, schedule: DecodeSchedule) -> list:
    """``(block, column-block)`` pairs violating the collapse for any block of a schedule."""
    bad = []
    for blk in schedule:
        rep = blockwise_mask_property(cfg.n, blk.last, blk.length)
        bad.extend((blk, v) for v in rep.violations)
    return bad


@dataclass
class RomImage:
    n: int
    rows: list

    @property
    def total_bits(self) -> int:
        return len(self.rows) * self.n


def rom_build(cfg: CodeConfig, schedule: DecodeSchedule) -> RomImage:
    """One stored generator row per block: the row of the block's last bit."""
    rows = [(blk.last, generator_row(cfg.n, blk.last)) for blk in schedule]
    rows.sort(key=lambda r: r[0])
    return RomImage(n=cfg.n, rows=rows)


def bits_to_hex(bits) -> str:
    """Hex string with index 0 as the most significant bit, zero-padded to a nibble."""
    bits = as_bits(bits)
    pad = (-bits.size) % 4
    padded = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)])
    nibbles = padded.reshape(-1, 4) @ np.array([8, 4, 2, 1])
    return "".join(f"{v:X}" for v in nibbles)


def hex_to_bits(text: str, length: int) -> np.ndarray:
    text = text.strip()
    if text.lower().startswith("0x"):
        text = text[2:]
    if len(text) != (length + 3) // 4:
        raise ValueError(f"expected {(length + 3) // 4} hex digits for {length} bits, got {len(text)}")
    try:
        values = [int(ch, 16) for ch in text]
    except ValueError as exc:
        raise ValueError(f"not a hex string: {text!r}") from exc
    bits = np.array([(v >> (3 - j)) & 1 for v in values for j in range(4)], dtype=np.uint8)
    if np.any(bits[length:]):
        raise ValueError("padding bits past the vector length must be zero")
    return bits[:length]


@dataclass
class TraceRecord:
    commit: int
    n_c: int
    i: int
    beta_c: str
    regs: str

    def as_dict(self) -> dict:
        return {"commit": self.commit, "n_c": self.n_c, "i": self.i,
                "beta_c": self.beta_c, "regs": self.regs}


class PsgChecker(DecodeListener):
    """Drives a PSG model from decoder events and checks every read against re-encoding.

    Attach to :func:`~polarpsg.fast_ssc.fast_ssc_decode` or
    :func:`~polarpsg.sc_reference.sc_decode` as the ``listener``. Every block
    the decoder resolves is committed (per bit with ``bitwise=True``); before
    each ``g`` evaluation the stage-``s`` read is compared with the decoder's
    own partial sums and with :func:`oracle_partial_sums` of the decided bits.

    ``fault`` is an optional ``(commit_index, register)`` pair; that register
    is flipped right after the given commit (negative testing).
    """

    def __init__(self, cfg: CodeConfig, bitwise: bool = False, drive: bool = False,
                 fault: tuple[int, int] | None = None):
        self.cfg = cfg
        self.bitwise = bitwise
        self.drive = drive
        self.fault = fault
        self.state = psg_reset(cfg)
        self.u_prefix = []
        self.trace: list[TraceRecord] = []
        self.reads = 0
        self.mismatches = []
        self.max_register_read = -1

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def block(self, start, kind, beta, u):
        n_c = beta.size
        if start != len(self.u_prefix):
            raise PsgScheduleError(f"block at {start} arrived after {len(self.u_prefix)} bits")
        self.u_prefix.extend(int(b) for b in u)
        if n_c == self.cfg.n:
            # a single block spanning the whole code never feeds a g computation
            return
        last = start + n_c - 1
        if self.bitwise:
            for j, bit in enumerate(u):
                self.state = psg_commit_bit(self.state, bit, generator_row(self.cfg.n, start + j))
        else:
            self.state = psg_commit_block(self.state, beta, generator_row(self.cfg.n, last))
        if self.fault is not None and self.fault[0] == len(self.trace):
            regs = self.state.regs.copy()
            regs[self.fault[1]] ^= 1
            self.state = replace(self.state, regs=regs)
        self.trace.append(TraceRecord(commit=len(self.trace), n_c=n_c, i=last,
                                      beta_c=bits_to_hex(beta), regs=bits_to_hex(self.state.regs)))

    def feedback(self, stage, start, beta_l):
        size = 1 << stage
        self.reads += 1
        self.max_register_read = max(self.max_register_read, size - 1)
        read = psg_read_block(self.state, stage)
        oracle = oracle_partial_sums(np.array(self.u_prefix, dtype=np.uint8), stage)
        if not (np.array_equal(read, oracle) and np.array_equal(read, beta_l)):
            log.debug("mismatch at stage %d, start %d", stage, start)
            self.mismatches.append((stage, start, read, oracle, beta_l))
        return read if self.drive else None


def check_frame(cfg: CodeConfig, llr, caps: Caps | None = None, bitwise: bool = False,
                schedule: DecodeSchedule | None = None, **kwargs) -> PsgChecker:
    """Decode one frame with fast-SSC while checking the PSG model; returns the checker."""
    checker = PsgChecker(cfg, bitwise=bitwise, **kwargs)
    if schedule is None:
        schedule = build_schedule(cfg, caps)
    fast_ssc_decode(cfg, llr, listener=checker, schedule=schedule)
    return checker
