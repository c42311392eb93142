"""
BPSK/AWGN channel simulation, Monte-Carlo error counting and latency tables.

Every frame draws its message and noise from its own Philox stream keyed by
``(seed, frame)``, so any frame can be replayed on its own and results do not
depend on how frames are batched or spread over threads.
"""

from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .fast_ssc import Caps, baseline_latency, build_schedule, fast_ssc_decode, schedule_latency
from .polar_core import CodeConfig, construct_frozen, polar_transform
from .sc_reference import sc_decode

LARGE_LLR = 1e6

DECODERS = ("sc", "fast-ssc", "uncoded")

# Latencies for n = 1024 reported against a 767-cycle conventional decoder from
# a different architecture; kept for side-by-side printing only.
PUBLISHED_N1024 = {
    "baseline": 767,
    "rates": (0.2, 0.35, 0.5, 0.65, 0.8),
    "latency": (263, 298, 266, 200, 160),
    "reduction_pct": (65.7, 61.1, 65.3, 73.9, 79.1),
}


@dataclass(frozen=True)
class ChannelParams:
    ebn0_db: float
    rate: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.rate <= 1:
            raise ValueError(f"rate must lie in (0, 1], got {self.rate}")

    @property
    def sigma2(self) -> float:
        if math.isinf(self.ebn0_db) and self.ebn0_db > 0:
            return 0.0
        return 1.0 / (2.0 * self.rate * 10 ** (self.ebn0_db / 10))


@dataclass
class TrialStats:
    frames: int = 0
    bit_errors: int = 0
    frame_errors: int = 0
    total_latency_cycles: int = 0
    info_bits_per_frame: int = 0

    @property
    def ber(self) -> float:
        total = self.frames * self.info_bits_per_frame
        return self.bit_errors / total if total else float("nan")

    @property
    def fer(self) -> float:
        return self.frame_errors / self.frames if self.frames else float("nan")

    @property
    def avg_latency(self) -> float:
        return self.total_latency_cycles / self.frames if self.frames else float("nan")


def frame_rng(seed: int, frame: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, frame])))


def bpsk_awgn(x, p: ChannelParams, rng: np.random.Generator) -> np.ndarray:
    """Map bits to ``1 - 2x``, add Gaussian noise, return channel LLRs ``2r / sigma^2``."""
    x = np.asarray(x)
    s = 1.0 - 2.0 * x
    sigma2 = p.sigma2
    if sigma2 == 0.0:
        return s * LARGE_LLR
    r = s + math.sqrt(sigma2) * rng.standard_normal(x.shape)
    return 2.0 * r / sigma2


def simulate_frames(cfg: CodeConfig, p: ChannelParams, first: int, count: int):
    """Messages, codewords and LLRs for frames ``first .. first + count - 1``."""
    u = np.zeros((count, cfg.n), dtype=np.uint8)
    llr = np.empty((count, cfg.n))
    info = cfg.info_indices
    for j in range(count):
        rng = frame_rng(p.seed, first + j)
        u[j, info] = rng.integers(0, 2, size=info.size, dtype=np.uint8)
        llr[j] = bpsk_awgn(polar_transform(u[j]), p, rng)
    return u, polar_transform(u), llr


def decode_batch(cfg: CodeConfig, llr, decoder: str, caps: Caps | None = None):
    """Decode a batch; returns ``(u_hat, latency_per_frame)``."""
    if decoder == "sc":
        return sc_decode(cfg, llr).u_hat, baseline_latency(cfg.n)
    if decoder == "fast-ssc":
        res, latency = fast_ssc_decode(cfg, llr, caps)
        return res.u_hat, latency
    if decoder == "uncoded":
        # no decoding: hard decisions on the channel bits, mapped back to messages
        return polar_transform((np.asarray(llr) < 0).astype(np.uint8)), 0
    raise ValueError(f"unknown decoder {decoder!r}; choose from {DECODERS}")


def _run_chunk(cfg, decoder, p, caps, first, count):
    u, x, llr = simulate_frames(cfg, p, first, count)
    if decoder == "uncoded":
        errs = (llr < 0) != x
        latency = 0
    else:
        u_hat, latency = decode_batch(cfg, llr, decoder, caps)
        errs = (u_hat != u)[:, cfg.info_indices]
    per_frame = errs.sum(axis=1)
    return int(per_frame.sum()), int(np.count_nonzero(per_frame)), latency * count


def monte_carlo(cfg: CodeConfig, decoder: str, p: ChannelParams, min_frames: int = 1000,
                min_errors: int = 100, caps: Caps | None = None, batch: int = 500,
                max_frames: int | None = None, workers: int = 1) -> TrialStats:
    """Run frames in batches until both ``min_frames`` and ``min_errors`` are reached.

    ``max_frames`` bounds the run when errors are rare. For ``decoder="uncoded"``
    errors are counted over all ``n`` channel bits. Results depend only on
    ``(seed, batch)``, never on ``workers``.
    """
    if decoder not in DECODERS:
        raise ValueError(f"unknown decoder {decoder!r}; choose from {DECODERS}")
    if max_frames is None:
        max_frames = max(min_frames, 100 * batch)
    stats = TrialStats(info_bits_per_frame=cfg.n if decoder == "uncoded" else cfg.k)

    def done():
        return stats.frames >= max_frames or (
            stats.frames >= min_frames and stats.frame_errors >= min_errors)

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        first = 0
        while not done():
            starts = []
            for _ in range(max(1, workers)):
                if first >= max_frames:
                    break
                starts.append(first)
                first += batch
            futures = [pool.submit(_run_chunk, cfg, decoder, p, caps, s,
                                   min(batch, max_frames - s)) for s in starts]
            for s, fut in zip(starts, futures):
                if done():
                    fut.cancel()
                    continue
                bit_err, frame_err, cycles = fut.result()
                stats.frames += min(batch, max_frames - s)
                stats.bit_errors += bit_err
                stats.frame_errors += frame_err
                stats.total_latency_cycles += cycles
    return stats


def uncoded_ber(ebn0_db: float, n_bits: int, seed: int = 0, frame_bits: int = 1 << 16) -> float:
    """Bit error rate of uncoded BPSK over ``n_bits`` (rounded up to whole frames)."""
    frames = -(-n_bits // frame_bits)
    cfg = CodeConfig(frame_bits, frame_bits, np.zeros(frame_bits, dtype=np.uint8))
    stats = monte_carlo(cfg, "uncoded", ChannelParams(ebn0_db, 1.0, seed),
                        min_frames=frames, min_errors=0, batch=1, max_frames=frames)
    return stats.ber


def q_function(x: float) -> float:
    return 0.5 * math.erfc(x / math.sqrt(2))


@dataclass
class SweepRow:
    ebn0_db: float
    rate: float
    decoder: str
    frames: int
    ber: float
    fer: float
    avg_latency: float


def sweep(cfg: CodeConfig, decoder: str, ebn0_list, seed: int = 0, **kwargs) -> list[SweepRow]:
    rows = []
    for ebn0 in ebn0_list:
        st = monte_carlo(cfg, decoder, ChannelParams(float(ebn0), cfg.rate, seed), **kwargs)
        rows.append(SweepRow(float(ebn0), cfg.rate, decoder, st.frames, st.ber, st.fer,
                             st.avg_latency))
    return rows


SWEEP_COLUMNS = ("ebn0_db", "rate", "decoder", "frames", "ber", "fer", "avg_latency")


def write_rows(rows, out, fmt: str = "csv") -> None:
    """Write sweep rows to an open text stream as CSV or JSON lines."""
    dicts = [asdict(r) if not isinstance(r, dict) else r for r in rows]
    if fmt == "csv":
        if not dicts:
            return
        writer = csv.DictWriter(out, fieldnames=list(dicts[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(dicts)
    elif fmt == "jsonl":
        for d in dicts:
            out.write(json.dumps(d) + "\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")


@dataclass
class LatencyRow:
    rate: float
    k: int
    baseline: int
    latency: int
    reduction_pct: float
    blocks: int


def latency_table(n: int, rates, caps: Caps | None = None,
                  design_param: float = 0.5) -> list[LatencyRow]:
    """Fast-SSC latency against the ``2n - 2`` tree-SC baseline for each rate."""
    rows = []
    base = baseline_latency(n)
    for rate in rates:
        k = int(round(rate * n))
        cfg = construct_frozen(n, k, design_param)
        sched = build_schedule(cfg, caps)
        lat = schedule_latency(sched)
        rows.append(LatencyRow(rate=float(rate), k=k, baseline=base, latency=lat,
                               reduction_pct=100.0 * (base - lat) / base, blocks=len(sched)))
    return rows


def format_latency_table(rows: list[LatencyRow], n: int) -> str:
    lines = [f"n = {n}",
             f"{'rate':>6} {'k':>5} {'2n-2':>6} {'fast-SSC':>9} {'reduction %':>12} {'blocks':>7}"]
    for r in rows:
        lines.append(f"{r.rate:>6.2f} {r.k:>5d} {r.baseline:>6d} {r.latency:>9d} "
                     f"{r.reduction_pct:>12.1f} {r.blocks:>7d}")
    t = PUBLISHED_N1024
    lines.append("")
    lines.append(f"reference (published, n = 1024, {t['baseline']}-cycle conventional baseline):")
    lines.append("  rate:      " + " ".join(f"{v:>6}" for v in t["rates"]))
    lines.append("  latency:   " + " ".join(f"{v:>6}" for v in t["latency"]))
    lines.append("  reduction: " + " ".join(f"{v:>6}" for v in t["reduction_pct"]))
    return "\n".join(lines)
