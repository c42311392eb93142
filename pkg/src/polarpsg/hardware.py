"""
Closed-form structural, delay and resource models for the partial-sum generators.

Gate counts are for a length-``n`` code with worst-case constituent blocks of
length ``n/2``. ``SR_PSG`` is the conventional one-bit-per-cycle shift
register, ``SR_CB_PSG`` the constituent-code variant with its input mux
network and ``(2^m - 1)`` barrel shifter, and ``FB_PSG`` the feedback-part
design used as a second comparison column.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .polar_core import log2_exact


class PsgMode(str, Enum):
    SR_PSG = "SR_PSG"
    SR_CB_PSG = "SR_CB_PSG"
    FB_PSG = "FB_PSG"


@dataclass(frozen=True)
class DelayModel:
    d_mux: float = 1.0
    d_and: float = 1.0
    d_xor: float = 1.0

    def __post_init__(self):
        if min(self.d_mux, self.d_and, self.d_xor) < 0:
            raise ValueError("gate delays must be non-negative")


def _order(n: int) -> int:
    m = log2_exact(n)
    if n < 4:
        raise ValueError(f"structural models need n >= 4, got {n}")
    return m


def select_width(n: int) -> int:
    """Bits needed to address one of the ``log2 n`` decoder stages."""
    return math.ceil(math.log2(_order(n)))


@dataclass(frozen=True)
class MuxNetworkReport:
    mux_count: int
    muxes_per_register: int
    registers: int
    select_width: int
    select_bits: dict

    def select_string(self, stage: int) -> str:
        return format(self.select_bits[stage], f"0{self.select_width}b")


def mux_network_report(n: int) -> MuxNetworkReport:
    """Input routing: one ``(log2 n - 1)``-mux tree per register, shared selects.

    The select word for stage ``s`` is the binary encoding of ``s``.
    """
    m = _order(n)
    per_reg = m - 1
    return MuxNetworkReport(
        mux_count=(n // 2) * per_reg,
        muxes_per_register=per_reg,
        registers=n // 2,
        select_width=select_width(n),
        select_bits={s: s for s in range(m)},
    )


@dataclass(frozen=True)
class ShifterReport:
    mux_count: int
    decoder_k: int
    shift_amounts: tuple


def shifter_report(n: int) -> ShifterReport:
    m = _order(n)
    return ShifterReport(
        mux_count=(n // 2 - 1) * (m - 1),
        decoder_k=math.ceil(math.log2(m)),
        shift_amounts=tuple(1 << j for j in range(m)),
    )


def critical_path(n: int, d: DelayModel | None = None, mode: PsgMode = PsgMode.SR_CB_PSG) -> float:
    """Combinational delay of the partial-sum update.

    The shifter is off the critical path; only the mux network adds
    ``ceil(log2(log2 n))`` mux delays to the AND/XOR update.
    """
    d = d or DelayModel()
    mode = PsgMode(mode)
    m = _order(n)
    base = d.d_and + d.d_xor
    if mode is PsgMode.SR_PSG:
        return base
    if mode is PsgMode.SR_CB_PSG:
        return math.ceil(math.log2(m)) * d.d_mux + base
    raise ValueError(f"no critical-path model for {mode}")


@dataclass(frozen=True)
class ResourceReport:
    dff: int | None
    mux: int | None
    xor: int | None
    and_g: int | None
    rom_bits: int | None

    def as_dict(self) -> dict:
        return {"dff": self.dff, "mux": self.mux, "xor": self.xor,
                "and": self.and_g, "rom_bits": self.rom_bits}


def resource_report(n: int, mode: PsgMode = PsgMode.SR_CB_PSG) -> ResourceReport:
    """Gate and storage counts; ``None`` where a design has no such element.

    The ROM figure for the constituent-code design is the ``n^2/10`` average
    estimate rounded up, not a count from any particular frozen set.
    """
    mode = PsgMode(mode)
    m = _order(n)
    if mode is PsgMode.SR_CB_PSG:
        return ResourceReport(dff=n // 2, mux=(n - 1) * (m - 1), xor=n // 2 - 1,
                              and_g=n // 2, rom_bits=-(-n * n // 10))
    if mode is PsgMode.SR_PSG:
        return ResourceReport(dff=n, mux=None, xor=n - 2, and_g=n // 2, rom_bits=None)
    return ResourceReport(dff=(n * n - 4) // 12, mux=n - 2, xor=n // 2 - 1,
                          and_g=None, rom_bits=None)


def comparison_table(n: int, d: DelayModel | None = None) -> list[dict]:
    """Side-by-side rows for all three designs (critical path only where modelled)."""
    rows = []
    for mode in PsgMode:
        row = {"design": mode.value, **resource_report(n, mode).as_dict()}
        row["critical_path"] = (critical_path(n, d, mode)
                                if mode is not PsgMode.FB_PSG else None)
        rows.append(row)
    return rows
