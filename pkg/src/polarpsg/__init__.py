"""Polar codes, constituent-code SC decoding and a shift-register partial-sum generator model."""

from .fast_ssc import (
    NO_SPC, PLAIN_SC, Block, Caps, DecodeSchedule, NodeKind, build_schedule, classify,
    decode_rate0, decode_rate1, decode_rep, decode_spc, fast_ssc_decode, node_latency,
    schedule_latency,
)
from .hardware import (
    DelayModel, PsgMode, critical_path, mux_network_report, resource_report, shifter_report,
)
from .polar_core import (
    CodeConfig, construct_frozen, encode, generator_matrix, generator_row, load_frozen_file,
    polar_transform, save_frozen_file,
)
from .psg_model import (
    PsgChecker, PsgScheduleError, PsgState, RomImage, blockwise_mask_property, check_frame,
    psg_commit_bit, psg_commit_block, psg_read_block, psg_reset, rom_build,
)
from .sc_reference import (
    DecodeListener, DecodeResult, combine, f_op, g_op, hard_decision, oracle_partial_sums,
    sc_decode,
)
from .sim_harness import ChannelParams, TrialStats, bpsk_awgn, latency_table, monte_carlo

__version__ = "0.1.0"
