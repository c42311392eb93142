# %% [markdown]
# # The shift-register partial-sum generator, block by block
#
# Each constituent block is absorbed in one commit. After a left subtree of
# size ``2**s`` completes, its partial sums sit reversed in the first ``2**s``
# registers, and every read is checked against re-encoding the decided bits.

# %%
import numpy as np

from polarpsg import (
    CodeConfig, build_schedule, check_frame, encode, generator_row, psg_commit_block,
    psg_read_block, psg_reset,
)
from polarpsg.psg_model import bits_to_hex

# %%
cfg = CodeConfig.from_frozen_indices(8, [0, 1, 2, 4])
print([(b.start, b.length, b.kind.value) for b in build_schedule(cfg)])

# %% [markdown]
# By hand: the REP block decides ``beta = [1, 1, 1, 1]``; its message bits
# are ``[0, 0, 0, 1]``.

# %%
state = psg_commit_block(psg_reset(cfg), [1, 1, 1, 1], generator_row(8, 3))
print("registers:", state.regs, "read at stage 2:", psg_read_block(state, 2))

# %%
u = np.zeros(8, dtype=np.uint8)
u[cfg.info_indices] = [1, 0, 1, 1]
checker = check_frame(cfg, (1.0 - 2.0 * encode(cfg, u)) * 10)
for rec in checker.trace:
    print(rec.as_dict())
print("ok:", checker.ok, "reads:", checker.reads)

# %% [markdown]
# A longer noisy frame; the highest register ever read stays below ``n/2``.

# %%
from polarpsg import construct_frozen
from polarpsg.sim_harness import ChannelParams, simulate_frames

cfg = construct_frozen(256, 128)
_, _, llr = simulate_frames(cfg, ChannelParams(2.0, 0.5, seed=3), 0, 1)
checker = check_frame(cfg, llr[0])
print(len(checker.trace), "commits,", checker.reads, "reads, ok:", checker.ok,
      "highest register:", checker.max_register_read)
print("last registers:", bits_to_hex(checker.state.regs))

# %% [markdown]
# Flipping one register after the first commit is caught at the next read.

# %%
bad = check_frame(cfg, llr[0], fault=(0, 0))
print("ok:", bad.ok, "first mismatch (stage, start):", bad.mismatches[0][:2])
