# %% [markdown]
# # Plain SC against constituent-code decoding
#
# The constituent schedule of a (1024, 512) code, the decoding latency it
# buys, and a short error-rate comparison.

# %%
from collections import Counter

from polarpsg import NO_SPC, build_schedule, construct_frozen, schedule_latency
from polarpsg.sim_harness import ChannelParams, format_latency_table, latency_table, monte_carlo

# %%
cfg = construct_frozen(1024, 512)
sched = build_schedule(cfg)
print(len(sched), "blocks:", Counter(b.kind.value for b in sched))
print("largest blocks:", sorted({(b.length, b.kind.value) for b in sched})[-4:])
print("latency:", schedule_latency(sched), "cycles vs", 2 * cfg.n - 2, "for tree SC")

# %%
print(format_latency_table(latency_table(1024, [0.2, 0.35, 0.5, 0.65, 0.8]), 1024))

# %% [markdown]
# Without SPC nodes the shortcut decoder makes the same decisions as SC;
# with them the error rate is essentially unchanged.

# %%
small = construct_frozen(128, 64)
for ebn0 in (2.5, 3.5):
    p = ChannelParams(ebn0, small.rate, seed=1)
    kw = dict(min_frames=4000, min_errors=0, max_frames=4000, batch=2000)
    sc = monte_carlo(small, "sc", p, **kw)
    nospc = monte_carlo(small, "fast-ssc", p, caps=NO_SPC, **kw)
    fast = monte_carlo(small, "fast-ssc", p, **kw)
    print(f"{ebn0} dB  FER sc={sc.fer:.4f} fast(no SPC)={nospc.fer:.4f} fast={fast.fer:.4f} "
          f"latency {fast.avg_latency:.0f} cycles")
