# %% [markdown]
# # Structural cost of the generator
#
# Mux network, shifter, critical path and resource counts as the block
# length grows.

# %%
from polarpsg import DelayModel, PsgMode, critical_path, mux_network_report, resource_report, shifter_report

# %%
print(f"{'n':>6} {'mux net':>8} {'shifter':>8} {'total':>8} {'DFF':>6} {'ROM bits':>9} {'crit. path':>10}")
for m in range(2, 13):
    n = 1 << m
    net, sh, res = mux_network_report(n), shifter_report(n), resource_report(n)
    print(f"{n:>6} {net.mux_count:>8} {sh.mux_count:>8} {res.mux:>8} {res.dff:>6} "
          f"{res.rom_bits:>9} {critical_path(n, DelayModel(), PsgMode.SR_CB_PSG):>10g}")

# %%
net = mux_network_report(1024)
print({s: net.select_string(s) for s in net.select_bits})
print("conventional:", resource_report(1024, PsgMode.SR_PSG))
