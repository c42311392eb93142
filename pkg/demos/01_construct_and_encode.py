# %% [markdown]
# # Building and encoding a polar code
#
# A frozen set from the BEC Bhattacharyya recursion, the generator rows, and
# encoding with the butterfly transform.

# %%
import numpy as np

from polarpsg import construct_frozen, encode, generator_matrix, generator_row
from polarpsg.polar_core import bhattacharyya_parameters, embed

# %%
n, k = 8, 4
print("Z:", np.round(bhattacharyya_parameters(n, 0.5), 4))
cfg = construct_frozen(n, k, design_param=0.5)
print("frozen mask:", cfg.frozen, "info positions:", cfg.info_indices)

# %% [markdown]
# Row ``i`` of ``F^{(x)m}`` has a 1 in column ``j`` exactly when ``j`` is a bit-submask of ``i``.

# %%
print(generator_matrix(n))
print("row 5:", generator_row(n, 5))

# %%
u = embed(cfg, [1, 0, 1, 1])
x = encode(cfg, u)
print("u =", u, "-> x =", x)
# the transform is its own inverse
print("x G =", encode(construct_frozen(n, n), x))
