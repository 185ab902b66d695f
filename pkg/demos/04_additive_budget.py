"""Trading exactness for size with an additive error budget.

With budget r, the decoder may overshoot by at most r.  Three candidate
routes make that work: exact balls among low-degree nodes, hops through a
dominating set of the power graph's high-degree nodes (each hop costs at
most floor(r/2) extra), and an embedded threshold label for far pairs.
The decoder just takes the minimum of whatever candidates exist.
"""

import warnings

import numpy as np

import distlab as dl

# the textbook parameter regime assumes r <= n^(1/10); at demo scale the
# encoder warns about that once per call, which we silence here
warnings.filterwarnings("ignore", message="r=.*exceeds")

n = 256
g = dl.gen_gnm(n, 2 * n, seed=5)
oracle = dl.all_pairs(g)
iu, iv = np.triu_indices(n, 1)
finite = oracle[iu, iv] != dl.INF

print(f"graph: n={n} m={2 * n}; exact table scheme needs "
      f"{dl.encode_trivial(g).max_bits} bits per node\n")

for r, t, D in [(2, 8, 2), (4, 16, 4), (8, 16, 6)]:
    labels = dl.encode_additive(g, dl.AdditiveParams(r=r, t=t, D=D, seed=5))
    decoded = dl.decode_matrix(labels)
    err = decoded[iu, iv][finite] - oracle[iu, iv][finite]
    print(f"r={r} (t={t}, D={D}): {labels.params['dominators']} dominators, "
          f"max label {labels.max_bits} bits; error min/mean/max = "
          f"{err.min()}/{err.mean():.2f}/{err.max()} (budget {r})")

u, v = 0, 100
labels = dl.encode_additive(g, dl.AdditiveParams(r=4, t=16, D=4, seed=5))
print(f"\nsample query: decode({u}, {v}) = {labels.decode(u, v)}, "
      f"true distance {oracle[u, v]}")
