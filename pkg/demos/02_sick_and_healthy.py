"""Inside one level: landmark sampling and the sick/healthy split.

A level targeting the hop window [D, 2D] samples about 2(n/D) ln D
landmarks.  A pair is covered when some landmark sits on a shortest path
between them.  Nodes left with more than n/D uncovered far peers are
"sick": their distance column is added to the shared table everyone
stores.  Healthy nodes instead keep a short private list of their own
uncovered window peers.  That split is the whole size trick.
"""

import numpy as np

import distlab as dl
from distlab.preserving import sample_landmarks

n, D = 200, 4
g = dl.gen_gnm(n, 2 * n, seed=11)

landmarks = sample_landmarks(g, 60, seed=3)
sick, uncovered = dl.classify_nodes(g, landmarks, D)
sizes = np.array([len(uncovered[u]) for u in range(n)])
print(f"n={n}, D={D}, |landmark sample|={len(landmarks)}")
print(f"uncovered-list sizes: mean {sizes.mean():.1f}, max {sizes.max()}, "
      f"sick threshold n/D = {n / D:.0f}")
print(f"sick nodes ({len(sizes[sizes > n / D])} over threshold): {sorted(sick)}")

labels = dl.encode_medium(g, dl.PreservingParams(D=D, seed=3))
print(f"\nencoded medium level: {labels.params['landmarks']} table columns, "
      f"{labels.meta['attempts']} sample attempt(s), sick history "
      f"{labels.meta['sick_history']}")

oracle, hops = dl.all_pairs_with_hops(g)
decoded = dl.decode_matrix(labels)
iu, iv = np.triu_indices(n, 1)
window = (hops[iu, iv] >= D) & (hops[iu, iv] <= 2 * D)
print(f"window pairs (hops in [{D}, {2 * D}]): {window.sum()}, exact:",
      bool((decoded[iu, iv][window] == oracle[iu, iv][window]).all()))
print("everything else stays an upper bound:",
      bool((decoded[iu, iv] >= oracle[iu, iv]).all()))
