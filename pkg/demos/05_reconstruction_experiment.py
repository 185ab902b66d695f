"""Why threshold labels cannot shrink below ~n/D bits: an executable argument.

Build a bipartite graph whose left nodes connect to right nodes by a secret
k x k bit matrix, and hang a path of D nodes off every right node.  Then
left node i is at distance exactly D from path end w_j precisely when bit
(i, j) is set -- so 2k labels alone carry k^2 arbitrary bits, forcing some
label to hold at least k/2 bits.  The experiment rebuilds random matrices
from the labels and compares the measured label bits with that floor.
"""

from distlab.harness import lower_bound_experiment

k = tail = 8
report = lower_bound_experiment(k, tail, seed=3, trials=10)

print(f"family: k={k} left nodes, {k} paths of {tail} nodes "
      f"({k + k * tail} nodes total)")
print(f"secret bits per instance: {report['bits_per_trial']}")
for t in report["trial_results"][:5]:
    print(f"  trial {t['trial']}: recovered {t['bits_recovered']}/"
          f"{report['bits_per_trial']} bits from "
          f"{t['queried_label_bits']} queried label bits")
print("all trials exact:", report["all_exact"])
print(f"mean queried label bits {report['queried_label_bits_mean']:.0f} "
      f">= information floor {report['information_bound_bits']:.0f}")
