"""Verification and measurement harness.

Checks label sets against the brute-force all-pairs oracle: the universal
soundness contract (decoded >= true distance, with unreachable pairs agreeing
on INF) plus each scheme's own window:

=========  =====================================================
trivial    exact for every pair
warmup     exact when dist >= D (unit-weight graphs)
medium     exact when hop distance lies in [D, 2D]
full       exact when hop distance >= D
bdeg       exact for every pair
sparse     exact for every pair
additive   decoded - dist in [0, r] for connected pairs
=========  =====================================================

Exhaustive mode checks all n(n-1)/2 pairs through the bulk matrix decoders
(pinned elsewhere to agree with the per-pair decoders); sampled mode drives
the per-pair decoders directly.  Also here: benchmark sweeps over G(n, m)
corpora and the adjacency-reconstruction experiment that reads a random
bipartite adjacency matrix back out of the labels alone.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import additive as _additive
from . import preserving as _preserving
from . import sparse as _sparse
from .errors import CodecError, LabelError
from .graph import INF, Graph, gen_gnm, gen_lower_bound_family
from .labels import LabelSet

__all__ = [
    "PARSERS",
    "PAIR_DECODERS",
    "MATRIX_DECODERS",
    "decode_matrix",
    "VerifyReport",
    "verify_labels",
    "BenchRow",
    "BENCH_COLUMNS",
    "bound_value",
    "bench_sweep",
    "lower_bound_experiment",
    "worker_count",
    "EXHAUSTIVE_CAP",
]

PARSERS = {
    "trivial": _preserving.parse_trivial,
    "warmup": _preserving.parse_warmup,
    "medium": _preserving.parse_medium,
    "full": _preserving.parse_full,
    "bdeg": _sparse.parse_bounded,
    "sparse": _sparse.parse_bounded,
    "additive": _additive.parse_additive,
}

PAIR_DECODERS = {
    "trivial": _preserving._trivial_pair,
    "warmup": _preserving._warmup_pair,
    "medium": _preserving._medium_pair,
    "full": _preserving._full_pair,
    "bdeg": _sparse._bounded_pair,
    "sparse": _sparse._bounded_pair,
    "additive": _additive._additive_pair,
}

MATRIX_DECODERS = {
    "trivial": _preserving.trivial_matrix,
    "warmup": _preserving.warmup_matrix,
    "medium": _preserving.medium_matrix,
    "full": _preserving.full_matrix,
    "bdeg": _sparse.bounded_matrix,
    "sparse": _sparse.bounded_matrix,
    "additive": _additive.additive_matrix,
}

EXHAUSTIVE_CAP = 2048  # above this the oracle table is too hot; sampling is forced


def decode_matrix(ls: LabelSet) -> np.ndarray:
    """All-pairs decoded distances, same candidate rules as the pair decoders."""
    return MATRIX_DECODERS[ls.scheme](ls.parsed())


def worker_count() -> int:
    """Parallelism cap from DISTLAB_THREADS (default 1)."""
    try:
        return max(1, int(os.environ.get("DISTLAB_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class VerifyReport:
    """Outcome of checking one label set against the oracle."""

    graph_id: str
    scheme: str
    params: dict
    mode: str
    pairs_checked: int
    violation_count: int
    violations: list = field(default_factory=list)  # (u, v, oracle, decoded, contract)
    max_bits: int = 0
    mean_bits: float = 0.0
    p50_bits: float = 0.0
    p95_bits: float = 0.0
    encode_seconds: float | None = None
    warnings: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.violation_count == 0

    def to_text(self) -> str:
        lines = [
            f"graph:   {self.graph_id}",
            f"scheme:  {self.scheme} {self.params}",
            f"mode:    {self.mode} ({self.pairs_checked} pairs)",
            f"labels:  max {self.max_bits} bits, mean {self.mean_bits:.1f}, "
            f"p50 {self.p50_bits:.0f}, p95 {self.p95_bits:.0f}",
        ]
        if self.encode_seconds is not None:
            lines.append(f"encode:  {self.encode_seconds:.3f}s")
        for w in self.warnings:
            lines.append(f"warning: {w}")
        if self.passed:
            lines.append("result:  PASS (0 violations)")
        else:
            lines.append(f"result:  FAIL ({self.violation_count} violations)")
            for u, v, oracle, dec, kind in self.violations[:20]:
                lines.append(f"  ({u}, {v}): oracle={oracle} decoded={dec} [{kind}]")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "graph_id": self.graph_id,
            "scheme": self.scheme,
            "params": self.params,
            "mode": self.mode,
            "pairs_checked": self.pairs_checked,
            "violation_count": self.violation_count,
            "violations": self.violations[:100],
            "max_bits": self.max_bits,
            "mean_bits": self.mean_bits,
            "p50_bits": self.p50_bits,
            "p95_bits": self.p95_bits,
            "encode_seconds": self.encode_seconds,
            "warnings": self.warnings,
            "passed": self.passed,
        }


def _pair_contracts(scheme: str, params: dict, w: int, h: int, dec: int):
    """Yield (violated, kind) checks for one pair."""
    if dec < w:
        yield True, "soundness: decoded below true distance"
    if scheme == "warmup":
        if w != INF and w >= params["D"] and dec != w:
            yield True, "window: exact required for dist >= D"
    elif scheme == "medium":
        if h != INF and params["D"] <= h <= 2 * params["D"] and dec != w:
            yield True, "window: exact required for hops in [D, 2D]"
    elif scheme == "full":
        if h != INF and h >= params["D"] and dec != w:
            yield True, "window: exact required for hops >= D"
    elif scheme in ("trivial", "bdeg", "sparse"):
        if dec != w:
            yield True, "exactness: scheme must be exact for all pairs"
    elif scheme == "additive":
        if w != INF and dec > w + params["r"]:
            yield True, "additive: decoded exceeds dist + r"
        if w == INF and dec != INF:
            yield True, "additive: finite answer for a disconnected pair"


def _exhaustive_violations(scheme, params, weight, hops, dec):
    n = dec.shape[0]
    iu, iv = np.triu_indices(n, 1)
    w = weight[iu, iv]
    h = hops[iu, iv]
    d = dec[iu, iv]
    kinds = {"soundness: decoded below true distance": d < w}
    if scheme == "warmup":
        mask = (w != INF) & (w >= params["D"]) & (d != w)
        kinds["window: exact required for dist >= D"] = mask
    elif scheme == "medium":
        mask = (h != INF) & (h >= params["D"]) & (h <= 2 * params["D"]) & (d != w)
        kinds["window: exact required for hops in [D, 2D]"] = mask
    elif scheme == "full":
        mask = (h != INF) & (h >= params["D"]) & (d != w)
        kinds["window: exact required for hops >= D"] = mask
    elif scheme in ("trivial", "bdeg", "sparse"):
        kinds["exactness: scheme must be exact for all pairs"] = d != w
    elif scheme == "additive":
        kinds["additive: decoded exceeds dist + r"] = (w != INF) & (d > w + params["r"])
        kinds["additive: finite answer for a disconnected pair"] = (w == INF) & (d != INF)
    entries = []
    total = 0
    for kind, mask in kinds.items():
        total += int(mask.sum())
        for idx in np.flatnonzero(mask)[:20]:
            entries.append((int(iu[idx]), int(iv[idx]), int(w[idx]), int(d[idx]), kind))
    return total, entries[:50]


def verify_labels(
    g: Graph,
    ls: LabelSet,
    mode: str = "exhaustive",
    sample_count: int = 10_000,
    seed: int = 0,
    graph_id: str = "",
    encode_seconds: float | None = None,
) -> VerifyReport:
    """Check every contract the scheme promises against the BFS oracle."""
    if ls.n != g.n:
        raise LabelError(f"label set describes {ls.n} nodes, graph has {g.n}")
    warnings_: list[str] = []
    if mode == "exhaustive" and g.n > EXHAUSTIVE_CAP:
        warnings_.append(
            f"n={g.n} exceeds the exhaustive cap of {EXHAUSTIVE_CAP}; sampling instead"
        )
        mode = "sampled"
    sizes = ls.bit_sizes()
    stats = dict(
        max_bits=int(sizes.max()) if sizes.size else 0,
        mean_bits=float(sizes.mean()) if sizes.size else 0.0,
        p50_bits=float(np.percentile(sizes, 50)) if sizes.size else 0.0,
        p95_bits=float(np.percentile(sizes, 95)) if sizes.size else 0.0,
    )
    weight, hops = g.apsp()
    if mode == "exhaustive":
        pairs = g.n * (g.n - 1) // 2
        try:
            dec = decode_matrix(ls)
        except (LabelError, CodecError) as exc:
            return VerifyReport(
                graph_id, ls.scheme, ls.params, mode, 0, 1,
                [(-1, -1, -1, -1, f"decode error: {exc}")],
                encode_seconds=encode_seconds, warnings=warnings_, **stats,
            )
        count, entries = _exhaustive_violations(ls.scheme, ls.params, weight, hops, dec)
        return VerifyReport(
            graph_id, ls.scheme, ls.params, mode, pairs, count, entries,
            encode_seconds=encode_seconds, warnings=warnings_, **stats,
        )
    if not mode.startswith("sampled"):
        raise ValueError(f"unknown verify mode {mode!r}")
    rng = random.Random(seed)
    count = 0
    entries: list = []
    checked = 0
    for _ in range(sample_count):
        if g.n < 2:
            break
        u = rng.randrange(g.n)
        v = rng.randrange(g.n - 1)
        if v >= u:
            v += 1
        checked += 1
        try:
            dec = ls.decode(u, v)
        except (LabelError, CodecError) as exc:
            count += 1
            entries.append((u, v, int(weight[u, v]), -1, f"decode error: {exc}"))
            continue
        for violated, kind in _pair_contracts(
            ls.scheme, ls.params, int(weight[u, v]), int(hops[u, v]), dec
        ):
            if violated:
                count += 1
                if len(entries) < 50:
                    entries.append((u, v, int(weight[u, v]), dec, kind))
    return VerifyReport(
        graph_id, ls.scheme, ls.params, "sampled", checked, count, entries,
        encode_seconds=encode_seconds, warnings=warnings_, **stats,
    )


# ---------------------------------------------------------------------------
# Benchmark sweeps

BENCH_COLUMNS = [
    "n",
    "m",
    "scheme",
    "params",
    "max_label_bits",
    "mean_label_bits",
    "bound_value",
    "ratio",
    "encode_seconds",
    "seed",
]


@dataclass
class BenchRow:
    """One measured encode: label-size stats against the scheme's size bound."""

    n: int
    m: int
    scheme: str
    params: str
    max_label_bits: int
    mean_label_bits: float
    bound_value: float
    ratio: float
    encode_seconds: float
    seed: int

    def as_list(self) -> list:
        return [
            self.n,
            self.m,
            self.scheme,
            self.params,
            self.max_label_bits,
            f"{self.mean_label_bits:.2f}",
            f"{self.bound_value:.2f}",
            f"{self.ratio:.4f}",
            f"{self.encode_seconds:.4f}",
            self.seed,
        ]


def _lg(x: float) -> float:
    return max(np.log2(x), 1.0) if x > 0 else 1.0


def bound_value(scheme: str, n: int, m: int, params: dict) -> float:
    """Reference size for the ratio column: (n/D) * lg(D)^2 for the threshold
    schemes ((n/D) * lg(n)^2 for warmup), n * lg(n) for the plain table, n for
    the exact sparse/bounded schemes, and n/r for the additive scheme."""
    if scheme in ("medium", "full"):
        d = params["D"]
        return (n / d) * _lg(d) ** 2
    if scheme == "warmup":
        return (n / params["D"]) * _lg(n) ** 2
    if scheme == "trivial":
        return n * _lg(n)
    if scheme in ("bdeg", "sparse"):
        return float(n)
    if scheme == "additive":
        return n / params["r"]
    raise ValueError(f"unknown scheme {scheme!r}")


def _encode_for_bench(scheme: str, g: Graph, seed: int, opts: dict) -> LabelSet:
    if scheme == "trivial":
        return _preserving.encode_trivial(g)
    if scheme in ("warmup", "medium", "full"):
        p = _preserving.PreservingParams(D=opts["D"], seed=seed)
        return {
            "warmup": _preserving.encode_warmup,
            "medium": _preserving.encode_medium,
            "full": _preserving.encode_full,
        }[scheme](g, p)
    if scheme == "bdeg":
        delta = opts.get("delta") or max(2, g.max_degree())
        return _sparse.encode_bounded_degree(g, delta, seed)
    if scheme == "sparse":
        return _sparse.encode_sparse(g, seed)
    if scheme == "additive":
        p = _additive.AdditiveParams(r=opts["r"], t=opts.get("t"), D=opts.get("dd"), seed=seed)
        return _additive.encode_additive(g, p)
    raise ValueError(f"unknown scheme {scheme!r}")


def bench_point(scheme: str, n: int, m: int, seed: int, opts: dict) -> BenchRow:
    g = gen_gnm(n, m, seed)
    t0 = time.perf_counter()
    ls = _encode_for_bench(scheme, g, seed, opts)
    elapsed = time.perf_counter() - t0
    bound = bound_value(scheme, n, m, ls.params)
    maxb = ls.max_bits
    return BenchRow(
        n=n,
        m=m,
        scheme=scheme,
        params=";".join(f"{k}={v}" for k, v in sorted(ls.params.items())),
        max_label_bits=maxb,
        mean_label_bits=ls.mean_bits,
        bound_value=bound,
        ratio=maxb / bound if bound else 0.0,
        encode_seconds=elapsed,
        seed=seed,
    )


def parse_m_rule(rule: str, n: int) -> int:
    """m per n: 'n', '2n', '4n' style multiples or an absolute integer."""
    rule = rule.strip().lower()
    if rule.endswith("n"):
        factor = rule[:-1]
        return n * (int(factor) if factor else 1)
    return int(rule)


def bench_sweep(scheme: str, ns, m_rule: str, seeds, opts_list) -> list[BenchRow]:
    """One row per (n, seed, opts) point; rows come back in sweep order.

    Points are independent, so they run on a thread pool sized by
    DISTLAB_THREADS (default 1).
    """
    points = [
        (n, parse_m_rule(m_rule, n), seed, opts)
        for n in ns
        for opts in opts_list
        for seed in seeds
    ]
    if not points:
        raise ValueError("empty benchmark sweep")
    workers = worker_count()
    if workers == 1:
        return [bench_point(scheme, n, m, seed, opts) for n, m, seed, opts in points]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futs = [pool.submit(bench_point, scheme, n, m, seed, opts) for n, m, seed, opts in points]
        return [f.result() for f in futs]


# ---------------------------------------------------------------------------
# Adjacency reconstruction experiment


def lower_bound_experiment(k: int, tail: int, seed: int = 0, trials: int = 20) -> dict:
    """Recover random k*k adjacency matrices from labels alone.

    Each trial draws adjacency bits, builds the bipartite family whose left
    node i sits at distance exactly `tail` from path end w_j iff bit (i, j)
    is set, encodes with the full scheme at threshold `tail`, and re-reads
    every bit as decode(L_i, w_j) == tail.  Any mismatch is a scheme bug.
    The report also compares the queried label bits against the k^2/2
    information bound the family forces.
    """
    trial_results = []
    all_exact = True
    for trial in range(trials):
        rng = random.Random((seed + 1) * 7919 + trial)
        adj = [[rng.getrandbits(1) for _ in range(k)] for _ in range(k)]
        g, left, ends = gen_lower_bound_family(k, tail, adj)
        ls = _preserving.encode_full(
            g, _preserving.PreservingParams(D=tail, seed=(seed + 1) * 104729 + trial)
        )
        parsed = ls.parsed()
        recovered = [
            [1 if _preserving._full_pair(parsed[left[i]], parsed[ends[j]]) == tail else 0
             for j in range(k)]
            for i in range(k)
        ]
        exact = recovered == adj
        all_exact &= exact
        queried_bits = sum(ls.labels[x].nbits for x in left + ends)
        trial_results.append(
            {
                "trial": trial,
                "exact": exact,
                "bits_recovered": sum(
                    recovered[i][j] == adj[i][j] for i in range(k) for j in range(k)
                ),
                "queried_label_bits": queried_bits,
            }
        )
    queried = [t["queried_label_bits"] for t in trial_results]
    return {
        "k": k,
        "tail": tail,
        "trials": trials,
        "bits_per_trial": k * k,
        "all_exact": all_exact,
        "information_bound_bits": k * k / 2,
        "queried_label_bits_mean": float(np.mean(queried)) if queried else 0.0,
        "trial_results": trial_results,
    }
