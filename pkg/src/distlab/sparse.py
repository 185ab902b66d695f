"""Exact distance labels for bounded-degree and sparse graphs.

High-degree nodes are split into a chain of copies joined by 0-weight edges,
which bounds the degree while preserving every pairwise distance (the chain
adds hops but no weight).  On the transformed graph each node stores a small
near table (everything within hop distance < D, with true weighted
distances) next to a threshold-D label from `preserving`; the near table
answers close pairs, the threshold label answers everything else, so the
combined scheme is exact for all pairs.

The sparse wrapper picks the split parameter k = max(ceil(m/n), 3), labels
the transformed graph with degree bound k, and keeps only the labels of the
first copies, which reuse the original node ids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bits import BitCursor, BitWriter, Bits, pack_values
from .errors import GraphError, LabelError
from .graph import INF, Graph
from .labels import LabelSet
from . import preserving
from .preserving import FullLabel, PreservingParams, _full_pair, _mix, full_matrix

__all__ = [
    "SplitResult",
    "split_transform",
    "encode_bounded_degree",
    "decode_bounded_degree",
    "encode_sparse",
    "decode_sparse",
    "bounded_degree_threshold",
]


@dataclass
class SplitResult:
    """Degree-reduction output.

    gprime: the transformed graph (weights in {0, 1}, max degree <= k).
    rep:    original node -> id of its first copy (always the identity here;
            originals keep ids 0..n-1).
    origin: transformed node -> (original node, copy index).
    """

    gprime: Graph
    rep: list[int]
    origin: list[tuple[int, int]]


def split_transform(g: Graph, k: int) -> SplitResult:
    """Split every node of degree > k into ceil(deg/(k-2)) chained copies.

    Copies are joined consecutively by 0-weight edges and each original edge
    endpoint is assigned first-fit to a copy whose degree is still below k.
    Distances between first copies equal the original distances.
    """
    if k < 3:
        raise GraphError(f"split parameter k must be >= 3, got {k}")
    if not g.is_unit_weight():
        raise GraphError("split transform expects a unit-weight input graph")
    n = g.n
    deg = g.degrees()
    copies: list[list[int]] = [[u] for u in range(n)]
    origin: list[tuple[int, int]] = [(u, 0) for u in range(n)]
    next_id = n
    for u in range(n):
        if deg[u] > k:
            extra = math.ceil(deg[u] / (k - 2)) - 1
            for i in range(extra):
                copies[u].append(next_id)
                origin.append((u, i + 1))
                next_id += 1
    edges: list[tuple[int, int, int]] = []
    capacity: dict[int, int] = {}
    for u in range(n):
        chain = copies[u]
        for a, b in zip(chain, chain[1:]):
            edges.append((a, b, 0))
        for idx, c in enumerate(chain):
            chain_deg = 0 if len(chain) == 1 else (1 if idx in (0, len(chain) - 1) else 2)
            capacity[c] = k - chain_deg
    cursor = [0] * n
    ends: list[int] = []
    for u, v, _ in g.edges:
        for x in (u, v):
            while capacity[copies[x][cursor[x]]] == 0:
                cursor[x] += 1
            c = copies[x][cursor[x]]
            capacity[c] -= 1
            ends.append(c)
    for i in range(0, len(ends), 2):
        edges.append((ends[i], ends[i + 1], 1))
    return SplitResult(Graph(next_id, edges), list(range(n)), origin)


def bounded_degree_threshold(n: int, delta: int) -> int:
    """Exactness threshold for degree bound delta: ceil(ln n / (1 + 2 ln delta)),
    clamped to at least 2 so the doubling levels stay meaningful."""
    if n <= 1:
        return 2
    return max(2, math.ceil(math.log(n) / (1.0 + 2.0 * math.log(max(delta, 1)))))


@dataclass
class BoundedLabel:
    n: int
    id: int
    delta: int
    D: int
    near: dict  # node id -> true weighted distance, for hop distance < D
    full: FullLabel


def encode_bounded_degree(g: Graph, delta: int, seed: int = 0) -> LabelSet:
    """Near table (hop-radius D-1 ball, true weighted distances) plus a
    threshold-D label.  Exact for all pairs on graphs of max degree <= delta."""
    if delta < 0:
        raise GraphError("degree bound must be >= 0")
    for u in range(g.n):
        if g.degree(u) > delta:
            raise GraphError(f"node {u} has degree {g.degree(u)} > bound {delta}")
    n = g.n
    D = bounded_degree_threshold(n, delta)
    weight, hops = g.apsp()
    full_ls = preserving.encode_full(g, PreservingParams(D=D, seed=_mix(seed, 71)))
    near_width = max(1, (D - 1).bit_length() + 1)
    labels = []
    near_sizes = []
    for u in range(n):
        ids = np.flatnonzero(hops[u] <= D - 1)
        near_sizes.append(int(ids.size))
        w = BitWriter()
        w.write_gamma(n + 1)
        w.write_gamma(u + 1)
        w.write_gamma(delta + 1)
        w.write_gamma(D)
        w.write_id_set([int(i) for i in ids])
        val, wd = pack_values(weight[u, ids], near_width)
        w.write(val, wd)
        w.write_bits(full_ls.labels[u])
        labels.append(w.getvalue())
    params = {"delta": delta, "D": D, "k": delta}
    meta = {"near_sizes": near_sizes, "full": full_ls.meta}
    return LabelSet("bdeg", n, params, labels, meta=meta)


def parse_bounded(bits: Bits) -> BoundedLabel:
    cur = BitCursor(bits)
    n = cur.read_gamma() - 1
    ident = cur.read_gamma() - 1
    delta = cur.read_gamma() - 1
    D = cur.read_gamma()
    ids = cur.read_id_set()
    near_width = max(1, (D - 1).bit_length() + 1)
    dists = cur.read_packed(len(ids), near_width)
    full_n = cur.read_gamma() - 1
    full_id = cur.read_gamma() - 1
    nlev = cur.read_gamma()
    levels = [preserving._read_level_body(cur) for _ in range(nlev)]
    return BoundedLabel(
        n, ident, delta, D, dict(zip(ids, dists.tolist())), FullLabel(full_n, full_id, levels)
    )


def _bounded_pair(a: BoundedLabel, b: BoundedLabel) -> int:
    if a.n != b.n or a.delta != b.delta or a.D != b.D:
        raise LabelError("bounded-degree labels come from different encodings")
    best = INF
    hit = a.near.get(b.id)
    if hit is not None and hit < best:
        best = hit
    hit = b.near.get(a.id)
    if hit is not None and hit < best:
        best = hit
    cand = _full_pair(a.full, b.full)
    return cand if cand < best else best


def decode_bounded_degree(a: Bits, b: Bits) -> int:
    """Near-table hit if the pair is close, threshold decode otherwise; the
    minimum of the candidates is exact for every pair."""
    return _bounded_pair(parse_bounded(a), parse_bounded(b))


def encode_sparse(g: Graph, seed: int = 0) -> LabelSet:
    """Exact labels for any unit-weight graph, sized for sparse inputs.

    Applies the split transform with k = max(ceil(m/n), 3), labels the
    bounded-degree result, and assigns each original node the label of its
    first copy.
    """
    if not g.is_unit_weight():
        raise GraphError("sparse scheme expects a unit-weight input graph")
    if g.n == 0:
        return LabelSet("sparse", 0, {"delta": 3, "D": 2, "k": 3}, [])
    k = max(math.ceil(g.m / g.n), 3)
    split = split_transform(g, k)
    inner = encode_bounded_degree(split.gprime, k, seed)
    params = {"delta": k, "D": inner.params["D"], "k": k}
    meta = {
        "split_nodes": split.gprime.n,
        "split_edges": split.gprime.m,
        "inner": inner.meta,
    }
    return LabelSet("sparse", g.n, params, inner.labels[: g.n], meta=meta)


decode_sparse = decode_bounded_degree


def bounded_matrix(parsed: list[BoundedLabel]) -> np.ndarray:
    """All-pairs bulk decode over the labelled nodes (near tables may mention
    split copies beyond the labelled range; those entries never match)."""
    count = len(parsed)
    if count == 0:
        return np.zeros((0, 0), dtype=np.int64)
    out = full_matrix([p.full for p in parsed])
    us, vs, vals = [], [], []
    for u, p in enumerate(parsed):
        for i, dist in p.near.items():
            if i < count:
                us.append(u)
                vs.append(i)
                vals.append(dist)
    if us:
        ua = np.asarray(us)
        va = np.asarray(vs)
        da = np.asarray(vals, dtype=np.int64)
        np.minimum.at(out, (ua, va), da)
        np.minimum.at(out, (va, ua), da)
    return out
