"""Distance labels that are exact above a threshold.

Four encoder/decoder pairs share this module:

* ``trivial``  -- each label stores the node's full distance row; exact for
  every pair, linear-size labels.  This is the fallback for D <= 1.
* ``warmup``   -- every node stores its distance to one shared landmark
  sample, resampled until every pair at distance >= D has a landmark on a
  shortest path between them.
* ``medium``   -- exact when the hop distance h(u, v) lies in [D, 2D].
  A smaller landmark sample is drawn; a node left with too many far peers
  whose shortest routes no landmark certifies ("sick") has its distance
  column added to the shared table, while healthy nodes keep a short
  private list of their still-uncovered window peers.
* ``full``     -- concatenates medium levels for thresholds D, 2D, 4D, ...
  and decodes by taking the minimum; exact whenever h(u, v) >= D.

Windows are defined on hop distance (minimum edge count among minimum-weight
paths) while stored values are weighted distances, so the schemes stay exact
on graphs that contain 0-weight edges, which the degree-reduction transform
introduces.  On all-unit-weight graphs hop distance equals weighted distance.

Decoders see only the two labels: every label embeds the node count and all
per-level parameters.  Encoding costs n shortest-path runs per level (oracle
grade); that is deliberate and fine at desk scale.  All decode functions are
pure and thread-safe; encoding touches only immutable graph state.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra as _sp_dijkstra

from .bits import BitCursor, BitWriter, Bits, pack_values
from .errors import EncodingFailure, GraphError, LabelError
from .graph import INF, Graph
from .labels import LabelSet

__all__ = [
    "PreservingParams",
    "sample_landmarks",
    "classify_nodes",
    "encode_warmup",
    "decode_warmup",
    "encode_medium",
    "decode_medium",
    "encode_full",
    "decode_full",
    "encode_trivial",
    "decode_trivial",
]


@dataclass(frozen=True)
class PreservingParams:
    """Knobs for the threshold schemes.

    D is the exactness threshold (D <= 1 routes encode_full to the trivial
    table scheme).  `c` is the warmup oversampling constant and must exceed 2
    for the resampling loop to terminate quickly.
    """

    D: int
    seed: int = 0
    resample_cap: int = 50
    c: float = 3.0

    def __post_init__(self):
        if self.D < 1:
            raise GraphError(f"threshold D must be >= 1, got {self.D}")
        if self.resample_cap < 1:
            raise GraphError("resample_cap must be >= 1")
        if self.c <= 2:
            raise GraphError("warmup oversampling constant c must be > 2")


def _mix(seed: int, salt: int) -> int:
    return (int(seed) * 1_000_003 + int(salt)) & 0x7FFFFFFFFFFFFFFF


def sample_landmarks(g: Graph, size: int, seed) -> list[int]:
    """`size` uniform independent draws from V, deduplicated and sorted.

    The multiset is drawn with replacement (the same node may be picked
    several times); duplicates only waste bits, so the result is the
    ascending set of distinct draws.  Deterministic per seed.
    """
    if g.n < 1:
        raise GraphError("cannot sample landmarks from an empty graph")
    if size < 1:
        raise GraphError("landmark sample size must be >= 1")
    rng = random.Random(seed)
    return sorted({rng.randrange(g.n) for _ in range(size)})


# ---------------------------------------------------------------------------
# Shortest-route certificates.
#
# A landmark w certifies the pair (u, v) when weight(u,w) + weight(w,v) equals
# weight(u,v), i.e. w lies on some minimum-weight path.  Arithmetic is done in
# float with inf so that INF + x == INF saturates: a disconnected pair is
# certified by any landmark (there is no route to repair).

_MINPLUS_BUDGET = 5e8  # element ops; above this the layered-Dijkstra route wins


def _minplus_pairs(T: np.ndarray) -> np.ndarray:
    """Pairwise min-plus: out[u, v] = min over columns l of T[u, l] + T[v, l]."""
    count, width = T.shape
    out = np.empty((count, count), dtype=np.float32)
    if width == 0:
        out.fill(np.inf)
        return out
    buf = np.empty_like(T)
    for u in range(count):
        np.add(T, T[u], out=buf)
        buf.min(axis=1, out=out[u])
    return out


def _via_landmarks(g: Graph, landmarks: list[int]) -> np.ndarray:
    """Matrix of min over w in landmarks of d(u,w) + d(w,v), float32 with inf."""
    n = g.n
    if n == 0:
        return np.zeros((0, 0), dtype=np.float32)
    if not landmarks:
        return np.full((n, n), np.inf, dtype=np.float32)
    if n * n * len(landmarks) <= _MINPLUS_BUDGET:
        T = np.ascontiguousarray(g.apsp_f32()[np.asarray(landmarks, dtype=np.intp)])
        out = np.empty((n, n), dtype=np.float32)
        buf = np.empty_like(T)
        for u in range(n):
            np.add(T, T[:, u][:, None], out=buf)
            buf.min(axis=0, out=out[u])
        return out
    return _via_landmarks_layered(g, landmarks)


def _via_landmarks_layered(g: Graph, landmarks: list[int]) -> np.ndarray:
    # Two copies of the graph; crossing from copy A to copy B is only possible
    # at a landmark, so dist(A_u, B_v) is exactly the best route through the
    # landmark set.  The crossing edge costs one phantom hop, subtracted when
    # the packed big*weight + hops cost is decoded.  Cost is independent of
    # the landmark count, which the plain min-plus product is not.
    n = g.n
    big = 2 * n + 2
    rows: list[int] = []
    cols: list[int] = []
    data: list[float] = []
    for u, v, w in g.edges:
        c = float(big * w + 1)
        rows += (u, v, n + u, n + v)
        cols += (v, u, n + v, n + u)
        data += (c, c, c, c)
    for w_ in landmarks:
        rows.append(w_)
        cols.append(n + w_)
        data.append(1.0)
    mat = csr_matrix((data, (rows, cols)), shape=(2 * n, 2 * n))
    out = np.empty((n, n), dtype=np.float32)
    chunk = max(1, min(n, (1 << 23) // max(n, 1)))  # ~128 MB of float64 per sweep
    for lo in range(0, n, chunk):
        idx = np.arange(lo, min(lo + chunk, n))
        res = np.atleast_2d(_sp_dijkstra(mat, directed=True, indices=idx))[:, n:]
        fin = np.isfinite(res)
        blk = np.full(res.shape, np.inf, dtype=np.float32)
        blk[fin] = np.floor((res[fin] - 1.0) / big).astype(np.float32)
        out[lo : lo + idx.size] = blk
    return out


def _classify(g: Graph, landmarks: list[int], D: int) -> tuple[list[int], np.ndarray]:
    """Sick node ids plus the boolean uncovered matrix for threshold D."""
    _, hops = g.apsp()
    covered = _via_landmarks(g, landmarks) == g.apsp_f32()
    unc = ~covered & (hops >= D)
    counts = unc.sum(axis=1)
    return [int(u) for u in np.flatnonzero(counts > g.n / D)], unc


def classify_nodes(g: Graph, landmarks, D: int) -> tuple[set[int], dict[int, list[int]]]:
    """Partition nodes into sick/healthy for threshold D.

    v is uncovered for u when the hop distance h(u, v) is at least D and no
    sampled landmark w satisfies d(u,w) + d(w,v) = d(u,v).  A node with more
    than n/D uncovered peers is sick.  Returns the sick set and the full
    uncovered map.
    """
    landmarks = sorted({int(w) for w in landmarks})
    sick, unc = _classify(g, landmarks, D)
    uc = {u: [int(v) for v in np.flatnonzero(unc[u])] for u in range(g.n)}
    return set(sick), uc


# ---------------------------------------------------------------------------
# Shared label pieces

def _row_width(n: int) -> int:
    # fits any distance 0..n-1 plus an in-band unreachable marker
    return n.bit_length() + 1


def _w2d(D: int) -> int:
    # fits any stored window distance 0..2D
    return (2 * D).bit_length()


@dataclass
class MediumLevel:
    """Parsed per-level payload: landmark row plus the uncovered window list."""

    D: int
    size: int
    sick: bool
    lm: np.ndarray  # int64 distances to the level's landmark table, INF if absent
    uc: dict        # uncovered node id -> weighted distance (healthy nodes only)


class _LevelData:
    """Encoder-side view of one level, shared by all nodes."""

    __slots__ = ("D", "rs", "sick", "table", "window")

    def __init__(self, D, rs, sick, table, window):
        self.D = D
        self.rs = rs
        self.sick = sick
        self.table = table
        self.window = window


def _build_level(g: Graph, D: int, seed: int, cap: int):
    """Sample landmarks for one level, resampling until the sick set is small."""
    n = g.n
    draws = max(1, math.ceil(2 * (n / D) * math.log(D)))
    history: list[int] = []
    landmarks: list[int] = []
    sick_ids: list[int] = []
    unc = None
    for attempt in range(cap):
        landmarks = sample_landmarks(g, draws, _mix(seed, attempt))
        sick_ids, unc = _classify(g, landmarks, D)
        history.append(len(sick_ids))
        if len(sick_ids) < 2 * n / D:
            break
    else:
        raise EncodingFailure(
            f"sick set stayed at |S|={history[-1]} >= {2 * n / D:.1f} for "
            f"{cap} samples (n={n}, D={D})"
        )
    weight, hops = g.apsp()
    rs = sorted(set(landmarks) | set(sick_ids))
    sick = np.zeros(n, dtype=bool)
    sick[sick_ids] = True
    table = np.ascontiguousarray(weight[:, rs])
    win_mask = unc & (hops <= 2 * D)
    window = []
    empty = np.zeros(0, dtype=np.int64)
    for u in range(n):
        if sick[u]:
            window.append((empty, empty))
        else:
            ids = np.flatnonzero(win_mask[u])
            window.append((ids, weight[u, ids]))
    meta = {
        "draws": draws,
        "attempts": len(history),
        "sick_history": history,
        "landmarks": landmarks,
        "sick": sick_ids,
    }
    return _LevelData(D, rs, sick, table, window), meta


def _write_level_body(w: BitWriter, lvl: _LevelData, u: int) -> None:
    D = lvl.D
    size = len(lvl.rs)
    w.write_gamma(D)
    w.write_gamma(size + 1)
    w.write_bit(bool(lvl.sick[u]))
    row = lvl.table[u]
    present = row <= 2 * D
    val, width = pack_values(present.astype(np.int64), 1)
    w.write(val, width)
    val, width = pack_values(row[present], _w2d(D))
    w.write(val, width)
    if not lvl.sick[u]:
        ids, dists = lvl.window[u]
        w.write_id_set([int(i) for i in ids])
        val, width = pack_values(dists, _w2d(D))
        w.write(val, width)


def _read_level_body(cur: BitCursor) -> MediumLevel:
    D = cur.read_gamma()
    size = cur.read_gamma() - 1
    sick = bool(cur.read_bit())
    present = cur.read_bitmap(size)
    vals = cur.read_packed(int(present.sum()), _w2d(D))
    lm = np.full(size, INF, dtype=np.int64)
    lm[present] = vals
    uc: dict[int, int] = {}
    if not sick:
        ids = cur.read_id_set()
        dists = cur.read_packed(len(ids), _w2d(D))
        uc = dict(zip(ids, dists.tolist()))
    return MediumLevel(D, size, sick, lm, uc)


def _level_candidate(a: MediumLevel, aid: int, b: MediumLevel, bid: int) -> int:
    if a.D != b.D or a.size != b.size:
        raise LabelError("labels come from different encodings (level mismatch)")
    best = INF
    hit = a.uc.get(bid)
    if hit is not None and hit < best:
        best = hit
    hit = b.uc.get(aid)
    if hit is not None and hit < best:
        best = hit
    if a.size:
        m = int(np.add(a.lm, b.lm).min())
        if m < INF and m < best:
            best = m
    return best


# ---------------------------------------------------------------------------
# warmup scheme


@dataclass
class WarmupLabel:
    n: int
    id: int
    row: np.ndarray  # int64 distances to the shared landmark list, INF if unreachable


def _warmup_draws(n: int, D: int, c: float) -> int:
    return max(1, math.ceil(c * (n / D) * math.log(n)))


def encode_warmup(g: Graph, p: PreservingParams, landmarks=None) -> LabelSet:
    """Landmark-row labels, resampled until every pair at distance >= D is
    certified by some landmark on a shortest path.

    `landmarks` pins the sample explicitly (and skips the resampling loop);
    meant for tests and demos.
    """
    if not g.is_unit_weight():
        raise GraphError("warmup scheme supports unit-weight graphs only")
    n = g.n
    if n == 0:
        return LabelSet("warmup", 0, {"D": p.D, "landmarks": 0}, [])
    weight = g.apsp()[0]
    wf = g.apsp_f32()
    draws = 0
    attempts = 0
    if landmarks is not None:
        chosen = sorted({int(x) for x in landmarks})
    else:
        draws = _warmup_draws(n, p.D, p.c)
        need = wf >= p.D
        chosen = []
        for attempt in range(p.resample_cap):
            chosen = sample_landmarks(g, draws, _mix(p.seed, attempt))
            attempts = attempt + 1
            covered = _via_landmarks(g, chosen) == wf
            if bool((covered | ~need).all()):
                break
        else:
            raise EncodingFailure(
                f"no sample of {draws} landmarks covered all pairs at distance "
                f">= {p.D} within {p.resample_cap} attempts (n={n})"
            )
    width = _row_width(n)
    marker = (1 << width) - 1
    table = weight[:, chosen]
    labels = []
    for u in range(n):
        w = BitWriter()
        w.write_gamma(n + 1)
        w.write_gamma(u + 1)
        w.write_gamma(len(chosen) + 1)
        val, wd = pack_values(np.where(table[u] == INF, marker, table[u]), width)
        w.write(val, wd)
        labels.append(w.getvalue())
    meta = {"landmarks": chosen, "draws": draws, "attempts": attempts}
    return LabelSet("warmup", n, {"D": p.D, "landmarks": len(chosen)}, labels, meta=meta)


def parse_warmup(bits: Bits) -> WarmupLabel:
    cur = BitCursor(bits)
    n = cur.read_gamma() - 1
    ident = cur.read_gamma() - 1
    count = cur.read_gamma() - 1
    width = _row_width(n)
    marker = (1 << width) - 1
    raw = cur.read_packed(count, width)
    return WarmupLabel(n, ident, np.where(raw == marker, INF, raw))


def _warmup_pair(a: WarmupLabel, b: WarmupLabel) -> int:
    if a.n != b.n or a.row.size != b.row.size:
        raise LabelError("warmup labels have mismatched landmark tables")
    if a.row.size == 0:
        return INF
    m = int(np.add(a.row, b.row).min())
    return m if m < INF else INF


def decode_warmup(a: Bits, b: Bits) -> int:
    """Minimum over landmarks of the two stored distances; INF if no landmark
    is reachable from both.  Always an upper bound on the true distance."""
    return _warmup_pair(parse_warmup(a), parse_warmup(b))


# ---------------------------------------------------------------------------
# medium scheme


@dataclass
class MediumLabel:
    n: int
    id: int
    level: MediumLevel


def encode_medium(g: Graph, p: PreservingParams) -> LabelSet:
    """One-level labels, exact for pairs with hop distance in [D, 2D]."""
    if p.D < 2:
        raise GraphError("medium scheme needs D >= 2 (use encode_trivial below that)")
    n = g.n
    if n == 0:
        return LabelSet("medium", 0, {"D": p.D, "landmarks": 0}, [])
    lvl, meta = _build_level(g, p.D, _mix(p.seed, 17), p.resample_cap)
    labels = []
    for u in range(n):
        w = BitWriter()
        w.write_gamma(n + 1)
        w.write_gamma(u + 1)
        _write_level_body(w, lvl, u)
        labels.append(w.getvalue())
    return LabelSet(
        "medium", n, {"D": p.D, "landmarks": len(lvl.rs)}, labels, meta=meta
    )


def parse_medium(bits: Bits) -> MediumLabel:
    cur = BitCursor(bits)
    n = cur.read_gamma() - 1
    ident = cur.read_gamma() - 1
    return MediumLabel(n, ident, _read_level_body(cur))


def _medium_pair(a: MediumLabel, b: MediumLabel) -> int:
    if a.n != b.n:
        raise LabelError("medium labels describe different graphs")
    return _level_candidate(a.level, a.id, b.level, b.id)


def decode_medium(a: Bits, b: Bits) -> int:
    """Minimum over: the peer's entry in either uncovered list, and the best
    route through the shared landmark table.  Exact when the hop distance
    lies in [D, 2D]; an upper bound (possibly INF) otherwise."""
    return _medium_pair(parse_medium(a), parse_medium(b))


# ---------------------------------------------------------------------------
# full scheme (doubling levels)


@dataclass
class FullLabel:
    n: int
    id: int
    levels: list[MediumLevel]


def encode_full(g: Graph, p: PreservingParams) -> LabelSet:
    """Concatenated medium levels for thresholds D * 2^i, i = 0..floor(lg(n/D)).

    Exact for every pair with hop distance >= D.  For D <= 1 this routes to
    encode_trivial, which is exact everywhere.
    """
    if p.D <= 1:
        return encode_trivial(g)
    n = g.n
    if n == 0:
        return LabelSet("full", 0, {"D": p.D, "levels": 0, "landmark_counts": []}, [])
    k = max(0, (n // p.D).bit_length() - 1)
    levels = []
    metas = []
    for i in range(k + 1):
        lvl, meta = _build_level(g, p.D << i, _mix(p.seed, 1009 * (i + 1)), p.resample_cap)
        levels.append(lvl)
        metas.append(meta)
    labels = []
    for u in range(n):
        w = BitWriter()
        w.write_gamma(n + 1)
        w.write_gamma(u + 1)
        w.write_gamma(k + 1)
        for lvl in levels:
            _write_level_body(w, lvl, u)
        labels.append(w.getvalue())
    params = {
        "D": p.D,
        "levels": k + 1,
        "landmark_counts": [len(lvl.rs) for lvl in levels],
    }
    return LabelSet("full", n, params, labels, meta={"levels": metas})


def parse_full(bits: Bits) -> FullLabel:
    cur = BitCursor(bits)
    n = cur.read_gamma() - 1
    ident = cur.read_gamma() - 1
    nlev = cur.read_gamma()
    return FullLabel(n, ident, [_read_level_body(cur) for _ in range(nlev)])


def _full_pair(a: FullLabel, b: FullLabel) -> int:
    if a.n != b.n:
        raise LabelError("full labels describe different graphs")
    if len(a.levels) != len(b.levels):
        raise LabelError("full labels have mismatched level counts")
    best = INF
    for la, lb in zip(a.levels, b.levels):
        cand = _level_candidate(la, a.id, lb, b.id)
        if cand < best:
            best = cand
    return best


def decode_full(a: Bits, b: Bits) -> int:
    """Minimum of the per-level decodes; exact when hop distance >= D."""
    return _full_pair(parse_full(a), parse_full(b))


# ---------------------------------------------------------------------------
# trivial scheme (full distance row; D = 1 fallback)


@dataclass
class TrivialLabel:
    n: int
    id: int
    row: np.ndarray


def encode_trivial(g: Graph) -> LabelSet:
    """Each label stores the node's whole distance row; decoding is lookup."""
    n = g.n
    weight = g.apsp()[0] if n else None
    width = _row_width(n)
    marker = (1 << width) - 1
    labels = []
    for u in range(n):
        w = BitWriter()
        w.write_gamma(n + 1)
        w.write_gamma(u + 1)
        val, wd = pack_values(np.where(weight[u] == INF, marker, weight[u]), width)
        w.write(val, wd)
        labels.append(w.getvalue())
    return LabelSet("trivial", n, {"D": 1}, labels)


def parse_trivial(bits: Bits) -> TrivialLabel:
    cur = BitCursor(bits)
    n = cur.read_gamma() - 1
    ident = cur.read_gamma() - 1
    width = _row_width(n)
    marker = (1 << width) - 1
    raw = cur.read_packed(n, width)
    return TrivialLabel(n, ident, np.where(raw == marker, INF, raw))


def _trivial_pair(a: TrivialLabel, b: TrivialLabel) -> int:
    if a.n != b.n:
        raise LabelError("trivial labels describe different graphs")
    return int(min(a.row[b.id], b.row[a.id]))


def decode_trivial(a: Bits, b: Bits) -> int:
    return _trivial_pair(parse_trivial(a), parse_trivial(b))


# ---------------------------------------------------------------------------
# Bulk (all-pairs) decoders.  These compute exactly what the per-pair
# decoders compute, as matrix operations; the test suite pins the
# equivalence.  Entries on the diagonal are whatever the candidate rules
# give and are not part of any contract.


def _to_int_matrix(f: np.ndarray) -> np.ndarray:
    out = np.full(f.shape, INF, dtype=np.int64)
    fin = np.isfinite(f)
    out[fin] = f[fin].astype(np.int64)
    return out


def _float_table(t: np.ndarray) -> np.ndarray:
    f = t.astype(np.float32)
    f[t == INF] = np.inf
    return f


def warmup_matrix(parsed: list[WarmupLabel]) -> np.ndarray:
    if not parsed:
        return np.zeros((0, 0), dtype=np.int64)
    rows = np.stack([p.row for p in parsed])
    return _to_int_matrix(_minplus_pairs(_float_table(rows)))


def trivial_matrix(parsed: list[TrivialLabel]) -> np.ndarray:
    if not parsed:
        return np.zeros((0, 0), dtype=np.int64)
    rows = np.stack([p.row for p in parsed])
    return np.minimum(rows, rows.T)


def _levels_matrix(level_lists: list[list[MediumLevel]]) -> np.ndarray:
    count = len(level_lists)
    if count == 0:
        return np.zeros((0, 0), dtype=np.int64)
    nlev = len(level_lists[0])
    if any(len(lv) != nlev for lv in level_lists):
        raise LabelError("labels have mismatched level counts")
    acc = np.full((count, count), np.inf, dtype=np.float32)
    for li in range(nlev):
        levels = [lab[li] for lab in level_lists]
        d0, s0 = levels[0].D, levels[0].size
        if any(lv.D != d0 or lv.size != s0 for lv in levels):
            raise LabelError("labels come from different encodings (level mismatch)")
        rows = np.stack([lv.lm for lv in levels])
        np.minimum(acc, _minplus_pairs(_float_table(rows)), out=acc)
        us, vs, vals = [], [], []
        for u, lv in enumerate(levels):
            for i, dist in lv.uc.items():
                if i < count:
                    us.append(u)
                    vs.append(i)
                    vals.append(dist)
        if us:
            ua = np.asarray(us)
            va = np.asarray(vs)
            da = np.asarray(vals, dtype=np.float32)
            np.minimum.at(acc, (ua, va), da)
            np.minimum.at(acc, (va, ua), da)
    return _to_int_matrix(acc)


def medium_matrix(parsed: list[MediumLabel]) -> np.ndarray:
    return _levels_matrix([[p.level] for p in parsed])


def full_matrix(parsed: list[FullLabel]) -> np.ndarray:
    return _levels_matrix([p.levels for p in parsed])
