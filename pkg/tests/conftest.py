"""Shared fixtures: the verification corpus and independent reference oracles."""

from __future__ import annotations

import heapq
import random

import pytest

from distlab import (
    Graph,
    INF,
    gen_cycle,
    gen_gnm,
    gen_grid,
    gen_path,
    gen_star,
)


def dijkstra_ref(g: Graph, s: int) -> tuple[list[int], list[int]]:
    """Heap-based Dijkstra on (weight, hops) pairs; independent of the
    deque implementation under test."""
    dist = [(INF, INF)] * g.n
    dist[s] = (0, 0)
    heap = [(0, 0, s)]
    done = [False] * g.n
    while heap:
        dw, dh, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, w in g.adj[u]:
            cand = (dw + w, dh + 1)
            if cand < dist[v]:
                dist[v] = cand
                heapq.heappush(heap, (cand[0], cand[1], v))
    return [d[0] for d in dist], [d[1] for d in dist]


def random_01_graph(n: int, m: int, seed: int, zero_fraction: float = 0.3) -> Graph:
    """G(n, m) with a seeded fraction of edge weights flipped to 0."""
    base = gen_gnm(n, m, seed)
    rng = random.Random(seed * 31 + 7)
    edges = [
        (u, v, 0 if rng.random() < zero_fraction else 1) for u, v, _ in base.edges
    ]
    return Graph(n, edges)


def corpus_graphs() -> list[tuple[str, Graph]]:
    """The acceptance corpus: structured families plus seeded G(n, m) across
    n in 32..512 and m in {n, 2n, 4n}, 59 graphs total."""
    graphs: list[tuple[str, Graph]] = [
        ("path(5)", gen_path(5)),
        ("path(33)", gen_path(33)),
        ("path(512)", gen_path(512)),
        ("cycle(8)", gen_cycle(8)),
        ("cycle(64)", gen_cycle(64)),
        ("grid(3,3)", gen_grid(3, 3)),
        ("grid(8,8)", gen_grid(8, 8)),
        ("star(6)", gen_star(6)),
        ("star(33)", gen_star(33)),
        ("star(256)", gen_star(256)),
    ]
    for n in (32, 64, 128):
        for mult in (1, 2, 4):
            for seed in (11, 12, 13, 14, 15):
                graphs.append((f"gnm({n},{mult}n,s{seed})", gen_gnm(n, mult * n, seed)))
    graphs.append(("gnm(256,1n,s21)", gen_gnm(256, 256, 21)))
    graphs.append(("gnm(256,2n,s22)", gen_gnm(256, 512, 22)))
    graphs.append(("gnm(256,4n,s23)", gen_gnm(256, 1024, 23)))
    graphs.append(("gnm(512,2n,s31)", gen_gnm(512, 1024, 31)))
    return graphs


@pytest.fixture(scope="session")
def corpus() -> list[tuple[str, Graph]]:
    return corpus_graphs()
