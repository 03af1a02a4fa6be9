"""Exact maximum weight matching on general graphs with non-negative integer weights."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import _backend

BRUTE_FORCE_LIMIT = 24


@dataclass(frozen=True)
class WeightedGraph:
    n: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        seen = set()
        for u, v, w in self.edges:
            if u == v:
                raise ValueError(f"self-loop on {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {(u, v)} out of range for n={self.n}")
            if isinstance(w, bool) or not isinstance(w, int) or w < 0:
                raise ValueError(f"edge {(u, v)}: weight must be a non-negative int")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"parallel edge {key}")
            seen.add(key)

    @classmethod
    def of(cls, n: int, edges: Iterable[tuple[int, int, int]]) -> WeightedGraph:
        return cls(n, tuple((int(u), int(v), int(w)) for u, v, w in edges))


@dataclass(frozen=True)
class Matching:
    edges: tuple[tuple[int, int, int], ...]
    total: int

    def mates(self, n: int) -> list[int]:
        out = [-1] * n
        for u, v, _ in self.edges:
            out[u], out[v] = v, u
        return out


def _from_mates(g: WeightedGraph, mates: list[int]) -> Matching:
    chosen = []
    for u, v, w in g.edges:
        if mates[u] == v:
            chosen.append((u, v, w))
    return Matching(tuple(chosen), sum(w for _, _, w in chosen))


def max_weight_matching(g: WeightedGraph) -> Matching:
    """Maximum total weight matching (blossom algorithm).

    Edges are reported in input order, using their input orientation.
    """
    return _from_mates(g, _backend.mwm_mates(g.n, list(g.edges)))


def brute_force_matching(g: WeightedGraph) -> Matching:
    """Exhaustive maximum over all matchings; small graphs only."""
    if len(g.edges) > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force is limited to {BRUTE_FORCE_LIMIT} edges")
    edges = g.edges
    best: tuple[int, tuple[int, ...]] = (0, ())

    def grow(i: int, used: int, total: int, picked: tuple[int, ...]):
        nonlocal best
        if total > best[0]:
            best = (total, picked)
        for j in range(i, len(edges)):
            u, v, w = edges[j]
            bits = (1 << u) | (1 << v)
            if not used & bits:
                grow(j + 1, used | bits, total + w, picked + (j,))

    grow(0, 0, 0, ())
    chosen = tuple(edges[j] for j in best[1])
    return Matching(chosen, best[0])
