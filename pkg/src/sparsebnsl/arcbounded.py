"""Solvers for BNSL with a bound k on the number of arcs (or of moral edges).

* ``solve_ba_topological``: exact knapsack DP when the superstructure is a DAG.
* ``solve_colored_ba`` / ``solve_ba_color_coding``: randomized color coding
  with a subset DP over color classes; one-sided error.
* ``solve_pi0e``: brute force over superstructure arc subsets for moral
  graphs with at most k edges.
"""

from __future__ import annotations

import itertools
import math
from array import array
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _backend
from .graphs import ArcSet, is_dag, moralize, topological_order
from .result import SolveResult
from .scores import Instance, TrivialYes, candidates, normalize, superstructure


class CyclicSuperstructure(ValueError):
    """The topological DP needs an acyclic superstructure."""

    def __init__(self, cycle):
        super().__init__("superstructure has a directed cycle " + " -> ".join(map(str, cycle)))
        self.cycle = cycle


class NotNormalized(ValueError):
    pass


@dataclass(frozen=True)
class Coloring:
    """Colors are ``1 .. c``."""

    colors: tuple[int, ...]
    c: int

    def __post_init__(self):
        if self.c < 1:
            raise ValueError("need at least one color")
        if any(not 1 <= x <= self.c for x in self.colors):
            raise ValueError(f"colors must lie in 1..{self.c}")

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.c)]
        for v, x in enumerate(self.colors):
            out[x - 1].append(v)
        return out


def color_loyal(arcs: ArcSet, chi: Coloring) -> bool:
    """No arc inside a color class, and per class at most one vertex with parents."""
    if any(chi.colors[u] == chi.colors[v] for u, v in arcs.arcs):
        return False
    with_parents = {v for _, v in arcs.arcs}
    per_class = [0] * (chi.c + 1)
    for v in with_parents:
        per_class[chi.colors[v]] += 1
    return all(x <= 1 for x in per_class)


def _arc_cap(instance: Instance, k: int) -> int:
    """k capped at the largest number of arcs any assignment can use."""
    most = sum(max([0] + [e.size for e in es]) for es in instance.entries)
    return min(k, most)


def _arcs_of(parent_sets: dict[int, tuple[int, ...]]) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((u, v) for v, ps in parent_sets.items() for u in ps))


def solve_ba_topological(instance: Instance) -> SolveResult:
    """Exact optimum with at most k arcs when the superstructure is acyclic.

    With an acyclic superstructure every combination of parent sets is a
    DAG, so only the arc budget couples the vertices:
    ``T[i][j] = max over P of f_i(P) + T[i-1][j - |P|]``.
    """
    sup = superstructure(instance)
    topo = topological_order(ArcSet(sup.n, sup.arcs))
    if not topo.acyclic:
        raise CyclicSuperstructure(topo.cycle)
    n = instance.n
    k = _arc_cap(instance, instance.k)
    order = topo.order
    width = k + 1
    table = [[0] * width]
    choice = []
    for v in order:
        prev = table[-1]
        cands = candidates(instance, v)
        row = [0] * width
        pick = [0] * width
        for j in range(width):
            best, arg = -1, 0
            for idx, e in enumerate(cands):
                if e.size <= j:
                    val = e.score + prev[j - e.size]
                    if val > best:
                        best, arg = val, idx
            row[j], pick[j] = best, arg
        table.append(row)
        choice.append(pick)
    parent_sets = {}
    j = k
    for pos in range(n - 1, -1, -1):
        v = order[pos]
        e = candidates(instance, v)[choice[pos][j]]
        parent_sets[v] = e.parents
        j -= e.size
    arcs = _arcs_of(parent_sets)
    score = table[-1][k]
    assert len(arcs) <= instance.k and instance.total([parent_sets[v] for v in range(n)]) == score
    return SolveResult("ba-dp", score, arcs, instance.t, instance.k, n,
                       witness={"arc_count": len(arcs)},
                       stats={"table_cells": (n + 1) * width})


class _Flat:
    """Candidates (empty set first, then stored sets with at most k members)
    flattened into int64 arrays for the colored DP kernel."""

    def __init__(self, instance: Instance, k: int):
        cv, cs, cz, cst, mem = [], [], [], [0], []
        self.parents: list[tuple[int, ...]] = []
        for v in range(instance.n):
            for e in candidates(instance, v):
                if e.size > k:
                    continue
                cv.append(v)
                cs.append(e.score)
                cz.append(e.size)
                mem.extend(e.parents)
                cst.append(len(mem))
                self.parents.append(e.parents)
        self.vertex = array("q", cv)
        self.score = array("q", cs) if max(cs, default=0) < 2**63 else cs
        self.size = array("q", cz)
        self.start = array("q", cst)
        self.members = array("q", mem)
        self.empty = array("q", instance.empty)
        self.bound = sum(instance.best_scores) + sum(instance.empty)


def _check_normalized(instance: Instance):
    if any(instance.empty):
        raise NotNormalized("colored DP expects every empty-set score to be 0; normalize first")


def _colored_run(flat: _Flat, n: int, k: int, colors, c: int):
    value, chosen = _backend.colored_dp(
        c, k, np.asarray(colors, dtype=np.int64) - 1, flat.vertex, flat.score, flat.size,
        flat.start, flat.members, flat.empty, score_bound=flat.bound)
    parent_sets = {v: () for v in range(n)}
    for ref in chosen:
        parent_sets[flat.vertex[ref]] = flat.parents[ref]
    return value, parent_sets


def solve_colored_ba(instance: Instance, chi: Coloring) -> SolveResult:
    """Best color-loyal arc set with at most k arcs for the coloring ``chi``."""
    _check_normalized(instance)
    if len(chi.colors) != instance.n:
        raise ValueError("coloring must assign a color to every vertex")
    k = _arc_cap(instance, instance.k)
    flat = _Flat(instance, k)
    value, parent_sets = _colored_run(flat, instance.n, k, chi.colors, chi.c)
    arcs = _arcs_of(parent_sets)
    arcset = ArcSet.of(instance.n, arcs)
    assert is_dag(arcset) and len(arcs) <= instance.k and color_loyal(arcset, chi)
    return SolveResult("ba-colored", value, arcs, instance.t, instance.k, instance.n,
                       witness={"coloring": list(chi.colors)}, stats={"colors": chi.c})


def default_repetitions(k: int) -> int:
    return math.ceil(math.exp(2 * k))


def _trial_chunk(args):
    instance, k, colorings, c, first = args
    flat = _Flat(instance, k)
    best = (-1, -1, None)
    hits = 0
    for r, row in enumerate(colorings):
        value, parent_sets = _colored_run(flat, instance.n, k, row, c)
        if value >= instance.t:
            hits += 1
        if value > best[0]:
            best = (value, first + r, parent_sets)
    return best, hits


def solve_ba_color_coding(instance: Instance, seed: int, repetitions: int | None = None,
                          *, multiplier: int = 1, threads: int = 1) -> SolveResult:
    """Color coding: best color-loyal solution over independent uniform colorings.

    Every reported score is achieved by a valid arc set, so a no-instance
    is never answered yes.  A yes-instance is missed with probability at
    most (1 - e^(-2k))^repetitions.
    Without ``repetitions`` the count is ``multiplier * ceil(e^(2k))``.
    Colorings are drawn up front from ``seed``; any thread count gives the
    same result.
    """
    n = instance.n
    if instance.k < 1:
        # no arc is affordable, so the empty arc set is exact
        return SolveResult("ba-cc", sum(instance.empty), (), instance.t, instance.k, n,
                           witness={"coloring": [1] * n, "repetition": 0},
                           stats={"colors": 1, "repetitions": 0, "hits": 0, "seed": seed})
    base = sum(instance.empty)
    shifted, offset = normalize(instance.with_threshold(t=max(instance.t, base)))
    # any solution uses at most k arcs, and no more than the scores can place
    k = max(1, _arc_cap(shifted, instance.k))
    reps = multiplier * default_repetitions(k) if repetitions is None else repetitions
    if reps < 1:
        raise ValueError("repetitions must be positive")
    c = min(2 * k, n)
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    colorings = rng.integers(1, c, endpoint=True, size=(reps, n), dtype=np.int64)

    if threads > 1 and reps > 1:
        bounds = np.linspace(0, reps, threads + 1).astype(int)
        jobs = [(shifted, k, colorings[a:b], c, int(a)) for a, b in zip(bounds, bounds[1:]) if b > a]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_trial_chunk, jobs))
    else:
        parts = [_trial_chunk((shifted, k, colorings, c, 0))]
    best = (-1, -1, None)
    hits = 0
    for (value, rep, parent_sets), h in parts:
        hits += h
        if value > best[0]:
            best = (value, rep, parent_sets)
    value, rep, parent_sets = best
    arcs = _arcs_of(parent_sets)
    chi = Coloring(tuple(int(x) for x in colorings[rep]), c)
    arcset = ArcSet.of(n, arcs)
    score = value + offset
    assert is_dag(arcset) and len(arcs) <= instance.k and color_loyal(arcset, chi)
    assert instance.total([parent_sets[v] for v in range(n)]) == score
    return SolveResult("ba-cc", score, arcs, instance.t, instance.k, n,
                       witness={"coloring": list(chi.colors), "repetition": rep},
                       stats={"colors": c, "repetitions": reps, "hits": hits, "seed": seed})


PI0E_LIMIT = 10**7


def solve_pi0e(instance: Instance) -> SolveResult:
    """Brute force over arc subsets of the superstructure with at most k arcs.

    A subset is kept when it is acyclic and its moral graph has at most k
    edges.  Ties go to the lexicographically smallest sorted arc list.
    """
    n, k = instance.n, instance.k
    arcs_f = sorted(superstructure(instance).arcs)
    top = min(k, len(arcs_f))
    count = sum(math.comb(len(arcs_f), r) for r in range(top + 1))
    if count > PI0E_LIMIT:
        raise ValueError(f"{count} arc subsets exceed the brute-force limit {PI0E_LIMIT}")
    best_score = -1
    best_arcs: tuple = ()
    checked = 0
    for r in range(top + 1):
        for subset in itertools.combinations(arcs_f, r):
            parents: list[list[int]] = [[] for _ in range(n)]
            for u, v in subset:
                parents[v].append(u)
            score = instance.total(parents)
            if score < best_score or (score == best_score and subset >= best_arcs):
                continue
            arcset = ArcSet.of(n, subset)
            if not is_dag(arcset):
                continue
            checked += 1
            if len(moralize(arcset).edges) > k:
                continue
            best_score, best_arcs = score, subset
    moral = len(moralize(ArcSet.of(n, best_arcs)).edges)
    return SolveResult("pi0e", best_score, best_arcs, instance.t, k, n,
                       witness={"moral_edges": moral},
                       stats={"subsets": count, "checked": checked})


__all__ = [
    "Coloring", "CyclicSuperstructure", "NotNormalized", "TrivialYes", "color_loyal",
    "default_repetitions", "solve_ba_color_coding", "solve_ba_topological",
    "solve_colored_ba", "solve_pi0e",
]
