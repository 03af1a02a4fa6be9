"""Instance generators: NP-hardness reductions with known answers, plus random instances."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from .graphs import UGraph
from .scores import Instance, make_entry


@dataclass(frozen=True)
class ColoredGraph:
    """Undirected graph with a partition of its vertices into color classes."""

    graph: UGraph
    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = [c for cls in self.classes for c in cls]
        if any(not cls for cls in self.classes):
            raise ValueError("color classes must be non-empty")
        if sorted(seen) != list(range(self.graph.n)):
            raise ValueError("color classes must partition the vertex set")

    @classmethod
    def from_labels(cls, graph: UGraph, labels) -> ColoredGraph:
        """Group vertices by label; classes are ordered by sorted label."""
        groups: dict = {}
        for v, lab in enumerate(labels):
            groups.setdefault(lab, []).append(v)
        return cls(graph, tuple(tuple(groups[lab]) for lab in sorted(groups)))

    @property
    def ell(self) -> int:
        return len(self.classes)


def _instance(names, tables, t, k, empty=None) -> Instance:
    index = {name: i for i, name in enumerate(names)}
    entries = [[] for _ in names]
    for child, table in tables.items():
        for parents, score in table.items():
            entries[index[child]].append(make_entry(score, (index[p] for p in parents)))
    return Instance(tuple(names), tuple(tuple(es) for es in entries),
                    tuple(empty or [0] * len(names)), t, k)


def from_clique(g: UGraph, ell: int) -> Instance:
    """Yes-instance of the dissociation-set problem iff ``g`` has an ``ell``-clique.

    Each edge e = {u, v} gets two vertices; the first scores 1 with parents
    {second, u, v}.  Threshold C(ell, 2), budget ell.
    """
    if ell < 2:
        raise ValueError("ell must be at least 2")
    names = [f"v{i}" for i in range(g.n)]
    edges = sorted(g.edges)
    names += [f"e1:{u}-{v}" for u, v in edges]
    names += [f"e2:{u}-{v}" for u, v in edges]
    tables = {f"e1:{u}-{v}": {(f"e2:{u}-{v}", f"v{u}", f"v{v}"): 1} for u, v in edges}
    return _instance(names, tables, comb(ell, 2), ell)


def from_hampath(g: UGraph) -> Instance:
    """Yes-instance for max-degree-2 moral graphs (k = 0) iff ``g`` has a Hamiltonian path."""
    names = [f"v{i}" for i in range(g.n)]
    adj = g.adjacency()
    tables = {f"v{v}": {(f"v{w}",): 1 for w in sorted(adj[v])} for v in range(g.n)}
    return _instance(names, tables, max(g.n - 1, 0), 0)


def from_triangle_cover(g: UGraph) -> Instance:
    """Yes-instance for moral components of size <= 3 (k = 0) iff ``g`` has a perfect
    triangle packing.  When 3 does not divide n the threshold is set out of reach."""
    n = g.n
    names = [f"v{i}" for i in range(n)]
    adj = g.adjacency()
    tables = {}
    for v in range(n):
        nb = sorted(adj[v])
        table = {(f"v{w}",): 1 for w in nb}
        table.update({(f"v{a}", f"v{b}"): n for a, b in itertools.combinations(nb, 2)})
        tables[f"v{v}"] = table
    if (n * n + n) % 3 == 0 and n % 3 == 0:
        t = (n * n + n) // 3
    else:
        # every vertex at its best score still falls short
        t = n * n + 1
    return _instance(names, tables, t, 0)


def from_multicolored_clique(cg: ColoredGraph) -> Instance:
    """Yes-instance for moral graphs with at most k edges iff ``cg`` has a
    multicolored clique.  Threshold C(ell, 2), budget 4 C(ell, 2) + ell."""
    ell = cg.ell
    if ell < 2:
        raise ValueError("need at least two color classes")
    g = cg.graph
    names = [f"v{i}" for i in range(g.n)]
    color = {v: i for i, cls in enumerate(cg.classes) for v in cls}
    pairs = list(itertools.combinations(range(ell), 2))
    names += [f"w{{{i + 1},{j + 1}}}" for i, j in pairs] + ["x"]
    tables = {}
    for i, j in pairs:
        table = {}
        for u, v in sorted(g.edges):
            if {color[u], color[v]} == {i, j}:
                table[(f"v{u}", f"v{v}", "x")] = 1
        tables[f"w{{{i + 1},{j + 1}}}"] = table
    return _instance(names, tables, comb(ell, 2), 4 * comb(ell, 2) + ell)


def from_multicolored_independent_set(cg: ColoredGraph) -> Instance:
    """Yes-instance of the arc-bounded problem iff ``cg`` has a multicolored
    independent set.  The last class is encoded through the parents of x.
    Threshold ell, budget |N|^2 (never binding)."""
    ell = cg.ell
    if ell < 2:
        raise ValueError("need at least two color classes")
    g = cg.graph
    adj = g.adjacency()
    last = set(cg.classes[-1])
    kept = [v for cls in cg.classes[:-1] for v in cls]
    names = [f"v{v}" for v in kept] + ["x"]
    tables: dict = {}
    for cls in cg.classes[:-1]:
        for v in cls:
            parents = (set(cls) - {v}) | (adj[v] - last)
            tables[f"v{v}"] = {tuple(f"v{u}" for u in sorted(parents)) + ("x",): 1}
    x_table = {}
    empty_x = 0
    for w in sorted(last):
        nb = tuple(sorted(adj[w] - last))
        if nb:
            x_table[tuple(f"v{u}" for u in nb)] = 1
        else:
            empty_x = 1
    tables["x"] = x_table
    empty = [0] * len(kept) + [empty_x]
    n = len(names)
    return _instance(names, tables, ell, n * n, empty)


ENUMERATE_POOL_LIMIT = 4096


def _pool_size(m: int, max_parents: int) -> int:
    return sum(comb(m, s) for s in range(1, max_parents + 1))


def _sample_parent_sets(rng, avail: list[int], max_parents: int, want: int) -> list[tuple[int, ...]]:
    """``want`` distinct non-empty subsets of ``avail``; each size in
    ``1..max_parents`` is roughly equally likely."""
    top = min(max_parents, len(avail))
    if _pool_size(len(avail), top) <= ENUMERATE_POOL_LIMIT:
        pool = [p for s in range(1, top + 1) for p in itertools.combinations(avail, s)]
        per_size = {s: comb(len(avail), s) for s in range(1, top + 1)}
        weights = np.array([1.0 / per_size[len(p)] for p in pool])
        idx = rng.choice(len(pool), size=want, replace=False, p=weights / weights.sum())
        return [pool[i] for i in idx]
    # large pools: rejection sampling, duplicates are rare
    arr = np.asarray(avail)
    chosen: list[tuple[int, ...]] = []
    seen = set()
    while len(chosen) < want:
        size = int(rng.integers(1, top, endpoint=True))
        p = tuple(sorted(int(x) for x in rng.choice(arr, size=size, replace=False)))
        if p not in seen:
            seen.add(p)
            chosen.append(p)
    return chosen


def random_instance(
    n: int,
    max_parents: int,
    entries_per_vertex: int,
    score_range: tuple[int, int],
    seed: int,
    empty_range: tuple[int, int] | None = None,
    acyclic: bool = False,
) -> Instance:
    """Seeded random instance.

    Parent-set sizes are roughly uniform in ``1..max_parents``; scores are
    uniform in the inclusive ``score_range``.  With ``acyclic=True`` parents
    precede their child in a random hidden order, so the superstructure is a
    DAG, and vertices with few predecessors get fewer entries.
    """
    if n < 1 or max_parents < 0 or entries_per_vertex < 0:
        raise ValueError("n must be positive, other counts non-negative")
    if max_parents >= n:
        raise ValueError("max_parents must be below n")
    lo, hi = score_range
    if lo < 1 or hi < lo:
        raise ValueError("score_range must satisfy 1 <= lo <= hi")
    if empty_range is not None and not 0 <= empty_range[0] <= empty_range[1]:
        raise ValueError("empty_range must satisfy 0 <= lo <= hi")
    rng = np.random.Generator(np.random.PCG64(seed))
    order = rng.permutation(n).tolist() if acyclic else list(range(n))
    rank = {v: i for i, v in enumerate(order)}
    entries = []
    for v in range(n):
        if acyclic:
            avail = sorted(order[:rank[v]])
        else:
            avail = [u for u in range(n) if u != v]
        want = entries_per_vertex
        have = _pool_size(len(avail), max_parents)
        if want > have:
            if not acyclic:
                raise ValueError(f"vertex {v} has only {have} possible parent sets, "
                                 f"{want} requested")
            want = have
        chosen = _sample_parent_sets(rng, avail, max_parents, want) if want else []
        scores = rng.integers(lo, hi, endpoint=True, size=len(chosen)).tolist()
        entries.append(tuple(make_entry(int(s), p) for s, p in zip(scores, chosen)))
    if empty_range is None:
        empty = (0,) * n
    else:
        empty = tuple(int(x) for x in rng.integers(empty_range[0], empty_range[1],
                                                    endpoint=True, size=n))
    names = tuple(str(i) for i in range(n))
    return Instance(names, tuple(entries), empty)
