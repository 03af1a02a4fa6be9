"""Directed and undirected graph utilities and sparse-class membership checks."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

PI0, PI1, PI2, PI3COC, PIFOREST = "Pi0", "Pi1", "Pi2", "Pi3COC", "PiForest"
CLASSES = (PI0, PI1, PI2, PI3COC, PIFOREST)
VERTEX, EDGE = "vertex", "edge"


class UnsupportedClass(ValueError):
    """The (class, mode, budget) combination has no exact checker here."""


class CycleError(ValueError):
    def __init__(self, cycle):
        super().__init__("directed cycle " + " -> ".join(map(str, cycle)))
        self.cycle = cycle


@dataclass(frozen=True)
class ArcSet:
    n: int
    arcs: frozenset[tuple[int, int]]

    def __post_init__(self):
        for u, v in self.arcs:
            if u == v:
                raise ValueError(f"self-loop on {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"arc {(u, v)} out of range for n={self.n}")

    @classmethod
    def of(cls, n: int, arcs: Iterable[tuple[int, int]] = ()) -> ArcSet:
        return cls(n, frozenset((int(u), int(v)) for u, v in arcs))

    @classmethod
    def from_parents(cls, parent_sets) -> ArcSet:
        return cls.of(len(parent_sets), ((u, v) for v, ps in enumerate(parent_sets) for u in ps))

    def __len__(self):
        return len(self.arcs)

    def __iter__(self):
        return iter(sorted(self.arcs))

    def sorted(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.arcs))

    def parent_sets(self) -> list[tuple[int, ...]]:
        ps: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            ps[v].append(u)
        return [tuple(sorted(p)) for p in ps]

    def children(self) -> list[list[int]]:
        ch: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in sorted(self.arcs):
            ch[u].append(v)
        return ch


@dataclass(frozen=True)
class UGraph:
    """Simple undirected graph; edges are stored as ``(u, v)`` with ``u < v``."""

    n: int
    edges: frozenset[tuple[int, int]]

    @classmethod
    def of(cls, n: int, edges: Iterable[tuple[int, int]] = ()) -> UGraph:
        norm = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop on {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {(u, v)} out of range for n={n}")
            norm.add((min(u, v), max(u, v)))
        return cls(n, frozenset(norm))

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def components(self) -> list[list[int]]:
        adj = self.adjacency()
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def without_vertices(self, removed: Iterable[int]) -> UGraph:
        gone = set(removed)
        return UGraph(self.n, frozenset(e for e in self.edges if not gone & set(e)))


@dataclass(frozen=True)
class MoralGraph(UGraph):
    tags: dict = field(default_factory=dict, compare=False, hash=False)

    def moral_edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(e for e, tag in self.tags.items() if tag == "moral")


@dataclass(frozen=True)
class ClassSpec:
    cls: str
    mode: str
    budget: int

    def __post_init__(self):
        if self.cls not in CLASSES:
            raise ValueError(f"unknown graph class {self.cls!r}")
        if self.mode not in (VERTEX, EDGE):
            raise ValueError(f"unknown deletion mode {self.mode!r}")
        if self.budget < 0:
            raise ValueError("budget must be non-negative")


class TopologicalOrder(NamedTuple):
    order: list[int] | None
    cycle: list[int] | None

    @property
    def acyclic(self) -> bool:
        return self.cycle is None


def _as_arcset(arcs) -> ArcSet:
    return arcs if isinstance(arcs, ArcSet) else ArcSet.of(arcs[0], arcs[1])


def topological_order(arcs: ArcSet) -> TopologicalOrder:
    """Kahn's algorithm taking the smallest ready id first.

    On cyclic input the order is ``None`` and ``cycle`` lists the vertices of
    one directed cycle, starting from its smallest id.
    """
    arcs = _as_arcset(arcs)
    children = arcs.children()
    indeg = [0] * arcs.n
    for _, v in arcs.arcs:
        indeg[v] += 1
    ready = [v for v in range(arcs.n) if indeg[v] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        u = heapq.heappop(ready)
        order.append(u)
        for w in children[u]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)
    if len(order) == arcs.n:
        return TopologicalOrder(order, None)
    return TopologicalOrder(None, _find_cycle(arcs.n, children, indeg))


def _find_cycle(n, children, indeg) -> list[int]:
    # every vertex left over by Kahn keeps a left-over parent, so walking
    # parents backwards must close a cycle
    alive = [d > 0 for d in indeg]
    parents: list[list[int]] = [[] for _ in range(n)]
    for u in range(n):
        if alive[u]:
            for w in children[u]:
                if alive[w]:
                    parents[w].append(u)
    start = min(v for v in range(n) if alive[v])
    pos: dict[int, int] = {}
    path = []
    v = start
    while v not in pos:
        pos[v] = len(path)
        path.append(v)
        v = min(parents[v])
    cycle = path[pos[v]:][::-1]
    i = cycle.index(min(cycle))
    return cycle[i:] + cycle[:i]


def is_dag(arcs: ArcSet) -> bool:
    return topological_order(arcs).acyclic


def moralize(arcs: ArcSet) -> MoralGraph:
    """Undirected skeleton plus an edge between every pair of co-parents."""
    arcs = _as_arcset(arcs)
    topo = topological_order(arcs)
    if not topo.acyclic:
        raise CycleError(topo.cycle)
    tags: dict[tuple[int, int], str] = {}
    for u, v in arcs.arcs:
        tags[(min(u, v), max(u, v))] = "direct"
    for ps in arcs.parent_sets():
        for i, a in enumerate(ps):
            for b in ps[i + 1:]:
                tags.setdefault((a, b), "moral")
    return MoralGraph(arcs.n, frozenset(tags), tags)


def max_degree(g: UGraph) -> int:
    return max((len(a) for a in g.adjacency()), default=0)


def dissociation_set_at_most(g: UGraph, k: int) -> tuple[int, ...] | None:
    """A vertex set S with ``|S| <= k`` such that ``g - S`` has max degree <= 1.

    Bounded search tree: take the lowest-id vertex of degree >= 2 and its two
    lowest-id neighbours; any solution contains one of the three.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    adj = g.adjacency()

    def branch(removed: frozenset[int], budget: int):
        for v in range(g.n):
            if v in removed:
                continue
            nbrs = sorted(x for x in adj[v] if x not in removed)
            if len(nbrs) >= 2:
                break
        else:
            return removed
        if budget == 0:
            return None
        u, w = nbrs[0], nbrs[1]
        for x in (u, v, w):
            found = branch(removed | {x}, budget - 1)
            if found is not None:
                return found
        return None

    found = branch(frozenset(), k)
    return None if found is None else tuple(sorted(found))


def feedback_edge_number(g: UGraph) -> int:
    return len(g.edges) - g.n + len(g.components())


def feedback_edge_set(g: UGraph) -> tuple[tuple[int, int], ...]:
    """Edges outside a spanning forest (union-find in sorted edge order)."""
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    extra = []
    for u, v in sorted(g.edges):
        ru, rv = find(u), find(v)
        if ru == rv:
            extra.append((u, v))
        else:
            parent[ru] = rv
    return tuple(extra)


def check_class(g: UGraph, spec: ClassSpec):
    """Return ``(member, witness)`` for ``g`` in ``spec.cls + budget`` deletions.

    The witness is the deletion set (vertices or edges) proving membership,
    or ``None`` when ``g`` is not a member.  Combinations without an exact
    checker raise :class:`UnsupportedClass`.
    """
    k = spec.budget
    if spec.cls == PI0 and spec.mode == EDGE:
        ok = len(g.edges) <= k
        return ok, (tuple(sorted(g.edges)) if ok else None)
    if spec.cls == PI1 and spec.mode == VERTEX:
        s = dissociation_set_at_most(g, k)
        return s is not None, s
    if spec.cls == PI2 and k == 0:
        ok = max_degree(g) <= 2
        return ok, (() if ok else None)
    if spec.cls == PI3COC and k == 0:
        ok = all(len(c) <= 3 for c in g.components())
        return ok, (() if ok else None)
    if spec.cls == PIFOREST and spec.mode == EDGE:
        ok = feedback_edge_number(g) <= k
        return ok, (feedback_edge_set(g) if ok else None)
    raise UnsupportedClass(f"no exact checker for {spec.cls}+{k}{spec.mode[0]}")
