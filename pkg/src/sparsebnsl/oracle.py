"""Exhaustive reference solver for tiny instances.

Every vertex picks one potential parent set; assignments that close a
directed cycle or break the constraint are discarded.  All supported
constraints are monotone (adding arcs never repairs a violation), so they
are checked on partial assignments too.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .graphs import ClassSpec, UGraph, check_class
from .result import SolveResult
from .scores import Instance, potential_parents

ORACLE_LIMIT = 10**7
EXHAUSTIVE_MAX_N = 4


class OracleTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class Constraint:
    kind: str  # "moral-class", "arc-count" or "none"
    spec: ClassSpec | None = None
    k: int | None = None

    def __post_init__(self):
        if self.kind == "moral-class" and self.spec is None:
            raise ValueError("moral-class constraint needs a ClassSpec")
        if self.kind == "arc-count" and (self.k is None or self.k < 0):
            raise ValueError("arc-count constraint needs k >= 0")
        if self.kind not in ("moral-class", "arc-count", "none"):
            raise ValueError(f"unknown constraint kind {self.kind!r}")

    @classmethod
    def moral_class(cls, spec: ClassSpec) -> Constraint:
        return cls("moral-class", spec=spec)

    @classmethod
    def arc_count(cls, k: int) -> Constraint:
        return cls("arc-count", k=k)

    @classmethod
    def unconstrained(cls) -> Constraint:
        return cls("none")

    def describe(self) -> str:
        if self.kind == "moral-class":
            return f"{self.spec.cls}+{self.spec.budget}{self.spec.mode[0]}"
        if self.kind == "arc-count":
            return f"arcs<={self.k}"
        return "none"


def _all_subsets(instance: Instance, v: int):
    others = [u for u in range(instance.n) if u != v]
    out = []
    for r in range(len(others) + 1):
        for p in itertools.combinations(others, r):
            out.append((p, instance.score(v, p)))
    return out


def oracle_solve(instance: Instance, constraint: Constraint, *, exhaustive: bool = False) -> SolveResult:
    """Maximum score over all acyclic assignments satisfying ``constraint``.

    Among equally good assignments the lexicographically smallest sorted arc
    list wins.  ``exhaustive=True`` considers every subset of the other
    vertices as a parent set (only for ``n <= 4``).
    """
    n = instance.n
    if exhaustive:
        if n > EXHAUSTIVE_MAX_N:
            raise OracleTooLarge(f"exhaustive mode is limited to n <= {EXHAUSTIVE_MAX_N}")
        cands = [_all_subsets(instance, v) for v in range(n)]
    else:
        cands = [potential_parents(instance, v) for v in range(n)]
    size = math.prod(len(c) for c in cands)
    if size > ORACLE_LIMIT:
        raise OracleTooLarge(f"{size} parent-set assignments exceed the oracle limit {ORACLE_LIMIT}")

    masks = [[sum(1 << u for u in p) for p, _ in cs] for cs in cands]
    best_rest = [0] * (n + 1)
    for v in range(n - 1, -1, -1):
        best_rest[v] = best_rest[v + 1] + max(s for _, s in cands[v])

    kind = constraint.kind
    children = [0] * n  # children among assigned vertices, as bitmasks
    chosen: list[tuple[int, ...]] = [()] * n
    best_score = -1
    best_arcs: tuple | None = None
    nodes = 0

    def reaches(src: int, targets: int) -> bool:
        seen = 0
        stack = [src]
        while stack:
            x = stack.pop()
            m = children[x] & ~seen
            if m & targets:
                return True
            seen |= m
            while m:
                low = m & -m
                stack.append(low.bit_length() - 1)
                m ^= low
        return False

    def admissible(v: int, edges: set, arcs_used: int) -> bool:
        if kind == "arc-count":
            return arcs_used <= constraint.k
        if kind == "moral-class":
            return check_class(UGraph(n, frozenset(edges)), constraint.spec)[0]
        return True

    def search(v: int, score: int, edges: frozenset, arcs_used: int):
        nonlocal best_score, best_arcs, nodes
        nodes += 1
        if score + best_rest[v] < best_score:
            return
        if v == n:
            arcs = tuple(sorted((u, w) for w in range(n) for u in chosen[w]))
            if score > best_score or (score == best_score and arcs < best_arcs):
                best_score, best_arcs = score, arcs
            return
        for (p, s), pm in zip(cands[v], masks[v]):
            if pm and reaches(v, pm):
                continue
            if p:
                new = set(edges)
                new.update((min(u, v), max(u, v)) for u in p)
                new.update(itertools.combinations(p, 2))
            else:
                new = edges
            if p and not admissible(v, new, arcs_used + len(p)):
                continue
            chosen[v] = p
            for u in p:
                children[u] |= 1 << v
            search(v + 1, score + s, frozenset(new), arcs_used + len(p))
            for u in p:
                children[u] &= ~(1 << v)
            chosen[v] = ()

    search(0, 0, frozenset(), 0)

    parents: list[list[int]] = [[] for _ in range(n)]
    for u, w in best_arcs:
        parents[w].append(u)
    witness: dict = {"constraint": constraint.describe()}
    if kind == "moral-class":
        edges = set()
        for w, p in enumerate(parents):
            edges.update((min(u, w), max(u, w)) for u in p)
            edges.update(itertools.combinations(sorted(p), 2))
        _, cert = check_class(UGraph(n, frozenset(edges)), constraint.spec)
        witness["deletion_set"] = [list(x) if isinstance(x, tuple) else x for x in cert]
        witness["moral_edges"] = len(edges)
    return SolveResult(
        variant="oracle",
        score=best_score,
        arcs=best_arcs,
        t=instance.t,
        k=instance.k,
        n=n,
        witness=witness,
        stats={"assignments": size, "nodes": nodes},
    )
