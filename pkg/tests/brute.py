"""Slow, obviously-correct reference checks used only by the tests."""

from __future__ import annotations

import itertools

from sparsebnsl.graphs import UGraph
from sparsebnsl.pi1v import is_ancestor_tuple
from sparsebnsl.scores import Instance


def dissociation_brute(g: UGraph, k: int):
    """Smallest deletion set (of size <= k) leaving max degree <= 1, or None."""
    for r in range(k + 1):
        for S in itertools.combinations(range(g.n), r):
            gone = set(S)
            deg = [0] * g.n
            for u, v in g.edges:
                if u not in gone and v not in gone:
                    deg[u] += 1
                    deg[v] += 1
            if max(deg, default=0) <= 1:
                return S
    return None


def has_directed_cycle(n: int, arcs) -> bool:
    children = {v: [] for v in range(n)}
    for u, v in arcs:
        children[u].append(v)
    state = [0] * n

    def visit(v):
        state[v] = 1
        for w in children[v]:
            if state[w] == 1 or (state[w] == 0 and visit(w)):
                return True
        state[v] = 2
        return False

    return any(state[v] == 0 and visit(v) for v in range(n))


def moral_edges(arcs) -> set:
    parents: dict = {}
    edges = set()
    for u, v in arcs:
        parents.setdefault(v, set()).add(u)
        edges.add((min(u, v), max(u, v)))
    for ps in parents.values():
        edges.update(itertools.combinations(sorted(ps), 2))
    return edges


def has_clique(g: UGraph, ell: int) -> bool:
    adj = g.adjacency()
    return any(all(b in adj[a] for a, b in itertools.combinations(c, 2))
               for c in itertools.combinations(range(g.n), ell))


def has_hamiltonian_path(g: UGraph) -> bool:
    if g.n <= 1:
        return True
    adj = g.adjacency()
    return any(all(p[i + 1] in adj[p[i]] for i in range(g.n - 1))
               for p in itertools.permutations(range(g.n)))


def has_triangle_packing(g: UGraph) -> bool:
    adj = g.adjacency()
    if g.n % 3:
        return False

    def rec(left):
        if not left:
            return True
        a = min(left)
        for b, c in itertools.combinations(sorted(left - {a}), 2):
            if b in adj[a] and c in adj[a] and c in adj[b] and rec(left - {a, b, c}):
                return True
        return False

    return rec(frozenset(range(g.n)))


def has_multicolored_clique(g: UGraph, classes) -> bool:
    adj = g.adjacency()
    return any(all(b in adj[a] for a, b in itertools.combinations(pick, 2))
               for pick in itertools.product(*classes))


def has_multicolored_independent_set(g: UGraph, classes) -> bool:
    adj = g.adjacency()
    return any(all(b not in adj[a] for a, b in itertools.combinations(pick, 2))
               for pick in itertools.product(*classes))


def completion_brute(instance, S, Q0, R):
    """Best total over R of parent sets drawn from S, Q0 and R, where every
    vertex of Q0 and R touches at most one arc that lies inside (R+Q0) x R."""
    S, Q0, R = set(S), set(Q0), list(R)
    allowed = S | Q0 | set(R)
    inner = Q0 | set(R)
    options = []
    for v in R:
        opts = [((), instance.empty[v])]
        opts += [(e.parents, e.score) for e in instance.entries[v]
                 if set(e.parents) <= allowed - {v}]
        options.append(opts)
    best = 0
    for pick in itertools.product(*options):
        touch: dict = {}
        ok = True
        for v, (ps, _) in zip(R, pick):
            for u in ps:
                if u in inner:
                    touch[u] = touch.get(u, 0) + 1
                    touch[v] = touch.get(v, 0) + 1
        if any(c > 1 for c in touch.values()):
            ok = False
        if ok:
            best = max(best, sum(s for _, s in pick))
    return best


def random_tuple(rng, n_s, n_q, n):
    """Random (S, Q, A_Q) over ids 0..n-1 that passes the ancestor-tuple check."""
    verts = list(range(n))
    rng.shuffle(verts)
    S, Q = verts[:n_s], verts[n_s:n_s + n_q]
    inside = S + Q
    for _ in range(200):
        arcs = set()
        rank = {v: i for i, v in enumerate(rng.sample(inside, len(inside)))}
        for u, v in itertools.permutations(inside, 2):
            if rank[u] < rank[v] and rng.random() < 0.35:
                arcs.add((u, v))
        if is_ancestor_tuple(S, Q, arcs):
            return S, Q, arcs
    return S, [], set()


def random_tables(rng, n, max_entries=5, max_parents=3, max_score=20):
    """Instance with up to ``max_entries`` random parent sets per vertex."""
    tables = {}
    for v in range(n):
        others = [u for u in range(n) if u != v]
        table = {}
        for _ in range(rng.randint(0, max_entries) if others else 0):
            ps = rng.sample(others, rng.randint(1, min(max_parents, len(others))))
            table[tuple(sorted(ps))] = rng.randint(1, max_score)
        tables[v] = table
    return Instance.build(n, tables)
