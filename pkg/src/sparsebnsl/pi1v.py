"""Exact solver for BNSL where the moral graph must have a dissociation set of size <= k.

A solution is split around a dissociation set S: the vertices Q outside S
that are ancestors of S together with the arcs A_Q among S ∪ Q form an
ancestor tuple, and every other vertex (the rest R) receives its parents
through a "suitable" arc set A_R.  For fixed (S, Q, A_Q) the best A_R is a
maximum weight matching problem.  The solver enumerates S, Q and A_Q and
completes each candidate with one matching.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from . import _backend
from .graphs import ArcSet, UGraph, dissociation_set_at_most, is_dag, moralize
from .matching import WeightedGraph
from .result import SolveResult
from .scores import Instance, candidates, pool_profile, prune_parent_size


class Verdict(NamedTuple):
    ok: bool
    violation: str | None = None

    def __bool__(self):
        return self.ok


class TuplePartition(NamedTuple):
    Q0: frozenset[int]
    Q1: frozenset[int]
    R: frozenset[int]


class Completion(NamedTuple):
    arcs: tuple[tuple[int, int], ...]
    score: int
    parent_sets: dict[int, tuple[int, ...]]
    meets: bool | None


def _mask(vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def _bits(m: int) -> list[int]:
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return out


def _children_masks(arcs: Iterable[tuple[int, int]]) -> dict[int, int]:
    ch: dict[int, int] = {}
    for u, v in arcs:
        ch[u] = ch.get(u, 0) | (1 << v)
    return ch


def _descendants(ch: dict[int, int], v: int) -> int:
    seen = 0
    stack = [v]
    while stack:
        x = stack.pop()
        new = ch.get(x, 0) & ~seen
        seen |= new
        stack.extend(_bits(new))
    return seen


def _outside_degrees(S: frozenset[int], arcs: Iterable[tuple[int, int]]) -> dict[int, set[int]]:
    """Neighbours outside S in the moral graph of ``arcs`` (no acyclicity needed)."""
    parents: dict[int, set[int]] = {}
    nbrs: dict[int, set[int]] = {}
    for u, v in arcs:
        parents.setdefault(v, set()).add(u)
        nbrs.setdefault(u, set()).add(v)
        nbrs.setdefault(v, set()).add(u)
    for ps in parents.values():
        for a, b in itertools.combinations(ps, 2):
            nbrs.setdefault(a, set()).add(b)
            nbrs.setdefault(b, set()).add(a)
    return {v: {w for w in ws if w not in S} for v, ws in nbrs.items()}


def is_ancestor_tuple(S, Q, A_Q) -> Verdict:
    """Check that (Q, A_Q) is an ancestor tuple for S.

    (a) the arcs form a DAG on S ∪ Q; (b) every vertex of Q has a descendant
    in S; (c) in the moral graph of A_Q every vertex of Q has at most one
    neighbour outside S.  The first violated condition is reported.
    """
    S, Q = frozenset(S), frozenset(Q)
    if S & Q:
        raise ValueError("S and Q must be disjoint")
    A_Q = frozenset(A_Q)
    inside = S | Q
    for u, v in A_Q:
        if u not in inside or v not in inside or u == v:
            raise ValueError(f"arc {(u, v)} is not an arc over S ∪ Q")
    n = max(inside, default=-1) + 1
    if not is_dag(ArcSet.of(n, A_Q)):
        return Verdict(False, "a: arcs contain a directed cycle")
    ch = _children_masks(A_Q)
    smask = _mask(S)
    for q in sorted(Q):
        if not _descendants(ch, q) & smask:
            return Verdict(False, f"b: vertex {q} has no descendant in S")
    outside = _outside_degrees(S, A_Q)
    for q in sorted(Q):
        if len(outside.get(q, ())) > 1:
            return Verdict(False, f"c: vertex {q} has {len(outside[q])} moral neighbours outside S")
    return Verdict(True)


def partition(S, Q, A_Q, n: int) -> TuplePartition:
    S, Q = frozenset(S), frozenset(Q)
    outside = _outside_degrees(S, A_Q)
    q0 = frozenset(q for q in Q if not outside.get(q))
    return TuplePartition(q0, Q - q0, frozenset(range(n)) - S - Q)


def is_suitable(A_R, S, Q, A_Q, n: int) -> Verdict:
    """Arcs into R from S ∪ Q0 ∪ R; each vertex of Q0 ∪ R touches at most one
    arc that lies inside (R ∪ Q0) x R."""
    S = frozenset(S)
    q0, _, R = partition(S, Q, A_Q, n)
    sources = S | q0 | R
    touched: dict[int, int] = {}
    for u, v in sorted(A_R):
        if u == v:
            return Verdict(False, f"self-loop on {u}")
        if v not in R or u not in sources:
            return Verdict(False, f"arc {(u, v)} is outside (S ∪ Q0 ∪ R) x R")
        if u in S:
            continue
        for x in (u, v):
            touched[x] = touched.get(x, 0) + 1
            if touched[x] > 1:
                return Verdict(False, f"vertex {x} has two arcs inside (R ∪ Q0) x R")
    return Verdict(True)


class PreconditionError(ValueError):
    pass


def compose(S, Q, A_Q, A_R, n: int) -> ArcSet:
    ok = is_ancestor_tuple(S, Q, A_Q)
    if not ok:
        raise PreconditionError(f"not an ancestor tuple ({ok.violation})")
    ok = is_suitable(A_R, S, Q, A_Q, n)
    if not ok:
        raise PreconditionError(f"arc set is not suitable ({ok.violation})")
    dag = ArcSet.of(n, set(A_Q) | set(A_R))
    if __debug__:
        assert is_dag(dag)
        assert _is_dissociation(moralize(dag), S)
    return dag


def _is_dissociation(g: UGraph, S) -> bool:
    return all(len(a) <= 1 for a in g.without_vertices(S).adjacency())


def decompose(dag: ArcSet, S):
    """Split ``dag`` around the dissociation set S into (Q, A_Q, A_R)."""
    S = frozenset(S)
    if not is_dag(dag):
        raise PreconditionError("input is not a DAG")
    if not _is_dissociation(moralize(dag), S):
        raise PreconditionError("S is not a dissociation set of the moral graph")
    ch = _children_masks(dag.arcs)
    smask = _mask(S)
    Q = frozenset(v for v in range(dag.n) if v not in S and _descendants(ch, v) & smask)
    inside = S | Q
    A_Q = frozenset(a for a in dag.arcs if a[0] in inside and a[1] in inside)
    return Q, A_Q, frozenset(dag.arcs - A_Q)


# ---------------------------------------------------------------- completion

def _profiles(instance: Instance, S: frozenset[int]):
    smask = _mask(S)
    return {v: pool_profile(instance, v, smask) for v in range(instance.n) if v not in S}


def completion_graph(instance: Instance, S, Q, A_Q):
    """The literal matching instance on Q0 ∪ R ∪ R'.

    Returns ``(graph, labels)`` where ``labels[i]`` is ``("q0", w)``,
    ``("r", v)`` or ``("r'", v)``.  Edges whose weight has no admissible
    parent set are left out.
    """
    S = frozenset(S)
    q0, _, R = partition(S, Q, A_Q, instance.n)
    prof = _profiles(instance, S)
    labels = [("q0", w) for w in sorted(q0)] + [("r", v) for v in sorted(R)] \
        + [("r'", v) for v in sorted(R)]
    index = {lab: i for i, lab in enumerate(labels)}
    edges = []
    for v in sorted(R):
        edges.append((index[("r", v)], index[("r'", v)], prof[v].inside[0]))
    for v in sorted(R):
        for w in sorted(q0):
            hit = prof[v].with_one.get(w)
            if hit is not None:
                edges.append((index[("r", v)], index[("q0", w)], hit[0]))
    for v, w in itertools.combinations(sorted(R), 2):
        phis = [prof[a].with_one[b][0] + prof[b].inside[0]
                for a, b in ((v, w), (w, v)) if b in prof[a].with_one]
        if phis:
            edges.append((index[("r", v)], index[("r", w)], max(phis)))
    return WeightedGraph.of(len(labels), edges), labels


def _complete(prof, R: list[int], q0: Iterable[int], force_python=False):
    """Compact form of the reduction: weights are gains over the Z edge.

    Every R vertex starts from its best S-only parent set; Y and X edges keep
    only their strict gain over those defaults, so R' disappears and
    dominated edges are dropped.
    """
    rset = set(R)
    base = 0
    parent_sets: dict[int, tuple[int, ...]] = {}
    for v in R:
        score, ps = prof[v].inside
        base += score
        parent_sets[v] = ps
    ids: dict[int, int] = {}
    edges = []
    # (u, w, gain, child, chosen set of the child)
    meaning = []

    def vid(x):
        if x not in ids:
            ids[x] = len(ids)
        return ids[x]

    for w in sorted(q0):
        for v in R:
            hit = prof[v].with_one.get(w)
            if hit is not None and hit[0] > prof[v].inside[0]:
                edges.append((vid(v), vid(w), hit[0] - prof[v].inside[0]))
                meaning.append((v, hit[1]))
    for v in R:
        for w, hit in prof[v].with_one.items():
            if w not in rset:
                continue
            if w < v and v in prof[w].with_one:
                continue  # pair already handled from w's side
            fwd = hit[0] + prof[w].inside[0]  # v takes w as parent
            back = prof[w].with_one.get(v)
            bwd = back[0] + prof[v].inside[0] if back is not None else -1
            if fwd > bwd or (fwd == bwd and v < w):
                best, child, ps = fwd, v, hit[1]
            else:
                best, child, ps = bwd, w, back[1]
            gain = best - prof[v].inside[0] - prof[w].inside[0]
            if gain > 0:
                a, b = (v, w) if v < w else (w, v)
                edges.append((vid(a), vid(b), gain))
                meaning.append((child, ps))
    extra = 0
    if edges:
        mates = _backend.mwm_mates(len(ids), edges, force_python=force_python)
        for (a, b, gain), (child, ps) in zip(edges, meaning):
            if mates[a] == b:
                extra += gain
                parent_sets[child] = ps
    return base + extra, parent_sets


def solve_completion(instance: Instance, S, Q, A_Q, threshold: int | None = None) -> Completion:
    """Best suitable arc set for the ancestor tuple (Q, A_Q) of S."""
    S = frozenset(S)
    ok = is_ancestor_tuple(S, Q, A_Q)
    if not ok:
        raise PreconditionError(f"not an ancestor tuple ({ok.violation})")
    q0, _, R = partition(S, Q, A_Q, instance.n)
    prof = _profiles(instance, S)
    score, parent_sets = _complete(prof, sorted(R), q0)
    arcs = tuple(sorted((u, v) for v, ps in parent_sets.items() for u in ps))
    meets = None if threshold is None else score >= threshold
    return Completion(arcs, score, parent_sets, meets)


# ------------------------------------------------------------------- solver

@dataclass
class _UnitResult:
    score: int
    arcs: tuple | None
    S: tuple[int, ...]
    tuples: int
    completions: int
    nodes: int


def _solve_unit(instance: Instance, S: tuple[int, ...], k: int, floor: int) -> _UnitResult:
    """All ancestor tuples for one dissociation set S.

    ``floor`` is a score known to be achievable; branches whose upper bound
    is strictly below the incumbent are cut, so ties survive.
    """
    n = instance.n
    smask = _mask(S)
    sset = frozenset(S)
    others = [v for v in range(n) if v not in sset]
    prof = _profiles(instance, sset)
    ub_r = {v: max([prof[v].inside[0]] + [h[0] for h in prof[v].with_one.values()])
            for v in others}
    cand = [candidates(instance, v) for v in range(n)]

    best_score = floor
    best_arcs = None
    tuples = completions = nodes = 0

    # Q vertices reach S along superstructure arcs, so only ancestors qualify
    feeders = [0] * n
    for v in range(n):
        for e in cand[v]:
            feeders[v] |= e.mask
    seen = smask
    frontier = smask
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= feeders[v]
        frontier = nxt & ~seen
        seen |= frontier
    pool = [v for v in others if seen >> v & 1]

    for qsize in range(min(2 * len(S), len(pool)) + 1):
        for Q in itertools.combinations(pool, qsize):
            qmask = _mask(Q)
            sq = sorted(S + Q)
            sqmask = smask | qmask
            lists = []
            cover = 0
            for v in sq:
                # a Q vertex may have one Q parent (its single outside neighbour);
                # an S vertex two, which then become each other's neighbour
                limit = 1 if qmask >> v & 1 else 2
                lst = [e for e in cand[v]
                       if not e.mask & ~sqmask and (e.mask & qmask).bit_count() <= limit]
                lists.append(lst)
                for e in lst:
                    cover |= e.mask
            if cover & qmask != qmask:
                continue  # some Q vertex can never be a parent, so never an ancestor
            if qsize and not _all_reach(sq, lists, Q, smask):
                continue
            R = [v for v in others if not qmask >> v & 1]
            ub_rest_r = sum(ub_r[v] for v in R)
            depth = len(sq)
            tail = [0] * (depth + 1)
            reach = [0] * (depth + 1)  # vertices that later parent sets may still use
            for i in range(depth - 1, -1, -1):
                tail[i] = tail[i + 1] + max(e.score for e in lists[i])
                reach[i] = reach[i + 1]
                for e in lists[i]:
                    reach[i] |= e.mask
            if tail[0] + ub_rest_r < best_score:
                continue
            memo: dict[int, tuple[int, dict]] = {}
            if qsize:
                # more Q0 vertices only add matching edges, so Q0 = Q bounds every completion
                completions += 1
                memo[qmask] = _complete(prof, R, Q)
                ub_rest_r = memo[qmask][0]
                if tail[0] + ub_rest_r < best_score:
                    continue
            anc = [0] * n
            desc = [0] * n
            qnbr = [0] * n
            chosen: dict[int, tuple[int, ...]] = {}

            def completion(q0mask: int):
                nonlocal completions
                hit = memo.get(q0mask)
                if hit is None:
                    completions += 1
                    hit = memo[q0mask] = _complete(prof, R, _bits(q0mask))
                return hit

            def dfs(i: int, score: int, open_q: int):
                # open_q: Q vertices without a Q neighbour so far (a superset of Q0)
                nonlocal best_score, best_arcs, tuples, nodes
                nodes += 1
                if score + tail[i] + ub_rest_r < best_score:
                    return
                for q in Q:
                    if not desc[q] & smask and not (desc[q] | 1 << q) & reach[i]:
                        return  # q can no longer reach S
                if i == depth:
                    tuples += 1
                    if score + ub_rest_r < best_score:
                        return
                    comp, psets = completion(open_q)
                    total = score + comp
                    if total < best_score:
                        return
                    arcs = [(u, v) for v, ps in chosen.items() for u in ps]
                    arcs += [(u, v) for v, ps in psets.items() for u in ps]
                    arcs = tuple(sorted(arcs))
                    if total > best_score or best_arcs is None or arcs < best_arcs:
                        best_score, best_arcs = total, arcs
                    return
                v = sq[i]
                vbit = 1 << v
                below = desc[v] | vbit
                for e in lists[i]:
                    pm = e.mask
                    up = pm
                    for u in e.parents:
                        up |= anc[u]
                    if up & below:
                        continue  # would close a directed cycle
                    a = b = -1
                    pq = pm & qmask
                    if pq:
                        if vbit & qmask:
                            a, b = v, pq.bit_length() - 1
                        elif pq & (pq - 1):
                            a, b = (pq & -pq).bit_length() - 1, pq.bit_length() - 1
                    now_open = open_q
                    if a >= 0:
                        if qnbr[a] & ~(1 << b) or qnbr[b] & ~(1 << a):
                            continue
                        now_open &= ~((1 << a) | (1 << b))
                        if now_open != open_q and (score + e.score + tail[i + 1]
                                                   + completion(now_open)[0] < best_score):
                            continue
                        old_a, old_b = qnbr[a], qnbr[b]
                        qnbr[a] |= 1 << b
                        qnbr[b] |= 1 << a
                    old_anc = anc[:]
                    old_desc = desc[:]
                    for x in _bits(below):
                        anc[x] |= up
                    for u in _bits(up):
                        desc[u] |= below
                    chosen[v] = e.parents
                    dfs(i + 1, score + e.score, now_open)
                    del chosen[v]
                    anc[:] = old_anc
                    desc[:] = old_desc
                    if a >= 0:
                        qnbr[a], qnbr[b] = old_a, old_b

            dfs(0, 0, qmask)

    return _UnitResult(best_score, best_arcs, S, tuples, completions, nodes)


def _all_reach(sq, lists, Q, smask) -> bool:
    """Can every Q vertex reach S using arcs that some candidate offers?"""
    possible: dict[int, int] = {}
    for v, lst in zip(sq, lists):
        for e in lst:
            for u in e.parents:
                possible[u] = possible.get(u, 0) | (1 << v)
    good = smask
    changed = True
    while changed:
        changed = False
        for u, ch in possible.items():
            if not good >> u & 1 and ch & good:
                good |= 1 << u
                changed = True
    return all(good >> q & 1 for q in Q)


def _run_units(args):
    instance, units, k, floor = args
    return [_solve_unit(instance, S, k, floor) for S in units]


def solve_pi1v(instance: Instance, *, threads: int = 1) -> SolveResult:
    """Optimal DAG whose moral graph has a dissociation set of size <= k.

    Work is split by the dissociation set S; the result is independent of
    ``threads``.
    """
    k = instance.k
    n = instance.n
    pruned = prune_parent_size(instance, k + 1)

    # each |S| level starts from the best score of the smaller levels, which
    # keeps every unit's work independent of scheduling
    first = _solve_unit(pruned, (), k, -1)
    best = first
    results = []
    for size in range(1, min(k, n) + 1):
        units = list(itertools.combinations(range(n), size))
        floor = best.score
        if threads > 1 and len(units) > 1:
            chunks = [units[i::threads] for i in range(threads)]
            with ProcessPoolExecutor(max_workers=threads) as pool:
                parts = list(pool.map(_run_units, [(pruned, c, k, floor) for c in chunks]))
            by_s = {r.S: r for part in parts for r in part}
            level = [by_s[S] for S in units]
        else:
            level = [_solve_unit(pruned, S, k, floor) for S in units]
        for r in level:
            if r.arcs is None:
                continue
            if r.score > best.score or (r.score == best.score and r.arcs < best.arcs):
                best = r
        results.extend(level)
    all_units = [first] + results
    arcs = ArcSet.of(n, best.arcs)
    moral = moralize(arcs)
    if not (is_dag(arcs) and dissociation_set_at_most(moral, k) is not None):
        raise AssertionError("solver produced an arc set outside the class")
    assert instance.total(arcs.parent_sets()) == best.score
    return SolveResult(
        variant="pi1v",
        score=best.score,
        arcs=best.arcs,
        t=instance.t,
        k=k,
        n=n,
        witness={"dissociation_set": list(best.S)},
        stats={
            "units": len(all_units),
            "ancestor_tuples": sum(r.tuples for r in all_units),
            "completions": sum(r.completions for r in all_units),
            "nodes": sum(r.nodes for r in all_units),
        },
    )
