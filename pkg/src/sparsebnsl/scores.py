"""Instance model: local scores in non-zero representation.

Each vertex keeps a list of ``Entry`` triples ``(score, size, parents)`` for
the parent sets with a positive score, plus a separate empty-set score.
Parent sets are sorted tuples of vertex ids; every entry also carries the
bitmask of its members, which is what the solvers use for subset tests.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence

MAX_SCORE = 2**63 - 1


class Entry(NamedTuple):
    score: int
    size: int
    parents: tuple[int, ...]
    mask: int


class NoCandidate(LookupError):
    """No potential parent set satisfies a subset query."""


class TrivialYes(ValueError):
    """Raised by :func:`normalize` when ``t`` is below the empty-set total."""

    def __init__(self, t: int, offset: int):
        super().__init__(f"t={t} is below the sum of empty-set scores {offset}; "
                         "the empty arc set already reaches the threshold")
        self.t = t
        self.offset = offset


def make_entry(score: int, parents: Iterable[int]) -> Entry:
    members = tuple(sorted(set(parents)))
    mask = 0
    for u in members:
        mask |= 1 << u
    return Entry(score, len(members), members, mask)


def _check_score(value: int, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{what}: score must be an int, got {value!r}")
    if value < 0 or value > MAX_SCORE:
        raise ValueError(f"{what}: score {value} outside [0, 2^63-1]")
    return value


@dataclass(frozen=True)
class Instance:
    """Vertex names, local scores, threshold ``t`` and budget ``k``."""

    names: tuple[str, ...]
    entries: tuple[tuple[Entry, ...], ...]
    empty: tuple[int, ...]
    t: int = 0
    k: int = 0

    def __post_init__(self):
        n = len(self.names)
        if len(set(self.names)) != n:
            raise ValueError("vertex names must be unique")
        if len(self.entries) != n or len(self.empty) != n:
            raise ValueError("one entry list and one empty-set score per vertex required")
        if self.t < 0 or self.k < 0:
            raise ValueError("t and k must be non-negative")
        for v in range(n):
            _check_score(self.empty[v], self.names[v])
            seen = set()
            for e in self.entries[v]:
                _check_score(e.score, self.names[v])
                if e.score == 0 or e.size == 0:
                    raise ValueError(f"{self.names[v]}: stored entries need a positive "
                                     "score and a non-empty parent set")
                if any(u < 0 or u >= n for u in e.parents):
                    raise ValueError(f"{self.names[v]}: parent id out of range")
                if v in e.parents:
                    raise ValueError(f"{self.names[v]}: a vertex cannot be its own parent")
                if list(e.parents) != sorted(set(e.parents)) or e.size != len(e.parents):
                    raise ValueError(f"{self.names[v]}: malformed entry {e}")
                if e.parents in seen:
                    raise ValueError(f"{self.names[v]}: duplicate parent set {e.parents}")
                seen.add(e.parents)

    @classmethod
    def build(
        cls,
        names: Sequence[str] | int,
        scores: Mapping[object, Mapping[Iterable, int]] | None = None,
        t: int = 0,
        k: int = 0,
    ) -> Instance:
        """Convenience constructor.

        ``scores`` maps a vertex (id or name) to ``{parents: score}`` where
        ``parents`` is an iterable of ids or names; an empty iterable sets the
        empty-set score and zero-score entries are dropped.

        >>> inst = Instance.build("abc", {"c": {"ab": 10}}, t=10, k=1)
        >>> inst.entries[2]
        (Entry(score=10, size=2, parents=(0, 1), mask=3),)
        """
        if isinstance(names, int):
            names = [str(i) for i in range(names)]
        names = tuple(names)
        index = {name: i for i, name in enumerate(names)}

        def vid(x) -> int:
            if isinstance(x, int) and not isinstance(x, bool):
                if not 0 <= x < len(names):
                    raise ValueError(f"vertex id {x} out of range")
                return x
            if x not in index:
                raise ValueError(f"unknown vertex {x!r}")
            return index[x]

        entries: list[list[Entry]] = [[] for _ in names]
        empty = [0] * len(names)
        for child, table in (scores or {}).items():
            v = vid(child)
            for parents, score in table.items():
                members = [vid(p) for p in parents]
                if not members:
                    empty[v] = score
                elif score:
                    entries[v].append(make_entry(score, members))
        return cls(names, tuple(tuple(es) for es in entries), tuple(empty), t, k)

    @property
    def n(self) -> int:
        return len(self.names)

    @cached_property
    def _lookup(self) -> tuple[dict[tuple[int, ...], int], ...]:
        return tuple({e.parents: e.score for e in es} for es in self.entries)

    def score(self, v: int, parents: Iterable[int]) -> int:
        """f_v(P); parent sets that are not stored score 0."""
        key = tuple(sorted(parents))
        if not key:
            return self.empty[v]
        return self._lookup[v].get(key, 0)

    def total(self, parent_sets: Sequence[Iterable[int]]) -> int:
        return sum(self.score(v, p) for v, p in enumerate(parent_sets))

    @cached_property
    def best_scores(self) -> tuple[int, ...]:
        """Per-vertex maximum over all potential parent sets."""
        return tuple(max([self.empty[v]] + [e.score for e in self.entries[v]])
                     for v in range(self.n))

    def canonical(self) -> Instance:
        """Same scores with entries sorted by (size, members)."""
        ordered = tuple(tuple(sorted(es, key=lambda e: (e.size, e.parents)))
                        for es in self.entries)
        return replace(self, entries=ordered)

    def with_threshold(self, t: int | None = None, k: int | None = None) -> Instance:
        return replace(self, t=self.t if t is None else t, k=self.k if k is None else k)


class Superstructure(NamedTuple):
    n: int
    arcs: frozenset[tuple[int, int]]


def _check_vertex(instance: Instance, v: int) -> None:
    if not isinstance(v, int) or not 0 <= v < instance.n:
        raise ValueError(f"invalid vertex id {v!r}")


def potential_parents(instance: Instance, v: int) -> list[tuple[tuple[int, ...], int]]:
    """The empty set followed by every stored parent set of ``v``, in stored order."""
    _check_vertex(instance, v)
    return [((), instance.empty[v])] + [(e.parents, e.score) for e in instance.entries[v]]


def candidates(instance: Instance, v: int) -> list[Entry]:
    """Like :func:`potential_parents` but as ``Entry`` records (empty set first)."""
    return [Entry(instance.empty[v], 0, (), 0), *instance.entries[v]]


def delta(instance: Instance) -> int:
    return max((1 + len(es) for es in instance.entries), default=1)


def superstructure(instance: Instance) -> Superstructure:
    arcs = frozenset((u, v) for v, es in enumerate(instance.entries)
                     for e in es for u in e.parents)
    return Superstructure(instance.n, arcs)


def empty_total(instance: Instance) -> int:
    return sum(instance.empty)


def normalize(instance: Instance) -> tuple[Instance, int]:
    """Shift every vertex so its empty-set score is 0.

    Entries become ``max(0, f_v(P) - f_v(∅))`` and zeros are dropped; the
    threshold drops by the removed offset, which is returned alongside.
    """
    offset = empty_total(instance)
    if instance.t < offset:
        raise TrivialYes(instance.t, offset)
    entries = []
    for v, es in enumerate(instance.entries):
        base = instance.empty[v]
        entries.append(tuple(e._replace(score=e.score - base) for e in es if e.score > base))
    out = replace(instance, entries=tuple(entries), empty=(0,) * instance.n,
                  t=instance.t - offset)
    return out, offset


def prune_parent_size(instance: Instance, limit: int) -> Instance:
    if limit < 0:
        raise ValueError("limit must be non-negative")
    entries = tuple(tuple(e for e in es if e.size <= limit) for es in instance.entries)
    return replace(instance, entries=entries)


def _better(score: int, parents: tuple[int, ...], best: tuple[int, tuple[int, ...]] | None) -> bool:
    return best is None or score > best[0] or (score == best[0] and parents < best[1])


def best_subset_score(
    instance: Instance,
    v: int,
    pool: Iterable[int],
    forced: Iterable[int] = (),
) -> tuple[int, tuple[int, ...]]:
    """Best potential parent set P of ``v`` with ``forced ⊆ P ⊆ pool ∪ forced``.

    Ties go to the lexicographically smallest member list.  With nothing
    forced the empty set always qualifies; otherwise :class:`NoCandidate` is
    raised when no stored set fits.
    """
    _check_vertex(instance, v)
    pool = set(pool)
    forced = set(forced)
    if v in pool or v in forced:
        raise ValueError("the child cannot be in its own candidate pool")
    if pool & forced:
        raise ValueError("pool and forced sets must be disjoint")
    forced_mask = sum(1 << u for u in forced)
    allowed = forced_mask | sum(1 << u for u in pool)
    best = None
    for e in candidates(instance, v):
        if e.mask & forced_mask == forced_mask and not e.mask & ~allowed:
            if _better(e.score, e.parents, best):
                best = (e.score, e.parents)
    if best is None:
        raise NoCandidate(f"no parent set of {instance.names[v]} contains "
                          f"{sorted(forced)} within the pool")
    return best


class PoolProfile(NamedTuple):
    """Answers to every ``best_subset_score(v, pool, forced)`` with ``|forced| ≤ 1``."""

    inside: tuple[int, tuple[int, ...]]
    with_one: dict[int, tuple[int, tuple[int, ...]]]


def pool_profile(instance: Instance, v: int, pool_mask: int) -> PoolProfile:
    """One pass over the entries of ``v`` for a fixed pool (given as a bitmask).

    ``inside`` is the best set within the pool; ``with_one[w]`` is the best set
    whose only member outside the pool is ``w``.  Tie-breaking matches
    :func:`best_subset_score`.
    """
    inside = (instance.empty[v], ())
    with_one: dict[int, tuple[int, tuple[int, ...]]] = {}
    for e in instance.entries[v]:
        extra = e.mask & ~pool_mask
        if not extra:
            if _better(e.score, e.parents, inside):
                inside = (e.score, e.parents)
        elif not extra & (extra - 1):
            w = extra.bit_length() - 1
            if _better(e.score, e.parents, with_one.get(w)):
                with_one[w] = (e.score, e.parents)
    return PoolProfile(inside, with_one)
