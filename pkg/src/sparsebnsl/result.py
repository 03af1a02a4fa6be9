"""Solver output record shared by every variant."""

from __future__ import annotations

from dataclasses import dataclass, field

from .graphs import ArcSet


@dataclass(frozen=True)
class SolveResult:
    """Optimal score with one maximizing arc set.

    ``witness`` holds variant-specific evidence (a dissociation set, the
    winning coloring, a moral edge count); ``stats`` holds solver counters.
    Both are plain JSON-friendly dicts.
    """

    variant: str
    score: int
    arcs: tuple[tuple[int, int], ...]
    t: int
    k: int
    n: int
    witness: dict = field(default_factory=dict)
    stats: dict = field(default_factory=dict)

    @property
    def answer(self) -> bool:
        return self.score >= self.t

    @property
    def arcset(self) -> ArcSet:
        return ArcSet.of(self.n, self.arcs)

    def parent_sets(self) -> list[tuple[int, ...]]:
        return self.arcset.parent_sets()
