"""Independent re-check of a claimed solution.

Only the instance, the arc list and the constraint are trusted; nothing is
taken from solver state.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graphs import EDGE, PI0, PI1, VERTEX, ArcSet, ClassSpec, check_class, is_dag, moralize
from .oracle import Constraint
from .scores import Instance

VARIANT_CONSTRAINTS = {
    "pi1v": lambda k: Constraint.moral_class(ClassSpec(PI1, VERTEX, k)),
    "pi0e": lambda k: Constraint.moral_class(ClassSpec(PI0, EDGE, k)),
    "ba-dp": Constraint.arc_count,
    "ba-cc": Constraint.arc_count,
    "arcs": Constraint.arc_count,
    "none": lambda k: Constraint.unconstrained(),
}


def constraint_for(variant: str, k: int) -> Constraint:
    try:
        return VARIANT_CONSTRAINTS[variant](k)
    except KeyError:
        raise ValueError(f"no constraint known for variant {variant!r}") from None


@dataclass
class Verification:
    ok: bool
    score: int
    problems: list[str] = field(default_factory=list)


def verify_solution(instance: Instance, arcs, constraint: Constraint,
                    claimed_score: int | None = None) -> Verification:
    """Check acyclicity, the constraint and (if given) the claimed score."""
    n = instance.n
    problems = []
    bad = [a for a in arcs if not (0 <= a[0] < n and 0 <= a[1] < n) or a[0] == a[1]]
    if bad:
        return Verification(False, 0, [f"invalid arcs {bad}"])
    arcset = ArcSet.of(n, arcs)
    score = instance.total(arcset.parent_sets())
    if not is_dag(arcset):
        problems.append("arc set has a directed cycle")
    elif constraint.kind == "moral-class":
        ok, _ = check_class(moralize(arcset), constraint.spec)
        if not ok:
            problems.append(f"moral graph is outside {constraint.describe()}")
    elif constraint.kind == "arc-count" and len(arcset.arcs) > constraint.k:
        problems.append(f"{len(arcset.arcs)} arcs exceed the budget {constraint.k}")
    if claimed_score is not None and claimed_score != score:
        problems.append(f"claimed score {claimed_score} but arcs score {score}")
    return Verification(not problems, score, problems)
