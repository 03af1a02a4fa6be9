import itertools

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from sparsebnsl.graphs import ArcSet, UGraph
from sparsebnsl.scores import Instance, make_entry

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def instances(draw, max_n=5, max_entries=3, max_score=20, empty=False):
    n = draw(st.integers(1, max_n))
    entries = []
    for v in range(n):
        others = [u for u in range(n) if u != v]
        pool = [p for r in range(1, len(others) + 1) for p in itertools.combinations(others, r)]
        chosen = draw(st.lists(st.sampled_from(pool), max_size=max_entries, unique=True)) if pool else []
        entries.append(tuple(make_entry(draw(st.integers(1, max_score)), p) for p in chosen))
    zero = [draw(st.integers(0, max_score // 2)) if empty else 0 for _ in range(n)]
    return Instance(tuple(str(i) for i in range(n)), tuple(entries), tuple(zero))


@st.composite
def ugraphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return UGraph.of(n, edges)


@st.composite
def dags(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    order = draw(st.permutations(range(n)))
    pairs = [(order[i], order[j]) for i, j in itertools.combinations(range(n), 2)]
    arcs = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=12)) if pairs else []
    return ArcSet.of(n, arcs)


@pytest.fixture
def abc_instance():
    return Instance.build("abc", {"c": {"ab": 10}})


# 20-vertex layered example: q1..q6 = 0..5 (q5, q6 isolated outside S after
# moralization), s1..s6 = 6..11 form S, r1..r8 = 12..19
Q_IDS = tuple(range(6))
S_IDS = tuple(range(6, 12))
R_IDS = tuple(range(12, 20))
LAYERED_AQ = frozenset({(3, 2), (0, 9), (1, 9), (10, 1), (2, 11), (4, 6), (5, 7), (9, 8), (6, 7)})
LAYERED_AR = frozenset({(4, 12), (14, 13), (7, 14), (6, 13), (7, 15), (10, 18), (10, 19),
                        (11, 19), (18, 17)})
LAYERED_MORAL = {(0, 1), (6, 14), (5, 6), (10, 11)}


ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
