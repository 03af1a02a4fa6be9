import itertools

import pytest
from brute import dissociation_brute, has_directed_cycle, moral_edges
from conftest import LAYERED_AQ, LAYERED_AR, LAYERED_MORAL, dags, ugraphs
from hypothesis import given
from hypothesis import strategies as st

from sparsebnsl.graphs import (
    EDGE,
    PI0,
    PI1,
    PI2,
    PI3COC,
    PIFOREST,
    VERTEX,
    ArcSet,
    ClassSpec,
    CycleError,
    UGraph,
    UnsupportedClass,
    check_class,
    dissociation_set_at_most,
    feedback_edge_number,
    is_dag,
    moralize,
    topological_order,
)


def test_is_dag_examples():
    assert is_dag(ArcSet.of(3, []))
    assert not is_dag(ArcSet.of(2, [(0, 1), (1, 0)]))
    assert is_dag(ArcSet.of(3, [(0, 1), (1, 2), (0, 2)]))


def test_topological_order_examples():
    assert topological_order(ArcSet.of(3, [])).order == [0, 1, 2]
    assert topological_order(ArcSet.of(3, [(2, 1), (1, 0)])).order == [2, 1, 0]
    cyc = topological_order(ArcSet.of(2, [(0, 1), (1, 0)]))
    assert not cyc.acyclic and cyc.cycle == [0, 1]


def test_moralize_marries_coparents():
    g = moralize(ArcSet.of(3, [(0, 2), (1, 2)]))
    assert g.edges == {(0, 1), (0, 2), (1, 2)}
    assert g.tags[(0, 1)] == "moral" and g.tags[(0, 2)] == "direct"
    single = moralize(ArcSet.of(2, [(0, 1)]))
    assert single.edges == {(0, 1)} and single.moral_edges() == set()


def test_moralize_layered_example():
    g = moralize(ArcSet.of(20, LAYERED_AQ | LAYERED_AR))
    assert set(g.moral_edges()) == LAYERED_MORAL


def test_moralize_rejects_cycles():
    with pytest.raises(CycleError):
        moralize(ArcSet.of(2, [(0, 1), (1, 0)]))


def test_dissociation_examples():
    assert dissociation_set_at_most(UGraph.of(4, []), 0) == ()
    path = UGraph.of(4, [(0, 1), (1, 2), (2, 3)])
    S = dissociation_set_at_most(path, 1)
    assert S in ((1,), (2,))
    assert dissociation_set_at_most(UGraph.of(3, [(0, 1), (1, 2), (0, 2)]), 0) is None


def test_check_class_examples():
    fig2 = moralize(ArcSet.of(7, [(0, 3), (1, 3), (6, 3), (0, 4), (2, 4), (6, 4),
                                  (1, 5), (2, 5), (6, 5)]))
    assert len(fig2.edges) == 15
    ok, wit = check_class(fig2, ClassSpec(PI0, EDGE, 15))
    assert ok and len(wit) == 15
    assert not check_class(fig2, ClassSpec(PI0, EDGE, 14))[0]
    path = UGraph.of(4, [(0, 1), (1, 2), (2, 3)])
    assert check_class(path, ClassSpec(PI2, VERTEX, 0))[0]
    c4 = UGraph.of(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    ok, wit = check_class(c4, ClassSpec(PIFOREST, EDGE, 1))
    assert ok and len(wit) == 1
    rest = UGraph.of(4, c4.edges - set(wit))
    assert feedback_edge_number(rest) == 0


def test_check_class_pi3coc():
    two_triangles = UGraph.of(6, [(0, 1), (1, 2), (0, 2), (3, 4)])
    assert check_class(two_triangles, ClassSpec(PI3COC, VERTEX, 0))[0]
    assert not check_class(UGraph.of(4, [(0, 1), (1, 2), (2, 3)]), ClassSpec(PI3COC, VERTEX, 0))[0]


def test_check_class_unsupported():
    with pytest.raises(UnsupportedClass):
        check_class(UGraph.of(3, []), ClassSpec(PI2, VERTEX, 1))
    with pytest.raises(UnsupportedClass):
        check_class(UGraph.of(3, []), ClassSpec(PI1, EDGE, 1))


@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), max_size=12))
def test_is_dag_matches_dfs(pairs):
    arcs = {(u, v) for u, v in pairs if u != v}
    assert is_dag(ArcSet.of(6, arcs)) == (not has_directed_cycle(6, arcs))


@given(dags())
def test_topological_order_respects_arcs(d):
    pos = {v: i for i, v in enumerate(topological_order(d).order)}
    assert all(pos[u] < pos[v] for u, v in d.arcs)


@given(dags(), st.randoms(use_true_random=False))
def test_moralize_ignores_insertion_order(d, rnd):
    arcs = list(d.arcs)
    rnd.shuffle(arcs)
    assert moralize(ArcSet.of(d.n, arcs)).edges == moralize(d).edges == moral_edges(d.arcs)


@given(dags())
def test_parents_of_a_child_form_a_clique(d):
    g = moralize(d)
    for ps in d.parent_sets():
        for a, b in itertools.combinations(ps, 2):
            assert (min(a, b), max(a, b)) in g.edges


@given(ugraphs(), st.integers(0, 3))
def test_dissociation_matches_exhaustive(g, k):
    found = dissociation_set_at_most(g, k)
    expected = dissociation_brute(g, k)
    assert (found is None) == (expected is None)
    if found is not None:
        assert len(found) <= k and dissociation_brute(g.without_vertices(found), 0) == ()


@given(ugraphs(), st.integers(0, 10))
def test_edge_budget_is_monotone(g, k):
    if check_class(g, ClassSpec(PI0, EDGE, k))[0]:
        assert check_class(g, ClassSpec(PI0, EDGE, k + 1))[0]


@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), max_size=12))
def test_reported_cycle_is_a_cycle(pairs):
    arcs = {(u, v) for u, v in pairs if u != v}
    topo = topological_order(ArcSet.of(6, arcs))
    if topo.acyclic:
        return
    cyc = topo.cycle
    assert cyc[0] == min(cyc) and len(set(cyc)) == len(cyc)
    assert all((cyc[i], cyc[(i + 1) % len(cyc)]) in arcs for i in range(len(cyc)))
