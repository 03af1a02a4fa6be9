import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sparsebnsl import _backend, _pykernels
from sparsebnsl.matching import WeightedGraph, brute_force_matching, max_weight_matching


@st.composite
def weighted_graphs(draw, max_n=8, max_w=20):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=18)) if pairs else []
    return WeightedGraph.of(n, [(u, v, draw(st.integers(0, max_w))) for u, v in chosen])


def _is_matching(m):
    ends = [x for u, v, _ in m.edges for x in (u, v)]
    return len(ends) == len(set(ends)) and m.total == sum(w for _, _, w in m.edges)


@pytest.mark.parametrize("solver", [max_weight_matching, brute_force_matching])
def test_small_examples(solver):
    assert solver(WeightedGraph.of(3, [])).total == 0
    path = solver(WeightedGraph.of(4, [(0, 1, 1), (1, 2, 3), (2, 3, 1)]))
    assert path.total == 3 and path.edges == ((1, 2, 3),)
    assert solver(WeightedGraph.of(3, [(0, 1, 2), (1, 2, 2), (0, 2, 2)])).total == 2


def test_brute_force_examples():
    assert brute_force_matching(WeightedGraph.of(4, [(0, 1, 5), (0, 2, 4), (0, 3, 3)])).total == 5
    assert brute_force_matching(WeightedGraph.of(4, [(0, 1, 1), (2, 3, 1)])).total == 2


def test_brute_force_size_guard():
    g = WeightedGraph.of(9, [(u, v, 1) for u, v in itertools.combinations(range(9), 2)][:25])
    with pytest.raises(ValueError):
        brute_force_matching(g)


def test_graph_validation():
    with pytest.raises(ValueError):
        WeightedGraph.of(2, [(0, 0, 1)])
    with pytest.raises(ValueError):
        WeightedGraph.of(2, [(0, 1, 1), (1, 0, 2)])
    with pytest.raises(ValueError):
        WeightedGraph.of(2, [(0, 1, -1)])


def test_blossom_needed():
    # odd cycle with a pendant: greedy on the cycle loses
    g = WeightedGraph.of(6, [(0, 1, 6), (1, 2, 6), (2, 0, 6), (2, 3, 5), (3, 4, 9), (4, 5, 2)])
    assert max_weight_matching(g).total == brute_force_matching(g).total


def test_huge_weights_use_exact_path():
    big = 2**62
    g = WeightedGraph.of(4, [(0, 1, big), (1, 2, big + 5), (2, 3, big)])
    assert max_weight_matching(g).total == 2 * big


@given(weighted_graphs())
def test_optimal_against_brute_force(g):
    m = max_weight_matching(g)
    assert _is_matching(m)
    assert m.total == brute_force_matching(g).total


@given(weighted_graphs(max_n=7), st.integers(0, 20))
def test_adding_an_edge_never_hurts(g, w):
    present = {(min(u, v), max(u, v)) for u, v, _ in g.edges}
    missing = [p for p in itertools.combinations(range(g.n), 2) if p not in present]
    if not missing:
        return
    bigger = WeightedGraph.of(g.n, list(g.edges) + [(*missing[0], w)])
    assert max_weight_matching(bigger).total >= max_weight_matching(g).total


@given(weighted_graphs(max_n=7))
def test_zero_edges_do_not_change_total(g):
    present = {(min(u, v), max(u, v)) for u, v, _ in g.edges}
    zeros = [(u, v, 0) for u, v in itertools.combinations(range(g.n), 2) if (u, v) not in present]
    padded = WeightedGraph.of(g.n, list(g.edges) + zeros)
    assert max_weight_matching(padded).total == max_weight_matching(g).total


@given(weighted_graphs())
def test_compiled_and_python_kernels_agree(g):
    edges = list(g.edges)
    fast = _backend.mwm_mates(g.n, edges)
    slow = _pykernels.mwm_mates(g.n, edges)
    assert list(fast) == list(slow)
