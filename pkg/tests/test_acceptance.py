"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``python3 tests/test_acceptance.py`` or as part of pytest;
the collected lines are repeated in the terminal summary.
"""

import io
import itertools
import random
import sys
import time
from math import comb

import pytest
from brute import completion_brute, dissociation_brute, random_tables, random_tuple
from conftest import record_acceptance

from sparsebnsl.arcbounded import solve_ba_color_coding, solve_ba_topological, solve_pi0e
from sparsebnsl.cli import run
from sparsebnsl.formats import format_scores
from sparsebnsl.generators import (
    ColoredGraph,
    from_clique,
    from_hampath,
    from_multicolored_clique,
    from_multicolored_independent_set,
    from_triangle_cover,
    random_instance,
)
from sparsebnsl.graphs import PI1, PI2, PI3COC, VERTEX, ArcSet, ClassSpec, UGraph, is_dag, moralize
from sparsebnsl.matching import WeightedGraph, brute_force_matching, max_weight_matching
from sparsebnsl.oracle import Constraint, oracle_solve
from sparsebnsl.pi1v import compose, decompose, partition, solve_completion, solve_pi1v
from sparsebnsl.scores import delta, normalize, superstructure


def verdict(number, title, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {title} ({detail})"
    print(line)
    record_acceptance(line)
    assert ok, line


def small_instance(rng, seed, max_n, max_entries, empty=None):
    n = rng.randint(1, max_n)
    max_parents = min(3, n - 1)
    pool = sum(comb(n - 1, s) for s in range(1, max_parents + 1))
    entries = rng.randint(0, min(max_entries, pool))
    return random_instance(n, max_parents, entries, (1, 40), seed, empty_range=empty)


def pi1v_constraint(k):
    return Constraint.moral_class(ClassSpec(PI1, VERTEX, k))


def test_c01_pi1v_matches_oracle():
    rng = random.Random(101)
    start = time.perf_counter()
    bad, biggest = [], 0
    for seed in range(200):
        empty = (0, 10) if seed % 4 == 0 else None
        inst = small_instance(rng, seed, 6, 7, empty=empty)
        k = seed % 3
        inst = inst.with_threshold(0, k)
        biggest = max(biggest, delta(inst))
        got = solve_pi1v(inst).score
        want = oracle_solve(inst, pi1v_constraint(k)).score
        if got != want:
            bad.append((seed, got, want))
    elapsed = time.perf_counter() - start
    assert biggest <= 8
    verdict(1, "pi1v equals oracle on 200 instances", not bad and elapsed < 300,
            f"{len(bad)} mismatches, max delta {biggest}, {elapsed:.1f}s")


def test_c02_topological_dp_matches_oracle():
    rng = random.Random(202)
    bad = []
    for seed in range(200):
        n = rng.randint(1, 6)
        inst = random_instance(n, min(3, n - 1), rng.randint(0, 4) if n > 1 else 0,
                               (1, 40), 10_000 + seed, acyclic=True)
        k = rng.randint(0, 4)
        inst = inst.with_threshold(0, k)
        sup = superstructure(inst)
        assert is_dag(ArcSet(sup.n, sup.arcs))
        got = solve_ba_topological(inst).score
        want = oracle_solve(inst, Constraint.arc_count(k)).score
        if got != want:
            bad.append((seed, got, want))
    verdict(2, "topological DP equals oracle on 200 acyclic instances", not bad,
            f"{len(bad)} mismatches")


def test_c03_completion_matches_exhaustive():
    rng = random.Random(303)
    bad = 0
    done = 0
    while done < 100:
        n_s, n_q, n_r = rng.randint(1, 2), rng.randint(0, 3), rng.randint(0, 5)
        n = n_s + n_q + n_r
        inst = random_tables(rng, n)
        S, Q, A_Q = random_tuple(rng, n_s, n_q, n)
        q0, _, R = partition(S, Q, A_Q, n)
        if len(q0) > 2 or len(R) > 5:
            continue
        done += 1
        if solve_completion(inst, S, Q, A_Q).score != completion_brute(inst, S, q0, R):
            bad += 1
    verdict(3, "completion equals exhaustive search on 100 configurations", bad == 0,
            f"{bad} mismatches")


def test_c04_matching_optimal():
    rng = random.Random(404)
    bad = 0
    for _ in range(500):
        n = rng.randint(0, 8)
        pairs = list(itertools.combinations(range(n), 2))
        picked = rng.sample(pairs, rng.randint(0, min(24, len(pairs))))
        g = WeightedGraph.of(n, [(u, v, rng.randint(1, 30)) for u, v in picked])
        if max_weight_matching(g).total != brute_force_matching(g).total:
            bad += 1
    verdict(4, "matching equals brute force on 500 graphs", bad == 0, f"{bad} mismatches")


def test_c05_decompose_compose_round_trip():
    rng = random.Random(505)
    violations = 0
    for _ in range(100):
        n = rng.randint(1, 8)
        order = rng.sample(range(n), n)
        pairs = [(order[i], order[j]) for i, j in itertools.combinations(range(n), 2)]
        dag = ArcSet.of(n, rng.sample(pairs, rng.randint(0, min(10, len(pairs)))))
        moral = moralize(dag)
        S = set(dissociation_brute(moral, n))
        # sometimes pad the set; any superset is still a dissociation set
        S |= {v for v in range(n) if rng.random() < 0.15}
        assert dissociation_brute(moral.without_vertices(S), 0) == ()
        Q, A_Q, A_R = decompose(dag, S)
        if compose(S, Q, A_Q, A_R, n).arcs != dag.arcs or len(Q) > 2 * len(S):
            violations += 1
    verdict(5, "decompose/compose round trip and |Q| <= 2|S| on 100 DAGs", violations == 0,
            f"{violations} violations")


def test_c06_reductions():
    k3 = UGraph.of(3, [(0, 1), (1, 2), (0, 2)])
    k4 = UGraph.of(4, list(itertools.combinations(range(4), 2)))
    c5 = UGraph.of(5, [(i, (i + 1) % 5) for i in range(5)])
    p5 = UGraph.of(5, [(i, i + 1) for i in range(4)])
    star = UGraph.of(4, [(0, 1), (0, 2), (0, 3)])
    two_triangles = UGraph.of(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    p3 = UGraph.of(3, [(0, 1), (1, 2)])
    pi2 = Constraint.moral_class(ClassSpec(PI2, VERTEX, 0))
    coc = Constraint.moral_class(ClassSpec(PI3COC, VERTEX, 0))

    checks = []
    clique = from_clique(k4, 3)
    checks.append(("clique K4", (clique.t, clique.k) == (3, 3) and solve_pi1v(clique).answer))
    checks.append(("clique C5", not solve_pi1v(from_clique(c5, 3)).answer))
    path = from_hampath(p5)
    checks.append(("hampath P5", path.t == 4 and oracle_solve(path, pi2).answer))
    checks.append(("hampath K1,3", not oracle_solve(from_hampath(star), pi2).answer))
    cover = from_triangle_cover(two_triangles)
    checks.append(("tricover 2K3", cover.t == 14 and oracle_solve(cover, coc).answer))
    checks.append(("tricover P3", not oracle_solve(from_triangle_cover(p3), coc).answer))
    mcc = from_multicolored_clique(ColoredGraph(k3, ((0,), (1,), (2,))))
    res = solve_pi0e(mcc)
    checks.append(("mcc triangle", (mcc.t, mcc.k) == (3, 15) and res.answer
                   and len(moralize(res.arcset).edges) == 15))
    mis = from_multicolored_independent_set(ColoredGraph(UGraph.of(3, []), ((0,), (1,), (2,))))
    checks.append(("mis edgeless", mis.t == 3
                   and oracle_solve(mis, Constraint.arc_count(mis.k)).answer
                   and solve_ba_color_coding(mis, seed=0).answer))
    failed = [name for name, ok in checks if not ok]
    verdict(6, "reduction fidelity", not failed,
            f"{len(checks) - len(failed)}/{len(checks)} decided correctly"
            + (f", failed: {', '.join(failed)}" if failed else ""))


def _color_coding_instances(rng):
    found = []
    seed = 0
    while len(found) < 20:
        k = 1 + len(found) % 3
        n = 2 * k + rng.randint(0, 2)
        inst = random_instance(n, min(2, n - 1), min(3, n - 1), (1, 20), 20_000 + seed)
        seed += 1
        opt = oracle_solve(inst.with_threshold(0, k), Constraint.arc_count(k)).score
        if opt == sum(inst.empty):
            continue
        found.append((inst, k, opt))
    return found


def test_c07_color_coding_success_rate():
    rng = random.Random(707)
    cases = _color_coding_instances(rng)
    worst = 1.0
    false_yes = 0
    for idx, (inst, k, opt) in enumerate(cases):
        yes = inst.with_threshold(opt, k)
        wins = sum(solve_ba_color_coding(yes, seed=1000 * idx + trial).answer for trial in range(50))
        worst = min(worst, wins / 50)
    for idx in range(50):
        inst, k, opt = cases[idx % len(cases)]
        no = inst.with_threshold(opt + 1, k)
        false_yes += solve_ba_color_coding(no, seed=50_000 + idx).answer
    verdict(7, "color coding success rate and one-sided error",
            worst >= 0.55 and false_yes == 0,
            f"worst success rate {worst:.2f} over 20 instances, {false_yes} false yes in 50")


def test_c08_normalization_preserves_optimum():
    rng = random.Random(808)
    bad = 0
    kinds = [lambda k: Constraint.arc_count(k), pi1v_constraint, lambda k: Constraint.unconstrained()]
    for seed in range(100):
        inst = small_instance(rng, 30_000 + seed, 5, 4, empty=(1, 15))
        assert all(x > 0 for x in inst.empty)
        k = rng.randint(0, 3)
        constraint = kinds[seed % 3](k)
        inst = inst.with_threshold(sum(inst.empty), k)
        shifted, offset = normalize(inst)
        if oracle_solve(shifted, constraint).score != oracle_solve(inst, constraint).score - offset:
            bad += 1
    verdict(8, "normalization preserves the optimum on 100 instances", bad == 0,
            f"{bad} mismatches")


def test_c09_pi1v_runtime():
    wide = random_instance(12, 3, 19, (1, 100), 0).with_threshold(0, 2)
    assert delta(wide) <= 20
    start = time.perf_counter()
    solve_pi1v(wide)
    mid = time.perf_counter()
    solve_pi1v(random_instance(100, 3, 5, (1, 100), 0).with_threshold(0, 0))
    end = time.perf_counter()
    verdict(9, "pi1v runtime at n=12 k=2 and n=100 k=0",
            mid - start < 60 and end - mid < 5,
            f"{mid - start:.1f}s (limit 60s), {end - mid:.2f}s (limit 5s)")


def _cli(argv):
    out = io.StringIO()
    code = run(argv, out)
    return code, out.getvalue()


def test_c10_reports_are_deterministic(tmp_path):
    cyclic = tmp_path / "cyclic.txt"
    cyclic.write_text(format_scores(random_instance(6, 2, 3, (1, 50), 5)))
    acyclic = tmp_path / "acyclic.txt"
    acyclic.write_text(format_scores(random_instance(6, 2, 2, (1, 50), 6, acyclic=True)))
    runs = [
        ["--variant", "pi1v", "-k", "1", str(cyclic)],
        ["--variant", "ba-dp", "-k", "3", str(acyclic)],
        ["--variant", "ba-dp", "-k", "2", str(cyclic)],
        ["--variant", "ba-cc", "-k", "2", "--seed", "9", str(cyclic)],
        ["--variant", "pi0e", "-k", "3", str(cyclic)],
        ["--variant", "oracle", "-k", "1", str(cyclic)],
        ["--variant", "oracle", "--oracle-constraint", "arcs", "-k", "2", str(acyclic)],
    ]
    unstable = []
    for argv in runs:
        outputs = {_cli(["solve", *argv, "--threads", str(th)]) for th in (1, 1, 2, 3)}
        if len(outputs) != 1:
            unstable.append(argv[1])
    verdict(10, "byte-identical reports across repeats and thread counts", not unstable,
            f"{len(runs) - len(unstable)}/{len(runs)} solver runs stable"
            + (f", unstable: {', '.join(unstable)}" if unstable else ""))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
