from __future__ import annotations

import math
import random
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diversefpt.errors import InputError
from diversefpt.matchings import (DpmConfig, Graph, alternating_collections, alternating_dp,
                                  close_diverse_matchings, compositions, default_budget, far_matching,
                                  far_matching_field, far_matching_trial, has_perfect_matching_tutte,
                                  maximum_matching, solve_dpm)
from diversefpt.oracles import brute_force_dpm, enumerate_perfect_matchings
from diversefpt.witness import verify_matchings

K4 = Graph.complete(4)
C4 = Graph.cycle(4)  # edges 01, 12, 23, 03
C6 = Graph.cycle(6)
K33 = Graph.complete_bipartite(3, 3)
STAR = Graph(4, [(0, 1), (0, 2), (0, 3)])


def rng(seed=0):
    return np.random.default_rng(seed)


def random_graph(r: random.Random, n: int, p: float) -> Graph:
    return Graph(n, [(u, v) for u, v in combinations(range(n), 2) if r.random() < p])


def test_graph_rejects_loops_and_multi_edges():
    with pytest.raises(InputError):
        Graph(3, [(0, 0)])
    with pytest.raises(InputError):
        Graph(3, [(0, 1), (1, 0)])
    with pytest.raises(InputError):
        Graph(3, [(0, 5)])


def test_enumeration_examples():
    pms = enumerate_perfect_matchings(K4)
    assert len(pms) == 3
    assert all(len(a ^ b) == 4 for a, b in combinations(pms, 2))
    assert enumerate_perfect_matchings(Graph.path(3)) == []
    assert enumerate_perfect_matchings(Graph(2, [(0, 1)])) == [frozenset({0})]


def test_tutte_detection_examples():
    assert has_perfect_matching_tutte(K4, rng())
    assert not has_perfect_matching_tutte(Graph.path(3), rng())
    assert not has_perfect_matching_tutte(STAR, rng())


def test_maximum_matching():
    assert K4.is_perfect_matching(maximum_matching(K4))
    assert len(maximum_matching(STAR)) == 1


def test_far_matching_examples():
    M = far_matching(K4, [enumerate_perfect_matchings(K4)[0]], 0, rng=rng())
    assert M is not None and K4.is_perfect_matching(M)
    M1 = frozenset({0, 2})
    assert far_matching(C4, [M1], 2, rng=rng()) == {1, 3}
    for Mi in enumerate_perfect_matchings(K4):
        M = far_matching(K4, [Mi], 2, rng=rng(1))
        assert M is not None and K4.is_perfect_matching(M) and not M & Mi


def test_far_matching_impossible_distance():
    assert far_matching(C4, [frozenset({0, 2})], 3, rng=rng()) is None


def test_far_matching_rejects_non_matching():
    with pytest.raises(InputError):
        far_matching(C4, [frozenset({0, 1})], 1)


def test_field_size_rule():
    F = far_matching_field(K4, 2, 3)
    assert F.order >= 3 * (K4.m + 1) * (K4.n + 2 * 2 * 3)
    assert F.order // 2 < 3 * (K4.m + 1) * (K4.n + 2 * 2 * 3)


@pytest.mark.parametrize("G,s", [(K4, 2), (C6, 3)])
def test_far_matching_trial_success_rate(G, s):
    M1 = enumerate_perfect_matchings(G)[0]
    F = far_matching_field(G, 1, s)
    g = rng(99)
    N = 10_000
    hits = sum(far_matching_trial(G, [M1], s, g, F) is not None for _ in range(N))
    p = (2 / 3) * math.exp(-s)
    assert hits / N >= p - 3 * math.sqrt(p * (1 - p) / N)


def test_alternating_dp_examples():
    M = frozenset({0, 2})
    assert alternating_dp(C4, M, [], [0, 1, 2, 3]) == frozenset()
    assert alternating_dp(C4, M, [0, 1, 2, 3], [0, 1, 2, 3]) == {0, 1, 2, 3}
    assert alternating_dp(C4, M, [0, 1, 2], [0, 1, 2, 3]) is None


def test_alternating_collections_are_rainbow_alternating_cycles():
    r = random.Random(8)
    for _ in range(30):
        G = random_graph(r, 2 * r.randint(2, 4), 0.6)
        M = maximum_matching(G)
        if not G.is_perfect_matching(M):
            continue
        coloring = [r.randrange(6) for _ in range(G.m)]
        for L, Q in alternating_collections(G, M, coloring, 6).items():
            Q = frozenset(Q)
            assert sum(1 << coloring[e] for e in Q) == L
            assert G.is_perfect_matching(Q ^ M)
            assert len(Q & M) * 2 == len(Q)


def test_close_diverse_examples():
    M = frozenset({0, 2})
    assert close_diverse_matchings(C4, M, 1, 0, 0, rng=rng()) == [M]
    found = close_diverse_matchings(C4, M, 2, 2, 4, rng=rng())
    assert found is not None and set(found) == {frozenset({0, 2}), frozenset({1, 3})}
    M = enumerate_perfect_matchings(K4)[0]
    found = close_diverse_matchings(K4, M, 2, 4, 4, rng=rng())
    assert found is not None and len(found[0] ^ found[1]) == 4
    assert verify_matchings(K4, 4, found, 2).ok


def test_compositions_and_budget():
    assert compositions(3, 2) == [(0, 3), (1, 2), (2, 1), (3, 0)]
    assert len(compositions(4, 3)) == math.comb(6, 2)
    assert default_budget(1.0) == math.ceil(3 * math.e)
    assert default_budget(50.0) == 1000


def test_solve_dpm_examples():
    for G, k, d in [(K4, 3, 4), (C6, 2, 6), (K33, 3, 6)]:
        ans = solve_dpm(G, k, d, seed=1)
        assert ans.yes and verify_matchings(G, d, ans.witness.sets, k).ok
    assert not solve_dpm(K4, 4, 1, config=DpmConfig(repetitions=3)).yes
    no = solve_dpm(STAR, 2, 1)
    assert not no.yes and no.exact
    assert solve_dpm(K4, 2, 6).exact and not solve_dpm(K4, 2, 6).yes


def test_solve_dpm_deterministic():
    a = solve_dpm(K33, 3, 6, seed=42)
    b = solve_dpm(K33, 3, 6, seed=42)
    assert a.witness == b.witness and a.stats == b.stats


def test_no_on_oracle_no_instances():
    r = random.Random(4)
    for _ in range(6):
        G = random_graph(r, 2 * r.randint(1, 3), 0.7)
        for k, d in [(2, 4), (3, 2), (3, 4)]:
            if brute_force_dpm(G, k, d).yes:
                continue
            assert not solve_dpm(G, k, d, seed=r.randrange(2**32), config=DpmConfig(repetitions=2)).yes


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_matching_distance_properties(seed):
    r = random.Random(seed)
    G = random_graph(r, 2 * r.randint(1, 4), 0.7)
    pms = enumerate_perfect_matchings(G)
    if not pms:
        return
    A, B, C = (r.choice(pms) for _ in range(3))
    assert len(A ^ C) <= len(A ^ B) + len(B ^ C)
    assert len(A ^ B) == 2 * len(A - B)
