from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diversefpt.bases import (AlreadyYes, CompressedWdb, WdbConfig, WdbInstance, candidate_bases,
                              compress, ind_coind_shortcut, kernelize_linear, solve_wdb)
from diversefpt.errors import BudgetError, InputError
from diversefpt.matroids import LinearMatroid, UniformMatroid, ceil_half
from diversefpt.oracles import all_bases, brute_force_wdb
from diversefpt.witness import verify_bases

from conftest import random_matroid


def ones(n):
    return [1] * n


def test_shortcut_examples():
    U = UniformMatroid(20, 3)
    w = ind_coind_shortcut(WdbInstance(U, ones(20), 2, 2))
    assert w is not None and len(w.sets) == 2
    assert verify_bases(U, ones(20), 2, w.sets, 2).ok
    assert ind_coind_shortcut(WdbInstance(UniformMatroid(4, 3), ones(4), 3, 4)) is None


def test_shortcut_trivial_parameters():
    U = UniformMatroid(5, 2)
    w = ind_coind_shortcut(WdbInstance(U, ones(5), 1, 0))
    assert w is not None and U.is_basis(w.sets[0])


def test_compress_examples():
    inst = WdbInstance(UniformMatroid(4, 3), ones(4), 3, 4)
    comp = compress(inst)
    assert isinstance(comp, CompressedWdb)
    assert len(comp.ground) <= comp.size_bound
    assert not brute_force_wdb(comp.M, ones(4), 3, 4).yes
    assert not brute_force_wdb(inst.M, ones(4), 3, 4).yes
    assert isinstance(compress(WdbInstance(UniformMatroid(20, 3), ones(20), 2, 2)), AlreadyYes)


def test_solve_examples():
    U = UniformMatroid(6, 3)
    ans = solve_wdb(WdbInstance(U, ones(6), 2, 6))
    assert ans.yes and sorted(map(sorted, ans.witness.sets)) == [[0, 1, 2], [3, 4, 5]]
    assert not solve_wdb(WdbInstance(U, ones(6), 2, 7)).yes
    w = [6, 6, 8, 7, 7, 6]
    ans = solve_wdb(WdbInstance(U, w, 2, 40))
    assert ans.yes and ans.witness.min_pairwise >= 40
    assert brute_force_wdb(U, w, 2, 40).yes


def test_instance_validation():
    with pytest.raises(InputError):
        WdbInstance(UniformMatroid(3, 1), [1, 0, 1], 1, 0)
    with pytest.raises(InputError):
        WdbInstance(UniformMatroid(3, 1), [1, 1, 1], 0, 0)
    with pytest.raises(InputError):
        WdbInstance(UniformMatroid(3, 1), [1, 1], 1, 0)


def test_candidate_budget_is_explicit():
    inst = WdbInstance(UniformMatroid(8, 4), ones(8), 3, 4)
    comp = compress(inst)
    if isinstance(comp, CompressedWdb):
        with pytest.raises(BudgetError):
            candidate_bases(comp, max_candidates=0)
    with pytest.raises(BudgetError):
        solve_wdb(WdbInstance(UniformMatroid(8, 4), ones(8), 3, 8), WdbConfig(max_candidates=0))


def test_kernel_weight_truncation():
    M = LinearMatroid([[1, 0, 1, 1], [0, 1, 1, 2]], 3)
    kern = kernelize_linear(WdbInstance(M, [100, 100, 100, 100], 3, 4))
    assert not kern.trivial
    assert all(w <= 4 for w in kern.weights)
    assert kern.weights and max(kern.weights) == 4


def test_kernel_trivial_yes():
    M = LinearMatroid([[1, 0, 0, 1, 1, 0], [0, 1, 0, 1, 0, 1], [0, 0, 1, 0, 1, 1]], 5)
    kern = kernelize_linear(WdbInstance(M, ones(6), 1, 0))
    assert kern.trivial and brute_force_wdb(kern.matroid, kern.weights, kern.k, kern.d).yes


def test_kernel_rejects_non_linear():
    with pytest.raises(InputError):
        kernelize_linear(WdbInstance(UniformMatroid(4, 2), ones(4), 2, 2))


def test_kernel_random_gf5_equivalent():
    r = random.Random(3)
    for _ in range(20):
        M = LinearMatroid([[r.randrange(5) for _ in range(6)] for _ in range(3)], 5)
        inst = WdbInstance(M, ones(6), 2, 2)
        kern = kernelize_linear(inst)
        assert brute_force_wdb(kern.matroid, kern.weights, kern.k, kern.d).yes == brute_force_wdb(M, ones(6), 2, 2).yes


instances = st.tuples(st.integers(0, 10**6), st.integers(1, 8), st.sampled_from(["uniform", "graphic", "linear"]),
                      st.integers(1, 3), st.integers(0, 4))


@settings(max_examples=80, deadline=None)
@given(instances)
def test_solver_matches_brute_force_and_dual(params):
    seed, n, family, k, d = params
    r = random.Random(seed)
    M = random_matroid(r, n, family)
    w = [r.randint(1, 5) for _ in range(n)]
    inst = WdbInstance(M, w, k, d)
    ans = solve_wdb(inst)
    assert ans.yes == brute_force_wdb(M, w, k, d).yes
    assert ans.yes == solve_wdb(WdbInstance(M.dual(), w, k, d)).yes
    if ans.yes:
        assert verify_bases(M, w, d, ans.witness.sets, k).ok


@settings(max_examples=80, deadline=None)
@given(instances)
def test_compression_contract(params):
    seed, n, family, k, d = params
    r = random.Random(seed)
    M = random_matroid(r, n, family)
    w = [r.randint(1, 5) for _ in range(n)]
    comp = compress(WdbInstance(M, w, k, d))
    if isinstance(comp, AlreadyYes):
        assert brute_force_wdb(M, w, k, d).yes
        return
    h = ceil_half(d)
    assert len(comp.ground) <= 2 * h * h * k ** 3
    assert comp.L | comp.L_star == comp.ground and not comp.L & comp.L_star
    tilde = all_bases(comp.M)
    for B in tilde:
        assert len(B & comp.L) <= h * k and len(comp.L_star - B) <= h * k
        assert M.is_basis(comp.lift(B))
    assert set(candidate_bases(comp)) == set(tilde)
    assert brute_force_wdb(comp.M, w, k, d).yes == brute_force_wdb(M, w, k, d).yes
