"""Brute-force reference solvers and the 3-Partition instance generator.

These enumerate everything and are only meant for tiny inputs; the FPT
solvers are tested against them.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .errors import BudgetError, InputError
from .matroids import Matroid, UniformMatroid
from .optim import Weights, set_weight
from .witness import Answer, verify_bases, verify_common_independent, verify_matchings

MAX_GROUND = 12
MAX_VERTICES = 14
MAX_K = 4


def _caps(n: int, k: int, n_cap: int, k_cap: int):
    if n > n_cap:
        raise BudgetError(f"brute force limited to {n_cap} elements, got {n}")
    if k > k_cap:
        raise BudgetError(f"brute force limited to k <= {k_cap}, got {k}")


def _search(items: list[frozenset[int]], k: int, ok) -> list[frozenset[int]] | None:
    """Plain DFS over k-multisets (indices non-decreasing), checking each new pair."""
    chosen: list[int] = []

    def go(start: int) -> bool:
        if len(chosen) == k:
            return True
        for j in range(start, len(items)):
            if all(ok(items[i], items[j]) for i in chosen):
                chosen.append(j)
                if go(j):
                    return True
                chosen.pop()
        return False

    return [items[i] for i in chosen] if go(0) else None


def all_bases(M: Matroid) -> list[frozenset[int]]:
    r = M.full_rank
    return [frozenset(c) for c in combinations(sorted(M.ground), r) if M.is_independent(c)]


def all_common_independent(M1: Matroid, M2: Matroid) -> list[frozenset[int]]:
    ground = sorted(M1.ground)
    out = []
    for size in range(len(ground) + 1):
        layer = [frozenset(c) for c in combinations(ground, size)
                 if M1.is_independent(c) and M2.is_independent(c)]
        if not layer:
            break
        out.extend(layer)
    return out


def brute_force_wdb(M: Matroid, weights: Weights, k: int, d: int,
                    max_ground: int = MAX_GROUND, max_k: int = MAX_K) -> Answer:
    _caps(len(M.ground), k, max_ground, max_k)
    found = _search(all_bases(M), k, lambda a, b: set_weight(weights, a ^ b) >= d)
    if found is None:
        return Answer(False)
    check = verify_bases(M, weights, d, found, k)
    assert check.ok
    return Answer(True, check.witness)


def brute_force_wdcis(M1: Matroid, M2: Matroid, weights: Weights, k: int, d: int,
                      max_ground: int = MAX_GROUND, max_k: int = MAX_K) -> Answer:
    if M1.ground != M2.ground:
        raise InputError("the two matroids must share a ground set")
    _caps(len(M1.ground), k, max_ground, max_k)
    found = _search(all_common_independent(M1, M2), k, lambda a, b: set_weight(weights, a ^ b) >= d)
    if found is None:
        return Answer(False)
    check = verify_common_independent(M1, M2, weights, d, found, k)
    assert check.ok
    return Answer(True, check.witness)


def enumerate_perfect_matchings(graph, max_vertices: int = MAX_VERTICES) -> list[frozenset[int]]:
    """All perfect matchings as edge-id sets, by pairing the lowest free vertex."""
    n = graph.n
    if n > max_vertices:
        raise BudgetError(f"matching enumeration limited to {max_vertices} vertices, got {n}")
    if n % 2:
        return []
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(n)}
    for e, (u, v) in enumerate(graph.edges):
        adj[u].append((v, e))
        adj[v].append((u, e))
    out: list[frozenset[int]] = []

    def pair(free: frozenset[int], chosen: list[int]):
        if not free:
            out.append(frozenset(chosen))
            return
        u = min(free)
        for v, e in adj[u]:
            if v in free and v != u:
                chosen.append(e)
                pair(free - {u, v}, chosen)
                chosen.pop()

    pair(frozenset(range(n)), [])
    return out


def brute_force_dpm(graph, k: int, d: int, max_vertices: int = MAX_VERTICES,
                    max_k: int = MAX_K) -> Answer:
    _caps(graph.n, k, max_vertices, max_k)
    found = _search(enumerate_perfect_matchings(graph, max_vertices), k, lambda a, b: len(a ^ b) >= d)
    if found is None:
        return Answer(False)
    check = verify_matchings(graph, d, found, k)
    assert check.ok
    return Answer(True, check.witness)


# -- 3-Partition -------------------------------------------------------------------

def validate_3partition(b: int, S: Sequence[int]) -> int:
    """Check the 3-Partition preconditions; return the number of triples."""
    if b < 1:
        raise InputError(f"b must be positive, got {b}")
    if len(S) == 0 or len(S) % 3:
        raise InputError(f"need 3n numbers, got {len(S)}")
    n = len(S) // 3
    for i, s in enumerate(S):
        if not 4 * s > b:
            raise InputError(f"s_{i}={s} violates s_i > b/4 (b={b})")
        if not 2 * s < b:
            raise InputError(f"s_{i}={s} violates s_i < b/2 (b={b})")
    if sum(S) != n * b:
        raise InputError(f"sum of numbers is {sum(S)}, expected n*b = {n * b}")
    return n


def reduction_3partition(b: int, S: Sequence[int]):
    """``(U_{3n}^3, weights=S, k=n, d=2b)`` as bases and as common-independent instances."""
    from .bases import WdbInstance
    from .cis import WdcisInstance

    n = validate_3partition(b, S)
    M = UniformMatroid(3 * n, 3)
    weights = list(S)
    return WdbInstance(M, weights, n, 2 * b), WdcisInstance(M, M, weights, n, 2 * b)


def three_partition_answer(b: int, S: Sequence[int]) -> list[tuple[int, int, int]] | None:
    """Direct search for a split of ``S`` into triples summing to ``b`` (index triples)."""
    validate_3partition(b, S)

    def go(free: tuple[int, ...]) -> list[tuple[int, int, int]] | None:
        if not free:
            return []
        first, rest = free[0], free[1:]
        for j, x in combinations(range(len(rest)), 2):
            if S[first] + S[rest[j]] + S[rest[x]] == b:
                tail = go(tuple(v for i, v in enumerate(rest) if i not in (j, x)))
                if tail is not None:
                    return [(first, rest[j], rest[x])] + tail
        return None

    return go(tuple(range(len(S))))
