"""Greedy max-weight bases and (weighted) matroid intersection."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import InputError
from .matroids import Matroid

Weights = Sequence[int] | Mapping[int, int]


def set_weight(weights: Weights, S: Iterable[int]) -> int:
    return sum(weights[e] for e in S)


@dataclass(frozen=True)
class GreedyResult:
    basis: frozenset[int]
    order: tuple[int, ...]  # elements in the order the greedy picked them


def greedy_max_weight_basis(M: Matroid, weights: Weights,
                            restrict: Iterable[int] | None = None) -> GreedyResult:
    """Maximum-weight basis of ``M`` restricted to ``restrict``.

    Elements are scanned by decreasing weight, ties broken by ascending id.
    """
    pool = M.ground if restrict is None else M._check(restrict)
    picked: list[int] = []
    current: set[int] = set()
    for e in sorted(pool, key=lambda e: (-weights[e], e)):
        if M.is_independent(current | {e}):
            current.add(e)
            picked.append(e)
    return GreedyResult(frozenset(current), tuple(picked))


def _same_ground(M1: Matroid, M2: Matroid) -> frozenset[int]:
    if M1.ground != M2.ground:
        raise InputError("the two matroids must share a ground set")
    return M1.ground


def _exchange_graph(M1: Matroid, M2: Matroid, I: frozenset[int], ground: frozenset[int]):
    """Arcs ``y -> x`` when ``I - y + x`` is in M1 and ``x -> y`` when in M2."""
    outside = sorted(ground - I)
    inside = sorted(I)
    succ: dict[int, list[int]] = {e: [] for e in ground}
    sources = [x for x in outside if M1.is_independent(I | {x})]
    sinks = {x for x in outside if M2.is_independent(I | {x})}
    for y in inside:
        rest = I - {y}
        for x in outside:
            if M1.is_independent(rest | {x}):
                succ[y].append(x)
            if M2.is_independent(rest | {x}):
                succ[x].append(y)
    return sources, sinks, succ


def max_common_independent(M1: Matroid, M2: Matroid) -> frozenset[int]:
    """Maximum-cardinality common independent set (shortest augmenting paths)."""
    ground = _same_ground(M1, M2)
    I: frozenset[int] = frozenset()
    while True:
        sources, sinks, succ = _exchange_graph(M1, M2, I, ground)
        prev: dict[int, int | None] = {x: None for x in sources}
        queue = deque(sources)
        end = None
        while queue:
            u = queue.popleft()
            if u in sinks:
                end = u
                break
            for v in succ[u]:
                if v not in prev:
                    prev[v] = u
                    queue.append(v)
        if end is None:
            return I
        path = []
        while end is not None:
            path.append(end)
            end = prev[end]
        I = I.symmetric_difference(path)


def max_weight_common_independent(M1: Matroid, M2: Matroid, weights: Weights) -> frozenset[int]:
    """Common independent set of maximum total weight.

    Each augmentation follows a path in the exchange graph that is shortest
    for node costs ``-w`` (entering) / ``+w`` (leaving), ties broken by arc
    count.  The sets produced this way are max-weight for their size, so the
    answer is the heaviest of them.
    """
    ground = _same_ground(M1, M2)
    I: frozenset[int] = frozenset()
    best, best_w = I, 0
    while True:
        sources, sinks, succ = _exchange_graph(M1, M2, I, ground)
        if not sources:
            return best
        cost = {e: (weights[e] if e in I else -weights[e]) for e in ground}
        dist: dict[int, tuple[int, int]] = {x: (cost[x], 0) for x in sources}
        prev: dict[int, int | None] = {x: None for x in sources}
        for _ in range(len(ground)):
            changed = False
            for u in list(dist):
                du = dist[u]
                for v in succ[u]:
                    cand = (du[0] + cost[v], du[1] + 1)
                    if v not in dist or cand < dist[v]:
                        dist[v] = cand
                        prev[v] = u
                        changed = True
            if not changed:
                break
        reached = [x for x in sinks if x in dist]
        if not reached:
            return best
        end = min(reached, key=lambda x: (dist[x], x))
        path = []
        while end is not None:
            path.append(end)
            end = prev[end]
        I = I.symmetric_difference(path)
        w = set_weight(weights, I)
        if w > best_w:
            best, best_w = I, w
