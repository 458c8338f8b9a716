"""Witness records, verifiers, and the pruned k-tuple search.

Both the FPT solvers and the brute-force oracles verify answers through the
functions here, so "is this a valid solution" has one definition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .errors import BudgetError
from .matroids import Matroid
from .optim import Weights, set_weight


@dataclass(frozen=True)
class DiverseWitness:
    sets: tuple[frozenset[int], ...]
    pairwise: dict[tuple[int, int], int]  # (i, j) with i < j -> weight of the symmetric difference

    @property
    def min_pairwise(self) -> int | None:
        return min(self.pairwise.values()) if self.pairwise else None

    def as_lists(self) -> list[list[int]]:
        return [sorted(s) for s in self.sets]


def make_witness(sets: Iterable[Iterable[int]], weights: Weights | None = None) -> DiverseWitness:
    sets = tuple(frozenset(s) for s in sets)
    table = {}
    for i, j in combinations(range(len(sets)), 2):
        diff = sets[i] ^ sets[j]
        table[(i, j)] = len(diff) if weights is None else set_weight(weights, diff)
    return DiverseWitness(sets, table)


@dataclass
class Verification:
    ok: bool
    problems: list[str] = field(default_factory=list)
    witness: DiverseWitness | None = None


@dataclass
class Answer:
    """Solver outcome; ``exact`` is False for one-sided randomized No answers."""

    yes: bool
    witness: DiverseWitness | None = None
    exact: bool = True
    stats: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        if self.yes:
            return "yes"
        return "no" if self.exact else "no (probabilistic)"

    def __bool__(self) -> bool:
        return self.yes


def _pairwise(witness: DiverseWitness, d: int, problems: list[str]) -> None:
    for (i, j), w in sorted(witness.pairwise.items()):
        if w < d:
            problems.append(f"sets {i} and {j}: symmetric difference weight {w} < d={d}")


def _count(sets, k, problems):
    if k is not None and len(sets) != k:
        problems.append(f"expected {k} sets, got {len(sets)}")


def verify_bases(M: Matroid, weights: Weights, d: int, sets: Sequence[Iterable[int]],
                 k: int | None = None) -> Verification:
    problems: list[str] = []
    sets = [frozenset(s) for s in sets]
    _count(sets, k, problems)
    for i, s in enumerate(sets):
        if not s <= M.ground:
            problems.append(f"set {i}: elements {sorted(s - M.ground)} outside the ground set")
        elif not M.is_basis(s):
            problems.append(f"set {i}: {sorted(s)} is not a basis")
    witness = make_witness(sets, weights)
    _pairwise(witness, d, problems)
    return Verification(not problems, problems, witness)


def verify_common_independent(M1: Matroid, M2: Matroid, weights: Weights, d: int,
                              sets: Sequence[Iterable[int]], k: int | None = None) -> Verification:
    problems: list[str] = []
    sets = [frozenset(s) for s in sets]
    _count(sets, k, problems)
    for i, s in enumerate(sets):
        if not s <= M1.ground:
            problems.append(f"set {i}: elements {sorted(s - M1.ground)} outside the ground set")
            continue
        for label, M in (("M1", M1), ("M2", M2)):
            if not M.is_independent(s):
                problems.append(f"set {i}: {sorted(s)} is dependent in {label}")
    witness = make_witness(sets, weights)
    _pairwise(witness, d, problems)
    return Verification(not problems, problems, witness)


def verify_matchings(graph, d: int, sets: Sequence[Iterable[int]], k: int | None = None) -> Verification:
    problems: list[str] = []
    sets = [frozenset(s) for s in sets]
    _count(sets, k, problems)
    for i, s in enumerate(sets):
        if not graph.is_perfect_matching(s):
            problems.append(f"set {i}: edges {sorted(s)} do not form a perfect matching")
    witness = make_witness(sets)
    for (i, j), size in witness.pairwise.items():
        # |M1 ^ M2| = 2 |M1 - M2| for perfect matchings
        if not problems and size != 2 * len(sets[i] - sets[j]):
            problems.append(f"sets {i} and {j}: symmetric difference is not twice the set difference")
    _pairwise(witness, d, problems)
    return Verification(not problems, problems, witness)


def find_diverse_tuple(candidates: Sequence[frozenset[int]], k: int, d: int,
                       distance: Callable[[frozenset[int], frozenset[int]], int],
                       max_nodes: int | None = None) -> list[frozenset[int]] | None:
    """Depth-first search for ``k`` candidates with pairwise distance >= d.

    Candidates may be chosen more than once, which only matters when a set is
    at distance >= d from itself (``d == 0``).  A partial tuple is abandoned as
    soon as one pair falls below ``d``.
    """
    cands = sorted(set(candidates), key=lambda s: (len(s), sorted(s)))
    if k <= 0:
        return []
    if not cands:
        return None
    nodes = 0
    chosen: list[int] = []

    def extend(allowed: list[int]) -> bool:
        nonlocal nodes
        if len(chosen) == k:
            return True
        for pos, j in enumerate(allowed):
            nodes += 1
            if max_nodes is not None and nodes > max_nodes:
                raise BudgetError(f"tuple search exceeded {max_nodes} nodes")
            rest = [x for x in allowed[pos:] if distance(cands[j], cands[x]) >= d]
            chosen.append(j)
            if extend(rest):
                return True
            chosen.pop()
        return False

    if extend(list(range(len(cands)))):
        return [cands[i] for i in chosen]
    return None
