"""Weighted Diverse Common Independent Sets.

If the two matroids share a large common independent set the answer is Yes
right away.  Otherwise every common independent set is small, and a bounded
branching procedure builds a family of candidates that is guaranteed to
contain a replacement for each member of some solution; the solver then
searches k-tuples of that family.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import BudgetError, InputError
from .matroids import Matroid, ceil_half
from .optim import Weights, max_common_independent, max_weight_common_independent, set_weight
from .witness import Answer, DiverseWitness, find_diverse_tuple, verify_common_independent


@dataclass
class WdcisInstance:
    M1: Matroid
    M2: Matroid
    weights: Weights
    k: int
    d: int

    def __post_init__(self):
        if self.M1.ground != self.M2.ground:
            raise InputError("the two matroids must share a ground set")
        if self.k < 1:
            raise InputError(f"k must be at least 1, got {self.k}")
        if self.d < 0:
            raise InputError(f"d must be nonnegative, got {self.d}")
        for e in self.M1.ground:
            try:
                w = self.weights[e]
            except (IndexError, KeyError):
                raise InputError(f"no weight for element {e}") from None
            if w < 1:
                raise InputError(f"weight of element {e} is {w}; weights must be positive")

    @property
    def ground(self) -> frozenset[int]:
        return self.M1.ground

    def truncated(self) -> "WdcisInstance":
        """Same instance with every weight capped at d (answer unchanged)."""
        if self.d < 1:
            return self
        w = {e: min(self.weights[e], self.d) for e in self.ground}
        return WdcisInstance(self.M1, self.M2, w, self.k, self.d)


def big_cis_shortcut(inst: WdcisInstance) -> DiverseWitness | None:
    k, h = inst.k, ceil_half(inst.d)
    X = max_common_independent(inst.M1, inst.M2)
    if len(X) < k * h:
        return None
    items = sorted(X)
    parts = [frozenset(items[i * h:(i + 1) * h]) for i in range(k - 1)]
    parts.append(frozenset(items[(k - 1) * h:]))
    check = verify_common_independent(inst.M1, inst.M2, inst.weights, inst.d, parts, k)
    assert check.ok, check.problems
    return check.witness


@dataclass
class CandidateFamily:
    by_weight: dict[int, set[frozenset[int]]] = field(default_factory=dict)
    calls: int = 0
    max_depth: int = 0

    @property
    def members(self) -> list[frozenset[int]]:
        out: set[frozenset[int]] = set()
        for fam in self.by_weight.values():
            out |= fam
        return sorted(out, key=lambda s: (len(s), sorted(s)))


def _nonempty_common_subsets(R: frozenset[int], M1: Matroid, M2: Matroid, cap: int):
    items = sorted(R)
    for size in range(1, min(cap, len(items)) + 1):
        any_found = False
        for Z in combinations(items, size):
            if M1.is_independent(Z) and M2.is_independent(Z):
                any_found = True
                yield frozenset(Z)
        if not any_found:
            return  # supersets of dependent sets are dependent


def build_family(inst: WdcisInstance, s: int, max_calls: int | None = 2_000_000) -> CandidateFamily:
    """Run the branching procedure for every target weight 0..d*s.

    ``inst`` must already have weights capped at d, and ``s`` must be the
    size of a largest common independent set.
    """
    w_of = inst.weights
    k = inst.k
    fam = CandidateFamily()

    def A(target: int, X: frozenset[int], M1: Matroid, M2: Matroid, out: set[frozenset[int]]):
        fam.calls += 1
        if max_calls is not None and fam.calls > max_calls:
            raise BudgetError(f"family construction exceeded {max_calls} recursive calls")
        assert len(X) <= s, "branching depth exceeded the common-independent bound"
        fam.max_depth = max(fam.max_depth, len(X))
        wx = set_weight(w_of, X)
        if wx >= target:
            out.add(X)
            return
        need = target - wx
        found: list[frozenset[int]] = []
        used: frozenset[int] = frozenset()
        while len(found) < k * s:
            Z = max_weight_common_independent(M1.delete(used), M2.delete(used), w_of)
            if set_weight(w_of, Z) < need:
                break
            found.append(Z)
            used = used | Z
        if not found:
            return
        if len(found) == k * s:
            out.update(X | Y for Y in found)
            return
        R = used
        for Z in _nonempty_common_subsets(R, M1, M2, s - len(X)):
            W = R - Z
            A(target, X | Z, M1.delete(W).contract(Z), M2.delete(W).contract(Z), out)

    M1, M2 = inst.M1.delete(()), inst.M2.delete(())
    for target in range(inst.d * s + 1):
        out: set[frozenset[int]] = set()
        A(target, frozenset(), M1, M2, out)
        fam.by_weight[target] = out
    return fam


@dataclass
class WdcisConfig:
    max_calls: int | None = 2_000_000
    max_tuple_nodes: int | None = 5_000_000


def solve_wdcis(inst: WdcisInstance, config: WdcisConfig | None = None) -> Answer:
    config = config or WdcisConfig()
    k, d = inst.k, inst.d
    if k == 1 or d == 0:
        return _certified(inst, [frozenset()] * k, {"route": "trivial"})
    small = inst.truncated()
    witness = big_cis_shortcut(small)
    if witness is not None:
        return _certified(inst, witness.sets, {"route": "shortcut"})
    s = len(max_common_independent(small.M1, small.M2))
    fam = build_family(small, s, config.max_calls)
    members = fam.members
    stats = {"route": "family", "max_common": s, "family_size": len(members), "calls": fam.calls}
    found = find_diverse_tuple(members, k, d, lambda a, b: set_weight(small.weights, a ^ b),
                               config.max_tuple_nodes)
    if found is None:
        return Answer(False, stats=stats)
    return _certified(inst, found, stats)


def _certified(inst: WdcisInstance, sets, stats) -> Answer:
    check = verify_common_independent(inst.M1, inst.M2, inst.weights, inst.d, sets, inst.k)
    if not check.ok:
        raise AssertionError(f"internal error, unverified witness: {check.problems}")
    return Answer(True, check.witness, stats=stats)
