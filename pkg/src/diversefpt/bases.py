"""Weighted Diverse Bases: k bases whose pairwise symmetric differences all
weigh at least d.

The solver first looks for a large set that is independent and coindependent
at once (which settles the instance), otherwise it compresses the ground set
to O(d^2 k^3) elements and searches the compressed matroid exhaustively.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import BudgetError, InputError
from .matroids import LinearMatroid, Matroid, ceil_half
from .optim import Weights, greedy_max_weight_basis, max_common_independent, set_weight
from .witness import Answer, DiverseWitness, find_diverse_tuple, verify_bases


@dataclass
class WdbInstance:
    M: Matroid
    weights: Weights
    k: int
    d: int

    def __post_init__(self):
        if self.k < 1:
            raise InputError(f"k must be at least 1, got {self.k}")
        if self.d < 0:
            raise InputError(f"d must be nonnegative, got {self.d}")
        for e in self.M.ground:
            try:
                w = self.weights[e]
            except (IndexError, KeyError):
                raise InputError(f"no weight for element {e}") from None
            if w < 1:
                raise InputError(f"weight of element {e} is {w}; weights must be positive")

    @property
    def half(self) -> int:
        return ceil_half(self.d)

    def with_matroid(self, M: Matroid) -> "WdbInstance":
        return WdbInstance(M, self.weights, self.k, self.d)


def _split_for_shortcut(X: frozenset[int], k: int, h: int) -> list[frozenset[int]]:
    """k disjoint parts of ``X``, each of size >= h (the last takes the rest)."""
    items = sorted(X)
    parts = [frozenset(items[i * h:(i + 1) * h]) for i in range(k - 1)]
    parts.append(frozenset(items[(k - 1) * h:]))
    return parts


def ind_coind_shortcut(inst: WdbInstance) -> DiverseWitness | None:
    M, k, h = inst.M, inst.k, inst.half
    X = max_common_independent(M, M.dual())
    if len(X) < k * h:
        return None
    bases = [M.extend_to_basis(part, X - part) for part in _split_for_shortcut(X, k, h)]
    check = verify_bases(M, inst.weights, inst.d, bases, k)
    assert check.ok, check.problems
    return check.witness


@dataclass
class AlreadyYes:
    witness: DiverseWitness


@dataclass
class CompressedWdb:
    """Equivalent instance on ``ground`` (= S*), plus the data to lift answers."""

    M: Matroid                 # view on the original matroid with ground set S*
    ground: frozenset[int]
    L: frozenset[int]          # S* minus the fixed basis
    L_star: frozenset[int]     # S* inside the fixed basis
    lifted: frozenset[int]     # contracted elements, re-added to every basis
    base_basis: frozenset[int]
    S: frozenset[int]          # survivors of the primal phase
    weights: Weights
    k: int
    d: int

    @property
    def size_bound(self) -> int:
        return 2 * ceil_half(self.d) ** 2 * self.k ** 3

    def instance(self) -> WdbInstance:
        return WdbInstance(self.M, self.weights, self.k, self.d)

    def lift(self, basis: frozenset[int]) -> frozenset[int]:
        return frozenset(basis) | self.lifted


def _layered_greedy(M: Matroid, weights: Weights, start: frozenset[int], rounds: int) -> frozenset[int]:
    """Add ``rounds`` successive max-weight bases of what is not yet covered."""
    S = start
    for _ in range(rounds):
        rest = M.ground - S
        if not rest:
            break
        S = S | greedy_max_weight_basis(M, weights, restrict=rest).basis
    return S


def compress(inst: WdbInstance) -> AlreadyYes | CompressedWdb:
    witness = ind_coind_shortcut(inst)
    if witness is not None:
        return AlreadyYes(witness)
    M, w, k, h = inst.M, inst.weights, inst.k, inst.half
    rounds = h * k * k
    B = M.some_basis()
    S = _layered_greedy(M, w, B, rounds)
    L = S - B
    M_hat = M.delete(M.ground - S)
    S_star = _layered_greedy(M_hat.dual(), w, L, rounds)
    L_star = S_star & B
    contracted = B - S_star
    M_tilde = M_hat.contract(contracted)
    return CompressedWdb(M_tilde, frozenset(S_star), frozenset(L), frozenset(L_star),
                         frozenset(contracted), B, frozenset(S), w, k, inst.d)


def candidate_bases(comp: CompressedWdb, max_candidates: int | None = None) -> list[frozenset[int]]:
    """Bases of the compressed matroid of the form (L* - D) | A.

    Every basis has at most h*k elements of L and misses at most h*k of L*,
    so |A|, |D| <= h*k covers all of them.
    """
    M, L, Ls = comp.M, sorted(comp.L), comp.L_star
    cap = ceil_half(comp.d) * comp.k
    r = M.full_rank
    found: set[frozenset[int]] = set()
    for a in range(min(cap, len(L)) + 1):
        dsize = a + len(Ls) - r
        if dsize < 0 or dsize > min(cap, len(Ls)):
            continue
        for A in combinations(L, a):
            for D in combinations(sorted(Ls), dsize):
                cand = (Ls - frozenset(D)) | frozenset(A)
                if M.is_independent(cand):
                    found.add(cand)
                    if max_candidates is not None and len(found) > max_candidates:
                        raise BudgetError(f"more than {max_candidates} candidate bases")
    return sorted(found, key=sorted)


@dataclass
class WdbConfig:
    max_candidates: int | None = 200_000
    max_tuple_nodes: int | None = 5_000_000


def _distance(weights: Weights):
    return lambda a, b: set_weight(weights, a ^ b)


def solve_wdb(inst: WdbInstance, config: WdbConfig | None = None) -> Answer:
    config = config or WdbConfig()
    M, k, d = inst.M, inst.k, inst.d
    stats: dict = {}
    if k == 1 or d == 0:
        B = M.some_basis()
        return _certified(inst, [B] * k, {"route": "trivial"})
    comp = compress(inst)
    if isinstance(comp, AlreadyYes):
        return _certified(inst, comp.witness.sets, {"route": "shortcut"})
    cands = candidate_bases(comp, config.max_candidates)
    stats.update(route="compressed", kernel_size=len(comp.ground), candidates=len(cands))
    found = find_diverse_tuple(cands, k, d, _distance(inst.weights), config.max_tuple_nodes)
    if found is None:
        return Answer(False, stats=stats)
    return _certified(inst, [comp.lift(b) for b in found], stats)


def _certified(inst: WdbInstance, sets, stats) -> Answer:
    check = verify_bases(inst.M, inst.weights, inst.d, sets, inst.k)
    if not check.ok:
        raise AssertionError(f"internal error, unverified witness: {check.problems}")
    return Answer(True, check.witness, stats=stats)


# -- kernel for linear matroids ------------------------------------------------

@dataclass
class KernelInstance:
    matroid: LinearMatroid
    weights: list[int]
    k: int
    d: int
    kept: list[int] = field(default_factory=list)  # original id of each kernel column
    trivial: bool = False

    def instance(self) -> WdbInstance:
        return WdbInstance(self.matroid, self.weights, self.k, self.d)


def trivial_yes_kernel(p: int) -> KernelInstance:
    return KernelInstance(LinearMatroid([[1]], p), [1], 1, 0, [], trivial=True)


def kernelize_linear(inst: WdbInstance) -> KernelInstance:
    M = inst.M
    if not isinstance(M, LinearMatroid):
        raise InputError("kernelization needs a linear matroid given by a matrix")
    comp = compress(inst)
    if isinstance(comp, AlreadyYes):
        return trivial_yes_kernel(M.p)
    rep, kept = M.minor_representation(deleted=M.ground - comp.S, contracted=comp.lifted)
    weights = [min(inst.weights[e], inst.d) for e in kept]
    return KernelInstance(rep, weights, inst.k, inst.d, kept)

