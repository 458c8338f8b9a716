"""Diverse Perfect Matchings: k perfect matchings with pairwise symmetric
differences of size at least d.

Two randomized building blocks are combined:

* ``far_matching`` finds a perfect matching that avoids at least ``s`` edges
  of each given matching, by color coding the edges, labelling the Tutte
  matrix with the colors, and sieving for determinant monomials that carry
  every label.
* ``close_diverse_matchings`` finds ``r`` matchings near a given one, as
  rainbow collections of alternating cycles found by dynamic programming
  over color subsets.

Every Yes answer is checked before it is returned; No answers from the
randomized parts are one-sided.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx
import numpy as np

from .algebra import GF2m, batch_determinant, field_for_size
from .errors import InputError
from .seeds import child_rng
from .witness import Answer, find_diverse_tuple, verify_matchings

DEFAULT_TRIAL_CAP = 1000
SIEVE_CHUNK = 1 << 15  # matrices per determinant batch


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise InputError(f"vertex count must be nonnegative, got {n}")
        norm = []
        seen = set()
        for i, (u, v) in enumerate(edges):
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge {i} ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise InputError(f"edge {i} is a loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InputError(f"edge {i} ({u}, {v}) repeats an earlier edge")
            seen.add(key)
            norm.append(key)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    def is_perfect_matching(self, S: Iterable[int]) -> bool:
        S = list(S)
        if any(not (0 <= e < self.m) for e in S) or len(set(S)) != len(S):
            return False
        covered = [v for e in S for v in self.edges[e]]
        return len(covered) == self.n and len(set(covered)) == self.n

    def mates(self, M: Iterable[int]) -> tuple[list[int], list[int]]:
        """``(mate, medge)``: partner and matching edge of every vertex."""
        mate = [-1] * self.n
        medge = [-1] * self.n
        for e in M:
            u, v = self.edges[e]
            mate[u], mate[v] = v, u
            medge[u] = medge[v] = e
        return mate, medge

    @staticmethod
    def complete(n: int) -> "Graph":
        return Graph(n, combinations(range(n), 2))

    @staticmethod
    def cycle(n: int) -> "Graph":
        return Graph(n, [(i, (i + 1) % n) for i in range(n)])

    @staticmethod
    def path(n: int) -> "Graph":
        return Graph(n, [(i, i + 1) for i in range(n - 1)])

    @staticmethod
    def complete_bipartite(a: int, b: int) -> "Graph":
        return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def maximum_matching(G: Graph) -> frozenset[int]:
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges)
    index = {e: i for i, e in enumerate(G.edges)}
    pairs = nx.max_weight_matching(H, maxcardinality=True)
    return frozenset(index[(min(u, v), max(u, v))] for u, v in pairs)


# -- Tutte matrix evaluation -----------------------------------------------------

def _label_values(F: GF2m, x: np.ndarray, y: np.ndarray, labels: Sequence[int]) -> np.ndarray:
    """Entry value ``x_e * prod(y_j for j in labels[e])`` per point and edge."""
    vals = x.copy()
    for e, lab in enumerate(labels):
        j = 0
        while lab >> j:
            if lab >> j & 1:
                vals[:, e] = F.vmul(vals[:, e], y[:, j])
            j += 1
    return vals


def _dets_of_entries(F: GF2m, G: Graph, entries: np.ndarray) -> np.ndarray:
    """Tutte determinants for a batch of edge-value vectors, shape (B, m)."""
    B = entries.shape[0]
    out = np.zeros(B, dtype=np.int64)
    if G.n == 0:
        out[:] = 1
        return out
    us = np.array([u for u, _ in G.edges], dtype=np.int64)
    vs = np.array([v for _, v in G.edges], dtype=np.int64)
    for lo in range(0, B, SIEVE_CHUNK):
        chunk = entries[lo:lo + SIEVE_CHUNK]
        A = np.zeros((chunk.shape[0], G.n, G.n), dtype=np.int64)
        if G.m:
            A[:, us, vs] = chunk
            A[:, vs, us] = chunk
        out[lo:lo + SIEVE_CHUNK] = batch_determinant(F, A)
    return out


def sieved_tutte_values(F: GF2m, G: Graph, labels: Sequence[int], nlabels: int,
                        x: np.ndarray, y: np.ndarray, zeroed: Iterable[int] = ()) -> np.ndarray:
    """Sieved labelled-Tutte determinant at each of the given points.

    ``labels[e]`` is a bitmask over ``nlabels`` label variables; ``x`` has
    shape (P, m) and ``y`` shape (P, nlabels).  Edges in ``zeroed`` get value
    zero.  Returns, per point, the XOR over all label subsets I of the
    determinant with the labels in I set to zero.
    """
    P = x.shape[0]
    vals = _label_values(F, x, y, labels)
    z = list(zeroed)
    if z:
        vals[:, z] = 0
    lab = np.array(labels, dtype=np.int64).reshape(1, -1)
    masks = np.arange(1 << nlabels, dtype=np.int64).reshape(-1, 1)
    alive = (lab & masks) == 0                      # (T, m)
    entries = np.where(alive[None, :, :], vals[:, None, :], 0)  # (P, T, m)
    dets = _dets_of_entries(F, G, entries.reshape(-1, G.m))
    return np.bitwise_xor.reduce(dets.reshape(P, -1), axis=1)


def has_perfect_matching_tutte(G: Graph, rng: np.random.Generator, trials: int = 10) -> bool:
    """Random evaluations of the Tutte determinant; True is always correct."""
    if G.n % 2:
        return False
    F = field_for_size(3 * max(G.n, 1))
    x = F.random_elements(rng, (trials, G.m))
    return bool(np.any(_dets_of_entries(F, G, x) != 0))


# -- far matchings --------------------------------------------------------------------

@dataclass
class TrialLog:
    trials: int = 0
    successes: int = 0


def default_budget(exponent: float, cap: int = DEFAULT_TRIAL_CAP) -> int:
    if exponent > math.log(cap):
        return cap
    return min(cap, math.ceil(3 * math.exp(exponent)))


def far_matching_field(G: Graph, r: int, s: int) -> GF2m:
    return field_for_size(3 * (G.m + 1) * (G.n + 2 * r * s))


def far_matching_trial(G: Graph, matchings: Sequence[frozenset[int]], s: int,
                       rng: np.random.Generator, F: GF2m | None = None,
                       points: int = 3) -> frozenset[int] | None:
    """One color-coding round; returns a verified far matching or None."""
    r = len(matchings)
    F = F or far_matching_field(G, r, s)
    nlabels = r * s
    labels = [0] * G.m
    for i, Mi in enumerate(matchings):
        colors = rng.integers(0, s, size=G.m) if s else np.zeros(G.m, dtype=np.int64)
        for e in range(G.m):
            if e not in Mi and s:
                labels[e] |= 1 << (i * s + int(colors[e]))

    def nonzero(zeroed) -> bool:
        x = F.random_elements(rng, (points, G.m))
        y = F.random_elements(rng, (points, nlabels))
        return bool(np.any(sieved_tutte_values(F, G, labels, nlabels, x, y, zeroed) != 0))

    if not nonzero(()):
        return None
    zeroed: set[int] = set()
    kept: list[int] = []
    covered: set[int] = set()
    for e in range(G.m):
        if len(covered) == G.n:
            zeroed.add(e)
            continue
        u, v = G.edges[e]
        if u in covered or v in covered:
            zeroed.add(e)
            continue
        if nonzero(zeroed | {e}):
            zeroed.add(e)
        else:
            kept.append(e)
            covered.update((u, v))
    M = frozenset(kept)
    if not G.is_perfect_matching(M):
        return None
    if any(len(M - Mi) < s for Mi in matchings):
        return None
    return M


def far_matching(G: Graph, matchings: Sequence[frozenset[int]], s: int,
                 budget: int | None = None, rng: np.random.Generator | None = None,
                 log: TrialLog | None = None) -> frozenset[int] | None:
    """A perfect matching M with |M - M_i| >= s for every given M_i, or None.

    None after ``budget`` failed trials is not a proof that none exists,
    except when ``2s > n``, where no perfect matching can qualify.
    """
    rng = rng if rng is not None else np.random.default_rng()
    r = len(matchings)
    for Mi in matchings:
        if not G.is_perfect_matching(Mi):
            raise InputError("far_matching needs perfect matchings as input")
    if 2 * s > G.n:
        return None
    if budget is None:
        budget = default_budget(r * s)
    F = far_matching_field(G, r, s)
    for _ in range(budget):
        if log is not None:
            log.trials += 1
        M = far_matching_trial(G, matchings, s, rng, F)
        if M is not None:
            if log is not None:
                log.successes += 1
            return M
    return None


# -- close matchings via alternating cycles ----------------------------------------------

def alternating_collections(G: Graph, M: frozenset[int], coloring: Sequence[int],
                            max_size: int, allowed: int | None = None) -> dict[int, tuple[int, ...]]:
    """Rainbow collections of vertex-disjoint M-alternating cycles, by color set.

    Returns a map from a color bitmask L (|L| <= max_size, L inside
    ``allowed``) to one collection of cycles whose edges carry exactly the
    colors of L, each once.  Every cycle is grown from its smallest vertex
    along its matching edge and alternates strictly; distinct colors force
    distinct matching edges, hence vertex-disjoint cycles.
    """
    mate, medge = G.mates(M)
    bit = [1 << int(c) for c in coloring]
    if allowed is not None:
        usable = [b & allowed != 0 for b in bit]
    else:
        usable = [True] * G.m
    nonm: list[list[tuple[int, int]]] = [[] for _ in range(G.n)]
    for e, (u, v) in enumerate(G.edges):
        if e not in M and usable[e]:
            nonm[u].append((v, e))
            nonm[v].append((u, e))

    closed: dict[int, tuple[int, ...]] = {0: ()}
    # open[(L, start, end)] = edges; the last edge is the matching edge at ``end``
    opened: dict[tuple[int, int, int], tuple[int, ...]] = {}
    levels: list[list[tuple]] = [[] for _ in range(max_size + 1)]
    levels[0].append(("c", 0))
    for size in range(max_size + 1):
        for state in levels[size]:
            if state[0] == "c":
                L = state[1]
                Q = closed[L]
                for u in range(G.n):
                    w = mate[u]
                    if w < u or not usable[medge[u]] or bit[medge[u]] & L:
                        continue
                    L2 = L | bit[medge[u]]
                    key = (L2, u, w)
                    if size + 1 <= max_size and key not in opened:
                        opened[key] = Q + (medge[u],)
                        levels[size + 1].append(("o",) + key)
                continue
            _, L, u, v = state
            path = opened[(L, u, v)]
            for w, e in nonm[v]:
                be = bit[e]
                if be & L:
                    continue
                if w == u:
                    if size + 1 <= max_size and L | be not in closed:
                        closed[L | be] = path + (e,)
                        levels[size + 1].append(("c", L | be))
                    continue
                x = mate[w]
                if w < u or x < u or not usable[medge[w]]:
                    continue
                bm = bit[medge[w]]
                if bm & (L | be) or size + 2 > max_size:
                    continue
                key = (L | be | bm, u, x)
                if key not in opened:
                    opened[key] = path + (e, medge[w])
                    levels[size + 2].append(("o",) + key)
    return closed


def alternating_dp(G: Graph, M: frozenset[int], target_colors: Iterable[int],
                   coloring: Sequence[int]) -> frozenset[int] | None:
    """Alternating cycles whose edges use each target color exactly once."""
    target = 0
    for c in target_colors:
        target |= 1 << int(c)
    table = alternating_collections(G, M, coloring, target.bit_count(), allowed=target)
    Q = table.get(target)
    return None if Q is None else frozenset(Q)


def close_diverse_trial(G: Graph, M: frozenset[int], r: int, d: int, s: int,
                        rng: np.random.Generator, max_tuple_nodes: int | None = 200_000):
    """One coloring round; returns r verified matchings near M, or None."""
    s_eff = min(s, G.n)
    palette = max(1, r * s_eff)
    coloring = rng.integers(0, palette, size=G.m)
    table = alternating_collections(G, M, coloring, s_eff)
    near = [frozenset(Q) ^ M for Q in table.values()]
    found = find_diverse_tuple(near, r, d, lambda a, b: len(a ^ b), max_tuple_nodes)
    if found is None:
        return None
    check = verify_matchings(G, d, found, r)
    if not check.ok or any(len(P ^ M) > s for P in found):
        return None
    return found


def close_diverse_matchings(G: Graph, M: frozenset[int], r: int, d: int, s: int,
                            budget: int | None = None, rng: np.random.Generator | None = None,
                            log: TrialLog | None = None) -> list[frozenset[int]] | None:
    """r perfect matchings within distance s of M, pairwise at least d apart."""
    if not G.is_perfect_matching(M):
        raise InputError("close_diverse_matchings needs a perfect matching M")
    if r < 1:
        raise InputError(f"r must be at least 1, got {r}")
    rng = rng if rng is not None else np.random.default_rng()
    if budget is None:
        budget = default_budget(r * min(s, G.n))
    for _ in range(budget):
        if log is not None:
            log.trials += 1
        found = close_diverse_trial(G, M, r, d, s, rng)
        if found is not None:
            if log is not None:
                log.successes += 1
            return found
    return None


# -- the two-phase solver ------------------------------------------------------------------

@dataclass
class DpmConfig:
    repetitions: int = 30
    trial_budget: int | None = None   # per call of either procedure; None = default schedule
    trial_cap: int = DEFAULT_TRIAL_CAP
    max_assemblies: int = 10_000


def compositions(k: int, q: int) -> list[tuple[int, ...]]:
    """All ways to write k as an ordered sum of q nonnegative parts."""
    out = []
    for bars in combinations(range(k + q - 1), q - 1):
        prev, parts = -1, []
        for b in bars + (k + q - 1,):
            parts.append(b - prev - 1)
            prev = b
        out.append(tuple(parts))
    return out


@dataclass
class DpmStats:
    repetitions: int = 0
    far: TrialLog = field(default_factory=TrialLog)
    close: TrialLog = field(default_factory=TrialLog)
    phase1_sizes: list[int] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "repetitions": self.repetitions,
            "far_trials": self.far.trials,
            "far_successes": self.far.successes,
            "close_trials": self.close.trials,
            "close_successes": self.close.successes,
            "phase1_sizes": list(self.phase1_sizes),
        }


def solve_dpm(G: Graph, k: int, d: int, seed: int = 0, config: DpmConfig | None = None) -> Answer:
    if k < 1:
        raise InputError(f"k must be at least 1, got {k}")
    if d < 0:
        raise InputError(f"d must be nonnegative, got {d}")
    config = config or DpmConfig()
    stats = DpmStats()
    M1 = maximum_matching(G)
    if not G.is_perfect_matching(M1):
        return Answer(False, exact=True, stats={"route": "no perfect matching"})
    if k == 1 or d == 0:
        return _certified(G, d, [M1] * k, {"route": "trivial"})
    if d > G.n:
        # two perfect matchings differ in at most n edges
        return Answer(False, exact=True, stats={"route": "distance bound"})

    def budget(exponent):
        if config.trial_budget is not None:
            return config.trial_budget
        return default_budget(exponent, config.trial_cap)

    for rep in range(config.repetitions):
        stats.repetitions += 1
        Ms = [M1]
        for i in range(1, k):
            s = 2 ** (k - i - 1) * d
            rng = child_rng(seed, "far", rep, i)
            M = far_matching(G, Ms, s, budget(i * s), rng, stats.far)
            if M is None:
                break
            Ms.append(M)
        q = len(Ms)
        stats.phase1_sizes.append(q)
        if q == k:
            check = verify_matchings(G, d, Ms, k)
            if check.ok:
                return Answer(True, check.witness, stats={"route": "far", **stats.as_dict()})
            continue
        s = 2 ** (k - q) * d
        pools: dict[tuple[int, int], list[list[frozenset[int]]]] = {}
        for comp in compositions(k, q):
            groups = []
            for i, r in enumerate(comp):
                if r == 0:
                    continue
                key = (i, r)
                rng = child_rng(seed, "close", rep, i, r, len(pools.get(key, ())))
                found = close_diverse_matchings(G, Ms[i], r, d, s, budget(r * min(s, G.n)),
                                                rng, stats.close)
                if found is None:
                    break
                pool = pools.setdefault(key, [])
                if found not in pool:
                    pool.append(found)
                groups.append(pool)
            else:
                sets = _assemble(G, d, groups, config.max_assemblies)
                if sets is not None:
                    return _certified(G, d, sets, {"route": "close", **stats.as_dict()})
    return Answer(False, exact=False, stats={"route": "exhausted", **stats.as_dict()})


def _assemble(G: Graph, d: int, groups: list[list[list[frozenset[int]]]], cap: int):
    """Pick one tuple per cluster so that all cross-cluster pairs are >= d apart."""
    tried = 0
    chosen: list[list[frozenset[int]]] = []

    def go(i: int) -> bool:
        nonlocal tried
        if i == len(groups):
            return True
        for tup in groups[i]:
            tried += 1
            if tried > cap:
                return False
            if all(len(a ^ b) >= d for prev in chosen for a in prev for b in tup):
                chosen.append(tup)
                if go(i + 1):
                    return True
                chosen.pop()
        return False

    if not go(0):
        return None
    sets = [P for tup in chosen for P in tup]
    return sets if verify_matchings(G, d, sets).ok else None


def _certified(G: Graph, d: int, sets, stats) -> Answer:
    check = verify_matchings(G, d, sets, len(sets))
    if not check.ok:
        raise AssertionError(f"internal error, unverified witness: {check.problems}")
    return Answer(True, check.witness, stats=stats)
