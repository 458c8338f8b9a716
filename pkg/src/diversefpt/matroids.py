"""Matroid oracles: concrete families, lazy dual/minor views, and axiom checks.

Every matroid exposes an independence query over a finite ground set of
integer element ids.  The concrete families use the dense ids ``0..n-1``;
dual and minor views keep the ids of the matroid they wrap, so a contraction
of ``U_5^3`` by ``{0}`` has ground set ``{1, 2, 3, 4}``.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import BudgetError, ContractError, InputError

_CACHE_LIMIT = 200_000


class Matroid(ABC):
    """Independence oracle over ``self.ground``.

    Subclasses implement :meth:`_independent`; everything else (rank, corank,
    closure, minors, duals) is derived from it.  Instances are immutable after
    construction, so answers are memoised.
    """

    def __init__(self, ground: Iterable[int]):
        self.ground: frozenset[int] = frozenset(ground)
        self._memo: dict[frozenset[int], bool] = {}

    # -- queries ---------------------------------------------------------
    def _check(self, A: Iterable[int]) -> frozenset[int]:
        A = A if isinstance(A, frozenset) else frozenset(A)
        if not A <= self.ground:
            bad = sorted(A - self.ground)
            raise InputError(f"elements {bad} are not in the ground set")
        return A

    @abstractmethod
    def _independent(self, A: frozenset[int]) -> bool: ...

    def is_independent(self, A: Iterable[int]) -> bool:
        A = self._check(A)
        hit = self._memo.get(A)
        if hit is None:
            if len(self._memo) > _CACHE_LIMIT:
                self._memo.clear()
            hit = self._memo[A] = self._independent(A)
        return hit

    def rank(self, A: Iterable[int] | None = None) -> int:
        """Size of a largest independent subset of ``A`` (default: ground).

        Greedy augmentation in ascending id order; by (I3) every maximal
        independent subset has the same size.
        """
        A = self.ground if A is None else self._check(A)
        return len(self._greedy(A))

    def _greedy(self, A: Iterable[int], start: frozenset[int] = frozenset()) -> frozenset[int]:
        indep = set(start)
        for e in sorted(A):
            if e in indep:
                continue
            if self.is_independent(indep | {e}):
                indep.add(e)
        return frozenset(indep)

    @cached_property
    def full_rank(self) -> int:
        return self.rank(self.ground)

    def corank(self, A: Iterable[int]) -> int:
        A = self._check(A)
        return len(A) - self.full_rank + self.rank(self.ground - A)

    def closure(self, A: Iterable[int]) -> frozenset[int]:
        A = self._check(A)
        r = self.rank(A)
        return frozenset(x for x in self.ground if x in A or self.rank(A | {x}) == r)

    def is_basis(self, A: Iterable[int]) -> bool:
        A = self._check(A)
        return len(A) == self.full_rank and self.is_independent(A)

    def is_coindependent(self, A: Iterable[int]) -> bool:
        A = self._check(A)
        return self.rank(self.ground - A) == self.full_rank

    def some_basis(self) -> frozenset[int]:
        """The ascending-id greedy basis."""
        return self._greedy(self.ground)

    def bases(self) -> Iterator[frozenset[int]]:
        """All bases, in lexicographic order of their sorted id tuples."""
        r = self.full_rank
        for combo in combinations(sorted(self.ground), r):
            if self.is_independent(combo):
                yield frozenset(combo)

    # -- derived matroids ------------------------------------------------
    def dual(self) -> Matroid:
        return DualMatroid(self)

    def delete(self, X: Iterable[int]) -> Matroid:
        return MinorMatroid(self, deleted=self._check(X))

    def contract(self, X: Iterable[int]) -> Matroid:
        return MinorMatroid(self, contracted=self._check(X))

    def restrict(self, S: Iterable[int]) -> Matroid:
        S = self._check(S)
        return self.delete(self.ground - S)

    def extend_to_basis(self, X: Iterable[int], Y: Iterable[int] = ()) -> frozenset[int]:
        """A basis containing independent ``X`` and avoiding coindependent ``Y``."""
        X, Y = self._check(X), self._check(Y)
        if X & Y:
            raise ContractError("X and Y must be disjoint")
        if not self.is_independent(X):
            raise ContractError("X is not independent")
        if not self.is_coindependent(Y):
            raise ContractError("Y is not coindependent")
        return self._greedy(self.ground - Y, start=X)


class UniformMatroid(Matroid):
    def __init__(self, n: int, r: int):
        if n < 0 or not 0 <= r <= n:
            raise InputError(f"uniform matroid needs 0 <= r <= n, got n={n}, r={r}")
        super().__init__(range(n))
        self.n, self.r = n, r

    def _independent(self, A):
        return len(A) <= self.r

    def rank(self, A=None):
        A = self.ground if A is None else self._check(A)
        return min(len(A), self.r)

    def __repr__(self):
        return f"UniformMatroid(n={self.n}, r={self.r})"


class GraphicMatroid(Matroid):
    """Cycle matroid of a multigraph; element ``i`` is ``edges[i]``."""

    def __init__(self, vertices: int, edges: Sequence[tuple[int, int]]):
        edges = tuple((int(u), int(v)) for u, v in edges)
        for u, v in edges:
            if not (0 <= u < vertices and 0 <= v < vertices):
                raise InputError(f"edge ({u}, {v}) has an endpoint outside 0..{vertices - 1}")
        super().__init__(range(len(edges)))
        self.vertices = vertices
        self.edges = edges

    def _forest_size(self, A) -> int:
        parent = {}

        def find(x):
            while parent.get(x, x) != x:
                parent[x] = parent.get(parent[x], parent[x])
                x = parent[x]
            return x

        size = 0
        for e in sorted(A):
            u, v = self.edges[e]
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                size += 1
        return size

    def _independent(self, A):
        return self._forest_size(A) == len(A)

    def rank(self, A=None):
        A = self.ground if A is None else self._check(A)
        return self._forest_size(A)

    def __repr__(self):
        return f"GraphicMatroid(vertices={self.vertices}, edges={list(self.edges)})"


# -- exact linear algebra over GF(p) ------------------------------------------

def is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def rref_mod_p(rows: Sequence[Sequence[int]], p: int, pivot_order: Sequence[int] | None = None):
    """Reduced row echelon form over GF(p).

    Columns listed in ``pivot_order`` are tried as pivots first (in that
    order), then the remaining columns left to right.  Returns the nonzero
    rows and the pivot column of each.
    """
    mat = [[x % p for x in row] for row in rows]
    ncols = len(mat[0]) if mat else 0
    order = list(pivot_order or ())
    order += [c for c in range(ncols) if c not in set(order)]
    pivots: list[int] = []
    top = 0
    for c in order:
        if top == len(mat):
            break
        piv = next((i for i in range(top, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[top], mat[piv] = mat[piv], mat[top]
        inv = pow(mat[top][c], p - 2, p)
        mat[top] = [x * inv % p for x in mat[top]]
        for i in range(len(mat)):
            if i != top and mat[i][c]:
                f = mat[i][c]
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[top])]
        pivots.append(c)
        top += 1
    return mat[:top], pivots


def rank_of_vectors(vectors: Iterable[Sequence[int]], p: int) -> int:
    basis: dict[int, list[int]] = {}  # leading index -> reduced vector
    rank = 0
    for vec in vectors:
        v = [x % p for x in vec]
        for lead, b in basis.items():
            if v[lead]:
                f = v[lead]
                v = [(x - f * y) % p for x, y in zip(v, b)]
        lead = next((i for i, x in enumerate(v) if x), None)
        if lead is None:
            continue
        inv = pow(v[lead], p - 2, p)
        v = [x * inv % p for x in v]
        for other in basis.values():
            if other[lead]:
                f = other[lead]
                other[:] = [(x - f * y) % p for x, y in zip(other, v)]
        basis[lead] = v
        rank += 1
    return rank


class LinearMatroid(Matroid):
    """Column matroid of a matrix over the prime field GF(p)."""

    def __init__(self, matrix: Sequence[Sequence[int]], p: int, cols: int | None = None):
        if not is_prime(p):
            raise InputError(f"field size {p} is not prime")
        rows = [tuple(int(x) % p for x in row) for row in matrix]
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise InputError("matrix rows have different lengths")
        ncols = widths.pop() if widths else (cols or 0)
        if cols is not None and cols != ncols:
            raise InputError(f"expected {cols} columns, got {ncols}")
        super().__init__(range(ncols))
        self.p = p
        self.matrix = tuple(rows)
        self.columns = tuple(tuple(r[j] for r in rows) for j in range(ncols))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.matrix), len(self.columns)

    def _independent(self, A):
        return rank_of_vectors((self.columns[j] for j in sorted(A)), self.p) == len(A)

    def rank(self, A=None):
        A = self.ground if A is None else self._check(A)
        return rank_of_vectors((self.columns[j] for j in sorted(A)), self.p)

    def standard_form(self):
        """Row-reduced full-rank representation ``(rows, pivots)``."""
        if not self.matrix:
            return [], []
        return rref_mod_p(self.matrix, self.p)

    def dual_representation(self) -> LinearMatroid:
        """Representation of the dual via the standard-form complement.

        With the pivot columns reduced to an identity block ``[I | D]``, the
        dual is represented by ``[-D^T | I]`` on the same column order.
        """
        rows, pivots = self.standard_form()
        n = len(self.columns)
        free = [c for c in range(n) if c not in set(pivots)]
        dual = [[0] * n for _ in free]
        for j, c in enumerate(free):
            dual[j][c] = 1
            for i, pc in enumerate(pivots):
                dual[j][pc] = (-rows[i][c]) % self.p
        return LinearMatroid(dual, self.p, cols=n)

    def minor_representation(self, deleted: Iterable[int] = (), contracted: Iterable[int] = ()):
        """Representation of ``(M - deleted) / contracted`` with compact ids.

        Returns ``(matroid, kept)`` where column ``j`` of the new matrix is
        original element ``kept[j]``.  Contraction pivots on the contracted
        columns and drops their rows; the result has full row rank.
        """
        deleted, contracted = self._check(deleted), self._check(contracted)
        if deleted & contracted:
            raise InputError("deleted and contracted sets overlap")
        kept = sorted(self.ground - deleted - contracted)
        if not self.matrix:
            return LinearMatroid([], self.p, cols=len(kept)), kept
        rows, pivots = rref_mod_p(self.matrix, self.p, pivot_order=sorted(contracted))
        drop = {i for i, c in enumerate(pivots) if c in contracted}
        rest = [[row[c] for c in kept] for i, row in enumerate(rows) if i not in drop]
        if rest:
            rest, _ = rref_mod_p(rest, self.p)
        return LinearMatroid(rest, self.p, cols=len(kept)), kept

    def __repr__(self):
        return f"LinearMatroid(p={self.p}, shape={self.shape})"


# -- lazy views ---------------------------------------------------------------

class DualMatroid(Matroid):
    """``M*``: ``A`` is independent iff ``E - A`` still spans ``M``."""

    def __init__(self, base: Matroid):
        super().__init__(base.ground)
        self.base = base

    def _independent(self, A):
        return self.base.rank(self.ground - A) == self.base.full_rank

    def rank(self, A=None):
        A = self.ground if A is None else self._check(A)
        return len(A) - self.base.full_rank + self.base.rank(self.ground - A)

    def dual(self):
        return self.base

    def __repr__(self):
        return f"DualMatroid({self.base!r})"


class MinorMatroid(Matroid):
    """``(base - deleted) / contracted`` answered through ``base``.

    ``rank_{M/C}(Y) = rank(C | Y) - rank(C)``; independence in the contraction
    is tested against a fixed basis of ``C``.
    """

    def __init__(self, base: Matroid, deleted: Iterable[int] = (), contracted: Iterable[int] = ()):
        deleted, contracted = frozenset(deleted), frozenset(contracted)
        if deleted & contracted:
            raise InputError(f"elements {sorted(deleted & contracted)} are both deleted and contracted")
        base._check(deleted | contracted)
        super().__init__(base.ground - deleted - contracted)
        self.base = base
        self.deleted = deleted
        self.contracted = contracted
        self._contracted_basis = base._greedy(contracted)

    def _independent(self, A):
        return self.base.is_independent(A | self._contracted_basis)

    def rank(self, A=None):
        A = self.ground if A is None else self._check(A)
        return self.base.rank(A | self.contracted) - len(self._contracted_basis)

    def delete(self, X):
        X = self._check(X)
        return MinorMatroid(self.base, self.deleted | X, self.contracted)

    def contract(self, X):
        X = self._check(X)
        return MinorMatroid(self.base, self.deleted, self.contracted | X)

    def __repr__(self):
        return f"MinorMatroid({self.base!r}, deleted={sorted(self.deleted)}, contracted={sorted(self.contracted)})"


def minor(M: Matroid, delete: Iterable[int] = (), contract: Iterable[int] = ()) -> Matroid:
    return MinorMatroid(M, delete, contract)


def ceil_half(d: int) -> int:
    return (d + 1) // 2


# -- exhaustive axiom checks --------------------------------------------------

@dataclass
class AxiomReport:
    mode: str
    checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _bits(mask: int) -> list[int]:
    out, i = [], 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def check_axioms(M: Matroid, mode: str = "independence", limit: int = 12,
                 max_reports: int = 1000) -> AxiomReport:
    """Exhaustively verify (I1)-(I3), (B1)-(B2) or (CL1)-(CL4) on ``M``.

    The oracle is queried on all ``2^n`` subsets, so ``n`` must not exceed
    ``limit``.  Every violated instance is listed (up to ``max_reports``).
    """
    if mode not in ("independence", "basis", "closure"):
        raise InputError(f"unknown axiom family {mode!r}")
    elems = sorted(M.ground)
    n = len(elems)
    if n > limit:
        raise BudgetError(f"ground set has {n} elements; exhaustive check is capped at {limit}")

    def name(mask):
        return "{" + ",".join(str(elems[i]) for i in _bits(mask)) + "}"

    full = (1 << n) - 1
    indep = [M.is_independent(elems[i] for i in _bits(S)) for S in range(1 << n)]
    report = AxiomReport(mode)

    def bad(msg):
        if len(report.violations) < max_reports:
            report.violations.append(msg)

    if mode == "independence":
        report.checked += 1
        if not indep[0]:
            bad("(I1) the empty set is dependent")
        by_size: dict[int, list[int]] = {}
        for S in range(1 << n):
            if indep[S]:
                by_size.setdefault(S.bit_count(), []).append(S)
                for i in _bits(S):
                    report.checked += 1
                    if not indep[S & ~(1 << i)]:
                        bad(f"(I2) {name(S)} is independent but its subset {name(S & ~(1 << i))} is not")
        # (I3) for |B| = |A| + 1 suffices once (I2) holds.
        for size, As in by_size.items():
            Bs = by_size.get(size + 1, ())
            for A in As:
                augment = sum(1 << i for i in range(n) if not A >> i & 1 and indep[A | (1 << i)])
                for B in Bs:
                    report.checked += 1
                    if not B & ~A & augment:
                        bad(f"(I3) no element of {name(B)} - {name(A)} augments {name(A)}")
        return report

    if mode == "basis":
        maximal = [S for S in range(1 << n)
                   if indep[S] and not any(indep[S | (1 << i)] for i in range(n) if not S >> i & 1)]
        report.checked += 1
        if not maximal:
            bad("(B1) there are no bases")
        bset = set(maximal)
        for B1 in maximal:
            # swap_in[x] = elements y with B1 - x + y a basis
            swap_in = {x: sum(1 << y for y in range(n) if not B1 >> y & 1 and (B1 & ~(1 << x)) | (1 << y) in bset)
                       for x in _bits(B1)}
            for B2 in maximal:
                for x in _bits(B1 & ~B2):
                    report.checked += 1
                    if not B2 & ~B1 & swap_in[x]:
                        bad(f"(B2) no exchange for {elems[x]} from {name(B1)} into {name(B2)}")
        return report

    # closure: rank table by DP over the independence table
    rank = [0] * (1 << n)
    for S in range(1, 1 << n):
        rank[S] = S.bit_count() if indep[S] else max(rank[S & ~(1 << i)] for i in _bits(S))
    cl = [S | sum(1 << x for x in range(n) if rank[S | (1 << x)] == rank[S]) for S in range(1 << n)]
    for A in range(1 << n):
        report.checked += 1
        if A & ~cl[A]:
            bad(f"(CL1) {name(A)} is not contained in its closure")
        if cl[cl[A]] != cl[A]:
            bad(f"(CL3) closure of {name(A)} is not idempotent")
        # (CL2): enough to compare with one-element supersets
        for i in range(n):
            if not A >> i & 1:
                report.checked += 1
                if cl[A] & ~cl[A | (1 << i)]:
                    bad(f"(CL2) cl({name(A)}) is not inside cl({name(A | (1 << i))})")
        for x in range(n):
            gained = cl[A | (1 << x)] & ~cl[A] & full
            for y in _bits(gained):
                report.checked += 1
                if not cl[A | (1 << y)] >> x & 1:
                    bad(f"(CL4) {elems[y]} in cl({name(A | (1 << x))}) - cl({name(A)}) "
                        f"but {elems[x]} not in cl({name(A | (1 << y))})")
    return report
