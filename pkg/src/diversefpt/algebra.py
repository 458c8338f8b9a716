"""Arithmetic over GF(2^m), determinants, the monomial sieve, and a small
symbolic polynomial type used to check determinant expansions exactly."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .errors import BudgetError, DomainError, InputError

# Exponents of the nonzero terms below the leading one, x^m + ... + 1.
IRREDUCIBLE_TAPS: dict[int, tuple[int, ...]] = {
    1: (0,), 2: (1, 0), 3: (1, 0), 4: (1, 0), 5: (2, 0), 6: (1, 0), 7: (1, 0),
    8: (4, 3, 2, 0), 9: (4, 0), 10: (3, 0), 11: (2, 0), 12: (6, 4, 1, 0),
    13: (4, 3, 1, 0), 14: (10, 6, 1, 0), 15: (1, 0), 16: (12, 3, 1, 0),
    17: (3, 0), 18: (7, 0), 19: (5, 2, 1, 0), 20: (3, 0), 21: (2, 0), 22: (1, 0),
    23: (5, 0), 24: (7, 2, 1, 0), 25: (3, 0), 26: (6, 2, 1, 0), 27: (5, 2, 1, 0),
    28: (3, 0), 29: (2, 0), 30: (23, 2, 1, 0), 31: (3, 0), 32: (22, 2, 1, 0),
}

TABLE_LIMIT = 20  # exp/log tables are built only up to this degree


def _clmul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def _polymod(a: int, mod: int) -> int:
    dm = mod.bit_length()
    while a.bit_length() >= dm:
        a ^= mod << (a.bit_length() - dm)
    return a


@lru_cache(maxsize=None)
def is_irreducible_gf2(poly: int) -> bool:
    """Trial division by every polynomial of degree <= deg/2."""
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    for div in range(2, 1 << (deg // 2 + 1)):
        if _polymod(poly, div) == 0:
            return False
    return True


class GF2m:
    """The field GF(2^m); elements are ints in [0, 2^m)."""

    def __init__(self, m: int):
        if m not in IRREDUCIBLE_TAPS:
            raise InputError(f"extension degree must be in 1..32, got {m}")
        self.m = m
        self.order = 1 << m
        self.modulus = (1 << m) | sum(1 << t for t in IRREDUCIBLE_TAPS[m])
        if not is_irreducible_gf2(self.modulus):
            raise DomainError(f"reduction polynomial for m={m} is reducible")
        self._exp: np.ndarray | None = None
        self._log: np.ndarray | None = None

    def __repr__(self):
        return f"GF2m(m={self.m})"

    def __eq__(self, other):
        return isinstance(other, GF2m) and other.m == self.m

    def __hash__(self):
        return hash(("GF2m", self.m))

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        out = 0
        top = 1 << self.m
        while b:
            if b & 1:
                out ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= self.modulus
        return out

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        out = 1
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def inv(self, a: int) -> int:
        if a == 0:
            raise DomainError("zero has no inverse")
        return self.pow(a, self.order - 2)

    def random_element(self, rng: np.random.Generator) -> int:
        return int(rng.integers(0, self.order))

    def random_elements(self, rng: np.random.Generator, shape) -> np.ndarray:
        return rng.integers(0, self.order, size=shape, dtype=np.int64)

    # -- table-driven vector arithmetic ------------------------------------

    @property
    def has_tables(self) -> bool:
        return self.m <= TABLE_LIMIT

    def _tables(self):
        if self._exp is None:
            if not self.has_tables:
                raise BudgetError(f"log tables are limited to m <= {TABLE_LIMIT}")
            self._exp, self._log = _build_tables(self.m, self.modulus)
        return self._exp, self._log

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        exp, log = self._tables()
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = exp[log[a] + log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vinv(self, a: np.ndarray) -> np.ndarray:
        exp, log = self._tables()
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DomainError("zero has no inverse")
        return exp[(self.order - 1 - log[a]) % (self.order - 1)]


@lru_cache(maxsize=None)
def _build_tables(m: int, modulus: int):
    order = 1 << m
    group = order - 1
    f = _ScalarField(m, modulus)
    gen = next(g for g in range(2, order) if f.has_full_order(g)) if m > 1 else 1
    exp = np.zeros(2 * group + 1, dtype=np.int64)
    x = 1
    for i in range(group):
        exp[i] = x
        x = f.mul(x, gen)
    exp[group:2 * group] = exp[:group]
    log = np.zeros(order, dtype=np.int64)
    log[exp[:group]] = np.arange(group)
    # log[0] is a placeholder; callers mask zero operands
    return exp, log


@dataclass(frozen=True)
class _ScalarField:
    m: int
    modulus: int

    def mul(self, a: int, b: int) -> int:
        return _polymod(_clmul(a, b), self.modulus)

    def has_full_order(self, g: int) -> bool:
        group = (1 << self.m) - 1
        for q in _prime_factors(group):
            if self.pow(g, group // q) == 1:
                return False
        return True

    def pow(self, a: int, e: int) -> int:
        out = 1
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def field_for_size(min_size: int) -> GF2m:
    """Smallest GF(2^m) with at least ``min_size`` elements."""
    m = max(1, (max(min_size, 2) - 1).bit_length())
    return GF2m(m)


# -- determinants ------------------------------------------------------------

def determinant(F: GF2m, matrix: Sequence[Sequence[int]]) -> int:
    """Determinant over GF(2^m) by Gaussian elimination.

    Row swaps carry no sign in characteristic two.
    """
    A = [list(map(int, row)) for row in matrix]
    n = len(A)
    if any(len(row) != n for row in A):
        raise InputError("determinant needs a square matrix")
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return 0
        A[c], A[piv] = A[piv], A[c]
        p = A[c][c]
        det = F.mul(det, p)
        pinv = F.inv(p)
        for r in range(c + 1, n):
            if A[r][c]:
                f = F.mul(A[r][c], pinv)
                A[r] = [a ^ F.mul(f, b) for a, b in zip(A[r], A[c])]
    return det


def batch_determinant(F: GF2m, mats: np.ndarray) -> np.ndarray:
    """Determinants of a stack of square matrices, shape (B, n, n)."""
    A = np.array(mats, dtype=np.int64, copy=True)
    if A.ndim != 3 or A.shape[1] != A.shape[2]:
        raise InputError("expected a stack of square matrices")
    B, n, _ = A.shape
    if not F.has_tables:
        return np.array([determinant(F, A[b].tolist()) for b in range(B)], dtype=np.int64)
    det = np.ones(B, dtype=np.int64)
    rows = np.arange(B)
    for c in range(n):
        nz = A[:, c:, c] != 0
        alive = nz.any(axis=1)
        det = np.where(alive, det, 0)
        piv = c + np.argmax(nz, axis=1)
        top = A[rows, c].copy()
        A[rows, c] = A[rows, piv]
        A[rows, piv] = top
        p = np.where(alive, A[:, c, c], 1)
        det = F.vmul(det, p)
        if c + 1 == n:
            break
        factor = F.vmul(A[:, c + 1:, c], F.vinv(p)[:, None])
        A[:, c + 1:, :] ^= F.vmul(factor[:, :, None], A[:, c, None, :])
    return det


# -- monomial sieve ------------------------------------------------------------

def sieve_evaluate(evaluate: Callable[[Sequence[int]], int], targets: Iterable[int],
                   point: Sequence[int], max_terms: int = 1 << 20) -> int:
    """Sum over subsets I of ``targets`` of P with the variables in I set to 0.

    Over characteristic two this keeps exactly the monomials of P that contain
    every target variable.  ``evaluate`` maps a full assignment to a value.
    """
    targets = sorted(set(targets))
    if (1 << len(targets)) > max_terms:
        raise BudgetError(f"sieve over {len(targets)} variables exceeds {max_terms} terms")
    total = 0
    base = list(point)
    for mask in range(1 << len(targets)):
        assignment = list(base)
        for i, t in enumerate(targets):
            if mask >> i & 1:
                assignment[t] = 0
        total ^= evaluate(assignment)
    return total


# -- symbolic polynomials over GF(2) ---------------------------------------------

Monomial = tuple[tuple[int, int], ...]  # sorted (variable, exponent) pairs


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    acc: dict[int, int] = dict(a)
    for v, e in b:
        acc[v] = acc.get(v, 0) + e
    return tuple(sorted(acc.items()))


@dataclass(frozen=True)
class SparsePolynomial:
    """Polynomial over GF(2) as the set of monomials with coefficient one."""

    terms: frozenset[Monomial] = field(default_factory=frozenset)

    @staticmethod
    def const(c: int) -> "SparsePolynomial":
        return SparsePolynomial(frozenset({()}) if c & 1 else frozenset())

    @staticmethod
    def var(v: int, exp: int = 1) -> "SparsePolynomial":
        return SparsePolynomial(frozenset({((v, exp),)} if exp else {()}))

    @staticmethod
    def monomial(factors: Mapping[int, int]) -> "SparsePolynomial":
        return SparsePolynomial(frozenset({tuple(sorted((v, e) for v, e in factors.items() if e))}))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        return SparsePolynomial(self.terms ^ other.terms)

    def __mul__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        acc: set[Monomial] = set()
        for a in self.terms:
            for b in other.terms:
                acc ^= {_mono_mul(a, b)}
        return SparsePolynomial(frozenset(acc))

    def variables(self) -> set[int]:
        return {v for mono in self.terms for v, _ in mono}

    def zero_variables(self, zeroed: Iterable[int]) -> "SparsePolynomial":
        z = set(zeroed)
        return SparsePolynomial(frozenset(m for m in self.terms if not any(v in z for v, _ in m)))

    def divisible_part(self, required: Iterable[int]) -> "SparsePolynomial":
        """Monomials that contain every variable in ``required``."""
        req = set(required)
        return SparsePolynomial(frozenset(m for m in self.terms if req <= {v for v, _ in m}))

    def evaluate(self, F: GF2m, point: Sequence[int] | Mapping[int, int]) -> int:
        total = 0
        for mono in self.terms:
            val = 1
            for v, e in mono:
                val = F.mul(val, F.pow(point[v], e))
                if not val:
                    break
            total ^= val
        return total

    def total_degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=0)


def symbolic_det(matrix: Sequence[Sequence[SparsePolynomial]], max_n: int = 6) -> SparsePolynomial:
    """Exact determinant over GF(2)[vars]; equals the permanent in char 2."""
    n = len(matrix)
    if n > max_n:
        raise BudgetError(f"symbolic determinant limited to n <= {max_n}, got {n}")
    if any(len(row) != n for row in matrix):
        raise InputError("determinant needs a square matrix")
    # dp over the set of used columns; row index = popcount of the mask
    dp: dict[int, SparsePolynomial] = {0: SparsePolynomial.const(1)}
    for row in range(n):
        nxt: dict[int, SparsePolynomial] = defaultdict(SparsePolynomial)
        for mask, poly in dp.items():
            for col in range(n):
                entry = matrix[row][col]
                if mask >> col & 1 or entry.is_zero():
                    continue
                nxt[mask | 1 << col] = nxt[mask | 1 << col] + poly * entry
        dp = {mk: p for mk, p in nxt.items() if not p.is_zero()}
    return dp.get((1 << n) - 1, SparsePolynomial())


def labeled_tutte_symbolic(n: int, edges: Sequence[tuple[int, int]],
                           labels: Sequence[Iterable[int]] | None = None,
                           label_offset: int | None = None) -> list[list[SparsePolynomial]]:
    """Tutte matrix with entry ``x_e * prod(y in labels[e])`` at (u, v) and (v, u).

    Edge variable ``x_e`` has index ``e``; label ``j`` has index
    ``label_offset + j`` (default offset: number of edges).
    """
    off = len(edges) if label_offset is None else label_offset
    zero = SparsePolynomial()
    A = [[zero] * n for _ in range(n)]
    for e, (u, v) in enumerate(edges):
        factors = {e: 1}
        for y in (labels[e] if labels is not None else ()):
            factors[off + y] = factors.get(off + y, 0) + 1
        entry = SparsePolynomial.monomial(factors)
        A[u][v] = entry
        A[v][u] = entry
    return A

