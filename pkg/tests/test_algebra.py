from __future__ import annotations

import math
import random
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diversefpt.algebra import (GF2m, SparsePolynomial, batch_determinant, determinant, field_for_size,
                                is_irreducible_gf2, labeled_tutte_symbolic, sieve_evaluate, symbolic_det)
from diversefpt.errors import BudgetError, DomainError
from diversefpt.matchings import Graph, sieved_tutte_values

from conftest import matching_monomial_mismatches


@pytest.mark.parametrize("m", [2, 3])
def test_field_axioms_exhaustive(m):
    F = GF2m(m)
    els = range(F.order)
    for a in els:
        assert F.add(a, a) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        for b in els:
            assert F.mul(a, b) == F.mul(b, a)
            for c in els:
                assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
                assert F.mul(a, b ^ c) == F.mul(a, b) ^ F.mul(a, c)


@pytest.mark.parametrize("m", [5, 13, 20, 31])
def test_field_axioms_random(m):
    F = GF2m(m)
    r = random.Random(m)
    for _ in range(300):
        a, b, c = (r.randrange(F.order) for _ in range(3))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.mul(a, b ^ c) == F.mul(a, b) ^ F.mul(a, c)
        if a:
            assert F.mul(a, F.inv(a)) == 1
    assert F.pow(3, F.order - 1) == 1


def test_gf4_example_and_inverse_of_zero():
    F = GF2m(2)
    assert F.mul(0b10, 0b10) == 0b11
    with pytest.raises(DomainError):
        F.inv(0)


def test_reduction_polynomials_are_irreducible():
    for m in range(1, 33):
        assert is_irreducible_gf2(GF2m(m).modulus)
    assert not is_irreducible_gf2(0b101)  # x^2 + 1 = (x + 1)^2


def test_table_arithmetic_matches_scalar():
    F = GF2m(9)
    rng = np.random.default_rng(1)
    a, b = F.random_elements(rng, 500), F.random_elements(rng, 500)
    assert F.vmul(a, b).tolist() == [F.mul(int(x), int(y)) for x, y in zip(a, b)]
    nz = a[a != 0]
    assert F.vinv(nz).tolist() == [F.inv(int(x)) for x in nz]


def test_field_for_size():
    assert field_for_size(2).m == 1
    assert field_for_size(5).m == 3
    assert field_for_size(8).m == 3
    assert field_for_size(9).m == 4


def test_determinant_examples():
    F = GF2m(4)
    assert determinant(F, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    assert determinant(F, [[1, 2, 3], [0, 0, 0], [4, 5, 6]]) == 0
    a, b, c, d = 3, 7, 9, 12
    assert determinant(F, [[a, b], [c, d]]) == F.mul(a, d) ^ F.mul(b, c)


def test_batch_matches_scalar_determinant():
    rng = np.random.default_rng(7)
    for m in (3, 13, 24):
        F = GF2m(m)
        mats = F.random_elements(rng, (60, 5, 5))
        mats[::7, 2, :] = 0
        got = batch_determinant(F, mats).tolist()
        assert got == [determinant(F, M.tolist()) for M in mats]


def test_determinant_matches_symbolic_expansion():
    F = GF2m(8)
    rng = np.random.default_rng(11)
    for n in range(1, 6):
        for _ in range(10):
            mask = rng.random((n, n)) < 0.7
            sym = [[SparsePolynomial.var(i * n + j) if mask[i, j] else SparsePolynomial()
                    for j in range(n)] for i in range(n)]
            point = F.random_elements(rng, n * n).tolist()
            numeric = [[point[i * n + j] if mask[i, j] else 0 for j in range(n)] for i in range(n)]
            assert determinant(F, numeric) == symbolic_det(sym).evaluate(F, point)


def test_symbolic_det_size_cap():
    with pytest.raises(BudgetError):
        symbolic_det([[SparsePolynomial.const(1)] * 7] * 7)


def test_tutte_examples():
    edge = symbolic_det(labeled_tutte_symbolic(2, [(0, 1)]))
    assert edge.terms == {((0, 2),)}
    K4 = Graph.complete(4)
    det = symbolic_det(labeled_tutte_symbolic(4, K4.edges))
    assert len(det.terms) == 3
    assert all(all(e == 2 for _, e in mono) for mono in det.terms)
    assert symbolic_det(labeled_tutte_symbolic(3, Graph.path(3).edges)).is_zero()
    assert matching_monomial_mismatches(K4) == []


def test_sieve_examples():
    F = GF2m(5)
    P = SparsePolynomial.monomial({1: 1, 2: 1}) + SparsePolynomial.var(2)
    assert sieve_evaluate(lambda pt: P.evaluate(F, pt), [], [0, 7, 9]) == P.evaluate(F, [0, 7, 9])
    assert sieve_evaluate(lambda pt: P.evaluate(F, pt), [1], [0, 7, 9]) == F.mul(7, 9)
    with pytest.raises(BudgetError):
        sieve_evaluate(lambda pt: 0, range(5), [0] * 5, max_terms=16)


def random_polynomial(r: random.Random, nvars: int) -> SparsePolynomial:
    P = SparsePolynomial()
    for _ in range(r.randint(0, 6)):
        P = P + SparsePolynomial.monomial({v: r.randint(0, 2) for v in range(nvars)})
    return P


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9))
def test_sieve_keeps_exactly_divisible_monomials(seed):
    r = random.Random(seed)
    nvars = r.randint(1, 5)
    P = random_polynomial(r, nvars)
    T = [v for v in range(nvars) if r.random() < 0.5]
    # symbolic: the alternating sum of zeroings is the divisible part
    acc = SparsePolynomial()
    for mask in range(1 << len(T)):
        acc = acc + P.zero_variables(t for i, t in enumerate(T) if mask >> i & 1)
    assert acc == P.divisible_part(T)
    F = GF2m(6)
    point = [r.randrange(F.order) for _ in range(nvars)]
    assert sieve_evaluate(lambda pt: P.evaluate(F, pt), T, point) == P.divisible_part(T).evaluate(F, point)


def test_numeric_sieve_matches_symbolic_on_labelled_tutte():
    rng = np.random.default_rng(5)
    G = Graph.complete(4)
    F = GF2m(10)
    for labels in ([0b01, 0, 0, 0, 0, 0b10], [0b11, 0, 0, 0, 0, 0], [0b01] * 6, [1, 2, 0, 0, 2, 1]):
        lab_sets = [[j for j in range(2) if mask >> j & 1] for mask in labels]
        det = symbolic_det(labeled_tutte_symbolic(4, G.edges, lab_sets))
        kept = det.divisible_part([G.m, G.m + 1])
        x = F.random_elements(rng, (20, G.m))
        y = F.random_elements(rng, (20, 2))
        got = sieved_tutte_values(F, G, labels, 2, x, y)
        want = [kept.evaluate(F, list(x[i]) + list(y[i])) for i in range(20)]
        assert got.tolist() == want


def test_schwartz_zippel_rate():
    # K4 Tutte determinant is nonzero of total degree 4; over GF(8) zeros are frequent
    F = GF2m(3)
    G = Graph.complete(4)
    rng = np.random.default_rng(2024)
    N = 20000
    A = np.zeros((N, 4, 4), dtype=np.int64)
    x = F.random_elements(rng, (N, G.m))
    for e, (u, v) in enumerate(G.edges):
        A[:, u, v] = A[:, v, u] = x[:, e]
    zeros = int(np.count_nonzero(batch_determinant(F, A) == 0))
    bound = 4 / F.order
    sigma = math.sqrt(bound * (1 - bound) / N)
    assert zeros / N <= bound + 3 * sigma


def test_exhaustive_zero_count_respects_bound():
    F = GF2m(2)
    P = symbolic_det(labeled_tutte_symbolic(4, Graph.cycle(4).edges))
    zeros = sum(P.evaluate(F, pt) == 0 for pt in product(range(F.order), repeat=4))
    assert zeros <= P.total_degree() * F.order ** 3
