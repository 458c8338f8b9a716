from __future__ import annotations

import random

import pytest

from diversefpt.matroids import GraphicMatroid, LinearMatroid, UniformMatroid

ACCEPTANCE_LINES: list[str] = []


def random_uniform(rng: random.Random, n: int) -> UniformMatroid:
    return UniformMatroid(n, rng.randint(0, n))


def random_graphic(rng: random.Random, n: int, max_vertices: int = 5) -> GraphicMatroid:
    v = rng.randint(2, max_vertices)
    return GraphicMatroid(v, [(rng.randrange(v), rng.randrange(v)) for _ in range(n)])


def random_linear(rng: random.Random, n: int, p: int = 3, max_rows: int = 4) -> LinearMatroid:
    r = rng.randint(1, max_rows)
    return LinearMatroid([[rng.randrange(p) for _ in range(n)] for _ in range(r)], p)


FAMILIES = {"uniform": random_uniform, "graphic": random_graphic, "linear": random_linear}


def random_matroid(rng: random.Random, n: int, family: str | None = None):
    family = family or rng.choice(sorted(FAMILIES))
    return FAMILIES[family](rng, n)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return random.Random(20240611)


def all_solutions(items, k, d, weight, cap=200):
    """Up to ``cap`` k-multisets from ``items`` with pairwise weight at least d."""
    out: list[list[frozenset[int]]] = []
    chosen: list[int] = []

    def go(start):
        if len(out) >= cap:
            return
        if len(chosen) == k:
            out.append([items[i] for i in chosen])
            return
        for j in range(start, len(items)):
            if all(weight(items[i] ^ items[j]) >= d for i in chosen):
                chosen.append(j)
                go(j)
                chosen.pop()

    go(0)
    return out


def replacement_failures(inst, family, cap=200) -> list[str]:
    """Solutions with a member that has no swap-in replacement in the family.

    ``inst`` must carry the truncated weights the family was built with.
    """
    from diversefpt.optim import set_weight
    from diversefpt.oracles import all_common_independent

    def weight(S):
        return set_weight(inst.weights, S)

    items = all_common_independent(inst.M1, inst.M2)
    failures = []
    for sol in all_solutions(items, inst.k, inst.d, weight, cap):
        for i, I in enumerate(sol):
            pool = family.by_weight.get(weight(I), set())
            others = sol[:i] + sol[i + 1:]
            if not any(all(weight(J ^ other) >= inst.d for other in others) for J in pool):
                failures.append(f"{[sorted(x) for x in sol]} member {i}")
    return failures


def matching_monomial_mismatches(G, labels=None) -> list[str]:
    """Compare the monomials of the labelled Tutte determinant with perfect matchings.

    ``labels[e]`` is a collection of label ids. Each perfect matching M must
    give exactly one monomial: every x_e (e in M) squared times every label
    on those edges squared, and nothing else may survive.
    """
    from diversefpt.algebra import labeled_tutte_symbolic, symbolic_det
    from diversefpt.oracles import enumerate_perfect_matchings

    m = G.m
    det = symbolic_det(labeled_tutte_symbolic(G.n, G.edges, labels))
    expected = set()
    for M in enumerate_perfect_matchings(G):
        powers: dict[int, int] = {}
        for e in M:
            powers[e] = powers.get(e, 0) + 2
            for y in (labels[e] if labels is not None else ()):
                powers[m + y] = powers.get(m + y, 0) + 2
        expected.add(tuple(sorted(powers.items())))
    got = set(det.terms)
    return [f"missing {t}" for t in expected - got] + [f"extra {t}" for t in got - expected]
