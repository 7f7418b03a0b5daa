"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the code paths they check: rank is
computed by fraction-free elimination instead of diagonalization, and
expected homology of small complexes is derived by hand or from graph
combinatorics.
"""

from __future__ import annotations

import random
from fractions import Fraction

from polyhom.polygraph import Polygraph, make_polygraph
from polyhom.terms import CellTerm, Comp, CompositionError, Gen, Id, compose

# ---------------------------------------------------------------------------
# Independent integer-matrix oracles


def bareiss_rank(A: list[list[int]]) -> int:
    """Rank over the rationals by fraction-free Gaussian elimination."""
    m = [row[:] for row in A]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    rank = 0
    prev_pivot = 1
    row = 0
    for col in range(cols):
        pivot_row = None
        for r in range(row, rows):
            if m[r][col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        m[row], m[pivot_row] = m[pivot_row], m[row]
        for r in range(row + 1, rows):
            for c in range(col + 1, cols):
                m[r][c] = (m[row][col] * m[r][c] - m[r][col] * m[row][c]) // prev_pivot
            m[r][col] = 0
        prev_pivot = m[row][col]
        row += 1
        rank += 1
        if row == rows:
            break
    return rank


def det_fraction(A: list[list[int]]) -> int:
    """Determinant via exact rational elimination (square input)."""
    n = len(A)
    m = [[Fraction(x) for x in row] for row in A]
    det = Fraction(1)
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] / inv
            for c in range(col, n):
                m[r][c] -= factor * m[col][c]
    assert det.denominator == 1
    return int(det)


def minor_gcds(A: list[list[int]], k: int) -> int:
    """gcd of all k x k minors (0 when all vanish)."""
    import itertools
    import math

    rows = len(A)
    cols = len(A[0]) if rows else 0
    g = 0
    for rs in itertools.combinations(range(rows), k):
        for cs in itertools.combinations(range(cols), k):
            sub = [[A[r][c] for c in cs] for r in rs]
            g = math.gcd(g, det_fraction(sub))
    return g


# ---------------------------------------------------------------------------
# Random terms over a polygraph


def random_term_pool(
    P: Polygraph, rng: random.Random, rounds: int = 60, max_size: int = 10
) -> dict[int, list[CellTerm]]:
    """Grow a pool of well-formed terms by random checked operations."""
    pool: dict[int, list[CellTerm]] = {d: [] for d in range(P.max_dim + 1)}
    for g in P.all_gens():
        pool[g.dim].append(Gen(g))
    for d in range(1, P.max_dim + 1):
        for t in list(pool[d - 1]):
            pool[d].append(Id(t))
    dims = [d for d in pool if pool[d] and d >= 1]
    for _ in range(rounds):
        d = rng.choice(dims)
        u = rng.choice(pool[d])
        v = rng.choice(pool[d])
        k = rng.randrange(d)
        try:
            t = compose(P, k, u, v)
        except CompositionError:
            continue
        from polyhom.terms import size

        if size(t) <= max_size:
            pool[d].append(t)
    return pool


def random_term(P: Polygraph, rng: random.Random, dim: int, pool=None) -> CellTerm:
    if pool is None:
        pool = random_term_pool(P, rng)
    return rng.choice(pool[dim])


# ---------------------------------------------------------------------------
# Standard presentations used across the tests


def two_object_sphere() -> Polygraph:
    return make_polygraph(
        [
            ("A", 0),
            ("B", 0),
            ("f", 1, "(c_A)", "(c_B)"),
            ("g", 1, "(c_A)", "(c_B)"),
            ("alpha", 2, "(c_f)", "(c_g)"),
            ("beta", 2, "(c_f)", "(c_g)"),
        ]
    )


def triangle_polygraph() -> Polygraph:
    """Three objects, three arrows, one 2-cell from the long edge."""
    return make_polygraph(
        [
            ("v0", 0),
            ("v1", 0),
            ("v2", 0),
            ("d01", 1, "(c_v0)", "(c_v1)"),
            ("d12", 1, "(c_v1)", "(c_v2)"),
            ("d02", 1, "(c_v0)", "(c_v2)"),
            ("t", 2, "(c_d02)", "((c_d12) *0 (c_d01))"),
        ]
    )


def acyclic_one_polygraphs() -> list[Polygraph]:
    """Ten small loop-free presentations of dimension <= 1."""
    specs = [
        [("A", 0)],
        [("A", 0), ("B", 0)],
        [("A", 0), ("B", 0), ("f", 1, "(c_A)", "(c_B)")],
        [("A", 0), ("B", 0), ("f", 1, "(c_A)", "(c_B)"), ("g", 1, "(c_A)", "(c_B)")],
        [
            ("A", 0),
            ("B", 0),
            ("C", 0),
            ("f", 1, "(c_A)", "(c_B)"),
            ("g", 1, "(c_B)", "(c_C)"),
        ],
        [
            ("A", 0),
            ("B", 0),
            ("C", 0),
            ("f", 1, "(c_A)", "(c_B)"),
            ("g", 1, "(c_B)", "(c_C)"),
            ("h", 1, "(c_A)", "(c_C)"),
        ],
        [
            ("A", 0),
            ("B", 0),
            ("C", 0),
            ("D", 0),
            ("f", 1, "(c_A)", "(c_B)"),
            ("g", 1, "(c_A)", "(c_C)"),
            ("h", 1, "(c_B)", "(c_D)"),
            ("i", 1, "(c_C)", "(c_D)"),
        ],
        [
            ("A", 0),
            ("B", 0),
            ("C", 0),
            ("f", 1, "(c_A)", "(c_B)"),
            ("g", 1, "(c_A)", "(c_B)"),
            ("h", 1, "(c_B)", "(c_C)"),
        ],
        [("A", 0), ("B", 0), ("C", 0), ("D", 0), ("f", 1, "(c_A)", "(c_B)")],
        [
            ("A", 0),
            ("B", 0),
            ("C", 0),
            ("D", 0),
            ("E", 0),
            ("f", 1, "(c_A)", "(c_C)"),
            ("g", 1, "(c_B)", "(c_C)"),
            ("h", 1, "(c_C)", "(c_D)"),
            ("i", 1, "(c_C)", "(c_E)"),
        ],
    ]
    return [make_polygraph(s) for s in specs]


def graph_homology(P: Polygraph) -> tuple[int, int]:
    """Betti numbers (components, independent cycles) of the 1-skeleton."""
    vertices = [g.name for g in P.gens(0)]
    edges = []
    for g in P.gens(1):
        s, t = P.attach(g)
        edges.append((s.gen.name, t.gen.name))
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for s, t in edges:
        parent[find(s)] = find(t)
    components = len({find(v) for v in vertices})
    cycles = len(edges) - len(vertices) + components
    return components, cycles
