"""Occurrence counts of generators and the abelianized chain complex.

Every cell of a free higher category has a well-defined number of
occurrences of each generator, invariant under elementary moves and
additive under composition.  Collecting the counts per dimension turns
a polygraph into a chain complex of free abelian groups: the boundary
of a generator is the count vector of its target minus that of its
source.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .polygraph import PolyFunctor, Polygraph, apply_functor
from .terms import CellTerm, Comp, Gen, GeneratorId, Id, TermError

__all__ = [
    "Matrix",
    "ChainComplex",
    "weight",
    "weight_vector",
    "abelianize",
    "abelianize_functor",
    "dump_complex",
    "load_complex",
]

Matrix = list[list[int]]


def weight(alpha: GeneratorId, t: CellTerm) -> int:
    """Occurrences of the generator alpha in the top layer of t."""
    if alpha.dim != t.dim:
        raise TermError(
            f"weight of {alpha!r} in a term of dimension {t.dim} is undefined"
        )
    if isinstance(t, Gen):
        return 1 if t.gen == alpha else 0
    if isinstance(t, Id):
        return 0
    assert isinstance(t, Comp)
    return weight(alpha, t.left) + weight(alpha, t.right)


def weight_vector(P: Polygraph, t: CellTerm) -> dict[GeneratorId, int]:
    """Counts of every dimension-matching generator of P in t."""
    coords = {g: 0 for g in P.gens(t.dim)}
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Gen):
            if s.gen not in coords:
                raise TermError(f"term uses {s.gen!r} outside the polygraph")
            coords[s.gen] += 1
        elif isinstance(s, Comp):
            stack.append(s.left)
            stack.append(s.right)
    return coords


@dataclass
class ChainComplex:
    """Bounded complex of free abelian groups with integer boundaries.

    ``boundaries[n]`` is the matrix of the degree-n boundary map
    (rank_{n-1} rows by rank_n columns); ``boundaries[0]`` is the empty
    matrix.  The composite of consecutive boundaries must vanish.
    """

    ranks: list[int]
    boundaries: list[Matrix]

    def __post_init__(self):
        if len(self.boundaries) != len(self.ranks):
            raise ValueError("one boundary matrix per degree expected")
        for n, mat in enumerate(self.boundaries):
            rows = self.ranks[n - 1] if n >= 1 else 0
            cols = self.ranks[n]
            if len(mat) != rows or any(len(r) != cols for r in mat):
                raise ValueError(f"boundary {n} is not {rows}x{cols}")
        for n in range(1, len(self.ranks) - 1):
            if not _is_zero(_mat_mul(self.boundaries[n], self.boundaries[n + 1])):
                raise ValueError(f"boundary composite at degree {n + 1} is nonzero")

    @property
    def max_deg(self) -> int:
        return len(self.ranks) - 1

    def rank(self, n: int) -> int:
        return self.ranks[n] if 0 <= n <= self.max_deg else 0

    def boundary(self, n: int) -> Matrix:
        """Matrix of the boundary from degree n, zero-sized outside range."""
        if 1 <= n <= self.max_deg:
            return self.boundaries[n]
        return [[] for _ in range(self.rank(n - 1))]

    def permuted(self, perms: Sequence[Sequence[int]]) -> "ChainComplex":
        """Same complex with each degree's basis permuted."""
        bnds: list[Matrix] = [[]]
        for n in range(1, len(self.ranks)):
            rowp = perms[n - 1]
            colp = perms[n]
            mat = self.boundaries[n]
            bnds.append([[mat[i][j] for j in colp] for i in rowp])
        if len(self.ranks) == 0:
            bnds = []
        return ChainComplex(list(self.ranks), bnds)


def _is_zero(mat: Matrix) -> bool:
    return all(x == 0 for row in mat for x in row)


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return [[0] * (len(b[0]) if b else 0) for _ in a]
    n, m, p = len(a), len(b), len(b[0])
    return [
        [sum(a[i][k] * b[k][j] for k in range(m)) for j in range(p)] for i in range(n)
    ]


def abelianize(P: Polygraph) -> ChainComplex:
    """Chain complex of the polygraph: one basis element per generator.

    The boundary of a generator is the occurrence vector of its target
    attaching term minus that of its source.  Column order follows the
    declaration order of generators.
    """
    n_dims = P.max_dim + 1
    if n_dims <= 0:
        return ChainComplex([], [])
    ranks = [len(P.gens(d)) for d in range(n_dims)]
    boundaries: list[Matrix] = [[]]
    for d in range(1, n_dims):
        lower = list(P.gens(d - 1))
        mat = [[0] * ranks[d] for _ in lower]
        for j, g in enumerate(P.gens(d)):
            s, t = P.attach(g)
            wv_s = weight_vector(P, s)
            wv_t = weight_vector(P, t)
            for i, h in enumerate(lower):
                mat[i][j] = wv_t[h] - wv_s[h]
        boundaries.append(mat)
    return ChainComplex(ranks, boundaries)


def abelianize_functor(F: PolyFunctor) -> list[Matrix]:
    """Chain map induced by a functor between polygraphs.

    The degree-n matrix sends a source generator to the occurrence
    vector of its image; the result commutes with the boundaries.
    """
    degs = max(F.source.max_dim, F.target.max_dim) + 1
    mats: list[Matrix] = []
    for d in range(degs):
        rows = list(F.target.gens(d))
        cols = list(F.source.gens(d))
        mat = [[0] * len(cols) for _ in rows]
        for j, g in enumerate(cols):
            wv = weight_vector(F.target, apply_functor(F, Gen(g)))
            for i, h in enumerate(rows):
                mat[i][j] = wv[h]
        mats.append(mat)
    _check_chain_map(F, mats)
    return mats


def _check_chain_map(F: PolyFunctor, mats: list[Matrix]):
    CS = abelianize(F.source)
    CT = abelianize(F.target)
    for n in range(1, len(mats)):
        lhs = _mat_mul(mats[n - 1], _pad(CS.boundary(n), CS.rank(n - 1), CS.rank(n)))
        rhs = _mat_mul(_pad(CT.boundary(n), CT.rank(n - 1), CT.rank(n)), mats[n])
        if lhs != rhs:
            raise ValueError(f"induced map fails to commute with boundary {n}")


def _pad(mat: Matrix, rows: int, cols: int) -> Matrix:
    out = [[0] * cols for _ in range(rows)]
    for i, row in enumerate(mat):
        for j, x in enumerate(row):
            out[i][j] = x
    return out


def dump_complex(C: ChainComplex) -> str:
    lines = []
    for n, r in enumerate(C.ranks):
        lines.append(f"deg {n} rank {r}")
        if n >= 1:
            for row in C.boundaries[n]:
                lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def load_complex(text: str) -> ChainComplex:
    ranks: list[int] = []
    boundaries: list[Matrix] = []
    current: Matrix = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("deg "):
            parts = line.split()
            if ranks:
                boundaries.append(current)
            ranks.append(int(parts[3]))
            current = []
        else:
            current.append([int(x) for x in line.split()])
    if ranks:
        boundaries.append(current)
    if boundaries:
        boundaries[0] = []
    return ChainComplex(ranks, boundaries)
