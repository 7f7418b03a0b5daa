"""Integer Smith normal form and homology of bounded chain complexes.

All arithmetic is exact (Python integers); no modular or floating
shortcuts are taken anywhere, so torsion coefficients are reliable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abelianize import ChainComplex, Matrix

__all__ = [
    "SNFResult",
    "HomologyGroup",
    "smith_normal_form",
    "homology",
    "homology_groups",
    "complexes_iso_homology",
    "format_group",
    "mat_mul",
    "identity_matrix",
]


def identity_matrix(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return [[0] * (len(b[0]) if b else 0) for _ in a]
    n, m, p = len(a), len(b), len(b[0])
    return [
        [sum(a[i][k] * b[k][j] for k in range(m)) for j in range(p)] for i in range(n)
    ]


@dataclass
class SNFResult:
    """U * A * V = D with U, V unimodular and D diagonal.

    The diagonal entries are nonnegative and each divides the next.
    """

    U: Matrix
    D: Matrix
    V: Matrix

    @property
    def diagonal(self) -> list[int]:
        n = min(len(self.D), len(self.D[0]) if self.D else 0)
        return [self.D[i][i] for i in range(n)]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    def invariant_factors(self) -> list[int]:
        return [d for d in self.diagonal if d > 1]


class _Worksheet:
    """Mutable (U, D, V) triple under mirrored row/column operations."""

    def __init__(self, A: Matrix):
        self.rows = len(A)
        self.cols = len(A[0]) if self.rows else 0
        self.D = [list(row) for row in A]
        self.U = identity_matrix(self.rows)
        self.V = identity_matrix(self.cols)

    def row_swap(self, i, j):
        self.D[i], self.D[j] = self.D[j], self.D[i]
        self.U[i], self.U[j] = self.U[j], self.U[i]

    def col_swap(self, i, j):
        for r in self.D:
            r[i], r[j] = r[j], r[i]
        for r in self.V:
            r[i], r[j] = r[j], r[i]

    def row_add(self, i, j, q):  # row_i += q * row_j
        self.D[i] = [a + q * b for a, b in zip(self.D[i], self.D[j])]
        self.U[i] = [a + q * b for a, b in zip(self.U[i], self.U[j])]

    def col_add(self, i, j, q):  # col_i += q * col_j
        for r in self.D:
            r[i] += q * r[j]
        for r in self.V:
            r[i] += q * r[j]

    def row_negate(self, i):
        self.D[i] = [-a for a in self.D[i]]
        self.U[i] = [-a for a in self.U[i]]

    def pivot(self, s):
        """Smallest nonzero absolute value in the trailing block."""
        best = None
        for i in range(s, self.rows):
            for j in range(s, self.cols):
                x = self.D[i][j]
                if x != 0 and (best is None or abs(x) < abs(self.D[best[0]][best[1]])):
                    best = (i, j)
        return best

    def clear_at(self, s) -> bool:
        """Make D diagonal at position s; False when the block is zero."""
        D = self.D
        pos = self.pivot(s)
        if pos is None:
            return False
        if pos[0] != s:
            self.row_swap(s, pos[0])
        if pos[1] != s:
            self.col_swap(s, pos[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(s + 1, self.rows):
                if D[i][s] != 0:
                    self.row_add(i, s, -(D[i][s] // D[s][s]))
                    if D[i][s] != 0:  # remainder becomes the new pivot
                        self.row_swap(s, i)
                        dirty = True
            for j in range(s + 1, self.cols):
                if D[s][j] != 0:
                    self.col_add(j, s, -(D[s][j] // D[s][s]))
                    if D[s][j] != 0:
                        self.col_swap(s, j)
                        dirty = True
        if D[s][s] < 0:
            self.row_negate(s)
        return True


def smith_normal_form(A: Matrix) -> SNFResult:
    """Diagonalize an integer matrix by unimodular row/column operations.

    Pivoting picks the smallest nonzero absolute value in the remaining
    block (ties broken by lowest row, then column index), which keeps
    entry growth moderate and makes the result deterministic.
    """
    w = _Worksheet(A)
    rank = 0
    for s in range(min(w.rows, w.cols)):
        if not w.clear_at(s):
            break
        rank += 1
    # Enforce the divisibility chain: folding column j into column i
    # replaces d_i by gcd(d_i, d_j) and d_j by the lcm.  Row and column
    # operations between i and j stay inside the 2x2 block because the
    # matrix is diagonal, so the rest of D is untouched.
    done = False
    while not done:
        done = True
        for i in range(rank - 1):
            if w.D[i + 1][i + 1] % w.D[i][i] != 0:
                _fix_pair(w, i, i + 1)
                done = False
                break
    return SNFResult(w.U, w.D, w.V)


def _fix_pair(w: _Worksheet, i: int, j: int):
    D = w.D
    while D[j][j] % D[i][i] != 0:
        w.col_add(i, j, 1)  # block becomes [[d_i, 0], [d_j, d_j]]
        dirty = True
        while dirty:
            dirty = False
            if D[j][i] != 0:
                w.row_add(j, i, -(D[j][i] // D[i][i]))
                if D[j][i] != 0:
                    w.row_swap(i, j)
                    dirty = True
            if D[i][j] != 0:
                w.col_add(j, i, -(D[i][j] // D[i][i]))
                if D[i][j] != 0:
                    w.col_swap(i, j)
                    dirty = True
        if D[i][i] < 0:
            w.row_negate(i)
        if D[j][j] < 0:
            w.row_negate(j)


@dataclass(frozen=True)
class HomologyGroup:
    """Free rank plus invariant-factor torsion, d_1 | d_2 | ..."""

    betti: int
    torsion: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError("torsion coefficients must form a divisibility chain")

    def is_trivial(self) -> bool:
        return self.betti == 0 and not self.torsion


def homology(C: ChainComplex, k: int) -> HomologyGroup:
    """k-th homology group of the complex."""
    if not 0 <= k <= C.max_deg:
        raise ValueError(f"degree {k} out of range 0..{C.max_deg}")
    d_k = smith_normal_form(_pad(C.boundary(k), C.rank(k - 1), C.rank(k)))
    d_k1 = smith_normal_form(_pad(C.boundary(k + 1), C.rank(k), C.rank(k + 1)))
    betti = C.rank(k) - d_k.rank - d_k1.rank
    torsion = tuple(d_k1.invariant_factors())
    return HomologyGroup(betti, torsion)


def homology_groups(C: ChainComplex, up_to: int | None = None) -> list[HomologyGroup]:
    if up_to is None:
        up_to = C.max_deg
    return [
        homology(C, k) if k <= C.max_deg else HomologyGroup(0)
        for k in range(up_to + 1)
    ]


def complexes_iso_homology(C1: ChainComplex, C2: ChainComplex, up_to: int) -> bool:
    """Degreewise equality of homology groups up to the given degree."""
    for k in range(up_to + 1):
        h1 = homology(C1, k) if k <= C1.max_deg else HomologyGroup(0)
        h2 = homology(C2, k) if k <= C2.max_deg else HomologyGroup(0)
        if h1 != h2:
            return False
    return True


def _pad(mat: Matrix, rows: int, cols: int) -> Matrix:
    out = [[0] * cols for _ in range(rows)]
    for i, row in enumerate(mat):
        for j, x in enumerate(row):
            out[i][j] = x
    return out


def format_group(H: HomologyGroup) -> str:
    """Render as in ``Z``, ``Z^2``, ``Z + Z/2``, or ``0``."""
    parts = []
    if H.betti == 1:
        parts.append("Z")
    elif H.betti > 1:
        parts.append(f"Z^{H.betti}")
    parts.extend(f"Z/{d}" for d in H.torsion)
    return " + ".join(parts) if parts else "0"
