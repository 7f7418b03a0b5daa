"""Finite categories, finite 2-categories, their nerves and homology.

Categories are given by total composition tables and validated
exhaustively on construction.  Nerves are stored as truncated
simplicial sets (all simplices up to a cutoff with face/degeneracy
tables); homology in degree k only needs the truncation at k+1, and
the API derives the cutoff from the requested degree.

The 2-categorical nerve follows the coherent-triangle description: an
m-simplex assigns objects to vertices, arrows to ordered pairs, and a
2-cell to each ordered triple (i,j,k) from the long edge to the
composite of the two short ones, subject to the cocycle condition on
every ordered 4-tuple.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .abelianize import ChainComplex, Matrix
from .homology import HomologyGroup, homology
from .polygraph import Polygraph
from .terms import Gen

__all__ = [
    "CategoryError",
    "FiniteCategory",
    "Finite2Category",
    "SimplicialTruncation",
    "delta_category",
    "monoid_category",
    "realize_free_category",
    "two_category_from_category",
    "suspension_2category",
    "nerve1",
    "nerve2",
    "normalized_chains",
    "singular_homology",
    "horizontal_slice",
    "vertical_slice",
    "binerve_level",
    "load_category",
    "dump_category",
    "load_2category",
    "dump_2category",
]


class CategoryError(ValueError):
    pass


class FiniteCategory:
    """A small category with explicitly tabulated composition.

    ``compose(g, f)`` is defined when ``src(g) == tgt(f)`` and means
    "g after f".  Axioms are verified exhaustively on construction.
    """

    def __init__(self, objects, arrows, src, tgt, identity, comp, check=True):
        self.objects = tuple(objects)
        self.arrows = tuple(arrows)
        self._src = dict(src)
        self._tgt = dict(tgt)
        self.identity = dict(identity)
        self._comp = dict(comp)
        self._ids = frozenset(self.identity.values())
        if check:
            self._validate()

    def src(self, a):
        return self._src[a]

    def tgt(self, a):
        return self._tgt[a]

    def compose(self, g, f):
        try:
            return self._comp[(g, f)]
        except KeyError:
            raise CategoryError(f"arrows {g!r} and {f!r} are not composable") from None

    def hom(self, x, y) -> list:
        return [a for a in self.arrows if self._src[a] == x and self._tgt[a] == y]

    def is_identity(self, a) -> bool:
        return a in self._ids

    def arrow_factorizations(self, a) -> list[tuple]:
        """All pairs (g, f) with g o f = a."""
        return [
            (g, f)
            for g in self.arrows
            for f in self.arrows
            if self._src[g] == self._tgt[f] and self._comp[(g, f)] == a
        ]

    def _validate(self):
        obj = set(self.objects)
        if len(self.objects) != len(obj):
            raise CategoryError("duplicate objects")
        if len(self.arrows) != len(set(self.arrows)):
            raise CategoryError("duplicate arrows")
        for a in self.arrows:
            if self._src.get(a) not in obj or self._tgt.get(a) not in obj:
                raise CategoryError(f"arrow {a!r} has bad endpoints")
        for x in self.objects:
            i = self.identity.get(x)
            if i not in set(self.arrows) or self._src[i] != x or self._tgt[i] != x:
                raise CategoryError(f"bad identity for object {x!r}")
        for g in self.arrows:
            for f in self.arrows:
                defined = (g, f) in self._comp
                composable = self._src[g] == self._tgt[f]
                if defined != composable:
                    raise CategoryError(
                        f"composition table wrong on pair ({g!r}, {f!r})"
                    )
                if defined:
                    h = self._comp[(g, f)]
                    if (
                        h not in set(self.arrows)
                        or self._src[h] != self._src[f]
                        or self._tgt[h] != self._tgt[g]
                    ):
                        raise CategoryError(f"composite of ({g!r}, {f!r}) ill typed")
        for a in self.arrows:
            if self._comp[(a, self.identity[self._src[a]])] != a:
                raise CategoryError(f"right unit fails at {a!r}")
            if self._comp[(self.identity[self._tgt[a]], a)] != a:
                raise CategoryError(f"left unit fails at {a!r}")
        for h in self.arrows:
            for g in self.arrows:
                if self._src[h] != self._tgt[g]:
                    continue
                for f in self.arrows:
                    if self._src[g] != self._tgt[f]:
                        continue
                    if self._comp[(self._comp[(h, g)], f)] != self._comp[
                        (h, self._comp[(g, f)])
                    ]:
                        raise CategoryError(
                            f"associativity fails at ({h!r}, {g!r}, {f!r})"
                        )

    def indecomposables(self) -> list:
        """Non-identity arrows with no nontrivial factorization."""
        out = []
        for a in self.arrows:
            if self.is_identity(a):
                continue
            if all(
                self.is_identity(g) or self.is_identity(f)
                for g, f in self.arrow_factorizations(a)
            ):
                out.append(a)
        return out

    def __repr__(self):
        return f"FiniteCategory({len(self.objects)} objects, {len(self.arrows)} arrows)"


class Finite2Category:
    """A small 2-category with total tables for both compositions.

    ``vcompose`` is composition of 2-cells along a common 1-cell
    boundary, ``hcompose`` along a common object.  All axioms including
    the exchange rule are verified exhaustively on construction.
    """

    def __init__(
        self,
        objects,
        one_cells,
        two_cells,
        src1,
        tgt1,
        identity1,
        comp1,
        src2,
        tgt2,
        unit2,
        vcomp,
        hcomp,
        check=True,
    ):
        self.objects = tuple(objects)
        self.one_cells = tuple(one_cells)
        self.two_cells = tuple(two_cells)
        self._src1 = dict(src1)
        self._tgt1 = dict(tgt1)
        self.identity1 = dict(identity1)
        self._comp1 = dict(comp1)
        self._src2 = dict(src2)
        self._tgt2 = dict(tgt2)
        self.unit2 = dict(unit2)
        self._vcomp = dict(vcomp)
        self._hcomp = dict(hcomp)
        if check:
            self._validate()

    # 1-dimensional layer
    def src(self, f):
        return self._src1[f]

    def tgt(self, f):
        return self._tgt1[f]

    def compose1(self, g, f):
        try:
            return self._comp1[(g, f)]
        except KeyError:
            raise CategoryError(f"1-cells {g!r} and {f!r} are not composable") from None

    def arrow_factorizations(self, a) -> list[tuple]:
        return [
            (g, f)
            for g in self.one_cells
            for f in self.one_cells
            if self._src1[g] == self._tgt1[f] and self._comp1[(g, f)] == a
        ]

    # 2-dimensional layer
    def src2(self, c):
        return self._src2[c]

    def tgt2(self, c):
        return self._tgt2[c]

    def src0(self, c):
        return self._src1[self._src2[c]]

    def tgt0(self, c):
        return self._tgt1[self._src2[c]]

    def vcompose(self, b, a):
        try:
            return self._vcomp[(b, a)]
        except KeyError:
            raise CategoryError(
                f"2-cells {b!r} and {a!r} are not vertically composable"
            ) from None

    def hcompose(self, b, a):
        try:
            return self._hcomp[(b, a)]
        except KeyError:
            raise CategoryError(
                f"2-cells {b!r} and {a!r} are not horizontally composable"
            ) from None

    def identity2(self, x):
        """The doubly iterated unit on an object."""
        return self.unit2[self.identity1[x]]

    def is_unit2(self, c) -> bool:
        return c in set(self.unit2.values())

    def hom_category(self, x, y) -> FiniteCategory:
        """Arrows x -> y and the 2-cells between them, vertically."""
        ones = [f for f in self.one_cells if self._src1[f] == x and self._tgt1[f] == y]
        twos = [c for c in self.two_cells if self._src2[c] in ones]
        comp = {
            (b, a): self._vcomp[(b, a)]
            for b in twos
            for a in twos
            if self._src2[b] == self._tgt2[a]
        }
        return FiniteCategory(
            ones,
            twos,
            {c: self._src2[c] for c in twos},
            {c: self._tgt2[c] for c in twos},
            {f: self.unit2[f] for f in ones},
            comp,
            check=False,
        )

    def underlying_category(self) -> FiniteCategory:
        return FiniteCategory(
            self.objects,
            self.one_cells,
            self._src1,
            self._tgt1,
            self.identity1,
            self._comp1,
            check=False,
        )

    def _validate(self):
        self.underlying_category()._validate()
        two_set = set(self.two_cells)
        for c in self.two_cells:
            f, g = self._src2.get(c), self._tgt2.get(c)
            if f not in set(self.one_cells) or g not in set(self.one_cells):
                raise CategoryError(f"2-cell {c!r} has bad 1-boundaries")
            if (
                self._src1[f] != self._src1[g]
                or self._tgt1[f] != self._tgt1[g]
            ):
                raise CategoryError(f"1-boundaries of {c!r} are not parallel")
        for f in self.one_cells:
            u = self.unit2.get(f)
            if u not in two_set or self._src2[u] != f or self._tgt2[u] != f:
                raise CategoryError(f"bad unit 2-cell on {f!r}")
        # vertical structure: each hom is a category
        for b in self.two_cells:
            for a in self.two_cells:
                defined = (b, a) in self._vcomp
                composable = self._src2[b] == self._tgt2[a]
                if defined != composable:
                    raise CategoryError(f"vertical table wrong on ({b!r}, {a!r})")
                if defined:
                    c = self._vcomp[(b, a)]
                    if (
                        c not in two_set
                        or self._src2[c] != self._src2[a]
                        or self._tgt2[c] != self._tgt2[b]
                    ):
                        raise CategoryError(f"vertical composite ({b!r}, {a!r}) ill typed")
        for a in self.two_cells:
            if self._vcomp[(a, self.unit2[self._src2[a]])] != a:
                raise CategoryError(f"vertical right unit fails at {a!r}")
            if self._vcomp[(self.unit2[self._tgt2[a]], a)] != a:
                raise CategoryError(f"vertical left unit fails at {a!r}")
        for c in self.two_cells:
            for b in self.two_cells:
                if self._src2[c] != self._tgt2[b]:
                    continue
                for a in self.two_cells:
                    if self._src2[b] != self._tgt2[a]:
                        continue
                    if self._vcomp[(self._vcomp[(c, b)], a)] != self._vcomp[
                        (c, self._vcomp[(b, a)])
                    ]:
                        raise CategoryError("vertical associativity fails")
        # horizontal structure
        for b in self.two_cells:
            for a in self.two_cells:
                defined = (b, a) in self._hcomp
                composable = self.src0(b) == self.tgt0(a)
                if defined != composable:
                    raise CategoryError(f"horizontal table wrong on ({b!r}, {a!r})")
                if defined:
                    c = self._hcomp[(b, a)]
                    want_src = self._comp1[(self._src2[b], self._src2[a])]
                    want_tgt = self._comp1[(self._tgt2[b], self._tgt2[a])]
                    if (
                        c not in two_set
                        or self._src2[c] != want_src
                        or self._tgt2[c] != want_tgt
                    ):
                        raise CategoryError(
                            f"horizontal composite ({b!r}, {a!r}) ill typed"
                        )
        for a in self.two_cells:
            if self._hcomp[(a, self.identity2(self.src0(a)))] != a:
                raise CategoryError(f"horizontal right unit fails at {a!r}")
            if self._hcomp[(self.identity2(self.tgt0(a)), a)] != a:
                raise CategoryError(f"horizontal left unit fails at {a!r}")
        for c in self.two_cells:
            for b in self.two_cells:
                if self.src0(c) != self.tgt0(b):
                    continue
                for a in self.two_cells:
                    if self.src0(b) != self.tgt0(a):
                        continue
                    if self._hcomp[(self._hcomp[(c, b)], a)] != self._hcomp[
                        (c, self._hcomp[(b, a)])
                    ]:
                        raise CategoryError("horizontal associativity fails")
        # units are functorial for horizontal composition
        for g in self.one_cells:
            for f in self.one_cells:
                if self._src1[g] != self._tgt1[f]:
                    continue
                if self._hcomp[(self.unit2[g], self.unit2[f])] != self.unit2[
                    self._comp1[(g, f)]
                ]:
                    raise CategoryError(f"unit functoriality fails at ({g!r}, {f!r})")
        # exchange rule
        for b2 in self.two_cells:
            for b1 in self.two_cells:
                if self._src2[b2] != self._tgt2[b1]:
                    continue
                for a2 in self.two_cells:
                    if self.src0(b2) != self.tgt0(a2):
                        continue
                    for a1 in self.two_cells:
                        if (
                            self._src2[a2] != self._tgt2[a1]
                            or self.src0(b1) != self.tgt0(a1)
                        ):
                            continue
                        lhs = self._hcomp[(self._vcomp[(b2, b1)], self._vcomp[(a2, a1)])]
                        rhs = self._vcomp[(self._hcomp[(b2, a2)], self._hcomp[(b1, a1)])]
                        if lhs != rhs:
                            raise CategoryError(
                                f"exchange fails at ({b2!r},{b1!r},{a2!r},{a1!r})"
                            )

    def __repr__(self):
        return (
            f"Finite2Category({len(self.objects)} objects, "
            f"{len(self.one_cells)} 1-cells, {len(self.two_cells)} 2-cells)"
        )


# ---------------------------------------------------------------------------
# Builders


def delta_category(n: int) -> FiniteCategory:
    """The linear order 0 <= ... <= n as a category."""
    objects = list(range(n + 1))
    arrows = [(i, j) for i in objects for j in objects if i <= j]
    comp = {}
    for (j2, k) in arrows:
        for (i, j) in arrows:
            if j == j2:
                comp[((j2, k), (i, j))] = (i, k)
    return FiniteCategory(
        objects,
        arrows,
        {a: a[0] for a in arrows},
        {a: a[1] for a in arrows},
        {i: (i, i) for i in objects},
        comp,
    )


def monoid_category(elements: Sequence, op, unit) -> FiniteCategory:
    """A monoid as a one-object category."""
    star = "*"
    arrows = list(elements)
    comp = {(g, f): op(g, f) for g in arrows for f in arrows}
    return FiniteCategory(
        [star],
        arrows,
        {a: star for a in arrows},
        {a: star for a in arrows},
        {star: unit},
        comp,
    )


def realize_free_category(P: Polygraph) -> FiniteCategory:
    """The path category of a polygraph of dimension <= 1.

    Arrows are composable chains of generating edges; requires the
    underlying graph to be acyclic so the category is finite.
    """
    if P.max_dim > 1:
        raise CategoryError("free realization requires dimension <= 1")
    objs = [g.name for g in P.gens(0)]
    edge_src: dict[str, str] = {}
    edge_tgt: dict[str, str] = {}
    for g in P.gens(1):
        s, t = P.attach(g)
        if not (isinstance(s, Gen) and isinstance(t, Gen)):
            raise CategoryError("1-dimensional attaching data must be objects")
        edge_src[g.name], edge_tgt[g.name] = s.gen.name, t.gen.name
    # cycle detection on the generator graph
    adjacency: dict[str, list[str]] = {o: [] for o in objs}
    for name in edge_src:
        adjacency[edge_src[name]].append(edge_tgt[name])
    state: dict[str, int] = {}

    def visit(x):
        state[x] = 1
        for y in adjacency[x]:
            if state.get(y) == 1:
                raise CategoryError("generator graph has a directed cycle")
            if y not in state:
                visit(y)
        state[x] = 2

    for o in objs:
        if o not in state:
            visit(o)
    # arrows = paths, stored as (start object, edge names in diagram order)
    arrows = [(o, ()) for o in objs]
    tgt = {(o, ()): o for o in objs}
    frontier = list(arrows)
    while frontier:
        nxt = []
        for p in frontier:
            for name in edge_src:
                if edge_src[name] == tgt[p]:
                    q = (p[0], p[1] + (name,))
                    tgt[q] = edge_tgt[name]
                    nxt.append(q)
        arrows.extend(nxt)
        frontier = nxt
    src = {p: p[0] for p in arrows}
    comp = {}
    for q in arrows:
        for p in arrows:
            if src[q] == tgt[p]:
                comp[(q, p)] = (p[0], p[1] + q[1])
    return FiniteCategory(
        objs, arrows, src, tgt, {o: (o, ()) for o in objs}, comp
    )


def two_category_from_category(C: FiniteCategory) -> Finite2Category:
    """View a category as a 2-category with only unit 2-cells."""
    twos = [("u", f) for f in C.arrows]
    unit2 = {f: ("u", f) for f in C.arrows}
    vcomp = {(("u", f), ("u", f)): ("u", f) for f in C.arrows}
    hcomp = {}
    for g in C.arrows:
        for f in C.arrows:
            if C.src(g) == C.tgt(f):
                hcomp[(("u", g), ("u", f))] = ("u", C.compose(g, f))
    return Finite2Category(
        C.objects,
        C.arrows,
        twos,
        C._src,
        C._tgt,
        C.identity,
        C._comp,
        {("u", f): f for f in C.arrows},
        {("u", f): f for f in C.arrows},
        unit2,
        vcomp,
        hcomp,
    )


def suspension_2category(elements: Sequence, op, unit) -> Finite2Category:
    """A commutative monoid as a one-object, one-arrow 2-category."""
    star, arrow = "*", "1*"
    for a in elements:
        for b in elements:
            if op(a, b) != op(b, a):
                raise CategoryError("doubly suspended monoids must be commutative")
    twos = list(elements)
    table = {(b, a): op(b, a) for b in twos for a in twos}
    return Finite2Category(
        [star],
        [arrow],
        twos,
        {arrow: star},
        {arrow: star},
        {star: arrow},
        {(arrow, arrow): arrow},
        {c: arrow for c in twos},
        {c: arrow for c in twos},
        {arrow: unit},
        table,
        dict(table),
    )


# ---------------------------------------------------------------------------
# Simplicial truncations


@dataclass
class SimplicialTruncation:
    """Simplices up to a cutoff with face/degeneracy tables.

    ``simplices[m]`` lists the m-simplices in a fixed order; ``faces``
    and ``degeneracies`` are keyed by (degree, slot).  A simplex is
    flagged degenerate when it equals a degeneracy of one of its faces.
    """

    cutoff: int
    simplices: list[list]
    faces: dict[tuple[int, int], dict]
    degeneracies: dict[tuple[int, int], dict]

    def face(self, m: int, i: int, x):
        return self.faces[(m, i)][x]

    def degeneracy(self, m: int, i: int, x):
        return self.degeneracies[(m, i)][x]

    def is_degenerate(self, m: int, x) -> bool:
        if m == 0:
            return False
        return any(
            self.degeneracy(m - 1, l, self.face(m, l, x)) == x for l in range(m)
        )

    def nondegenerate(self, m: int) -> list:
        if m > self.cutoff:
            return []
        return [x for x in self.simplices[m] if not self.is_degenerate(m, x)]

    def counts(self) -> list[int]:
        return [len(s) for s in self.simplices]

    def nondegenerate_counts(self) -> list[int]:
        return [len(self.nondegenerate(m)) for m in range(self.cutoff + 1)]

    def validate(self):
        """Simplicial identities on all stored degrees."""
        for m in range(2, self.cutoff + 1):
            for x in self.simplices[m]:
                for j in range(1, m + 1):
                    for i in range(j):
                        lhs = self.face(m - 1, j - 1, self.face(m, i, x))
                        rhs = self.face(m - 1, i, self.face(m, j, x))
                        if lhs != rhs:
                            raise CategoryError("face identity fails")
        for m in range(self.cutoff - 1):
            for x in self.simplices[m]:
                for j in range(m + 1):
                    for i in range(j + 1):
                        lhs = self.degeneracy(m + 1, j + 1, self.degeneracy(m, i, x))
                        rhs = self.degeneracy(m + 1, i, self.degeneracy(m, j, x))
                        if lhs != rhs:
                            raise CategoryError("degeneracy identity fails")
        for m in range(1, self.cutoff):
            for x in self.simplices[m]:
                for j in range(m + 1):
                    for i in range(m + 2):
                        y = self.degeneracy(m, j, x)
                        got = self.face(m + 1, i, y)
                        if i < j:
                            want = self.degeneracy(m - 1, j - 1, self.face(m, i, x))
                        elif i in (j, j + 1):
                            want = x
                        else:
                            want = self.degeneracy(m - 1, j, self.face(m, i - 1, x))
                        if got != want:
                            raise CategoryError("mixed simplicial identity fails")


def nerve1(C: FiniteCategory, cutoff: int) -> SimplicialTruncation:
    """Chains of composable arrows, with inner-face composition."""
    simplices: list[list] = [list(C.objects)]
    for m in range(1, cutoff + 1):
        layer = []
        for chain in simplices[m - 1]:
            if m == 1:
                outs = [(a,) for a in C.arrows if C.src(a) == chain]
            else:
                outs = [chain + (a,) for a in C.arrows if C.src(a) == C.tgt(chain[-1])]
            layer.extend(outs)
        simplices.append(layer)
    faces = {}
    degeneracies = {}
    for m in range(1, cutoff + 1):
        for i in range(m + 1):
            table = {}
            for x in simplices[m]:
                table[x] = _chain_face(C, x, i)
            faces[(m, i)] = table
    for m in range(cutoff):
        for i in range(m + 1):
            table = {}
            for x in simplices[m]:
                table[x] = _chain_degeneracy(C, x, i, m)
            degeneracies[(m, i)] = table
    return SimplicialTruncation(cutoff, simplices, faces, degeneracies)


def _chain_face(C: FiniteCategory, x, i: int):
    m = len(x) if isinstance(x, tuple) else 0
    if m == 1:
        return C.tgt(x[0]) if i == 0 else C.src(x[0])
    if i == 0:
        return x[1:]
    if i == m:
        return x[:-1]
    return x[: i - 1] + (C.compose(x[i], x[i - 1]),) + x[i + 1 :]


def _chain_degeneracy(C: FiniteCategory, x, i: int, m: int):
    if m == 0:
        return (C.identity[x],)
    if i == 0:
        return (C.identity[C.src(x[0])],) + x
    return x[:i] + (C.identity[C.tgt(x[i - 1])],) + x[i:]


# -- 2-categorical nerve ----------------------------------------------------


@functools.lru_cache(maxsize=None)
def _tri_key(m: int):
    return [
        (i, j, k)
        for i in range(m + 1)
        for j in range(i + 1, m + 1)
        for k in range(j + 1, m + 1)
    ]


@functools.lru_cache(maxsize=None)
def _pair_key(m: int):
    return [(i, j) for i in range(m + 1) for j in range(i + 1, m + 1)]


@functools.lru_cache(maxsize=None)
def _pair_index(m: int):
    return {p: i for i, p in enumerate(_pair_key(m))}


@functools.lru_cache(maxsize=None)
def _tri_index(m: int):
    return {t: i for i, t in enumerate(_tri_key(m))}


@dataclass(frozen=True)
class _Simplex2:
    """Duskin-style m-simplex: objects, arrows on pairs, 2-cells on triples."""

    objs: tuple
    ones: tuple  # aligned with _pair_key(m)
    twos: tuple  # aligned with _tri_key(m)

    def one(self, C, i, j):
        if i == j:
            return C.identity1[self.objs[i]]
        m = len(self.objs) - 1
        return self.ones[_pair_index(m)[(i, j)]]

    def two(self, C, i, j, k):
        if i == j or j == k:
            return C.unit2[self.one(C, i, k)]
        m = len(self.objs) - 1
        return self.twos[_tri_index(m)[(i, j, k)]]


def _reindex(C: Finite2Category, x: _Simplex2, phi: list[int]) -> _Simplex2:
    m2 = len(phi) - 1
    objs = tuple(x.objs[phi[i]] for i in range(m2 + 1))
    ones = tuple(x.one(C, phi[i], phi[j]) for (i, j) in _pair_key(m2))
    twos = tuple(x.two(C, phi[i], phi[j], phi[k]) for (i, j, k) in _tri_key(m2))
    return _Simplex2(objs, ones, twos)


def _cocycle_holds(C: Finite2Category, x: _Simplex2, quad) -> bool:
    i, j, k, l = quad
    lhs = C.vcompose(
        C.hcompose(C.unit2[x.one(C, k, l)], x.two(C, i, j, k)), x.two(C, i, k, l)
    )
    rhs = C.vcompose(
        C.hcompose(x.two(C, j, k, l), C.unit2[x.one(C, i, j)]), x.two(C, i, j, l)
    )
    return lhs == rhs


def nerve2(C: Finite2Category, cutoff: int) -> SimplicialTruncation:
    """Coherent-triangle nerve of a finite 2-category."""
    simplices: list[list] = []
    for m in range(cutoff + 1):
        simplices.append(_enumerate_simplices2(C, m))
    faces = {}
    degeneracies = {}
    for m in range(1, cutoff + 1):
        for i in range(m + 1):
            phi = [t for t in range(m + 1) if t != i]
            faces[(m, i)] = {x: _reindex(C, x, phi) for x in simplices[m]}
    for m in range(cutoff):
        for i in range(m + 1):
            phi = list(range(i + 1)) + list(range(i, m + 1))
            degeneracies[(m, i)] = {x: _reindex(C, x, phi) for x in simplices[m]}
    return SimplicialTruncation(cutoff, simplices, faces, degeneracies)


def _enumerate_simplices2(C: Finite2Category, m: int) -> list[_Simplex2]:
    out: list[_Simplex2] = []
    pairs = _pair_key(m)
    tris = _tri_key(m)
    tri_index = _tri_index(m)
    # quads become checkable once their latest triple has been chosen
    quads_ready: dict[int, list[tuple]] = {t: [] for t in range(len(tris))}
    for quad in itertools.combinations(range(m + 1), 4):
        i, j, k, l = quad
        members = [(j, k, l), (i, k, l), (i, j, l), (i, j, k)]
        latest = max(tri_index[t] for t in members)
        quads_ready[latest].append(quad)
    for objs in itertools.product(C.objects, repeat=m + 1):
        hom_choices = []
        for (i, j) in pairs:
            opts = [
                f
                for f in C.one_cells
                if C.src(f) == objs[i] and C.tgt(f) == objs[j]
            ]
            hom_choices.append(opts)
        for ones in itertools.product(*hom_choices):
            shape = _Simplex2(objs, ones, ())

            def fill(t_idx: int, chosen: tuple):
                if t_idx == len(tris):
                    out.append(_Simplex2(objs, ones, chosen))
                    return
                i, j, k = tris[t_idx]
                long_edge = shape.one(C, i, k)
                want_tgt = C.compose1(shape.one(C, j, k), shape.one(C, i, j))
                for c in C.two_cells:
                    if C.src2(c) != long_edge or C.tgt2(c) != want_tgt:
                        continue
                    cand = chosen + (c,)
                    pad = (None,) * (len(tris) - t_idx - 1)
                    x = _Simplex2(objs, ones, cand + pad)
                    if all(_cocycle_holds(C, x, q) for q in quads_ready[t_idx]):
                        fill(t_idx + 1, cand)

            if tris:
                fill(0, ())
            else:
                out.append(_Simplex2(objs, ones, ()))
    return out


# ---------------------------------------------------------------------------
# Chains and homology


def normalized_chains(X: SimplicialTruncation) -> ChainComplex:
    """Chain complex on nondegenerate simplices, degenerate faces to 0."""
    bases = [X.nondegenerate(m) for m in range(X.cutoff + 1)]
    index = [ {x: i for i, x in enumerate(layer)} for layer in bases ]
    ranks = [len(layer) for layer in bases]
    boundaries: list[Matrix] = [[]]
    for m in range(1, X.cutoff + 1):
        mat = [[0] * ranks[m] for _ in range(ranks[m - 1])]
        for j, x in enumerate(bases[m]):
            for i in range(m + 1):
                y = X.face(m, i, x)
                row = index[m - 1].get(y)
                if row is not None:
                    mat[row][j] += (-1) ** i
        boundaries.append(mat)
    return ChainComplex(ranks, boundaries)


def singular_homology(C, k: int) -> HomologyGroup:
    """Degree-k homology of the nerve, truncated at degree k+1.

    Homology in degree k only depends on chains in degrees k-1..k+1,
    so the truncation is always sufficient.
    """
    cutoff = k + 1
    if isinstance(C, FiniteCategory):
        X = nerve1(C, cutoff)
    elif isinstance(C, Finite2Category):
        X = nerve2(C, cutoff)
    else:
        raise TypeError(f"cannot take the nerve of {type(C).__name__}")
    return homology(normalized_chains(X), k)


# ---------------------------------------------------------------------------
# Bisimplicial levels


def horizontal_slice(C: Finite2Category, n: int) -> FiniteCategory:
    """Disjoint union of n-fold hom-category products over object tuples.

    For n = 0 this is the discrete category on the objects.
    """
    if n == 0:
        objs = [(x,) for x in C.objects]
        return FiniteCategory(
            objs,
            [("id", x) for (x,) in objs],
            {("id", x): (x,) for (x,) in objs},
            {("id", x): (x,) for (x,) in objs},
            {(x,): ("id", x) for (x,) in objs},
            {(("id", x), ("id", x)): ("id", x) for (x,) in objs},
            check=False,
        )
    objects = []
    arrows = []
    src = {}
    tgt = {}
    identity = {}
    comp = {}
    for xs in itertools.product(C.objects, repeat=n + 1):
        hom_lists = [
            [f for f in C.one_cells if C.src(f) == xs[i] and C.tgt(f) == xs[i + 1]]
            for i in range(n)
        ]
        for fs in itertools.product(*hom_lists):
            objects.append((xs, fs))
        cell_lists = [
            [c for c in C.two_cells if C.src0(c) == xs[i] and C.tgt0(c) == xs[i + 1]]
            for i in range(n)
        ]
        for cs in itertools.product(*cell_lists):
            a = (xs, cs)
            arrows.append(a)
            src[a] = (xs, tuple(C.src2(c) for c in cs))
            tgt[a] = (xs, tuple(C.tgt2(c) for c in cs))
    for (xs, fs) in objects:
        identity[(xs, fs)] = (xs, tuple(C.unit2[f] for f in fs))
    for b in arrows:
        for a in arrows:
            if src[b] == tgt[a]:
                xs = b[0]
                comp[(b, a)] = (
                    xs,
                    tuple(C.vcompose(b[1][i], a[1][i]) for i in range(n)),
                )
    return FiniteCategory(objects, arrows, src, tgt, identity, comp, check=False)


def vertical_slice(C: Finite2Category, k: int) -> FiniteCategory:
    """Length-k vertical chains of 2-cells, composed horizontally.

    For k = 0 this is the underlying category of C.
    """
    if k == 0:
        return C.underlying_category()
    objects = list(C.objects)
    arrows = []
    src = {}
    tgt = {}
    for chain in _vertical_chains(C, k):
        arrows.append(chain)
        src[chain] = C.src0(chain[0])
        tgt[chain] = C.tgt0(chain[0])
    identity = {
        x: tuple(C.identity2(x) for _ in range(k)) for x in objects
    }
    comp = {}
    for b in arrows:
        for a in arrows:
            if src[b] == tgt[a]:
                comp[(b, a)] = tuple(C.hcompose(b[i], a[i]) for i in range(k))
    return FiniteCategory(objects, arrows, src, tgt, identity, comp, check=False)


def _vertical_chains(C: Finite2Category, k: int) -> Iterable[tuple]:
    """Tuples (a_1, ..., a_k) with src2(a_i) == tgt2(a_{i+1})."""
    chains = [(c,) for c in C.two_cells]
    for _ in range(k - 1):
        chains = [
            ch + (c,) for ch in chains for c in C.two_cells
            if C.src2(ch[-1]) == C.tgt2(c)
        ]
    return chains


def binerve_level(C: Finite2Category, n: int, m: int) -> int:
    """Number of (n, m)-cells of the double nerve, via hom products."""
    S = horizontal_slice(C, n)
    return _count_chains(S, m)


def binerve_level_vertical(C: Finite2Category, n: int, m: int) -> int:
    """The same count computed through vertical chain categories."""
    V = vertical_slice(C, m)
    return _count_chains(V, n)


def _count_chains(C: FiniteCategory, m: int) -> int:
    """Number of length-m composable chains, by ending object."""
    if m == 0:
        return len(C.objects)
    ending = {x: 1 for x in C.objects}  # chains of length 0 ending at x
    for _ in range(m):
        nxt = {x: 0 for x in C.objects}
        for a in C.arrows:
            nxt[C.tgt(a)] += ending[C.src(a)]
        ending = nxt
    return sum(ending.values())


# ---------------------------------------------------------------------------
# File formats


def dump_category(C: FiniteCategory) -> str:
    lines = ["category"]
    lines.append("objects " + " ".join(str(x) for x in C.objects))
    for a in C.arrows:
        lines.append(f"arrow {a} : {C.src(a)} -> {C.tgt(a)}")
    for x in C.objects:
        lines.append(f"id {x} = {C.identity[x]}")
    for (g, f), h in C._comp.items():
        lines.append(f"comp {g} {f} = {h}")
    return "\n".join(lines) + "\n"


def load_category(text: str) -> FiniteCategory:
    objects: list = []
    arrows: list = []
    src: dict = {}
    tgt: dict = {}
    identity: dict = {}
    comp: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line or line == "category":
            continue
        try:
            head, rest = line.split(None, 1)
            if head == "objects":
                objects.extend(rest.split())
            elif head == "arrow":
                name, arr = rest.split(":", 1)
                s, t = arr.split("->", 1)
                a = name.strip()
                arrows.append(a)
                src[a] = s.strip()
                tgt[a] = t.strip()
            elif head == "id":
                x, a = rest.split("=", 1)
                identity[x.strip()] = a.strip()
            elif head == "comp":
                lhs, h = rest.split("=", 1)
                g, f = lhs.split()
                comp[(g, f)] = h.strip()
            else:
                raise CategoryError(f"unknown directive {head!r}")
        except ValueError as e:
            raise CategoryError(f"line {lineno}: {e}") from e
    return FiniteCategory(objects, arrows, src, tgt, identity, comp)


def dump_2category(C: Finite2Category) -> str:
    lines = ["2category"]
    lines.append("objects " + " ".join(str(x) for x in C.objects))
    for f in C.one_cells:
        lines.append(f"arrow {f} : {C.src(f)} -> {C.tgt(f)}")
    for x in C.objects:
        lines.append(f"id {x} = {C.identity1[x]}")
    for (g, f), h in C._comp1.items():
        lines.append(f"comp {g} {f} = {h}")
    for c in C.two_cells:
        lines.append(f"cell2 {c} : {C.src2(c)} => {C.tgt2(c)}")
    for f in C.one_cells:
        lines.append(f"unit {f} = {C.unit2[f]}")
    for (b, a), c in C._vcomp.items():
        lines.append(f"vcomp {b} {a} = {c}")
    for (b, a), c in C._hcomp.items():
        lines.append(f"hcomp {b} {a} = {c}")
    return "\n".join(lines) + "\n"


def load_2category(text: str) -> Finite2Category:
    objects: list = []
    one_cells: list = []
    two_cells: list = []
    src1: dict = {}
    tgt1: dict = {}
    identity1: dict = {}
    comp1: dict = {}
    src2: dict = {}
    tgt2: dict = {}
    unit2: dict = {}
    vcomp: dict = {}
    hcomp: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line or line == "2category":
            continue
        try:
            head, rest = line.split(None, 1)
            if head == "objects":
                objects.extend(rest.split())
            elif head == "arrow":
                name, arr = rest.split(":", 1)
                s, t = arr.split("->", 1)
                f = name.strip()
                one_cells.append(f)
                src1[f] = s.strip()
                tgt1[f] = t.strip()
            elif head == "id":
                x, a = rest.split("=", 1)
                identity1[x.strip()] = a.strip()
            elif head == "comp":
                lhs, h = rest.split("=", 1)
                g, f = lhs.split()
                comp1[(g, f)] = h.strip()
            elif head == "cell2":
                name, arr = rest.split(":", 1)
                s, t = arr.split("=>", 1)
                c = name.strip()
                two_cells.append(c)
                src2[c] = s.strip()
                tgt2[c] = t.strip()
            elif head == "unit":
                f, c = rest.split("=", 1)
                unit2[f.strip()] = c.strip()
            elif head == "vcomp":
                lhs, c = rest.split("=", 1)
                b, a = lhs.split()
                vcomp[(b, a)] = c.strip()
            elif head == "hcomp":
                lhs, c = rest.split("=", 1)
                b, a = lhs.split()
                hcomp[(b, a)] = c.strip()
            else:
                raise CategoryError(f"unknown directive {head!r}")
        except ValueError as e:
            raise CategoryError(f"line {lineno}: {e}") from e
    return Finite2Category(
        objects, one_cells, two_cells, src1, tgt1, identity1, comp1,
        src2, tgt2, unit2, vcomp, hcomp,
    )
