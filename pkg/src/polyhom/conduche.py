"""Unique-lifting checks for finite functors, pullbacks and slices.

A functor has the discrete lifting property when every composition or
unit factorization of an image cell lifts uniquely.  On fully
tabulated finite (2-)categories this is decidable by enumeration, and
the slice projections built here always satisfy it; combined with the
basis checker this transfers freeness along such functors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .nerve import CategoryError, Finite2Category, FiniteCategory
from .rewrite import BasisReport, Verdict, check_basis

__all__ = [
    "FiniteFunctor",
    "ConducheReport",
    "check_conduche",
    "pullback",
    "slice_category",
    "slice_functor",
    "slice_over",
    "slice_post",
    "colimit_classes",
    "indecomposable_two_cells",
    "basis_transfer",
    "TransferReport",
]

AnyCat = Union[FiniteCategory, Finite2Category]


@dataclass
class FiniteFunctor:
    """A tabulated functor between finite (2-)categories.

    ``on_two`` is empty for ordinary categories.  Structure
    preservation is verified exhaustively on construction.
    """

    source: AnyCat
    target: AnyCat
    on_obj: dict
    on_one: dict
    on_two: dict = field(default_factory=dict)
    check: bool = True

    def __post_init__(self):
        if self.check:
            self.validate()

    def obj(self, x):
        return self.on_obj[x]

    def one(self, f):
        return self.on_one[f]

    def two(self, c):
        return self.on_two[c]

    def is_two_level(self) -> bool:
        return isinstance(self.source, Finite2Category)

    def validate(self):
        S, T = self.source, self.target
        for x in S.objects:
            if self.on_obj.get(x) not in set(T.objects):
                raise CategoryError(f"no image for object {x!r}")
        one_cells = S.one_cells if isinstance(S, Finite2Category) else S.arrows
        t_ones = T.one_cells if isinstance(T, Finite2Category) else T.arrows
        t_id = T.identity1 if isinstance(T, Finite2Category) else T.identity
        s_id = S.identity1 if isinstance(S, Finite2Category) else S.identity
        for f in one_cells:
            g = self.on_one.get(f)
            if g not in set(t_ones):
                raise CategoryError(f"no image for arrow {f!r}")
            if T.src(g) != self.on_obj[S.src(f)] or T.tgt(g) != self.on_obj[S.tgt(f)]:
                raise CategoryError(f"image of {f!r} has wrong endpoints")
        for x in S.objects:
            if self.on_one[s_id[x]] != t_id[self.on_obj[x]]:
                raise CategoryError(f"identity on {x!r} not preserved")
        comp_s = (
            S._comp1 if isinstance(S, Finite2Category) else S._comp
        )
        compose_t = T.compose1 if isinstance(T, Finite2Category) else T.compose
        for (g, f), h in comp_s.items():
            if self.on_one[h] != compose_t(self.on_one[g], self.on_one[f]):
                raise CategoryError(f"composition ({g!r}, {f!r}) not preserved")
        if isinstance(S, Finite2Category) and isinstance(T, FiniteCategory):
            # collapsing functor into a category: parallel boundaries of
            # every 2-cell must map to equal arrows
            for c in S.two_cells:
                if self.on_one[S.src2(c)] != self.on_one[S.tgt2(c)]:
                    raise CategoryError(
                        f"2-cell {c!r} cannot collapse into the target category"
                    )
            return
        if isinstance(S, Finite2Category):
            for c in S.two_cells:
                d = self.on_two.get(c)
                if d not in set(T.two_cells):
                    raise CategoryError(f"no image for 2-cell {c!r}")
                if T.src2(d) != self.on_one[S.src2(c)] or T.tgt2(d) != self.on_one[
                    S.tgt2(c)
                ]:
                    raise CategoryError(f"image of {c!r} has wrong 1-boundaries")
            for f in S.one_cells:
                if self.on_two[S.unit2[f]] != T.unit2[self.on_one[f]]:
                    raise CategoryError(f"unit 2-cell on {f!r} not preserved")
            for (b, a), c in S._vcomp.items():
                if self.on_two[c] != T.vcompose(self.on_two[b], self.on_two[a]):
                    raise CategoryError("vertical composition not preserved")
            for (b, a), c in S._hcomp.items():
                if self.on_two[c] != T.hcompose(self.on_two[b], self.on_two[a]):
                    raise CategoryError("horizontal composition not preserved")


def identity_finite_functor(C: AnyCat) -> FiniteFunctor:
    if isinstance(C, Finite2Category):
        return FiniteFunctor(
            C,
            C,
            {x: x for x in C.objects},
            {f: f for f in C.one_cells},
            {c: c for c in C.two_cells},
        )
    return FiniteFunctor(
        C, C, {x: x for x in C.objects}, {f: f for f in C.arrows}
    )


@dataclass
class ConducheReport:
    ok: bool
    witness: Optional[str] = None

    def __bool__(self):
        return self.ok


def check_conduche(F: FiniteFunctor) -> ConducheReport:
    """Exhaustive unique-lifting check for compositions and units.

    Returns a witness describing the offending cell and factorization
    when a lift is missing or fails to be unique.
    """
    if isinstance(F.source, Finite2Category) != isinstance(
        F.target, Finite2Category
    ):
        raise CategoryError("unique-lifting check needs same-level endpoints")
    if F.is_two_level():
        rep = _check_lifts_2(F)
        if not rep.ok:
            return rep
    return _check_lifts_1(F)


def _arrow_api(C: AnyCat):
    if isinstance(C, Finite2Category):
        return C.one_cells, C.compose1, C.identity1, C._comp1
    return C.arrows, C.compose, C.identity, C._comp


def _check_lifts_1(F: FiniteFunctor) -> ConducheReport:
    s_arr, s_comp, s_id, s_table = _arrow_api(F.source)
    t_arr, t_comp, t_id, t_table = _arrow_api(F.target)
    for x in s_arr:
        fx = F.on_one[x]
        for (g, f), h in t_table.items():
            if h != fx:
                continue
            lifts = [
                (b, a)
                for (b, a), c in s_table.items()
                if c == x and F.on_one[b] == g and F.on_one[a] == f
            ]
            if len(lifts) != 1:
                return ConducheReport(
                    False,
                    witness=(
                        f"arrow {x!r}: image factorization ({g!r}, {f!r}) has "
                        f"{len(lifts)} lifts {lifts!r}"
                    ),
                )
        # unit factorization of the image
        for y, i in ((y, t_id[y]) for y in F.target.objects):
            if fx != i:
                continue
            lifts = [
                z for z in F.source.objects if s_id[z] == x and F.on_obj[z] == y
            ]
            if len(lifts) != 1:
                return ConducheReport(
                    False,
                    witness=(
                        f"arrow {x!r}: image is the identity of {y!r} with "
                        f"{len(lifts)} unit lifts {lifts!r}"
                    ),
                )
    return ConducheReport(True)


def _check_lifts_2(F: FiniteFunctor) -> ConducheReport:
    S: Finite2Category = F.source
    T: Finite2Category = F.target
    for x in S.two_cells:
        fx = F.on_two[x]
        for table, s_table, lbl in (
            (T._vcomp, S._vcomp, "vertical"),
            (T._hcomp, S._hcomp, "horizontal"),
        ):
            for (g, f), h in table.items():
                if h != fx:
                    continue
                lifts = [
                    (b, a)
                    for (b, a), c in s_table.items()
                    if c == x and F.on_two[b] == g and F.on_two[a] == f
                ]
                if len(lifts) != 1:
                    return ConducheReport(
                        False,
                        witness=(
                            f"2-cell {x!r}: {lbl} image factorization "
                            f"({g!r}, {f!r}) has {len(lifts)} lifts"
                        ),
                    )
        # unit factorizations: over a 1-cell, and over an object
        for f1 in T.one_cells:
            if fx != T.unit2[f1]:
                continue
            lifts = [
                z for z in S.one_cells if S.unit2[z] == x and F.on_one[z] == f1
            ]
            if len(lifts) != 1:
                return ConducheReport(
                    False,
                    witness=(
                        f"2-cell {x!r}: image is a unit over {f1!r} with "
                        f"{len(lifts)} lifts"
                    ),
                )
        for y in T.objects:
            if fx != T.identity2(y):
                continue
            lifts = [
                z
                for z in S.objects
                if S.identity2(z) == x and F.on_obj[z] == y
            ]
            if len(lifts) != 1:
                return ConducheReport(
                    False,
                    witness=(
                        f"2-cell {x!r}: image is the double unit on {y!r} "
                        f"with {len(lifts)} lifts"
                    ),
                )
    return ConducheReport(True)


# ---------------------------------------------------------------------------
# Pullbacks


def pullback(F: FiniteFunctor, G: FiniteFunctor):
    """Fibred product of F and G over their common target.

    Returns (P, pF, pG) where pF and pG are the projections onto the
    sources of F and G.  Cells are matching pairs with componentwise
    structure.
    """
    if F.target is not G.target and F.target != G.target:
        raise CategoryError("pullback requires a common target")
    if isinstance(F.source, Finite2Category) != isinstance(G.source, Finite2Category):
        raise CategoryError("pullback endpoints must have the same level")
    if isinstance(F.source, Finite2Category):
        return _pullback2(F, G)
    A, B = F.source, G.source
    objects = [(x, y) for x in A.objects for y in B.objects if F.on_obj[x] == G.on_obj[y]]
    arrows = [
        (f, g) for f in A.arrows for g in B.arrows if F.on_one[f] == G.on_one[g]
    ]
    src = {(f, g): (A.src(f), B.src(g)) for (f, g) in arrows}
    tgt = {(f, g): (A.tgt(f), B.tgt(g)) for (f, g) in arrows}
    identity = {(x, y): (A.identity[x], B.identity[y]) for (x, y) in objects}
    comp = {}
    for q in arrows:
        for p in arrows:
            if src[q] == tgt[p]:
                comp[(q, p)] = (A.compose(q[0], p[0]), B.compose(q[1], p[1]))
    P = FiniteCategory(objects, arrows, src, tgt, identity, comp)
    pF = FiniteFunctor(P, A, {o: o[0] for o in objects}, {a: a[0] for a in arrows})
    pG = FiniteFunctor(P, B, {o: o[1] for o in objects}, {a: a[1] for a in arrows})
    return P, pF, pG


def _pullback2(F: FiniteFunctor, G: FiniteFunctor):
    A: Finite2Category = F.source
    B: Finite2Category = G.source
    objects = [
        (x, y) for x in A.objects for y in B.objects if F.on_obj[x] == G.on_obj[y]
    ]
    ones = [
        (f, g)
        for f in A.one_cells
        for g in B.one_cells
        if F.on_one[f] == G.on_one[g]
    ]
    twos = [
        (c, d)
        for c in A.two_cells
        for d in B.two_cells
        if F.on_two[c] == G.on_two[d]
    ]
    src1 = {(f, g): (A.src(f), B.src(g)) for (f, g) in ones}
    tgt1 = {(f, g): (A.tgt(f), B.tgt(g)) for (f, g) in ones}
    identity1 = {(x, y): (A.identity1[x], B.identity1[y]) for (x, y) in objects}
    comp1 = {}
    for q in ones:
        for p in ones:
            if src1[q] == tgt1[p]:
                comp1[(q, p)] = (A.compose1(q[0], p[0]), B.compose1(q[1], p[1]))
    src2 = {(c, d): (A.src2(c), B.src2(d)) for (c, d) in twos}
    tgt2 = {(c, d): (A.tgt2(c), B.tgt2(d)) for (c, d) in twos}
    unit2 = {(f, g): (A.unit2[f], B.unit2[g]) for (f, g) in ones}
    vcomp = {}
    hcomp = {}
    for q in twos:
        for p in twos:
            if src2[q] == tgt2[p]:
                vcomp[(q, p)] = (A.vcompose(q[0], p[0]), B.vcompose(q[1], p[1]))
            if (
                A.src0(q[0]) == A.tgt0(p[0])
                and B.src0(q[1]) == B.tgt0(p[1])
            ):
                hcomp[(q, p)] = (A.hcompose(q[0], p[0]), B.hcompose(q[1], p[1]))
    P = Finite2Category(
        objects, ones, twos, src1, tgt1, identity1, comp1, src2, tgt2, unit2,
        vcomp, hcomp,
    )
    pF = FiniteFunctor(
        P,
        A,
        {o: o[0] for o in objects},
        {f: f[0] for f in ones},
        {c: c[0] for c in twos},
    )
    pG = FiniteFunctor(
        P,
        B,
        {o: o[1] for o in objects},
        {f: f[1] for f in ones},
        {c: c[1] for c in twos},
    )
    return P, pF, pG


# ---------------------------------------------------------------------------
# Slices


def slice_category(A: FiniteCategory, a) -> tuple[FiniteCategory, FiniteFunctor]:
    """The category of arrows into a, with its forgetful projection.

    Objects are pairs (a', p : a' -> a); an arrow (q, p) has target
    (a', p) and source (a'', p o q).
    """
    if a not in set(A.objects):
        raise CategoryError(f"{a!r} is not an object")
    objects = [(x, p) for x in A.objects for p in A.arrows if A.src(p) == x and A.tgt(p) == a]
    arrows = []
    src = {}
    tgt = {}
    for (x, p) in objects:
        for q in A.arrows:
            if A.tgt(q) != x:
                continue
            arr = (q, p)
            arrows.append(arr)
            tgt[arr] = (x, p)
            src[arr] = (A.src(q), A.compose(p, q))
    identity = {(x, p): (A.identity[x], p) for (x, p) in objects}
    comp = {}
    for (q2, p2) in arrows:
        for (q1, p1) in arrows:
            if src[(q2, p2)] == tgt[(q1, p1)]:
                comp[((q2, p2), (q1, p1))] = (A.compose(q2, q1), p2)
    S = FiniteCategory(objects, arrows, src, tgt, identity, comp)
    proj = FiniteFunctor(
        S, A, {o: o[0] for o in objects}, {arr: arr[0] for arr in arrows}
    )
    return S, proj


def slice_functor(A: FiniteCategory, beta) -> FiniteFunctor:
    """Post-composition functor between slices along an arrow beta."""
    a, a2 = A.src(beta), A.tgt(beta)
    Sa, _ = slice_category(A, a)
    Sa2, _ = slice_category(A, a2)
    on_obj = {(x, p): (x, A.compose(beta, p)) for (x, p) in Sa.objects}
    on_one = {(q, p): (q, A.compose(beta, p)) for (q, p) in Sa.arrows}
    return FiniteFunctor(Sa, Sa2, on_obj, on_one)


def slice_over(
    f: FiniteFunctor, a
) -> tuple[Finite2Category, FiniteFunctor]:
    """Slice of a finite 2-category over an object of a 1-category.

    ``f`` maps a finite 2-category X to an ordinary category A (given
    as a FiniteFunctor whose source is 2-level with only its 1-level
    data used on the target side).  An n-cell is a pair (x, p) with p
    an arrow from the image of the 0-target of x into a.  Returns the
    slice with its projection to X.
    """
    X = f.source
    A = f.target
    if not isinstance(X, Finite2Category) or not isinstance(A, FiniteCategory):
        raise CategoryError("slice_over expects a 2-category over a 1-category")
    arrows_into = [p for p in A.arrows if A.tgt(p) == a]
    objects = [
        (x, p) for x in X.objects for p in arrows_into if A.src(p) == f.on_obj[x]
    ]
    ones = [
        (u, p)
        for u in X.one_cells
        for p in arrows_into
        if A.src(p) == f.on_obj[X.tgt(u)]
    ]
    twos = [
        (c, p)
        for c in X.two_cells
        for p in arrows_into
        if A.src(p) == f.on_obj[X.tgt0(c)]
    ]
    src1 = {(u, p): (X.src(u), A.compose(p, f.on_one[u])) for (u, p) in ones}
    tgt1 = {(u, p): (X.tgt(u), p) for (u, p) in ones}
    identity1 = {(x, p): (X.identity1[x], p) for (x, p) in objects}
    comp1 = {}
    for q in ones:
        for p in ones:
            if src1[q] == tgt1[p]:
                comp1[(q, p)] = (X.compose1(q[0], p[0]), q[1])
    src2 = {(c, p): (X.src2(c), p) for (c, p) in twos}
    tgt2 = {(c, p): (X.tgt2(c), p) for (c, p) in twos}
    unit2 = {(u, p): (X.unit2[u], p) for (u, p) in ones}
    vcomp = {}
    hcomp = {}
    for q in twos:
        for p in twos:
            if src2[q] == tgt2[p]:
                vcomp[(q, p)] = (X.vcompose(q[0], p[0]), q[1])
            if X.src0(q[0]) == X.tgt0(p[0]) and p[1] == A.compose(
                q[1], f.on_one[X.src2(q[0])]
            ):
                hcomp[(q, p)] = (X.hcompose(q[0], p[0]), q[1])
    S = Finite2Category(
        objects, ones, twos, src1, tgt1, identity1, comp1, src2, tgt2, unit2,
        vcomp, hcomp,
    )
    proj = FiniteFunctor(
        S,
        X,
        {o: o[0] for o in objects},
        {u: u[0] for u in ones},
        {c: c[0] for c in twos},
    )
    return S, proj


def slice_post(f: FiniteFunctor, beta) -> FiniteFunctor:
    """Post-composition between 2-categorical slices along beta."""
    A = f.target
    a, a2 = A.src(beta), A.tgt(beta)
    Sa, _ = slice_over(f, a)
    Sa2, _ = slice_over(f, a2)
    post = lambda p: A.compose(beta, p)
    return FiniteFunctor(
        Sa,
        Sa2,
        {(x, p): (x, post(p)) for (x, p) in Sa.objects},
        {(u, p): (u, post(p)) for (u, p) in Sa.one_cells},
        {(c, p): (c, post(p)) for (c, p) in Sa.two_cells},
    )


def colimit_classes(f: FiniteFunctor) -> dict:
    """Glue all slices of f along post-composition and map back.

    Returns a dict sending each equivalence class (frozenset of slice
    cells tagged by dimension) to the cell of the source it recovers;
    the gluing is a bijection exactly when the slices assemble back to
    the source, which this function verifies.
    """
    X = f.source
    A = f.target
    cells: list[tuple] = []  # (dim, base object a, cell of X/a)
    for a in A.objects:
        S, _ = slice_over(f, a)
        for x in S.objects:
            cells.append((0, a, x))
        for u in S.one_cells:
            cells.append((1, a, u))
        for c in S.two_cells:
            cells.append((2, a, c))
    parent = {c: c for c in cells}

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    def union(c, d):
        parent[find(c)] = find(d)

    for beta in A.arrows:
        post = slice_post(f, beta)
        a = A.src(beta)
        a2 = A.tgt(beta)
        for x in post.source.objects:
            union((0, a, x), (0, a2, post.on_obj[x]))
        for u in post.source.one_cells:
            union((1, a, u), (1, a2, post.on_one[u]))
        for c in post.source.two_cells:
            union((2, a, c), (2, a2, post.on_two[c]))
    classes: dict = {}
    for c in cells:
        classes.setdefault(find(c), []).append(c)
    result = {}
    for rep, members in classes.items():
        images = {m[2][0] for m in members}
        if len(images) != 1:
            raise CategoryError("slice gluing identified distinct cells")
        result[rep] = images.pop()
    # bijectivity with the source cell sets
    source_cells = (
        len(X.objects) + len(X.one_cells) + len(X.two_cells)
    )
    if len(result) != source_cells or len(set(result.values())) != source_cells:
        raise CategoryError("slice gluing does not recover the source")
    return result


# ---------------------------------------------------------------------------
# Indecomposables and basis transfer


def indecomposable_arrows(C: FiniteCategory) -> list:
    return C.indecomposables()


def indecomposable_two_cells(C: Finite2Category) -> list:
    """Non-unit 2-cells all of whose factorizations are whiskerings."""
    out = []
    units = set(C.unit2.values())
    for x in C.two_cells:
        if x in units:
            continue
        trivial = True
        for table in (C._vcomp, C._hcomp):
            for (b, a), c in table.items():
                if c == x and b not in units and a not in units:
                    trivial = False
        if trivial:
            out.append(x)
    return out


@dataclass
class TransferReport:
    conduche: ConducheReport
    source_basis: Optional[BasisReport]
    target_basis: Optional[BasisReport]
    indecomposables_match: Optional[bool]

    @property
    def verdict(self) -> Verdict:
        if not self.conduche.ok:
            return Verdict.REFUTED
        parts = [self.source_basis.verdict, self.target_basis.verdict]
        if Verdict.REFUTED in parts or self.indecomposables_match is False:
            return Verdict.REFUTED
        if Verdict.UNKNOWN in parts or self.indecomposables_match is None:
            return Verdict.UNKNOWN
        return Verdict.PROVED


def basis_transfer(F: FiniteFunctor, sigma_target, bound: int = 4) -> TransferReport:
    """Pull a generating set back along a unique-lifting functor.

    Verifies that F has unique lifts, that sigma generates the target
    freely, that its preimage generates the source freely, and that
    indecomposable cells correspond under F.
    """
    rep = check_conduche(F)
    if not rep.ok:
        return TransferReport(rep, None, None, None)
    sigma_target = list(sigma_target)
    if F.is_two_level():
        sigma_source = [c for c in F.source.two_cells if F.on_two[c] in set(sigma_target)]
        ind_s = set(indecomposable_two_cells(F.source))
        ind_t = set(indecomposable_two_cells(F.target))
        mapped = {F.on_two[c] for c in ind_s}
        preimage_ind = {c for c in F.source.two_cells if F.on_two[c] in ind_t}
    else:
        sigma_source = [b for b in F.source.arrows if F.on_one[b] in set(sigma_target)]
        ind_s = set(F.source.indecomposables())
        ind_t = set(F.target.indecomposables())
        mapped = {F.on_one[b] for b in ind_s}
        preimage_ind = {b for b in F.source.arrows if F.on_one[b] in ind_t}
    match = mapped <= ind_t and preimage_ind == ind_s
    src_rep = check_basis(F.source, sigma_source, bound)
    tgt_rep = check_basis(F.target, sigma_target, bound)
    return TransferReport(rep, src_rep, tgt_rep, match)
