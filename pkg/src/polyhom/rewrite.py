"""Elementary moves on cell words and budgeted equivalence search.

Two well-formed words denote the same cell of a free higher category
exactly when they are connected by a zigzag of five kinds of local
rewrites: associativity, left/right unit absorption, unit merging, and
the exchange of nested compositions.  This module enumerates those
moves, decides equivalence by bidirectional search (sound verdicts
PROVED/REFUTED, UNKNOWN on budget exhaustion), evaluates words in
finite models, and verifies candidate generating sets of finite
categories.

Dimension 0 and 1 are special: there equivalence is decided exactly
(terms of dimension <= 1 flatten to generator sequences), so boundary
comparisons of 2-dimensional terms are always conclusive.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence, Union

from .polygraph import Polygraph
from .terms import (
    CellTerm,
    Comp,
    Gen,
    GeneratorId,
    Id,
    TermError,
    print_word,
    replace_at,
    src,
    src_k,
    subterm_at,
    subterms,
    tgt,
    tgt_k,
)

__all__ = [
    "MoveKind",
    "Move",
    "Verdict",
    "Budget",
    "EqResult",
    "MoveGraph",
    "elementary_moves",
    "apply_move",
    "canonical_form",
    "equivalent",
    "explore",
    "rho",
    "CategoryModel",
    "TwoCategoryModel",
    "check_basis",
    "BasisReport",
]


class MoveKind(enum.Enum):
    ASSOC = "ASSOC"
    UNIT_L = "UNIT_L"
    UNIT_R = "UNIT_R"
    UNIT_FUNCT = "UNIT_FUNCT"
    EXCHANGE = "EXCHANGE"


@dataclass(frozen=True)
class Move:
    """One local rewrite: a kind, a tree position, and a direction.

    For the backward unit moves the extra index ``k`` records which
    composition level the inserted unit uses.
    """

    kind: MoveKind
    path: tuple[int, ...]
    forward: bool
    k: int = -1

    def record(self) -> tuple[str, tuple[int, ...], str]:
        return (self.kind.value, self.path, "fwd" if self.forward else "bwd")


class Verdict(enum.Enum):
    PROVED = "PROVED"
    REFUTED = "REFUTED"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Budget:
    nodes: int = 100_000
    extra_size: int = 8


@dataclass
class EqResult:
    verdict: Verdict
    moves: Optional[int] = None
    reason: str = ""

    def __bool__(self):
        return self.verdict is Verdict.PROVED


# ---------------------------------------------------------------------------
# Unit towers


def _strip_units(t: CellTerm) -> tuple[CellTerm, int]:
    """Peel Id wrappers; returns (base, height)."""
    h = 0
    while isinstance(t, Id):
        t = t.inner
        h += 1
    return t, h


def _is_unit_tower_over(P: Polygraph, t: CellTerm, base: CellTerm) -> bool:
    """Is t the iterated unit on a cell equal to ``base``?

    Uses canonical comparison of the wrapped cell, so the test is sound
    but may miss towers over exotic representatives.
    """
    if t.dim <= base.dim:
        return False
    inner = t
    for _ in range(t.dim - base.dim):
        if not isinstance(inner, Id):
            return False
        inner = inner.inner
    return canonical_form(P, inner) == canonical_form(P, base)


def _unit_tower(t: CellTerm, height: int) -> CellTerm:
    for _ in range(height):
        t = Id(t)
    return t


# ---------------------------------------------------------------------------
# Canonical form (hashing heuristic, not an equality decision)


def canonical_form(P: Polygraph, t: CellTerm) -> CellTerm:
    """Deterministic representative reachable from t by elementary moves.

    Units are absorbed and merged, exchange is oriented so the outer
    composition carries the smaller level, and compositions are
    left-associated.  Idempotent on all inputs seen in practice; only
    ever used as a dedup key, never as an equivalence oracle.
    """
    return canonical_trace(P, t)[0]


def canonical_trace(P: Polygraph, t: CellTerm) -> tuple[CellTerm, int]:
    """Canonical form together with the number of moves applied."""
    cache = getattr(P, "_canon_cache", None)
    if cache is None:
        cache = {}
        object.__setattr__(P, "_canon_cache", cache)
    hit = cache.get(t)
    if hit is not None:
        return hit
    steps = [0]
    prev = None
    cur = t
    for _ in range(8):
        if cur == prev:
            break
        prev = cur
        cur = _canon_pass(P, cur, steps)
    result = (cur, steps[0])
    if len(cache) < 200_000:
        cache[t] = result
        cache[cur] = (cur, 0)
    return result


def _canon_pass(P: Polygraph, t: CellTerm, steps: list[int]) -> CellTerm:
    t = _canon_units(P, t, steps)
    t = _canon_exchange(P, t, steps)
    t = _canon_assoc(t, steps)
    return t


def _canon_units(P: Polygraph, t: CellTerm, steps: list[int]) -> CellTerm:
    if isinstance(t, Gen):
        return t
    if isinstance(t, Id):
        return Id(_canon_units(P, t.inner, steps))
    assert isinstance(t, Comp)
    left = _canon_units(P, t.left, steps)
    right = _canon_units(P, t.right, steps)
    d = t.dim
    # unit merging (two units compose to the unit on the composite)
    if isinstance(left, Id) and isinstance(right, Id) and t.k < d - 1:
        steps[0] += 1
        return _canon_units(P, Id(Comp(t.k, left.inner, right.inner)), steps)
    # left unit absorption
    if isinstance(left, Id) and _is_unit_tower_over(P, left, tgt_k(P, right, t.k)):
        steps[0] += 1
        return right
    # right unit absorption
    if isinstance(right, Id) and _is_unit_tower_over(P, right, src_k(P, left, t.k)):
        steps[0] += 1
        return left
    return Comp(t.k, left, right)


def _canon_exchange(P: Polygraph, t: CellTerm, steps: list[int]) -> CellTerm:
    if isinstance(t, Gen):
        return t
    if isinstance(t, Id):
        return Id(_canon_exchange(P, t.inner, steps))
    assert isinstance(t, Comp)
    left = _canon_exchange(P, t.left, steps)
    right = _canon_exchange(P, t.right, steps)
    # reorient so the outer composition has the smaller level
    while (
        isinstance(left, Comp)
        and isinstance(right, Comp)
        and left.k == right.k
        and left.k < t.k
        and _cheap_parallel(P, t.k, left.left, right.left)
        and _cheap_parallel(P, t.k, left.right, right.right)
    ):
        steps[0] += 1
        l = left.k
        new_left = _canon_exchange(P, Comp(t.k, left.left, right.left), steps)
        new_right = _canon_exchange(P, Comp(t.k, left.right, right.right), steps)
        t = Comp(l, new_left, new_right)
        left, right = t.left, t.right
    return Comp(t.k, left, right)


def _cheap_parallel(P: Polygraph, k: int, u: CellTerm, v: CellTerm) -> bool:
    """src_k(u) vs tgt_k(v), by canonical comparison only."""
    return canonical_form(P, src_k(P, u, k)) == canonical_form(P, tgt_k(P, v, k))


def _canon_assoc(t: CellTerm, steps: list[int]) -> CellTerm:
    if isinstance(t, Gen):
        return t
    if isinstance(t, Id):
        return Id(_canon_assoc(t.inner, steps))
    assert isinstance(t, Comp)
    left = _canon_assoc(t.left, steps)
    right = _canon_assoc(t.right, steps)
    while isinstance(right, Comp) and right.k == t.k:
        steps[0] += 1
        left = Comp(t.k, left, right.left)
        right = right.right
    return Comp(t.k, left, right)


# ---------------------------------------------------------------------------
# Move enumeration


def elementary_moves(
    P: Polygraph, t: CellTerm, include_insertions: bool = True
) -> list[tuple[Move, CellTerm]]:
    """All applicable moves at every tree position, both directions.

    ``include_insertions=False`` drops the size-increasing backward
    unit moves, which is what breadth-first search uses near its size
    budget.  Every returned term is well formed and parallel to t.
    """
    out: list[tuple[Move, CellTerm]] = []
    for path, s in sorted(subterms(t), key=lambda ps: ps[0]):
        for move, s2 in _local_moves(P, s, include_insertions):
            move = Move(move.kind, path + move.path, move.forward, move.k)
            out.append((move, replace_at(t, path, s2)))
    return out


def _local_moves(
    P: Polygraph, s: CellTerm, include_insertions: bool
) -> list[tuple[Move, CellTerm]]:
    out: list[tuple[Move, CellTerm]] = []
    d = s.dim
    here = ()
    if isinstance(s, Comp):
        left, right, k = s.left, s.right, s.k
        # (1) associativity, both directions
        if isinstance(left, Comp) and left.k == k:
            out.append(
                (
                    Move(MoveKind.ASSOC, here, True),
                    Comp(k, left.left, Comp(k, left.right, right)),
                )
            )
        if isinstance(right, Comp) and right.k == k:
            out.append(
                (
                    Move(MoveKind.ASSOC, here, False),
                    Comp(k, Comp(k, left, right.left), right.right),
                )
            )
        # (2)/(3) unit absorption, forward
        if isinstance(left, Id) and _is_unit_tower_over(P, left, tgt_k(P, right, k)):
            out.append((Move(MoveKind.UNIT_L, here, True), right))
        if isinstance(right, Id) and _is_unit_tower_over(P, right, src_k(P, left, k)):
            out.append((Move(MoveKind.UNIT_R, here, True), left))
        # (4) unit merging, forward
        if isinstance(left, Id) and isinstance(right, Id) and k < d - 1:
            out.append(
                (
                    Move(MoveKind.UNIT_FUNCT, here, True),
                    Id(Comp(k, left.inner, right.inner)),
                )
            )
        # (5) exchange, forward: outer level below inner level
        if (
            isinstance(left, Comp)
            and isinstance(right, Comp)
            and left.k == right.k
            and k < left.k
        ):
            kk = left.k
            out.append(
                (
                    Move(MoveKind.EXCHANGE, here, True),
                    Comp(
                        kk,
                        Comp(k, left.left, right.left),
                        Comp(k, left.right, right.right),
                    ),
                )
            )
        # (5) exchange, backward: needs componentwise composability
        if (
            isinstance(left, Comp)
            and isinstance(right, Comp)
            and left.k == right.k
            and left.k < k
            and _cheap_parallel(P, k, left.left, right.left)
            and _cheap_parallel(P, k, left.right, right.right)
        ):
            l = left.k
            out.append(
                (
                    Move(MoveKind.EXCHANGE, here, False),
                    Comp(
                        l,
                        Comp(k, left.left, right.left),
                        Comp(k, left.right, right.right),
                    ),
                )
            )
    if isinstance(s, Id) and isinstance(s.inner, Comp) and s.inner.k < s.inner.dim:
        # (4) backward: split a unit on a composite
        inner = s.inner
        out.append(
            (
                Move(MoveKind.UNIT_FUNCT, here, False),
                Comp(inner.k, Id(inner.left), Id(inner.right)),
            )
        )
    # (2)/(3) backward: unit insertion at every level
    if include_insertions and d >= 1:
        for k in range(d):
            out.append(
                (
                    Move(MoveKind.UNIT_L, here, False, k),
                    Comp(k, _unit_tower(tgt_k(P, s, k), d - k), s),
                )
            )
            out.append(
                (
                    Move(MoveKind.UNIT_R, here, False, k),
                    Comp(k, s, _unit_tower(src_k(P, s, k), d - k)),
                )
            )
    return out


def apply_move(P: Polygraph, t: CellTerm, move: Move) -> CellTerm:
    for m, result in elementary_moves(P, t):
        if m == move:
            return result
    raise TermError(f"move {move} does not apply to {print_word(t)}")


# ---------------------------------------------------------------------------
# Exact decision in dimension <= 1


def _flatten1(t: CellTerm) -> tuple[GeneratorId, ...]:
    """Generator sequence of a term of dimension 1, diagram order."""
    if isinstance(t, Gen):
        return (t.gen,)
    if isinstance(t, Id):
        return ()
    assert isinstance(t, Comp)
    return _flatten1(t.right) + _flatten1(t.left)


def _decide_low_dim(P: Polygraph, u: CellTerm, v: CellTerm) -> EqResult:
    if u.dim == 0:
        same = u == v
        return EqResult(
            Verdict.PROVED if same else Verdict.REFUTED,
            moves=0 if same else None,
            reason="objects compare structurally",
        )
    su, sv = _flatten1(u), _flatten1(v)
    if su != sv:
        return EqResult(Verdict.REFUTED, reason="generator sequences differ")
    if not su and src_k(P, u, 0) != src_k(P, v, 0):
        return EqResult(Verdict.REFUTED, reason="unit cells on distinct objects")
    return EqResult(Verdict.PROVED, reason="equal generator sequences")


# ---------------------------------------------------------------------------
# Weight invariant (occurrence counts at the top layer)


def _gen_counts(t: CellTerm) -> dict[GeneratorId, int]:
    counts: dict[GeneratorId, int] = {}
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Gen):
            counts[s.gen] = counts.get(s.gen, 0) + 1
        elif isinstance(s, Comp):
            stack.append(s.left)
            stack.append(s.right)
        # Id nodes contribute nothing at the top layer
    return counts


# ---------------------------------------------------------------------------
# Equivalence search


def equivalent(
    P: Polygraph, u: CellTerm, v: CellTerm, budget: Optional[Budget] = None
) -> EqResult:
    """Decide whether u and v denote the same cell, within budget.

    PROVED and REFUTED are sound; UNKNOWN means the bidirectional
    search ran out of nodes or size headroom.  The reported move count
    is the length of the zigzag found (0 for structurally equal input).
    """
    if budget is None:
        budget = Budget()
    if u.dim != v.dim:
        return EqResult(Verdict.REFUTED, reason="dimension mismatch")
    if u == v:
        return EqResult(Verdict.PROVED, moves=0, reason="structural equality")
    if u.dim <= 1:
        return _decide_low_dim(P, u, v)
    if _gen_counts(u) != _gen_counts(v):
        return EqResult(Verdict.REFUTED, reason="weight vectors differ")
    for bnd in (src, tgt):
        sub = equivalent(P, bnd(P, u), bnd(P, v), budget)
        if sub.verdict is Verdict.REFUTED:
            return EqResult(Verdict.REFUTED, reason=f"boundaries differ ({sub.reason})")

    from .terms import size

    max_size = max(size(u), size(v)) + budget.extra_size

    # Bidirectional search on raw terms.  Each side records, per
    # canonical key, the cheapest known cost of a concrete move path
    # from its seed to the canonical representative; a key collision
    # across sides exhibits a full zigzag between u and v.
    sides: list[dict[CellTerm, int]] = [{u: 0}, {v: 0}]
    keys: list[dict[CellTerm, int]] = [{}, {}]
    for side, seed in enumerate((u, v)):
        key, norm = canonical_trace(P, seed)
        keys[side][key] = norm
    if keys[0].keys() & keys[1].keys():
        k = next(iter(keys[0].keys() & keys[1].keys()))
        return EqResult(
            Verdict.PROVED,
            moves=keys[0][k] + keys[1][k],
            reason="canonical forms agree",
        )
    frontiers: list[list[CellTerm]] = [[u], [v]]
    expanded = 0
    truncated = False
    while frontiers[0] or frontiers[1]:
        side = 0 if (frontiers[0] and len(sides[0]) <= len(sides[1])) else 1
        if not frontiers[side]:
            side = 1 - side
        frontier = frontiers[side]
        frontiers[side] = []
        for term in frontier:
            depth = sides[side][term]
            if expanded >= budget.nodes:
                truncated = True
                break
            expanded += 1
            headroom = size(term) < max_size
            if not headroom:
                truncated = True  # insertion moves were skipped
            for _, nxt in elementary_moves(P, term, include_insertions=headroom):
                if size(nxt) > max_size:
                    truncated = True
                    continue
                if nxt in sides[side]:
                    continue
                sides[side][nxt] = depth + 1
                frontiers[side].append(nxt)
                key, norm = canonical_trace(P, nxt)
                cost = depth + 1 + norm
                if key not in keys[side] or keys[side][key] > cost:
                    keys[side][key] = cost
                if key in keys[1 - side]:
                    return EqResult(
                        Verdict.PROVED,
                        moves=cost + keys[1 - side][key],
                        reason="move path found",
                    )
        if expanded >= budget.nodes:
            truncated = True
            break
    if not truncated:
        return EqResult(Verdict.REFUTED, reason="components fully explored")
    return EqResult(Verdict.UNKNOWN, reason="budget exhausted")


@dataclass
class MoveGraph:
    """Explored ball of the move graph around a start word."""

    vertices: list[CellTerm]
    edges: list[tuple[int, int, Move]]
    complete: bool  # True when no move was pruned by the budget


def explore(P: Polygraph, t: CellTerm, budget: Optional[Budget] = None) -> MoveGraph:
    from .terms import size

    if budget is None:
        budget = Budget(nodes=1000, extra_size=2)
    max_size = size(t) + budget.extra_size
    index = {t: 0}
    vertices = [t]
    edges: list[tuple[int, int, Move]] = []
    queue = [t]
    complete = True
    while queue:
        term = queue.pop(0)
        if len(vertices) > budget.nodes:
            complete = False
            break
        for move, nxt in elementary_moves(P, term, include_insertions=True):
            if size(nxt) > max_size:
                complete = False
                continue
            if nxt not in index:
                index[nxt] = len(vertices)
                vertices.append(nxt)
                queue.append(nxt)
            edges.append((index[term], index[nxt], move))
    return MoveGraph(vertices, edges, complete)


# ---------------------------------------------------------------------------
# Evaluation into models


class CategoryModel:
    """Interpret terms of dimension <= 1 in a finite category."""

    def __init__(self, cat, gen_images: dict[GeneratorId, object]):
        self.cat = cat
        self.gen_images = dict(gen_images)

    def gen(self, g: GeneratorId):
        return self.gen_images[g]

    def unit(self, cell, dim: int):
        if dim != 0:
            raise TermError("category model has no cells above dimension 1")
        return self.cat.identity[cell]

    def comp(self, k: int, a, b, dim: int):
        if dim != 1 or k != 0:
            raise TermError("category model composes only arrows at level 0")
        return self.cat.compose(a, b)


class TwoCategoryModel:
    """Interpret terms of dimension <= 2 in a finite 2-category."""

    def __init__(self, cat2, gen_images: dict[GeneratorId, object]):
        self.cat2 = cat2
        self.gen_images = dict(gen_images)

    def gen(self, g: GeneratorId):
        return self.gen_images[g]

    def unit(self, cell, dim: int):
        if dim == 0:
            return self.cat2.identity1[cell]
        if dim == 1:
            return self.cat2.unit2[cell]
        raise TermError("2-category model has no cells above dimension 2")

    def comp(self, k: int, a, b, dim: int):
        if dim == 1 and k == 0:
            return self.cat2.compose1(a, b)
        if dim == 2 and k == 0:
            return self.cat2.hcompose(a, b)
        if dim == 2 and k == 1:
            return self.cat2.vcompose(a, b)
        raise TermError(f"no level-{k} composition of {dim}-cells")


def rho(t: CellTerm, interp) -> object:
    """Evaluate a term in a model; invariant under elementary moves.

    ``interp`` provides ``gen(g)``, ``unit(cell, dim)`` and
    ``comp(k, a, b, dim)``.
    """
    if isinstance(t, Gen):
        return interp.gen(t.gen)
    if isinstance(t, Id):
        return interp.unit(rho(t.inner, interp), t.inner.dim)
    assert isinstance(t, Comp)
    return interp.comp(t.k, rho(t.left, interp), rho(t.right, interp), t.dim)


# ---------------------------------------------------------------------------
# Words over a finite model (for fibers and basis checking)


@dataclass(frozen=True, slots=True)
class MGen:
    cell: object


@dataclass(frozen=True, slots=True)
class MUnit:
    cell: object  # cell of the layer below the words


@dataclass(frozen=True, slots=True)
class MComp:
    k: int
    left: Union["MGen", "MUnit", "MComp"]
    right: Union["MGen", "MUnit", "MComp"]


MWord = Union[MGen, MUnit, MComp]


class _ModelOps:
    """Boundary and composition tables for words over a finite model.

    ``top`` is the dimension the words denote (1 for categories, 2 for
    2-categories); units wrap cells of dimension top-1.
    """

    def __init__(self, cat, top: int):
        self.cat = cat
        self.top = top

    def value(self, w: MWord):
        if isinstance(w, MGen):
            return w.cell
        if isinstance(w, MUnit):
            return self.unit(w.cell)
        return self.comp(w.k, self.value(w.left), self.value(w.right))

    # tables, by top dimension
    def unit(self, cell):
        if self.top == 1:
            return self.cat.identity[cell]
        return self.cat.unit2[cell]

    def comp(self, k, a, b):
        if self.top == 1:
            return self.cat.compose(a, b)
        return self.cat.hcompose(a, b) if k == 0 else self.cat.vcompose(a, b)

    def src_k(self, cell, k: int):
        """Iterated source of a top-cell down to dimension k."""
        c = cell
        for d in range(self.top, k, -1):
            c = self.cat.src(c) if (self.top == 1 or d == 1) else self.cat.src2(c)
        return c

    def tgt_k(self, cell, k: int):
        c = cell
        for d in range(self.top, k, -1):
            c = self.cat.tgt(c) if (self.top == 1 or d == 1) else self.cat.tgt2(c)
        return c

    def unit_tower(self, cell, k: int):
        """The top-1 dimensional iterated unit on a k-cell."""
        c = cell
        for d in range(k, self.top - 1):
            c = self.cat.identity[c] if d == 0 else self.cat.unit2[c]
        return c

    def composable(self, k: int, a, b) -> bool:
        return self.src_k(a, k) == self.tgt_k(b, k)


def _mword_size(w: MWord) -> int:
    if isinstance(w, MComp):
        return 1 + _mword_size(w.left) + _mword_size(w.right)
    return 0


def _mword_gens(w: MWord) -> tuple:
    if isinstance(w, MGen):
        return (w.cell,)
    if isinstance(w, MUnit):
        return ()
    return _mword_gens(w.left) + _mword_gens(w.right)


def _mword_moves(ops: _ModelOps, w: MWord, grow: bool) -> list[MWord]:
    """Neighbour words of w in the move graph over a finite model.

    All side conditions are exact table lookups here, so enumeration is
    complete for the explored sizes.
    """
    out: list[MWord] = []
    top = ops.top

    def local(s: MWord) -> list[MWord]:
        res: list[MWord] = []
        if isinstance(s, MComp):
            l, r, k = s.left, s.right, s.k
            if isinstance(l, MComp) and l.k == k:
                res.append(MComp(k, l.left, MComp(k, l.right, r)))
            if isinstance(r, MComp) and r.k == k:
                res.append(MComp(k, MComp(k, l, r.left), r.right))
            if isinstance(l, MUnit) and l.cell == ops.unit_tower(
                ops.tgt_k(ops.value(r), k), k
            ):
                res.append(r)
            if isinstance(r, MUnit) and r.cell == ops.unit_tower(
                ops.src_k(ops.value(l), k), k
            ):
                res.append(l)
            if isinstance(l, MUnit) and isinstance(r, MUnit) and k < top - 1:
                res.append(MUnit(ops.cat.compose1(l.cell, r.cell)))
            if (
                isinstance(l, MComp)
                and isinstance(r, MComp)
                and l.k == r.k
                and k < l.k
            ):
                res.append(
                    MComp(l.k, MComp(k, l.left, r.left), MComp(k, l.right, r.right))
                )
            if (
                isinstance(l, MComp)
                and isinstance(r, MComp)
                and l.k == r.k
                and l.k < k
                and ops.composable(k, ops.value(l.left), ops.value(r.left))
                and ops.composable(k, ops.value(l.right), ops.value(r.right))
            ):
                res.append(
                    MComp(l.k, MComp(k, l.left, r.left), MComp(k, l.right, r.right))
                )
        if isinstance(s, MUnit) and top == 2:
            # split a unit on a composite arrow, for every factorization
            for g, f in ops.cat.arrow_factorizations(s.cell):
                res.append(MComp(0, MUnit(g), MUnit(f)))
        if grow:
            for k in range(top):
                val = ops.value(s)
                res.append(MComp(k, MUnit(ops.unit_tower(ops.tgt_k(val, k), k)), s))
                res.append(MComp(k, s, MUnit(ops.unit_tower(ops.src_k(val, k), k))))
        return res

    def walk(s: MWord, rebuild: Callable[[MWord], MWord]):
        for s2 in local(s):
            out.append(rebuild(s2))
        if isinstance(s, MComp):
            walk(s.left, lambda x, s=s, rb=rebuild: rb(MComp(s.k, x, s.right)))
            walk(s.right, lambda x, s=s, rb=rebuild: rb(MComp(s.k, s.left, x)))

    walk(w, lambda x: x)
    return out


@dataclass
class BasisReport:
    verdict: Verdict
    details: dict
    witness: Optional[str] = None


def check_basis(C, sigma: Sequence, bound: int = 4) -> BasisReport:
    """Is ``sigma`` a generating set with freely generated top cells?

    For a finite category the answer is exact: every non-identity arrow
    must factor through sigma in exactly one way and no identity arrow
    may factor at all.  For a finite 2-category the check explores word
    fibers up to the size bound: surjectivity plus connectivity of each
    explored fiber yields PROVED, an occurrence-count separation yields
    REFUTED, otherwise UNKNOWN.
    """
    from .nerve import Finite2Category, FiniteCategory

    if isinstance(C, FiniteCategory):
        return _check_basis_category(C, sigma)
    if isinstance(C, Finite2Category):
        return _check_basis_2category(C, sigma, bound)
    raise TypeError(f"cannot check bases of {type(C).__name__}")


def _check_basis_category(C, sigma) -> BasisReport:
    sigma = list(sigma)
    identities = set(C.identity.values())
    # Number of generator sequences spelling each arrow, saturated at 2
    # ("two or more"): least fixpoint of
    #   count(a) = [a in sigma] + sum over a = b.g of count(b),
    # where g ranges over sigma and b over nonempty spellings.
    counts = {a: 0 for a in C.arrows}
    base = {a: 0 for a in C.arrows}
    for g in sigma:
        base[g] = min(2, base[g] + 1)
    for _ in range(2 * len(C.arrows) + 2):
        new_counts = dict(base)
        for g in sigma:
            for b in C.arrows:
                if C.src(b) != C.tgt(g):
                    continue
                a = C.compose(b, g)
                new_counts[a] = min(2, new_counts[a] + counts[b])
        if new_counts == counts:
            break
        counts = new_counts
    for a in C.arrows:
        if a in identities:
            if counts[a] > 0:
                return BasisReport(
                    Verdict.REFUTED,
                    {"counts": counts},
                    witness=f"identity arrow {a!r} factors through the candidate set",
                )
        elif counts[a] == 0:
            return BasisReport(
                Verdict.REFUTED,
                {"counts": counts},
                witness=f"arrow {a!r} is not a composite of the candidate set",
            )
        elif counts[a] > 1:
            return BasisReport(
                Verdict.REFUTED,
                {"counts": counts},
                witness=f"arrow {a!r} factors in more than one way",
            )
    return BasisReport(Verdict.PROVED, {"counts": counts})


def _check_basis_2category(C, sigma, bound: int) -> BasisReport:
    ops = _ModelOps(C, top=2)
    sigma = list(sigma)
    # enumerate words by size, bucketed by evaluated cell
    by_size: list[list[MWord]] = [[]]
    for g in sigma:
        by_size[0].append(MGen(g))
    for f in C.one_cells:
        by_size[0].append(MUnit(f))
    for s in range(1, bound + 1):
        layer: list[MWord] = []
        for s1 in range(s):
            s2 = s - 1 - s1
            for u in by_size[s1]:
                for v in by_size[s2]:
                    for k in (0, 1):
                        if ops.composable(k, ops.value(u), ops.value(v)):
                            layer.append(MComp(k, u, v))
        by_size.append(layer)
    fibers: dict[object, list[MWord]] = {c: [] for c in C.two_cells}
    for layer in by_size:
        for w in layer:
            fibers[ops.value(w)].append(w)
    # Exhaustive reachability: close the evaluated cells under both
    # compositions; cells outside the closure have empty fibers at all
    # sizes, not just below the bound.
    reachable = {ops.value(MGen(g)) for g in sigma}
    reachable |= {C.unit2[f] for f in C.one_cells}
    changed = True
    while changed:
        changed = False
        for a in list(reachable):
            for b in list(reachable):
                for k in (0, 1):
                    if ops.composable(k, a, b):
                        c = ops.comp(k, a, b)
                        if c not in reachable:
                            reachable.add(c)
                            changed = True
    unknown = False
    for cell, fiber in fibers.items():
        if not fiber:
            if cell not in reachable:
                return BasisReport(
                    Verdict.REFUTED,
                    {},
                    witness=f"2-cell {cell!r} unreachable from the candidate set",
                )
            unknown = True
            continue
        multisets = {tuple(sorted(map(repr, _mword_gens(w)))) for w in fiber}
        if len(multisets) > 1:
            return BasisReport(
                Verdict.REFUTED,
                {},
                witness=f"2-cell {cell!r} has spellings with different "
                "generator multisets",
            )
        if not _fiber_connected(ops, fiber, bound):
            unknown = True
    if unknown:
        return BasisReport(Verdict.UNKNOWN, {}, witness="fiber exploration inconclusive")
    return BasisReport(Verdict.PROVED, {})


def _fiber_connected(ops: _ModelOps, fiber: list[MWord], bound: int) -> bool:
    """Are all fiber words in one component of the explored move graph?"""
    targets = set(fiber)
    start = fiber[0]
    seen = {start}
    queue = [start]
    found = {start}
    limit = 20000
    while queue and len(seen) < limit:
        w = queue.pop(0)
        grow = _mword_size(w) < bound + 2
        for nxt in _mword_moves(ops, w, grow):
            if _mword_size(nxt) > bound + 2 or nxt in seen:
                continue
            seen.add(nxt)
            if nxt in targets:
                found.add(nxt)
                if found == targets:
                    return True
            queue.append(nxt)
    return found == targets
