"""Named example presentations and the bubble detector.

The builders return validated polygraphs; expected homology columns of
the two-dimensional examples are recorded alongside so that golden
tests and the CLI can cross-check computations against them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

from .homology import HomologyGroup
from .nerve import Finite2Category
from .polygraph import Polygraph, PolygraphError, make_polygraph, skeleton
from .rewrite import Verdict
from .terms import Comp, Gen, GeneratorId, Id, print_word

__all__ = [
    "globe",
    "sphere",
    "suspension_monoid",
    "a_family",
    "ZooEntry",
    "zoo_2cats",
    "zoo_entry",
    "BubbleReport",
    "bubble_free",
]


def globe(n: int) -> Polygraph:
    """One top generator, two parallel generators in each lower dimension."""
    if n < 0:
        raise PolygraphError("globe dimension must be nonnegative")
    entries = []
    for d in range(n):
        for name in (f"s{d}", f"t{d}"):
            if d == 0:
                entries.append((name, 0))
            else:
                entries.append((name, d, f"(c_s{d-1})", f"(c_t{d-1})"))
    if n == 0:
        entries.append(("e0", 0))
    else:
        entries.append((f"e{n}", n, f"(c_s{n-1})", f"(c_t{n-1})"))
    return make_polygraph(entries)


def sphere(n: int) -> Polygraph:
    """Two parallel generators in every dimension up to n; empty for n = -1."""
    if n < -1:
        raise PolygraphError("sphere dimension must be at least -1")
    if n == -1:
        return make_polygraph([])
    return skeleton(globe(n + 1), n)


def suspension_monoid(n: int, generators: Sequence[str], commutative: bool = True) -> Polygraph:
    """Free (commutative) monoid generators placed in dimension n.

    One object, nothing in dimensions strictly between 0 and n, and the
    given generator names in dimension n.  For n > 1 the exchange rule
    forces commutativity, so ``commutative`` must be set.
    """
    if n < 1:
        raise PolygraphError("suspension height must be at least 1")
    if n > 1 and not commutative:
        raise PolygraphError(
            "a doubly suspended monoid must be commutative (exchange rule)"
        )
    entries: list[tuple] = [("o", 0)]
    unit_word = "(c_o)"
    for _ in range(n - 1):
        unit_word = f"(i_{unit_word})"
    for name in generators:
        entries.append((name, n, unit_word, unit_word))
    return make_polygraph(entries, max_dim=n)


def _chain_word(names: Sequence[str], obj: str) -> str:
    """Left-iterated composite of a list of arrows, or a unit word."""
    if not names:
        return f"(i_(c_{obj}))"
    word = f"(c_{names[0]})"
    for name in names[1:]:
        word = f"((c_{name}) *0 {word})"
    return word


def a_family(m: int, n: int) -> Polygraph:
    """One 2-generator from a length-m chain to a length-n chain.

    For m = 0 or n = 0 the corresponding side is a unit, which forces
    the two endpoints to coincide and the nonempty side to close into a
    loop; (0,0) is the one-object presentation with a single 2-cell on
    the unit.
    """
    if m < 0 or n < 0:
        raise PolygraphError("chain lengths must be nonnegative")
    entries: list[tuple] = []
    if m == 0 and n == 0:
        entries.append(("A0", 0))
        entries.append(("alpha", 2, "(i_(c_A0))", "(i_(c_A0))"))
        return make_polygraph(entries)
    loop = m == 0 or n == 0
    a_objects = [f"A{i}" for i in range(m)] if loop else [f"A{i}" for i in range(m + 1)]
    if n == 0:
        # f-side is a loop based at A0
        for name in a_objects:
            entries.append((name, 0))
        fs = []
        for i in range(1, m + 1):
            s = f"A{i-1}"
            t = f"A{i}" if i < m else "A0"
            fs.append(f"f{i}")
            entries.append((f"f{i}", 1, f"(c_{s})", f"(c_{t})"))
        entries.append(("alpha", 2, _chain_word(fs, "A0"), "(i_(c_A0))"))
        return make_polygraph(entries)
    if m == 0:
        for i in range(n):
            entries.append((f"B{i}" if i else "A0", 0))
        gs = []
        for j in range(1, n + 1):
            s = "A0" if j == 1 else f"B{j-1}"
            t = f"B{j}" if j < n else "A0"
            gs.append(f"g{j}")
            entries.append((f"g{j}", 1, f"(c_{s})", f"(c_{t})"))
        entries.append(("alpha", 2, "(i_(c_A0))", _chain_word(gs, "A0")))
        return make_polygraph(entries)
    # both sides nonempty: chain of objects A0..Am with B-side through B1..B{n-1}
    for name in a_objects:
        entries.append((name, 0))
    for j in range(1, n):
        entries.append((f"B{j}", 0))
    fs = []
    for i in range(1, m + 1):
        fs.append(f"f{i}")
        entries.append((f"f{i}", 1, f"(c_A{i-1})", f"(c_A{i})"))
    gs = []
    for j in range(1, n + 1):
        s = "A0" if j == 1 else f"B{j-1}"
        t = f"A{m}" if j == n else f"B{j}"
        gs.append(f"g{j}")
        entries.append((f"g{j}", 1, f"(c_{s})", f"(c_{t})"))
    entries.append(("alpha", 2, _chain_word(fs, "A0"), _chain_word(gs, "A0")))
    return make_polygraph(entries)


# ---------------------------------------------------------------------------
# The two-dimensional menagerie


@dataclass
class ZooEntry:
    name: str
    description: str
    builder: Callable[[], Polygraph]
    expected_pol_homology: list[HomologyGroup]
    expected_homotopy_type: str
    expected_good: str  # "yes" / "no" / "conjectural"
    bubble_free: bool
    in_table: bool = False

    def build(self) -> Polygraph:
        return self.builder()


def _p(entries):
    return lambda: make_polygraph(entries, max_dim=2)


_Z = HomologyGroup


def zoo_2cats() -> list[ZooEntry]:
    """All two-dimensional examples with their expected columns."""
    entries = []
    entries.append(
        ZooEntry(
            "s2",
            "two objects, two parallel arrows, two parallel 2-cells",
            lambda: sphere(2),
            [_Z(1), _Z(0), _Z(1)],
            "S^2",
            "yes",
            bubble_free=True,
            in_table=True,
        )
    )
    entries.append(
        ZooEntry(
            "opposed-cells",
            "two parallel arrows with 2-cells in opposite directions",
            _p(
                [
                    ("A", 0),
                    ("B", 0),
                    ("f", 1, "(c_A)", "(c_B)"),
                    ("g", 1, "(c_A)", "(c_B)"),
                    ("alpha", 2, "(c_f)", "(c_g)"),
                    ("beta", 2, "(c_g)", "(c_f)"),
                ]
            ),
            [_Z(1), _Z(0), _Z(1)],
            "S^2",
            "yes",
            bubble_free=True,
            in_table=True,
        )
    )
    entries.append(
        ZooEntry(
            "endo-cell",
            "one arrow with an endo-2-cell",
            _p(
                [
                    ("A", 0),
                    ("B", 0),
                    ("h", 1, "(c_A)", "(c_B)"),
                    ("gamma", 2, "(c_h)", "(c_h)"),
                ]
            ),
            [_Z(1), _Z(0), _Z(1)],
            "S^2",
            "yes",
            bubble_free=True,
            in_table=True,
        )
    )
    entries.append(
        ZooEntry(
            "two-collapses",
            "a loop with two 2-cells onto the unit",
            _p(
                [
                    ("A", 0),
                    ("l", 1, "(c_A)", "(c_A)"),
                    ("lam", 2, "(c_l)", "(i_(c_A))"),
                    ("mu", 2, "(c_l)", "(i_(c_A))"),
                ]
            ),
            [_Z(1), _Z(0), _Z(1)],
            "S^2",
            "yes",
            bubble_free=True,
            in_table=True,
        )
    )
    entries.append(
        ZooEntry(
            "collapse-expand",
            "a loop with 2-cells onto and out of the unit",
            _p(
                [
                    ("A", 0),
                    ("f", 1, "(c_A)", "(c_A)"),
                    ("alpha", 2, "(c_f)", "(i_(c_A))"),
                    ("beta", 2, "(i_(c_A))", "(c_f)"),
                ]
            ),
            [_Z(1), _Z(0), _Z(1)],
            "K(Z,2)",
            "no",
            bubble_free=False,
            in_table=True,
        )
    )
    entries.append(
        ZooEntry(
            "b2n",
            "single 2-cell on the unit of a point",
            lambda: a_family(0, 0),
            [_Z(1), _Z(0), _Z(1)],
            "K(Z,2)",
            "no",
            bubble_free=False,
            in_table=True,
        )
    )
    entries.append(
        ZooEntry(
            "bouquet-hybrid",
            "two loops with two parallel 2-cells between them",
            _p(
                [
                    ("A", 0),
                    ("f", 1, "(c_A)", "(c_A)"),
                    ("g", 1, "(c_A)", "(c_A)"),
                    ("alpha", 2, "(c_f)", "(c_g)"),
                    ("beta", 2, "(c_f)", "(c_g)"),
                ]
            ),
            [_Z(1), _Z(1), _Z(1)],
            "S^1 v S^2",
            "yes",
            bubble_free=True,
        )
    )
    entries.append(
        ZooEntry(
            "bouquet-triple",
            "two parallel arrows with three parallel 2-cells",
            _p(
                [
                    ("A", 0),
                    ("B", 0),
                    ("f", 1, "(c_A)", "(c_B)"),
                    ("g", 1, "(c_A)", "(c_B)"),
                    ("alpha", 2, "(c_f)", "(c_g)"),
                    ("beta", 2, "(c_f)", "(c_g)"),
                    ("gamma", 2, "(c_f)", "(c_g)"),
                ]
            ),
            [_Z(1), _Z(0), _Z(2)],
            "S^2 v S^2",
            "yes",
            bubble_free=True,
        )
    )
    entries.append(
        ZooEntry(
            "bouquet-stacked",
            "three parallel arrows with 2-cells in two stories",
            _p(
                [
                    ("A", 0),
                    ("B", 0),
                    ("f", 1, "(c_A)", "(c_B)"),
                    ("g", 1, "(c_A)", "(c_B)"),
                    ("h", 1, "(c_A)", "(c_B)"),
                    ("alpha", 2, "(c_f)", "(c_g)"),
                    ("beta", 2, "(c_f)", "(c_g)"),
                    ("gamma", 2, "(c_g)", "(c_h)"),
                    ("delta", 2, "(c_g)", "(c_h)"),
                ]
            ),
            [_Z(1), _Z(0), _Z(2)],
            "S^2 v S^2",
            "yes",
            bubble_free=True,
        )
    )
    entries.append(
        ZooEntry(
            "bouquet-composable",
            "two composable sphere shapes",
            _p(
                [
                    ("A", 0),
                    ("B", 0),
                    ("C", 0),
                    ("f", 1, "(c_A)", "(c_B)"),
                    ("g", 1, "(c_A)", "(c_B)"),
                    ("h", 1, "(c_B)", "(c_C)"),
                    ("i", 1, "(c_B)", "(c_C)"),
                    ("alpha", 2, "(c_f)", "(c_g)"),
                    ("beta", 2, "(c_f)", "(c_g)"),
                    ("gamma", 2, "(c_h)", "(c_i)"),
                    ("delta", 2, "(c_h)", "(c_i)"),
                ]
            ),
            [_Z(1), _Z(0), _Z(2)],
            "S^2 v S^2",
            "yes",
            bubble_free=True,
        )
    )
    entries.append(
        ZooEntry(
            "torus",
            "two commuting loops up to a 2-cell",
            _p(
                [
                    ("A", 0),
                    ("f", 1, "(c_A)", "(c_A)"),
                    ("g", 1, "(c_A)", "(c_A)"),
                    ("alpha", 2, "((c_g) *0 (c_f))", "((c_f) *0 (c_g))"),
                ]
            ),
            [_Z(1), _Z(2), _Z(1)],
            "S^1 x S^1",
            "yes",
            bubble_free=True,
        )
    )
    return entries


def zoo_entry(name: str) -> ZooEntry:
    for entry in zoo_2cats():
        if entry.name == name:
            return entry
    raise KeyError(f"no zoo entry named {name!r}")


# ---------------------------------------------------------------------------
# Bubble detection


@dataclass
class BubbleReport:
    verdict: Verdict
    witness: Optional[str] = None


def bubble_free(C: Union[Finite2Category, Polygraph], bound: int = 4) -> BubbleReport:
    """Detect 2-cells whose 1-boundaries are both a unit on one object.

    Finite 2-categories are scanned exhaustively (exact verdict).  For
    a presentation of dimension <= 2 the detector first applies a sound
    sufficient condition (if no generating 2-cell has a pure-unit
    source, or none has a pure-unit target, the first or last layer of
    any candidate cannot exist), then searches vertical composites of
    whiskered generators up to the bound; failure to conclude is
    reported as UNKNOWN, never guessed.
    """
    if isinstance(C, Finite2Category):
        for c in C.two_cells:
            if C.is_unit2(c):
                continue
            f = C.src2(c)
            if C.tgt2(c) == f and f in set(C.identity1.values()):
                return BubbleReport(Verdict.REFUTED, witness=repr(c))
        return BubbleReport(Verdict.PROVED)
    if not isinstance(C, Polygraph):
        raise TypeError(f"cannot scan {type(C).__name__} for bubbles")
    if C.max_dim > 2:
        raise PolygraphError("bubble detection works on presentations of dimension <= 2")
    return _bubble_search(C, bound)


def _is_unit_word(t) -> bool:
    while isinstance(t, Id):
        t = t.inner
    return isinstance(t, Gen) and t.gen.dim == 0


def _bubble_search(P: Polygraph, bound: int) -> BubbleReport:
    gens2 = list(P.gens(2))
    if not gens2:
        return BubbleReport(Verdict.PROVED)
    with_unit_src = [g for g in gens2 if _is_unit_word(P.attach(g)[0])]
    with_unit_tgt = [g for g in gens2 if _is_unit_word(P.attach(g)[1])]
    if not with_unit_src or not with_unit_tgt:
        # the bottom (resp. top) layer of a vertical decomposition of a
        # bubble would need a generator with unit source (resp. target)
        return BubbleReport(Verdict.PROVED)
    # direct witness: a generator that is itself a bubble
    for g in gens2:
        s, t = P.attach(g)
        if _is_unit_word(s) and _is_unit_word(t):
            return BubbleReport(Verdict.REFUTED, witness=print_word(Gen(g)))
    # bounded search over vertical chains of generators (trivial whiskers),
    # growing upward from the layers with a unit source
    from . import rewrite

    frontier: list = [Gen(g) for g in with_unit_src]
    seen = set(frontier)
    from .terms import compose, src, tgt, CompositionError

    for _ in range(bound):
        nxt = []
        for term in frontier:
            for g in gens2:
                try:
                    cand = compose(P, 1, Gen(g), term)
                except CompositionError:
                    continue
                if cand in seen:
                    continue
                seen.add(cand)
                if _is_unit_word(
                    rewrite.canonical_form(P, src(P, cand))
                ) and _is_unit_word(rewrite.canonical_form(P, tgt(P, cand))):
                    return BubbleReport(Verdict.REFUTED, witness=print_word(cand))
                nxt.append(cand)
        frontier = nxt
    return BubbleReport(Verdict.UNKNOWN)
