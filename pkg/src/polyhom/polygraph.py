"""Graded presentations of free higher categories and maps between them.

A polygraph lists generators dimension by dimension; each generator of
dimension n+1 attaches along two parallel n-dimensional terms over the
lower skeleton.  The file format is line based::

    dim N
    gen 0 NAME
    gen d NAME : WORD -> WORD        # d >= 1

Functor files reference their endpoints and map generators to words::

    source PATH
    target PATH
    map NAME = WORD
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .terms import (
    CellTerm,
    Comp,
    Gen,
    GeneratorId,
    Id,
    ParseError,
    TermError,
    parse_word,
    print_word,
    src,
    tgt,
)

__all__ = [
    "Polygraph",
    "PolygraphError",
    "PolyFunctor",
    "make_polygraph",
    "skeleton",
    "apply_functor",
    "is_rigid",
    "validate_functor",
    "compose_functors",
    "identity_functor",
    "load_polygraph",
    "dump_polygraph",
    "load_functor",
    "dump_functor",
]

MAX_DIM = 16


class PolygraphError(ValueError):
    pass


class Polygraph:
    """Immutable graded generator family with attaching terms.

    ``generators[d]`` is the declaration-ordered tuple of dimension-d
    generators; the order is part of the identity of the polygraph (it
    fixes the bases of the abelianized chain complex).
    """

    def __init__(
        self,
        generators: Sequence[Sequence[GeneratorId]],
        attach: dict[GeneratorId, tuple[CellTerm, CellTerm]],
        _validate: bool = True,
    ):
        self.generators: tuple[tuple[GeneratorId, ...], ...] = tuple(
            tuple(gs) for gs in generators
        )
        self._attach = dict(attach)
        self.max_dim = len(self.generators) - 1
        self._by_name: dict[str, list[GeneratorId]] = {}
        for gs in self.generators:
            for g in gs:
                self._by_name.setdefault(g.name, []).append(g)
        if _validate:
            self._validate()

    # -- accessors ---------------------------------------------------------

    def gens(self, d: int) -> tuple[GeneratorId, ...]:
        if 0 <= d < len(self.generators):
            return self.generators[d]
        return ()

    def all_gens(self) -> Iterable[GeneratorId]:
        for gs in self.generators:
            yield from gs

    def attach(self, g: GeneratorId) -> tuple[CellTerm, CellTerm]:
        try:
            return self._attach[g]
        except KeyError:
            raise PolygraphError(f"generator {g!r} has no attaching data") from None

    def lookup(self, name: str) -> GeneratorId:
        hits = self._by_name.get(name, [])
        if not hits:
            raise PolygraphError(f"unknown generator {name!r}")
        if len(hits) > 1:
            raise PolygraphError(
                f"ambiguous generator name {name!r} (dims "
                f"{sorted(g.dim for g in hits)})"
            )
        return hits[0]

    def has_gen(self, g: GeneratorId) -> bool:
        return g.dim <= self.max_dim and g in set(self.generators[g.dim])

    def __eq__(self, other):
        return (
            isinstance(other, Polygraph)
            and self.generators == other.generators
            and self._attach == other._attach
        )

    def __repr__(self):
        counts = ",".join(str(len(gs)) for gs in self.generators)
        return f"Polygraph(dims={self.max_dim}, counts=[{counts}])"

    # -- validation --------------------------------------------------------

    def _validate(self):
        if self.max_dim > MAX_DIM:
            raise PolygraphError(f"dimension {self.max_dim} exceeds MAX_DIM={MAX_DIM}")
        for d, gs in enumerate(self.generators):
            seen = set()
            for g in gs:
                if g.dim != d:
                    raise PolygraphError(f"generator {g!r} listed at dimension {d}")
                if g.name in seen:
                    raise PolygraphError(
                        f"duplicate generator name {g.name!r} in dimension {d}"
                    )
                seen.add(g.name)
                if d == 0:
                    if g in self._attach:
                        raise PolygraphError("objects carry no attaching terms")
                    continue
                s, t = self.attach(g)
                if s.dim != d - 1 or t.dim != d - 1:
                    raise PolygraphError(
                        f"attaching terms of {g!r} must have dimension {d - 1}"
                    )
                self._check_over_skeleton(s, d - 1)
                self._check_over_skeleton(t, d - 1)
                if d >= 2:
                    self._check_parallel(g, s, t)

    def _check_over_skeleton(self, t: CellTerm, d: int):
        from .terms import subterms

        for _, s in subterms(t):
            if isinstance(s, Gen) and not self.has_gen(s.gen):
                raise PolygraphError(f"unknown generator {s.gen!r} in attaching term")
            if isinstance(s, Gen) and s.gen.dim > d:
                raise PolygraphError(
                    f"attaching term uses {s.gen!r} above dimension {d}"
                )

    def _check_parallel(self, g: GeneratorId, s: CellTerm, t: CellTerm):
        from . import rewrite

        for bnd, label in ((src, "sources"), (tgt, "targets")):
            a, b = bnd(self, s), bnd(self, t)
            res = rewrite.equivalent(self, a, b)
            if res.verdict is rewrite.Verdict.REFUTED:
                raise PolygraphError(
                    f"attaching terms of {g!r} are not parallel: {label} "
                    f"{print_word(a)} vs {print_word(b)}"
                )
            if res.verdict is rewrite.Verdict.UNKNOWN:
                raise PolygraphError(
                    f"parallelism of attaching terms of {g!r} undecided "
                    "within budget (unknown)"
                )


GenSpec = tuple  # (name, dim) or (name, dim, src_word, tgt_word)


def _extend(gens: list, attach: dict, entry: GenSpec) -> None:
    """Add one generator entry in place, parsing words over the partial data."""
    name, d = entry[0], entry[1]
    while len(gens) <= d:
        gens.append([])
    g = GeneratorId(name, d)
    if d == 0:
        if len(entry) > 2 and (entry[2] is not None or entry[3] is not None):
            raise PolygraphError("objects take no attaching words")
        gens[0].append(g)
        return
    if len(entry) != 4:
        raise PolygraphError(
            f"generator {name!r} of dimension {d} needs source and target"
        )
    partial = Polygraph(gens, attach, _validate=False)
    s = _as_term(entry[2], partial)
    t = _as_term(entry[3], partial)
    gens[d].append(g)
    attach[g] = (s, t)


def make_polygraph(entries: Iterable[GenSpec], max_dim: Optional[int] = None) -> Polygraph:
    """Build and validate a polygraph from generator specifications.

    Each entry is ``(name, 0)`` for an object or ``(name, d, src, tgt)``
    for d >= 1, where ``src``/``tgt`` are words or terms over the
    previously declared generators.  Entries must come in order of
    nondecreasing dimension.
    """
    gens: list[list[GeneratorId]] = []
    attach: dict[GeneratorId, tuple[CellTerm, CellTerm]] = {}
    for entry in entries:
        _extend(gens, attach, entry)
    if max_dim is not None:
        while len(gens) <= max_dim:
            gens.append([])
    return Polygraph(gens, attach)


def _as_term(w: Union[str, CellTerm], P: Polygraph) -> CellTerm:
    if isinstance(w, CellTerm):
        return w
    return parse_word(w, P)


def skeleton(P: Polygraph, n: int) -> Polygraph:
    """Restriction to generators of dimension at most n."""
    if n < 0:
        return Polygraph([], {})
    n = min(n, P.max_dim)
    gens = P.generators[: n + 1]
    attach = {g: P.attach(g) for d in range(1, n + 1) for g in P.gens(d)}
    return Polygraph(gens, attach, _validate=False)


# ---------------------------------------------------------------------------
# Functors between free objects, presented on generators


@dataclass
class PolyFunctor:
    source: Polygraph
    target: Polygraph
    images: dict[GeneratorId, CellTerm] = field(default_factory=dict)

    def image(self, g: GeneratorId) -> CellTerm:
        try:
            return self.images[g]
        except KeyError:
            raise PolygraphError(f"functor undefined on generator {g!r}") from None


def apply_functor(F: PolyFunctor, t: CellTerm) -> CellTerm:
    """Structural pushforward of a term along F (generatorwise)."""
    if isinstance(t, Gen):
        u = F.image(t.gen)
        if u.dim != t.dim:
            raise PolygraphError(
                f"image of {t.gen!r} has dimension {u.dim}, expected {t.dim}"
            )
        return u
    if isinstance(t, Id):
        return Id(apply_functor(F, t.inner))
    assert isinstance(t, Comp)
    return Comp(t.k, apply_functor(F, t.left), apply_functor(F, t.right))


def is_rigid(F: PolyFunctor) -> bool:
    """True when every generator maps to a bare generator."""
    return all(isinstance(F.image(g), Gen) for g in F.source.all_gens())


def validate_functor(F: PolyFunctor, budget=None) -> dict[GeneratorId, str]:
    """Boundary-preservation report per generator: PROVED/REFUTED/UNKNOWN.

    For every generator g of dimension >= 1 the source and target of
    the image must be equivalent to the images of the attaching terms.
    """
    from . import rewrite

    report: dict[GeneratorId, str] = {}
    for d in range(1, F.source.max_dim + 1):
        for g in F.source.gens(d):
            s_want = apply_functor(F, F.source.attach(g)[0])
            t_want = apply_functor(F, F.source.attach(g)[1])
            u = F.image(g)
            verdicts = []
            for want, got in (
                (s_want, src(F.target, u)),
                (t_want, tgt(F.target, u)),
            ):
                verdicts.append(
                    rewrite.equivalent(F.target, want, got, budget).verdict.name
                )
            if "REFUTED" in verdicts:
                report[g] = "REFUTED"
            elif "UNKNOWN" in verdicts:
                report[g] = "UNKNOWN"
            else:
                report[g] = "PROVED"
    return report


def compose_functors(G: PolyFunctor, F: PolyFunctor) -> PolyFunctor:
    """G after F."""
    if F.target is not G.source and F.target != G.source:
        raise PolygraphError("functor composition endpoint mismatch")
    images = {g: apply_functor(G, F.image(g)) for g in F.source.all_gens()}
    return PolyFunctor(F.source, G.target, images)


def identity_functor(P: Polygraph) -> PolyFunctor:
    return PolyFunctor(P, P, {g: Gen(g) for g in P.all_gens()})


# ---------------------------------------------------------------------------
# Text formats


def dump_polygraph(P: Polygraph) -> str:
    lines = [f"dim {P.max_dim if P.max_dim >= 0 else -1}"]
    for d in range(P.max_dim + 1):
        for g in P.gens(d):
            if d == 0:
                lines.append(f"gen 0 {g.name}")
            else:
                s, t = P.attach(g)
                lines.append(
                    f"gen {d} {g.name} : {print_word(s)} -> {print_word(t)}"
                )
    return "\n".join(lines) + "\n"


def load_polygraph(text: str) -> Polygraph:
    gens: list[list[GeneratorId]] = []
    attach: dict[GeneratorId, tuple[CellTerm, CellTerm]] = {}
    max_dim: Optional[int] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 3)
        try:
            if parts[0] == "dim":
                max_dim = int(parts[1])
            elif parts[0] == "gen":
                d = int(parts[1])
                name = parts[2]
                if d == 0:
                    _extend(gens, attach, (name, 0))
                else:
                    rest = parts[3]
                    if not rest.startswith(":"):
                        raise PolygraphError("expected ':' after generator name")
                    s_txt, t_txt = rest[1:].split("->", 1)
                    _extend(gens, attach, (name, d, s_txt.strip(), t_txt.strip()))
            else:
                raise PolygraphError(f"unknown directive {parts[0]!r}")
        except (IndexError, ValueError, ParseError, TermError, PolygraphError) as e:
            raise PolygraphError(f"line {lineno}: {e}") from e
    if max_dim is not None:
        while len(gens) <= max_dim:
            gens.append([])
    return Polygraph(gens, attach)


def dump_functor(F: PolyFunctor, source_path: str, target_path: str) -> str:
    lines = [f"source {source_path}", f"target {target_path}"]
    for g in F.source.all_gens():
        lines.append(f"map {g.name} = {print_word(F.image(g))}")
    return "\n".join(lines) + "\n"


def load_functor(text: str, source: Polygraph, target: Polygraph) -> PolyFunctor:
    """Parse map lines against explicitly supplied endpoint polygraphs.

    The ``source``/``target`` path lines are returned to the caller via
    the CLI, which resolves them; here they are skipped.
    """
    images: dict[GeneratorId, CellTerm] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line or line.split()[0] in ("source", "target"):
            continue
        if not line.startswith("map "):
            raise PolygraphError(f"line {lineno}: expected 'map NAME = WORD'")
        try:
            name, word = line[4:].split("=", 1)
            g = source.lookup(name.strip())
            images[g] = parse_word(word.strip(), target)
        except (ParseError, TermError, PolygraphError) as e:
            raise PolygraphError(f"line {lineno}: {e}") from e
    missing = [g for g in source.all_gens() if g not in images]
    if missing:
        raise PolygraphError(f"functor undefined on {missing}")
    return PolyFunctor(source, target, images)


def functor_file_paths(text: str) -> tuple[str, str]:
    src_path = tgt_path = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line.startswith("source "):
            src_path = line[7:].strip()
        elif line.startswith("target "):
            tgt_path = line[7:].strip()
    if src_path is None or tgt_path is None:
        raise PolygraphError("functor file must declare source and target paths")
    return src_path, tgt_path
