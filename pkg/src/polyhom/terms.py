"""Cells of free higher categories as tree-structured words.

A cell term is a binary tree built from generator symbols, unit symbols
and formal k-compositions.  The concrete string syntax (one word per
term) is::

    WORD := "(" ATOM ")"
    ATOM := "c_" IDENT | "i_" WORD | WORD " *" NAT " " WORD

Whitespace is insignificant except inside identifiers.  Printing always
produces the strict grammar above; parsing additionally accepts
unparenthesized ``c_``/``i_`` atoms as composition operands and
redundant grouping parentheses.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, TYPE_CHECKING

if TYPE_CHECKING:  # pragma: no cover
    from .polygraph import Polygraph

__all__ = [
    "GeneratorId",
    "CellTerm",
    "Gen",
    "Id",
    "Comp",
    "TermError",
    "CompositionError",
    "ParseError",
    "dim",
    "src",
    "tgt",
    "src_k",
    "tgt_k",
    "compose",
    "size",
    "print_word",
    "parse_word",
    "tokenize",
    "word_length",
    "paren_profile",
    "is_well_parenthesized",
    "subterms",
    "subterm_at",
    "replace_at",
]


class TermError(ValueError):
    """Structurally invalid term."""


class CompositionError(TermError):
    """Attempt to compose non-composable cells.

    ``undecided`` is True when the boundary comparison exhausted its
    search budget instead of genuinely refuting composability.
    """

    def __init__(self, message: str, undecided: bool = False):
        super().__init__(message)
        self.undecided = undecided


class ParseError(ValueError):
    def __init__(self, message: str, pos: Optional[int] = None):
        if pos is not None:
            message = f"{message} (at token {pos})"
        super().__init__(message)
        self.pos = pos


@dataclass(frozen=True, slots=True)
class GeneratorId:
    """A named generating cell of a fixed dimension."""

    name: str
    dim: int

    def __post_init__(self):
        if not self.name:
            raise TermError("generator name must be nonempty")
        if self.dim < 0:
            raise TermError("generator dimension must be nonnegative")

    def __repr__(self):
        return f"{self.name}:{self.dim}"


class CellTerm:
    """Base class for the three term constructors."""

    __slots__ = ()

    @property
    def dim(self) -> int:
        raise NotImplementedError


@dataclass(frozen=True, slots=True)
class Gen(CellTerm):
    gen: GeneratorId

    @property
    def dim(self) -> int:
        return self.gen.dim

    def __repr__(self):
        return print_word(self)


@dataclass(frozen=True, slots=True)
class Id(CellTerm):
    """Unit on a lower-dimensional cell; raises dimension by one."""

    inner: CellTerm

    @property
    def dim(self) -> int:
        return self.inner.dim + 1

    def __repr__(self):
        return print_word(self)


@dataclass(frozen=True, slots=True)
class Comp(CellTerm):
    """Formal k-composition of two terms of equal dimension.

    The right factor is the first cell in diagram order: the k-source
    of ``Comp(k, u, v)`` comes from ``v`` and the k-target from ``u``.
    Only structural invariants are enforced here; boundary matching is
    the job of :func:`compose` and the parser.
    """

    k: int
    left: CellTerm
    right: CellTerm

    def __post_init__(self):
        d = self.left.dim
        if self.right.dim != d:
            raise TermError(
                f"composition of unequal dimensions {d} and {self.right.dim}"
            )
        if not 0 <= self.k < d:
            raise TermError(f"composition index {self.k} out of range for dim {d}")

    @property
    def dim(self) -> int:
        return self.left.dim

    def __repr__(self):
        return print_word(self)


def dim(t: CellTerm) -> int:
    return t.dim


def size(t: CellTerm) -> int:
    """Number of top-layer composition nodes (units are atomic)."""
    if isinstance(t, Comp):
        return 1 + size(t.left) + size(t.right)
    return 0


def _unit_tower(t: CellTerm, height: int) -> CellTerm:
    for _ in range(height):
        t = Id(t)
    return t


def src(P: "Polygraph", t: CellTerm) -> CellTerm:
    """One-step source boundary (dimension drops by one)."""
    if t.dim == 0:
        raise TermError("boundary of a 0-dimensional term")
    if isinstance(t, Gen):
        return P.attach(t.gen)[0]
    if isinstance(t, Id):
        return t.inner
    assert isinstance(t, Comp)
    if t.k == t.dim - 1:
        return src(P, t.right)
    return Comp(t.k, src(P, t.left), src(P, t.right))


def tgt(P: "Polygraph", t: CellTerm) -> CellTerm:
    """One-step target boundary (dimension drops by one)."""
    if t.dim == 0:
        raise TermError("boundary of a 0-dimensional term")
    if isinstance(t, Gen):
        return P.attach(t.gen)[1]
    if isinstance(t, Id):
        return t.inner
    assert isinstance(t, Comp)
    if t.k == t.dim - 1:
        return tgt(P, t.left)
    return Comp(t.k, tgt(P, t.left), tgt(P, t.right))


def src_k(P: "Polygraph", t: CellTerm, k: int) -> CellTerm:
    """Iterated source down to dimension k."""
    if not 0 <= k <= t.dim:
        raise TermError(f"boundary dimension {k} out of range")
    while t.dim > k:
        t = src(P, t)
    return t


def tgt_k(P: "Polygraph", t: CellTerm, k: int) -> CellTerm:
    """Iterated target down to dimension k."""
    if not 0 <= k <= t.dim:
        raise TermError(f"boundary dimension {k} out of range")
    while t.dim > k:
        t = tgt(P, t)
    return t


def compose(P: "Polygraph", k: int, u: CellTerm, v: CellTerm) -> CellTerm:
    """Checked k-composition ``u`` after ``v``.

    Mixed dimensions are allowed: the lower-dimensional argument is
    padded with unit wrappers (whiskering).  The k-source of the padded
    ``u`` must match the k-target of the padded ``v``; the check uses
    canonical forms first and falls back to a budgeted equivalence
    search.  Raises :class:`CompositionError` on mismatch, with
    ``undecided=True`` when the budget ran out.
    """
    d = max(u.dim, v.dim)
    if not 0 <= k < d:
        raise CompositionError(f"composition index {k} out of range for dim {d}")
    u = _unit_tower(u, d - u.dim)
    v = _unit_tower(v, d - v.dim)
    su = src_k(P, u, k)
    tv = tgt_k(P, v, k)
    verdict = _boundaries_match(P, su, tv)
    if verdict == "PROVED":
        return Comp(k, u, v)
    if verdict == "REFUTED":
        raise CompositionError(
            f"non-composable pair: {k}-source {print_word(su)} differs from "
            f"{k}-target {print_word(tv)}"
        )
    raise CompositionError(
        f"composability of {print_word(su)} and {print_word(tv)} undecided "
        "within budget (unknown)",
        undecided=True,
    )


def _boundaries_match(P: "Polygraph", a: CellTerm, b: CellTerm) -> str:
    from . import rewrite

    if rewrite.canonical_form(P, a) == rewrite.canonical_form(P, b):
        return "PROVED"
    return rewrite.equivalent(P, a, b).verdict.name


# ---------------------------------------------------------------------------
# Concrete word syntax


@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # "(", ")", "gen", "unit", "comp"
    value: str = ""
    k: int = -1


def tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c == "(":
            toks.append(Token("("))
            i += 1
        elif c == ")":
            toks.append(Token(")"))
            i += 1
        elif text.startswith("c_", i):
            j = i + 2
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            if j == i + 2:
                raise ParseError("empty generator name", len(toks))
            toks.append(Token("gen", text[i + 2 : j]))
            i = j
        elif text.startswith("i_", i):
            toks.append(Token("unit"))
            i += 2
        elif c == "*":
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError("missing composition index after '*'", len(toks))
            toks.append(Token("comp", k=int(text[i + 1 : j])))
            i = j
        else:
            raise ParseError(f"unexpected character {c!r}", len(toks))
    return toks


def word_length(text: str) -> int:
    """Number of symbols in the word (each token counts once)."""
    return len(tokenize(text))


def paren_profile(text: str) -> list[int]:
    """Running count of open minus closed parentheses, per position."""
    profile = []
    depth = 0
    for tok in tokenize(text):
        if tok.kind == "(":
            depth += 1
        elif tok.kind == ")":
            depth -= 1
        profile.append(depth)
    return profile


def is_well_parenthesized(text: str) -> bool:
    """Nonempty, never dips below zero, and hits zero only at the end."""
    try:
        profile = paren_profile(text)
    except ParseError:
        return False
    if not profile:
        return False
    for i, p in enumerate(profile):
        if p < 0:
            return False
        if p == 0 and i != len(profile) - 1:
            return False
    return profile[-1] == 0


def print_word(t: CellTerm) -> str:
    """Serialize a term in the strict word grammar."""
    if isinstance(t, Gen):
        return f"(c_{t.gen.name})"
    if isinstance(t, Id):
        return f"(i_{print_word(t.inner)})"
    assert isinstance(t, Comp)
    return f"({print_word(t.left)} *{t.k} {print_word(t.right)})"


class _Parser:
    def __init__(self, toks: list[Token], P: "Polygraph"):
        self.toks = toks
        self.P = P
        self.pos = 0

    def peek(self) -> Optional[Token]:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of word, expected {kind!r}", self.pos)
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.kind!r}", self.pos)
        self.pos += 1
        return tok

    def parse_word(self) -> CellTerm:
        tok = self.peek()
        if tok is None:
            raise ParseError("empty word", self.pos)
        if tok.kind == "gen":
            self.pos += 1
            return Gen(self.P.lookup(tok.value))
        if tok.kind == "unit":
            self.pos += 1
            return Id(self.parse_word())
        self.expect("(")
        first = self.parse_word()
        tok = self.peek()
        if tok is None:
            raise ParseError("unbalanced parentheses", self.pos)
        if tok.kind == ")":
            self.pos += 1
            return first
        if tok.kind != "comp":
            raise ParseError(f"expected ')' or '*k', found {tok.kind!r}", self.pos)
        k = tok.k
        self.pos += 1
        second = self.parse_word()
        self.expect(")")
        return compose(self.P, k, first, second)


def parse_word(text: str, P: "Polygraph") -> CellTerm:
    """Parse a word over the generators of ``P`` into a term.

    Rejects unbalanced or non-well-formed input; composability of every
    composition node is verified against ``P``.
    """
    toks = tokenize(text)
    parser = _Parser(toks, P)
    term = parser.parse_word()
    if parser.pos != len(toks):
        raise ParseError("trailing symbols after word", parser.pos)
    return term


# ---------------------------------------------------------------------------
# Tree positions (paths of 0/1 steps; 0 = left or unit inner, 1 = right)


def subterms(t: CellTerm) -> Iterator[tuple[tuple[int, ...], CellTerm]]:
    """All (path, subterm) pairs, preorder."""
    stack: list[tuple[tuple[int, ...], CellTerm]] = [((), t)]
    while stack:
        path, s = stack.pop()
        yield path, s
        if isinstance(s, Id):
            stack.append((path + (0,), s.inner))
        elif isinstance(s, Comp):
            stack.append((path + (1,), s.right))
            stack.append((path + (0,), s.left))


def subterm_at(t: CellTerm, path: tuple[int, ...]) -> CellTerm:
    for step in path:
        if isinstance(t, Id):
            t = t.inner
        elif isinstance(t, Comp):
            t = t.left if step == 0 else t.right
        else:
            raise TermError(f"no subterm at path {path}")
    return t


def replace_at(t: CellTerm, path: tuple[int, ...], new: CellTerm) -> CellTerm:
    if not path:
        return new
    step, rest = path[0], path[1:]
    if isinstance(t, Id):
        return Id(replace_at(t.inner, rest, new))
    if isinstance(t, Comp):
        if step == 0:
            return Comp(t.k, replace_at(t.left, rest, new), t.right)
        return Comp(t.k, t.left, replace_at(t.right, rest, new))
    raise TermError(f"no subterm at path {path}")
