import pytest

from polyhom.polygraph import make_polygraph
from polyhom.terms import (
    Comp,
    CompositionError,
    Gen,
    GeneratorId,
    Id,
    ParseError,
    TermError,
    compose,
    is_well_parenthesized,
    paren_profile,
    parse_word,
    print_word,
    size,
    src,
    src_k,
    tgt,
    tgt_k,
    word_length,
)

from helpers import triangle_polygraph, two_object_sphere


@pytest.fixture
def sphere2():
    return two_object_sphere()


def gen(P, name):
    return Gen(P.lookup(name))


class TestDimensions:
    def test_generator_dimension(self, sphere2):
        assert gen(sphere2, "alpha").dim == 2

    def test_unit_raises_dimension(self, sphere2):
        assert Id(gen(sphere2, "f")).dim == 2

    def test_composition_preserves_dimension(self, sphere2):
        t = compose(sphere2, 0, gen(sphere2, "f"), Id(gen(sphere2, "A")))
        assert t.dim == 1

    def test_bad_level_rejected(self, sphere2):
        with pytest.raises(TermError):
            Comp(1, gen(sphere2, "f"), gen(sphere2, "g"))

    def test_unequal_dims_rejected(self, sphere2):
        with pytest.raises(TermError):
            Comp(0, gen(sphere2, "f"), gen(sphere2, "A"))


class TestBoundaries:
    def test_unit_boundaries(self, sphere2):
        t = Id(gen(sphere2, "f"))
        assert src(sphere2, t) == gen(sphere2, "f")
        assert tgt(sphere2, t) == gen(sphere2, "f")

    def test_generator_boundaries(self, sphere2):
        assert src(sphere2, gen(sphere2, "alpha")) == gen(sphere2, "f")
        assert tgt(sphere2, gen(sphere2, "alpha")) == gen(sphere2, "g")

    def test_vertical_composite_boundaries(self):
        # beta: e => f then alpha: f => g composes to e => g
        P = make_polygraph(
            [
                ("A", 0),
                ("B", 0),
                ("e", 1, "(c_A)", "(c_B)"),
                ("f", 1, "(c_A)", "(c_B)"),
                ("g", 1, "(c_A)", "(c_B)"),
                ("alpha", 2, "(c_f)", "(c_g)"),
                ("beta", 2, "(c_e)", "(c_f)"),
            ]
        )
        t = compose(P, 1, gen(P, "alpha"), gen(P, "beta"))
        assert src(P, t) == gen(P, "e")
        assert tgt(P, t) == gen(P, "g")

    def test_principal_triangle_cell(self):
        # the generating 2-cell goes from the long edge to the composite
        P = triangle_polygraph()
        t = gen(P, "t")
        assert src(P, t) == gen(P, "d02")
        assert tgt(P, t) == Comp(0, gen(P, "d12"), gen(P, "d01"))

    def test_low_composition_boundary_shape(self, sphere2):
        t = compose(sphere2, 0, gen(sphere2, "alpha"), Id(Id(gen(sphere2, "A"))))
        s = src(sphere2, t)
        assert isinstance(s, Comp) and s.k == 0

    def test_object_has_no_boundary(self, sphere2):
        with pytest.raises(TermError):
            src(sphere2, gen(sphere2, "A"))

    def test_globularity(self, sphere2):
        t = gen(sphere2, "alpha")
        assert src(sphere2, src(sphere2, t)) == src(sphere2, tgt(sphere2, t))
        assert tgt(sphere2, tgt(sphere2, t)) == tgt(sphere2, src(sphere2, t))

    def test_iterated_boundaries(self, sphere2):
        t = gen(sphere2, "alpha")
        assert src_k(sphere2, t, 0) == gen(sphere2, "A")
        assert tgt_k(sphere2, t, 0) == gen(sphere2, "B")


class TestCompose:
    def test_whiskering_pads_with_units(self, sphere2):
        # a 2-cell composed with a 1-cell at level 0
        t = compose(sphere2, 0, gen(sphere2, "alpha"), Id(gen(sphere2, "A")))
        assert t == Comp(0, gen(sphere2, "alpha"), Id(Id(gen(sphere2, "A"))))

    def test_plain_composition(self):
        P = triangle_polygraph()
        t = compose(P, 0, gen(P, "d12"), gen(P, "d01"))
        assert t == Comp(0, gen(P, "d12"), gen(P, "d01"))

    def test_non_composable_rejected(self, sphere2):
        with pytest.raises(CompositionError):
            compose(sphere2, 0, gen(sphere2, "f"), gen(sphere2, "g"))

    def test_vertical_mismatch_rejected(self, sphere2):
        # alpha: f => g cannot follow alpha
        with pytest.raises(CompositionError):
            compose(sphere2, 1, gen(sphere2, "alpha"), gen(sphere2, "alpha"))


class TestParsePrint:
    def test_parse_generator(self, sphere2):
        assert parse_word("(c_alpha)", sphere2) == gen(sphere2, "alpha")

    def test_parse_unit_word(self, sphere2):
        t = parse_word("((c_alpha) *1 (i_(c_f)))", sphere2)
        assert t == Comp(1, gen(sphere2, "alpha"), Id(gen(sphere2, "f")))

    def test_relaxed_atoms_accepted(self, sphere2):
        strict = parse_word("((c_alpha) *1 (i_(c_f)))", sphere2)
        assert parse_word("((c_alpha *1 (i_(c_f))))", sphere2) == strict

    def test_unbalanced_rejected(self, sphere2):
        with pytest.raises(ParseError):
            parse_word("((c_A)", sphere2)

    def test_unknown_generator_rejected(self, sphere2):
        with pytest.raises(Exception):
            parse_word("(c_zeta)", sphere2)

    def test_composability_checked(self, sphere2):
        with pytest.raises(CompositionError):
            parse_word("((c_f) *0 (c_g))", sphere2)

    def test_trailing_garbage_rejected(self, sphere2):
        with pytest.raises(ParseError):
            parse_word("(c_f)(c_g)", sphere2)

    def test_round_trip(self, sphere2):
        t = compose(sphere2, 1, gen(sphere2, "alpha"), Id(gen(sphere2, "f")))
        assert parse_word(print_word(t), sphere2) == t


class TestWordText:
    def test_length_counts_symbols(self):
        assert word_length("(c_a)") == 3

    def test_profile(self):
        assert paren_profile("(c_a)") == [1, 1, 0]

    def test_well_parenthesized(self):
        assert is_well_parenthesized("(c_a)")
        assert not is_well_parenthesized("(c_a)(c_b)")
        assert not is_well_parenthesized("")
        assert not is_well_parenthesized(")c_a(")

    def test_printed_words_always_pass(self, sphere2):
        t = compose(sphere2, 1, gen(sphere2, "alpha"), Id(gen(sphere2, "f")))
        assert is_well_parenthesized(print_word(t))


class TestSize:
    def test_generator_size_zero(self, sphere2):
        assert size(gen(sphere2, "alpha")) == 0

    def test_nested_composites(self, sphere2):
        a = gen(sphere2, "alpha")
        u = Id(gen(sphere2, "f"))
        t = Comp(1, Comp(1, a, u), u)
        assert size(t) == 2

    def test_units_are_atomic(self, sphere2):
        # composition nodes hidden under a unit do not count
        inner = Comp(0, gen(sphere2, "f"), Id(gen(sphere2, "A")))
        assert size(Id(inner)) == 0
