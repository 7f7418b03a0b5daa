import pytest

from polyhom.polygraph import (
    PolyFunctor,
    PolygraphError,
    apply_functor,
    compose_functors,
    dump_functor,
    dump_polygraph,
    identity_functor,
    is_rigid,
    load_functor,
    load_polygraph,
    make_polygraph,
    skeleton,
    validate_functor,
)
from polyhom.terms import Comp, Gen, Id, parse_word
from polyhom.zoo import globe, sphere

from helpers import triangle_polygraph, two_object_sphere


def gen(P, name):
    return Gen(P.lookup(name))


def test_make_polygraph_validates_sphere1():
    P = make_polygraph(
        [("A", 0), ("B", 0), ("f", 1, "(c_A)", "(c_B)"), ("g", 1, "(c_A)", "(c_B)")]
    )
    assert [len(P.gens(d)) for d in (0, 1)] == [2, 2]


def test_globe2_shape():
    D2 = globe(2)
    assert [len(D2.gens(d)) for d in (0, 1, 2)] == [2, 2, 1]


def test_non_parallel_attachment_rejected():
    with pytest.raises(PolygraphError):
        make_polygraph(
            [
                ("A", 0),
                ("B", 0),
                ("C", 0),
                ("f", 1, "(c_A)", "(c_B)"),
                ("g", 1, "(c_A)", "(c_C)"),
                ("alpha", 2, "(c_f)", "(c_g)"),
            ]
        )


def test_unknown_generator_in_attachment_rejected():
    with pytest.raises(PolygraphError):
        make_polygraph([("A", 0), ("f", 1, "(c_A)", "(c_Z)")])


def test_duplicate_names_in_dimension_rejected():
    with pytest.raises(PolygraphError):
        make_polygraph([("A", 0), ("A", 0)])


def test_skeleton_of_globe_is_sphere():
    assert skeleton(globe(2), 1) == sphere(1)
    assert skeleton(globe(4), 3) == sphere(3)


def test_skeleton_identity_and_objects():
    P = two_object_sphere()
    assert skeleton(P, P.max_dim) == P
    sk0 = skeleton(P, 0)
    assert sk0.max_dim == 0 and len(sk0.gens(0)) == 2


def test_empty_polygraph_is_legal():
    P = make_polygraph([])
    assert P.max_dim == -1
    assert list(P.all_gens()) == []


def test_file_round_trip():
    P = triangle_polygraph()
    text = dump_polygraph(P)
    assert load_polygraph(text) == P


def test_file_error_reports_line():
    with pytest.raises(PolygraphError, match="line 2"):
        load_polygraph("dim 1\ngen 1 f : (c_A) -> (c_B)")


class TestFunctors:
    def setup_method(self):
        self.S1 = make_polygraph(
            [("A", 0), ("B", 0), ("f", 1, "(c_A)", "(c_B)"), ("g", 1, "(c_A)", "(c_B)")]
        )
        self.P = two_object_sphere()

    def inclusion(self):
        images = {g: Gen(self.P.lookup(g.name)) for g in self.S1.all_gens()}
        return PolyFunctor(self.S1, self.P, images)

    def test_apply_structural(self):
        F = self.inclusion()
        t = parse_word("((c_g) *1 (i_(c_f)))", self.S1)
        assert apply_functor(F, t) == parse_word("((c_g) *1 (i_(c_f)))", self.P)

    def test_identity_functor_fixes_terms(self):
        F = identity_functor(self.P)
        t = parse_word("((c_alpha) *1 (i_(c_f)))", self.P)
        assert apply_functor(F, t) == t

    def test_collapse_to_unit(self):
        Q = make_polygraph([("A", 0), ("f", 1, "(c_A)", "(c_A)")])
        F = PolyFunctor(
            Q,
            Q,
            {Q.lookup("A"): gen(Q, "A"), Q.lookup("f"): Id(gen(Q, "A"))},
        )
        assert apply_functor(F, gen(Q, "f")) == Id(gen(Q, "A"))
        assert not is_rigid(F)

    def test_rigid_inclusion(self):
        assert is_rigid(self.inclusion())

    def test_validate_functor_proved(self):
        report = validate_functor(self.inclusion())
        assert set(report.values()) == {"PROVED"}

    def test_validate_functor_refuted(self):
        bad = PolyFunctor(
            self.S1,
            self.P,
            {
                self.S1.lookup("A"): gen(self.P, "A"),
                self.S1.lookup("B"): gen(self.P, "B"),
                self.S1.lookup("f"): gen(self.P, "f"),
                # g needs endpoints A -> B; a unit on A does not match
                self.S1.lookup("g"): Id(gen(self.P, "A")),
            },
        )
        report = validate_functor(bad)
        assert report[self.S1.lookup("g")] == "REFUTED"

    def test_composition_preserves_rigidity(self):
        F = self.inclusion()
        G = identity_functor(self.P)
        H = compose_functors(G, F)
        assert is_rigid(H)
        t = parse_word("(c_f)", self.S1)
        assert apply_functor(H, t) == parse_word("(c_f)", self.P)

    def test_functor_file_round_trip(self):
        F = self.inclusion()
        text = dump_functor(F, "s1.poly", "sphere.poly")
        G = load_functor(text, self.S1, self.P)
        for g in self.S1.all_gens():
            assert G.image(g) == F.image(g)


def test_apply_functor_commutes_with_boundaries():
    from polyhom import rewrite
    from polyhom.terms import src, tgt

    P = triangle_polygraph()
    Q = two_object_sphere()
    # collapse the triangle onto the sphere shape: edges to f or g
    F = PolyFunctor(
        P,
        Q,
        {
            P.lookup("v0"): gen(Q, "A"),
            P.lookup("v1"): gen(Q, "B"),
            P.lookup("v2"): gen(Q, "B"),
            P.lookup("d01"): gen(Q, "f"),
            P.lookup("d12"): Id(gen(Q, "B")),
            P.lookup("d02"): gen(Q, "g"),
            P.lookup("t"): Gen(Q.lookup("beta")),
        },
    )
    # beta: f => g in Q does not match t: d02 => d12.d01, whose image is
    # g => 1_B . f; boundary preservation must hold up to equivalence
    report = validate_functor(F)
    assert report[P.lookup("t")] == "REFUTED"
    fixed = PolyFunctor(
        P,
        Q,
        {
            **F.images,
            P.lookup("d02"): gen(Q, "f"),
            P.lookup("t"): Id(gen(Q, "f")),
        },
    )
    report = validate_functor(fixed)
    assert report[P.lookup("t")] == "PROVED"
    t = parse_word("((c_t) *0 (i_(i_(c_v0))))", P)
    img = apply_functor(fixed, t)
    lhs = rewrite.canonical_form(Q, src(Q, img))
    rhs = rewrite.canonical_form(Q, apply_functor(fixed, src(P, t)))
    assert rewrite.equivalent(Q, lhs, rhs).verdict is rewrite.Verdict.PROVED
