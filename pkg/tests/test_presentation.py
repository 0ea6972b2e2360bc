"""Relator normalization, Tietze eliminations and abelianization."""

import math

import pytest
from hypothesis import given, strategies as st

from app.algebra.coxeter import type_b4_handles, type_d4
from app.algebra.linrep import artin_presentation
from app.algebra.mcg import SurfaceTriple, gervais_presentation, handle_delta
from app.algebra.presentation import (
    AbelianInvariants,
    Presentation,
    add_generator,
    abelianization,
    canonical_relator,
    cyclic_reduce,
    direct_product,
    eliminate_generator,
    free_abelian_presentation,
    normalize_relators,
    parse_presentation,
    quotient_by_words,
    render_presentation,
)
from app.algebra.word import EMPTY, Word, commutator, invert, parse_word
from app.core.exceptions import EliminationError, PresentationError, UnknownGeneratorError
from tests.conftest import words


def w(text):
    return parse_word(text)


class TestCanonicalRelator:
    def test_cyclic_reduce(self):
        assert cyclic_reduce(w("a b a^-1")) == w("b")
        assert cyclic_reduce(w("a a^-1")) == EMPTY

    def test_commutator_and_its_inverse_agree(self):
        assert canonical_relator(w("a b a^-1 b^-1")) == canonical_relator(w("b a b^-1 a^-1"))

    @given(words(("a", "b", "c"), min_size=1), st.integers(min_value=0, max_value=12))
    def test_invariant_under_rotation_and_inversion(self, r, shift):
        base = cyclic_reduce(r)
        if not base:
            return
        k = shift % len(base)
        rotated = Word(base.letters[k:] + base.letters[:k])
        assert canonical_relator(rotated) == canonical_relator(base)
        assert canonical_relator(invert(base)) == canonical_relator(base)

    def test_normalize_drops_duplicates(self):
        p = Presentation.create(("a", "b"), [w("a b a^-1 b^-1"), w("b a b^-1 a^-1"), w("a a^-1")])
        assert len(normalize_relators(p).relators) == 1


class TestPresentation:
    def test_unknown_letter_rejected(self):
        with pytest.raises(UnknownGeneratorError):
            Presentation.create(("a",), [w("a b")])

    def test_duplicate_generators_rejected(self):
        with pytest.raises(PresentationError):
            Presentation.create(("a", "a"))

    def test_parse_and_render(self):
        p = parse_presentation("# a comment\ngens: a, b\na b a^-1 b^-1  # commutator\n")
        assert p.generators == ("a", "b")
        assert p.relators == (w("a b a^-1 b^-1"),)
        assert parse_presentation(render_presentation(p)) == p

    def test_parse_needs_header(self):
        with pytest.raises(PresentationError):
            parse_presentation("a b\n")

    def test_direct_product_clash(self):
        p = free_abelian_presentation(["x"])
        with pytest.raises(PresentationError):
            direct_product([p, p])

    def test_direct_product_adds_cross_commutators(self):
        p = direct_product([Presentation.create(("x",)), Presentation.create(("y",))])
        assert p.relator_set() == {canonical_relator(commutator(Word.of("x"), Word.of("y")))}

    def test_quotient_checks_alphabet(self):
        with pytest.raises(UnknownGeneratorError):
            quotient_by_words(free_abelian_presentation(["x"]), [Word.of("y")])


class TestElimination:
    def test_substitutes_defining_word(self):
        p = Presentation.create(("a", "b", "c"), [w("c b^-1 a^-1"), w("a c a^-1 c^-1")])
        q = eliminate_generator(p, "c", w("a b"))
        assert q.generators == ("a", "b")
        assert q.relator_set() == {canonical_relator(w("a b a^-1 b^-1"))}

    def test_needs_a_witness(self):
        p = free_abelian_presentation(["a", "b", "c"])
        with pytest.raises(EliminationError):
            eliminate_generator(p, "c", w("a b"))

    def test_defining_word_must_avoid_generator(self):
        p = Presentation.create(("a", "c"), [w("c a^-1")])
        with pytest.raises(EliminationError):
            eliminate_generator(p, "c", w("c a"))

    def test_generator_must_exist(self):
        with pytest.raises(EliminationError):
            eliminate_generator(free_abelian_presentation(["a"]), "z", EMPTY)

    def test_add_then_eliminate_is_identity(self):
        p = free_abelian_presentation(["a", "b"])
        q = add_generator(p, "c", w("a b"))
        assert "c" in q.generators
        assert eliminate_generator(q, "c", w("a b")) == p


class TestAbelianization:
    def test_free_abelian(self):
        assert abelianization(free_abelian_presentation(["x", "y", "z"])) == AbelianInvariants(3)

    def test_cyclic_torsion_combines(self):
        p = Presentation.create(("a", "b"), [w("a^2"), w("b^3")])
        assert abelianization(p) == AbelianInvariants(0, (6,))

    def test_torsion_divisibility_chain(self):
        p = Presentation.create(("a", "b"), [w("a^2"), w("b^4")])
        assert abelianization(p) == AbelianInvariants(0, (2, 4))

    @given(st.integers(min_value=1, max_value=60))
    def test_single_relator(self, k):
        p = Presentation.create(("x",), [Word.of("x") ** k])
        expected = (k,) if k > 1 else ()
        assert abelianization(p) == AbelianInvariants(0, expected)

    def test_artin_groups_have_rank_one(self):
        assert abelianization(artin_presentation(type_b4_handles())) == AbelianInvariants(1)
        assert abelianization(artin_presentation(type_d4())) == AbelianInvariants(1)

    def test_render(self):
        assert str(AbelianInvariants(2, (12,))) == "Z^2 + Z/12"
        assert str(AbelianInvariants(0)) == "0"


small_presentations = st.lists(words(("a", "b", "c"), min_size=1, max_size=8), max_size=4).map(
    lambda rs: Presentation.create(("a", "b", "c"), rs)
)


class TestAbelianizationInvariance:
    @given(small_presentations)
    def test_normalize_keeps_invariants(self, p):
        assert abelianization(normalize_relators(p)) == abelianization(p)

    @given(small_presentations, st.randoms(use_true_random=False))
    def test_relator_order_is_irrelevant(self, p, rnd):
        shuffled = list(p.relators)
        rnd.shuffle(shuffled)
        assert abelianization(Presentation(p.generators, tuple(shuffled))) == abelianization(p)

    @given(small_presentations, words(("a", "b", "c"), max_size=6))
    def test_tietze_moves_keep_invariants(self, p, defining):
        expanded = add_generator(p, "d", defining)
        assert abelianization(expanded) == abelianization(p)
        assert abelianization(eliminate_generator(expanded, "d", defining)) == abelianization(p)

    def test_star_elimination_in_the_gervais_presentation(self):
        p = gervais_presentation(SurfaceTriple(1, 3, 0)).presentation
        q = eliminate_generator(p, "c21", parse_word("c12^-1") * handle_delta(1, 2))
        assert "c21" not in q.generators
        assert abelianization(q) == abelianization(p)


class TestDirectProducts:
    @given(
        st.lists(words(("a", "b"), min_size=1, max_size=6), max_size=3),
        st.lists(words(("x", "y"), min_size=1, max_size=6), max_size=3),
    )
    def test_abelianization_is_additive(self, left, right):
        p = Presentation.create(("a", "b"), left)
        q = Presentation.create(("x", "y"), right)
        ab_p, ab_q = abelianization(p), abelianization(q)
        ab = abelianization(direct_product([p, q]))
        assert ab.rank == ab_p.rank + ab_q.rank
        assert math.prod(ab.torsion) == math.prod(ab_p.torsion) * math.prod(ab_q.torsion)

    def test_d4_times_two_twists(self):
        d4 = artin_presentation(type_d4())
        p = direct_product([d4, Presentation.create(("c12",)), Presentation.create(("c23",))])
        assert p.generators == d4.generators + ("c12", "c23")
        new = p.relator_set() - d4.relator_set()
        assert len(new) == 9
        assert all(len(r) == 4 for r in new)
        assert abelianization(p) == AbelianInvariants(3)


class TestConstructionInvariant:
    def test_relators_must_be_cyclically_reduced(self):
        with pytest.raises(PresentationError):
            Presentation(("a", "b"), (w("a b a^-1"),))

    def test_empty_relator_rejected(self):
        with pytest.raises(PresentationError):
            Presentation(("a",), (EMPTY,))

    def test_create_reduces_first(self):
        assert Presentation.create(("a", "b"), [w("a b a^-1")]).relators == (w("b"),)
