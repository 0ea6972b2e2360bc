"""Lawrence–Krammer and root-basis representations, and block representations."""

import pytest
from hypothesis import given, settings as hypothesis_settings

from app.algebra.coxeter import B4_ATOMS, type_b4_handles, type_d4
from app.algebra.garside import equal_words, is_trivial
from app.algebra.laurent import Q, T, PolyMatrix, monomial_scalar_of
from app.algebra.linrep import (
    BlockRepresentation,
    artin_block,
    artin_relators,
    cubic_inverse,
    cw_representation_d4,
    evaluate_word_matrix,
    free_abelian_block,
    lk_representation,
    representation_for,
)
from app.algebra.word import Word, commutator, concat, invert, parse_word
from app.core.config import settings
from app.core.exceptions import RepresentationError, UnknownGeneratorError
from app.services.matrix_service import matrix_service
from tests.conftest import words

D4_ATOMS = ("a1", "a2", "a3", "b")


def _cubic(m: PolyMatrix) -> PolyMatrix:
    n = m.dim
    ident = PolyMatrix.identity(n)
    return (m - ident) @ (m + PolyMatrix.scalar(n, Q)) @ (m - PolyMatrix.scalar(n, T * Q ** 2))


class TestConstruction:
    @pytest.mark.parametrize("n, dim", [(2, 1), (3, 3), (4, 6)])
    def test_lk_dimensions(self, n, dim):
        assert lk_representation(n).dim == dim

    def test_lk_bounds(self):
        with pytest.raises(RepresentationError):
            lk_representation(1)
        with pytest.raises(RepresentationError):
            lk_representation(settings.lk_max_strands + 1)

    def test_cw_dimension(self, cw):
        assert cw.dim == 12
        assert set(cw.images) == set(D4_ATOMS)

    def test_relator_counts(self, b4, d4):
        assert len(artin_relators(b4)) == 3
        assert len(artin_relators(d4)) == 6

    def test_representation_for(self, b4, d4, lk4, cw):
        assert representation_for(b4) is lk4
        assert representation_for(d4) is cw

    def test_unknown_generator(self, lk4):
        with pytest.raises(UnknownGeneratorError):
            lk4.matrix("a3")


class TestRelators:
    def test_lk_relators_are_identity(self, lk4):
        for r in artin_relators(lk4.system):
            assert evaluate_word_matrix(lk4, r).is_identity()

    def test_cw_relators_are_identity(self, cw):
        for r in artin_relators(cw.system):
            assert evaluate_word_matrix(cw, r).is_identity()

    def test_generators_satisfy_the_cubic(self, lk4, cw):
        for rep in (lk4, cw):
            for atom, m in rep.images.items():
                zero = _cubic(m)
                assert all(v.is_zero() for row in zero.rows for v in row)
                assert (m @ cubic_inverse(m)).is_identity()
                assert (m @ rep.inverse_images[atom]).is_identity()

    def test_centers_act_as_scalars(self, lk4, cw):
        assert monomial_scalar_of(evaluate_word_matrix(lk4, parse_word("a1 b a2") ** 4)) is not None
        assert monomial_scalar_of(evaluate_word_matrix(cw, parse_word("a1 a2 a3 b") ** 3)) is not None

    def test_center_forms_share_a_matrix(self, lk4):
        cube = evaluate_word_matrix(lk4, parse_word("a1 a1 a2 b") ** 3)
        assert cube == evaluate_word_matrix(lk4, parse_word("a1 a2 b") ** 4)
        assert cube == evaluate_word_matrix(lk4, parse_word("a1 b a2") ** 4)


class TestOracleAgreement:
    @given(words(B4_ATOMS, min_size=1, max_size=8))
    def test_nontrivial_b4_words_are_not_identity(self, w):
        lk4 = lk_representation(4, B4_ATOMS)
        trivial = is_trivial(type_b4_handles(), w)
        assert evaluate_word_matrix(lk4, w).is_identity() == trivial

    @given(words(B4_ATOMS, max_size=6), words(B4_ATOMS, max_size=6))
    def test_b4_pairs_agree(self, u, v):
        lk4 = lk_representation(4, B4_ATOMS)
        assert matrix_service.agree_with_garside(type_b4_handles(), lk4, u, v)

    @given(words(B4_ATOMS, max_size=6), words(B4_ATOMS, max_size=4))
    def test_b4_conjugated_relators_agree(self, u, x):
        system, lk4 = type_b4_handles(), lk_representation(4, B4_ATOMS)
        for r in artin_relators(system):
            v = concat(u, x, r, invert(x))
            assert equal_words(system, u, v)
            assert matrix_service.agree_with_garside(system, lk4, u, v)

    @pytest.mark.slow
    @hypothesis_settings(max_examples=25)
    @given(words(D4_ATOMS, max_size=6), words(D4_ATOMS, max_size=6))
    def test_d4_pairs_agree(self, u, v):
        assert matrix_service.agree_with_garside(type_d4(), cw_representation_d4(), u, v)


class TestFaithfulnessSamples:
    @given(words(D4_ATOMS, min_size=1, max_size=6))
    def test_nontrivial_d4_words_are_not_identity(self, w):
        system, cw = type_d4(), cw_representation_d4()
        assert evaluate_word_matrix(cw, w).is_identity() == is_trivial(system, w)

    @pytest.mark.slow
    @pytest.mark.parametrize("group", ["b4", "d4"])
    def test_thousand_nontrivial_words(self, group):
        system = type_b4_handles() if group == "b4" else type_d4()
        rep = representation_for(system)

        @hypothesis_settings(max_examples=1000)
        @given(words(system.atoms, min_size=1, max_size=10))
        def check(w):
            assert evaluate_word_matrix(rep, w).is_identity() == is_trivial(system, w)

        check()

    @pytest.mark.slow
    @pytest.mark.parametrize("group", ["b4", "d4"])
    def test_thousand_pairs(self, group):
        system = type_b4_handles() if group == "b4" else type_d4()
        rep = representation_for(system)

        @hypothesis_settings(max_examples=1000)
        @given(words(system.atoms, max_size=6), words(system.atoms, max_size=6))
        def check(u, v):
            assert matrix_service.agree_with_garside(system, rep, u, v)

        check()


class TestBlocks:
    def test_free_abelian_block(self):
        block = free_abelian_block("z")
        assert block.dim == 1
        assert (block.images["z"] @ block.inverse_images["z"]).is_identity()

    def test_product_of_blocks(self, lk4):
        rep = BlockRepresentation([artin_block(lk4), free_abelian_block("z")], B4_ATOMS + ("z",))
        assert rep.dim == 7
        assert rep.is_trivial(commutator(Word.of("a1"), Word.of("z")))
        assert not rep.is_trivial(Word.of("z"))
        assert not rep.is_trivial(Word.of("b"))
        with pytest.raises(UnknownGeneratorError):
            rep.block_matrices(Word.of("q9"))

    def test_projective_block(self, lk4):
        rep = BlockRepresentation([artin_block(lk4, projective=True)], B4_ATOMS)
        assert rep.projective
        assert rep.is_trivial(parse_word("a1 b a2") ** 4)
        assert not rep.is_trivial(Word.of("a1"))
        assert rep.scalars(parse_word("a1 b a2") ** 4)[0] is not None

    def test_renamed_block(self):
        rep = lk_representation(3)
        block = artin_block(rep, rename={"x": parse_word("s1 s1")})
        assert block.images["x"] == evaluate_word_matrix(rep, parse_word("s1 s1"))
        assert (block.images["x"] @ block.inverse_images["x"]).is_identity()
