"""Left-greedy normal forms in B3, B4 and A(D4)."""

import itertools

import pytest
from hypothesis import given, settings as hypothesis_settings, strategies as st

from app.algebra.coxeter import B4_ATOMS, type_a, type_b4_handles, type_d4
from app.algebra.garside import (
    GarsideElement,
    delta_power_of,
    delta_word,
    equal_words,
    inverse,
    is_central,
    is_left_weighted,
    is_trivial,
    multiply,
    normal_form,
    positive_words,
)
from app.algebra.linrep import artin_relators
from app.algebra.word import Word, concat, free_reduce, invert, parse_word
from app.core.exceptions import UnknownGeneratorError
from tests.conftest import words

D4_ATOMS = ("a1", "a2", "a3", "b")


def _relation_pairs(system):
    pairs = []
    for i, j in itertools.combinations(range(system.rank), 2):
        s, t = system.atoms[i], system.atoms[j]
        m = system.coxeter_matrix[i][j]
        left = tuple(([s, t] * m)[:m])
        right = tuple(([t, s] * m)[:m])
        pairs += [(left, right), (right, left)]
    return pairs


def _closure_classes(system, length):
    """Label every positive word of the given length by its class under the braid relations."""
    pairs = _relation_pairs(system)
    label = {}
    for start in itertools.product(system.atoms, repeat=length):
        if start in label:
            continue
        label[start] = start
        stack = [start]
        while stack:
            x = stack.pop()
            for left, right in pairs:
                size = len(left)
                for pos in range(len(x) - size + 1):
                    if x[pos:pos + size] == left:
                        y = x[:pos] + right + x[pos + size:]
                        if y not in label:
                            label[y] = start
                            stack.append(y)
    return label


def _assert_closure_matches(system, max_length):
    for length in range(max_length + 1):
        label = _closure_classes(system, length)
        by_class, by_form = {}, {}
        for word, cls in label.items():
            nf = normal_form(system, Word.of(*word))
            by_class.setdefault(cls, set()).add(nf)
            by_form.setdefault(nf, set()).add(cls)
        assert all(len(forms) == 1 for forms in by_class.values())
        assert all(len(classes) == 1 for classes in by_form.values())


class TestFundamentalElement:
    def test_d4_coxeter_element_cubed_is_delta(self, d4):
        nf = normal_form(d4, parse_word("a1 a2 a3 b") ** 3)
        assert nf == GarsideElement(1, ())
        assert nf.render(d4) == "Δ^1 · []"

    def test_b4_center_is_delta_squared(self, b4):
        assert delta_power_of(b4, Word.of("a1", "b", "a2") ** 4) == 2
        assert delta_power_of(b4, delta_word(b4)) == 1

    def test_delta_inverse(self, d4):
        nf = normal_form(d4, invert(delta_word(d4)))
        assert nf == GarsideElement(-1, ())

    def test_negative_letter(self, b4):
        nf = normal_form(b4, Word.letter("b", -1))
        assert nf.inf == -1
        assert nf.canonical_length == 1

    def test_non_delta_power(self, b4):
        assert delta_power_of(b4, Word.of("a1")) is None


class TestDeltaConjugation:
    @pytest.mark.parametrize("build", [type_b4_handles, type_d4], ids=["b4", "d4"])
    def test_delta_conjugates_atoms_by_tau(self, build):
        system = build()
        delta = delta_word(system)
        for atom in system.atoms:
            conjugate = concat(delta, Word.of(atom), invert(delta))
            assert normal_form(system, conjugate) == normal_form(system, Word.of(system.tau[atom]))

    def test_delta_squared_commutes_with_b4_atoms(self, b4):
        delta2 = delta_word(b4) ** 2
        for atom in b4.atoms:
            assert equal_words(b4, delta2 * Word.of(atom), Word.of(atom) * delta2)


class TestWordProblem:
    def test_braid_and_commutation_relations(self, b4):
        assert equal_words(b4, parse_word("a1 b a1"), parse_word("b a1 b"))
        assert equal_words(b4, parse_word("a1 a2"), parse_word("a2 a1"))
        assert not equal_words(b4, parse_word("a1 b"), parse_word("b a1"))

    def test_center_forms_in_b4(self, b4):
        cube = parse_word("a1 a1 a2 b") ** 3
        assert equal_words(b4, cube, parse_word("a1 a2 b") ** 4)
        assert equal_words(b4, parse_word("a1 a2 b") ** 4, parse_word("a1 b a2") ** 4)
        assert equal_words(b4, cube, parse_word("a1 a2 a2 b") ** 3)

    def test_unknown_atom(self, b4):
        with pytest.raises(UnknownGeneratorError):
            normal_form(b4, Word.of("a3"))

    @given(words(B4_ATOMS, max_size=12))
    def test_word_times_inverse_is_trivial(self, w):
        assert is_trivial(type_b4_handles(), concat(w, invert(w)))

    @given(words(D4_ATOMS, max_size=10))
    def test_normal_form_is_left_weighted(self, w):
        system = type_d4()
        nf = normal_form(system, w)
        assert is_left_weighted(system, nf.factors)
        assert all(f not in (system.identity, system.w0) for f in nf.factors)

    @given(words(D4_ATOMS, max_size=10))
    def test_to_word_round_trip(self, w):
        system = type_d4()
        nf = normal_form(system, w)
        assert normal_form(system, nf.to_word(system)) == nf

    @given(words(B4_ATOMS, max_size=8), words(B4_ATOMS, max_size=8))
    def test_multiply_and_inverse(self, u, v):
        system = type_b4_handles()
        nu, nv = normal_form(system, u), normal_form(system, v)
        assert multiply(system, nu, nv) == normal_form(system, u * v)
        assert inverse(system, nu) == normal_form(system, invert(u))


class TestCenter:
    def test_delta_d4_is_central(self, d4):
        assert is_central(d4, parse_word("a1 a2 a3 b") ** 3)

    def test_delta_b4_squared_is_central(self, b4):
        assert is_central(b4, parse_word("a1 b a2") ** 4)
        assert not is_central(b4, delta_word(b4))

    def test_atoms_are_not_central(self, b4):
        assert not is_central(b4, Word.of("a1"))

    def test_rank_two_subgroup_witness(self, b4):
        z = parse_word("a1 a1 a2 b") ** 3
        assert is_central(b4, z)
        assert not is_trivial(b4, z)
        assert not equal_words(b4, parse_word("a1 a1 a2 b"), parse_word("b a1 a1 a2"))


class TestBruteForce:
    def test_positive_words_enumeration(self):
        assert len(list(positive_words(("x", "y"), 3))) == 8
        assert list(positive_words(("x",), 0)) == [Word()]

    def test_b3_positive_words(self):
        _assert_closure_matches(type_a(3), 6)

    @pytest.mark.slow
    def test_b4_positive_words(self):
        _assert_closure_matches(type_b4_handles(), 6)


@st.composite
def rewritten_words(draw, system):
    """A word and a copy with defining relators spliced in at random positions."""
    w = draw(words(system.atoms, max_size=10))
    relators = artin_relators(system)
    letters = list(w.letters)
    for _ in range(draw(st.integers(min_value=1, max_value=3))):
        r = draw(st.sampled_from(relators))
        if draw(st.booleans()):
            r = invert(r)
        pos = draw(st.integers(min_value=0, max_value=len(letters)))
        letters[pos:pos] = r.letters
    return w, free_reduce(Word(tuple(letters)))


class TestRewriteSoundness:
    @hypothesis_settings(max_examples=200)
    @given(rewritten_words(type_b4_handles()))
    def test_b4_rewrites(self, pair):
        w, rewritten = pair
        assert normal_form(type_b4_handles(), w) == normal_form(type_b4_handles(), rewritten)

    @pytest.mark.slow
    @pytest.mark.parametrize("build", [type_b4_handles, type_d4], ids=["b4", "d4"])
    def test_thousand_rewrites(self, build):
        system = build()

        @hypothesis_settings(max_examples=1000)
        @given(rewritten_words(system))
        def check(pair):
            w, rewritten = pair
            assert normal_form(system, w) == normal_form(system, rewritten)

        check()
