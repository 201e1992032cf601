import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fpgroup.words import (AlphabetMismatch, GeneratorId, Letter, Word, conjugate,
                           cyclic_reduction, cyclically_reduce, free_reduce, invert, multiply)

X = GeneratorId(0, "x")
Y = GeneratorId(1, "y")
Z = GeneratorId(2, "z")
GENS = (X, Y, Z)


def L(g, s=1):
    return Letter(g, s)


def w(*letters):
    return Word(tuple(letters))


def quadratic_reduce(letters):
    """Independent oracle: delete the first cancelling pair until none is left."""
    seq = list(letters)
    changed = True
    while changed:
        changed = False
        for i in range(len(seq) - 1):
            a, b = seq[i], seq[i + 1]
            if a.generator == b.generator and a.sign == -b.sign:
                del seq[i:i + 2]
                changed = True
                break
    return tuple(seq)


def strip_once(word):
    a, b = word.letters[0], word.letters[-1]
    assert a.generator == b.generator and a.sign == -b.sign
    return Word(word.letters[1:-1])


letters_st = st.lists(st.builds(Letter, st.sampled_from(GENS), st.sampled_from([1, -1])),
                      max_size=24)
words_st = letters_st.map(free_reduce)


class TestFreeReduce:
    def test_cancellation(self):
        assert free_reduce([L(X), L(X, -1)]) == Word()

    def test_inner_cancellation(self):
        assert free_reduce([L(X), L(Y), L(Y, -1), L(X)]) == w(L(X), L(X))

    def test_nested_cancellation(self):
        seq = [L(X), L(Y, -1), L(Y), L(Y), L(Y, -1), L(X, -1)]
        assert quadratic_reduce(seq) == ()
        for k in range(len(seq) + 1):
            assert free_reduce(seq[:k]).letters == quadratic_reduce(seq[:k])
        assert free_reduce(seq) == Word()

    def test_bad_sign(self):
        with pytest.raises(ValueError):
            free_reduce([Letter(X, 2)])

    @given(letters_st)
    def test_matches_oracle(self, seq):
        assert free_reduce(seq).letters == quadratic_reduce(seq)

    @given(letters_st)
    def test_idempotent(self, seq):
        once = free_reduce(seq)
        assert free_reduce(once.letters) == once


class TestInvertMultiply:
    def test_invert(self):
        assert invert(w(L(X), L(Y))) == w(L(Y, -1), L(X, -1))
        assert invert(Word()) == Word()
        assert invert(Word.generator(X, 2)) == Word.generator(X, -2)

    def test_multiply(self):
        assert multiply(w(L(X)), w(L(X, -1))) == Word()
        assert multiply(w(L(X), L(Y)), w(L(Y, -1))) == w(L(X))
        expected = free_reduce(quadratic_reduce([L(X), L(Y), L(Y), L(X)]))
        assert multiply(w(L(X), L(Y)), w(L(Y), L(X))) == expected
        assert str(expected) == "x*y^2*x"

    def test_alphabet_mismatch(self):
        other = GeneratorId(0, "q")
        with pytest.raises(AlphabetMismatch):
            multiply(w(L(X)), w(L(other)))
        with pytest.raises(AlphabetMismatch):
            conjugate(w(L(X)), w(L(GeneratorId(5, "x"))))

    @settings(max_examples=200)
    @given(words_st, words_st, words_st)
    def test_associative(self, a, b, c):
        assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))

    @given(words_st)
    def test_identity_and_inverse(self, a):
        assert multiply(a, Word()) == a == multiply(Word(), a)
        assert multiply(a, invert(a)) == Word()
        assert invert(invert(a)) == a


class TestConjugate:
    def test_examples(self):
        u, v = GeneratorId(0, "u"), GeneratorId(1, "v")
        assert conjugate(w(L(v)), w(L(u))) == w(L(u, -1), L(v), L(u))
        word = w(L(X), L(Y, -1))
        assert conjugate(word, Word()) == word
        assert conjugate(w(L(X)), w(L(X))) == w(L(X))


class TestCyclicReduce:
    def test_examples(self):
        assert cyclically_reduce(w(L(X, -1), L(Y), L(X))) == w(L(Y))
        assert cyclically_reduce(Word.generator(Y, 2)) == Word.generator(Y, 2)
        word = w(L(X, -1), L(Y, -1), L(X), L(Y), L(X))
        once = strip_once(word)
        assert once == w(L(Y, -1), L(X), L(Y))
        # stripping continues until the ends no longer cancel
        assert strip_once(once) == w(L(X))
        assert cyclically_reduce(word) == w(L(X))

    @given(words_st)
    def test_conjugate_by_stripped_prefix(self, a):
        core, stripper = cyclic_reduction(a)
        # a == stripper * core * stripper^-1
        assert conjugate(core, invert(stripper)) == a
        if len(core) > 1:
            first, last = core.letters[0], core.letters[-1]
            assert not (first.generator == last.generator and first.sign == -last.sign)


def test_format():
    assert str(Word()) == "1"
    assert str(w(L(X, -1), L(X, -1), L(Y), L(X))) == "x^-2*y*x"
    assert Word.generator(X, 3).exponent_sum(0) == 3
