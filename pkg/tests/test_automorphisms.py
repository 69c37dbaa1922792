"""Rank-3 endomorphisms, pair embedding laws, and the Schreier tables."""

import itertools
import random

import pytest

from mihailova.automorphisms import (
    EmbeddingTable,
    Endomorphism3,
    compose,
    f2xf2_generators,
    fn_into_f2,
    format_endomorphism,
    orbit_undecidable_subgroup,
    pair_automorphism,
    parse_endomorphism,
    sandwich_automorphism,
)
from mihailova.presentations import Presentation
from mihailova.words import (
    AlphabetError,
    ParseError,
    Word,
    ball_size,
    iter_reduced_words,
)

TORUS = Presentation(2, (Word(2, (1, 2, -1, -2)),))

A2, B2 = Word(2, (1,)), Word(2, (2,))
ONE2 = Word(2)


def rand_word(rng, rank, max_len):
    lts = [rng.choice([s * k for s in (1, -1) for k in range(1, rank + 1)])
           for _ in range(rng.randrange(max_len + 1))]
    return Word(rank, tuple(lts))


def test_pair_automorphism_examples():
    assert pair_automorphism(ONE2, ONE2) == Endomorphism3.identity()
    e = pair_automorphism(A2, ONE2)
    assert e.image_q == Word(3, (-2, 1))
    e = pair_automorphism(ONE2, B2)
    assert e.image_q == Word(3, (1, 3))
    assert e.fixes_ab()


def test_apply_examples():
    w = Word(3, (1, 2, 1))
    assert Endomorphism3.identity().apply(w) == w
    e = sandwich_automorphism(A2, B2)
    assert e.apply(Word(3, (1,))) == Word(3, (2, 1, 3))
    assert e.apply(w) == Word(3, (2, 1, 3, 2, 2, 1, 3))


def test_compose_generator_laws():
    # left slot concatenates in writing order, right slot reverses
    left = compose(sandwich_automorphism(A2, ONE2), sandwich_automorphism(B2, ONE2))
    assert left.image_q == Word(3, (2, 3, 1))
    right = compose(sandwich_automorphism(ONE2, A2), sandwich_automorphism(ONE2, B2))
    assert right.image_q == Word(3, (1, 3, 2))
    u, v = Word(2, (1, 2)), Word(2, (-1,))
    both = sandwich_automorphism(u, v)
    assert compose(sandwich_automorphism(u, ONE2), sandwich_automorphism(ONE2, v)) == both
    assert compose(sandwich_automorphism(ONE2, v), sandwich_automorphism(u, ONE2)) == both


def test_compose_matches_application_order():
    rng = random.Random(201)
    for _ in range(200):
        es = [
            Endomorphism3(
                rand_word(rng, 3, 8), rand_word(rng, 3, 8), rand_word(rng, 3, 8)
            )
            for _ in range(3)
        ]
        w = rand_word(rng, 3, 6)
        e12 = compose(es[0], es[1])
        assert e12.apply(w) == es[1].apply(es[0].apply(w))
        assert compose(e12, es[2]) == compose(es[0], compose(es[1], es[2]))


def test_pair_automorphism_reverses_both_slots():
    rng = random.Random(202)
    for _ in range(100):
        u1, v1 = rand_word(rng, 2, 5), rand_word(rng, 2, 5)
        u2, v2 = rand_word(rng, 2, 5), rand_word(rng, 2, 5)
        got = compose(pair_automorphism(u1, v1), pair_automorphism(u2, v2))
        assert got == pair_automorphism(u2 * u1, v2 * v1)
        inv = pair_automorphism(u1.inverse(), v1.inverse())
        assert compose(pair_automorphism(u1, v1), inv) == Endomorphism3.identity()
        assert compose(inv, pair_automorphism(u1, v1)) == Endomorphism3.identity()


def test_pair_automorphism_injective_on_ball():
    words = list(iter_reduced_words(2, 3))
    assert len(words) == ball_size(2, 3) == 53
    seen = {
        pair_automorphism(u, v).image_q for u, v in itertools.product(words, words)
    }
    assert len(seen) == 53 * 53


def test_f2xf2_generators():
    gens = f2xf2_generators()
    assert len(gens) == 4
    assert gens[0].image_q == Word(3, (-2, 1))
    assert gens[1].image_q == Word(3, (-3, 1))
    assert gens[2].image_q == Word(3, (1, 2))
    assert gens[3].image_q == Word(3, (1, 3))
    for left, right in itertools.product(gens[:2], gens[2:]):
        assert compose(left, right) == compose(right, left)
    # commutator of a left with a right generator collapses entirely
    li = sandwich_automorphism(A2, ONE2)
    ri = sandwich_automorphism(ONE2, A2.inverse())
    assert compose(compose(compose(gens[0], gens[2]), li), ri) == Endomorphism3.identity()


def test_fn_into_f2_tables():
    t2 = fn_into_f2(2)
    assert t2.images == (B2, A2)
    t3 = fn_into_f2(3)
    assert t3.images == (B2, Word(2, (1, 2, -1)), Word(2, (1, 1)))
    with pytest.raises(ValueError):
        fn_into_f2(1)
    with pytest.raises(AlphabetError):
        t3.apply(Word(2, (1,)))
    with pytest.raises(AlphabetError):
        EmbeddingTable(2, (B2,))


def test_fn_into_f2_injective_on_ball():
    t3 = fn_into_f2(3)
    images = {t3.apply(w).letters for w in iter_reduced_words(3, 4)}
    assert len(images) == ball_size(3, 4)


def test_fn_into_f2_is_homomorphism():
    rng = random.Random(203)
    for n in (2, 3, 4):
        t = fn_into_f2(n)
        for _ in range(50):
            x, y = rand_word(rng, n, 5), rand_word(rng, n, 5)
            assert t.apply(x * y) == t.apply(x) * t.apply(y)
            assert t.apply(x.inverse()) == t.apply(x).inverse()


def test_orbit_undecidable_subgroup_torus():
    auts = orbit_undecidable_subgroup(TORUS)
    assert len(auts) == 3
    assert all(a.fixes_ab() for a in auts)
    # diagonal generators conjugate q by the embedded generator image
    assert auts[0].image_q == Word(3, (-3, 1, 3))
    assert auts[1].image_q == Word(3, (-2, 1, 2))
    # relator generator multiplies q on the right by the embedded relator
    emb = fn_into_f2(2).apply(TORUS.relator(1))
    assert emb == Word(2, (2, 1, -2, -1))
    assert auts[2].image_q == Word(3, (1, 3, 2, -3, -2))


def test_orbit_undecidable_subgroup_rank3_diagonal():
    P = Presentation(3, (Word(3, (1, 2, -1, -2)),))
    auts = orbit_undecidable_subgroup(P)
    assert len(auts) == 4
    assert auts[0].image_q == Word(3, (-3, 1, 3))


def test_q_count_invariant():
    probe = Word(3, (1, 2, 1, 3, 1))
    rng = random.Random(204)
    auts = list(orbit_undecidable_subgroup(TORUS)) + list(f2xf2_generators())
    for _ in range(30):
        e = pair_automorphism(rand_word(rng, 2, 4), rand_word(rng, 2, 4))
        auts.append(e)
    for e in auts:
        image = e.apply(probe)
        assert sum(1 for x in image.letters if abs(x) == 1) == 3


def test_endomorphism_serialization():
    e = orbit_undecidable_subgroup(TORUS)[2]
    text = format_endomorphism(e)
    assert text == "q -> q b a b^-1 a^-1\na -> a\nb -> b\n"
    assert parse_endomorphism(text) == e
    assert parse_endomorphism("a->a\nb->b\nq->q") == Endomorphism3.identity()
    with pytest.raises(ParseError):
        parse_endomorphism("q -> q\na -> a\n")
    with pytest.raises(ParseError):
        parse_endomorphism("q -> q\na -> a\nc -> b\n")
    with pytest.raises(ParseError):
        parse_endomorphism("q -> zz\na -> a\nb -> b\n")


def test_rejects_wrong_ranks():
    with pytest.raises(AlphabetError):
        sandwich_automorphism(Word(3, (1,)), ONE2)
    with pytest.raises(AlphabetError):
        Endomorphism3(Word(2, (1,)), Word(3, (2,)), Word(3, (3,)))
