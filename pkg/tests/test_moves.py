import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from achopf.groupmodel import builtin_groups, hom_oracle
from achopf.moves import (
    Ac1Add,
    Ac1Remove,
    Ac2Cancel,
    Ac2Insert,
    Ac3LeftMultiply,
    Ac4Rotate,
    Ac5Invert,
    Ac6FlipInternal,
    Ac7Eliminate,
    Ac7Introduce,
    MoveError,
    apply_move,
    apply_moves,
    inverse_moves,
    move_from_json,
    move_to_json,
)
from achopf.presentations import canonical_key, parse_presentation
from achopf.words import Generator, parse_word

from helpers import random_applicable_move, random_presentation

P_ = parse_presentation
c = Generator.internal("c")


def test_spec_examples():
    P = P_("< a ; b ; | a b^-1 >")
    a = P.source[0]
    assert apply_move(P, Ac1Add(c, parse_word("a", {"a": a}.__getitem__))) == P_("< a ; b ; c | c a, a b^-1 >")
    Q = P_("< a ; b ; c | a c^-1, c b^-1 >")
    assert apply_move(Q, Ac7Eliminate(c, 0)) == P
    assert apply_move(P, Ac5Invert(0)) == P_("< a ; b ; | b a^-1 >")


def test_each_move_shape():
    P = P_("< a ; b ; c | c a b, a b^-1 >")
    assert apply_move(P, Ac2Insert(1, 1, c, -1)).relators[1] == P_("< a ; b ; c | a c^-1 c b^-1 >").relators[0]
    R = apply_move(P, Ac3LeftMultiply(1, 0))
    assert R.relators[1] == P_("< a ; b ; c | c a b a b^-1 >").relators[0]
    assert apply_move(P, Ac4Rotate(0, 1)).relators[0] == P_("< a ; b ; c | a b c >").relators[0]
    assert apply_move(P, Ac6FlipInternal(c)) == P_("< a ; b ; c | c^-1 a b, a b^-1 >")
    assert apply_move(P, Ac1Remove(c, 0)) == P_("< a ; b ; | a b^-1 >")
    T = P_("< a ; b ; | a b b^-1 a >")
    assert apply_move(T, Ac2Cancel(0, 1)) == P_("< a ; b ; | a^2 >")


def test_elimination_substitutes_without_reduction():
    P = P_("< a ; b ; c | a c b, c^-1 a >")
    # c = a^-1 b^-1 from the first relator; substituted into the second
    assert apply_move(P, Ac7Eliminate(c, 0)) == P_("< a ; b ; | b a a >")
    P = P_("< a ; b ; c | a c^-1 b, c a >")
    # c^-1 case: c = b a
    assert apply_move(P, Ac7Eliminate(c, 0)) == P_("< a ; b ; | b a a >")


@pytest.mark.parametrize(
    "text, move, needle",
    [
        ("< a ; b ; c | a c, c b >", Ac1Remove(c, 0), "does not start"),
        ("< a ; b ; c | c a, c b >", Ac1Remove(c, 0), "occurs elsewhere"),
        ("< a ; b ; | a b >", Ac2Cancel(0, 0), "not mutually inverse"),
        ("< a ; b ; | a b >", Ac2Insert(0, 5, Generator.source(1), 1), "out of range"),
        ("< a ; b ; | a b >", Ac3LeftMultiply(0, 0), "distinct"),
        ("< a ; b ; | a b >", Ac4Rotate(3, 0), "out of range"),
        ("< a ; b ; c | c c a >", Ac7Eliminate(c, 0), "exactly one"),
        ("< a ; b ; | a b >", Ac6FlipInternal(c), "internal"),
        ("< a ; b ; c | c a >", Ac1Add(c, parse_word("1")), "already"),
    ],
)
def test_preconditions(text, move, needle):
    with pytest.raises(MoveError, match=needle):
        apply_move(P_(text), move)


def test_introduce_validates_restored_words():
    P = P_("< a ; b ; | a b^-1 >")
    a, b = P.source[0], P.target[0]
    table = {"a": a, "b": b, "c": c}.__getitem__
    good = Ac7Introduce(c, parse_word("a c^-1", table), 0, ((0, parse_word("c b^-1", table)),))
    assert apply_move(P, good) == P_("< a ; b ; c | a c^-1, c b^-1 >")
    bad = Ac7Introduce(c, parse_word("a c^-1", table), 0, ((0, parse_word("b c^-1", table)),))
    with pytest.raises(MoveError, match="substitute back"):
        apply_move(P, bad)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_inverse_restores_layout(seed):
    rng = random.Random(seed)
    P = random_presentation(rng, max_int=3, max_rel=4, max_len=5)
    move, Q = random_applicable_move(rng, P)
    back = apply_moves(Q, inverse_moves(P, move))
    assert back.layout_equal(P)
    assert canonical_key(back) == canonical_key(P)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_moves_preserve_oracle(seed):
    rng = random.Random(seed)
    P = random_presentation(rng, max_arity=1, max_int=2, max_rel=3, max_len=4)
    _, Q = random_applicable_move(rng, P)
    for G in builtin_groups():
        assert hom_oracle(P, G) == hom_oracle(Q, G)


def test_json_round_trip():
    rng = random.Random(2)
    for _ in range(200):
        P = random_presentation(rng, max_int=3)
        move, Q = random_applicable_move(rng, P)
        for m in [move] + inverse_moves(P, move):
            data = json.loads(json.dumps(move_to_json(m)))
            assert move_from_json(data) == m
        assert apply_move(P, move_from_json(move_to_json(move))) == Q
