"""Frozen presentations used by the round-trip, oracle and identity-law checks.

Arity at most 2 on each side, at most 2 internal generators, relators of
length at most 4.
"""

from achopf.presentations import parse_presentation

CORPUS_TEXT = [
    "< a ; b ; | a b^-1 >",
    "< a ; b ; | a b >",
    "< a ; b1, b2 ; | a b1^-1, a b2^-1 >",
    "< a1, a2 ; b ; | a1 a2 b^-1 >",
    "< a ; ; | a >",
    "< ; b ; | b >",
    "< a ; ; | >",
    "< ; b ; | >",
    "< ; ; x | x^2 >",
    "< ; ; x, y | x^2 y^-3 >",
    "< ; ; x | >",
    "< ; ; | 1 >",
    "< a ; b ; c | a c^-1, c b^-1 >",
    "< a ; b ; c | a c a^-1 b^-1 >",
    "< a1, a2 ; b1, b2 ; | a2 b1^-1, a1 b2^-1 >",
    "< a1, a2 ; b1, b2 ; | a1 a2 b1^-1, a2 a1 b2^-1 >",
    "< a ; b ; x | x a x^-1 b^-1, x^2 >",
    "< a ; b ; | a^2 b^-2 >",
    "< a1, a2 ; b ; x, y | x y a1^-1, y a2 b^-1 >",
    "< ; b1, b2 ; x | x b1, x^-1 b2 >",
]


def corpus():
    return [parse_presentation(t) for t in CORPUS_TEXT]
