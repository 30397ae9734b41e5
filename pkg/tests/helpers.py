"""Random presentations and moves shared by the property tests."""

import random

from hypothesis import strategies as st

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
    MoveError,
    apply_move,
)
from achopf.presentations import RelPresentation
from achopf.words import Generator, Word

BUILTIN = ("z2", "z3", "z6", "s3")


def make(n, m, internal_names, relator_letters):
    """Build from letter codes: ('a', i), ('b', i) or an internal name, with a sign."""
    src = [Generator.source(i + 1, f"a{i + 1}") for i in range(n)]
    tgt = [Generator.target(j + 1, f"b{j + 1}") for j in range(m)]
    ints = [Generator.internal(x) for x in internal_names]
    table = {("a", i + 1): g for i, g in enumerate(src)}
    table.update({("b", j + 1): g for j, g in enumerate(tgt)})
    table.update({x: g for x, g in zip(internal_names, ints)})
    rels = [Word((table[c], s) for c, s in r) for r in relator_letters]
    return RelPresentation(src, tgt, ints, rels)


def random_presentation(rng: random.Random, max_arity=2, max_int=2, max_rel=3, max_len=4, force_internal=False):
    n, m = rng.randint(0, max_arity), rng.randint(0, max_arity)
    k = rng.randint(1 if force_internal else 0, max_int)
    names = [f"x{i}" for i in range(k)]
    letters = [("a", i + 1) for i in range(n)] + [("b", j + 1) for j in range(m)] + names
    rels = []
    for _ in range(rng.randint(0, max_rel)):
        length = rng.randint(0, max_len) if letters else 0
        rels.append([(rng.choice(letters), rng.choice((1, -1))) for _ in range(length)])
    return make(n, m, names, rels)


@st.composite
def presentations(draw, max_arity=2, max_int=2, max_rel=3, max_len=4):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_presentation(random.Random(seed), max_arity, max_int, max_rel, max_len)


def candidate_moves(rng: random.Random, P: RelPresentation):
    """A shuffled list of moves of every kind; some may not apply."""
    gens = list(P.generators())
    rels = P.relators
    out = []
    fresh = P.fresh_internal("t")
    word = Word((rng.choice(gens), rng.choice((1, -1))) for _ in range(rng.randint(0, 3))) if gens else Word()
    out.append(Ac1Add(fresh, word, rng.randint(0, len(rels))))
    for i, r in enumerate(rels):
        out.append(Ac4Rotate(i, rng.randint(0, max(len(r), 1))))
        out.append(Ac5Invert(i))
        if gens:
            out.append(Ac2Insert(i, rng.randint(0, len(r)), rng.choice(gens), rng.choice((1, -1))))
        for p in range(len(r) - 1):
            out.append(Ac2Cancel(i, p))
        for j in range(len(rels)):
            if j != i:
                out.append(Ac3LeftMultiply(i, j))
        for g in P.internal:
            out.append(Ac7Eliminate(g, i))
            out.append(Ac1Remove(g, i))
    for g in P.internal:
        out.append(Ac6FlipInternal(g))
    rng.shuffle(out)
    return out


def random_applicable_move(rng: random.Random, P: RelPresentation):
    """Pick a move kind uniformly among the kinds that apply, then an instance."""
    by_kind = {}
    for move in candidate_moves(rng, P):
        try:
            result = apply_move(P, move)
        except MoveError:
            continue
        by_kind.setdefault(type(move).__name__, []).append((move, result))
    if not by_kind:
        raise AssertionError("no applicable move")
    return rng.choice(by_kind[rng.choice(sorted(by_kind))])
