import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from achopf.words import (
    Generator,
    Permutation,
    Word,
    WordSyntaxError,
    concat,
    format_word,
    free_cyclic_reduce,
    invert_word,
    parse_word,
    permute_word,
)

a, b, c = (Generator.internal(x) for x in "abc")
ALPHABET = [a, b, c]


def w(text):
    return parse_word(text)


def all_reductions(letters):
    """Every word reachable by cancelling pairs in any order (brute force)."""
    seen, stack, finals = set(), [tuple(letters)], set()
    while stack:
        cur = stack.pop()
        if cur in seen:
            continue
        seen.add(cur)
        moved = False
        for i in range(len(cur) - 1):
            if cur[i][0] == cur[i + 1][0] and cur[i][1] == -cur[i + 1][1]:
                stack.append(cur[:i] + cur[i + 2 :])
                moved = True
        if not moved:
            finals.add(cur)
    return finals


words = st.lists(st.tuples(st.sampled_from(ALPHABET), st.sampled_from([1, -1])), max_size=12).map(Word)


def test_concat_examples():
    assert concat(w("a b^-1"), w("b")) == w("a b^-1 b")
    assert concat(Word(), w("a b")) == w("a b")
    assert concat(w("a"), w("a")) == w("a^2")
    assert len(concat(w("a b"), w("c"))) == 3


def test_invert_examples():
    assert invert_word(w("a b^-1")) == w("b a^-1")
    assert invert_word(Word()) == Word()
    assert invert_word(w("a a")) == w("a^-1 a^-1")


def test_reduce_examples():
    assert free_cyclic_reduce(w("a b b^-1 a")) == w("a a")
    assert free_cyclic_reduce(w("b^-1 a b"), "free+cyclic") == w("a")
    assert free_cyclic_reduce(w("a b a^-1")) == w("a b a^-1")
    assert free_cyclic_reduce(w("a b a^-1"), "free+cyclic") == w("b")


def test_reduce_rejects_unknown_mode():
    with pytest.raises(ValueError):
        free_cyclic_reduce(w("a"), "tietze")


def test_free_reduction_confluent_exhaustive():
    # every order of cancellation ends at the same word, lengths up to 6 over {a, b}
    letters = [(a, 1), (a, -1), (b, 1), (b, -1)]
    for n in range(7):
        for combo in itertools.product(letters, repeat=n):
            finals = all_reductions(combo)
            assert len(finals) == 1
            assert free_cyclic_reduce(Word(combo)).letters == next(iter(finals))


def _restricted_growth(n, k):
    """Sequences over 1..k where each new value is one more than the largest so far."""
    def grow(prefix, top):
        if len(prefix) == n:
            yield prefix
            return
        for v in range(1, min(top + 1, k) + 1):
            yield from grow(prefix + (v,), max(top, v))
    yield from grow((), 0)


def test_reduce_idempotent_exhaustive():
    # The wrapper relabels generators by first appearance before calling the
    # kernel, so words over <= 3 generators of length <= 10 are covered
    # exactly by the code tuples in first-appearance form.
    from achopf import _kernels

    checked = 0
    for n in range(11):
        signs = list(itertools.product((1, -1), repeat=n))
        for pattern in _restricted_growth(n, 3):
            for sg in signs:
                code = tuple(p * s for p, s in zip(pattern, sg))
                r = _kernels.free_reduce(code)
                assert _kernels.free_reduce(r) == r
                r = _kernels.cyclic_reduce(code)
                assert _kernels.cyclic_reduce(r) == r
                checked += 1
    assert checked == sum(2**n * sum(_stirling2(n, j) for j in range(4)) for n in range(11))


def _stirling2(n, k):
    if n == k:
        return 1
    if n == 0 or k == 0:
        return 0
    return k * _stirling2(n - 1, k) + _stirling2(n - 1, k - 1)


@given(words)
def test_word_reduction_matches_kernel_codes(x):
    from achopf import _kernels

    codes = {}
    packed = tuple((codes.setdefault(g, len(codes) + 1)) * s for g, s in x)
    back = {v: g for g, v in codes.items()}
    red = free_cyclic_reduce(x, "free+cyclic")
    assert red.letters == tuple((back[abs(v)], 1 if v > 0 else -1) for v in _kernels.cyclic_reduce(packed))


@given(words)
def test_cyclic_reduction_has_no_boundary_pair(x):
    r = free_cyclic_reduce(x, "free+cyclic")
    assert free_cyclic_reduce(r) == r
    if len(r) >= 2:
        assert not (r[0][0] == r[-1][0] and r[0][1] == -r[-1][1])


@given(words, words)
def test_invert_antidistributes(u, v):
    assert invert_word(concat(u, v)) == concat(invert_word(v), invert_word(u))
    assert invert_word(invert_word(u)) == u


def test_permute_examples():
    assert permute_word(Permutation([2, 1]), w("a b^-1")) == w("b^-1 a")
    assert permute_word(Permutation([1, 2, 3]), w("a b c")) == w("a b c")
    sigma = Permutation([3, 1, 2])
    x = w("a b c")
    out = permute_word(sigma, x)
    assert out == w("b c a")
    # independent formula: position i of the result holds letter sigma^-1(i)
    inv = sigma.inverse()
    assert out.letters == tuple(x[inv(i) - 1] for i in range(1, 4))


def test_permute_size_mismatch():
    with pytest.raises(ValueError):
        permute_word(Permutation([1, 2]), w("a"))


@given(st.integers(1, 8).flatmap(lambda n: st.tuples(st.permutations(range(1, n + 1)), st.permutations(range(1, n + 1)))),
       st.data())
def test_permute_is_left_action(pair, data):
    s1, s2 = Permutation(pair[0]), Permutation(pair[1])
    n = s1.size
    x = data.draw(st.lists(st.tuples(st.sampled_from(ALPHABET), st.sampled_from([1, -1])), min_size=n, max_size=n).map(Word))
    assert permute_word(s2.compose(s1), x) == permute_word(s2, permute_word(s1, x))
    for g in ALPHABET:
        assert permute_word(s1, x).count(g) == x.count(g)


def test_permutation_validation_and_compose():
    with pytest.raises(ValueError):
        Permutation([1, 1])
    s, t = Permutation([2, 3, 1]), Permutation([1, 3, 2])
    assert all(s.compose(t)(i) == s(t(i)) for i in range(1, 4))
    assert s.compose(s.inverse()).is_identity()


def test_parse_syntax():
    assert w("a b' c^3") == Word([(a, 1), (b, -1), (c, 1), (c, 1), (c, 1)])
    assert w("1") == Word()
    assert w("a^-2") == Word([(a, -1), (a, -1)])
    assert w("a^0 b") == w("b")


@given(words)
def test_print_parse_round_trip(x):
    assert parse_word(format_word(x)) == x


def test_parse_error_positions():
    with pytest.raises(WordSyntaxError) as err:
        parse_word("a b $")
    assert (err.value.line, err.value.column) == (1, 5)
    with pytest.raises(WordSyntaxError) as err:
        parse_word("^2")
    assert err.value.column == 1
    table = {"a": a}
    with pytest.raises(WordSyntaxError, match="undeclared generator 'q'"):
        parse_word("a q", table.__getitem__)


def test_generator_identity():
    assert Generator.source(1, "x") == Generator.source(1, "y")
    assert Generator.source(1) != Generator.target(1)
    assert Generator.internal("c") == Generator.internal("c")
    with pytest.raises(ValueError):
        Generator.source(0)


def test_word_counts():
    x = w("a b^-1 a^-1")
    assert x.count(a) == 2 and x.count(b) == 1 and x.count(c) == 0
    assert x.generators() == {a, b}
