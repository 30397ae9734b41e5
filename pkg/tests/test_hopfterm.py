import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from achopf.groupmodel import LinearMap, eval_term, make_group
from achopf.hopfterm import (
    GenSym,
    HopfTerm,
    TermError,
    TermSyntaxError,
    antipode_s0,
    compact,
    delta_n,
    duality,
    duality_inductive,
    format_term,
    gamma_nm,
    gen,
    ident,
    mu_n,
    parse_term,
    s_w,
    tensor_t,
    then,
    upsilon,
)
from achopf.words import Generator, Permutation, Word

GROUPS = [make_group(x) for x in ("z2", "z3", "s3")]


def random_term(rng, n_in, depth):
    """Random layered term with ``n_in`` inputs; widths stay at most 4."""
    t = ident(n_in)
    for _ in range(depth):
        width = t.n_out
        layer = []
        left = width
        while left > 0 or (not layer and rng.random() < 0.3):
            choices = [g for g in GenSym if g.n_in <= left]
            if width + sum(g.n_out - g.n_in for g in layer) >= 4:
                choices = [g for g in choices if g.n_out <= g.n_in]
            g = rng.choice(choices)
            layer.append(g)
            left -= g.n_in
            if left == 0 and rng.random() < 0.7:
                break
        t = then(t, HopfTerm(width, sum(g.n_out for g in layer), [layer]))
    return t


def test_arities():
    assert then(gen("uni"), gen("cou")).arity == (0, 0)
    assert tensor_t(ident(1), ident(1)).arity == (2, 2)
    assert [g.n_in for g in GenSym] == [1, 2, 1, 1, 2, 0, 1, 0, 1]
    assert [g.n_out for g in GenSym] == [1, 2, 2, 0, 1, 1, 1, 1, 0]
    with pytest.raises(TermError):
        then(gen("cop"), gen("ant"))
    with pytest.raises(TermError):
        HopfTerm(1, 1, [(GenSym.MUL,)])


def test_examples_evaluate():
    for G in GROUPS:
        assert eval_term(tensor_t(ident(1), ident(1)), G).is_identity()
        assert eval_term(then(gen("cop"), tensor_t(gen("cou"), ident(1))), G).is_identity()


def test_upsilon_basics():
    assert upsilon(Permutation.identity(4)) == ident(4)
    assert upsilon(Permutation([2, 1])) == gen("swap")


def _wire_map(t: HopfTerm, n):
    """Apply a pure wiring term to a list of labels."""
    wires = list(range(n))
    for layer in t.slices:
        out, p = [], 0
        for g in layer:
            if g is GenSym.ID:
                out.append(wires[p])
            else:
                out += [wires[p + 1], wires[p]]
            p += g.n_in
        wires = out
    return wires


@given(st.permutations(range(1, 6)))
def test_upsilon_sends_wire_i_to_sigma_i(images):
    sigma = Permutation(images)
    wires = _wire_map(upsilon(sigma), 5)
    assert all(wires[sigma(i + 1) - 1] == i for i in range(5))


@settings(max_examples=25, deadline=None)
@given(st.permutations(range(1, 6)), st.permutations(range(1, 6)))
def test_upsilon_coherence(p, q):
    s, t = Permutation(p), Permutation(q)
    G = make_group("z2")
    assert eval_term(upsilon(t.compose(s)), G) == eval_term(then(upsilon(s), upsilon(t)), G)


@given(st.permutations(range(1, 4)), st.permutations(range(1, 3)))
def test_upsilon_products(p, q):
    s, t = Permutation(p), Permutation(q)
    G = make_group("z3")
    assert eval_term(upsilon(s.product(t)), G) == eval_term(tensor_t(upsilon(s), upsilon(t)), G)


def test_gamma_block():
    assert _wire_map(gamma_nm(2, 1), 3) == [2, 0, 1]
    assert _wire_map(gamma_nm(1, 2), 3) == [1, 2, 0]


def test_iterated_builders():
    assert delta_n(0) == ident(1)
    assert delta_n(-1) == gen("cou")
    assert mu_n(0) == ident(1)
    assert mu_n(-1) == gen("uni")
    assert delta_n(2).arity == (1, 3) and mu_n(3).arity == (4, 1)
    with pytest.raises(TermError):
        delta_n(-2)
    G = make_group("z3")
    M = eval_term(delta_n(2), G)
    # g -> g (x) g (x) g
    assert M.entries == {(g * 9 + g * 3 + g, g): 1 for g in range(3)}


def test_sign_layers():
    a, b = Generator.internal("a"), Generator.internal("b")
    assert s_w(Word([(a, 1)])) == ident(1) or s_w(Word([(a, 1)])).slices == ((GenSym.ID,),)
    assert s_w(Word([(a, -1)])) == gen("ant")
    assert s_w(Word([(a, 1), (b, -1)])).slices == ((GenSym.ID, GenSym.ANT),)
    with pytest.raises(TermError):
        s_w(Word())


def test_duality_examples():
    for G in GROUPS:
        cof, form = duality(1)
        assert eval_term(then(tensor_t(cof, ident(1)), tensor_t(ident(1), form)), G).is_identity()
        N = G.order
        assert eval_term(cof, G) == LinearMap(N * N, 1, {(g * N + g, 0): 1 for g in range(N)})
    for n in (1, 2, 3):
        G = make_group("z2")
        ic, iform = duality_inductive(n)
        c, f = duality(n)
        assert eval_term(ic, G) == eval_term(c, G)
        assert eval_term(iform, G) == eval_term(f, G)
    with pytest.raises(TermError):
        duality(0)


def test_antipode_formula():
    assert eval_term(antipode_s0(), make_group("z2")).is_identity()
    assert eval_term(antipode_s0(), make_group("z3")) == LinearMap(3, 3, {(0, 0): 1, (2, 1): 1, (1, 2): 1})
    for G in GROUPS:
        assert eval_term(then(antipode_s0(), antipode_s0()), G).is_identity()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_interchange_law(seed):
    rng = random.Random(seed)
    f = random_term(rng, rng.randint(0, 2), rng.randint(1, 3))
    g = random_term(rng, rng.randint(0, 2), rng.randint(1, 3))
    G = make_group("z2")
    left = then(tensor_t(f, ident(g.n_in)), tensor_t(ident(f.n_out), g))
    right = then(tensor_t(ident(f.n_in), g), tensor_t(f, ident(g.n_out)))
    assert eval_term(left, G) == eval_term(tensor_t(f, g), G) == eval_term(right, G)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_compact_preserves_meaning(seed):
    rng = random.Random(seed)
    t = random_term(rng, rng.randint(0, 3), rng.randint(1, 5))
    c = compact(t)
    assert c.arity == t.arity and len(c.slices) <= len(t.slices)
    assert eval_term(c, make_group("s3")) == eval_term(t, make_group("s3"))


def test_parse_examples():
    t = parse_term("cop ; (cou * id)")
    assert t == then(gen("cop"), tensor_t(gen("cou"), ident(1)))
    assert t.arity == (1, 1)
    assert parse_term("id3") == ident(3)
    assert parse_term("(id * swap) ; (mul * id)").arity == (3, 2)


@pytest.mark.parametrize(
    "text, column",
    [("cop ; mul ; mul", 11), ("cop ; foo", 7), ("cop ; (cou * id", 16), ("cop $", 5), ("", 1)],
)
def test_parse_errors(text, column):
    with pytest.raises(TermSyntaxError) as err:
        parse_term(text)
    assert err.value.column == column


def test_parse_error_reports_line():
    with pytest.raises(TermSyntaxError) as err:
        parse_term("cop ;\n mul ;\n ant ; cop ; mul ; mul")
    assert err.value.line == 3


def test_print_parse_round_trip():
    rng = random.Random(9)
    for _ in range(50):
        t = random_term(rng, rng.randint(0, 3), rng.randint(0, 4))
        text = format_term(t)
        assert parse_term(text) == t
        assert format_term(parse_term(text)) == text


def test_count_and_widths():
    t = parse_term("cop ; (ant * id) ; mul")
    assert t.widths() == [1, 2, 2, 1]
    assert t.count(GenSym.ANT) == 1


def test_gensym_lookup():
    assert [GenSym.from_text(g.text) for g in GenSym] == list(GenSym)
    with pytest.raises(KeyError):
        GenSym.from_text("frob")
    assert list(itertools.chain(*parse_term("swap").slices)) == [GenSym.SWAP]
