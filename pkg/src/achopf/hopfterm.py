"""Morphisms of the free symmetric monoidal category on a unimodular
cocommutative Hopf algebra, as layered terms over the elementary generators.

A term is a list of layers; every layer lists generators left to right and
covers every wire, so identity wires appear explicitly as ``ID``.
``then(f, g)`` is diagrammatic composition (``f`` first).
"""

from __future__ import annotations

import re
from enum import Enum
from typing import Iterable, Sequence

from achopf.words import Permutation, Word, WordSyntaxError

__all__ = [
    "GenSym",
    "HopfTerm",
    "TermError",
    "TermSyntaxError",
    "gen",
    "ident",
    "then",
    "then_all",
    "tensor_t",
    "tensor_all",
    "tensor_power",
    "upsilon",
    "gamma_nm",
    "delta_n",
    "mu_n",
    "s_w",
    "duality",
    "duality_inductive",
    "antipode_s0",
    "antipode_s0_mirror",
    "strip_identity_layers",
    "compact",
    "parse_term",
    "format_term",
]


class GenSym(Enum):
    ID = ("id", 1, 1)
    SWAP = ("swap", 2, 2)
    COP = ("cop", 1, 2)
    COU = ("cou", 1, 0)
    MUL = ("mul", 2, 1)
    UNI = ("uni", 0, 1)
    ANT = ("ant", 1, 1)
    INT = ("int", 0, 1)
    COI = ("coi", 1, 0)

    def __init__(self, text: str, n_in: int, n_out: int):
        self.text = text
        self.n_in = n_in
        self.n_out = n_out

    @classmethod
    def from_text(cls, text: str) -> "GenSym":
        for g in cls:
            if g.text == text:
                return g
        raise KeyError(text)


class TermError(ValueError):
    pass


class TermSyntaxError(WordSyntaxError):
    pass


class HopfTerm:
    __slots__ = ("n_in", "n_out", "slices")

    def __init__(self, n_in: int, n_out: int, slices: Iterable[Sequence[GenSym]] = ()):
        layers = tuple(tuple(layer) for layer in slices)
        layers = tuple(layer for layer in layers if layer)
        width = n_in
        for k, layer in enumerate(layers):
            need = sum(g.n_in for g in layer)
            if need != width:
                raise TermError(f"layer {k} consumes {need} wires but {width} are available")
            width = sum(g.n_out for g in layer)
        if width != n_out:
            raise TermError(f"term produces {width} wires, declared {n_out}")
        if n_in < 0 or n_out < 0:
            raise TermError("arities must be nonnegative")
        object.__setattr__(self, "n_in", n_in)
        object.__setattr__(self, "n_out", n_out)
        object.__setattr__(self, "slices", layers)

    def __setattr__(self, key, value):
        raise AttributeError("HopfTerm is immutable")

    @property
    def arity(self) -> tuple[int, int]:
        return self.n_in, self.n_out

    def __eq__(self, other):
        if not isinstance(other, HopfTerm):
            return NotImplemented
        return (self.n_in, self.n_out, self.slices) == (other.n_in, other.n_out, other.slices)

    def __hash__(self):
        return hash((self.n_in, self.n_out, self.slices))

    def __repr__(self):
        return f"HopfTerm({format_term(self)!r})"

    def __str__(self):
        return format_term(self)

    def widths(self) -> list[int]:
        """Wire count before each layer, then after the last."""
        out = [self.n_in]
        for layer in self.slices:
            out.append(sum(g.n_out for g in layer))
        return out

    def count(self, g: GenSym) -> int:
        return sum(layer.count(g) for layer in self.slices)


def gen(g: GenSym | str) -> HopfTerm:
    if isinstance(g, str):
        g = GenSym.from_text(g)
    return HopfTerm(g.n_in, g.n_out, [(g,)])


def ident(n: int) -> HopfTerm:
    """Identity on ``n`` wires, with no layers."""
    return HopfTerm(n, n, ())


def then(f: HopfTerm, g: HopfTerm) -> HopfTerm:
    if f.n_out != g.n_in:
        raise TermError(f"cannot compose {f.n_in}->{f.n_out} with {g.n_in}->{g.n_out}")
    return HopfTerm(f.n_in, g.n_out, f.slices + g.slices)


def then_all(*terms: HopfTerm) -> HopfTerm:
    out = terms[0]
    for t in terms[1:]:
        out = then(out, t)
    return out


def tensor_t(f: HopfTerm, g: HopfTerm) -> HopfTerm:
    depth = max(len(f.slices), len(g.slices))
    wf, wg = f.widths(), g.widths()
    layers = []
    for k in range(depth):
        left = f.slices[k] if k < len(f.slices) else (GenSym.ID,) * wf[-1]
        right = g.slices[k] if k < len(g.slices) else (GenSym.ID,) * wg[-1]
        layers.append(left + right)
    return HopfTerm(f.n_in + g.n_in, f.n_out + g.n_out, layers)


def tensor_all(terms: Iterable[HopfTerm]) -> HopfTerm:
    out = ident(0)
    for t in terms:
        out = tensor_t(out, t)
    return out


def tensor_power(t: HopfTerm, n: int) -> HopfTerm:
    return tensor_all([t] * n)


def upsilon(sigma: Permutation) -> HopfTerm:
    """Wire permutation sending wire ``i`` to position ``sigma(i)``.

    Built by insertion sort; each adjacent swap is its own layer.
    """
    n = sigma.size
    cur = list(range(1, n + 1))  # cur[p] = original wire now at position p
    layers = []
    for j in range(1, n):
        k = j
        while k > 0 and sigma(cur[k - 1]) > sigma(cur[k]):
            cur[k - 1], cur[k] = cur[k], cur[k - 1]
            layers.append((GenSym.ID,) * (k - 1) + (GenSym.SWAP,) + (GenSym.ID,) * (n - k - 1))
            k -= 1
    return HopfTerm(n, n, layers)


def gamma_nm(n: int, m: int) -> HopfTerm:
    """Block braiding moving the first ``n`` wires past the last ``m``."""
    images = [m + i for i in range(1, n + 1)] + list(range(1, m + 1))
    return upsilon(Permutation(images))


def delta_n(n: int) -> HopfTerm:
    """Iterated comultiplication ``1 -> n+1``; ``delta_n(-1)`` is the counit."""
    if n < -1:
        raise TermError("delta_n needs n >= -1")
    if n == -1:
        return gen(GenSym.COU)
    out = ident(1)
    for _ in range(n):
        out = then(gen(GenSym.COP), tensor_t(out, ident(1)))
    return out


def mu_n(n: int) -> HopfTerm:
    """Iterated multiplication ``n+1 -> 1``; ``mu_n(-1)`` is the unit."""
    if n < -1:
        raise TermError("mu_n needs n >= -1")
    if n == -1:
        return gen(GenSym.UNI)
    out = ident(1)
    for _ in range(n):
        out = then(tensor_t(out, ident(1)), gen(GenSym.MUL))
    return out


def s_w(w: Word) -> HopfTerm:
    """Identity on positive letters, antipode on negative ones."""
    if len(w) == 0:
        raise TermError("s_w needs a nonempty word")
    layer = tuple(GenSym.ID if s == 1 else GenSym.ANT for _, s in w)
    return HopfTerm(len(w), len(w), [layer])


def s_signs(signs: Sequence[int]) -> HopfTerm:
    if not signs:
        return ident(0)
    return HopfTerm(len(signs), len(signs), [tuple(GenSym.ID if s == 1 else GenSym.ANT for s in signs)])


def interleave(n: int) -> Permutation:
    """``2i-1 -> i`` and ``2i -> n+i``."""
    images = [0] * (2 * n)
    for i in range(1, n + 1):
        images[2 * i - 2] = i
        images[2 * i - 1] = n + i
    return Permutation(images)


def _coform() -> HopfTerm:
    return then(gen(GenSym.INT), gen(GenSym.COP))


def _form() -> HopfTerm:
    return then_all(tensor_t(ident(1), gen(GenSym.ANT)), gen(GenSym.MUL), gen(GenSym.COI))


def duality(n: int) -> tuple[HopfTerm, HopfTerm]:
    """Coform ``0 -> 2n`` and form ``2n -> 0`` on ``n`` wires."""
    if n <= 0:
        raise TermError("duality needs n >= 1")
    pi = interleave(n)
    coform = then_all(
        tensor_power(gen(GenSym.INT), n),
        tensor_power(gen(GenSym.COP), n),
        upsilon(pi),
    )
    form = then(upsilon(pi.inverse()), tensor_power(_form(), n))
    return coform, form


def duality_inductive(n: int) -> tuple[HopfTerm, HopfTerm]:
    """The same pair built recursively from the one-wire form and coform."""
    if n <= 0:
        raise TermError("duality needs n >= 1")
    coform, form = _coform(), _form()
    for k in range(2, n + 1):
        shuffle = tensor_all([ident(k - 1), gamma_nm(k - 1, 1), ident(1)])
        coform = then(tensor_t(coform, _coform()), shuffle)
        form = then(tensor_all([ident(k - 1), gamma_nm(1, k - 1), ident(1)]), tensor_t(form, _form()))
    return coform, form


def antipode_s0() -> HopfTerm:
    """Antipode rebuilt from integral and cointegral."""
    lm = then(gen(GenSym.MUL), gen(GenSym.COI))
    return then_all(
        tensor_t(_coform(), ident(1)),
        tensor_t(ident(1), gen(GenSym.SWAP)),
        tensor_t(lm, ident(1)),
    )


def antipode_s0_mirror() -> HopfTerm:
    lm = then(gen(GenSym.MUL), gen(GenSym.COI))
    return then_all(
        tensor_t(ident(1), _coform()),
        tensor_t(gen(GenSym.SWAP), ident(1)),
        tensor_t(ident(1), lm),
    )


def _lift(upper: tuple, lower: tuple):
    """Move one generator of ``lower`` into ``upper`` where ``upper`` only has identity wires."""
    ends = [0]
    for g in upper:
        ends.append(ends[-1] + g.n_out)
    pos = 0
    for idx, g in enumerate(lower):
        start, pos = pos, pos + g.n_in
        if g is GenSym.ID:
            continue
        if start not in ends or pos not in ends:
            continue
        i, j = ends.index(start), ends.index(pos)
        if g.n_in == 0:
            # a boundary may repeat after zero-output generators; take the last one
            i = j = len(ends) - 1 - ends[::-1].index(start)
        if all(h is GenSym.ID for h in upper[i:j]):
            return upper[:i] + (g,) + upper[j:], lower[:idx] + (GenSym.ID,) * g.n_out + lower[idx + 1 :]
    return None


def compact(t: HopfTerm) -> HopfTerm:
    """Shift generators to earlier layers across identity wires, then drop identity layers.

    Printing aid only; equal terms may compact differently.
    """
    layers = list(t.slices)
    moved = True
    while moved:
        moved = False
        for k in range(1, len(layers)):
            step = _lift(layers[k - 1], layers[k])
            if step is not None:
                layers[k - 1], layers[k] = step
                moved = True
                break
    return strip_identity_layers(HopfTerm(t.n_in, t.n_out, layers))


def strip_identity_layers(t: HopfTerm) -> HopfTerm:
    """Drop layers made only of identity wires (printing aid, not an equality test)."""
    return HopfTerm(t.n_in, t.n_out, [layer for layer in t.slices if any(g is not GenSym.ID for g in layer)])


# -- text syntax ----------------------------------------------------------------

_TERM_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[;*()])|(?P<end>\Z)|(?P<bad>\S))")


def _tokens(text: str):
    pos = 0
    while True:
        m = _TERM_TOKEN.match(text, pos)
        kind = m.lastgroup
        start = m.start(kind)
        if kind == "end":
            yield ("end", "", start)
            return
        if kind == "bad":
            raise TermSyntaxError(f"unexpected character {m.group('bad')!r}", text, start)
        yield (kind, m.group(kind), start)
        pos = m.end()


class _TermParser:
    def __init__(self, text: str):
        self.text = text
        self.toks = list(_tokens(text))
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expr(self) -> HopfTerm:
        left = self.product()
        while self.peek()[:2] == ("op", ";"):
            pos = self.take()[2]
            right = self.product()
            if left.n_out != right.n_in:
                raise TermSyntaxError(
                    f"arity mismatch: left side has {left.n_out} outputs, right side {right.n_in} inputs", self.text, pos
                )
            left = then(left, right)
        return left

    def product(self) -> HopfTerm:
        left = self.atom()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            left = tensor_t(left, self.atom())
        return left

    def atom(self) -> HopfTerm:
        kind, value, pos = self.take()
        if kind == "name":
            m = re.fullmatch(r"id(\d+)", value)
            if m:
                return ident(int(m.group(1)))
            try:
                return gen(GenSym.from_text(value))
            except KeyError:
                raise TermSyntaxError(f"unknown generator {value!r}", self.text, pos) from None
        if (kind, value) == ("op", "("):
            inner = self.expr()
            kind2, value2, pos2 = self.take()
            if (kind2, value2) != ("op", ")"):
                raise TermSyntaxError("expected ')'", self.text, pos2)
            return inner
        if kind == "end":
            raise TermSyntaxError("unexpected end of term", self.text, pos)
        raise TermSyntaxError(f"unexpected {value!r}", self.text, pos)


def parse_term(text: str) -> HopfTerm:
    """Parse e.g. ``"cop ; (cou * id)"``: ``;`` composes left to right, ``*`` tensors."""
    p = _TermParser(text)
    t = p.expr()
    kind, value, pos = p.peek()
    if kind != "end":
        raise TermSyntaxError(f"unexpected {value!r}", text, pos)
    return t


def format_term(t: HopfTerm) -> str:
    if not t.slices:
        return f"id{t.n_in}"
    return " ; ".join(" * ".join(g.text for g in layer) for layer in t.slices)
