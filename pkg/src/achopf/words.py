"""Signed words over generator alphabets and the symmetric-group action on them."""

from __future__ import annotations

import re
from enum import Enum
from typing import Callable, Iterable, Iterator, Sequence

from achopf import _kernels

__all__ = [
    "Kind",
    "Generator",
    "Word",
    "Permutation",
    "concat",
    "invert_word",
    "free_cyclic_reduce",
    "permute_word",
    "parse_word",
    "format_word",
    "WordSyntaxError",
]


class Kind(str, Enum):
    SOURCE = "source"
    TARGET = "target"
    INTERNAL = "internal"


class Generator:
    """A generator letter.

    External generators (source/target) are identified by their 1-based
    position; ``name`` is only a display label for them.  Internal generators
    are identified by name.
    """

    __slots__ = ("kind", "index", "name", "_key")

    def __init__(self, kind: Kind | str, index: int = 0, name: str | None = None):
        kind = Kind(kind)
        if kind is Kind.INTERNAL:
            if not name:
                raise ValueError("internal generators need a name")
            index = 0
            key = (kind.value, name)
        else:
            if index < 1:
                raise ValueError(f"external generator index must be >= 1, got {index}")
            if name is None:
                name = ("a" if kind is Kind.SOURCE else "b") + str(index)
            key = (kind.value, index)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "_key", key)

    @classmethod
    def source(cls, index: int, name: str | None = None) -> "Generator":
        return cls(Kind.SOURCE, index, name)

    @classmethod
    def target(cls, index: int, name: str | None = None) -> "Generator":
        return cls(Kind.TARGET, index, name)

    @classmethod
    def internal(cls, name: str) -> "Generator":
        return cls(Kind.INTERNAL, 0, name)

    @property
    def external(self) -> bool:
        return self.kind is not Kind.INTERNAL

    def __setattr__(self, key, value):
        raise AttributeError("Generator is immutable")

    def __eq__(self, other):
        if not isinstance(other, Generator):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __lt__(self, other: "Generator") -> bool:
        return self._key < other._key

    def __repr__(self):
        if self.kind is Kind.INTERNAL:
            return f"Generator.internal({self.name!r})"
        return f"Generator.{self.kind.value}({self.index}, {self.name!r})"

    def to_json(self) -> list:
        return [self.kind.value, self.name] if self.kind is Kind.INTERNAL else [self.kind.value, self.index]

    @classmethod
    def from_json(cls, data: Sequence) -> "Generator":
        kind, ident = data[0], data[1]
        if Kind(kind) is Kind.INTERNAL:
            return cls.internal(str(ident))
        return cls(kind, int(ident))


Letter = tuple  # (Generator, sign) with sign in {+1, -1}


class Word:
    """Immutable sequence of ``(generator, sign)`` letters."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[tuple[Generator, int]] = ()):
        letters = tuple((g, int(s)) for g, s in letters)
        for g, s in letters:
            if s not in (1, -1):
                raise ValueError(f"letter sign must be +1 or -1, got {s}")
            if not isinstance(g, Generator):
                raise TypeError(f"expected Generator, got {type(g).__name__}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def _trusted(cls, letters: tuple) -> "Word":
        w = object.__new__(cls)
        object.__setattr__(w, "letters", letters)
        return w

    @classmethod
    def of(cls, *items: Generator | tuple[Generator, int]) -> "Word":
        """``Word.of(a, (b, -1))`` builds ``a b^-1``."""
        letters = []
        for item in items:
            letters.append((item, 1) if isinstance(item, Generator) else item)
        return cls(letters)

    def __setattr__(self, key, value):
        raise AttributeError("Word is immutable")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[tuple[Generator, int]]:
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word._trusted(self.letters[item])
        return self.letters[item]

    def __add__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __repr__(self):
        return f"Word({format_word(self)!r})"

    def __str__(self):
        return format_word(self)

    def inverse(self) -> "Word":
        return invert_word(self)

    def count(self, g: Generator) -> int:
        """Number of letters on ``g`` regardless of sign."""
        return sum(1 for h, _ in self.letters if h == g)

    def generators(self) -> set[Generator]:
        return {g for g, _ in self.letters}

    def rotate(self, offset: int) -> "Word":
        if not self.letters:
            return self
        k = offset % len(self.letters)
        return Word._trusted(self.letters[k:] + self.letters[:k])

    def substitute(self, g: Generator, replacement: "Word") -> "Word":
        """Replace every ``g`` by ``replacement`` and ``g^-1`` by its inverse."""
        inv = replacement.inverse().letters
        out: list = []
        for h, s in self.letters:
            if h == g:
                out.extend(replacement.letters if s == 1 else inv)
            else:
                out.append((h, s))
        return Word._trusted(tuple(out))

    def rename(self, mapping: dict) -> "Word":
        return Word._trusted(tuple((mapping.get(g, g), s) for g, s in self.letters))


def concat(w1: Word, w2: Word) -> Word:
    return Word._trusted(w1.letters + w2.letters)


def invert_word(w: Word) -> Word:
    return Word._trusted(tuple((g, -s) for g, s in reversed(w.letters)))


def free_cyclic_reduce(w: Word, mode: str = "free") -> Word:
    """Cancel adjacent inverse pairs; ``mode="cyclic"`` also cancels across the ends."""
    if mode not in ("free", "cyclic", "free+cyclic"):
        raise ValueError(f"unknown reduction mode {mode!r}")
    codes: dict[Generator, int] = {}
    gens: list[Generator] = []
    packed = []
    for g, s in w.letters:
        c = codes.get(g)
        if c is None:
            c = codes[g] = len(gens) + 1
            gens.append(g)
        packed.append(c * s)
    if mode == "free":
        red = _kernels.free_reduce(tuple(packed))
    else:
        red = _kernels.cyclic_reduce(tuple(packed))
    return Word._trusted(tuple((gens[abs(x) - 1], 1 if x > 0 else -1) for x in red))


class Permutation:
    """Bijection of ``{1..n}`` stored as its image table."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(int(i) for i in images)
        n = len(images)
        if sorted(images) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {images}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, key, value):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def from_mapping(cls, n: int, mapping: dict[int, int]) -> "Permutation":
        return cls([mapping.get(i, i) for i in range(1, n + 1)])

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        return cls.from_mapping(n, {i: j, j: i})

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __len__(self):
        return len(self.images)

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({list(self.images)})"

    def compose(self, other: "Permutation") -> "Permutation":
        """``self.compose(other)(i) == self(other(i))``."""
        if self.size != other.size:
            raise ValueError("cannot compose permutations of different sizes")
        return Permutation([self.images[j - 1] for j in other.images])

    __matmul__ = compose

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, start=1))

    def product(self, other: "Permutation") -> "Permutation":
        """Block product: ``self`` on the first ``n`` points, ``other`` shifted after."""
        n = self.size
        return Permutation(list(self.images) + [n + j for j in other.images])

    def act(self, items: Sequence) -> tuple:
        """Left action: the element at position ``i`` moves to position ``self(i)``."""
        if len(items) != self.size:
            raise ValueError(f"permutation of size {self.size} applied to {len(items)} items")
        out = [None] * self.size
        for i, x in enumerate(items):
            out[self.images[i] - 1] = x
        return tuple(out)


def permute_word(sigma: Permutation, w: Word) -> Word:
    if sigma.size != len(w):
        raise ValueError(f"permutation size {sigma.size} does not match word length {len(w)}")
    return Word._trusted(sigma.act(w.letters))


class WordSyntaxError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.text = text
        self.pos = pos
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line, self.column = line, col
        super().__init__(f"{message} at line {line}, column {col}")


_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<pow>\^\s*[-+]?\s*\d+)|(?P<prime>')|(?P<one>1(?![0-9]))|(?P<sep>[*.])|(?P<bad>\S))")


def parse_word(text: str, resolve: Callable[[str], Generator] | None = None, *, offset: int = 0) -> Word:
    """Parse ``"a b^-1 c^3"`` / ``"a b' c"``; ``"1"`` is the empty word.

    ``resolve`` maps identifiers to generators (default: internal generators
    named after the identifier).  It may raise ``KeyError`` for undeclared
    names.
    """
    if resolve is None:
        resolve = Generator.internal
    letters: list = []
    pos = 0
    last: int | None = None  # start of the current factor in ``letters``
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        kind = m.lastgroup
        start = m.start(kind)
        if kind == "ident":
            name = m.group("ident")
            try:
                g = resolve(name)
            except KeyError:
                raise WordSyntaxError(f"undeclared generator {name!r}", text, offset + start) from None
            last = len(letters)
            letters.append((g, 1))
        elif kind in ("pow", "prime"):
            if last is None:
                raise WordSyntaxError("exponent without a letter", text, offset + start)
            factor = letters[last:]
            if kind == "prime":
                exp = -1
            else:
                exp = int(re.sub(r"[\s^]", "", m.group("pow")))
            base = factor if exp >= 0 else [(g, -s) for g, s in reversed(factor)]
            letters[last:] = base * abs(exp)
            if not letters[last:]:
                last = None
        elif kind in ("one", "sep"):  # "1" is a neutral factor anywhere
            last = None
        else:
            raise WordSyntaxError(f"unexpected character {m.group('bad')!r}", text, offset + start)
        pos = m.end()
    return Word._trusted(tuple(letters))


def format_word(w: Word) -> str:
    if not w.letters:
        return "1"
    parts = []
    i = 0
    letters = w.letters
    while i < len(letters):
        g, s = letters[i]
        j = i
        while j < len(letters) and letters[j] == (g, s):
            j += 1
        exp = (j - i) * s
        parts.append(g.name if exp == 1 else f"{g.name}^{exp}")
        i = j
    return " ".join(parts)
