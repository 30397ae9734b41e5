"""Relative presentations ``< sources ; targets ; internals | relators >`` and the
category structure on them.

Composition is diagrammatic: ``compose_p(P, Q)`` glues the targets of ``P``
to the sources of ``Q`` (``P`` first).
"""

from __future__ import annotations

import re
from array import array
from collections import Counter
from typing import Iterable, Sequence

from achopf import _kernels
from achopf.words import Generator, Kind, Word, WordSyntaxError, format_word, invert_word, parse_word

__all__ = [
    "RelPresentation",
    "PresentationError",
    "compose_p",
    "tensor_p",
    "identity_p",
    "braiding_p",
    "elementary",
    "eliminate",
    "elimination_site",
    "solve_for",
    "canonical_key",
    "canonical_data",
    "parse_presentation",
    "format_presentation",
    "KEY_LIMIT",
]

# 6! relabelings times 2^6 sign flips
KEY_LIMIT = 720 * 64


class PresentationError(ValueError):
    pass


def default_names(prefix: str, count: int) -> list[str]:
    if count == 1:
        return [prefix]
    return [f"{prefix}{i}" for i in range(1, count + 1)]


class RelPresentation:
    """A morphism ``n -> m`` of the presentation category.

    ``internal`` and ``relators`` are stored as tuples so moves can address
    them by position, but equality treats them as a set and a multiset.
    """

    __slots__ = ("source", "target", "internal", "relators")

    def __init__(
        self,
        source: Sequence[Generator],
        target: Sequence[Generator],
        internal: Iterable[Generator] = (),
        relators: Iterable[Word] = (),
        *,
        check: bool = True,
    ):
        source = tuple(source)
        target = tuple(target)
        internal = tuple(internal)
        relators = tuple(relators)
        if check:
            _validate(source, target, internal, relators)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "internal", internal)
        object.__setattr__(self, "relators", relators)

    @classmethod
    def build(cls, sources: Sequence[str], targets: Sequence[str], internals: Sequence[str], relators: Sequence[str]):
        """Convenience constructor from names and relator strings in word syntax."""
        src = [Generator.source(i, name) for i, name in enumerate(sources, start=1)]
        tgt = [Generator.target(i, name) for i, name in enumerate(targets, start=1)]
        ints = [Generator.internal(name) for name in internals]
        table = {g.name: g for g in src + tgt + ints}
        rels = [parse_word(r, table.__getitem__) for r in relators]
        return cls(src, tgt, ints, rels)

    def __setattr__(self, key, value):
        raise AttributeError("RelPresentation is immutable")

    @property
    def n(self) -> int:
        return len(self.source)

    @property
    def m(self) -> int:
        return len(self.target)

    @property
    def arity(self) -> tuple[int, int]:
        return len(self.source), len(self.target)

    def generators(self) -> tuple[Generator, ...]:
        return self.source + self.internal + self.target

    def names(self) -> dict[str, Generator]:
        return {g.name: g for g in self.source + self.target + self.internal}

    def fresh_internal(self, prefix: str = "c", avoid: Iterable[str] = ()) -> Generator:
        used = set(self.names()) | set(avoid)
        k = 1
        while f"{prefix}{k}" in used:
            k += 1
        return Generator.internal(f"{prefix}{k}")

    def replace(self, internal=None, relators=None, check: bool = False) -> "RelPresentation":
        return RelPresentation(
            self.source,
            self.target,
            self.internal if internal is None else internal,
            self.relators if relators is None else relators,
            check=check,
        )

    def __eq__(self, other):
        if not isinstance(other, RelPresentation):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and set(self.internal) == set(other.internal)
            and Counter(self.relators) == Counter(other.relators)
        )

    def __hash__(self):
        return hash((self.source, self.target, frozenset(self.internal), frozenset(Counter(self.relators).items())))

    def layout_equal(self, other: "RelPresentation") -> bool:
        """Equality that also respects relator order."""
        return (
            self.source == other.source
            and self.target == other.target
            and set(self.internal) == set(other.internal)
            and self.relators == other.relators
        )

    def size(self) -> tuple[int, int, int]:
        """``(longest relator, relator count, internal count)``."""
        return max((len(r) for r in self.relators), default=0), len(self.relators), len(self.internal)

    def __repr__(self):
        return f"RelPresentation({format_presentation(self)!r})"

    def __str__(self):
        return format_presentation(self)

    def to_json(self) -> dict:
        return {
            "source": [g.name for g in self.source],
            "target": [g.name for g in self.target],
            "internal": [g.name for g in self.internal],
            "relators": [word_to_json(r) for r in self.relators],
        }

    @classmethod
    def from_json(cls, data: dict) -> "RelPresentation":
        src = [Generator.source(i, name) for i, name in enumerate(data.get("source", []), start=1)]
        tgt = [Generator.target(i, name) for i, name in enumerate(data.get("target", []), start=1)]
        ints = [Generator.internal(name) for name in data.get("internal", [])]
        names = {g.to_json()[0] + ":" + str(g.to_json()[1]): g for g in src + tgt + ints}
        rels = [word_from_json(r, names) for r in data.get("relators", [])]
        return cls(src, tgt, ints, rels)


def word_to_json(w: Word) -> list:
    return [g.to_json() + [s] for g, s in w]


def word_from_json(data: Sequence, table: dict | None = None) -> Word:
    letters = []
    for item in data:
        g = Generator.from_json(item[:2])
        if table is not None:
            g = table.get(f"{item[0]}:{item[1]}", g)
        letters.append((g, int(item[2])))
    return Word(letters)


def _validate(source, target, internal, relators):
    for i, g in enumerate(source, start=1):
        if g.kind is not Kind.SOURCE or g.index != i:
            raise PresentationError(f"source generator {i} must be source-external with index {i}, got {g!r}")
    for i, g in enumerate(target, start=1):
        if g.kind is not Kind.TARGET or g.index != i:
            raise PresentationError(f"target generator {i} must be target-external with index {i}, got {g!r}")
    if len(set(internal)) != len(internal):
        raise PresentationError("duplicate internal generator")
    for g in internal:
        if g.kind is not Kind.INTERNAL:
            raise PresentationError(f"{g!r} listed as internal but is external")
    names = [g.name for g in source + target + internal]
    dup = [name for name, c in Counter(names).items() if c > 1]
    if dup:
        raise PresentationError(f"generator name {dup[0]!r} used twice")
    allowed = set(source) | set(target) | set(internal)
    for k, r in enumerate(relators):
        if not isinstance(r, Word):
            raise PresentationError(f"relator {k} is not a Word")
        for g, _ in r:
            if g not in allowed:
                raise PresentationError(f"relator {k} uses undeclared generator {g.name!r}")


# -- category structure ------------------------------------------------------


def _externals(n: int, m: int):
    src = [Generator.source(i, name) for i, name in enumerate(default_names("a", n), start=1)]
    tgt = [Generator.target(i, name) for i, name in enumerate(default_names("b", m), start=1)]
    return src, tgt


def compose_p(P: RelPresentation, Q: RelPresentation) -> RelPresentation:
    """Glue ``P: n -> m`` and ``Q: m -> p`` along the shared ``m`` generators."""
    if P.m != Q.n:
        raise PresentationError(f"cannot compose {P.n}->{P.m} with {Q.n}->{Q.m}: arity mismatch")
    src, tgt = _externals(P.n, Q.m)
    counter = iter(range(1, 1 + len(P.internal) + P.m + len(Q.internal)))
    fresh = lambda: Generator.internal(f"c{next(counter)}")  # noqa: E731
    map_p: dict = {}
    map_q: dict = {}
    new_internal = []
    for g in P.internal:
        map_p[g] = fresh()
        new_internal.append(map_p[g])
    for j in range(P.m):
        c = fresh()
        map_p[P.target[j]] = c
        map_q[Q.source[j]] = c
        new_internal.append(c)
    for g in Q.internal:
        map_q[g] = fresh()
        new_internal.append(map_q[g])
    for i, g in enumerate(P.source):
        map_p[g] = src[i]
    for j, g in enumerate(Q.target):
        map_q[g] = tgt[j]
    rels = [r.rename(map_p) for r in P.relators] + [r.rename(map_q) for r in Q.relators]
    return RelPresentation(src, tgt, new_internal, rels, check=False)


def tensor_p(P: RelPresentation, Q: RelPresentation) -> RelPresentation:
    src, tgt = _externals(P.n + Q.n, P.m + Q.m)
    map_p: dict = {}
    map_q: dict = {}
    new_internal = []
    k = 0
    for mapping, R in ((map_p, P), (map_q, Q)):
        for g in R.internal:
            k += 1
            mapping[g] = Generator.internal(f"c{k}")
            new_internal.append(mapping[g])
    for i, g in enumerate(P.source):
        map_p[g] = src[i]
    for i, g in enumerate(Q.source):
        map_q[g] = src[P.n + i]
    for j, g in enumerate(P.target):
        map_p[g] = tgt[j]
    for j, g in enumerate(Q.target):
        map_q[g] = tgt[P.m + j]
    rels = [r.rename(map_p) for r in P.relators] + [r.rename(map_q) for r in Q.relators]
    return RelPresentation(src, tgt, new_internal, rels, check=False)


def identity_p(n: int) -> RelPresentation:
    if n < 0:
        raise PresentationError("arity must be nonnegative")
    src, tgt = _externals(n, n)
    return RelPresentation(src, tgt, (), [Word(((src[i], 1), (tgt[i], -1))) for i in range(n)])


def braiding_p(n: int, m: int) -> RelPresentation:
    """``n + m -> m + n`` swapping the first ``n`` wires past the last ``m``."""
    if n < 0 or m < 0:
        raise PresentationError("arity must be nonnegative")
    src, tgt = _externals(n + m, n + m)
    rels = [Word(((src[i], 1), (tgt[m + i], -1))) for i in range(n)]
    rels += [Word(((src[n + j], 1), (tgt[j], -1))) for j in range(m)]
    return RelPresentation(src, tgt, (), rels)


_ELEMENTARY = {
    "cop": (["a"], ["b", "c"], ["a b^-1", "a c^-1"]),
    "cou": (["a"], [], []),
    "mul": (["a", "b"], ["c"], ["a b c^-1"]),
    "uni": ([], ["a"], ["a"]),
    "coi": (["a"], [], ["a"]),
    "int": ([], ["a"], []),
    "ant": (["a"], ["b"], ["a b"]),
}


def elementary(kind) -> RelPresentation:
    """Presentation of an elementary Hopf morphism.

    ``kind`` is a generator symbol or one of the names ``cop, cou, mul, uni,
    coi, int, ant`` (also ``id`` and ``swap``).
    """
    name = getattr(kind, "text", kind)
    if name == "id":
        return identity_p(1)
    if name == "swap":
        return braiding_p(1, 1)
    if name not in _ELEMENTARY:
        raise PresentationError(f"unknown elementary morphism {kind!r}")
    s, t, rels = _ELEMENTARY[name]
    return RelPresentation.build(s, t, [], rels)


# -- elimination ---------------------------------------------------------------


def solve_for(v: Word, g: Generator) -> Word:
    """Solve ``v = 1`` for the single occurrence of ``g`` in ``v``.

    With ``v = x g y`` the solution is ``x^-1 y^-1``; with ``v = x g^-1 y``
    it is ``y x``.  No free reduction is performed.
    """
    positions = [i for i, (h, _) in enumerate(v) if h == g]
    if len(positions) != 1:
        raise PresentationError(f"{g.name} occurs {len(positions)} times in the relator, expected exactly once")
    p = positions[0]
    sign = v[p][1]
    x, y = v[:p], v[p + 1 :]
    if sign == 1:
        return invert_word(x) + invert_word(y)
    return y + x


def eliminate_at(P: RelPresentation, g: Generator, index: int) -> RelPresentation:
    """Substitute ``g`` from relator ``index`` into the rest and drop both."""
    if g not in P.internal:
        raise PresentationError(f"{g.name} is not an internal generator")
    if not 0 <= index < len(P.relators):
        raise PresentationError(f"relator index {index} out of range")
    sol = solve_for(P.relators[index], g)
    rels = [r.substitute(g, sol) if g in r.generators() else r for k, r in enumerate(P.relators) if k != index]
    return P.replace(internal=[h for h in P.internal if h != g], relators=rels)


def elimination_site(P: RelPresentation) -> tuple[Generator, int] | None:
    """First internal (in order) occurring exactly once in some relator, with that relator."""
    for g in P.internal:
        for k, r in enumerate(P.relators):
            if r.count(g) == 1:
                return g, k
    return None


def eliminate(P: RelPresentation) -> RelPresentation:
    """Repeatedly eliminate internal generators isolated in some relator."""
    while True:
        site = elimination_site(P)
        if site is None:
            return P
        P = eliminate_at(P, *site)


# -- canonical key --------------------------------------------------------------


class CanonicalData:
    __slots__ = ("key", "relators", "empties", "internals", "order", "flips", "codes")

    def __init__(self, key, relators, empties, internals, order, flips, codes):
        self.key = key
        self.relators = relators
        self.empties = empties
        self.internals = internals
        self.order = order
        self.flips = flips
        self.codes = codes


def _encode(P: RelPresentation):
    n, m = P.n, P.m
    internals = sorted(P.internal, key=lambda g: g.name)
    codes = {}
    for i, g in enumerate(P.source, start=1):
        codes[g] = i
    for j, g in enumerate(P.target, start=1):
        codes[g] = n + j
    for r, g in enumerate(internals, start=1):
        codes[g] = n + m + r
    rels = [tuple(codes[g] * s for g, s in w) for w in P.relators]
    return rels, internals, codes


def canonical_data(P: RelPresentation, limit: int = KEY_LIMIT) -> CanonicalData:
    n_ext = P.n + P.m
    raw, internals, codes = _encode(P)
    reduced = [_kernels.cyclic_reduce(r) for r in raw]
    empties = sum(1 for r in reduced if not r)
    nonempty = [r for r in reduced if r]
    k = len(internals)
    inv: dict[int, tuple] = {}
    for c in range(n_ext + 1, n_ext + k + 1):
        sig = []
        for r in nonempty:
            cnt = sum(1 for x in r if x == c or x == -c)
            if cnt:
                sig.append((len(r), cnt))
        inv[c] = tuple(sorted(sig))
    groups: dict[tuple, list] = {}
    for c in range(n_ext + 1, n_ext + k + 1):
        groups.setdefault(inv[c], []).append(c)
    classes = [groups[s] for s in sorted(groups)]
    form, order, flips = _kernels.canonical_form(nonempty, n_ext, classes, limit)
    buf = array("q", [P.n, P.m, k, empties, len(form)])
    for r in form:
        buf.append(len(r))
        buf.extend(r)
    return CanonicalData(buf.tobytes(), form, empties, internals, order, flips, codes)


def canonical_key(P: RelPresentation, limit: int = KEY_LIMIT) -> bytes:
    """Dedup key invariant under reduction, rotation, inversion, relabeling and internal flips."""
    return canonical_data(P, limit).key


# -- text format ----------------------------------------------------------------

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _split_top(text: str, start: int, end: int, seps: str) -> list[tuple[int, int]]:
    spans = []
    s = start
    for i in range(start, end):
        if text[i] in seps:
            spans.append((s, i))
            s = i + 1
    spans.append((s, end))
    return spans


def parse_presentation(text: str) -> RelPresentation:
    """Parse ``< a1, a2 ; b1 ; c | w1, w2 >``.

    The internal section may also be delimited by ``|`` on both sides, and it
    may be omitted entirely.  The relator ``1`` is the empty relator.
    """
    lo = text.find("<")
    hi = text.rfind(">")
    if lo < 0 or text[:lo].strip():
        raise WordSyntaxError("presentation must start with '<'", text, max(lo, 0))
    if hi < lo or text[hi + 1 :].strip():
        raise WordSyntaxError("presentation must end with '>'", text, len(text) if hi < lo else hi + 1)
    bar = text.rfind("|", lo, hi)
    if bar < 0:
        raise WordSyntaxError("missing '|' before the relators", text, hi)
    head = _split_top(text, lo + 1, bar, ";|")
    if len(head) == 2:
        head.append((bar, bar))
    if len(head) != 3:
        raise WordSyntaxError(f"expected 3 generator sections, found {len(head)}", text, head[min(3, len(head) - 1)][0])
    sections = []
    seen: dict[str, int] = {}
    for s, e in head:
        names = []
        for a, b in _split_top(text, s, e, ","):
            item = text[a:b].strip()
            if not item:
                if text[s:e].strip():
                    raise WordSyntaxError("empty generator name", text, a)
                continue
            pos = a + (len(text[a:b]) - len(text[a:b].lstrip()))
            if not _IDENT.match(item):
                raise WordSyntaxError(f"invalid generator name {item!r}", text, pos)
            if item in seen:
                raise WordSyntaxError(f"generator name {item!r} declared twice", text, pos)
            seen[item] = pos
            names.append(item)
        sections.append(names)
    src = [Generator.source(i, name) for i, name in enumerate(sections[0], start=1)]
    tgt = [Generator.target(i, name) for i, name in enumerate(sections[1], start=1)]
    ints = [Generator.internal(name) for name in sections[2]]
    table = {g.name: g for g in src + tgt + ints}
    rels = []
    body = text[bar + 1 : hi]
    if body.strip():
        for a, b in _split_top(text, bar + 1, hi, ","):
            chunk = text[a:b]
            if not chunk.strip():
                raise WordSyntaxError("empty relator (write 1 for the trivial relator)", text, a)
            rels.append(_parse_relator(text, a, b, table))
    return RelPresentation(src, tgt, ints, rels)


def _parse_relator(text, a, b, table):
    chunk = text[a:b]
    try:
        return parse_word(chunk, table.__getitem__)
    except WordSyntaxError as exc:
        raise WordSyntaxError(str(exc).rsplit(" at line", 1)[0], text, a + exc.pos) from None


def format_presentation(P: RelPresentation) -> str:
    def part(items):
        return " " + ", ".join(items) if items else ""

    return (
        "<"
        + part([g.name for g in P.source])
        + " ;"
        + part([g.name for g in P.target])
        + " ;"
        + part([g.name for g in P.internal])
        + " |"
        + part([format_word(r) for r in P.relators])
        + " >"
    )
