"""AC-moves on relative presentations.

Relator indices are 0-based positions in ``P.relators``.  Every move carries
enough data to be replayed deterministically, and :func:`inverse_moves`
returns a primitive sequence that restores the exact relator layout.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from typing import Union

from achopf.presentations import PresentationError, RelPresentation, eliminate_at, solve_for
from achopf.words import Generator, Kind, Word, concat, invert_word

__all__ = [
    "MoveError",
    "Ac1Add",
    "Ac1Remove",
    "Ac2Insert",
    "Ac2Cancel",
    "Ac3LeftMultiply",
    "Ac4Rotate",
    "Ac5Invert",
    "Ac6FlipInternal",
    "Ac7Eliminate",
    "Ac7Introduce",
    "ACMove",
    "apply_move",
    "apply_moves",
    "inverse_moves",
    "move_to_json",
    "move_from_json",
]


class MoveError(PresentationError):
    pass


@dataclass(frozen=True)
class Ac1Add:
    """Add internal ``generator`` and relator ``generator * word`` (at ``index``, default last)."""

    generator: Generator
    word: Word
    index: int | None = None


@dataclass(frozen=True)
class Ac1Remove:
    generator: Generator
    relator: int


@dataclass(frozen=True)
class Ac2Insert:
    """Insert ``g g^-1`` (orientation +1) or ``g^-1 g`` (-1) before ``position``."""

    relator: int
    position: int
    generator: Generator
    orientation: int = 1


@dataclass(frozen=True)
class Ac2Cancel:
    """Cancel the inverse pair at ``position, position + 1``."""

    relator: int
    position: int


@dataclass(frozen=True)
class Ac3LeftMultiply:
    """``r[dst] <- r[src] * r[dst]``."""

    dst: int
    src: int


@dataclass(frozen=True)
class Ac4Rotate:
    """``r <- r[offset:] + r[:offset]``."""

    relator: int
    offset: int


@dataclass(frozen=True)
class Ac5Invert:
    relator: int


@dataclass(frozen=True)
class Ac6FlipInternal:
    generator: Generator


@dataclass(frozen=True)
class Ac7Eliminate:
    generator: Generator
    relator: int


@dataclass(frozen=True)
class Ac7Introduce:
    """Reverse of :class:`Ac7Eliminate`.

    Adds ``generator`` with ``relator`` inserted at ``index`` and replaces the
    relators at the listed positions (counted before insertion) by words whose
    substitution of ``generator`` gives the current relators back.
    """

    generator: Generator
    relator: Word
    index: int
    restored: tuple = field(default=())


ACMove = Union[
    Ac1Add, Ac1Remove, Ac2Insert, Ac2Cancel, Ac3LeftMultiply, Ac4Rotate, Ac5Invert, Ac6FlipInternal, Ac7Eliminate, Ac7Introduce
]

MOVE_TYPES = {
    cls.__name__: cls
    for cls in (
        Ac1Add,
        Ac1Remove,
        Ac2Insert,
        Ac2Cancel,
        Ac3LeftMultiply,
        Ac4Rotate,
        Ac5Invert,
        Ac6FlipInternal,
        Ac7Eliminate,
        Ac7Introduce,
    )
}


def _rel(P: RelPresentation, i: int, what: str = "relator") -> Word:
    if not isinstance(i, int) or not 0 <= i < len(P.relators):
        raise MoveError(f"{what} index {i} out of range (presentation has {len(P.relators)} relators)")
    return P.relators[i]


def _check_internal(P: RelPresentation, g: Generator):
    if g.kind is not Kind.INTERNAL:
        raise MoveError(f"{g.name} is not an internal generator")
    if g not in P.internal:
        raise MoveError(f"internal generator {g.name} is not present")


def _check_fresh(P: RelPresentation, g: Generator):
    if g.kind is not Kind.INTERNAL:
        raise MoveError(f"new generator {g.name} must be internal")
    if g.name in P.names():
        raise MoveError(f"generator name {g.name} is already in use")


def _check_letters(P: RelPresentation, w: Word, extra=()):
    allowed = set(P.source) | set(P.target) | set(P.internal) | set(extra)
    for g, _ in w:
        if g not in allowed:
            raise MoveError(f"word uses undeclared generator {g.name}")


def _own(P: RelPresentation, w: Word) -> Word:
    """Re-express ``w`` over ``P``'s own generator objects (keeps display names)."""
    table = {g: g for g in P.source + P.target + P.internal}
    return Word._trusted(tuple((table.get(g, g), s) for g, s in w))


def _set(rels, i, w):
    out = list(rels)
    out[i] = w
    return out


def apply_move(P: RelPresentation, move) -> RelPresentation:
    rels = P.relators
    if isinstance(move, Ac1Add):
        g = move.generator
        _check_fresh(P, g)
        _check_letters(P, move.word)
        idx = len(rels) if move.index is None else move.index
        if not 0 <= idx <= len(rels):
            raise MoveError(f"insertion index {idx} out of range")
        out = list(rels)
        out.insert(idx, Word._trusted(((g, 1),) + _own(P, move.word).letters))
        return P.replace(internal=P.internal + (g,), relators=out)
    if isinstance(move, Ac1Remove):
        g = move.generator
        _check_internal(P, g)
        r = _rel(P, move.relator)
        if not r or r[0] != (g, 1):
            raise MoveError(f"relator {move.relator} does not start with {g.name}")
        if r.count(g) != 1 or any(g in w.generators() for k, w in enumerate(rels) if k != move.relator):
            raise MoveError(f"{g.name} occurs elsewhere; ac1 removal needs it only at the head of relator {move.relator}")
        return P.replace(
            internal=[h for h in P.internal if h != g], relators=[w for k, w in enumerate(rels) if k != move.relator]
        )
    if isinstance(move, Ac2Insert):
        r = _rel(P, move.relator)
        if not 0 <= move.position <= len(r):
            raise MoveError(f"insertion position {move.position} out of range for relator of length {len(r)}")
        if move.orientation not in (1, -1):
            raise MoveError("orientation must be +1 or -1")
        _check_letters(P, Word._trusted(((move.generator, 1),)))
        o = move.orientation
        g = _own(P, Word._trusted(((move.generator, 1),)))[0][0]
        pair = ((g, o), (g, -o))
        letters = r.letters[: move.position] + pair + r.letters[move.position :]
        return P.replace(relators=_set(rels, move.relator, Word._trusted(letters)))
    if isinstance(move, Ac2Cancel):
        r = _rel(P, move.relator)
        p = move.position
        if not 0 <= p < len(r) - 1:
            raise MoveError(f"cancellation position {p} out of range for relator of length {len(r)}")
        (g, s), (h, t) = r[p], r[p + 1]
        if g != h or s != -t:
            raise MoveError(f"letters {p}, {p + 1} of relator {move.relator} are not mutually inverse")
        return P.replace(relators=_set(rels, move.relator, Word._trusted(r.letters[:p] + r.letters[p + 2 :])))
    if isinstance(move, Ac3LeftMultiply):
        dst = _rel(P, move.dst, "destination")
        src = _rel(P, move.src, "source")
        if move.dst == move.src:
            raise MoveError("ac3 needs two distinct relators")
        return P.replace(relators=_set(rels, move.dst, concat(src, dst)))
    if isinstance(move, Ac4Rotate):
        r = _rel(P, move.relator)
        return P.replace(relators=_set(rels, move.relator, r.rotate(move.offset)))
    if isinstance(move, Ac5Invert):
        r = _rel(P, move.relator)
        return P.replace(relators=_set(rels, move.relator, invert_word(r)))
    if isinstance(move, Ac6FlipInternal):
        g = move.generator
        _check_internal(P, g)
        flip = Word._trusted(((g, -1),))
        return P.replace(relators=[w.substitute(g, flip) if g in w.generators() else w for w in rels])
    if isinstance(move, Ac7Eliminate):
        _check_internal(P, move.generator)
        r = _rel(P, move.relator)
        if r.count(move.generator) != 1:
            raise MoveError(
                f"{move.generator.name} occurs {r.count(move.generator)} times in relator {move.relator}, ac7 needs exactly one"
            )
        return eliminate_at(P, move.generator, move.relator)
    if isinstance(move, Ac7Introduce):
        g = move.generator
        _check_fresh(P, g)
        _check_letters(P, move.relator, extra=(g,))
        if move.relator.count(g) != 1:
            raise MoveError(f"introduced relator must contain {g.name} exactly once")
        if not 0 <= move.index <= len(rels):
            raise MoveError(f"insertion index {move.index} out of range")
        sol = solve_for(move.relator, g)
        out = list(rels)
        for pos, w in move.restored:
            _rel(P, pos)
            _check_letters(P, w, extra=(g,))
            if w.substitute(g, sol) != rels[pos]:
                raise MoveError(f"restored relator for position {pos} does not substitute back to the current relator")
            out[pos] = _own(P, w)
        untouched = {pos for pos, _ in move.restored}
        for k, w in enumerate(rels):
            if k not in untouched and g in w.generators():
                raise MoveError("introduced generator already occurs")
        out.insert(move.index, _own(P, move.relator))
        return P.replace(internal=P.internal + (g,), relators=out)
    raise TypeError(f"not an AC move: {move!r}")


def apply_moves(P: RelPresentation, moves) -> RelPresentation:
    for m in moves:
        P = apply_move(P, m)
    return P


def _ac3_inverse(P: RelPresentation, dst: int, src: int) -> list:
    # after r[dst] = r[src] r[dst]: left-multiply by r[src]^-1 and cancel
    length = len(P.relators[src])
    moves = [Ac5Invert(src), Ac3LeftMultiply(dst, src)]
    moves += [Ac2Cancel(dst, p) for p in range(length - 1, -1, -1)]
    moves.append(Ac5Invert(src))
    return moves


def inverse_moves(P: RelPresentation, move) -> list:
    """Primitive moves taking ``apply_move(P, move)`` back to ``P`` (same layout)."""
    if isinstance(move, Ac1Add):
        idx = len(P.relators) if move.index is None else move.index
        return [Ac1Remove(move.generator, idx)]
    if isinstance(move, Ac1Remove):
        r = P.relators[move.relator]
        return [Ac1Add(move.generator, r[1:], move.relator)]
    if isinstance(move, Ac2Insert):
        return [Ac2Cancel(move.relator, move.position)]
    if isinstance(move, Ac2Cancel):
        g, s = P.relators[move.relator][move.position]
        return [Ac2Insert(move.relator, move.position, g, s)]
    if isinstance(move, Ac3LeftMultiply):
        return _ac3_inverse(P, move.dst, move.src)
    if isinstance(move, Ac4Rotate):
        length = len(P.relators[move.relator])
        return [Ac4Rotate(move.relator, (-move.offset) % length if length else 0)]
    if isinstance(move, (Ac5Invert, Ac6FlipInternal)):
        return [move]
    if isinstance(move, Ac7Eliminate):
        g, i = move.generator, move.relator
        restored = []
        for k, w in enumerate(P.relators):
            if k != i and g in w.generators():
                restored.append((k if k < i else k - 1, w))
        return [Ac7Introduce(g, P.relators[i], i, tuple(restored))]
    if isinstance(move, Ac7Introduce):
        return [Ac7Eliminate(move.generator, move.index)]
    raise TypeError(f"not an AC move: {move!r}")


# -- JSON -----------------------------------------------------------------------


def _word_json(w: Word) -> list:
    return [g.to_json() + [s] for g, s in w]


def _word_from(data) -> Word:
    return Word((Generator.from_json(item[:2]), int(item[2])) for item in data)


def move_to_json(move) -> dict:
    out = {"move": type(move).__name__}
    for f in fields(move):
        v = getattr(move, f.name)
        if isinstance(v, Generator):
            v = v.to_json()
        elif isinstance(v, Word):
            v = _word_json(v)
        elif f.name == "restored":
            v = [[pos, _word_json(w)] for pos, w in v]
        out[f.name] = v
    return out


def move_from_json(data: dict):
    name = data.get("move")
    cls = MOVE_TYPES.get(name)
    if cls is None:
        raise MoveError(f"unknown move type {name!r}")
    kwargs = {}
    for f in fields(cls):
        if f.name not in data:
            continue
        v = data[f.name]
        if f.name == "generator":
            v = Generator.from_json(v)
        elif f.name in ("word",) or (f.name == "relator" and cls is Ac7Introduce):
            v = _word_from(v)
        elif f.name == "restored":
            v = tuple((int(pos), _word_from(w)) for pos, w in v)
        kwargs[f.name] = v
    return cls(**kwargs)
