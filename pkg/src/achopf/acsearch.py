"""Bounded bidirectional search for AC-equivalence with replayable certificates.

Search states are canonical keys.  Each edge is a short macro of primitive
moves (an elimination, a relator product followed by reduction, or a
stabilization), so certificates only ever contain primitive moves.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from achopf import _kernels
from achopf.groupmodel import FiniteGroup, builtin_groups, hom_oracle
from achopf.moves import (
    Ac1Add,
    Ac1Remove,
    Ac2Cancel,
    Ac3LeftMultiply,
    Ac4Rotate,
    Ac5Invert,
    Ac6FlipInternal,
    Ac7Eliminate,
    MoveError,
    apply_move,
    inverse_moves,
    move_from_json,
    move_to_json,
)
from achopf.presentations import RelPresentation, _encode, canonical_data, canonical_key, eliminate
from achopf.words import Generator, Word

__all__ = [
    "SearchBounds",
    "Certificate",
    "Found",
    "ExhaustedBounds",
    "Distinguished",
    "Verification",
    "neighbors",
    "search_equiv",
    "verify_certificate",
    "distinguish",
    "deficiency",
    "bridge_moves",
]


@dataclass(frozen=True)
class SearchBounds:
    max_len: int = 8
    max_rel: int = 6
    max_int: int = 4
    max_ac1: int = 2
    depth: int = 12
    nodes: int = 1_000_000

    def __post_init__(self):
        for name in ("max_len", "max_rel", "max_int", "depth", "nodes"):
            if getattr(self, name) < 1:
                raise ValueError(f"bound {name} must be positive")
        if self.max_ac1 < 0:
            raise ValueError("bound max_ac1 must be nonnegative")

    def admits(self, P: RelPresentation) -> bool:
        longest, count, internal = P.size()
        return longest <= self.max_len and count <= self.max_rel and internal <= self.max_int

    def covering(self, *items: RelPresentation) -> "SearchBounds":
        """Bounds raised just enough to contain the given presentations."""
        longest = max([self.max_len] + [P.size()[0] for P in items])
        count = max([self.max_rel] + [P.size()[1] for P in items])
        internal = max([self.max_int] + [P.size()[2] for P in items])
        return replace(self, max_len=longest, max_rel=count, max_int=internal)

    def to_json(self) -> dict:
        return {f: getattr(self, f) for f in ("max_len", "max_rel", "max_int", "max_ac1", "depth", "nodes")}


@dataclass(frozen=True)
class Certificate:
    moves: tuple
    end_key: bytes

    def __len__(self):
        return len(self.moves)

    def to_json(self) -> dict:
        return {"end_key": self.end_key.hex(), "moves": [move_to_json(m) for m in self.moves]}

    @classmethod
    def from_json(cls, data) -> "Certificate":
        if isinstance(data, list):
            return cls(tuple(move_from_json(m) for m in data), b"")
        return cls(tuple(move_from_json(m) for m in data["moves"]), bytes.fromhex(data.get("end_key", "")))


@dataclass(frozen=True)
class Found:
    certificate: Certificate
    depth: int
    nodes: int


@dataclass(frozen=True)
class ExhaustedBounds:
    nodes: int
    depth: int
    reason: str


@dataclass(frozen=True)
class Distinguished:
    group: str
    entry: tuple  # (row, col, value for P, value for Q)


@dataclass(frozen=True)
class Verification:
    ok: bool
    step: int | None = None
    message: str = ""

    def __bool__(self):
        return self.ok


# -- primitive move helpers ------------------------------------------------------


def reduce_relator_moves(P: RelPresentation, i: int) -> tuple[RelPresentation, list]:
    """Free and cyclic reduction of relator ``i`` as explicit cancellations and rotations."""
    moves = []
    while True:
        r = P.relators[i]
        move = None
        for p in range(len(r) - 1):
            (g, s), (h, t) = r[p], r[p + 1]
            if g == h and s == -t:
                move = Ac2Cancel(i, p)
                break
        if move is None and len(r) >= 2:
            (g, s), (h, t) = r[0], r[len(r) - 1]
            if g == h and s == -t:
                move = Ac4Rotate(i, len(r) - 1)
        if move is None:
            return P, moves
        P = apply_move(P, move)
        moves.append(move)


def reduce_all_moves(P: RelPresentation, indices: Iterable[int] | None = None) -> tuple[RelPresentation, list]:
    moves = []
    for i in range(len(P.relators)) if indices is None else indices:
        P, ms = reduce_relator_moves(P, i)
        moves += ms
    return P, moves


def _replay(P: RelPresentation, moves) -> tuple[RelPresentation, list]:
    states = [P]
    for m in moves:
        P = apply_move(P, m)
        states.append(P)
    return P, states


def invert_sequence(P: RelPresentation, moves) -> list:
    """Moves undoing ``moves`` (applied from ``P``), restoring the exact layout."""
    _, states = _replay(P, moves)
    out = []
    for k in range(len(moves) - 1, -1, -1):
        out += inverse_moves(states[k], moves[k])
    return out


# -- neighbour generation --------------------------------------------------------


def _letters(P: RelPresentation):
    out = []
    for g in P.source + P.internal + P.target:
        out.append((g, 1))
        out.append((g, -1))
    return out


def _reduced_words(letters, max_len):
    yield ()
    frontier = [()]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for a in letters:
                if w and w[-1][0] == a[0] and w[-1][1] == -a[1]:
                    continue
                nxt.append(w + (a,))
        for w in nxt:
            yield w
        frontier = nxt


def _macros(P: RelPresentation, bounds: SearchBounds):
    rels = P.relators
    # eliminations (removal when the generator is isolated)
    for g in P.internal:
        for i, r in enumerate(rels):
            if r.count(g) != 1:
                continue
            alone = all(g not in w.generators() for k, w in enumerate(rels) if k != i)
            if alone:
                p = next(q for q, (h, _) in enumerate(r) if h == g)
                prep = []
                if r[p][1] == -1:
                    prep.append(Ac5Invert(i))
                    p = len(r) - 1 - p
                if p:
                    prep.append(Ac4Rotate(i, p))
                yield prep + [Ac1Remove(g, i)], None
            else:
                yield [Ac7Eliminate(g, i)], "all"
    # relator products
    for i, src in enumerate(rels):
        if not src:
            continue
        for j in range(len(rels)):
            if j == i:
                continue
            for inv in (0, 1):
                for t in range(len(src)):
                    prep = ([Ac5Invert(i)] if inv else []) + ([Ac4Rotate(i, t)] if t else [])
                    yield prep + [Ac3LeftMultiply(j, i)], j
    # stabilizations
    if len(rels) < bounds.max_rel and len(P.internal) < bounds.max_int:
        b = P.fresh_internal("c")
        for w in _reduced_words(_letters(P), min(bounds.max_ac1, bounds.max_len - 1)):
            yield [Ac1Add(b, Word._trusted(w))], None


def _expand(P: RelPresentation, bounds: SearchBounds):
    own = canonical_key(P)
    seen = {own}
    out = []
    for moves, reduce_target in _macros(P, bounds):
        try:
            Q = P
            for m in moves:
                Q = apply_move(Q, m)
            if reduce_target == "all":
                Q, extra = reduce_all_moves(Q)
                moves = moves + extra
            elif reduce_target is not None:
                Q, extra = reduce_relator_moves(Q, reduce_target)
                moves = moves + extra
        except MoveError:
            continue
        if not bounds.admits(Q):
            continue
        k = canonical_key(Q)
        if k in seen:
            continue
        seen.add(k)
        out.append((Q, tuple(moves), k))
    return out


def neighbors(P: RelPresentation, bounds: SearchBounds) -> list[tuple[RelPresentation, tuple]]:
    """Successors of ``P`` within bounds, one per canonical key, with the primitive moves reaching them."""
    return [(Q, moves) for Q, moves, _ in _expand(P, bounds)]


# -- invariant pre-filter -------------------------------------------------------------

ORACLE_BUDGET = 2_000_000 if _kernels.IMPLEMENTATION == "cython" else 100_000


def distinguish(P: RelPresentation, Q: RelPresentation, groups: Sequence[FiniteGroup] | None = None):
    """First group whose homomorphism matrices separate ``P`` and ``Q``, as a Distinguished."""
    groups = builtin_groups() if groups is None else groups
    eP, eQ = eliminate(P), eliminate(Q)
    for G in groups:
        work = max(G.order ** (eP.n + eP.m + len(eP.internal)), G.order ** (eQ.n + eQ.m + len(eQ.internal)))
        if work > ORACLE_BUDGET:
            continue
        diff = hom_oracle(eP, G).first_difference(hom_oracle(eQ, G))
        if diff is not None:
            return Distinguished(G.label, diff)
    return None


def deficiency(P: RelPresentation) -> int:
    """Relators minus internal generators; every AC-move preserves it."""
    return len(P.relators) - len(P.internal)


# -- certificate assembly -------------------------------------------------------------


def _rename_moves(P: RelPresentation, old: Generator, new: Generator) -> tuple[RelPresentation, list]:
    moves = [Ac1Add(new, Word._trusted(((old, -1),))), Ac7Eliminate(old, len(P.relators))]
    for m in moves:
        P = apply_move(P, m)
    return P, moves


def _orient_moves(P: RelPresentation) -> tuple[RelPresentation, list]:
    """Rotate/invert every relator to its least rotation under the name-sorted coding."""
    raw, _, _ = _encode(P)
    moves = []
    for i, r in enumerate(raw):
        if not r:
            continue
        target = _kernels.min_rotation(r)
        inv = tuple(-x for x in reversed(r))
        choice = None
        for flag, w in ((0, r), (1, inv)):
            for t in range(len(w)):
                if w[t:] + w[:t] == target:
                    choice = (flag, t)
                    break
            if choice:
                break
        flag, t = choice
        if flag:
            moves.append(Ac5Invert(i))
        if t:
            moves.append(Ac4Rotate(i, t))
    for m in moves:
        P = apply_move(P, m)
    return P, moves


def _reorder_moves(P: RelPresentation, target: Sequence[Word], avoid: Iterable[str]) -> tuple[RelPresentation, list]:
    """Permute relators into ``target`` order by repeatedly moving one to the end."""
    moves = []
    s = len(target)
    avoid = set(avoid)
    for i in range(s):
        remaining = P.relators[: s - i]
        p = remaining.index(target[i])
        t = P.fresh_internal("t", avoid)
        L = len(P.relators[p])
        seq = [Ac1Add(t, Word._trusted(())), Ac3LeftMultiply(s, p), Ac5Invert(s), Ac3LeftMultiply(p, s)]
        seq += [Ac2Cancel(p, q) for q in range(L, 0, -1)]
        seq += [Ac5Invert(s), Ac7Eliminate(t, p)]
        for m in seq:
            P = apply_move(P, m)
        moves += seq
    return P, moves


def bridge_moves(X: RelPresentation, Y: RelPresentation) -> list:
    """Primitive moves from ``X`` to exactly ``Y``, assuming equal canonical keys."""
    X1, moves = reduce_all_moves(X)
    Y1, ymoves = reduce_all_moves(Y)
    dx, dy = canonical_data(X1), canonical_data(Y1)
    if dx.key != dy.key:
        raise ValueError("bridge between presentations with different canonical keys")
    n_ext = X.n + X.m
    avoid = set(X1.names()) | set(Y1.names())
    pairs = []
    for r in range(len(dx.order)):
        gx = dx.internals[dx.order[r] - n_ext - 1]
        gy = dy.internals[dy.order[r] - n_ext - 1]
        pairs.append((gx, gy, dx.flips[r] * dy.flips[r]))
    for gx, _, flip in pairs:
        if flip == -1:
            m = Ac6FlipInternal(gx)
            X1 = apply_move(X1, m)
            moves.append(m)
    temps = []
    for gx, gy, _ in pairs:
        t = X1.fresh_internal("t", avoid)
        avoid.add(t.name)
        X1, ms = _rename_moves(X1, gx, t)
        moves += ms
        temps.append((t, gy))
    for t, gy in temps:
        X1, ms = _rename_moves(X1, t, gy)
        moves += ms
    X1, ms = _orient_moves(X1)
    moves += ms
    Y2, yms = _orient_moves(Y1)
    ymoves += yms
    X1, ms = _reorder_moves(X1, Y2.relators, avoid | set(Y2.names()))
    moves += ms
    if not X1.layout_equal(Y2):
        raise AssertionError("normalization bridge did not reach the target layout")
    moves += invert_sequence(Y, ymoves)
    return moves


class _Node:
    __slots__ = ("parent", "moves", "rep", "depth")

    def __init__(self, parent, moves, rep, depth):
        self.parent = parent
        self.moves = moves
        self.rep = rep
        self.depth = depth


def _chain(visited: dict, key: bytes) -> list:
    out = []
    while visited[key].parent is not None:
        out.append(visited[key])
        key = visited[key].parent
    out.reverse()
    return out


def _certificate(P, Q, fwd, bwd, meet) -> list:
    moves = []
    for node in _chain(fwd, meet):
        moves += list(node.moves)
    X = fwd[meet].rep
    Y = bwd[meet].rep
    moves += bridge_moves(X, Y)
    for node in reversed(_chain(bwd, meet)):
        parent = bwd[node.parent].rep
        moves += invert_sequence(parent, node.moves)
    return moves


def search_equiv(
    P: RelPresentation,
    Q: RelPresentation,
    bounds: SearchBounds | None = None,
    groups: Sequence[FiniteGroup] | None = None,
    *,
    threads: int = 1,
    prefilter: bool = True,
):
    """Look for an AC-move sequence from ``P`` to ``Q``.

    Returns :class:`Found` with a verified certificate, :class:`Distinguished`
    when a group model separates the two, or :class:`ExhaustedBounds`.
    """
    if P.arity != Q.arity:
        raise ValueError(f"arity mismatch: {P.n}->{P.m} versus {Q.n}->{Q.m}")
    bounds = (bounds or SearchBounds()).covering(P, Q)
    if prefilter:
        d = distinguish(P, Q, groups)
        if d is not None:
            return d
    if deficiency(P) != deficiency(Q):
        # no move changes it, so the search could only run out of bounds
        return ExhaustedBounds(0, 0, f"deficiencies differ ({deficiency(P)} versus {deficiency(Q)}); no move sequence exists")
    kp, kq = canonical_key(P), canonical_key(Q)
    fwd = {kp: _Node(None, (), P, 0)}
    bwd = {kq: _Node(None, (), Q, 0)}
    nodes = len(set(fwd) | set(bwd))

    def finish(meet, depth):
        moves = _certificate(P, Q, fwd, bwd, meet)
        cert = Certificate(tuple(moves), kq)
        check = verify_certificate(P, cert, Q)
        if not check:
            raise AssertionError(f"internal error: certificate failed at step {check.step}: {check.message}")
        return Found(cert, depth, nodes)

    if kp == kq:
        return finish(kp, 0)
    front = {"f": [kp], "b": [kq]}
    depth = {"f": 0, "b": 0}
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        while depth["f"] + depth["b"] < bounds.depth:
            side = "f" if len(front["f"]) <= len(front["b"]) else "b"
            own, other = (fwd, bwd) if side == "f" else (bwd, fwd)
            reps = [own[k].rep for k in front[side]]
            if pool is not None:
                expansions = list(pool.map(lambda R: _expand(R, bounds), reps))
            else:
                expansions = [_expand(R, bounds) for R in reps]
            depth[side] += 1
            new = []
            for parent, children in zip(front[side], expansions):
                for child, moves, k in children:
                    if k in own:
                        continue
                    own[k] = _Node(parent, moves, child, depth[side])
                    nodes += 1
                    new.append(k)
                    if k in other:
                        return finish(k, own[k].depth + other[k].depth)
                    if nodes >= bounds.nodes:
                        return ExhaustedBounds(nodes, depth["f"] + depth["b"], "node limit reached")
            if not new:
                return ExhaustedBounds(nodes, depth["f"] + depth["b"], "search space exhausted within bounds")
            front[side] = sorted(new)
        return ExhaustedBounds(nodes, depth["f"] + depth["b"], "depth limit reached")
    finally:
        if pool is not None:
            pool.shutdown()


def verify_certificate(P: RelPresentation, cert: Certificate | Sequence, Q: RelPresentation) -> Verification:
    """Replay ``cert`` from ``P`` with full checking; succeeds iff the end key is ``Q``'s."""
    moves = cert.moves if isinstance(cert, Certificate) else tuple(cert)
    R = P
    for k, m in enumerate(moves):
        try:
            R = apply_move(R, m)
        except (MoveError, TypeError) as exc:
            return Verification(False, k, str(exc))
    if canonical_key(R) != canonical_key(Q):
        return Verification(False, len(moves), "final presentation does not match the target key")
    return Verification(True)
