"""Evaluation of Hopf terms in the group algebra of a finite group, and a
brute-force homomorphism counter for presentations.

Basis vectors of ``H^n`` are tuples of group elements ordered
lexicographically, leftmost factor most significant.  Element 0 is the
identity.
"""

from __future__ import annotations

import itertools
import json
from typing import Iterable, Sequence

import numpy as np

from achopf import _kernels
from achopf.hopfterm import GenSym, HopfTerm
from achopf.presentations import RelPresentation

__all__ = [
    "FiniteGroup",
    "GroupError",
    "LinearMap",
    "make_group",
    "builtin_groups",
    "eval_term",
    "eval_dense",
    "hom_oracle",
    "hom_count",
]


class GroupError(ValueError):
    pass


class FiniteGroup:
    """Multiplication table with identity at index 0, validated on construction."""

    def __init__(self, table: Sequence[Sequence[int]], names: Sequence[str] | None = None, label: str = "G"):
        table = tuple(tuple(int(x) for x in row) for row in table)
        n = len(table)
        if n < 1:
            raise GroupError("group must have at least one element")
        for i, row in enumerate(table):
            if len(row) != n:
                raise GroupError(f"row {i} has length {len(row)}, expected {n}")
            for j, x in enumerate(row):
                if not 0 <= x < n:
                    raise GroupError(f"closure fails: {i}*{j} = {x} is not an element")
        for x in range(n):
            if table[0][x] != x or table[x][0] != x:
                raise GroupError(f"identity law fails: element 0 is not neutral for {x}")
        inverse = []
        for x in range(n):
            cands = [y for y in range(n) if table[x][y] == 0]
            if len(cands) != 1 or table[cands[0]][x] != 0:
                raise GroupError(f"inverse law fails for element {x}")
            inverse.append(cands[0])
        for a, b, c in itertools.product(range(n), repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise GroupError(f"associativity fails: ({a}*{b})*{c} != {a}*({b}*{c})")
        self.table = table
        self.inverse = tuple(inverse)
        self.order = n
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(n))
        self.label = label
        self._np_table = np.array(table, dtype=np.int64)
        self._np_inverse = np.array(inverse, dtype=np.int64)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def noncommuting_pair(self) -> tuple[int, int] | None:
        for a, b in itertools.combinations(range(self.order), 2):
            if self.table[a][b] != self.table[b][a]:
                return a, b
        return None

    def is_abelian(self) -> bool:
        return self.noncommuting_pair() is None

    def __repr__(self):
        return f"FiniteGroup({self.label}, order={self.order})"

    def to_json(self) -> dict:
        return {"label": self.label, "names": list(self.names), "table": [list(r) for r in self.table]}


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group order must be >= 1")
    return FiniteGroup([[(i + j) % n for j in range(n)] for i in range(n)], label=f"Z/{n}")


def symmetric(n: int) -> FiniteGroup:
    """Permutations of ``0..n-1`` in lexicographic order; product is composition ``p∘q``."""
    if n < 1:
        raise GroupError("symmetric group degree must be >= 1")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    names = ["".join(str(x + 1) for x in p) for p in perms]
    return FiniteGroup(table, names, label=f"S{n}")


_BUILTIN = {"z2": lambda: cyclic(2), "z3": lambda: cyclic(3), "z6": lambda: cyclic(6), "s3": lambda: symmetric(3)}


def make_group(spec) -> FiniteGroup:
    """``"z2" | "z3" | "z6" | "s3"``, ``("cyclic", n)``, ``("symmetric", n)``,
    ``{"table": [[...]]}`` or a path to such a JSON file."""
    if isinstance(spec, FiniteGroup):
        return spec
    if isinstance(spec, str):
        key = spec.lower().replace("/", "").replace("_", "")
        if key in _BUILTIN:
            return _BUILTIN[key]()
        if key.startswith("z") and key[1:].isdigit():
            return cyclic(int(key[1:]))
        if key.startswith("s") and key[1:].isdigit():
            return symmetric(int(key[1:]))
        try:
            with open(spec) as fh:
                return make_group(json.load(fh))
        except FileNotFoundError:
            raise GroupError(f"unknown group {spec!r}") from None
    if isinstance(spec, dict):
        return FiniteGroup(spec["table"], spec.get("names"), spec.get("label", "G"))
    kind, n = spec
    if kind == "cyclic":
        return cyclic(int(n))
    if kind == "symmetric":
        return symmetric(int(n))
    raise GroupError(f"unknown group specification {spec!r}")


def builtin_groups() -> list[FiniteGroup]:
    return [make_group(k) for k in ("z2", "z3", "z6", "s3")]


class LinearMap:
    """Exact integer matrix ``rows x cols`` stored as ``{(row, col): value}``."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: dict | None = None):
        self.rows = rows
        self.cols = cols
        self.entries = {k: int(v) for k, v in (entries or {}).items() if v}

    @classmethod
    def from_dense(cls, matrix) -> "LinearMap":
        matrix = np.asarray(matrix, dtype=object)
        rows, cols = matrix.shape
        entries = {}
        for r in range(rows):
            for c in range(cols):
                if matrix[r, c]:
                    entries[(r, c)] = int(matrix[r, c])
        return cls(rows, cols, entries)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols), dtype=object)
        for (r, c), v in self.entries.items():
            out[r, c] = v
        return out

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __getitem__(self, rc) -> int:
        return self.entries.get(tuple(rc), 0)

    def __repr__(self):
        return f"LinearMap({self.rows}x{self.cols}, nnz={len(self.entries)})"

    def compose(self, other: "LinearMap") -> "LinearMap":
        """Matrix product ``self @ other`` (apply ``other`` first)."""
        if self.cols != other.rows:
            raise ValueError(f"dimension mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        by_row: dict[int, list] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out: dict = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                out[(r, c)] = out.get((r, c), 0) + v * w
        return LinearMap(self.rows, other.cols, out)

    __matmul__ = compose

    def kron(self, other: "LinearMap") -> "LinearMap":
        out = {}
        for (r1, c1), v in self.entries.items():
            for (r2, c2), w in other.entries.items():
                out[(r1 * other.rows + r2, c1 * other.cols + c2)] = v * w
        return LinearMap(self.rows * other.rows, self.cols * other.cols, out)

    def first_difference(self, other: "LinearMap"):
        """``(row, col, self_value, other_value)`` at the least differing entry, or None."""
        if (self.rows, self.cols) != (other.rows, other.cols):
            return ("shape", (self.rows, self.cols), (other.rows, other.cols))
        keys = sorted(set(self.entries) | set(other.entries))
        for k in keys:
            a, b = self.entries.get(k, 0), other.entries.get(k, 0)
            if a != b:
                return (k[0], k[1], a, b)
        return None

    def is_identity(self) -> bool:
        return self.rows == self.cols and self.entries == {(i, i): 1 for i in range(self.rows)}

    def scalar(self) -> int:
        if (self.rows, self.cols) != (1, 1):
            raise ValueError("not a scalar")
        return self[0, 0]

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": [[r, c, v] for (r, c), v in sorted(self.entries.items())]}


# -- sparse state evaluation --------------------------------------------------------

_WIRING = (GenSym.ID, GenSym.SWAP)


def _digits(values: np.ndarray, base: int, width: int) -> np.ndarray:
    out = np.empty((len(values), width), dtype=np.int64)
    v = values.copy()
    for k in range(width - 1, -1, -1):
        out[:, k] = v % base
        v //= base
    return out


def _layer_permutation(layers, width):
    # positions of the old columns after a run of identity/swap layers
    perm = list(range(width))
    for layer in layers:
        pos = 0
        new = list(perm)
        for g in layer:
            if g is GenSym.SWAP:
                new[pos], new[pos + 1] = perm[pos + 1], perm[pos]
                pos += 2
            else:
                pos += 1
        perm = new
    return perm


def _merge(inp, digits, coef, base):
    width = digits.shape[1]
    if len(inp) <= 1:
        return inp, digits, coef
    span = base ** width
    if span * (int(inp.max()) + 1) < 2**62:
        key = inp * span
        for k in range(width):
            key = key + digits[:, k] * (base ** (width - 1 - k))
        order = np.argsort(key, kind="stable")
        skey = key[order]
        _, first = np.unique(skey, return_index=True)
    else:
        stacked = np.column_stack([inp, digits])
        order = np.lexsort(stacked.T[::-1])
        srt = stacked[order]
        change = np.ones(len(srt), dtype=bool)
        change[1:] = np.any(srt[1:] != srt[:-1], axis=1)
        first = np.nonzero(change)[0]
    coef = np.add.reduceat(coef[order], first)
    idx = order[first]
    return inp[idx], digits[idx], coef


def eval_term(t: HopfTerm, G: FiniteGroup, antipode: Sequence[int] | None = None) -> LinearMap:
    """Exact linear map of ``t`` on the group algebra of ``G``.

    ``antipode`` optionally replaces the inversion table used for ``ant``
    (negative-control fixtures).
    """
    N = G.order
    T = G._np_table
    inv = G._np_inverse if antipode is None else np.asarray(antipode, dtype=np.int64)
    n_int = t.count(GenSym.INT)
    dtype = np.int64 if N ** max(n_int, 1) < 2**62 else object
    S = N ** t.n_in
    inp = np.arange(S, dtype=np.int64)
    digits = _digits(inp, N, t.n_in)
    coef = np.ones(S, dtype=dtype)
    width = t.n_in
    layers = t.slices
    k = 0
    while k < len(layers):
        if all(g in _WIRING for g in layers[k]):
            j = k
            while j < len(layers) and all(g in _WIRING for g in layers[j]):
                j += 1
            perm = _layer_permutation(layers[k:j], width)
            digits = digits[:, perm]
            k = j
            continue
        layer = layers[k]
        k += 1
        q = layer.count(GenSym.INT)
        rows = len(inp)
        if q:
            rep = N**q
            inp = np.repeat(inp, rep)
            digits = np.repeat(digits, rep, axis=0)
            coef = np.repeat(coef, rep)
            branch = np.tile(np.arange(rep, dtype=np.int64), rows)
            rows *= rep
        cols = []
        mask = None
        pos = 0
        r = 0
        collapse = False
        for g in layer:
            if g is GenSym.ID:
                cols.append(digits[:, pos])
                pos += 1
            elif g is GenSym.SWAP:
                cols += [digits[:, pos + 1], digits[:, pos]]
                pos += 2
            elif g is GenSym.COP:
                cols += [digits[:, pos], digits[:, pos]]
                pos += 1
            elif g is GenSym.COU:
                pos += 1
                collapse = True
            elif g is GenSym.MUL:
                cols.append(T[digits[:, pos], digits[:, pos + 1]])
                pos += 2
                collapse = True
            elif g is GenSym.UNI:
                cols.append(np.zeros(rows, dtype=np.int64))
            elif g is GenSym.ANT:
                cols.append(inv[digits[:, pos]])
                pos += 1
            elif g is GenSym.INT:
                cols.append((branch // N ** (q - 1 - r)) % N)
                r += 1
            elif g is GenSym.COI:
                hit = digits[:, pos] == 0
                mask = hit if mask is None else mask & hit
                pos += 1
        digits = np.stack(cols, axis=1) if cols else np.empty((rows, 0), dtype=np.int64)
        width = digits.shape[1]
        if mask is not None:
            inp, digits, coef = inp[mask], digits[mask], coef[mask]
        if collapse:
            inp, digits, coef = _merge(inp, digits, coef, N)
    out_index = np.zeros(len(inp), dtype=object if N ** width >= 2**62 else np.int64)
    for c in range(width):
        out_index = out_index * N + digits[:, c]
    entries: dict = {}
    for row, col, v in zip(out_index.tolist(), inp.tolist(), coef.tolist()):
        entries[(row, col)] = entries.get((row, col), 0) + int(v)
    return LinearMap(N**t.n_out, N**t.n_in, entries)


# -- dense oracle ---------------------------------------------------------------


def _kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    r1, c1 = a.shape
    r2, c2 = b.shape
    return np.multiply.outer(a, b).transpose(0, 2, 1, 3).reshape(r1 * r2, c1 * c2)


def generator_matrix(g: GenSym, G: FiniteGroup, antipode: Sequence[int] | None = None) -> np.ndarray:
    N = G.order
    inv = G.inverse if antipode is None else antipode
    M = np.zeros((N**g.n_out, N**g.n_in), dtype=object)
    for x in range(N):
        if g is GenSym.ID:
            M[x, x] = 1
        elif g is GenSym.COP:
            M[x * N + x, x] = 1
        elif g is GenSym.COU:
            M[0, x] = 1
        elif g is GenSym.ANT:
            M[inv[x], x] = 1
        elif g is GenSym.INT:
            M[x, 0] = 1
        elif g is GenSym.COI:
            M[0, x] = 1 if x == 0 else 0
        for y in range(N):
            if g is GenSym.SWAP:
                M[y * N + x, x * N + y] = 1
            elif g is GenSym.MUL:
                M[G.table[x][y], x * N + y] = 1
    if g is GenSym.UNI:
        M[0, 0] = 1
    return M


def eval_dense(t: HopfTerm, G: FiniteGroup, antipode: Sequence[int] | None = None) -> LinearMap:
    """Reference evaluation by explicit Kronecker products and matrix products."""
    N = G.order
    cache = {g: generator_matrix(g, G, antipode) for g in GenSym}
    acc = np.identity(N**t.n_in, dtype=object)
    for layer in t.slices:
        M = np.ones((1, 1), dtype=object)
        for g in layer:
            M = _kron(M, cache[g])
        acc = M.dot(acc)
    return LinearMap.from_dense(acc)


# -- homomorphism oracle ------------------------------------------------------------


def hom_oracle(P: RelPresentation, G: FiniteGroup) -> LinearMap:
    """Entry ``(targets, sources)`` counts internal assignments solving every relator."""
    n, m = P.n, P.m
    codes = {}
    for i, g in enumerate(P.source, start=1):
        codes[g] = i
    for j, g in enumerate(P.target, start=1):
        codes[g] = n + j
    for r, g in enumerate(P.internal, start=1):
        codes[g] = n + m + r
    rels = [tuple(codes[g] * s for g, s in w) for w in P.relators]
    flat = [x for row in G.table for x in row]
    counts = _kernels.hom_table(G.order, flat, list(G.inverse), rels, n, m, len(P.internal))
    N = G.order
    return LinearMap(N**m, N**n, {(tgt, src): c for (src, tgt), c in counts.items()})


def hom_count(P: RelPresentation, G: FiniteGroup) -> int:
    """Number of homomorphisms from the presented group to ``G``; ``P`` must be closed."""
    if P.n or P.m:
        raise ValueError(f"hom_count needs a closed presentation, got arity {P.n}->{P.m}")
    return hom_oracle(P, G)[0, 0]


def matrices_for(items: Iterable, G: FiniteGroup) -> list[LinearMap]:
    return [hom_oracle(P, G) for P in items]
