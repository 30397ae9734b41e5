"""Pure-Python kernels.  ``_core.pyx`` mirrors this module function for function.

Words are tuples of nonzero ints: ``+c`` is generator ``c``, ``-c`` its inverse.
"""

from itertools import permutations, product

IMPLEMENTATION = "python"


def free_reduce(word):
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word):
    w = free_reduce(word)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


def min_rotation(word):
    """Least rotation of ``word`` or of its inverse (lexicographic on ints)."""
    n = len(word)
    if n == 0:
        return ()
    inv = tuple(-x for x in reversed(word))
    best = word
    for w in (word, inv):
        for k in range(n):
            r = w[k:] + w[:k]
            if r < best:
                best = r
    return best


def _relabel(rels, n_ext, newcode):
    out = []
    for r in rels:
        mapped = tuple(x if -n_ext <= x <= n_ext else (newcode[x] if x > 0 else -newcode[-x]) for x in r)
        out.append(min_rotation(mapped))
    out.sort()
    return tuple(out)


def _candidates(classes):
    per_class = [list(permutations(c)) for c in classes]
    for combo in product(*per_class):
        order = [c for block in combo for c in block]
        yield order


def canonical_form(rels, n_ext, classes, limit):
    """Least sorted relator tuple over internal relabelings and sign flips.

    ``classes`` is an ordered list of lists of internal codes; relabelings only
    permute codes inside a class.  Returns ``(relators, order, flips)`` where
    internal ``order[r]`` receives the new code ``n_ext + 1 + r`` and
    ``flips[r]`` is ``-1`` when that generator is inverted.
    """
    k = sum(len(c) for c in classes)
    total = 1 << k
    for c in classes:
        for i in range(2, len(c) + 1):
            total *= i
    best = None
    best_order = None
    best_flips = None
    if total <= limit:
        for order in _candidates(classes):
            for flips in product((1, -1), repeat=k):
                newcode = {}
                for r, code in enumerate(order):
                    newcode[code] = flips[r] * (n_ext + 1 + r)
                form = _relabel(rels, n_ext, newcode)
                if best is None or form < best:
                    best, best_order, best_flips = form, tuple(order), tuple(flips)
        return best, best_order, best_flips
    order = [c for block in classes for c in block]
    flips = [1] * k

    def form_for(fl):
        return _relabel(rels, n_ext, {code: fl[r] * (n_ext + 1 + r) for r, code in enumerate(order)})

    best = form_for(flips)
    for r in range(k):
        flips[r] = -1
        cand = form_for(flips)
        if cand < best:
            best = cand
        else:
            flips[r] = 1
    return best, tuple(order), tuple(flips)


def hom_table(order, table, inverse, relators, n_src, n_tgt, n_int):
    """Count assignments of internal variables solving every relator.

    Variables ``1..n_src`` are sources, then ``n_tgt`` targets, then ``n_int``
    internals.  ``table`` is the flattened multiplication table, identity 0.
    Returns ``{(src_index, tgt_index): count}`` with lexicographic tuple
    indices (leftmost most significant), zero counts omitted.
    """
    n_ext = n_src + n_tgt
    counts = {}
    for ext in product(range(order), repeat=n_ext):
        src_index = 0
        for x in ext[:n_src]:
            src_index = src_index * order + x
        tgt_index = 0
        for x in ext[n_src:]:
            tgt_index = tgt_index * order + x
        total = 0
        for internal in product(range(order), repeat=n_int):
            values = ext + internal
            ok = True
            for rel in relators:
                acc = 0
                for x in rel:
                    v = values[x - 1] if x > 0 else inverse[values[-x - 1]]
                    acc = table[acc * order + v]
                if acc != 0:
                    ok = False
                    break
            if ok:
                total += 1
        if total:
            counts[(src_index, tgt_index)] = total
    return counts
