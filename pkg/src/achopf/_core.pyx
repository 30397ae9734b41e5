# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; semantics identical to ``_core_py``."""

from itertools import permutations, product

from libc.stdlib cimport malloc, free

IMPLEMENTATION = "cython"


cdef int _free_reduce_into(long* src, int n, long* out):
    cdef int top = 0
    cdef int i
    cdef long x
    for i in range(n):
        x = src[i]
        if top > 0 and out[top - 1] == -x:
            top -= 1
        else:
            out[top] = x
            top += 1
    return top


cdef long* _to_array(tuple word, int* n_out):
    cdef int n = len(word)
    cdef long* buf = <long*>malloc((n if n > 0 else 1) * sizeof(long))
    cdef int i
    for i in range(n):
        buf[i] = word[i]
    n_out[0] = n
    return buf


cdef tuple _to_tuple(long* buf, int start, int stop):
    return tuple([buf[i] for i in range(start, stop)])


def free_reduce(tuple word):
    cdef int n
    cdef long* src = _to_array(word, &n)
    cdef long* out = <long*>malloc((n if n > 0 else 1) * sizeof(long))
    cdef int m
    try:
        m = _free_reduce_into(src, n, out)
        return _to_tuple(out, 0, m)
    finally:
        free(src)
        free(out)


def cyclic_reduce(tuple word):
    cdef int n
    cdef long* src = _to_array(word, &n)
    cdef long* out = <long*>malloc((n if n > 0 else 1) * sizeof(long))
    cdef int m, i, j
    try:
        m = _free_reduce_into(src, n, out)
        i = 0
        j = m
        while j - i >= 2 and out[i] == -out[j - 1]:
            i += 1
            j -= 1
        return _to_tuple(out, i, j)
    finally:
        free(src)
        free(out)


cdef int _less_rot(long* w, int n, int a, long* best) nogil:
    # lexicographic comparison of rotation ``a`` of ``w`` against ``best``
    cdef int i
    cdef long x
    for i in range(n):
        x = w[(a + i) % n]
        if x < best[i]:
            return 1
        if x > best[i]:
            return 0
    return 0


cdef void _min_rotation_into(long* w, long* inv, int n, long* best) nogil:
    cdef int i, k
    for i in range(n):
        best[i] = w[i]
        inv[i] = -w[n - 1 - i]
    for k in range(n):
        if _less_rot(w, n, k, best):
            for i in range(n):
                best[i] = w[(k + i) % n]
    for k in range(n):
        if _less_rot(inv, n, k, best):
            for i in range(n):
                best[i] = inv[(k + i) % n]


def min_rotation(tuple word):
    cdef int n
    if len(word) == 0:
        return ()
    cdef long* w = _to_array(word, &n)
    cdef long* inv = <long*>malloc(n * sizeof(long))
    cdef long* best = <long*>malloc(n * sizeof(long))
    try:
        _min_rotation_into(w, inv, n, best)
        return _to_tuple(best, 0, n)
    finally:
        free(w)
        free(inv)
        free(best)


cdef class _Packed:
    cdef long* data
    cdef int* starts
    cdef int* lengths
    cdef int count
    cdef int total
    cdef long* scratch
    cdef long* inv
    cdef long* best

    def __cinit__(self, list rels):
        cdef int i, j, pos = 0
        self.count = len(rels)
        self.total = sum(len(r) for r in rels)
        self.data = <long*>malloc((self.total + 1) * sizeof(long))
        self.scratch = <long*>malloc((self.total + 1) * sizeof(long))
        self.inv = <long*>malloc((self.total + 1) * sizeof(long))
        self.best = <long*>malloc((self.total + 1) * sizeof(long))
        self.starts = <int*>malloc((self.count + 1) * sizeof(int))
        self.lengths = <int*>malloc((self.count + 1) * sizeof(int))
        for i in range(self.count):
            r = rels[i]
            self.starts[i] = pos
            self.lengths[i] = len(r)
            for j in range(len(r)):
                self.data[pos] = r[j]
                pos += 1

    def __dealloc__(self):
        free(self.data)
        free(self.scratch)
        free(self.inv)
        free(self.best)
        free(self.starts)
        free(self.lengths)

    cdef tuple relabel(self, long n_ext, long* newcode):
        cdef int i, j, s, n
        cdef long x
        out = []
        for i in range(self.count):
            s = self.starts[i]
            n = self.lengths[i]
            for j in range(n):
                x = self.data[s + j]
                if x > n_ext:
                    x = newcode[x]
                elif x < -n_ext:
                    x = -newcode[-x]
                self.scratch[j] = x
            if n:
                _min_rotation_into(self.scratch, self.inv, n, self.best)
            out.append(_to_tuple(self.best, 0, n))
        out.sort()
        return tuple(out)


def canonical_form(list rels, long n_ext, list classes, long limit):
    cdef int k = sum(len(c) for c in classes)
    cdef long total = 1 << k
    cdef int i, r
    for c in classes:
        for i in range(2, len(c) + 1):
            total *= i
    cdef long max_code = n_ext + k
    for rel in rels:
        for x in rel:
            if abs(x) > max_code:
                max_code = abs(x)
    cdef long* newcode = <long*>malloc((max_code + 1) * sizeof(long))
    cdef _Packed packed = _Packed(rels)
    best = None
    best_order = None
    best_flips = None
    try:
        if total <= limit:
            per_class = [list(permutations(c)) for c in classes]
            for combo in product(*per_class):
                order = [code for block in combo for code in block]
                for flips in product((1, -1), repeat=k):
                    for r in range(k):
                        newcode[order[r]] = flips[r] * (n_ext + 1 + r)
                    form = packed.relabel(n_ext, newcode)
                    if best is None or form < best:
                        best, best_order, best_flips = form, tuple(order), tuple(flips)
            return best, best_order, best_flips
        order = [code for block in classes for code in block]
        fl = [1] * k
        for r in range(k):
            newcode[order[r]] = n_ext + 1 + r
        best = packed.relabel(n_ext, newcode)
        for r in range(k):
            newcode[order[r]] = -(n_ext + 1 + r)
            cand = packed.relabel(n_ext, newcode)
            if cand < best:
                best = cand
                fl[r] = -1
            else:
                newcode[order[r]] = n_ext + 1 + r
        return best, tuple(order), tuple(fl)
    finally:
        free(newcode)


def hom_table(int order, table, inverse, list relators, int n_src, int n_tgt, int n_int):
    cdef int n_vars = n_src + n_tgt + n_int
    cdef int n_ext = n_src + n_tgt
    cdef int n_rel = len(relators)
    cdef int total_len = sum(len(r) for r in relators)
    cdef int* tab = <int*>malloc(order * order * sizeof(int))
    cdef int* inv = <int*>malloc(order * sizeof(int))
    cdef int* vals = <int*>malloc((n_vars + 1) * sizeof(int))
    cdef long* letters = <long*>malloc((total_len + 1) * sizeof(long))
    cdef int* starts = <int*>malloc((n_rel + 1) * sizeof(int))
    cdef int i, j, pos = 0, acc, v, ok
    cdef long x
    cdef long src_index, tgt_index, count
    counts = {}
    try:
        for i in range(order * order):
            tab[i] = table[i]
        for i in range(order):
            inv[i] = inverse[i]
        for i in range(n_rel):
            starts[i] = pos
            for x in relators[i]:
                letters[pos] = x
                pos += 1
        starts[n_rel] = pos
        for i in range(n_vars):
            vals[i] = 0
        while True:
            # one external assignment: sweep all internal assignments
            count = 0
            for i in range(n_ext, n_vars):
                vals[i] = 0
            while True:
                ok = 1
                for i in range(n_rel):
                    acc = 0
                    for j in range(starts[i], starts[i + 1]):
                        x = letters[j]
                        if x > 0:
                            v = vals[x - 1]
                        else:
                            v = inv[vals[-x - 1]]
                        acc = tab[acc * order + v]
                    if acc != 0:
                        ok = 0
                        break
                if ok:
                    count += 1
                i = n_vars - 1
                while i >= n_ext:
                    vals[i] += 1
                    if vals[i] < order:
                        break
                    vals[i] = 0
                    i -= 1
                if i < n_ext:
                    break
            if count:
                src_index = 0
                for i in range(n_src):
                    src_index = src_index * order + vals[i]
                tgt_index = 0
                for i in range(n_src, n_ext):
                    tgt_index = tgt_index * order + vals[i]
                counts[(src_index, tgt_index)] = count
            i = n_ext - 1
            while i >= 0:
                vals[i] += 1
                if vals[i] < order:
                    break
                vals[i] = 0
                i -= 1
            if i < 0:
                break
        return counts
    finally:
        free(tab)
        free(inv)
        free(vals)
        free(letters)
        free(starts)
