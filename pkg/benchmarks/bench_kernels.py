"""Time the compiled kernels against the pure-Python ones on identical inputs.

    python3 benchmarks/bench_kernels.py [--repeat N] [--json]

Both modules are imported directly, so the selector's environment switch does
not matter here. Results are checked for equality before any timing.
"""

import argparse
import json
import random
import sys
import timeit

from achopf import _core_py

try:
    from achopf import _core
except ImportError:
    _core = None


def _word(rng, alphabet, length):
    return tuple(rng.choice(alphabet) * rng.choice((1, -1)) for _ in range(length))


def workloads(seed=7):
    rng = random.Random(seed)
    words = [_word(rng, [1, 2, 3, 4], rng.randint(10, 60)) for _ in range(400)]
    # canonical form: 2 externals, 3 internals in one class, five short relators
    keys = []
    for _ in range(40):
        rels = [_word(rng, [1, 2, 3, 4, 5], rng.randint(1, 6)) for _ in range(5)]
        keys.append(([_core_py.cyclic_reduce(r) for r in rels], 2, [[3, 4, 5]]))
    # homomorphism table: S3, one source, one target, two internals
    s3 = [[0, 1, 2, 3, 4, 5], [1, 0, 3, 2, 5, 4], [2, 4, 0, 5, 1, 3],
          [3, 5, 1, 4, 0, 2], [4, 2, 5, 0, 3, 1], [5, 3, 4, 1, 2, 0]]
    flat = [x for row in s3 for x in row]
    inverse = [next(j for j in range(6) if s3[i][j] == 0) for i in range(6)]
    homs = []
    for _ in range(20):
        rels = [_word(rng, [1, 2, 3, 4], rng.randint(2, 6)) for _ in range(3)]
        homs.append((6, flat, inverse, rels, 1, 1, 2))
    return words, keys, homs


def run(mod, words, keys, homs):
    return {
        "free_reduce": lambda: [mod.free_reduce(w) for w in words],
        "cyclic_reduce": lambda: [mod.cyclic_reduce(w) for w in words],
        "min_rotation": lambda: [mod.min_rotation(w) for w in words],
        "canonical_form": lambda: [mod.canonical_form(r, n, c, 720 * 64) for r, n, c in keys],
        "hom_table": lambda: [mod.hom_table(*h) for h in homs],
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    if _core is None:
        print("compiled kernels not built; nothing to compare", file=sys.stderr)
        return 1
    data = workloads()
    slow, fast = run(_core_py, *data), run(_core, *data)
    rows = []
    for name in slow:
        if slow[name]() != fast[name]():
            print(f"{name}: implementations disagree", file=sys.stderr)
            return 1
        t_py = min(timeit.repeat(slow[name], number=1, repeat=args.repeat))
        t_c = min(timeit.repeat(fast[name], number=1, repeat=args.repeat))
        rows.append({"kernel": name, "python_s": t_py, "cython_s": t_c, "speedup": t_py / t_c})
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print(f"{'kernel':<16}{'python':>12}{'cython':>12}{'speedup':>10}")
        for r in rows:
            print(f"{r['kernel']:<16}{r['python_s']:>11.4f}s{r['cython_s']:>11.4f}s{r['speedup']:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
