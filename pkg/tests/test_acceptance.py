"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` (lines appear in the terminal
summary) or directly with ``python3 tests/test_acceptance.py``.
"""

import itertools
import random
import time


from achopf.acsearch import Distinguished, Found, SearchBounds, search_equiv, verify_certificate
from achopf.functors import OmegaBarChoices, omega, omega_bar
from achopf.groupmodel import builtin_groups, eval_term, hom_count, hom_oracle
from achopf.hopfterm import GenSym, gen
from achopf.identities import axiom_pairs, axioms_check
from achopf.presentations import compose_p, elementary, format_presentation, identity_p, parse_presentation

from corpus import corpus
from helpers import random_applicable_move, random_presentation

RESULTS: dict[int, str] = {}
GROUPS = builtin_groups()


def record(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"
    RESULTS[n] = line
    print(line)
    return ok


def test_criterion_1_identities_exact():
    start = time.perf_counter()
    report = axioms_check(GROUPS)
    elapsed = time.perf_counter() - start
    bad = [f"{r.name}@{r.group}" for r in report.failures()]
    ok = report.ok and elapsed < 60
    detail = f"{len(report.results)} checks over {len(GROUPS)} groups in {elapsed:.1f} s; failures {bad[:5]}"
    assert record(1, ok, detail), detail


def test_criterion_2_axioms_by_search():
    bounds = SearchBounds(max_len=8, max_int=4, max_ac1=4, depth=12, nodes=1_000_000)
    problems, worst, deepest = [], 0.0, 0
    for ident in axiom_pairs():
        P, Q = omega(ident.lhs), omega(ident.rhs)
        start = time.perf_counter()
        res = search_equiv(P, Q, bounds)
        elapsed = time.perf_counter() - start
        worst = max(worst, elapsed)
        if not isinstance(res, Found):
            problems.append(f"{ident.name}: {type(res).__name__}")
            continue
        deepest = max(deepest, res.depth)
        if not verify_certificate(P, res.certificate, Q) or res.depth > 12 or elapsed >= 30:
            problems.append(f"{ident.name}: depth {res.depth}, {elapsed:.1f} s")
    detail = f"{len(axiom_pairs())} axioms, max depth {deepest}, slowest {worst:.2f} s; problems {problems}"
    assert record(2, not problems, detail), detail


def test_criterion_3_compile_after_read_is_identity():
    bad = []
    for g in GenSym:
        t = gen(g)
        for G in GROUPS:
            if eval_term(omega_bar(omega(t)), G) != eval_term(t, G):
                bad.append(f"{g.text}@{G.label}")
    detail = f"{len(GenSym)} generators x {len(GROUPS)} groups; mismatches {bad}"
    assert record(3, not bad, detail), detail


def test_criterion_4_read_after_compile_is_identity():
    problems, worst, deepest = [], 0.0, 0
    items = corpus()
    for P in items:
        R = omega(omega_bar(P))
        start = time.perf_counter()
        res = search_equiv(R, P, SearchBounds(depth=14))
        elapsed = time.perf_counter() - start
        worst = max(worst, elapsed)
        if isinstance(res, Found) and verify_certificate(R, res.certificate, P) and elapsed < 300:
            deepest = max(deepest, res.depth)
        else:
            problems.append(f"{format_presentation(P)}: {type(res).__name__}")
    detail = f"{len(items)} presentations, max depth {deepest}, slowest {worst:.2f} s; problems {problems}"
    assert record(4, not problems, detail), detail


def test_criterion_5_choices_do_not_matter():
    rng = random.Random(2024)
    mismatches, compared = 0, 0
    for _ in range(50):
        P = random_presentation(rng, max_arity=2, max_int=2, max_rel=3, max_len=4)
        for G in GROUPS:
            values = [eval_term(omega_bar(P, OmegaBarChoices.random(P, rng)), G) for _ in range(5)]
            for a, b in itertools.combinations(values, 2):
                compared += 1
                mismatches += a != b
    detail = f"50 presentations x 5 choices x {len(GROUPS)} groups, {compared} pairs; {mismatches} mismatches"
    assert record(5, mismatches == 0, detail), detail


def test_criterion_6_moves_preserve_evaluation():
    rng = random.Random(606)
    mismatches = 0
    kinds = set()
    for _ in range(200):
        P = random_presentation(rng, max_arity=2, max_int=2, max_rel=3, max_len=4)
        move, Q = random_applicable_move(rng, P)
        kinds.add(type(move).__name__)
        for G in GROUPS:
            mismatches += eval_term(omega_bar(P), G) != eval_term(omega_bar(Q), G)
    detail = f"200 (presentation, move) pairs, {len(kinds)} move kinds; {mismatches} mismatches"
    assert record(6, mismatches == 0, detail), detail


def _brute_count(relators, G, k):
    """Assignments of ``k`` internals satisfying relators given as (index, sign) lists."""
    total = 0
    for vals in itertools.product(range(G.order), repeat=k):
        ok = True
        for r in relators:
            acc = 0
            for i, s in r:
                acc = G.table[acc][vals[i] if s > 0 else G.inverse[vals[i]]]
            ok &= acc == 0
        total += ok
    return total


def test_criterion_7_oracle_factorization():
    bad = []
    for P in corpus():
        for G in GROUPS:
            if eval_term(omega_bar(P), G) != hom_oracle(P, G):
                bad.append(f"{format_presentation(P)}@{G.label}")
    s3 = next(G for G in GROUPS if G.label == "S3")
    squares = _brute_count([[(0, 1), (0, 1)]], s3, 1)
    mixed = _brute_count([[(0, 1), (0, 1), (1, -1), (1, -1), (1, -1)]], s3, 2)
    c1 = hom_count(parse_presentation("< ; ; x | x^2 >"), s3)
    c2 = hom_count(parse_presentation("< ; ; x, y | x^2 y^-3 >"), s3)
    fixtures = (squares, mixed, c1, c2) == (4, 12, 4, 12)
    detail = f"corpus x {len(GROUPS)} groups mismatches {bad}; counts {c1}, {c2} (brute force {squares}, {mixed})"
    assert record(7, not bad and fixtures, detail), detail


def test_criterion_8_identity_laws():
    problems = []
    for P in corpus():
        limit = 2 * (P.n + P.m) + 4
        for side, R in (("left", compose_p(identity_p(P.n), P)), ("right", compose_p(P, identity_p(P.m)))):
            res = search_equiv(R, P, SearchBounds(depth=limit))
            if not (isinstance(res, Found) and res.depth <= limit and verify_certificate(R, res.certificate, P)):
                problems.append(f"{side} {format_presentation(P)}: {type(res).__name__}")
    detail = f"{2 * len(corpus())} searches; problems {problems}"
    assert record(8, not problems, detail), detail


def test_criterion_9_negative_control():
    start = time.perf_counter()
    res = search_equiv(identity_p(1), elementary("ant"))
    elapsed = time.perf_counter() - start
    ok = isinstance(res, Distinguished) and res.group == "Z/3" and elapsed < 1.0
    detail = f"{res} in {elapsed * 1000:.1f} ms"
    assert record(9, ok, detail), detail


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
    raise SystemExit(0 if all("PASS" in v for v in RESULTS.values()) else 1)
