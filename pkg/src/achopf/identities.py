"""Named equations of the universal cocommutative Hopf algebra and an exact checker.

Each ``Identity`` pairs two terms of equal arity. ``axioms_check`` evaluates
both sides in the group-algebra model of every requested group and records the
first differing matrix entry when they disagree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from achopf.groupmodel import FiniteGroup, eval_term
from achopf.hopfterm import (
    GenSym,
    HopfTerm,
    antipode_s0,
    antipode_s0_mirror,
    delta_n,
    duality,
    duality_inductive,
    gamma_nm,
    gen,
    ident,
    interleave,
    mu_n,
    s_signs,
    tensor_all,
    tensor_power,
    tensor_t,
    then,
    then_all,
    upsilon,
)
from achopf.words import Permutation

__all__ = ["Identity", "IdentityResult", "CheckReport", "hopf_identities", "axiom_pairs", "axioms_check"]


@dataclass(frozen=True)
class Identity:
    name: str
    family: str
    lhs: HopfTerm
    rhs: HopfTerm

    def __post_init__(self):
        if self.lhs.arity != self.rhs.arity:
            raise ValueError(f"{self.name}: sides have arities {self.lhs.arity} and {self.rhs.arity}")


@dataclass(frozen=True)
class IdentityResult:
    name: str
    family: str
    group: str
    ok: bool
    witness: tuple | None = None

    def to_json(self) -> dict:
        return {"name": self.name, "family": self.family, "group": self.group, "ok": self.ok,
                "witness": list(self.witness) if self.witness else None}


@dataclass
class CheckReport:
    groups: list[str]
    results: list[IdentityResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def failures(self) -> list[IdentityResult]:
        return [r for r in self.results if not r.ok]

    def by_family(self) -> dict[str, tuple[int, int]]:
        """family -> (passed, total)."""
        out: dict[str, list[int]] = {}
        for r in self.results:
            slot = out.setdefault(r.family, [0, 0])
            slot[0] += r.ok
            slot[1] += 1
        return {k: (v[0], v[1]) for k, v in out.items()}

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "groups": self.groups,
            "families": {k: {"passed": p, "total": t} for k, (p, t) in self.by_family().items()},
            "failures": [r.to_json() for r in self.failures()],
            "checked": len(self.results),
        }


D, E, M, U = gen(GenSym.COP), gen(GenSym.COU), gen(GenSym.MUL), gen(GenSym.UNI)
S, L, LL, G = gen(GenSym.ANT), gen(GenSym.INT), gen(GenSym.COI), gen(GenSym.SWAP)
I, I0 = ident(1), ident(0)


def _t(*terms: HopfTerm) -> HopfTerm:
    return tensor_all(terms)


def _signs_word(signs: Sequence[int], sigma: Permutation) -> list[int]:
    out = [0] * len(signs)
    for i, s in enumerate(signs, start=1):
        out[sigma(i) - 1] = s
    return out


def _axioms() -> list[Identity]:
    lm = then(M, LL)
    cof = then(L, D)
    out = [
        ("a1", then(D, _t(D, I)), then(D, _t(I, D))),
        ("a2", then(D, _t(E, I)), I),
        ("a2'", then(D, _t(I, E)), I),
        ("a3", then(_t(M, I), M), then(_t(I, M), M)),
        ("a4", then(_t(I, U), M), I),
        ("a4'", then(_t(U, I), M), I),
        ("a5", then_all(_t(D, D), _t(I, G, I), _t(M, M)), then(M, D)),
        ("a6", then(M, E), _t(E, E)),
        ("a7", then(U, D), _t(U, U)),
        ("a8", then(U, E), I0),
        ("a9", then(D, G), D),
        ("i1", then(D, _t(I, LL)), then(LL, U)),
        ("i1'", then(D, _t(LL, I)), then(LL, U)),
        ("i2", then(_t(L, I), M), then(E, L)),
        ("i2'", then(_t(I, L), M), then(E, L)),
        ("i3", then(L, LL), I0),
        ("s1", then_all(D, _t(S, I), M), then(E, U)),
        ("s1'", then_all(D, _t(I, S), M), then(E, U)),
    ]
    ids = [Identity(n, "hopf axioms", a, b) for n, a, b in out]
    derived = [
        ("s0", antipode_s0(), S),
        ("s0'", antipode_s0_mirror(), S),
        ("s2", then(S, S), I),
        ("i4", then(L, S), L),
        ("i5", then(S, LL), LL),
        ("s3", then(S, D), then_all(D, G, _t(S, S))),
        ("s3'", then(S, D), then(D, _t(S, S))),
        ("s4", then(M, S), then_all(G, _t(S, S), M)),
        ("s5", then(S, E), E),
        ("s6", then(U, S), U),
        ("s7", then(cof, _t(S, I)), then(cof, _t(I, S))),
        ("s8", then(_t(S, I), lm), then(_t(I, S), lm)),
        ("s9", then(G, lm), lm),
        ("s10", then(_t(cof, I), _t(I, lm)), S),
        ("s10'", then(_t(I, cof), _t(lm, I)), S),
    ]
    ids += [Identity(n, "antipode", a, b) for n, a, b in derived]
    return ids


def _forms(max_n: int) -> list[Identity]:
    out = [
        Identity("f1", "form", duality(1)[0], then(L, D)),
        Identity("f2", "form", duality(1)[1], then_all(_t(I, S), M, LL)),
    ]
    for n in range(1, max_n + 1):
        cof, form = duality(n)
        idn = ident(n)
        out.append(Identity(f"f3[n={n}]", "form", then(_t(cof, idn), _t(idn, form)), idn))
        out.append(Identity(f"f3'[n={n}]", "form", then(_t(idn, cof), _t(form, idn)), idn))
        icof, iform = duality_inductive(n)
        out.append(Identity(f"coform-inductive[n={n}]", "form", icof, cof))
        out.append(Identity(f"form-inductive[n={n}]", "form", iform, form))
    return out


def _iterated(max_n: int) -> list[Identity]:
    out = []
    for n in range(0, max_n + 1):
        k = n + 1
        lhs = then(mu_n(n), D)
        rhs = then_all(tensor_power(D, k), upsilon(interleave(k)), _t(mu_n(n), mu_n(n)))
        out.append(Identity(f"a10[n={n}]", "iterated", lhs, rhs))
        for images in itertools.permutations(range(1, k + 1)):
            sigma = Permutation(images)
            out.append(Identity(f"a11[sigma={list(images)}]", "iterated", then(delta_n(n), upsilon(sigma)), delta_n(n)))
        tau = Permutation([k + 1 - i for i in range(1, k + 1)])
        rhs = then_all(tensor_power(S, k), upsilon(tau), mu_n(n))
        out.append(Identity(f"s11[n={n}]", "iterated", then(mu_n(n), S), rhs))
    return out


def _sign_layers(max_len: int) -> list[Identity]:
    out = []
    for length in range(1, max_len + 1):
        pi = upsilon(interleave(length))
        fan = then(tensor_power(D, length), pi)
        for signs in itertools.product((1, -1), repeat=length):
            tag = "".join("+" if s == 1 else "-" for s in signs)
            for images in itertools.permutations(range(1, length + 1)):
                sigma = Permutation(images)
                moved = _signs_word(signs, sigma)
                out.append(Identity(
                    f"s12[w={tag},sigma={list(images)}]", "sign layers",
                    then(s_signs(signs), upsilon(sigma)), then(upsilon(sigma), s_signs(moved)),
                ))
            out.append(Identity(
                f"s13[w={tag}]", "sign layers",
                then(s_signs(signs), fan), then(fan, s_signs(list(signs) * 2)),
            ))
    return out


def _braiding() -> list[Identity]:
    out = [
        Identity("b1", "braiding", then(G, G), ident(2)),
        Identity("b2", "braiding", gamma_nm(1, 2), then(_t(G, I), _t(I, G))),
        Identity("b2'", "braiding", gamma_nm(2, 1), then(_t(I, G), _t(G, I))),
    ]
    for g in GenSym:
        if g in (GenSym.ID,):
            continue
        f = gen(g)
        p, q = f.arity
        out.append(Identity(f"b3[{g.text},right]", "braiding",
                            then(_t(f, I), gamma_nm(q, 1)), then(gamma_nm(p, 1), _t(I, f))))
        out.append(Identity(f"b3[{g.text},left]", "braiding",
                            then(_t(I, f), gamma_nm(1, q)), then(gamma_nm(1, p), _t(f, I))))
    return out


def hopf_identities(max_n: int = 3, max_word: int = 4) -> list[Identity]:
    """Every identity checked by ``axioms_check``, in report order."""
    return _axioms() + _forms(max_n) + _iterated(max_n) + _sign_layers(max_word) + _braiding()


def axiom_pairs() -> list[Identity]:
    """Defining axioms plus symmetry of the braiding and the rebuilt antipode.

    These are the equations whose two sides the presentation search should
    identify.
    """
    picked = [i for i in _axioms() if i.family == "hopf axioms"]
    picked.append(Identity("b1", "braiding", then(G, G), ident(2)))
    picked.append(Identity("s0", "antipode", antipode_s0(), S))
    return picked


def axioms_check(
    groups: Iterable[FiniteGroup],
    antipode: Mapping[str, Sequence[int]] | None = None,
    identities: Sequence[Identity] | None = None,
) -> CheckReport:
    """Evaluate both sides of each identity exactly in each group.

    ``antipode`` maps a group label to a replacement table for S; it exists
    so that a corrupted model can be shown to fail.
    """
    groups = list(groups)
    identities = list(identities) if identities is not None else hopf_identities()
    report = CheckReport([g.label for g in groups])
    antipode = antipode or {}
    for G_ in groups:
        swap = antipode.get(G_.label)
        for ident_ in identities:
            a = eval_term(ident_.lhs, G_, antipode=swap)
            b = eval_term(ident_.rhs, G_, antipode=swap)
            witness = None if a == b else a.first_difference(b)
            report.results.append(IdentityResult(ident_.name, ident_.family, G_.label, witness is None, witness))
    return report
