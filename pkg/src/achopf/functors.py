"""Translation between Hopf terms and presentations.

``omega`` reads a presentation off a term; ``omega_bar`` compiles a
presentation into a term: integrals for internal generators, coforms for
targets, comultiplication fan-outs, a wire permutation into relator order,
antipodes on inverted letters, and a multiplication plus cointegral per
relator.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from achopf.hopfterm import (
    GenSym,
    HopfTerm,
    delta_n,
    duality,
    gen,
    ident,
    mu_n,
    s_signs,
    tensor_all,
    tensor_t,
    then,
    then_all,
    upsilon,
)
from achopf.presentations import (
    RelPresentation,
    braiding_p,
    compose_p,
    eliminate,
    elementary,
    identity_p,
    tensor_p,
)
from achopf.words import Generator, Permutation

__all__ = ["OmegaBarChoices", "omega", "omega_layer", "sigma_p", "omega_bar", "generator_order"]


def _gen_presentation(g: GenSym) -> RelPresentation:
    if g is GenSym.ID:
        return identity_p(1)
    if g is GenSym.SWAP:
        return braiding_p(1, 1)
    return elementary(g.text)


def omega_layer(layer: Sequence[GenSym]) -> RelPresentation:
    out = identity_p(0)
    for g in layer:
        out = tensor_p(out, _gen_presentation(g))
    return out


def omega(t: HopfTerm) -> RelPresentation:
    """Presentation of a term: layers tensored, stacked by composition, then eliminated."""
    acc = identity_p(t.n_in)
    for layer in t.slices:
        acc = eliminate(compose_p(acc, omega_layer(layer)))
    return eliminate(acc)


@dataclass(frozen=True)
class OmegaBarChoices:
    """Orders used to build ``omega_bar``.

    ``internal_order`` lists internal generator names, ``relator_order`` is a
    permutation of relator positions.  ``sigma_seed`` selects a random valid
    slot matching instead of the stable first-occurrence one.
    """

    internal_order: tuple | None = None
    relator_order: tuple | None = None
    sigma_seed: int | None = None

    @classmethod
    def random(cls, P: RelPresentation, rng: random.Random) -> "OmegaBarChoices":
        names = [g.name for g in P.internal]
        rng.shuffle(names)
        order = list(range(len(P.relators)))
        rng.shuffle(order)
        return cls(tuple(names), tuple(order), rng.randrange(1 << 30))

    def to_json(self) -> dict:
        return {"internal_order": self.internal_order, "relator_order": self.relator_order, "sigma_seed": self.sigma_seed}

    @classmethod
    def from_json(cls, data: dict) -> "OmegaBarChoices":
        io = data.get("internal_order")
        ro = data.get("relator_order")
        return cls(tuple(io) if io is not None else None, tuple(ro) if ro is not None else None, data.get("sigma_seed"))


def _ordered(P: RelPresentation, choices: OmegaBarChoices):
    if choices.internal_order is None:
        internals = list(P.internal)
    else:
        by_name = {g.name: g for g in P.internal}
        if sorted(choices.internal_order) != sorted(by_name):
            raise ValueError("internal_order must list every internal generator exactly once")
        internals = [by_name[name] for name in choices.internal_order]
    if choices.relator_order is None:
        relators = list(P.relators)
    else:
        if sorted(choices.relator_order) != list(range(len(P.relators))):
            raise ValueError("relator_order must be a permutation of relator positions")
        relators = [P.relators[i] for i in choices.relator_order]
    return internals, relators


def generator_order(P: RelPresentation, choices: OmegaBarChoices | None = None) -> list[Generator]:
    internals, _ = _ordered(P, choices or OmegaBarChoices())
    return list(P.source) + internals + list(P.target)


def sigma_p(P: RelPresentation, choices: OmegaBarChoices | None = None) -> Permutation:
    """Permutation taking the generator-grouped word to the concatenated relators.

    Slot ``j`` of ``g_1^{e_1} ... g_r^{e_r}`` is sent to the position of the
    matching occurrence in the sign-stripped word ``w_1 ... w_s``.
    """
    choices = choices or OmegaBarChoices()
    internals, relators = _ordered(P, choices)
    gbar = list(P.source) + internals + list(P.target)
    positions: dict[Generator, list[int]] = {g: [] for g in gbar}
    pos = 0
    for w in relators:
        for g, _ in w:
            pos += 1
            positions[g].append(pos)
    rng = random.Random(choices.sigma_seed) if choices.sigma_seed is not None else None
    images = []
    for g in gbar:
        slots = positions[g]
        if rng is not None:
            slots = list(slots)
            rng.shuffle(slots)
        images.extend(slots)
    return Permutation(images)


def omega_bar(P: RelPresentation, choices: OmegaBarChoices | None = None) -> HopfTerm:
    choices = choices or OmegaBarChoices()
    internals, relators = _ordered(P, choices)
    n, m, k = P.n, P.m, len(internals)
    gbar = list(P.source) + internals + list(P.target)
    counts = {g: 0 for g in gbar}
    for w in relators:
        for g, _ in w:
            counts[g] += 1
    total = sum(len(w) for w in relators)

    # wires: sources, integrals, coform legs (first m feed relators, last m are outputs)
    prefix = tensor_all([ident(n)] + [gen(GenSym.INT)] * k + ([duality(m)[0]] if m else []))
    fan = tensor_t(tensor_all(delta_n(counts[g] - 1) for g in gbar), ident(m))
    perm = tensor_t(upsilon(sigma_p(P, choices)), ident(m))
    signs = tensor_t(s_signs([s for w in relators for _, s in w]), ident(m))
    collect = tensor_t(tensor_all(mu_n(len(w) - 1) for w in relators), ident(m))
    close = tensor_t(tensor_all(gen(GenSym.COI) for _ in relators), ident(m))
    out = then_all(prefix, fan, perm, signs, collect, close)
    assert out.n_in == n and out.n_out == m and total == perm.n_in - m
    return out
