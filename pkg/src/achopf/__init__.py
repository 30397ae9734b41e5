"""Relative group presentations modulo AC-moves and the free symmetric monoidal
category on a unimodular cocommutative Hopf algebra, with the functors between
them, a finite-group evaluation model and a certificate-producing search."""

from achopf._kernels import IMPLEMENTATION
from achopf.acsearch import (
    Certificate,
    Distinguished,
    ExhaustedBounds,
    Found,
    SearchBounds,
    neighbors,
    search_equiv,
    verify_certificate,
)
from achopf.functors import OmegaBarChoices, omega, omega_bar, sigma_p
from achopf.groupmodel import FiniteGroup, LinearMap, eval_dense, eval_term, hom_count, hom_oracle, make_group
from achopf.hopfterm import (
    GenSym,
    HopfTerm,
    antipode_s0,
    delta_n,
    duality,
    gen,
    ident,
    mu_n,
    parse_term,
    s_w,
    tensor_t,
    then,
    upsilon,
)
from achopf.moves import apply_move, inverse_moves
from achopf.presentations import (
    RelPresentation,
    braiding_p,
    canonical_key,
    compose_p,
    elementary,
    eliminate,
    identity_p,
    parse_presentation,
    tensor_p,
)
from achopf.words import Generator, Kind, Permutation, Word, free_cyclic_reduce, invert_word, parse_word, permute_word

__version__ = "0.1.0"
