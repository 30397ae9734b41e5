"""Command line entry point.

Every positional input is either a path to a file holding the text or the
text itself. Presentations start with ``<``; anything else is read as a term.
Exit status: 0 success or equivalent, 2 distinguished or failing check,
3 search bounds exhausted, 1 error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from achopf import _kernels
from achopf.acsearch import (
    Certificate,
    Distinguished,
    ExhaustedBounds,
    Found,
    SearchBounds,
    reduce_all_moves,
    search_equiv,
    verify_certificate,
)
from achopf.functors import OmegaBarChoices, omega, omega_bar
from achopf.groupmodel import builtin_groups, eval_dense, eval_term, hom_count, make_group
from achopf.hopfterm import HopfTerm, format_term, parse_term, tensor_t, then
from achopf.identities import axioms_check
from achopf.moves import move_to_json
from achopf.presentations import (
    RelPresentation,
    canonical_key,
    compose_p,
    eliminate,
    format_presentation,
    parse_presentation,
    tensor_p,
)
from achopf.words import WordSyntaxError

__all__ = ["main", "parse_presentation", "parse_term", "read_input", "read_value"]

EXIT_OK, EXIT_ERROR, EXIT_DISTINGUISHED, EXIT_EXHAUSTED = 0, 1, 2, 3
BOUND_FLAGS = ("max_len", "max_rel", "max_int", "max_ac1", "depth", "nodes")


class CliError(Exception):
    pass


def read_input(arg: str) -> str:
    if os.path.isfile(arg):
        with open(arg) as fh:
            return fh.read()
    return arg


def read_value(arg: str):
    """Parse a presentation or a term from text or file."""
    text = read_input(arg)
    if text.lstrip().startswith("<"):
        return parse_presentation(text)
    return parse_term(text)


def _presentation(arg: str, terms: bool = True) -> RelPresentation:
    """A presentation, or the presentation of a term when ``terms`` is set."""
    value = read_value(arg)
    if isinstance(value, HopfTerm) and terms:
        return omega(value)
    if not isinstance(value, RelPresentation):
        raise CliError(f"expected a presentation, got a term: {arg!r}")
    return value


def _term(arg: str) -> HopfTerm:
    value = read_value(arg)
    if not isinstance(value, HopfTerm):
        raise CliError(f"expected a term, got a presentation: {arg!r}")
    return value


def _show(value) -> str:
    return format_presentation(value) if isinstance(value, RelPresentation) else format_term(value)


def _value_json(value) -> dict:
    if isinstance(value, RelPresentation):
        return {"kind": "presentation", "text": format_presentation(value), "value": value.to_json()}
    return {"kind": "term", "text": format_term(value), "arity": list(value.arity)}


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise CliError("config must be a JSON object")
    return data


def _groups(args, config):
    specs = args.groups or config.get("groups")
    if not specs:
        return builtin_groups()
    if isinstance(specs, str):
        specs = specs.split(",")
    return [make_group(s.strip() if isinstance(s, str) else s) for s in specs]


def _bounds(args, config) -> SearchBounds:
    values = dict(config.get("bounds", {}))
    for name in BOUND_FLAGS:
        given = getattr(args, name, None)
        if given is not None:
            values[name] = given
    unknown = set(values) - set(BOUND_FLAGS)
    if unknown:
        raise CliError(f"unknown bounds in config: {sorted(unknown)}")
    return SearchBounds(**values)


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True) if args.json else text)


# -- commands -------------------------------------------------------------------


def cmd_parse(args, config) -> int:
    value = read_value(args.input)
    _emit(args, _value_json(value), _show(value))
    return EXIT_OK


def cmd_normalize(args, config) -> int:
    P = _presentation(args.input)
    R, _ = reduce_all_moves(eliminate(P))
    key = canonical_key(R).hex()
    _emit(args, {**_value_json(R), "key": key}, f"{format_presentation(R)}\nkey {key}")
    return EXIT_OK


def _binary(args, on_p, on_t) -> int:
    a, b = read_value(args.left), read_value(args.right)
    if isinstance(a, RelPresentation) and isinstance(b, RelPresentation):
        out = on_p(a, b)
    elif isinstance(a, HopfTerm) and isinstance(b, HopfTerm):
        out = on_t(a, b)
    else:
        raise CliError("both operands must be presentations or both terms")
    _emit(args, _value_json(out), _show(out))
    return EXIT_OK


def cmd_compose(args, config) -> int:
    return _binary(args, compose_p, then)


def cmd_tensor(args, config) -> int:
    return _binary(args, tensor_p, tensor_t)


def cmd_omega(args, config) -> int:
    P = omega(_term(args.input))
    _emit(args, _value_json(P), format_presentation(P))
    return EXIT_OK


def cmd_omegabar(args, config) -> int:
    P = _presentation(args.input, terms=False)
    choices = OmegaBarChoices()
    if args.choices:
        choices = OmegaBarChoices.from_json(json.loads(read_input(args.choices)))
    t = omega_bar(P, choices)
    _emit(args, _value_json(t), format_term(t))
    return EXIT_OK


def cmd_eval(args, config) -> int:
    value = read_value(args.input)
    t = omega_bar(value) if isinstance(value, RelPresentation) else value
    G = make_group(args.group)
    M = (eval_dense if args.dense else eval_term)(t, G)
    payload = {"group": G.label, "matrix": M.to_json()}
    lines = [f"{G.label}: {M.rows}x{M.cols}, {len(M.entries)} nonzero"]
    lines += [f"  [{r},{c}] = {v}" for (r, c), v in sorted(M.entries.items())]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_homcount(args, config) -> int:
    P = _presentation(args.input)
    G = make_group(args.group)
    count = hom_count(P, G)
    _emit(args, {"group": G.label, "count": count}, str(count))
    return EXIT_OK


def cmd_ac_equiv(args, config) -> int:
    P, Q = _presentation(args.left), _presentation(args.right)
    bounds = _bounds(args, config)
    groups = _groups(args, config)
    threads = args.threads or config.get("threads", 1)
    start = time.perf_counter()
    res = search_equiv(P, Q, bounds, groups, threads=threads, prefilter=not args.no_prefilter)
    elapsed = time.perf_counter() - start
    if isinstance(res, Found):
        moves = [move_to_json(m) for m in res.certificate.moves]
        if args.cert_out:
            with open(args.cert_out, "w") as fh:
                json.dump(moves, fh, indent=1)
        payload = {"result": "equivalent", "depth": res.depth, "nodes": res.nodes, "moves": len(moves),
                   "seconds": elapsed, "certificate": moves}
        _emit(args, payload, f"equivalent: {len(moves)} moves, depth {res.depth}, {res.nodes} nodes")
        return EXIT_OK
    if isinstance(res, Distinguished):
        row, col, a, b = res.entry
        payload = {"result": "distinguished", "group": res.group, "entry": list(res.entry), "seconds": elapsed}
        _emit(args, payload, f"distinguished by {res.group}: entry [{row},{col}] is {a} versus {b}")
        return EXIT_DISTINGUISHED
    assert isinstance(res, ExhaustedBounds)
    payload = {"result": "exhausted", "nodes": res.nodes, "depth": res.depth, "reason": res.reason,
               "bounds": bounds.to_json(), "seconds": elapsed}
    _emit(args, payload, f"undecided: {res.reason} ({res.nodes} nodes, depth {res.depth})")
    return EXIT_EXHAUSTED


def cmd_verify_cert(args, config) -> int:
    P, Q = _presentation(args.left), _presentation(args.right)
    cert = Certificate.from_json(json.loads(read_input(args.cert)))
    check = verify_certificate(P, cert, Q)
    payload = {"ok": check.ok, "step": check.step, "message": check.message, "moves": len(cert)}
    text = f"valid certificate ({len(cert)} moves)" if check else f"invalid at step {check.step}: {check.message}"
    _emit(args, payload, text)
    return EXIT_OK if check else EXIT_DISTINGUISHED


def _antipode_overrides(items) -> dict:
    out = {}
    for item in items or ():
        label, _, table = item.partition("=")
        if not table:
            raise CliError(f"--antipode expects LABEL=i,j,..., got {item!r}")
        out[make_group(label).label] = [int(x) for x in table.split(",")]
    return out


def cmd_axioms_check(args, config) -> int:
    start = time.perf_counter()
    report = axioms_check(_groups(args, config), antipode=_antipode_overrides(args.antipode))
    elapsed = time.perf_counter() - start
    payload = {**report.to_json(), "seconds": elapsed}
    lines = [f"{fam}: {p}/{t}" for fam, (p, t) in report.by_family().items()]
    lines += [f"FAIL {r.name} in {r.group}: entry {list(r.witness)}" for r in report.failures()]
    lines.append(("all identities hold" if report.ok else "some identities fail") + f" ({elapsed:.1f} s)")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if report.ok else EXIT_DISTINGUISHED


# -- argument parsing -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--config", help="JSON file with default bounds, groups and threads")

    parser = argparse.ArgumentParser(prog="achopf", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s ({_kernels.IMPLEMENTATION} kernels)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    add("parse", cmd_parse, "parse and reprint a presentation or term").add_argument("input")
    add("normalize", cmd_normalize, "eliminate, reduce and print the canonical key").add_argument("input")
    for name, func, text in (("compose", cmd_compose, "compose (left first)"), ("tensor", cmd_tensor, "tensor product")):
        p = add(name, func, text)
        p.add_argument("left")
        p.add_argument("right")
    add("omega", cmd_omega, "presentation of a term").add_argument("input")
    p = add("omegabar", cmd_omegabar, "term compiled from a presentation")
    p.add_argument("input")
    p.add_argument("--choices", help="JSON with internal_order, relator_order, sigma_seed")
    p = add("eval", cmd_eval, "matrix of a term (or compiled presentation) in a group")
    p.add_argument("input")
    p.add_argument("--group", required=True, help="z2, z3, z6, s3, zN, sN or a JSON table file")
    p.add_argument("--dense", action="store_true", help="use the dense Kronecker evaluator")
    p = add("homcount", cmd_homcount, "homomorphism count of a closed presentation")
    p.add_argument("input")
    p.add_argument("--group", required=True)

    p = add("ac-equiv", cmd_ac_equiv, "search for an AC-move certificate")
    p.add_argument("left")
    p.add_argument("right")
    for name in BOUND_FLAGS:
        p.add_argument("--" + name.replace("_", "-"), dest=name, type=int)
    p.add_argument("--threads", type=int)
    p.add_argument("--groups", help="comma separated groups for the invariant prefilter")
    p.add_argument("--no-prefilter", action="store_true")
    p.add_argument("--cert-out", help="write the certificate (JSON list of moves) here")

    p = add("verify-cert", cmd_verify_cert, "replay a certificate")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("cert")

    p = add("axioms-check", cmd_axioms_check, "check every identity exactly in finite group models")
    p.add_argument("--groups", help="comma separated groups (default z2,z3,z6,s3)")
    p.add_argument("--antipode", action="append", metavar="LABEL=TABLE",
                   help="replace the antipode of one group by a permutation table")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config)
        return args.func(args, config)
    except (CliError, WordSyntaxError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
