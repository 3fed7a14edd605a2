"""``multifan`` command line.

Exit codes: 0 success, 2 invalid input, 3 internal consistency violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import catalog as catalog_module
from . import config
from .algebra import annihilator_basis, d_vector, hilbert, is_editable
from .errors import ConsistencyError, MultiFanError, NotACycle
from .exactmath import as_rational, format_rational
from .explorer import r_invariant, singular_vertices
from .fan import MultiFan, connected_sum, join, project, suspend
from .io import FanDocument, document_from_cycle, document_from_fan, dumps, load
from .moves import MoveSpec, apply_move, random_moves, suspended_move
from .volume import volume_polynomial


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _rationals(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(as_rational(x.strip()) for x in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}") from exc


def _pairs(text: str) -> list[tuple[int, int]]:
    out = []
    for item in text.split(","):
        a, sep, b = item.partition(":")
        if not sep:
            raise argparse.ArgumentTypeError(f"expected pairs like 1:4,2:5, got {text!r}")
        out.append((int(a), int(b)))
    return out


def _seed(args, doc: FanDocument | None = None) -> int:
    if args.seed is not None:
        return args.seed
    if doc is not None and doc.seed is not None:
        return doc.seed
    return int(os.environ.get(config.SEED_ENV, config.DEFAULT_SEED))


def _emit(args, text: str, payload) -> None:
    out = json.dumps(payload, indent=2) + "\n" if args.json else text.rstrip("\n") + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _emit_fan(args, fan: MultiFan, extra: dict | None = None) -> None:
    text = dumps(fan)
    if extra and args.json:
        payload = {"fan": json.loads(text), **extra}
        text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dtext(d) -> str:
    return "(" + ",".join(str(x) for x in d) + ")"


def cmd_validate(args) -> int:
    doc = load(args.file)
    cycle = doc.cycle
    if not cycle.is_cycle():
        raise NotACycle("boundary of the chain is not zero")
    ghosts = cycle.ghost_vertices()
    report = singular_vertices(cycle)
    if doc.coloring is not None:
        doc.fan()
    smooth = [v for v in sorted(cycle.vertices()) if v not in report.vertices]
    lines = [f"valid, {len(report.vertices)} singular"]
    if report.vertices:
        lines.append("singular: " + ",".join(map(str, report.vertices)))
    lines.append("smooth: " + ",".join(map(str, smooth)))
    if ghosts:
        lines.append("ghost: " + ",".join(map(str, ghosts)))
    if report.adjacent_pairs:
        lines.append("warning: singular vertices joined by edges " + str([list(e) for e in report.adjacent_pairs]))
    payload = {
        "valid": True,
        "has_lambda": doc.coloring is not None,
        "singular": list(report.vertices),
        "smooth": smooth,
        "ghost": ghosts,
        "adjacent_singular_pairs": [list(e) for e in report.adjacent_pairs],
    }
    _emit(args, "\n".join(lines), payload)
    return 0


def _fan_and_polarization(args):
    doc = load(args.file)
    pol = getattr(args, "polarization", None) or doc.polarization
    return doc.fan(), pol, _seed(args, doc)


def cmd_volpoly(args) -> int:
    fan, pol, seed = _fan_and_polarization(args)
    v = volume_polynomial(fan, pol, seed)
    payload = {"polynomial": v.to_text(), "terms": [[list(e), format_rational(c)] for e, c in v.items()]}
    if args.at:
        value = v(args.at)
        payload["value"] = format_rational(value)
        _emit(args, f"{v.to_text()}\nvalue: {format_rational(value)}", payload)
    else:
        _emit(args, v.to_text(), payload)
    return 0


def cmd_dvector(args) -> int:
    fan, pol, seed = _fan_and_polarization(args)
    d = d_vector(fan, certify=args.certify, polarization=pol, seed=seed)
    _emit(args, _dtext(d), {"d_vector": list(d)})
    return 0


def cmd_hilbert(args) -> int:
    fan, pol, seed = _fan_and_polarization(args)
    h = hilbert(fan, certify=args.certify, polarization=pol, seed=seed)
    _emit(args, h.to_text(), {"hilbert": h.to_text(), "d_vector": list(h.coefficients)})
    return 0


def cmd_ann(args) -> int:
    fan, pol, seed = _fan_and_polarization(args)
    basis = annihilator_basis(fan, args.degree, polarization=pol, seed=seed)
    texts = [b.to_text(var="d") for b in basis]
    _emit(args, "\n".join(texts) if texts else "(none)", {"degree": args.degree, "basis": texts})
    return 0


def cmd_editable(args) -> int:
    fan, pol, seed = _fan_and_polarization(args)
    rep = is_editable(fan, certify=args.certify, polarization=pol, seed=seed)
    text = (
        f"{'editable' if rep.editable else 'not editable'}\n"
        f"d-vector: {_dtext(rep.d_vector)}\n"
        f"dim im(x d_y): {_dtext(rep.image_dims)}\n"
        f"dim Ker(x d_x): {_dtext(rep.kernel_dims)}"
    )
    payload = {
        "editable": rep.editable,
        "d_vector": list(rep.d_vector),
        "image_dims": list(rep.image_dims),
        "kernel_dims": list(rep.kernel_dims),
    }
    _emit(args, text, payload)
    return 0


def cmd_project(args) -> int:
    fan = load(args.file).fan()
    _emit_fan(args, project(fan, args.face))
    return 0


def cmd_join(args) -> int:
    _emit_fan(args, join(load(args.first).fan(), load(args.second).fan()))
    return 0


def cmd_csum(args) -> int:
    _emit_fan(args, connected_sum(load(args.first).fan(), load(args.second).fan(), args.identify))
    return 0


def cmd_suspend(args) -> int:
    fan = load(args.file).fan()
    _emit_fan(args, suspend(fan, args.apex_x, args.apex_y))
    return 0


def cmd_move(args) -> int:
    doc = load(args.file)
    fan = doc.fan()
    spec = MoveSpec(tuple(args.kind), tuple(args.target))
    seed = _seed(args, doc)
    if args.suspended:
        result = suspended_move(fan, spec, new_lambda=args.new_lambda, seed=seed)
    else:
        result = apply_move(fan, spec, new_lambda=args.new_lambda, seed=seed)
    _emit_fan(args, result, {"moves": [spec.to_dict()]})
    return 0


def cmd_shuffle(args) -> int:
    doc = load(args.file)
    fan, log = random_moves(doc.fan(), args.count, seed=_seed(args, doc))
    _emit_fan(args, fan, {"moves": [s.to_dict() for s in log]})
    if not args.json:
        sys.stderr.write(json.dumps([s.to_dict() for s in log]) + "\n")
    return 0


def cmd_rx(args) -> int:
    doc = load(args.file)
    seed = _seed(args, doc)
    rep = r_invariant(doc.cycle, doc.n, samples_per_stratum=args.samples, seed=seed, workers=args.workers)
    lines = [f"r = {rep.r}"]
    lines.append("singular: " + (",".join(map(str, rep.singular.vertices)) or "none"))
    for s in rep.strata:
        lines.append(f"  {s.spec.label()}: {_dtext(s.d_vector)} ({s.samples} samples)")
    lines.append(f"seed: {seed}")
    _emit(args, "\n".join(lines), rep.to_dict())
    return 0


def cmd_catalog(args) -> int:
    entries = catalog_module.catalog()
    if args.name is None:
        _emit(args, "\n".join(sorted(entries)), {"names": sorted(entries)})
        return 0
    if args.name not in entries:
        raise MultiFanError(f"unknown catalog entry {args.name!r}; choose from {', '.join(sorted(entries))}")
    obj = entries[args.name]
    doc = document_from_fan(obj) if isinstance(obj, MultiFan) else document_from_cycle(obj)
    text = json.dumps(doc.to_dict(), indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help=f"random seed (default ${config.SEED_ENV} or 1729)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--out", default=None, help="write output to this file")

    parser = argparse.ArgumentParser(prog="multifan", description="Exact invariants of multi-fans.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, file=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if file:
            p.add_argument("file")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check a fan or cycle file and classify its vertices")
    for name, func, help_text in (
        ("volpoly", cmd_volpoly, "volume polynomial"),
        ("dvector", cmd_dvector, "graded dimensions of the duality algebra"),
        ("hilbert", cmd_hilbert, "Hilbert function in t^2"),
        ("ann", cmd_ann, "annihilator basis in one degree"),
        ("editable", cmd_editable, "editability test for suspension-shaped fans"),
    ):
        p = add(name, func, help_text)
        p.add_argument("--polarization", type=_rationals, default=None)
        if name in ("dvector", "hilbert", "editable"):
            p.add_argument("--certify", action="store_true", help="exact rank instead of modular")
        if name == "volpoly":
            p.add_argument("--at", type=_rationals, default=None, help="evaluate at these support parameters")
        if name == "ann":
            p.add_argument("--degree", type=int, required=True)

    add("project", cmd_project, "projected fan on the link of a face").add_argument("--face", type=_ints, required=True)
    p = add("join", cmd_join, "join of two fans", file=False)
    p.add_argument("first")
    p.add_argument("second")
    p = add("csum", cmd_csum, "connected sum along identified vertices", file=False)
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--identify", type=_pairs, required=True, help="pairs a:b, e.g. 1:1,2:2,3:3")
    p = add("suspend", cmd_suspend, "suspension with optional apex values")
    p.add_argument("--apex-x", type=_rationals, default=None)
    p.add_argument("--apex-y", type=_rationals, default=None)
    p = add("move", cmd_move, "one bistellar move")
    p.add_argument("--kind", type=_ints, required=True, help="e.g. 0,3")
    p.add_argument("--target", type=_ints, required=True, help="vertices of the removed face")
    p.add_argument("--new-lambda", type=_rationals, default=None)
    p.add_argument("--suspended", action="store_true", help="suspension of a base move")
    p = add("shuffle", cmd_shuffle, "seeded random bistellar moves")
    p.add_argument("--count", type=int, default=5)
    p = add("rx", cmd_rx, "sample coloring strata and count d-vectors")
    p.add_argument("--samples", type=int, default=config.SAMPLES_PER_STRATUM)
    p.add_argument("--workers", type=int, default=1)
    p = add("catalog", cmd_catalog, "list or export built-in fans", file=False)
    p.add_argument("name", nargs="?")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MultiFanError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2
    except ConsistencyError as exc:
        sys.stderr.write(f"consistency violation: {type(exc).__name__}: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
