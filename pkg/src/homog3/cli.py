"""Command-line entry point: ``homog3 <command> [options]``.

Exit codes: 0 success, 1 a verification that ran but failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .contact import contact_report
from .errors import Homog3Error
from .exact import format_rational, parse_rational
from .exact.rational import RationalParseError, parse_rational_list
from .homstruct import HomStructure, as_verify, solve_left_invariant, tv_decompose
from .lie import algebra_from_json, nonunimodular, unimodular
from .reconstruct import build_transitive_algebra
from .report import analysis_report, denominator_bits, dumps, render_text

MAX_DENOM_ENV = "HOMOG3_MAX_DENOM"


class UsageError(Exception):
    pass


# input ----------------------------------------------------------------------


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc})") from exc


def _load_input(args):
    """Return ``(algebra, structure_payload_or_None)``."""
    sources = [x for x in (args.unimodular, args.nonunimodular, args.input) if x is not None]
    if len(sources) != 1:
        raise UsageError("give exactly one of --unimodular, --nonunimodular, --input")
    structure = None
    if args.unimodular is not None:
        vals = parse_rational_list(args.unimodular)
        if len(vals) != 3:
            raise UsageError("--unimodular needs three values c1,c2,c3")
        g = unimodular(*vals)
    elif args.nonunimodular is not None:
        vals = parse_rational_list(args.nonunimodular)
        if len(vals) != 2:
            raise UsageError("--nonunimodular needs two values alpha,beta")
        g = nonunimodular(*vals)
    else:
        payload = _read_json(args.input)
        if "algebra" in payload:
            structure = payload.get("structure")
            payload = payload["algebra"]
        g = algebra_from_json(payload)
    return g, structure


def _structure(args, embedded, *, check: bool) -> HomStructure | None:
    if getattr(args, "structure", None):
        return HomStructure.from_json(_read_json(args.structure), check=check)
    if getattr(args, "S", None):
        vals = parse_rational_list(args.S)
        if len(vals) != 27:
            raise UsageError(f"--S needs 27 comma-separated values, got {len(vals)}")
        return HomStructure(vals, check=check)
    if embedded is not None:
        return HomStructure.from_json(embedded, check=check)
    return None


def _emit(args, payload, text: str | None = None) -> None:
    if args.format == "text" and text is not None:
        sys.stdout.write(text)
    else:
        sys.stdout.write(dumps(payload))


# commands -------------------------------------------------------------------


def cmd_analyze(args) -> int:
    g, _ = _load_input(args)
    rep = analysis_report(g)
    _emit(args, rep, render_text(rep))
    return 0


def cmd_solve(args) -> int:
    g, _ = _load_input(args)
    out = solve_left_invariant(g).to_json()
    _emit(args, out)
    return 0


def cmd_tv(args) -> int:
    g, emb = _load_input(args)
    S = _structure(args, emb, check=True)
    if S is None:
        raise UsageError("tv needs a structure (--structure FILE or --S values)")
    d = tv_decompose(g, S).to_json()
    _emit(args, d, f"class {d['label']}; satisfied: {', '.join(d['satisfied'])}\n")
    return 0


def cmd_verify(args) -> int:
    g, emb = _load_input(args)
    S = _structure(args, emb, check=False)
    if S is None:
        raise UsageError("verify needs a structure (--structure FILE or --S values)")
    rep = as_verify(g, S)
    out = rep.to_json()
    flags = " ".join(f"{k}={'ok' if out[k] else 'FAIL'}" for k in ("metric_ok", "ricci_parallel_ok", "curvature_parallel_ok", "S_parallel_ok"))
    _emit(args, out, f"{'PASS' if rep.ok else 'FAIL'} {flags}\n")
    return 0 if rep.ok else 1


def cmd_reconstruct(args) -> int:
    g, emb = _load_input(args)
    S = _structure(args, emb, check=True)
    targets: list[tuple[str, HomStructure]] = []
    if S is not None:
        targets.append(("given", S))
    else:
        outcome = solve_left_invariant(g)
        targets += [(f"structure {k}", s) for k, s in enumerate(outcome.structures, 1)]
        rs = [parse_rational(r) for r in (args.r or ["0"])]
        for k, fam in enumerate(outcome.families, 1):
            targets += [(f"family {k} at {fam.parameter}={format_rational(r)}", fam.member(r)) for r in rs]
    results = []
    text = []
    for label, s in targets:
        rec = build_transitive_algebra(g, s).to_json()
        rec["label"] = label
        results.append(rec)
        text.append(f"{label}: dim {rec['dim']}, isotropy {rec['isotropy']}, profile {rec['fingerprint']['profile']}\n")
    _emit(args, results, "".join(text))
    return 0


def cmd_contact(args) -> int:
    g, _ = _load_input(args)
    out = contact_report(g).to_json()
    text = "".join(f"{k}: {out[k]}\n" for k in sorted(out) if k != "acs")
    _emit(args, out, text)
    return 0


def _samples(start: Fraction, stop: Fraction, step: Fraction) -> list[Fraction]:
    if step <= 0:
        raise UsageError("--step must be positive")
    if stop < start:
        raise UsageError("--to must not be smaller than --from")
    out = []
    x = start
    while x <= stop:
        out.append(x)
        x += step
    return out


def _max_denom_bits() -> int | None:
    raw = os.environ.get(MAX_DENOM_ENV)
    if raw is None or raw == "":
        return None
    try:
        bits = int(raw)
    except ValueError as exc:
        raise UsageError(f"{MAX_DENOM_ENV} must be an integer bit-length, got {raw!r}") from exc
    if bits < 0:
        raise UsageError(f"{MAX_DENOM_ENV} must be non-negative")
    return bits


def _sweep_record_family(g, fam, r: Fraction) -> dict:
    S = fam.member(r)
    rec = build_transitive_algebra(g, S)
    return {
        "r": format_rational(r),
        "tv": tv_decompose(g, S).label,
        "as_ok": as_verify(g, S).ok,
        "holonomy_dim": len(rec.isotropy_indices),
        "profile": rec.fingerprint().profile(),
    }


def _sweep_record_algebra(g, name: str, value: Fraction) -> dict:
    outcome = solve_left_invariant(g)
    from .homstruct import canonical_structure

    minus = canonical_structure(g, "minus")
    return {
        name: format_rational(value),
        "kind": outcome.kind,
        "ricci_pattern": outcome.ricci_pattern,
        "structures": len(outcome.structures),
        "families": len(outcome.families),
        "minus_found": any(s == minus for s in outcome.structures)
        or any(f.contains(minus) for f in outcome.families),
    }


def cmd_sweep(args) -> int:
    g, _ = _load_input(args)
    cap = _max_denom_bits()
    samples = _samples(parse_rational(args.from_), parse_rational(args.to), parse_rational(args.step))
    param = args.param
    nf = g.normal_form
    if param == "r":
        outcome = solve_left_invariant(g)
        if not outcome.families:
            raise UsageError("sweep over r needs an input whose solver output contains a family")
        fam = outcome.families[0]
        make = lambda v: _sweep_record_family(g, fam, v)  # noqa: E731
    elif param in ("alpha", "beta"):
        if nf.kind != "nonunimodular":
            raise UsageError(f"--param {param} needs --nonunimodular input")
        a, b = nf.params

        def make(v):
            h = nonunimodular(v, b) if param == "alpha" else nonunimodular(a, v)
            return _sweep_record_algebra(h, param, v)

    elif param in ("c1", "c2", "c3"):
        if nf.kind != "unimodular":
            raise UsageError(f"--param {param} needs --unimodular input")
        pos = int(param[1]) - 1

        def make(v):
            cs = list(nf.params)
            cs[pos] = v
            return _sweep_record_algebra(unimodular(*cs), param, v)

    else:
        raise UsageError(f"unknown sweep parameter {param!r}")

    for v in samples:
        if cap is not None and v.denominator.bit_length() > cap:
            raise UsageError(f"sample {format_rational(v)} exceeds {MAX_DENOM_ENV}={cap} denominator bits")
        rec = make(v)
        if cap is not None and denominator_bits(rec) > cap:
            raise UsageError(f"output at {param}={format_rational(v)} exceeds {MAX_DENOM_ENV}={cap} denominator bits")
        if args.format == "text":
            sys.stdout.write(" ".join(f"{k}={rec[k]}" for k in rec) + "\n")
        else:
            sys.stdout.write(json.dumps(rec, sort_keys=True) + "\n")
    return 0


# parser ---------------------------------------------------------------------


def _add_input(p: argparse.ArgumentParser, structure: bool = False) -> None:
    p.add_argument("--unimodular", metavar="C1,C2,C3", help="Milnor frame constants; use --unimodular=-1,2,3 for a leading minus")
    p.add_argument("--nonunimodular", metavar="ALPHA,BETA", help="normalized non-unimodular algebra")
    p.add_argument("--input", metavar="FILE", help="JSON algebra (optionally {'algebra': ..., 'structure': ...})")
    p.add_argument("--format", choices=("json", "text"), default="json")
    if structure:
        p.add_argument("--structure", metavar="FILE", help="JSON file with a 27-entry 'S' array")
        p.add_argument("--S", metavar="V1,...,V27", help="structure components in i,j,k order")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="homog3", description="Exact homogeneous structures on 3-dimensional metric Lie algebras.")
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {
        "analyze": (cmd_analyze, False, "full pipeline report"),
        "solve": (cmd_solve, False, "left-invariant homogeneous structures"),
        "tv": (cmd_tv, True, "Tricerri-Vanhecke class of a structure"),
        "verify": (cmd_verify, True, "Ambrose-Singer check of a structure"),
        "reconstruct": (cmd_reconstruct, True, "transitive Lie algebra of each structure"),
        "contact": (cmd_contact, False, "almost contact report"),
        "sweep": (cmd_sweep, False, "one report line per parameter sample"),
    }
    for name, (fn, structure, helptext) in commands.items():
        p = sub.add_parser(name, help=helptext)
        _add_input(p, structure)
        p.set_defaults(func=fn)
        if name == "reconstruct":
            p.add_argument("--r", action="append", metavar="R", help="family parameter value(s); default 0")
        if name == "sweep":
            p.add_argument("--param", required=True, choices=("r", "alpha", "beta", "c1", "c2", "c3"))
            p.add_argument("--from", dest="from_", required=True, metavar="P/Q")
            p.add_argument("--to", required=True, metavar="P/Q")
            p.add_argument("--step", required=True, metavar="P/Q")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (Homog3Error, RationalParseError, UsageError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        kind = type(exc).__name__
        if isinstance(exc, KeyError):
            msg = f"missing key {msg!r}"
        print(f"homog3: error ({kind}): {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
