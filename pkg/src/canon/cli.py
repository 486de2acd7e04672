"""Command-line front end.

Exit codes: 0 success, 1 a checked property failed, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from typing import List, Optional, Sequence

from . import completion as comp
from . import framework as fw
from .abstract import AbstractSystem, read_abstract_system, validate_abstract_system
from .equational import (BoundExceeded, Bounds, EquationalSystem, congruence_classes,
                         decide_membership, enumerate_proofs, load_presentation)
from .orderings import PRESET_NAMES, load_config, preset
from .terms import default_term_order, parse_term_order

EXIT_OK, EXIT_PROPERTY, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _backend_kind(args) -> str:
    if args.backend:
        return args.backend
    return "abstract" if args.input.endswith((".sys", ".json")) else "equational"


def load_backend(args):
    """Return (system, presentation) for the parsed arguments."""
    if not os.path.exists(args.input):
        raise UsageError(f"no such file: {args.input}")
    if _backend_kind(args) == "abstract":
        system = read_abstract_system(args.input)
        if args.start is not None:
            A = frozenset(a.strip() for a in args.start.split(",") if a.strip())
        else:
            A = frozenset(system.presentation or ())
        for a in A:
            system.parse_formula(a)
        return system, A
    sig, A = load_presentation(args.input)
    term_order = parse_term_order(args.term_order, sig) if args.term_order else None
    if args.ordering in PRESET_NAMES:
        cfg = preset(args.ordering, term_order)
    elif os.path.exists(args.ordering):
        cfg = load_config(args.ordering, sig)
        if term_order is not None:
            cfg = cfg.with_term_order(term_order)
    else:
        raise UsageError(f"unknown ordering {args.ordering!r}: not a preset or a file")
    bounds = Bounds(args.max_term_size, args.max_proof_depth)
    system = EquationalSystem(sig, cfg, bounds, numerals=not args.raw_terms)
    return system, frozenset(A)


def _formulas(system, fs) -> List[str]:
    return [system.format_formula(f) for f in sorted(fs, key=system.formula_key)]


def _emit(args, text_lines: Sequence[str], doc) -> None:
    if args.format == "json":
        out = json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    else:
        out = "".join(line + "\n" for line in text_lines)
    if args.output and args.command != "complete":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _flag_lines(flags: dict, witnesses: dict) -> List[str]:
    lines = [f"{k}={'true' if v else 'false'}" for k, v in flags.items()]
    lines += [f"  {k}: {w}" for k, w in sorted(witnesses.items())]
    return lines


# ------------------------------------------------------------ commands

def cmd_validate(args) -> int:
    system, A = load_backend(args)
    if isinstance(system, AbstractSystem):
        violations = validate_abstract_system(system)
        checked = len(system.proofs)
    else:
        sample = enumerate_proofs(A, system.bounds, system.sig)
        if args.sample and args.sample < len(sample):
            sample = sorted(random.Random(args.seed).sample(sample, args.sample),
                            key=system.proof_key)
        report = fw.check_postulates(system, sample)
        violations, checked = report.violations, report.checked
    lines = [f"checked {checked} proofs", "ok" if not violations else f"{len(violations)} violations"]
    lines += [str(v) for v in violations]
    _emit(args, lines, {"checked": checked, "ok": not violations,
                        "violations": [{"kind": v.kind, "proofs": list(v.proofs),
                                        "message": v.message} for v in violations]})
    return EXIT_PROPERTY if violations else EXIT_OK


def cmd_theory(args) -> int:
    system, A = load_backend(args)
    f = system.parse_formula(args.query)
    if isinstance(system, AbstractSystem):
        ans = system.holds(A, f)
    else:
        ans = decide_membership(A, f)
    _emit(args, ["yes" if ans else "no"], {"query": system.format_formula(f), "theorem": ans})
    return EXIT_OK


def cmd_sharp(args) -> int:
    system, A = load_backend(args)
    basis = fw.sharp(system, A)
    _emit(args, _formulas(system, basis), {"sharp": _formulas(system, basis),
                                           **_bounds_doc(system)})
    return EXIT_OK


def _bounds_doc(system) -> dict:
    if isinstance(system, AbstractSystem):
        return {}
    return {"bounds": {"max_term_size": system.bounds.max_term_size,
                       "max_proof_depth": system.bounds.max_proof_depth},
            "ordering": system.cfg.name}


def cmd_classify(args) -> int:
    system, A = load_backend(args)
    v = fw.classify(system, A)
    _emit(args, _flag_lines(v.flags(), v.witnesses), v.to_json())
    if args.expect and not all(v.flags()[e] for e in args.expect):
        return EXIT_PROPERTY
    return EXIT_OK


def cmd_complete(args) -> int:
    system, A = load_backend(args)
    if args.mechanism == "ground":
        if isinstance(system, AbstractSystem):
            raise UsageError("ground completion needs an equational presentation")
        order = system.cfg.term_order or default_term_order(system.sig)
        trace = comp.ground_completion(A, order, system.sig)
    else:
        trace = comp.run_completion(system, A, args.mechanism, args.max_steps)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(comp.dump_trace(system, trace))
    basis = _formulas(system, trace.final)
    doc = {"basis": basis, "steps": len(trace.steps), "terminated": trace.terminated}
    lines = list(basis)
    status = EXIT_OK if trace.terminated else EXIT_PROPERTY
    if args.check_trace:
        verdict = comp.check_derivation(system, trace)
        doc["verdict"] = verdict.to_json()
        lines += _flag_lines(verdict.flags(), verdict.witnesses)
        if not all(verdict.flags().values()):
            status = EXIT_PROPERTY
    if args.format == "json":
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write("".join(line + "\n" for line in lines))
    return status


def cmd_check_trace(args) -> int:
    system, _ = load_backend(args)
    with open(args.trace, encoding="utf-8") as fh:
        trace = comp.load_trace(system, fh.read())
    verdict = comp.check_derivation(system, trace)
    _emit(args, _flag_lines(verdict.flags(), verdict.witnesses), verdict.to_json())
    expect = args.expect or list(verdict.flags())
    return EXIT_OK if all(verdict.flags()[e] for e in expect) else EXIT_PROPERTY


def cmd_oracle(args) -> int:
    system, A = load_backend(args)
    what = args.what
    if what == "theory":
        items = _formulas(system, system.theory(A))
    elif what == "classes":
        if isinstance(system, AbstractSystem):
            raise UsageError("congruence classes need an equational presentation")
        fmt = system.format_term
        items = ["{" + ", ".join(fmt(t) for t in sorted(c, key=lambda t: t.key)) + "}"
                 for c in congruence_classes(A, system.bounds, system.sig)]
    else:
        if what == "proofs":
            proofs = system.all_proofs(A)
        elif what == "minimal":
            proofs = fw.minimal_proofs(system, A)
        else:
            proofs = fw.normal_form_proofs(system, A)
        items = [f"{system.format_proof(p)} : {system.format_formula(system.conclusion(p))}"
                 for p in sorted(proofs, key=system.proof_key)]
    _emit(args, items, {what: items})
    return EXIT_OK


# ------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="presentation (.eqs) or system (.sys) file")
    common.add_argument("--backend", choices=["equational", "abstract"])
    common.add_argument("--ordering", default="completion",
                        help=f"preset ({', '.join(PRESET_NAMES)}) or JSON config path")
    common.add_argument("--term-order", help='"numeral_value" or a chain such as "s > a > b > c"')
    common.add_argument("--max-term-size", type=int, default=6)
    common.add_argument("--max-proof-depth", type=int, default=5)
    common.add_argument("--start", help="comma-separated starting atoms (abstract systems)")
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--raw-terms", action="store_true", help="print tally terms without numerals")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="canon", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check postulates and structure")
    p.add_argument("--sample", type=int, default=0, help="check a seeded random sample of this size")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("theory", parents=[common], help="decide theoremhood")
    p.add_argument("--query", required=True)
    p.set_defaults(func=cmd_theory)

    p = sub.add_parser("sharp", parents=[common], help="print the canonical basis")
    p.set_defaults(func=cmd_sharp)

    flags = ["contracted", "saturated", "complete", "canonical"]
    p = sub.add_parser("classify", parents=[common], help="print the verdict")
    p.add_argument("--expect", action="append", choices=flags)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("complete", parents=[common], help="run a completion mechanism")
    p.add_argument("--mechanism", required=True, choices=["critical", "bulk", "mass", "ground"])
    p.add_argument("--check-trace", action="store_true")
    p.add_argument("--max-steps", type=int, default=comp.DEFAULT_MAX_STEPS)
    p.set_defaults(func=cmd_complete)

    vflags = ["good", "fair", "uniformly_fair", "contracting", "saturating", "completing", "canonical"]
    p = sub.add_parser("check-trace", parents=[common], help="validate a derivation trace")
    p.add_argument("--trace", required=True)
    p.add_argument("--expect", action="append", choices=vflags)
    p.set_defaults(func=cmd_check_trace)

    p = sub.add_parser("oracle", parents=[common], help="dump bounded enumerations")
    p.add_argument("--what", choices=["proofs", "minimal", "normal", "theory", "classes"],
                   default="proofs")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s: %(message)s")
    if args.max_term_size < 1 or args.max_proof_depth < 1:
        print("error: bounds must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (BoundExceeded, comp.BoundInsufficient) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
