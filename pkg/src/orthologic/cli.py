"""Command-line front end.

Exit status is 0 when every check passes, 1 when some check fails (a witness
is printed) and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .builtin_lattices import load_lattice
from .checker import check_consequence, check_horn, check_validity, classify, cross_validate_oml
from .errors import OrthologicError
from .lattice import find_isomorphism, invariant_violations
from .logic import AXIOMS, parse_derivation, soundness_suite, verify_derivation
from .tables import woml_table, render
from .terms import (
    HornCondition,
    builtin_condition,
    horn_reading,
    parse_conditions,
    parse_wff,
    reading_of,
    to_unicode,
)

OK, FAILED, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def load_conditions(ref: str) -> list[HornCondition]:
    path = Path(ref)
    if path.is_file():
        return parse_conditions(path.read_text())
    return [builtin_condition(ref)]


def _readings(cond: HornCondition, wanted: str, from_catalog: bool) -> list[tuple[str, HornCondition]]:
    """The condition under each requested reading that applies to it.

    File conditions spell their equivalences out, so only the Horn reading is
    available for them besides the literal one.
    """
    out = []
    for r in ("q", "c", "horn") if wanted == "all" else (wanted,):
        if r == "q":
            out.append((r, cond))
        elif from_catalog:
            name = reading_of(cond.name, r)
            if name is not None:
                out.append((r, builtin_condition(name)))
        elif r == "horn" and cond.is_identity:
            out.append((r, horn_reading(cond)))
    if not out:
        raise UsageError(f"reading {wanted!r} does not apply to {cond.name}")
    return out


def _emit(args, payload, text: str):
    if args.json:
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(text)


def _lattices(args) -> list[str]:
    refs = list(args.lattices or []) + list(getattr(args, "lattice_opt", None) or [])
    if not refs:
        raise UsageError("no lattice given")
    return refs


# --- commands --------------------------------------------------------------------


def cmd_verify(args) -> int:
    reports, text, status = [], [], OK
    for ref in _lattices(args):
        L = load_lattice(ref)
        bad = invariant_violations(L)
        if bad:
            status = FAILED
        reports.append(
            {
                "lattice": L.name,
                "status": "ok" if not bad else "fail",
                "elements": L.n,
                "covers": len(L.covers()),
                "bottom": L.label(L.bottom),
                "top": L.label(L.top),
                "violations": bad,
            }
        )
        text.append(
            f"{L.name}: {'ok' if not bad else 'invariant violations'}, {L.n} elements, "
            f"{len(L.covers())} covers, bottom {L.label(L.bottom)}, top {L.label(L.top)}"
        )
        text.extend(f"  {v}" for v in bad)
    _emit(args, reports if len(reports) > 1 else reports[0], "\n".join(text))
    return status


def cmd_check(args) -> int:
    cref = args.condition_opt or args.condition
    if cref is None:
        raise UsageError("no condition given")
    refs = [args.lattice_opt] if args.lattice_opt else []
    if args.lattice:
        refs.append(args.lattice)
    if not refs:
        raise UsageError("no lattice given")
    from_catalog = not Path(cref).is_file()
    results = []
    for ref in refs:
        L = load_lattice(ref)
        for cond in load_conditions(cref):
            for reading, c in _readings(cond, args.reading, from_catalog):
                results.append(check_horn(L, c, reading=reading, jobs=args.jobs))
    _emit(
        args,
        [r.to_dict() for r in results] if len(results) > 1 else results[0].to_dict(),
        "\n".join(r.describe() for r in results),
    )
    return OK if all(r.passed for r in results) else FAILED


def cmd_classify(args) -> int:
    profiles = [classify(load_lattice(ref), jobs=args.jobs) for ref in _lattices(args)]
    text = []
    for p in profiles:
        text.append(p.lattice.name)
        for flag, val in p.flags.items():
            line = f"  {flag:<7} {'yes' if val else 'no'}"
            if flag in p.witnesses:
                r = p.witnesses[flag]
                w = " ".join(f"{k}={v}" for k, v in r.witness_labels().items())
                line += f"   ({r.condition} fails at {w})"
            text.append(line)
    payload = [p.to_dict() for p in profiles]
    _emit(args, payload if len(payload) > 1 else payload[0], "\n".join(text))
    return OK


def cmd_valid(args) -> int:
    A = parse_wff(args.wff)
    results = [check_validity(load_lattice(ref), A, jobs=args.jobs) for ref in _lattices(args)]
    _emit(
        args,
        [r.to_dict() for r in results] if len(results) > 1 else results[0].to_dict(),
        "\n".join(r.describe() for r in results),
    )
    return OK if all(r.passed for r in results) else FAILED


def cmd_consequence(args) -> int:
    gamma = [parse_wff(h) for h in args.hyp or []]
    A = parse_wff(args.wff)
    results = [check_consequence(load_lattice(ref), gamma, A, jobs=args.jobs) for ref in _lattices(args)]
    _emit(
        args,
        [r.to_dict() for r in results] if len(results) > 1 else results[0].to_dict(),
        "\n".join(r.describe() for r in results),
    )
    return OK if all(r.passed for r in results) else FAILED


def cmd_proof_verify(args) -> int:
    d = parse_derivation(Path(args.path).read_text())
    v = verify_derivation(d)
    payload = {
        "path": args.path,
        "system": v.system,
        "status": "ok",
        "hypotheses": [to_unicode(h, False) for h in v.hypotheses],
        "conclusion": to_unicode(v.conclusion, False),
        "lines": len(d.lines),
    }
    text = [f"ok: {v}"]
    status = OK
    refs = list(args.lattice_opt or [])
    if refs:
        payload["semantic"] = []
        for ref in refs:
            r = check_consequence(load_lattice(ref), v.hypotheses, v.conclusion, jobs=args.jobs)
            payload["semantic"].append(r.to_dict())
            text.append(r.describe())
            if not r.passed:
                status = FAILED
    _emit(args, payload, "\n".join(text))
    return status


def cmd_soundness(args) -> int:
    system = args.system.upper()
    if system not in AXIOMS:
        raise UsageError(f"unknown system {args.system!r}; use CL or QL")
    reports = [soundness_suite(system, load_lattice(ref), jobs=args.jobs) for ref in _lattices(args)]
    text = []
    for rep in reports:
        text.append(f"{system} on {rep.lattice.name}: {'pass' if rep.passed else 'fail'}")
        for name, r in rep.axioms.items():
            text.append(f"  {name:<8} {r.status}" + _witness_suffix(r))
        text.append(f"  {'R1':<8} {rep.rule.status}" + _witness_suffix(rep.rule))
    payload = [rep.to_dict() for rep in reports]
    _emit(args, payload if len(payload) > 1 else payload[0], "\n".join(text))
    return OK if all(rep.passed for rep in reports) else FAILED


def _witness_suffix(r) -> str:
    if r.passed:
        return ""
    return "   at " + " ".join(f"{k}={v}" for k, v in r.witness_labels().items())


def cmd_iso(args) -> int:
    L1, L2 = load_lattice(args.first), load_lattice(args.second)
    m = find_isomorphism(L1, L2)
    payload = {
        "first": L1.name,
        "second": L2.name,
        "status": "isomorphic" if m is not None else "none",
        "mapping": {L1.label(i): L2.label(j) for i, j in sorted(m.items())} if m else None,
    }
    if m is None:
        text = f"{L1.name} and {L2.name} are not ortho-isomorphic"
    else:
        text = "\n".join([f"{L1.name} ≅ {L2.name}"] + [f"  {a} -> {b}" for a, b in payload["mapping"].items()])
    _emit(args, payload, text)
    return OK if m is not None else FAILED


def cmd_holland(args) -> int:
    reports = [cross_validate_oml(load_lattice(ref)) for ref in _lattices(args)]
    text = []
    for rep in reports:
        sub = rep.subalgebra_labels()
        text.append(f"{rep.lattice.name}: OM {'pass' if rep.om.passed else 'fail'}, O6 subalgebra "
                    + ("{" + ", ".join(sub) + "}" if sub else "none"))
    payload = [rep.to_dict() for rep in reports]
    _emit(args, payload if len(payload) > 1 else payload[0], "\n".join(text))
    return OK


def cmd_paper_tables(args) -> int:
    table = woml_table(jobs=args.jobs)
    _emit(args, table.to_dict(), render(table))
    return OK if table.closure_holds else FAILED


# --- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--jobs", type=int, default=1, metavar="N", help="worker threads per scan")

    p = argparse.ArgumentParser(prog="orthologic", description="Model checking over finite ortholattices.")
    sub = p.add_subparsers(dest="command", required=True)

    def lattice_args(sp, nargs="*"):
        sp.add_argument("lattices", nargs=nargs, metavar="LATTICE", help="builtin name, 'hexagon' or lattice file")
        sp.add_argument("--lattice", dest="lattice_opt", action="append", metavar="LATTICE")

    sp = sub.add_parser("verify", parents=[common], help="build a lattice and run the invariant suite")
    lattice_args(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("check", parents=[common], help="check a condition on a lattice")
    sp.add_argument("lattice", nargs="?")
    sp.add_argument("condition", nargs="?", help="catalog name or condition file")
    sp.add_argument("--lattice", dest="lattice_opt")
    sp.add_argument("--condition", dest="condition_opt")
    sp.add_argument("--reading", choices=("q", "c", "horn", "all"), default="q")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("classify", parents=[common], help="variety flags of a lattice")
    lattice_args(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("valid", parents=[common], help="is a wff valid in the lattice")
    sp.add_argument("wff")
    lattice_args(sp)
    sp.set_defaults(func=cmd_valid)

    sp = sub.add_parser("consequence", parents=[common], help="is a wff a consequence of hypotheses")
    sp.add_argument("wff")
    sp.add_argument("--hyp", action="append", metavar="WFF", help="hypothesis (repeatable)")
    lattice_args(sp)
    sp.set_defaults(func=cmd_consequence)

    sp = sub.add_parser("proof", help="derivation files")
    psub = sp.add_subparsers(dest="proof_command", required=True)
    pv = psub.add_parser("verify", parents=[common], help="verify a derivation file")
    pv.add_argument("path")
    pv.add_argument("--lattice", dest="lattice_opt", action="append", metavar="LATTICE",
                    help="also check the conclusion follows semantically on LATTICE")
    pv.set_defaults(func=cmd_proof_verify)

    sp = sub.add_parser("soundness", parents=[common], help="axiom validity and rule soundness")
    sp.add_argument("system", help="CL or QL")
    lattice_args(sp)
    sp.set_defaults(func=cmd_soundness)

    sp = sub.add_parser("iso", parents=[common], help="ortho-isomorphism between two lattices")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.set_defaults(func=cmd_iso)

    sp = sub.add_parser("holland", parents=[common], help="O6-subalgebra search against the OM condition")
    lattice_args(sp)
    sp.set_defaults(func=cmd_holland)

    sp = sub.add_parser("paper-tables", parents=[common], help="weak-orthomodularity table over O6, O7, O8")
    sp.set_defaults(func=cmd_paper_tables)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OrthologicError, UsageError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
