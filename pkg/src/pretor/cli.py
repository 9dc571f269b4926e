"""Command-line driver.

Exit codes: 0 verdict true, 1 verdict false, 2 input or parse error,
3 size limit exceeded.  ``--json`` prints a single JSON object; reports go
to stdout and diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import catio
from .constructions import (
    MissingInitial,
    MissingTerminal,
    product_theory,
    theorem_A_report,
    theorem_A_theory,
    theorem_B_report,
)
from .exactness import find_ses
from .fincat import (
    CategoryError,
    SizeLimitExceeded,
    initial_objects,
    opposite,
    terminal_objects,
    validate,
)
from .generators import FAMILIES, generate
from .ideals import Ideal, check_ideal, ideal_generated_by_objects
from .pretorsion import (
    MultiPointedTheory,
    check_multi_pointed,
    check_T0,
    check_T1,
    check_T2,
    check_T3,
    is_pretorsion_theory,
    is_thin,
    null_objects_are_Z,
)
from .report import _plain

EXIT_TRUE, EXIT_FALSE, EXIT_INPUT, EXIT_SIZE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _ids(text: str | None) -> list[str] | None:
    if text is None:
        return None
    # commas inside parentheses belong to product ids such as "(0,1)"
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
            continue
        depth += (ch == "(") - (ch == ")")
        cur.append(ch)
    parts.append("".join(cur))
    return [x for x in parts if x != ""]


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands: each returns (verdict, message, witnesses, counters, details) --------------


def cmd_validate(args):
    cat = catio.load_category(args.cat, check_axioms=False)
    rep = validate(cat)
    msg = "category axioms hold" if rep.ok else f"{len(rep.witnesses)} axiom violation(s)"
    return rep.ok, msg, rep.witnesses, {"objects": len(cat.objects), "morphisms": len(cat.morphisms)}, {}


def cmd_analyze(args):
    cat = catio.load_category(args.cat)
    ids = cat.mor_ids
    monos = [f for f, ok in zip(ids, cat.mono_flags) if ok]
    epis = [f for f, ok in zip(ids, cat.epi_flags) if ok]
    isos = [f for f, ok in zip(ids, cat.iso_flags) if ok]
    details = {
        "monos": monos,
        "epis": epis,
        "isos": isos,
        "initial": initial_objects(cat),
        "terminal": terminal_objects(cat),
        "iso_classes": [[cat.objects[i] for i in c] for c in cat.iso_partition],
    }
    counters = {"objects": len(cat.objects), "morphisms": len(ids),
                "monos": len(monos), "epis": len(epis), "isos": len(isos)}
    return True, "inventory computed", [], counters, details


def cmd_check(args):
    pt = catio.load_theory(args.theory, replete_closure=True if args.replete_closure else None,
                           multi_pointed=True if args.multi_pointed else None)
    reports = [check_T1(pt), check_T2(pt)]
    if args.t0:
        reports.append(check_T0(pt) if isinstance(pt, MultiPointedTheory)
                       else check_T0(MultiPointedTheory.from_theory(pt)))
    if args.t3:
        reports.append(check_T3(pt))
    details = {r.check: r.to_dict() for r in reports}
    if isinstance(pt, MultiPointedTheory) and args.t0 and args.t3:
        checks = check_multi_pointed(pt)
        if checks.ok:
            z = null_objects_are_Z(pt, checks)
            reports.append(z)
            details[z.check] = z.to_dict()
    verdict = all(r.ok for r in reports)
    witnesses = [{"check": r.check, "witness": w} for r in reports if not r.ok for w in r.witnesses[:1]]
    failed = [r.check for r in reports if not r.ok]
    msg = "all checks pass" if verdict else f"failed: {', '.join(failed)}"
    counters = {"objects": len(pt.cat.objects), "morphisms": len(pt.cat.morphisms)}
    return verdict, msg, witnesses, counters, details


def cmd_ses(args):
    cat = catio.load_category(args.cat)
    if args.ideal_objects is not None:
        ideal = ideal_generated_by_objects(cat, _ids(args.ideal_objects))
    else:
        with open(args.ideal_file, encoding="utf-8") as fh:
            raw = catio._load_json(fh.read(), args.ideal_file)
        members = raw.get("ideal") if isinstance(raw, dict) else raw
        if not isinstance(members, list) or not all(isinstance(m, str) for m in members):
            raise catio.MalformedDocument("expected a list of morphism ids", f"{args.ideal_file}:$")
        for i, f in enumerate(members):
            if f not in cat.mor_index:
                raise catio.UnresolvedId(f"unknown morphism {f!r}", f"{args.ideal_file}:$[{i}]", f)
        ideal = Ideal(cat, frozenset(members))
        rep = check_ideal(ideal)
        if not rep.ok:
            w = rep.witnesses[0]
            raise catio.MalformedDocument(
                f"ideal not closed: {w['morphisms'][0]}∘{w['morphisms'][1]} = {w['composite']} is not listed",
                f"{args.ideal_file}:$", w["composite"])
    found = find_ses(cat, ideal, args.object, _ids(args.source_class), _ids(args.target_class))
    seqs = [[s.m, s.e] for s in found]
    msg = f"{len(seqs)} short exact sequence(s) through {args.object}"
    return bool(seqs), msg, [], {"sequences": len(seqs), "ideal_size": len(ideal.members)}, {"sequences": seqs}


def cmd_thin(args):
    pt = catio.load_theory(args.theory)
    tr = is_pretorsion_theory(pt)
    if not tr:
        return False, "not a pretorsion theory", [{"t1": tr.t1_witness, "t2": tr.t2_failures}], {}, tr.to_dict()
    ok, rep = is_thin(pt)
    msg = "thin" if ok else f"not thin: fails {', '.join(rep.details['failing_axes'])}"
    return ok, msg, rep.witnesses, {"objects": len(pt.cat.objects)}, rep.details


def cmd_product(args):
    pts = [catio.load_theory(p) for p in args.theories]
    rep = theorem_B_report(pts)
    verdict = rep.details["product_verdict"]
    if args.output:
        _write(catio.serialize_theory(product_theory(pts)), args.output)
    failing = rep.details["failing_factors"]
    msg = "product is a pretorsion theory" if verdict else f"product fails; failing factors {failing}"
    if not rep.ok:
        msg += " (product verdict disagrees with factor verdicts)"
    return verdict, msg, rep.witnesses, {"factors": len(pts)}, rep.details


def cmd_theorem_a(args):
    C = catio.load_category(args.cat_c)
    D = catio.load_category(args.cat_d)
    cond = theorem_A_report(C, D)
    pt = theorem_A_theory(C, D)
    tr = is_pretorsion_theory(pt)
    agree = cond.ok == tr.verdict
    if cond.ok and tr.verdict:
        msg = "condition holds; theory verified"
    elif not cond.ok and not tr.verdict:
        msg = "condition fails; theory check fails"
    else:
        msg = f"DIVERGENCE: condition {cond.ok}, theory {tr.verdict}"
    witnesses = list(cond.witnesses)
    if tr.t1_witness:
        witnesses.append({"T1": tr.t1_witness})
    if tr.t2_failures:
        witnesses.append({"T2_failures": tr.t2_failures})
    details = {"condition": cond.ok, "theory": tr.verdict, "agree": agree,
               "torsion": list(pt.torsion), "torsionfree": list(pt.torsionfree)}
    return cond.ok and tr.verdict, msg, witnesses, {"morphisms": len(pt.cat.morphisms)}, details


def cmd_op(args):
    cat = catio.load_category(args.cat)
    text = catio.serialize_category(opposite(cat))
    if not args.output:
        sys.stdout.write(text)
        return None
    _write(text, args.output)
    return True, f"wrote {args.output}", [], {"morphisms": len(cat.morphisms)}, {}


def cmd_gen(args):
    try:
        obj = generate(args.family, args.n)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    theory = FAMILIES[args.family][2]
    text = catio.serialize_theory(obj) if theory else catio.serialize_category(obj)
    if not args.output:
        sys.stdout.write(text)
        return None
    _write(text, args.output)
    cat = obj.cat if theory else obj
    return True, f"wrote {args.output}", [], {"objects": len(cat.objects), "morphisms": len(cat.morphisms)}, {}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a single JSON report")
    common.add_argument("--timing", action="store_true", help="include wall-clock timing in JSON output")

    parser = argparse.ArgumentParser(prog="pretor", description="Exhaustive checks of pretorsion theories on finite categories.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check the category axioms")
    p.add_argument("cat")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", parents=[common], help="list monos, epis, isos, initial and terminal objects")
    p.add_argument("cat")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("check", parents=[common], help="check a theory document")
    p.add_argument("theory")
    p.add_argument("--multi-pointed", action="store_true", help="also run the multi-pointed checks")
    p.add_argument("--t0", action="store_true", help="also require a closed ideal")
    p.add_argument("--t3", action="store_true", help="also require kernels and cokernels of identities")
    p.add_argument("--replete-closure", action="store_true", help="close torsion classes under isomorphism")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("ses", parents=[common], help="list short exact sequences through an object")
    p.add_argument("cat")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--ideal-objects", help="comma-separated objects generating the ideal")
    g.add_argument("--ideal-file", help="JSON list of morphism ids forming the ideal")
    p.add_argument("--object", required=True, help="middle object of the sequences")
    p.add_argument("--source-class", help="comma-separated allowed left ends")
    p.add_argument("--target-class", help="comma-separated allowed right ends")
    p.set_defaults(func=cmd_ses)

    p = sub.add_parser("thin", parents=[common], help="decide thinness of a theory")
    p.add_argument("theory")
    p.set_defaults(func=cmd_thin)

    p = sub.add_parser("product", parents=[common], help="product of theories")
    p.add_argument("theories", nargs="+")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("theorem-a", parents=[common], help="compare the epi/mono condition with the theory check on C x D")
    p.add_argument("cat_c")
    p.add_argument("cat_d")
    p.set_defaults(func=cmd_theorem_a)

    p = sub.add_parser("op", parents=[common], help="opposite category")
    p.add_argument("cat")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_op)

    p = sub.add_parser("gen", parents=[common], help="generate an example category or theory")
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("--n", type=int, help="truncation size for sized families")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)
    return parser


def _emit(args, argv, verdict, message, witnesses, counters, details, elapsed):
    if args.json:
        report = {
            "command": list(argv),
            "verdict": verdict,
            "message": message,
            "witnesses": _plain(witnesses),
            "counters": counters,
            "details": _plain(details),
        }
        if args.timing:
            report["timing_s"] = round(elapsed, 6)
        sys.stdout.write(json.dumps(report, sort_keys=True, ensure_ascii=False) + "\n")
        return
    print(f"{args.command}: {'PASS' if verdict else 'FAIL'} - {message}")
    for w in witnesses:
        print(f"  witness: {json.dumps(_plain(w), ensure_ascii=False)}")
    if counters:
        print("  " + ", ".join(f"{k}={v}" for k, v in counters.items()))
    print(f"  time: {elapsed:.3f}s")


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_TRUE
    start = time.perf_counter()
    try:
        result = args.func(args)
    except SizeLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except (catio.DocumentError, CategoryError, InputError, MissingTerminal, MissingInitial) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if result is None:
        return EXIT_TRUE
    verdict = result[0]
    _emit(args, argv, *result, time.perf_counter() - start)
    return EXIT_TRUE if verdict else EXIT_FALSE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
