"""Command-line front end.

Exit status: 0 on success, 1 for invalid input, 2 when the closed-form
criterion and the brute-force oracle disagree (never expected).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import families as fam
from .io import FormatError, dump_json, load_tuple, tuple_to_json
from .iso import (
    IsoWitness,
    WitnessError,
    construct_witness,
    decide_isomorphic,
    profiles_match,
    verify_witness,
)
from .oracle import DEFAULT_ORACLE_PREC, iso_oracle, solve_hom_space
from .quiver import Rim, RimError, interlacing, render_profile, render_rim
from .rank2 import (
    CoeffTuple,
    DecomposableInputError,
    TupleError,
    b_sums,
    build_M,
    classify_case,
    divisibility_profile,
    is_indecomposable,
    is_trivial_sum,
    validate,
)
from .series import DEFAULT_PREC, format_scalar, to_scalar

EXIT_OK, EXIT_INVALID, EXIT_DISAGREE = 0, 1, 2


def _module(path, prec):
    return build_M(load_tuple(path, prec))


def _emit(args, payload: dict, text_lines: list) -> None:
    if args.json:
        print(dump_json(payload))
    else:
        print("\n".join(text_lines))


def _fmt(x) -> str:
    return format_scalar(x) if x is not None else "-"


# --------------------------------------------------------------------------
# reports


def classify_report(path, prec) -> dict:
    m = _module(path, prec)
    case = classify_case(m)
    ind = is_indecomposable(m)
    out = {
        "file": str(path),
        "prec": m.prec,
        "B": {str(i): format_scalar(v) for i, v in b_sums(m).constants().items()},
        "case": case.to_json(),
        "profile": divisibility_profile(m).to_json(),
        "indecomposable": bool(ind),
        "trivial_sum": is_trivial_sum(m),
    }
    if ind:
        out["indecomposable_pair"] = list(ind.pair)
        inv = fam.invariant(m)
        out["invariant"] = inv.to_json()
        if case.kind == "FourGeneric":
            out["invariant_beta_squared"] = format_scalar(inv.value)
        elif case.kind == "FiveSingle":
            out["invariant_shift_squared"] = format_scalar(inv.value)
        elif case.kind == "FiveGeneric":
            nf = fam.five_generic_normal_form(m)
            out["normal_form"] = [format_scalar(p) for p in nf.parameters] if nf else None
    return out


def _classify_safe(path, prec):
    try:
        return classify_report(path, prec)
    except (FormatError, TupleError) as exc:
        return {"file": str(path), "error": str(exc)}


def _classify_text(r: dict) -> list:
    if "error" in r:
        return [f"{r['file']}: error: {r['error']}"]
    lines = [
        f"{r['file']} (prec {r['prec']})",
        "  B sums: " + ", ".join(f"B_{i}={v}" for i, v in r["B"].items()),
        f"  case: {r['case']['label']}",
        f"  indecomposable: {str(r['indecomposable']).lower()}"
        + (f" (pair {r['indecomposable_pair'][0]},{r['indecomposable_pair'][1]})" if r["indecomposable"] else ""),
        f"  trivial sum: {str(r['trivial_sum']).lower()}",
    ]
    if "invariant_beta_squared" in r:
        lines.append(f"  invariant beta^2: {r['invariant_beta_squared']}")
    if "invariant_shift_squared" in r:
        lines.append(f"  invariant (1+beta)^2: {r['invariant_shift_squared']}")
    if "normal_form" in r:
        nf = r["normal_form"]
        lines.append("  normal form (alpha, gamma): " + (", ".join(nf) if nf else "none"))
    return lines


# --------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    tup = load_tuple(args.file, args.prec)
    m = build_M(tup)
    rep = validate(m)
    payload = {"file": args.file, "prec": tup.prec, "valid": rep.ok, "failures": rep.failures}
    lines = [f"{args.file}: {'ok' if rep.ok else 'FAILED'} (prec {tup.prec}, sum 0, relations {'hold' if rep.ok else 'fail'})"]
    lines += [f"  {f}" for f in rep.failures]
    _emit(args, payload, lines)
    return EXIT_OK if rep.ok else EXIT_INVALID


def cmd_classify(args) -> int:
    files = list(args.files)
    if args.batch:
        files += sorted(str(p) for p in Path(args.batch).glob("*.json"))
    if not files:
        print("classify: no input files", file=sys.stderr)
        return EXIT_INVALID
    if len(files) > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            reports = list(pool.map(_classify_safe, files, [args.prec] * len(files)))
    else:
        reports = [classify_report(files[0], args.prec)]
    payload = reports[0] if len(reports) == 1 else reports
    lines = [line for r in reports for line in _classify_text(r)]
    _emit(args, payload, lines)
    return EXIT_INVALID if any("error" in r for r in reports) else EXIT_OK


def _load_pair(args):
    a = load_tuple(args.a, args.prec)
    b = load_tuple(args.b, args.prec)
    if a.prec != b.prec:
        raise FormatError(f"precisions differ ({a.prec} vs {b.prec}); pass --prec")
    return build_M(a), build_M(b)


def cmd_compare(args) -> int:
    mA, mB = _load_pair(args)
    payload = {"a": args.a, "b": args.b, "prec": mA.prec, "profiles_match": profiles_match(mA, mB)}
    lines = [f"{args.a} vs {args.b} (prec {mA.prec})", f"  profiles match: {str(payload['profiles_match']).lower()}"]
    status = EXIT_OK
    try:
        dec = decide_isomorphic(mA, mB)
    except DecomposableInputError as exc:
        dec = None
        payload["decomposable"] = str(exc)
        lines.append(f"  decomposable input: {exc}")
    if dec is not None:
        payload.update(isomorphic=dec.isomorphic, criterion=dec.criterion, case=str(dec.case))
        payload["criterion_value"] = [format_scalar(v) for v in dec.value]
        lines.append(f"  isomorphic: {str(dec.isomorphic).lower()} (criterion {dec.criterion}, case {dec.case})")
        if dec.value:
            lines.append("  criterion value: " + ", ".join(payload["criterion_value"]))
        if args.witness and dec.isomorphic:
            w = construct_witness(mA, mB)
            payload["witness"] = w.to_json()
            payload["witness_verified"] = bool(verify_witness(mA, mB, w))
            lines.append(f"  witness: verified at prec {w.prec}")
            lines += [f"    phi_{v} = {_matrix_text(a)}" for v, a in enumerate(w.phi)]
    if args.oracle:
        ov = iso_oracle(mA, mB, args.oracle_prec)
        payload["oracle"] = {"isomorphic": ov.isomorphic, "hom_dimension": ov.hom_dimension, "prec": ov.prec}
        lines.append(f"  oracle (prec {ov.prec}): isomorphic {str(ov.isomorphic).lower()}, dim Hom = {ov.hom_dimension}")
        if dec is not None and dec.isomorphic != ov.isomorphic:
            payload["disagreement"] = True
            lines.append("  DISAGREEMENT between criterion and oracle")
            status = EXIT_DISAGREE
    _emit(args, payload, lines)
    return status


def _matrix_text(a) -> str:
    return "[" + "; ".join(", ".join(str(s) for s in row) for row in a) + "]"


def cmd_witness(args) -> int:
    mA, mB = _load_pair(args)
    if args.verify:
        data = json.loads(Path(args.verify).read_text())
        w = IsoWitness.from_json(data)
        rep = verify_witness(mA, mB, w)
        _emit(args, {"verified": rep.ok, "failures": rep.failures},
              [f"witness {args.verify}: {'verified' if rep.ok else 'REJECTED'}"] + [f"  {f}" for f in rep.failures])
        return EXIT_OK if rep.ok else EXIT_INVALID
    dec = decide_isomorphic(mA, mB)
    if not dec:
        _emit(args, {"isomorphic": False, "criterion": dec.criterion},
              [f"not isomorphic (criterion {dec.criterion}); no witness"])
        return EXIT_OK
    w = construct_witness(mA, mB)
    text = dump_json(w.to_json())
    if args.output:
        Path(args.output).write_text(text + "\n")
        print(f"witness written to {args.output} (verified at prec {w.prec})")
    else:
        print(text)
    return EXIT_OK


def cmd_oracle(args) -> int:
    mA = _module(args.a, args.prec)
    mB = _module(args.b, args.prec) if args.b else mA
    payload = {"a": args.a, "b": args.b or args.a, "prec": args.oracle_prec}
    hom = solve_hom_space(mA, mB, args.oracle_prec)
    ov = iso_oracle(mA, mB, args.oracle_prec)
    payload.update(hom_dimension=hom.dimension, isomorphic=ov.isomorphic)
    lines = [f"Hom({args.a}, {args.b or args.a}) mod t^{args.oracle_prec}: dimension {hom.dimension}",
             f"isomorphic: {str(ov.isomorphic).lower()}"]
    if args.combination and ov.combination is not None:
        payload["combination"] = [format_scalar(c) for c in ov.combination]
        lines.append("combination: " + ", ".join(payload["combination"]))
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_families(args) -> int:
    rows = []
    for p in fam.enumerate_rigid_classes():
        rows.append({"class": str(p), "B": [format_scalar(v) for v in p.sums().values()], "rigid": True})
    for p in fam.sample_family_points():
        inv = fam.invariant(fam.representative(p, args.prec or DEFAULT_PREC))
        rows.append(
            {"class": str(p), "B": [format_scalar(v) for v in p.sums().values()], "rigid": False,
             "invariant": _fmt(inv.value)}
        )
    lines = [f"{'class':32} {'B_1, B_3, B_5, B_7, B_9':28} invariant"]
    for r in rows:
        lines.append(f"{r['class']:32} {', '.join(r['B']):28} {r.get('invariant', '')}".rstrip())
    n_rigid = sum(r["rigid"] for r in rows)
    lines.append(f"{n_rigid} rigid classes")
    _emit(args, {"classes": rows, "rigid_count": n_rigid}, lines)
    return EXIT_OK


def _parse_rim(text: str, n: int) -> Rim:
    text = text.strip()
    items = json.loads(text) if text.startswith("[") else [int(x) for x in text.split(",") if x.strip()]
    return Rim(items, n)


def cmd_rim(args) -> int:
    rim = _parse_rim(args.rim, args.n)
    pic = render_rim(rim) if not args.against else render_profile(rim, _parse_rim(args.against, args.n))
    _emit(args, {"rim": list(rim), "n": rim.n, "k": rim.k, "picture": pic.splitlines()}, [pic])
    return EXIT_OK


def cmd_interlace(args) -> int:
    i, j = _parse_rim(args.i, args.n), _parse_rim(args.j, args.n)
    r, tight = interlacing(i, j)
    _emit(args, {"r": r, "tight": tight}, [f"{r}-interlacing, {'tight' if tight else 'not tight'}"])
    return EXIT_OK


def cmd_make(args) -> int:
    """Write a tuple file from B sums (``b_i = B_i`` on odd positions) or from all ten ``b_i``."""
    prec = args.prec or DEFAULT_PREC
    if args.sums:
        values = [to_scalar(v) for v in args.sums.split(",")]
        if len(values) != 5:
            raise FormatError("--sums takes five values B_1,B_3,B_5,B_7,B_9")
        tup = CoeffTuple.from_sums(values, prec)
    else:
        tup = CoeffTuple.from_scalars([to_scalar(v) for v in args.b.split(",")], prec)
    print(dump_json(tuple_to_json(tup)))
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec", type=int, default=None,
                        help=f"truncation order (default: the file's own; {DEFAULT_PREC} for generated data)")
    common.add_argument("--oracle-prec", type=int, default=DEFAULT_ORACLE_PREC)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="rank2cm", description="rank-2 modules over B(5,10): classify and compare")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check a tuple file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("classify", parents=[common], help="case, profile, indecomposability, invariant")
    s.add_argument("files", nargs="*")
    s.add_argument("--batch", metavar="DIR", help="classify every *.json in DIR")
    s.add_argument("--workers", type=int, default=None)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("compare", parents=[common], help="decide isomorphism of two tuples")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--witness", action="store_true")
    s.add_argument("--oracle", action="store_true")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("witness", parents=[common], help="emit or verify an explicit isomorphism")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("-o", "--output")
    s.add_argument("--verify", metavar="WITNESS", help="check a stored witness instead")
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("oracle", parents=[common], help="brute-force Hom space and iso test")
    s.add_argument("a")
    s.add_argument("b", nargs="?")
    s.add_argument("--combination", action="store_true")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("families", parents=[common], help="rigid classes and family samples")
    s.set_defaults(func=cmd_families)

    s = sub.add_parser("rim", parents=[common], help="draw a rim (or a profile with --against)")
    s.add_argument("rim")
    s.add_argument("--n", type=int, default=10)
    s.add_argument("--against")
    s.set_defaults(func=cmd_rim)

    s = sub.add_parser("interlace", parents=[common], help="interlacing number of two rims")
    s.add_argument("i")
    s.add_argument("j")
    s.add_argument("--n", type=int, default=10)
    s.set_defaults(func=cmd_interlace)

    s = sub.add_parser("make", parents=[common], help="write a tuple file")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--sums", help="B_1,B_3,B_5,B_7,B_9")
    g.add_argument("--b", help="b_1,...,b_10")
    s.set_defaults(func=cmd_make)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.prec is not None and args.prec < 2:
        print("error: --prec must be at least 2", file=sys.stderr)
        return EXIT_INVALID
    try:
        return args.func(args)
    except (FormatError, TupleError, RimError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except WitnessError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_DISAGREE


if __name__ == "__main__":
    sys.exit(main())
