"""Command-line surface: every stage of the computation with deterministic
text or JSON output.

Commands: fan, invariants, loci, module-table, verify, batyrev, lm-integrate,
selftest.  Exit codes: 0 on success, 1 on a verification failure, 2 on bad
input.  Rationals are always rendered as "p/q" strings, never floats.  The
QF2_ORDER environment variable overrides the default truncation order.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Dict, List

from . import batyrev as bat
from . import checks
from .algebra import TruncSeries2, f_series
from .fan import (
    Fan,
    batyrev_generators,
    class_matrix,
    f2_basis_cone,
    f2_fan,
    fan_from_json_dict,
    presentation_strings,
    primitive_collections,
    primitive_relation,
    validate_fan,
)
from .invariants import invariant_table
from .localization import (
    FAMILY_D2DD4,
    FAMILY_DD4,
    enumerate_necessary_loci,
    invariant_by_localization,
    locus_contribution,
)
from .losev_manin import LMClass, d_lambda
from .quantum_module import BASIS, star_matrix
from .quantum_module import verify_module_axiom, verify_quantum_relations, verify_table

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2

_FAMILY_ARGS = {"dD4": FAMILY_DD4, "D2+dD4": FAMILY_D2DD4}


def _default_order() -> int:
    env = os.environ.get("QF2_ORDER")
    if env is None:
        return 8
    try:
        value = int(env)
    except ValueError as exc:
        raise SystemExit(f"QF2_ORDER must be an integer, got {env!r}") from exc
    return value


def _dump(data) -> None:
    print(json.dumps(data, indent=2, sort_keys=True))


def _load_fan(path: str | None) -> Fan:
    if path is None:
        return f2_fan()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        return fan_from_json_dict(data)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        print(f"error: cannot read fan file {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def cmd_fan(args) -> int:
    fan = _load_fan(args.fan)
    violations = validate_fan(fan)
    if violations:
        if args.format == "json":
            _dump({"valid": False, "violations": violations})
        else:
            print("fan INVALID:")
            for v in violations:
                print(f"  - {v}")
        return EXIT_VERIFY
    basis_cone = args.basis_cone
    if basis_cone is None:
        basis_cone = f2_basis_cone() if fan == f2_fan() else 0
    cm = class_matrix(fan, basis_cone)
    collections = primitive_collections(fan)
    relations = [primitive_relation(fan, pc, basis_cone) for pc in collections]
    gens = batyrev_generators(fan, basis_cone)
    report = {
        "valid": True,
        "rays": [list(v) for v in fan.rays],
        "max_cones": [list(c) for c in fan.max_cones],
        "basis_rays": list(cm.basis_rays),
        "class_matrix": [list(row) for row in cm.entries],
        "primitive_collections": [list(pc) for pc in collections],
        "primitive_relations": [
            {
                "collection": list(r.rays),
                "relation": list(r.relation),
                "beta": list(r.beta),
                "cone_monomial": [list(x) for x in r.cone_coeffs],
            }
            for r in relations
        ],
        "batyrev_linear": [list(v) for v in gens["linear"]],
        "batyrev_presentation": presentation_strings(fan, basis_cone),
    }
    if args.format == "json":
        _dump(report)
    else:
        print("fan valid")
        print(f"basis rays: {report['basis_rays']}")
        print(f"class matrix: {report['class_matrix']}")
        print(f"primitive collections: {report['primitive_collections']}")
        for r in report["primitive_relations"]:
            print(f"  collection {r['collection']}: relation {r['relation']}, beta {r['beta']}")
        print(f"linear ideal: {report['batyrev_linear']}")
        print("quantum Stanley-Reisner presentation:")
        for g in report["batyrev_presentation"]:
            print(f"  {g}")
    return EXIT_OK


def _loci_rows(family: str, d: int, method: str) -> List[Dict]:
    rows = []
    methods = ("closed", "assembled") if method == "both" else (method,)
    for g in enumerate_necessary_loci(family, d):
        for m in methods:
            contribution = locus_contribution(g, m)
            rows.append(
                {
                    "family": family,
                    "d": d,
                    "graph": g.name,
                    "value": str(contribution.value),
                    "method": contribution.method,
                }
            )
    return rows


def cmd_invariants(args) -> int:
    if args.all_insertions:
        rows = [dict(row, method="closed") for row in invariant_table(args.d_max)]
        if args.format == "json":
            _dump(rows)
        else:
            for row in rows:
                name = "<%s,%s>" % tuple(row["insertions"])
                print(f"{row['family']} d={row['d']} {name} = {row['value']}")
        return EXIT_OK
    family = _FAMILY_ARGS[args.family]
    dmin = 1 if family == FAMILY_DD4 else 0
    rows = []
    for d in range(dmin, args.d_max + 1):
        methods = ("closed", "assembled") if args.method == "both" else (args.method,)
        for m in methods:
            row = {
                "family": args.family,
                "d": d,
                "insertions": ["D2", "1"] if family == FAMILY_DD4 else ["D1", "pt"],
                "method": m,
                "value": str(invariant_by_localization(family, d, m)),
            }
            if args.show_loci:
                row["loci"] = _loci_rows(family, d, m)
            rows.append(row)
    if args.format == "json":
        _dump(rows)
    else:
        for row in rows:
            name = "<%s,%s>" % tuple(row["insertions"])
            print(f"{row['family']} d={row['d']} {name} = {row['value']} [{row['method']}]")
            for locus in row.get("loci", []):
                print(f"    {locus['graph']}: {locus['value']}")
    return EXIT_OK


def cmd_loci(args) -> int:
    family = _FAMILY_ARGS[args.family]
    rows = _loci_rows(family, args.d, args.method)
    if args.format == "json":
        _dump(rows)
    else:
        for row in rows:
            print(f"{row['graph']}: {row['value']} [{row['method']}]")
    return EXIT_OK


def _table_templates(order: int) -> List[Dict]:
    f_str = str(f_series(order))
    return [
        {"entry": "sigma_2 * 1", "text": f"D2 - 1/2*({f_str})*D4"},
        {"entry": "sigma_2 * D2", "text": f"q2*q4*(1 + {f_str}) - 1/2*({f_str})*pt"},
        {"entry": "sigma_2 * D4", "text": f"-2*q2*q4*(1 + {f_str}) + (1 + {f_str})*pt"},
        {"entry": "sigma_2 * pt", "text": f"q2*q4*(1 + {f_str})*D4"},
        {"entry": "sigma_4 * 1", "text": f"(1 + {f_str})*D4"},
        {"entry": "sigma_4 * D2", "text": f"-1/2*q2*({f_str}) + (1 + {f_str})*pt"},
        {"entry": "sigma_4 * D4", "text": f"q2*(1 + {f_str}) - 2*(1 + {f_str})*pt"},
        {"entry": "sigma_4 * pt", "text": f"q2*D2 - 1/2*q2*({f_str})*D4"},
    ]


def cmd_module_table(args) -> int:
    order = args.order
    if args.format == "json":
        out = {"order": order, "basis": list(BASIS), "entries": {}}
        for k in (2, 4):
            mat = star_matrix(k, order)
            for j, name in enumerate(BASIS):
                out["entries"][f"sigma_{k} * {name}"] = [mat[i][j].to_json_dict() for i in range(4)]
        _dump(out)
    else:
        for item in _table_templates(order):
            print(f"{item['entry']} = {item['text']}")
    return EXIT_OK


def cmd_verify(args) -> int:
    order = args.order
    problems = (
        verify_table(order)
        + verify_module_axiom(order)
        + verify_quantum_relations(order)
        + bat.verify_isomorphism(order)
    )
    if problems:
        for p in problems:
            print(f"FAIL: {p}")
        return EXIT_VERIFY
    print(f"all module and isomorphism checks pass at order {order}")
    return EXIT_OK


def cmd_batyrev(args) -> int:
    order = args.order
    red = bat.Reducer(order)
    samples = {
        "x4^2": red.monomial(0, 2),
        "x2^2": red.monomial(2, 0),
        "x2^2*x4": red.monomial(2, 1),
    }
    if args.format == "json":
        out = {
            "order": order,
            "basis": list(bat.BAT_BASIS),
            "normal_forms": {
                k: [c.to_json_dict() for c in v] for k, v in sorted(samples.items())
            },
        }
        if args.check_iso:
            problems = bat.verify_isomorphism(order)
            out["isomorphism"] = {"ok": not problems, "problems": problems}
        _dump(out)
        return EXIT_VERIFY if args.check_iso and out["isomorphism"]["problems"] else EXIT_OK
    for name, vec in sorted(samples.items()):
        comps = [f"({c})*{b}" for c, b in zip(vec, bat.BAT_BASIS) if not c.is_zero()]
        print(f"{name} = " + (" + ".join(comps) if comps else "0"))
    if args.check_iso:
        problems = bat.verify_isomorphism(order)
        if problems:
            for p in problems:
                print(f"FAIL: {p}")
            return EXIT_VERIFY
        print(f"Batyrev module is isomorphic to the quantum module at order {order}")
    return EXIT_OK


def cmd_lm_integrate(args) -> int:
    try:
        lam = tuple(int(x) for x in args.lam.split(","))
        a, c = (int(x) for x in args.psi.split(","))
    except ValueError:
        print("error: --lambda and --psi must be comma-separated integers", file=sys.stderr)
        return EXIT_INPUT
    b = args.b
    if sum(lam) != b or any(p < 1 for p in lam) or list(lam) != sorted(lam, reverse=True):
        print(f"error: {lam} is not a partition of {b}", file=sys.stderr)
        return EXIT_INPUT
    if a < 0 or c < 0:
        print("error: psi exponents must be >= 0", file=sys.stderr)
        return EXIT_INPUT
    value = (d_lambda(b, lam) * LMClass.psi(b, a, c)).integrate()
    if args.format == "json":
        _dump({"b": b, "lambda": list(lam), "psi": [a, c], "value": str(Fraction(value))})
    else:
        print(Fraction(value))
    return EXIT_OK


def cmd_selftest(args) -> int:
    ok = checks.run_all(verbose=True)
    return EXIT_OK if ok else EXIT_VERIFY


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text")


def _add_order(p: argparse.ArgumentParser) -> None:
    p.add_argument("--order", type=int, default=_default_order(), help="series truncation order")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qf2",
        description="Exact quantum-module and Batyrev-ring computations for the "
        "Hirzebruch surface of type 2.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fan", help="validate a fan and report its toric data")
    p.add_argument("--fan", help="path to a fan JSON file (default: built-in Hirzebruch fan)")
    p.add_argument("--basis-cone", type=int, default=None, help="index of the cone fixing the Picard basis")
    _add_format(p)
    p.set_defaults(fn=cmd_fan)

    p = sub.add_parser("invariants", help="2-pointed invariants by localization")
    p.add_argument("--family", choices=tuple(_FAMILY_ARGS), default="dD4")
    p.add_argument("--d-max", type=int, default=8)
    p.add_argument("--method", choices=("closed", "assembled", "both"), default="closed")
    p.add_argument("--show-loci", action="store_true")
    p.add_argument(
        "--all-insertions",
        action="store_true",
        help="emit the closed table for every divisor insertion instead",
    )
    _add_format(p)
    p.set_defaults(fn=cmd_invariants)

    p = sub.add_parser("loci", help="per-locus contribution table for one degree")
    p.add_argument("--family", choices=tuple(_FAMILY_ARGS), default="dD4")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--method", choices=("closed", "assembled", "both"), default="closed")
    _add_format(p)
    p.set_defaults(fn=cmd_loci)

    p = sub.add_parser("module-table", help="the eight quantum action table entries")
    _add_order(p)
    _add_format(p)
    p.set_defaults(fn=cmd_module_table)

    p = sub.add_parser("verify", help="verify the module table, axiom, relations and isomorphism")
    _add_order(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("batyrev", help="Batyrev-module normal forms and isomorphism check")
    p.add_argument("--check-iso", action="store_true")
    _add_order(p)
    _add_format(p)
    p.set_defaults(fn=cmd_batyrev)

    p = sub.add_parser("lm-integrate", help="integrate D_lambda psi^a psi'^c over M(2|b)")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--lambda", dest="lam", required=True, help="partition, e.g. 2,1")
    p.add_argument("--psi", default="0,0", help="heavy psi exponents a,c")
    _add_format(p)
    p.set_defaults(fn=cmd_lm_integrate)

    p = sub.add_parser("selftest", help="run the acceptance checks")
    p.set_defaults(fn=cmd_selftest)
    return ap


def main(argv: List[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except BrokenPipeError:  # downstream closed the pipe; not an error
        return EXIT_OK
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
