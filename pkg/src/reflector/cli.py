"""Command-line interface.

Every subcommand accepts --format json|text; JSON output is canonical
(sorted keys, no whitespace, fractions rendered as "num/den" strings).
Exit codes: 0 on success, 1 on usage or input errors, 2 when a check fails
or a classification contains non-reflective verdicts, 3 when an enumeration
budget is exhausted.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from fractions import Fraction

from . import catalog as cat_mod
from . import discforms, etaq, reflcheck, roots, towers
from .classify import (
    class_number,
    class_number_rootsystems,
    classify,
    verdict_table,
)


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {k: _jsonable(v) for k, v in dataclasses.asdict(obj).items()}
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    return str(obj)


def emit(payload, fmt: str, text_lines) -> None:
    if fmt == "json":
        print(json.dumps(_jsonable(payload), sort_keys=True, separators=(",", ":")))
    else:
        for line in text_lines:
            print(line)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _catalog(args):
    path = args.catalog or os.environ.get("REFLECTOR_CATALOG")
    if path:
        return cat_mod.Catalog.from_file(path)
    return cat_mod.default_catalog()


def _add_common(sub):
    sub.add_argument("--format", choices=("json", "text"), default="text")
    sub.add_argument("--catalog", help="path to a JSON gram-matrix catalog")


def cmd_lattice(args) -> int:
    cat = _catalog(args)
    lat = cat.parse(args.lattice)
    pos, neg = lat.signature()
    payload = {
        "expr": args.lattice,
        "rank": lat.rank,
        "signature": [pos, neg],
        "det": lat.det(),
        "level": lat.level(),
    }
    lines = [
        f"lattice {args.lattice}",
        f"  rank {lat.rank}, signature ({pos},{neg})",
        f"  det {lat.det()}, level {lat.level()}",
    ]
    if args.prime is not None:
        genus = discforms.genus_symbol(lat, p=args.prime)
        payload["genus"] = genus.label()
        lines.append(f"  genus {genus.label()}")
    emit(payload, args.format, lines)
    return 0


def cmd_discform(args) -> int:
    if args.genus:
        g = discforms.parse_genus(args.genus)
        form = discforms.candidate_form(g.p, g.n_p, g.eps)
        p = g.p
    else:
        cat = _catalog(args)
        lat = cat.parse(args.lattice)
        form = discforms.DiscriminantForm.from_lattice(lat)
        p = args.prime
    payload = {
        "orders": list(form.orders),
        "order": form.order(),
        "level": form.level(),
        "milgram_octant": form.milgram_octant(),
    }
    lines = [
        f"discriminant form of order {form.order()}, level {form.level()}",
        f"  cyclic orders {list(form.orders)}",
        f"  Milgram octant {payload['milgram_octant']}",
    ]
    if p:
        count = form.count_norm(Fraction(2, p))
        payload["norm_2_over_p_count"] = count
        lines.append(f"  elements of norm 2/{p}: {count}")
    emit(payload, args.format, lines)
    return 0


def cmd_roots(args) -> int:
    cat = _catalog(args)
    _, definite = cat_mod.definite_part(args.lattice, cat)
    if definite is None:
        print("lattice has no definite part", file=sys.stderr)
        return 1
    r1, r2 = roots.reflective_roots(definite, args.prime)
    comps = roots.root_components(definite, args.prime)
    payload = {
        "count_norm2": len(r1),
        "count_norm2p": len(r2),
        "components": [dataclasses.asdict(c) for c in comps],
    }
    lines = [f"{len(r1)} vectors of norm 2, {len(r2)} reflective vectors of norm 2*{args.prime}"]
    for c in comps:
        lines.append(
            f"  {c.name}: rank {c.rank}, {c.count_short} short + {c.count_long} long"
        )
    emit(payload, args.format, lines)
    return 0


def cmd_check(args) -> int:
    cat = _catalog(args)
    _, definite = cat_mod.definite_part(args.lattice, cat)
    if definite is None:
        print("lattice has no definite part", file=sys.stderr)
        return 1
    report = reflcheck.check_candidate(definite, args.prime, args.c1, args.cp, args.k)
    payload = dataclasses.asdict(report)
    payload.pop("lattice", None)
    lines = [
        f"candidate ({args.c1},{args.cp}) weight {args.k} at p={args.prime}: "
        + ("PASS" if report.passed else "FAIL")
    ]
    for name, value in report.checks.items():
        lines.append(f"  {name}: {value}")
    emit(payload, args.format, lines)
    return 0 if report.passed else 2


def cmd_solve(args) -> int:
    cat = _catalog(args)
    _, definite = cat_mod.definite_part(args.lattice, cat)
    if definite is None:
        print("lattice has no definite part", file=sys.stderr)
        return 1
    res = reflcheck.solve_candidates(definite, args.prime)
    payload = dataclasses.asdict(res)
    lines = [f"solve at p={args.prime}: {res.status}"]
    if res.status == "ray":
        lines.append(f"  multiplicities ({res.c1},{res.cp}), weight {res.k}, constant {res.c}")
    elif res.status == "underdetermined":
        k1, kp = res.k_coeffs
        lines.append(f"  weight k = {k1}*c1 + {kp}*c{args.prime} for independent multiplicities")
    else:
        lines.append(f"  {res.reason}")
    emit(payload, args.format, lines)
    return 0


def cmd_eta(args) -> int:
    series = etaq.f_series(terms=args.precision)
    scalar, sqrtp, transformed = etaq.s_transform(-8, -8, 2, terms=args.precision)
    payload = {
        "f": str(series),
        "f_terms": {str(Fraction(e, series.denom)): c for e, c in series.terms()},
        "transform_scalar": scalar,
        "transform_sqrt_power": sqrtp,
        "f_transformed": str(transformed),
        "lift_weights": {
            str(n_p): dict(zip(("k", "c2"), etaq.lift_weight(n_p)))
            for n_p in (10, 8, 6, 4, 2)
        },
    }
    lines = [f"f = {series}", f"f|S = {scalar} * sqrt(2)^{sqrtp} * ({transformed})"]
    for n_p in (10, 8, 6, 4, 2):
        k, c2 = etaq.lift_weight(n_p)
        lines.append(f"  lift for 2_II^{{{n_p}}}: weight {k}, long multiplicity {c2}")
    emit(payload, args.format, lines)
    return 0


def cmd_tower(args) -> int:
    cat = _catalog(args)
    report = towers.verify_all(cat)
    ok = all(report["towers"].values()) and all(report["transfers_ok"])
    lines = []
    for name, good in report["towers"].items():
        lines.append(f"tower {name}: {'ok' if good else 'FAIL'}")
    lines.append(
        f"transfers: {sum(report['transfers_ok'])}/{len(report['transfers_ok'])} ok"
    )
    emit(report, args.format, lines)
    return 0 if ok else 2


def cmd_classify(args) -> int:
    cat = _catalog(args)
    if args.prime is not None:
        records = classify(args.prime, cat)
        payload = [dataclasses.asdict(r) for r in records]
        lines = []
        for r in records:
            tail = f"  [{r.reason}]" if r.reason else ""
            lines.append(f"{r.genus}: {r.verdict}{tail}")
        emit(payload, args.format, lines)
        return 2 if any(r.verdict == "NOT_REFLECTIVE" for r in records) else 0
    table = verdict_table(verify=args.verify, catalog=cat)
    lines = [f"reflective genera: {table['count']}"]
    for label in table["reflective"]:
        lines.append(f"  {label}")
    lines.append(
        "construction tables "
        + ("match" if table["matches_construction_tables"] else "DO NOT match")
    )
    emit(table, args.format, lines)
    return 0 if table["matches_construction_tables"] else 2


def cmd_classnumber(args) -> int:
    cat = _catalog(args)
    data = class_number_rootsystems(args.rank, args.prime, args.c1, args.cp, args.k)
    count = class_number(args.rank, args.prime, args.c1, args.cp, args.k, args.np, cat)
    payload = {"root_data": data, "class_number": count}
    lines = []
    for datum in data:
        lines.append(
            f"root datum {'+'.join(datum['components'])}: C = {datum['c']}, det {datum['det']}"
        )
    lines.append(f"class number {count}")
    emit(payload, args.format, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="reflector", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("lattice", help="rank, determinant, level, genus of a lattice")
    sp.add_argument("--lattice", required=True)
    sp.add_argument("--prime", type=int)
    _add_common(sp)
    sp.set_defaults(func=cmd_lattice)

    sp = sub.add_parser("discform", help="discriminant form invariants")
    sp.add_argument("--lattice")
    sp.add_argument("--genus")
    sp.add_argument("--prime", type=int)
    _add_common(sp)
    sp.set_defaults(func=cmd_discform)

    sp = sub.add_parser("roots", help="reflective vectors and their components")
    sp.add_argument("--lattice", required=True)
    sp.add_argument("--prime", type=int, required=True)
    _add_common(sp)
    sp.set_defaults(func=cmd_roots)

    sp = sub.add_parser("check", help="verify one multiplicity/weight candidate")
    sp.add_argument("--lattice", required=True)
    sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("--c1", type=int, required=True)
    sp.add_argument("--cp", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    _add_common(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("solve", help="solve the multiplicity equations")
    sp.add_argument("--lattice", required=True)
    sp.add_argument("--prime", type=int, required=True)
    _add_common(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("eta", help="eta-quotient input form and lifting weights")
    sp.add_argument("--precision", type=int, default=12)
    _add_common(sp)
    sp.set_defaults(func=cmd_eta)

    sp = sub.add_parser("tower", help="replay the pull-back towers and transfers")
    _add_common(sp)
    sp.set_defaults(func=cmd_tower)

    sp = sub.add_parser("classify", help="run the classification")
    sp.add_argument("--prime", type=int)
    sp.add_argument("--verify", action="store_true", help="re-check every construction row")
    _add_common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("classnumber", help="count classes carrying a root datum")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("--c1", type=int, required=True)
    sp.add_argument("--cp", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--np", type=int, required=True)
    _add_common(sp)
    sp.set_defaults(func=cmd_classnumber)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except discforms.BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
