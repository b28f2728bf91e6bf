"""Command-line front end: ``rpconf <subcommand> ...``.

Exit status: 0 success, 1 verification failures, 2 usage error,
3 exhaustive search over budget, 4 internal route mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import charclasses, f2core, grassmann, tcomplexity
from .ambient import WClass, parse_monomial
from .context import ring_for
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET, EXIT_MISMATCH = 0, 1, 2, 3, 4

SEARCH_COLUMNS = ["n", "k", "nonzero", "family", "implied_nonimmersion_dim"]
TC_COLUMNS = [
    "n", "e", "d", "r", "zcl_formula", "zcl_exhaustive", "witness_ok", "tc_lower", "tc_upper", "gap",
]


class UsageError(ValueError):
    pass


def default_jobs() -> int:
    return int(os.environ.get("RPCONF_JOBS", "1"))


def _need_n(n: int) -> int:
    if n < 2:
        raise UsageError(f"n must be at least 2, got {n}")
    return n


def emit(report, fmt: str, columns: list[str] | None = None) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
        w.writeheader()
        for row in report:
            w.writerow({k: "" if row.get(k) is None else row.get(k) for k in columns})
        return buf.getvalue()
    return _text(report, columns) + "\n"


def _text(report, columns) -> str:
    if isinstance(report, list):
        cols = columns or (list(report[0]) if report else [])
        lines = ["  ".join(cols)]
        lines += ["  ".join(str(row.get(c, "")) for c in cols) for row in report]
        return "\n".join(lines)
    lines = []
    for k, v in report.items():
        if isinstance(v, list) and v and isinstance(v[0], (dict, list)):
            lines.append(f"{k}:")
            lines.extend(f"  {json.dumps(item)}" for item in v)
        elif isinstance(v, list):
            lines.append(f"{k}: " + (", ".join(map(str, v)) if v else "-"))
        else:
            lines.append(f"{k}: {v}")
    return "\n".join(lines)


# -- subcommands --------------------------------------------------------------


def cmd_basis(args) -> tuple[dict, None]:
    g = ring_for(_need_n(args.n)).g
    D = args.degree
    basis, _ = grassmann.oracle_basis(g, D)
    rep = {
        "n": args.n,
        "degree": D,
        "dim": len(basis),
        "basis": [str(m) for m in basis],
        "relations_applied": g.table(D).ideal_rank if D >= 0 else 0,
    }
    if grassmann.theorem_regime(args.n, D):
        rep["beta_monomials"] = [[str(m) for m in ms] for ms in grassmann.beta_monomials(g, D)]
    return rep, None


def cmd_normal_form(args) -> tuple[dict, None]:
    ring = ring_for(_need_n(args.n))
    try:
        m = parse_monomial(args.monomial)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    c = WClass.monomial(m)
    canon = ring.canonical(c)
    return {
        "n": args.n,
        "monomial": str(m),
        "normalized": str(m.normalize()),
        "degree": m.degree,
        "class": str(canon),
        "zero": not canon,
    }, None


def _class_entry(ring, k: int, c: WClass) -> dict:
    canon = ring.canonical(c)
    return {"k": k, "ambient": str(c), "reduced": str(canon), "nonzero": bool(canon)}


def cmd_sw(args) -> tuple[dict, None]:
    n = _need_n(args.n)
    ring = ring_for(n)
    if args.degree is not None and not 0 <= args.degree <= ring.top:
        raise UsageError(f"degree must be in [0, {ring.top}]")
    s = charclasses.sw_series(n, args.bundle)
    if args.bundle == "eta-c":
        # both routes; raises RouteMismatch on disagreement
        for k in range(ring.top + 1):
            charclasses.w_eta_c_coeff(ring, k)
    rep: dict = {"n": n, "bundle": args.bundle}
    if args.degree is not None:
        rep.update(_class_entry(ring, args.degree, s.w(args.degree)))
    else:
        rep["classes"] = [_class_entry(ring, k, s.w(k)) for k in range(ring.top + 1)]
    return rep, None


def cmd_sw_search(args) -> tuple[list, list]:
    hits = charclasses.sw_search(args.n_max, n_min=args.n_min, jobs=args.jobs)
    rows = [
        {
            "n": h.n,
            "k": h.k,
            "nonzero": int(h.nonzero),
            "family": h.family,
            "implied_nonimmersion_dim": h.implied_nonimmersion_dim,
            "thm_nonimmersion_dim": charclasses.thm_dimension(h.n),
            "witness": h.witness,
        }
        for h in hits
    ]
    return rows, SEARCH_COLUMNS


def cmd_zcl(args) -> tuple[dict, None]:
    n = _need_n(args.n)
    res = tcomplexity.zcl_result(n, exhaustive=args.exhaustive, witness=True)
    rep = res.as_dict()
    if args.witness:
        w = tcomplexity.zcl_witness(ring_for(n))
        rep["witness"] = {
            "exponents": list(w.exponents),
            "nonzero": w.nonzero,
            "block_matches": w.block_matches,
            "increments_vanish": w.increments_vanish,
        }
    rep["note"] = "zcl taken over products of the zero divisors xb, ub, yb"
    return rep, None


def cmd_tc_report(args) -> tuple[list, list]:
    if args.n_min < 2:
        raise UsageError("n-min must be at least 2")
    rows = tcomplexity.tc_report(args.n_min, args.n_max, exhaustive=args.exhaustive, jobs=args.jobs)
    return [r.as_dict() for r in rows], TC_COLUMNS


def cmd_matlem(args) -> tuple[dict, None]:
    if args.m < 1:
        raise UsageError("m must be at least 1")
    return {"m": args.m, "det": f2core.matlem_det(args.m)}, None


def cmd_immersion(args) -> tuple[dict, None]:
    n = _need_n(args.n)
    return charclasses.immersion_report(n, ring_for(n)), None


def cmd_verify(args) -> tuple[dict, None]:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = [
        run_suite(name, n_max=args.n_max, m_max=args.m_max).as_dict() for name in names
    ]
    if len(reports) == 1:
        return reports[0], None
    return {"suites": reports}, None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rpconf", description=__doc__.splitlines()[0])
    p.add_argument("--output", "-o", help="write the report here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, formats=("text", "json"), default="text"):
        sp = sub.add_parser(name)
        sp.set_defaults(func=func)
        sp.add_argument("--format", choices=formats, default=default)
        return sp

    sp = add("basis", cmd_basis)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--degree", type=int, required=True)

    sp = add("normal-form", cmd_normal_form)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--monomial", required=True)

    sp = add("sw", cmd_sw)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--bundle", choices=charclasses.BUNDLES, required=True)
    sp.add_argument("--degree", type=int)

    sp = add("sw-search", cmd_sw_search, ("csv", "json", "text"), "csv")
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--n-min", type=int, default=2)
    sp.add_argument("--jobs", type=int, default=default_jobs())

    sp = add("zcl", cmd_zcl)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--exhaustive", action="store_true")
    sp.add_argument("--witness", action="store_true")

    sp = add("tc-report", cmd_tc_report, ("csv", "json", "text"), "csv")
    sp.add_argument("--n-min", type=int, required=True)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--exhaustive", action="store_true")
    sp.add_argument("--jobs", type=int, default=default_jobs())

    sp = add("matlem", cmd_matlem)
    sp.add_argument("--m", type=int, required=True)

    sp = add("immersion", cmd_immersion)
    sp.add_argument("--n", type=int, required=True)

    sp = add("verify", cmd_verify, ("json", "text"), "text")
    sp.add_argument("--suite", choices=[*SUITES, "all"], required=True)
    sp.add_argument("--n-max", type=int)
    sp.add_argument("--m-max", type=int)
    return p


def _failed(report: dict) -> bool:
    if "suites" in report:
        return any(r["failures"] for r in report["suites"])
    return bool(report.get("failures"))


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    status = EXIT_OK
    try:
        report, columns = args.func(args)
    except UsageError as exc:
        print(f"rpconf {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except tcomplexity.BudgetExceeded as exc:
        print(f"rpconf {args.command}: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except charclasses.RouteMismatch as exc:
        print(f"rpconf {args.command}: self-check failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    if args.command == "verify" and _failed(report):
        status = EXIT_FAIL
    text = emit(report, args.format, columns)
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"rpconf: cannot write {args.output}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
