"""Command-line front end: runs the verification checks and emits a
deterministic JSON report (schema "k3pencil/1", rationals as "p/q" strings,
exit code 0 when nothing failed, 1 on any failure, 2 on usage errors)."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from typing import Optional

from . import __version__
from .claims import FLAGGED_CHECKS, claim_ref
from .field import QQ, QS
from .lattice import lattice_invariants, standard_lattice
from .mpoly import MPoly
from .pencil import (
    GENERIC_BRANCH_POINTS,
    QUARTIC_SINGULAR_TABLE,
    branch_cubic,
    branch_sextic_at,
    fiber_singular_table,
    radical_quartic,
)
from .singular import (
    ProjPoint,
    branch_ade_type,
    double_cover_type,
    milnor_ade_classify,
    verify_curve_intersections,
    verify_singular_locus,
)
from .cover import (
    BranchConfig,
    REFERENCE_LINE_MATRIX,
    chain_model_check,
    cremona_pullback_check,
    even_contact_test,
    fiber_lines,
    line_matrix,
    verify_component_lift,
)
from .picard import analyze_fiber, reflection_isomorphism_check
from .series import (
    OPERATORS,
    annihilation_check,
    apery,
    apery_operator,
    domb,
    domb_operator,
    fermi_operator,
    operator_singularities,
    operator_to_recurrence,
    sum_a,
)
from .identities import all_identity_checks

SCHEMA = "k3pencil/1"


def _jsonable(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    return str(x)


def record(check_id: str, ok: bool, details: dict, t0: float) -> dict:
    status = "pass" if ok else "fail"
    if check_id in FLAGGED_CHECKS:
        status = "flagged" if ok else "fail"
    return {
        "check_id": check_id,
        "claim_ref": claim_ref(check_id),
        "status": status,
        "details": _jsonable(details),
        "runtime_ms": int((time.time() - t0) * 1000),
    }


# ---------------------------------------------------------------------------
# check runners
# ---------------------------------------------------------------------------


def run_singularities(surface: str = "all", s_value: str = "all") -> list[dict]:
    out = []
    if surface in ("q", "all"):
        t0 = time.time()
        Q = radical_quartic()
        pts = [ProjPoint(QQ, c) for c, _ in QUARTIC_SINGULAR_TABLE]
        rep = verify_singular_locus(Q, pts)
        rows = []
        types_ok = True
        for coords, k in QUARTIC_SINGULAR_TABLE:
            P = ProjPoint(QQ, coords)
            i = next(j for j, c in enumerate(P.coords) if not c.is_zero())
            chart = Q.vars[i]
            aff = Q.set_var(chart, QQ.one).drop_vars([chart])
            pcoords = [P.coords[j] for j in range(4) if j != i]
            r = milnor_ade_classify(aff, pcoords)
            types_ok = types_ok and r.k == k
            rows.append({"point": str(P), "type": f"A{r.k}", "milnor": r.milnor_number})
        out.append(
            record(
                "quartic-singular-locus",
                rep.ok and types_ok,
                {"complete": rep.ok, "witness": rep.witness, "rows": rows},
                t0,
            )
        )
    if surface in ("branch", "all"):
        if s_value in ("generic", "all"):
            t0 = time.time()
            g0, g1 = branch_cubic(0), branch_cubic(1)
            r0 = verify_singular_locus(g0, [])
            r1 = verify_singular_locus(g1, [])
            out.append(
                record(
                    "branch-generic-smooth",
                    r0.ok and r1.ok,
                    {"bad_parameter_values": sorted(set(r0.bad_parameter_values + r1.bad_parameter_values))},
                    t0,
                )
            )
            t0 = time.time()
            claimed = [(ProjPoint(QS, c), m) for c, m in GENERIC_BRANCH_POINTS]
            rep = verify_curve_intersections(g0, g1, claimed)
            out.append(
                record(
                    "branch-generic-intersections",
                    rep.ok,
                    {
                        "witness": rep.witness,
                        "rows": [
                            {"point": str(P), "multiplicity": m} for P, m in claimed
                        ],
                        "bezout": sum(m for _, m in claimed),
                    },
                    t0,
                )
            )
            t0 = time.time()
            sex = branch_cubic(0) * branch_cubic(1)
            rows = []
            ok = True
            for coords, m in GENERIC_BRANCH_POINTS:
                P = ProjPoint(QS, coords)
                r = double_cover_type(sex, P)
                expected = branch_ade_type(m)
                ok = ok and r.k == expected
                rows.append({"point": str(P), "type": f"A{r.k}", "milnor": r.k})
            out.append(record("branch-generic-cover-types", ok, {"rows": rows}, t0))
        for s0, check_id in ((1, "fiber-s1-singular-locus"), (-1, "fiber-s-1-singular-locus")):
            if s_value not in (str(s0), "all"):
                continue
            t0 = time.time()
            sex = branch_sextic_at(s0)
            table = fiber_singular_table(s0)
            pts = [ProjPoint(QQ, c) for c, _ in table]
            rep = verify_singular_locus(sex, pts)
            rows = []
            ok = rep.ok
            for coords, k in table:
                r = double_cover_type(sex, ProjPoint(QQ, coords))
                ok = ok and r.k == k
                rows.append({"point": str(ProjPoint(QQ, coords)), "type": f"A{r.k}", "milnor": r.k})
            out.append(record(check_id, ok, {"complete": rep.ok, "rows": rows}, t0))
    return out


def run_lines(s_value: str = "generic") -> list[dict]:
    out = []
    if s_value != "generic":
        # special fibres: the line table and matrix are emitted as data; the
        # pass/fail checks target the generic configuration
        return out
    t0 = time.time()
    config = BranchConfig.generic()
    lines = fiber_lines("generic")
    even_rows = []
    even_ok = True
    for ll in lines:
        flag, q, unit = even_contact_test(ll.line, config)
        even_ok = even_ok and flag
        even_rows.append({"label": ll.label, "line": str(ll.line), "even_contact": flag})
    x, y, z = MPoly.gens(config.field, ("x", "y", "z"))
    ctrl, _, _ = even_contact_test(z - x - 2 * y, config)
    even_ok = even_ok and not ctrl
    out.append(
        record(
            "even-contact-generic",
            even_ok,
            {"rows": even_rows, "control_line_z=x+2y_even": ctrl},
            t0,
        )
    )
    t0 = time.time()
    lift_rows = []
    lifts_ok = True
    for ll in lines:
        ok, res = verify_component_lift(ll, config)
        lifts_ok = lifts_ok and ok
        lift_rows.append({"label": ll.label, "w": str(ll.w_formula), "ok": ok})
    out.append(record("component-lifts-generic", lifts_ok, {"rows": lift_rows}, t0))
    t0 = time.time()
    m = line_matrix(lines, config)
    match = tuple(tuple(r) for r in m) == REFERENCE_LINE_MATRIX
    out.append(record("line-matrix-generic", match, {"matrix": m, "matches_reference": match}, t0))
    t0 = time.time()
    chain = chain_model_check()
    out.append(record("chain-model", chain.ok, {"steps": chain.steps}, t0))
    t0 = time.time()
    crs = [cremona_pullback_check(i) for i in (0, 1)]
    out.append(
        record(
            "cremona-pullback",
            all(c.ok and c.involution_ok for c in crs),
            {
                "multiplicities": [list(c.multiplicities) for c in crs],
                "exceptional": list(crs[0].exceptional),
                "involution": all(c.involution_ok for c in crs),
            },
            t0,
        )
    )
    return out


def run_picard(fiber: str = "all", jobs: int = 1, rank_bound: int = 20) -> list[dict]:
    out = []
    targets = {
        "generic": ("generic", "picard-generic", 4),
        "s1": (1, "picard-s1", None),
        "s-1": (-1, "picard-s-1", None),
    }
    for key, (fib, check_id, expected_survivors) in targets.items():
        if fiber not in (key, "all"):
            continue
        t0 = time.time()
        res = analyze_fiber(fib, jobs=jobs, rank_bound=rank_bound)
        ok = res.picard_match and res.transcendental_match
        if expected_survivors is not None:
            ok = ok and res.survivor_count == expected_survivors
        if key == "generic":
            ok = ok and res.picard.rank == 19 and res.picard.signature[:2] == (1, 18)
            ok = ok and res.picard.invariant_factors == (12,)
        out.append(
            record(
                check_id,
                ok,
                {
                    "survivor_count": res.survivor_count,
                    "rank": res.picard.rank,
                    "signature": list(res.picard.signature),
                    "invariant_factors": list(res.picard.invariant_factors),
                    "disc_form": res.picard.describe().get("disc_q"),
                    "model": res.picard_model,
                    "model_match": res.picard_match,
                    "transcendental_model": res.transcendental_model,
                    "transcendental_match": res.transcendental_match,
                },
                t0,
            )
        )
    if fiber in ("all",):
        for pair, check_id in (((0, 1), "reflection-s0-s1"), ((2, -1), "reflection-s2-s-1")):
            t0 = time.time()
            rep = reflection_isomorphism_check(pair)
            out.append(
                record(
                    check_id,
                    rep.ok,
                    {
                        "pair": list(pair),
                        "matrix": [[str(x) for x in row] for row in rep.matrix] if rep.matrix else None,
                        "cubic_pairing": rep.pairing,
                    },
                    t0,
                )
            )
    return out


def run_series(op: str = "all", n: int = 50, corrected: bool = False) -> list[dict]:
    out = []
    if op in ("apery", "all"):
        t0 = time.time()
        values = [apery(i) for i in range(6)]
        rec = operator_to_recurrence(apery_operator())
        rec_ok = all(rec.residual([apery(i) for i in range(101)], m) == 0 for m in range(2, 101))
        out.append(
            record(
                "apery-sequence",
                values[:4] == [1, 5, 73, 1445] and rec_ok,
                {"values": values, "recurrence": rec.describe()},
                t0,
            )
        )
        t0 = time.time()
        ok, bad = annihilation_check(apery_operator(), apery, max(n, 50))
        out.append(record("apery-annihilation", ok, {"order": max(n, 50), "first_fail": bad}, t0))
        t0 = time.time()
        rep = operator_singularities(apery_operator())
        pts = rep.singular_points()
        expected = ["0", "17 + 12*sqrt(2)", "17 - 12*sqrt(2)", "inf"]
        out.append(
            record(
                "apery-singular-points",
                sorted(pts) == sorted(expected) and rep.symbol_str == "x^2 - 34*x + 1",
                {"symbol": rep.symbol_str, "singular_points": pts},
                t0,
            )
        )
        t0 = time.time()
        out.append(
            record(
                "apery-index-note",
                apery(3) == 1445 and apery(4) == 33001 and apery(4) != 1445,
                {"A3": apery(3), "A4": apery(4)},
                t0,
            )
        )
    if op in ("domb", "all"):
        t0 = time.time()
        values = [domb(i) for i in range(5)]
        prod_ok = all(domb(i) == _comb(2 * i, i) * sum_a(i) for i in range(51))
        out.append(
            record(
                "domb-sequence",
                values == [1, 6, 90, 1860, 44730] and prod_ok and sum_a(4) == 639,
                {"values": values, "a4": sum_a(4)},
                t0,
            )
        )
        t0 = time.time()
        rec = operator_to_recurrence(domb_operator(False))
        pred = rec.predict(Fraction(1), 2)
        okf, bad = annihilation_check(domb_operator(False), domb, 30)
        rep = operator_singularities(domb_operator(False))
        out.append(
            record(
                "domb-stated-operator",
                (not okf) and pred[2] == Fraction(825, 8),
                {
                    "predicted_b2": pred[2],
                    "first_fail": bad,
                    "symbol": rep.symbol_str,
                    "singular_points": rep.singular_points(),
                },
                t0,
            )
        )
        t0 = time.time()
        ok, bad = annihilation_check(domb_operator(True), domb, max(n, 50))
        rep = operator_singularities(domb_operator(True))
        pts = rep.singular_points()
        out.append(
            record(
                "domb-corrected-operator",
                ok and pts == ["0", "1/4", "1/36", "inf"],
                {
                    "order": max(n, 50),
                    "first_fail": bad,
                    "symbol": rep.symbol_str,
                    "singular_points": pts,
                    "recurrence": operator_to_recurrence(domb_operator(True)).describe(),
                },
                t0,
            )
        )
    if op in ("fermi", "all"):
        t0 = time.time()
        okf, bad = annihilation_check(fermi_operator(False), apery, 20, dilation=2)
        out.append(
            record(
                "fermi-stated-operator",
                (not okf) and bad == 2,
                {"first_fail": bad},
                t0,
            )
        )
        t0 = time.time()
        ok, bad = annihilation_check(fermi_operator(True), apery, max(n, 40), dilation=2)
        ok_a, _ = annihilation_check(apery_operator(), apery, max(n, 40))
        out.append(
            record(
                "fermi-corrected-operator",
                ok and ok_a,
                {"order": max(n, 40), "first_fail": bad, "pullback_coherent": ok == ok_a},
                t0,
            )
        )
        t0 = time.time()
        rep = operator_singularities(fermi_operator(True))
        pts = rep.singular_points()
        expected = {
            "0",
            "inf",
            "3 + 2*sqrt(2)",
            "-3 - 2*sqrt(2)",
            "3 - 2*sqrt(2)",
            "-3 + 2*sqrt(2)",
        }
        stated = {"0", "inf", "3 + sqrt(2)", "3 - sqrt(2)", "-3 + sqrt(2)", "-3 - sqrt(2)"}
        out.append(
            record(
                "fermi-singularities-note",
                set(pts) == expected and set(pts) != stated,
                {"computed": pts, "stated_list_consistent": set(pts) == stated},
                t0,
            )
        )
    if op in ("walk", "all"):
        t0 = time.time()
        out.append(
            record(
                "walk-sequence-index",
                [_comb(2 * i, i) * sum_a(i) for i in range(5)] == [1, 6, 90, 1860, 44730],
                {"a_values": [sum_a(i) for i in range(6)]},
                t0,
            )
        )
    return out


def _comb(n: int, k: int) -> int:
    from math import comb

    return comb(n, k)


def run_identities(only: Optional[str] = None) -> list[dict]:
    out = []
    for c in all_identity_checks():
        if only and c.id != only:
            continue
        t0 = time.time()
        out.append(record(c.id, c.ok, c.details, t0))
    return out


def run_lattice(spec: str) -> dict:
    inv = lattice_invariants(standard_lattice(spec))
    return {"spec": spec, **_jsonable(inv.describe())}


def series_data(op: str, n: int, corrected: bool) -> dict:
    """The data view of one operator: sequence values, recurrence coefficient
    polynomials, annihilation status, and singular points."""
    builder, seq, dilation = OPERATORS[op]
    oper = builder() if op == "apery" else builder(corrected)
    rec = operator_to_recurrence(oper)
    order = max(n, 2 * dilation)
    ok, bad = annihilation_check(oper, seq, order, dilation=dilation)
    rep = operator_singularities(oper)
    return _jsonable(
        {
            "operator": op,
            "corrected": corrected,
            "coefficients": [seq(i) for i in range(min(n, 60) + 1)],
            "recurrence": rec.describe(),
            "annihilation_status": {"annihilates": ok, "order": order, "first_fail": bad},
            "symbol": rep.symbol_str,
            "singular_points": rep.singular_points(),
        }
    )


def lines_data(s_value: str) -> dict:
    config = BranchConfig.generic() if s_value == "generic" else BranchConfig.at(Fraction(s_value))
    lines = fiber_lines("generic" if s_value == "generic" else Fraction(s_value))
    return {
        "lines": [
            {"label": ll.label, "line": str(ll.line), "w": str(ll.w_formula)} for ll in lines
        ],
        "matrix": line_matrix(lines, config),
    }


# ---------------------------------------------------------------------------
# argument parsing and report assembly
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="k3pencil",
        description="Exact-arithmetic verification toolkit for the K3 pencil "
        "and its operator identities.",
    )
    p.add_argument("--version", action="version", version=f"k3pencil {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", help="write the JSON report to this file")
        sp.add_argument(
            "--jobs",
            type=int,
            default=os.cpu_count() or 1,
            help="parallelism hint for enumeration branches",
        )

    common(sub.add_parser("all", help="run every check"))
    sp = sub.add_parser("singularities", help="singular-locus checks")
    sp.add_argument("--surface", choices=["q", "branch", "all"], default="all")
    sp.add_argument("--s", dest="s_value", default="all", help="generic, a rational, or all")
    common(sp)
    sp = sub.add_parser("lines", help="split lines, lifts and their matrix")
    sp.add_argument("--s", dest="s_value", default="generic")
    common(sp)
    sp = sub.add_parser("lattice", help="invariants of a standard lattice expression")
    sp.add_argument("--spec", required=True, help='e.g. "U + E8(-1)^2 + <-12>"')
    common(sp)
    sp = sub.add_parser("picard", help="divisor enumeration per fibre")
    sp.add_argument("--fiber", choices=["generic", "s1", "s-1", "all"], default="all")
    sp.add_argument("--rank-bound", type=int, default=20, dest="rank_bound")
    common(sp)
    sp = sub.add_parser("series", help="operator and sequence checks")
    sp.add_argument("--op", choices=["apery", "fermi", "domb", "walk", "all"], default="all")
    sp.add_argument("--n", type=int, default=50)
    sp.add_argument("--corrected", action="store_true")
    common(sp)
    sp = sub.add_parser("identities", help="closed-form identity checks")
    sp.add_argument("--only", help="run a single identity by check id")
    common(sp)
    return p


def assemble(command: str, checks: list[dict], extra: Optional[dict] = None) -> dict:
    report = {"schema": SCHEMA, "command": command, "checks": checks}
    if extra:
        report["data"] = extra
    return report


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2
    checks: list[dict] = []
    extra: Optional[dict] = None
    if args.command == "all":
        checks += run_singularities()
        checks += run_lines()
        checks += run_picard(jobs=getattr(args, "jobs", 1))
        checks += run_series()
        checks += run_identities()
    elif args.command == "singularities":
        checks = run_singularities(args.surface, args.s_value)
        rows = []
        for c in checks:
            rows.extend(c["details"].get("rows", []))
        extra = {"rows": rows}
    elif args.command == "lines":
        checks = run_lines(args.s_value)
        extra = lines_data(args.s_value)
    elif args.command == "lattice":
        extra = run_lattice(args.spec)
    elif args.command == "picard":
        checks = run_picard(args.fiber, jobs=args.jobs, rank_bound=args.rank_bound)
        if args.fiber != "all" and checks:
            extra = checks[0]["details"]
    elif args.command == "series":
        checks = run_series(args.op, args.n, args.corrected)
        if args.op in OPERATORS:
            extra = series_data(args.op, args.n, args.corrected)
    elif args.command == "identities":
        checks = run_identities(args.only)
    report = assemble(args.command, checks, extra)
    text = json.dumps(report, indent=2, sort_keys=False)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 1 if any(c["status"] == "fail" for c in checks) else 0


if __name__ == "__main__":
    sys.exit(main())
