"""Command-line front end: coefficients, identity checks, criterion
verdicts, disk verification, critical-q scans, and the paper-vs-direct
discrepancy report.

json and csv outputs are stable interfaces (schemas in schemas.py); the
human format is for eyes only.  Exit status: 0 success (and, for `check`,
direct-variant satisfied), 2 for `check` with the direct variant
unsatisfied, 1 on any error."""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import criteria, disk, series, summation
from .scan import ScanRow, scan as run_scan

SCAN_CSV_COLUMNS = (
    "criterion", "variant", "m", "xi", "gamma", "rho",
    "q_star", "iterations", "residual_margin",
)

_CRITERION_ALIASES = {
    "thm1": "theta-in-s",
    "thm2": "theta-in-k",
    "thm3": "lambda-in-s",
    "thm4": "lambda-in-k",
    "thm5": "integral-in-k",
    "thm6": "integral-in-s",
}
# corollaries are the rho = 0 specialisations, in the same order
_COROLLARY_ALIASES = {f"cor{i}": _CRITERION_ALIASES[f"thm{i}"] for i in range(1, 7)}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}")


def _build_parser() -> _Parser:
    parser = _Parser(prog="pascal-spiral")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "human"), default="json")
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    common.add_argument("--tol", type=float, default=1e-10)
    common.add_argument("--seed", type=int, default=0)

    pascal = argparse.ArgumentParser(add_help=False)
    pascal.add_argument("--m", type=float, default=1.0)
    pascal.add_argument("--q", type=float, default=0.5)

    klass = argparse.ArgumentParser(add_help=False)
    klass.add_argument("--xi", type=float, default=0.0)
    klass.add_argument("--gamma", type=float, default=0.0)
    klass.add_argument("--rho", type=float, default=0.0)
    klass.add_argument("--degrees", action="store_true", help="xi given in degrees")

    rtau = argparse.ArgumentParser(add_help=False)
    rtau.add_argument("--tau-re", type=float, default=1.0)
    rtau.add_argument("--tau-im", type=float, default=0.0)
    rtau.add_argument("--vartheta", type=float, default=1.0)
    rtau.add_argument("--delta", type=float, default=0.0)

    p = sub.add_parser("coeffs", parents=[common, pascal])
    p.add_argument("--n", type=int, default=10, help="highest coefficient index")

    sub.add_parser("identities", parents=[common, pascal])

    p = sub.add_parser("check", parents=[common, pascal, klass, rtau])
    p.add_argument("criterion")
    p.add_argument(
        "--variant", choices=("paper", "rederived", "direct", "all"), default="all"
    )

    p = sub.add_parser("verify-disk", parents=[common, pascal, klass, rtau])
    p.add_argument(
        "--function",
        choices=("identity", "theta", "integral", "lambda-rtau", "single"),
        default="theta",
    )
    p.add_argument("--class", dest="family", choices=("S", "K"), default="S")
    p.add_argument("--a2", type=float, default=3.0, help="a_2 for --function single")
    p.add_argument("--radii", type=_float_list, default=None)
    p.add_argument("--angles", type=int, default=None)

    p = sub.add_parser("scan", parents=[common, rtau])
    p.add_argument("criterion")
    p.add_argument(
        "--variant", choices=("paper", "rederived", "direct"), default="direct"
    )
    p.add_argument("--m-grid", type=_float_list, default=[1.0])
    p.add_argument("--xi-grid", type=_float_list, default=[0.0])
    p.add_argument("--gamma-grid", type=_float_list, default=[0.0])
    p.add_argument("--rho-grid", type=_float_list, default=[0.0])
    p.add_argument("--degrees", action="store_true")

    p = sub.add_parser("discrepancy-report", parents=[common, rtau])
    p.add_argument("--threshold", type=float, default=1e-6)
    p.add_argument("--m-grid", type=_float_list, default=list(criteria.DEFAULT_M_GRID))
    p.add_argument("--q-grid", type=_float_list, default=list(criteria.DEFAULT_Q_GRID))
    p.add_argument(
        "--xi-grid", type=_float_list, default=list(criteria.DEFAULT_XI_GRID)
    )
    p.add_argument(
        "--gamma-grid", type=_float_list, default=list(criteria.DEFAULT_GAMMA_GRID)
    )
    p.add_argument(
        "--rho-grid", type=_float_list, default=list(criteria.DEFAULT_RHO_GRID)
    )
    return parser


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _xi_radians(args) -> float:
    return math.radians(args.xi) if getattr(args, "degrees", False) else args.xi


def _resolve_criterion(name: str):
    """Returns (CriterionId, force_rho_zero)."""
    key = name.lower()
    if key in _COROLLARY_ALIASES:
        return criteria.CriterionId(_COROLLARY_ALIASES[key]), True
    key = _CRITERION_ALIASES.get(key, key)
    try:
        return criteria.CriterionId(key), False
    except ValueError:
        valid = sorted(
            list(_CRITERION_ALIASES) + list(_COROLLARY_ALIASES)
            + [cid.value for cid in criteria.CriterionId]
        )
        raise ValueError(f"unknown criterion {name!r} (valid: {', '.join(valid)})")


def _rtau_from(args) -> series.RTauParams:
    return series.RTauParams(
        tau=complex(args.tau_re, args.tau_im),
        vartheta=args.vartheta,
        delta=args.delta,
    )


def _cmd_coeffs(args) -> int:
    p = series.PascalParams(args.m, args.q)
    if args.n < 2:
        raise ValueError("--n must be >= 2")
    phis = series.pascal_coefficients(p, args.n)
    if args.format == "json":
        obj = {
            "command": "coeffs",
            "m": p.m,
            "q": p.q,
            "rows": [{"n": n, "phi_n": float(v)} for n, v in enumerate(phis, start=2)],
        }
        _emit(_json_text(obj), args.out)
    elif args.format == "csv":
        rows = [(n, f"{v:.17g}") for n, v in enumerate(phis, start=2)]
        _emit(_csv_text(("n", "phi_n"), rows), args.out)
    else:
        lines = [f"phi_n for m={args.m}, q={args.q}"]
        lines += [f"  n={n:<6d} phi_n={v:.17g}" for n, v in enumerate(phis, start=2)]
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_identities(args) -> int:
    p = series.PascalParams(args.m, args.q)
    reports = summation.all_identity_reports(p)
    if args.format == "json":
        obj = {
            "command": "identities",
            "m": p.m,
            "q": p.q,
            "identities": [
                {
                    "identity_id": rep.identity_id,
                    "closed_form": rep.closed_form,
                    "truncated": rep.truncated,
                    "truncation_order": rep.truncation_order,
                    "abs_error": rep.abs_error,
                }
                for rep in reports
            ],
        }
        _emit(_json_text(obj), args.out)
    elif args.format == "csv":
        rows = [
            (
                rep.identity_id,
                repr(rep.closed_form),
                repr(rep.truncated),
                rep.truncation_order,
                repr(rep.abs_error),
            )
            for rep in reports
        ]
        header = (
            "identity_id", "closed_form", "truncated", "truncation_order", "abs_error"
        )
        _emit(_csv_text(header, rows), args.out)
    else:
        lines = [f"identity checks for m={args.m}, q={args.q}"]
        for rep in reports:
            lines.append(
                f"  {rep.identity_id:<5s} closed={rep.closed_form:.12g} "
                f"oracle={rep.truncated:.12g} (N={rep.truncation_order}) "
                f"err={rep.abs_error:.3e}"
            )
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _verdict_obj(v: criteria.Verdict) -> dict:
    return {
        "lhs": v.lhs,
        "rhs": v.rhs,
        "margin": v.margin,
        "satisfied": v.satisfied,
        "variant": v.variant,
    }


def _cmd_check(args) -> int:
    cid, force_rho0 = _resolve_criterion(args.criterion)
    p = series.PascalParams(args.m, args.q)
    c = criteria.SpiralClassParams(
        xi=_xi_radians(args),
        gamma=args.gamma,
        rho=0.0 if force_rho0 else args.rho,
    )
    r = _rtau_from(args) if cid.needs_rtau else None
    if args.variant == "all":
        verdicts = criteria.evaluate_all(cid, p, c, r)
    else:
        verdicts = {args.variant: criteria.evaluate_criterion(cid, p, c, r, args.variant)}
    disagreement = next(iter(verdicts.values())).disagreement
    obj = {
        "command": "check",
        "criterion": cid.value,
        "params": {
            "m": p.m,
            "q": p.q,
            "xi": c.xi,
            "gamma": c.gamma,
            "rho": c.rho,
            **(
                {"tau_re": r.tau.real, "tau_im": r.tau.imag,
                 "vartheta": r.vartheta, "delta": r.delta}
                if r is not None else {}
            ),
        },
        "verdicts": {name: _verdict_obj(v) for name, v in verdicts.items()},
        "disagreement": disagreement,
    }
    if args.format == "csv":
        rows = [
            (name, repr(v.lhs), repr(v.rhs), repr(v.margin), v.satisfied)
            for name, v in verdicts.items()
        ]
        _emit(_csv_text(("variant", "lhs", "rhs", "margin", "satisfied"), rows), args.out)
    elif args.format == "human":
        lines = [f"criterion {cid.value}"]
        for name, v in verdicts.items():
            flag = "satisfied" if v.satisfied else "NOT satisfied"
            lines.append(
                f"  {name:<9s} lhs={v.lhs:.12g} rhs={v.rhs:.12g} "
                f"margin={v.margin:.12g} -> {flag}"
            )
        if disagreement is not None:
            lines.append(f"  max inter-variant lhs spread: {disagreement:.3e}")
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(_json_text(obj), args.out)
    decisive = verdicts.get("direct") or next(iter(verdicts.values()))
    return 0 if decisive.satisfied else 2


def _build_function(args):
    """Returns (PowerSeries, tail_check) for verify-disk."""
    if args.function == "identity":
        return series.identity_series(), False
    if args.function == "single":
        return series.PowerSeries([complex(args.a2)]), False
    p = series.PascalParams(args.m, args.q)
    order = series.adaptive_truncation_order(p, threshold=1e-10, radius=0.995)
    theta = series.theta_series(p, order)
    if args.function == "theta":
        return theta, True
    if args.function == "integral":
        return series.integral_transform(theta), True
    if args.function == "lambda-rtau":
        r = _rtau_from(args)
        return series.hadamard_convolve(theta, series.extremal_rtau_series(r, order)), True
    raise ValueError(f"unknown function {args.function!r}")


def _cmd_verify_disk(args) -> int:
    f, tail_check = _build_function(args)
    c = criteria.SpiralClassParams(xi=_xi_radians(args), gamma=args.gamma, rho=args.rho)
    grid_kwargs = {}
    if args.radii is not None:
        grid_kwargs["radii"] = tuple(args.radii)
    if args.angles is not None:
        grid_kwargs["angles_per_ring"] = args.angles
    grid = disk.DiskGrid(**grid_kwargs) if grid_kwargs else disk.default_grid()
    report = disk.verify_on_disk(
        f, c, args.family, grid, tolerance=1e-6, tail_check=tail_check
    )
    obj = {
        "command": "verify-disk",
        "function": args.function,
        "family": args.family,
        "params": {
            "m": args.m, "q": args.q,
            "xi": c.xi, "gamma": c.gamma, "rho": c.rho,
        },
        "pass": report.passed,
        "min_value": report.min_value,
        "witness": {"re": report.witness.real, "im": report.witness.imag},
        "points_checked": report.points_checked,
        "note": report.note,
    }
    if args.format == "human":
        flag = "PASS (no violation found)" if report.passed else "FAIL"
        _emit(
            f"{flag}: min={report.min_value:.12g} at z={report.witness} "
            f"({report.points_checked} points)\n",
            args.out,
        )
    elif args.format == "csv":
        rows = [
            (
                args.function, args.family, report.passed,
                repr(report.min_value),
                repr(report.witness.real), repr(report.witness.imag),
                report.points_checked,
            )
        ]
        header = (
            "function", "family", "pass", "min_value",
            "witness_re", "witness_im", "points_checked",
        )
        _emit(_csv_text(header, rows), args.out)
    else:
        _emit(_json_text(obj), args.out)
    return 0 if report.passed else 2


def _row_tuple(row: ScanRow):
    return (
        row.criterion, row.variant,
        repr(row.m), repr(row.xi), repr(row.gamma), repr(row.rho),
        repr(row.q_star), row.iterations, repr(row.residual_margin),
    )


def _cmd_scan(args) -> int:
    cid, force_rho0 = _resolve_criterion(args.criterion)
    rho_grid = [0.0] if force_rho0 else args.rho_grid
    xi_grid = [math.radians(x) for x in args.xi_grid] if args.degrees else args.xi_grid
    r = _rtau_from(args) if cid.needs_rtau else None
    rows = run_scan(
        cid, args.variant, args.m_grid, xi_grid, args.gamma_grid, rho_grid,
        r=r, tol=args.tol,
    )
    if args.format == "csv":
        _emit(_csv_text(SCAN_CSV_COLUMNS, [_row_tuple(r_) for r_ in rows]), args.out)
    elif args.format == "human":
        lines = [f"critical q for {cid.value} ({args.variant})"]
        for row in rows:
            tag = f" [{row.boundary}]" if row.boundary else ""
            tag += f" [error: {row.error}]" if row.error else ""
            lines.append(
                f"  m={row.m:g} xi={row.xi:.4f} gamma={row.gamma:g} rho={row.rho:g}"
                f" -> q*={row.q_star:.12g} ({row.iterations} it,"
                f" residual {row.residual_margin:.2e}){tag}"
            )
        _emit("\n".join(lines) + "\n", args.out)
    else:
        obj = {
            "command": "scan",
            "rows": [
                {
                    "criterion": row.criterion,
                    "variant": row.variant,
                    "m": row.m,
                    "xi": row.xi,
                    "gamma": row.gamma,
                    "rho": row.rho,
                    "q_star": row.q_star,
                    "iterations": row.iterations,
                    "residual_margin": row.residual_margin,
                    "boundary": row.boundary,
                    "error": row.error,
                }
                for row in rows
            ],
        }
        _emit(_json_text(obj), args.out)
    return 0


def _cmd_discrepancy(args) -> int:
    report = criteria.discrepancy_report(
        threshold=args.threshold,
        m_grid=args.m_grid,
        q_grid=args.q_grid,
        xi_grid=args.xi_grid,
        gamma_grid=args.gamma_grid,
        rho_grid=args.rho_grid,
        r=_rtau_from(args),
    )
    obj = {"command": "discrepancy-report", **report}
    if args.format == "csv":
        header = (
            "criterion", "m", "q", "xi", "gamma", "rho",
            "paper_lhs", "direct_lhs", "abs_diff",
        )
        rows = [
            (
                row["criterion"],
                repr(row["m"]), repr(row["q"]), repr(row["xi"]),
                repr(row["gamma"]), repr(row["rho"]),
                repr(row["paper_lhs"]), repr(row["direct_lhs"]),
                repr(row["abs_diff"]),
            )
            for row in report["flagged_rows"]
        ]
        _emit(_csv_text(header, rows), args.out)
    elif args.format == "human":
        lines = [
            f"paper-vs-direct discrepancies over {report['points_checked']} points "
            f"(threshold {report['threshold']:g}, scaled):"
        ]
        for cid, count in report["flagged_counts"].items():
            lines.append(f"  {cid:<15s} {count} flagged")
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(_json_text(obj), args.out)
    return 0


_DISPATCH = {
    "coeffs": _cmd_coeffs,
    "identities": _cmd_identities,
    "check": _cmd_check,
    "verify-disk": _cmd_verify_disk,
    "scan": _cmd_scan,
    "discrepancy-report": _cmd_discrepancy,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _DISPATCH[args.command](args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    except (ValueError, ArithmeticError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
