"""Command-line interface: coefficient tables, cone analysis, verification, cache."""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from typing import Optional, Sequence

from derangement import cache
from derangement.algebra.ratfunc import RatFunc
from derangement.algebra.sign import ratfunc_sign
from derangement.cone.analysis import canonical_ray, tau_star_7_psi, tau_star_coefficients
from derangement.cone.elimination import BudgetExceeded, NoUniformMinimizer, decompose_in_taus
from derangement.characters import PsiCoeffs
from derangement.oracle import SizeGuard
from derangement.partitions import EMPTY, partitions_of
from derangement.serialize import (
    BASES,
    cone_report_to_json,
    dumps,
    render_coeff,
    table_rows,
    table_to_csv,
    table_to_json,
    table_to_pretty,
)

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_BUDGET = 2
EXIT_SEARCH = 3


class _Deadline:
    def __init__(self, seconds: Optional[float]):
        self.end = None if seconds is None else time.monotonic() + seconds

    def __call__(self):
        if self.end is not None and time.monotonic() > self.end:
            raise BudgetExceeded("time budget exhausted")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


# ----------------------------------------------------------------------
# table
# ----------------------------------------------------------------------

def cmd_table(args, out) -> int:
    deadline = _Deadline(args.time_budget) if args.time_budget is not None else None
    rows = table_rows(args.n, args.basis, deadline)
    if args.format == "json":
        out.write(dumps(table_to_json(args.n, args.basis, rows)))
    elif args.format == "csv":
        out.write(table_to_csv(args.n, args.basis, rows))
    else:
        out.write(table_to_pretty(args.n, args.basis, rows))
    return EXIT_OK


# ----------------------------------------------------------------------
# cone
# ----------------------------------------------------------------------

def _sign_char(c: RatFunc) -> str:
    if c.is_zero():
        return "0"
    return "+" if ratfunc_sign(c).nonnegative else "-"


def sign_table(report) -> str:
    rows = list(partitions_of(report.n)) + [EMPTY]
    header = ["sign"] + list(report.labels)
    body = [[str(lam)] + [_sign_char(f[lam]) for f in report.extremes] for lam in rows]
    widths = [max(len(r[i]) for r in [header] + body) for i in range(len(header))]
    return "\n".join("  ".join(c.rjust(w) if i else c.ljust(w) for i, (c, w) in enumerate(zip(r, widths))).rstrip()
                     for r in [header] + body) + "\n"


def extra_ray_in_taus(report, idx: int) -> list[RatFunc]:
    """tau-coordinates of an extra ray, scaled so its first negative entry is -1."""
    coords = decompose_in_taus(report.basis, PsiCoeffs(report.n, report.extremes_psi[idx]))
    neg = next((c for c in coords if not c.is_zero() and not ratfunc_sign(c).nonnegative), None)
    if neg is not None:
        scale = RatFunc.coerce(-1) / neg
        coords = [c * scale for c in coords]
    return coords


def is_tau_star(psi_coords) -> bool:
    return canonical_ray(psi_coords) == canonical_ray(tau_star_7_psi().coeffs)


def render_cone(report) -> str:
    lines = [f"n = {report.n}"]
    verdict = "simplicial" if report.simplicial else "not simplicial"
    if not report.complete:
        verdict += " (incomplete)"
    lines.append(f"verdict: {verdict}")
    lines.append(f"extreme rays: {len(report.extremes)}")
    eig = report.eigendiagram_of
    lines.append("eigendiagrams: " + ", ".join(
        f"{lab}={'none' if eig.get(i) is None else eig[i]}" for i, lab in enumerate(report.labels)))
    for i, lab in enumerate(report.labels):
        if not lab.startswith("extra") or report.basis is None:
            continue
        coords = extra_ray_in_taus(report, i)
        terms = [f"({render_coeff(c)})*tau_{k}" for k, c in enumerate(coords) if not c.is_zero()]
        lines.append(f"{lab} = " + " + ".join(terms))
        if report.n == 7 and is_tau_star(report.extremes_psi[i]):
            a1, a2 = tau_star_coefficients()
            lines.append(f"{lab} is tau_* = a_1*tau_4 + a_2*tau_6 - tau_5 with")
            lines.append(f"  a_1 = {render_coeff(a1)}")
            lines.append(f"  a_2 = {render_coeff(a2)}")
    for note in report.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n\n" + sign_table(report)


def cmd_cone(args, out) -> int:
    from derangement.cone.analysis import analyze

    report = analyze(args.n, time_budget=args.time_budget, cross_check=args.cross_check)
    if args.format == "json":
        out.write(dumps(cone_report_to_json(report)))
    else:
        out.write(render_cone(report))
    if not report.complete:
        return EXIT_BUDGET
    if any(n.startswith("SampleDisagreement") for n in report.notes):
        return EXIT_SEARCH
    return EXIT_OK


# ----------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------

def cmd_verify(args, out) -> int:
    from derangement.verify import SUITES, run_suites

    names = SUITES if args.suite == "all" else (args.suite,)
    results = run_suites(names, args.n_max, n=args.n, p=args.p, z=args.z, q=args.q)
    for r in results:
        out.write(r.line() + "\n")
        for note in r.notes:
            out.write(f"  note: {note}\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


# ----------------------------------------------------------------------
# cache
# ----------------------------------------------------------------------

def cmd_cache(args, out) -> int:
    if args.action == "path":
        out.write(f"{cache.cache_dir()}\n")
    elif args.action == "list":
        for p in cache.list_entries():
            out.write(f"{p.name}\n")
    elif args.action == "clear":
        out.write(f"removed {cache.clear()} entries\n")
    elif args.action == "warm":
        for n in range(args.n_max + 1):
            cache.cached_basis(n)
        out.write(f"cached levels 0..{args.n_max}\n")
    return EXIT_OK


# ----------------------------------------------------------------------
# entry point
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="derangement", description=__doc__)
    parser.add_argument("--time-budget", type=float, default=None, metavar="SECONDS",
                        help="abort with exit code 2 when exceeded")
    parser.add_argument("--cache-dir", default=None, help="override the on-disk cache location")
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="block coefficients of a basis")
    t.add_argument("--basis", choices=BASES, default="psi")
    t.add_argument("--n", type=_nonneg, required=True)
    t.add_argument("--format", choices=("pretty", "json", "csv"), default="pretty")
    t.set_defaults(func=cmd_table)

    c = sub.add_parser("cone", help="extreme rays of the derangement cone")
    c.add_argument("--n", type=_nonneg, required=True)
    c.add_argument("--format", choices=("pretty", "json"), default="pretty")
    c.add_argument("--cross-check", action="store_true",
                   help="also run the sampled ray search when the cone is simplicial")
    c.set_defaults(func=cmd_cone)

    v = sub.add_parser("verify", help="run self-verification suites")
    v.add_argument("--n-max", type=_nonneg, default=6)
    v.add_argument("--suite", default="all",
                   choices=("all", "transforms", "branching", "kirillov", "hat_tau", "dimension",
                            "fz", "elimination", "oracle", "psd"))
    v.add_argument("--n", type=_nonneg, default=None, help="group degree for oracle/psd suites")
    v.add_argument("--p", type=int, default=None, help="prime for oracle/psd suites")
    v.add_argument("--z", type=_fraction, default=None, help="exact rational z for the fz scan")
    v.add_argument("--q", type=_fraction, default=None, help="specialisation of q for the fz scan")
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("cache", help="inspect or clear the on-disk cache")
    k.add_argument("action", choices=("path", "list", "clear", "warm"))
    k.add_argument("--n-max", type=_nonneg, default=9, help="levels to compute for 'warm'")
    k.set_defaults(func=cmd_cache)
    return parser


_VALUE_FLAGS = ("--z", "--q")


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    """Rewrite ``--z -1/10`` as ``--z=-1/10``; argparse takes "-1/10" for a flag."""
    out: list[str] = []
    it = iter(argv)
    for a in it:
        if a in _VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and nxt[1:2].isdigit():
                out.append(f"{a}={nxt}")
                continue
            out.append(a)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(a)
    return out


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else argv
    args = parser.parse_args(_glue_negative_values(argv))
    if args.cache_dir is not None:
        cache.set_cache_dir(args.cache_dir)
    try:
        return args.func(args, out)
    except BudgetExceeded as exc:
        sys.stderr.write(f"error: {exc}; no partial output emitted\n")
        return EXIT_BUDGET
    except SizeGuard as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_BUDGET
    except NoUniformMinimizer as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_SEARCH
    finally:
        if args.cache_dir is not None:
            cache.set_cache_dir(None)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
