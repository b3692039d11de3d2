"""Command line front end: ``nstab {verify,recover,mc,suite}``.

Exit status is 0 when every requested check passes, 1 when a check fails and
2 for invalid input (unknown family, ``c`` outside (0, 1), bad parameters).

Reports echo every input needed to reproduce them, including the argument
vector, and contain no timestamps: the same command gives the same bytes.

CSV columns, in order::

    pairing, control, family, law, mode, c, statistic, value, tolerance,
    verdict, expected, correct
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import __version__
from .continuous import (
    Exponential,
    ExtendedLogLogistic,
    GeneralizedSemiPareto,
    PeriodicHazard,
    SemiPareto,
    SemiWeibull,
)
from .discrete_families import DiscretizedFamily, geometric_family
from .discrete_laws import Degenerate, Geometric, Harris, Sibuya
from .errors import (
    DomainError,
    InstabilityError,
    ParameterError,
    PathEvaluationError,
    RegistryError,
)
from .extremes_mc import McConfig, mc_stability_test
from .pgf_recovery import recover_pgf
from .stability import (
    DEFAULT_TOL,
    GridSpec,
    StabilityProblem,
    full_cycle_phases,
    infer_constant,
    registry_suite,
    verify_stability,
)

REPORT_VERSION = 1
SEED_ENV = "NSTAB_SEED"
FAMILIES = ("exponential", "semi-weibull", "semi-pareto", "gsp", "ext-log-logistic", "geometric")
LAWS = ("sibuya", "harris", "geometric", "degenerate")
CSV_COLUMNS = ("pairing", "control", "family", "law", "mode", "c", "statistic", "value",
               "tolerance", "verdict", "expected", "correct")

_INPUT_ERRORS = (ParameterError, DomainError, RegistryError, PathEvaluationError, InstabilityError)


class SpecError(ValueError):
    pass


def _c_arg(text):
    if text == "auto":
        return text
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"c must be a number or 'auto', got {text!r}") from None


def _add_problem_args(p, need_law=True):
    fam = p.add_argument_group("family")
    fam.add_argument("--family", choices=FAMILIES, required=True)
    fam.add_argument("--discrete", action="store_true",
                     help="restrict the family's survival function to {0, 1, ...}")
    fam.add_argument("--rate", type=float, default=1.0)
    fam.add_argument("--alpha", type=float, default=1.0)
    fam.add_argument("--p", type=float, default=0.5)
    fam.add_argument("--eps", type=float, default=0.0)
    fam.add_argument("--phase", type=float, default=0.0)
    fam.add_argument("--beta", type=float, default=1.0)
    fam.add_argument("--family-k", type=int, default=1, help="k of the extended log-logistic family")
    fam.add_argument("--theta", type=float, default=0.5, help="geometric family: P(X >= j) = theta**j")
    law = p.add_argument_group("law")
    law.add_argument("--law", choices=LAWS, required=need_law)
    law.add_argument("--v", type=float, default=0.5)
    law.add_argument("--a", type=float, default=2.0)
    law.add_argument("--k", type=int, default=2)
    law.add_argument("--q", type=float, default=0.5)
    law.add_argument("--support", choices=("I0", "I1"), default="I1")
    p.add_argument("--mode", choices=("max", "min"), required=True)
    p.add_argument("--c", type=_c_arg, default="auto")


def _add_output_args(p):
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--output", default=None, help="write the report here instead of stdout")


def build_parser():
    parser = argparse.ArgumentParser(prog="nstab", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="residuals of one stability identity")
    _add_problem_args(v)
    v.add_argument("--tol", type=float, default=DEFAULT_TOL)
    v.add_argument("--grid-lo", type=float, default=1e-3)
    v.add_argument("--grid-hi", type=float, default=1e3)
    v.add_argument("--grid-n", type=int, default=200)
    v.add_argument("--j-max", type=int, default=200)
    v.add_argument("--no-arrays", action="store_true")
    _add_output_args(v)

    r = sub.add_parser("recover", help="generating function implied by (family, c, mode)")
    _add_problem_args(r, need_law=False)
    r.add_argument("--nmax", type=int, default=30)
    r.add_argument("--radius", type=float, default=None)
    r.add_argument("--match-tol", type=float, default=1e-8,
                   help="with --law, largest allowed |coefficient - pmf|")
    _add_output_args(r)

    m = sub.add_parser("mc", help="Kolmogorov-Smirnov test of simulated extremes")
    _add_problem_args(m)
    m.add_argument("--trials", type=int, default=100_000)
    m.add_argument("--seed", type=int, default=None, help=f"default: ${SEED_ENV} or 0")
    m.add_argument("--significance", type=float, default=0.01)
    _add_output_args(m)

    s = sub.add_parser("suite", help="every registered pairing plus negative controls")
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)
    s.add_argument("--positives-only", action="store_true")
    s.add_argument("--eps-sweep", action="store_true",
                   help="rerun periodic pairings at eps = 0, half and full bound and three phases")
    s.add_argument("--no-arrays", action="store_true")
    _add_output_args(s)
    return parser


def build_family(args):
    name = args.family
    if name == "geometric":
        return geometric_family(args.theta)
    if name == "exponential":
        family = Exponential(args.rate)
    elif name == "ext-log-logistic":
        if args.discrete:
            raise SpecError("the extended log-logistic family cannot be discretized")
        return ExtendedLogLogistic(args.alpha, args.family_k)
    else:
        hazard = PeriodicHazard(args.alpha, args.p, args.eps, args.phase)
        if name == "semi-weibull":
            family = SemiWeibull(hazard)
        elif name == "semi-pareto":
            family = SemiPareto(hazard)
        else:
            family = GeneralizedSemiPareto(hazard, args.beta)
    return DiscretizedFamily(family) if args.discrete else family


def build_law(args):
    if args.law is None:
        return None
    if args.law == "sibuya":
        return Sibuya(args.v)
    if args.law == "harris":
        return Harris(args.a, args.k)
    if args.law == "geometric":
        return Geometric(args.q, args.support)
    return Degenerate(args.k)


def resolve_c(args, family, law):
    if args.c != "auto":
        return args.c, "ad hoc"
    if law is None:
        raise SpecError("--c auto needs --law to identify the pairing")
    return infer_constant(family, law, args.mode)


def _spec_echo(args, argv, extra=None):
    spec = {k: v for k, v in sorted(vars(args).items()) if k not in ("output",)}
    spec["argv"] = list(argv)
    if extra:
        spec.update(extra)
    return spec


def _dump(report, fmt, rows):
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True, allow_nan=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n",
                                extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
        return buf.getvalue()
    return None


def _csv_row(rec, statistic, value):
    return {
        "pairing": rec.get("pairing"),
        "control": rec.get("control") or "",
        "family": rec.get("family"),
        "law": rec.get("law"),
        "mode": rec.get("mode"),
        "c": repr(rec.get("c")),
        "statistic": statistic,
        "value": repr(value),
        "tolerance": repr(rec.get("tolerance")),
        "verdict": rec.get("verdict"),
        "expected": rec.get("expected") or "",
        "correct": rec.get("correct"),
    }


def _cmd_verify(args, argv):
    family, law = build_family(args), build_law(args)
    c, tag = resolve_c(args, family, law)
    problem = StabilityProblem(family, law, args.mode, c)
    grid = GridSpec(args.grid_lo, args.grid_hi, args.grid_n, args.j_max)
    rep = verify_stability(problem, grid, args.tol, provenance=tag)
    rec = rep.to_dict(arrays=not args.no_arrays)
    report = {"version": REPORT_VERSION, "spec": _spec_echo(args, argv, {"c_resolved": c}),
              "results": [rec]}
    text = (
        f"pairing   {tag}\nfamily    {rep.family}\nlaw       {rep.law}\n"
        f"mode      {rep.mode.value}\nc         {c!r}\n"
        f"sup|res|  {rep.sup_residual:.3e}  (tol {args.tol:g})\n"
        f"verdict   {'pass' if rep.verdict else 'fail'}\n"
    )
    rows = [_csv_row(rec, "sup_residual", rep.sup_residual)]
    return rep.verdict, report, rows, text


def _cmd_recover(args, argv):
    family, law = build_family(args), build_law(args)
    c, tag = resolve_c(args, family, law)
    est = recover_pgf(family, c, args.mode, n_max=args.nmax, r=args.radius)
    n = np.arange(args.nmax + 1)
    ok = est.verdict.valid
    result = {
        "pairing": tag,
        "family": family.describe(),
        "law": law.describe() if law else None,
        "mode": args.mode,
        "c": c,
        "radius": est.radius,
        "recon_error": est.recon_error,
        "mass": est.mass,
        "verdict": str(est.verdict),
        "coeffs": est.coeffs.tolist(),
        "tolerances": est.tolerances,
    }
    lines = [f"pairing   {tag}", f"family    {family.describe()}", f"mode      {args.mode}",
             f"c         {c!r}", f"radius    {est.radius:.6g}",
             f"recon     {est.recon_error:.3e}", f"verdict   {est.verdict}", ""]
    if law is not None:
        pmf = law.pmf(n)
        diff = np.abs(est.coeffs - pmf)
        result["law_pmf"] = pmf.tolist()
        result["max_abs_diff"] = float(np.max(diff))
        ok = ok and result["max_abs_diff"] < args.match_tol
        lines.append(f"{'n':>4}  {'estimate':>22}  {'pmf':>22}  {'|diff|':>10}")
        lines += [f"{i:>4}  {a:>22.15e}  {b:>22.15e}  {d:>10.2e}"
                  for i, a, b, d in zip(n, est.coeffs, pmf, diff)]
        lines.append(f"max |diff| = {result['max_abs_diff']:.3e} (tol {args.match_tol:g})")
    else:
        lines.append(f"{'n':>4}  {'estimate':>22}")
        lines += [f"{i:>4}  {a:>22.15e}" for i, a in zip(n, est.coeffs)]
    result["correct"] = ok
    report = {"version": REPORT_VERSION, "spec": _spec_echo(args, argv, {"c_resolved": c}),
              "results": [result]}
    rows = [_csv_row({**result, "tolerance": est.tolerances["tol_recon"],
                      "verdict": "pass" if ok else "fail"}, "recon_error", est.recon_error)]
    return ok, report, rows, "\n".join(lines) + "\n"


def _cmd_mc(args, argv):
    family, law = build_family(args), build_law(args)
    c, tag = resolve_c(args, family, law)
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get(SEED_ENV, "0"))
    problem = StabilityProblem(family, law, args.mode, c)
    rep = mc_stability_test(problem, McConfig(args.trials, seed, args.significance))
    rec = {"pairing": tag, "family": family.describe(), "law": law.describe(),
           **rep.to_dict(), "verdict": "pass" if rep.passed else "fail",
           "tolerance": rep.ks_critical, "correct": rep.passed}
    report = {"version": REPORT_VERSION,
              "spec": _spec_echo(args, argv, {"c_resolved": c, "seed_resolved": seed}),
              "results": [rec]}
    text = (
        f"pairing   {tag}\nfamily    {family.describe()}\nlaw       {law.describe()}\n"
        f"mode      {args.mode}\nc         {c!r}\ntrials    {rep.trials}  seed {seed}\n"
        f"KS D      {rep.ks_stat:.5f}  (critical {rep.ks_critical:.5f} at {rep.significance:g})\n"
        f"verdict   {'pass' if rep.passed else 'fail'}\n"
    )
    return rep.passed, report, [_csv_row(rec, "ks_stat", rep.ks_stat)], text


def _cmd_suite(args, argv):
    kwargs = {}
    if args.eps_sweep:
        kwargs = {"eps_fractions": (0.0, 0.5, 1.0), "phases": full_cycle_phases()}
    reports = registry_suite(tol=args.tol, positives_only=args.positives_only, **kwargs)
    records = [r.to_dict(arrays=not args.no_arrays) for r in reports]
    ok = all(r.correct for r in reports)
    report = {"version": REPORT_VERSION, "spec": _spec_echo(args, argv), "results": records}
    rows = [_csv_row(rec, "sup_residual", rep.sup_residual) for rec, rep in zip(records, reports)]
    lines = [f"{'pairing':<38} {'control':<34} {'sup|res|':>10}  verdict  ok"]
    for rep in reports:
        lines.append(
            f"{rep.provenance:<38} {(rep.control or '-'):<34} {rep.sup_residual:>10.2e}  "
            f"{'pass' if rep.verdict else 'fail':<7}  {'yes' if rep.correct else 'NO'}"
        )
    n_pos = sum(1 for r in reports if r.expected)
    lines.append(f"{n_pos} positive cases, {len(reports) - n_pos} controls, "
                 f"{sum(not r.correct for r in reports)} unexpected outcomes")
    return ok, report, rows, "\n".join(lines) + "\n"


_COMMANDS = {"verify": _cmd_verify, "recover": _cmd_recover, "mc": _cmd_mc, "suite": _cmd_suite}


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        ok, report, rows, text = _COMMANDS[args.command](args, argv)
    except (SpecError, *_INPUT_ERRORS) as exc:
        print(f"nstab: error: {exc}", file=sys.stderr)
        return 2
    out = _dump(report, args.format, rows) if args.format != "text" else text
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
