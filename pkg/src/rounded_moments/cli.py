"""Command-line interface: ``rounded-moments {moments,sweep,estimate,mc}``.

Exit codes: 0 ok, 2 usage or data error, 3 numeric domain error,
4 invalid estimate.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import asdict

import numpy as np

from . import closed_forms as cf
from .distributions import DistributionSpec, Family
from .errors import CorrectionUnderflow, NotEnoughData, RoundedMomentsError
from .estimator import Validity, estimate_from_samples
from .monte_carlo import compare, iter_rounded
from .rounding import RoundingSpec, oracle_moments
from .series import averaged_moments, chi_and_M, normal_tail_bounds, rounded_moments

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_INVALID = 4

SWEEP_COLUMNS = ("sigma", "chi", "s2_series", "s2_closed", "s2_oracle",
                 "remainder", "avg_s2", "avg_remainder")
BUILTIN_FAMILIES = [f.value for f in Family if f is not Family.CUSTOM]


class UsageError(Exception):
    pass


def _fmt(x):
    return "" if x is None else "%.17g" % x


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if hasattr(obj, "value") and isinstance(obj, str):
        return obj.value
    return obj


def _dump(payload, out):
    out.write(json.dumps(_jsonable(payload), indent=2) + "\n")


# -- moments -----------------------------------------------------------------

def closed_moments(spec, r):
    """``(m, s2, S0, S1, bound)`` from the family's closed form.

    ``bound`` limits the truncation error in ``s2`` for the normal family and
    is zero for the exact Laplace and uniform forms.
    """
    w = r.w
    sw = spec.scaled(w)
    chi, M = chi_and_M(sw.mu, r.delta)
    if sw.sigma == 0.0:
        S0, S1, s2, bound = -chi, 1.0 / 12.0 - chi * chi, 0.0, 0.0
    elif spec.family is Family.LAPLACE:
        S0, S1, s2 = cf.laplace_exact(sw.sigma, chi)
        bound = 0.0
    elif spec.family is Family.UNIFORM:
        S0, S1, s2 = cf.uniform_exact(cf.uniform_geometry(sw.mu, sw.sigma, r.delta), sw.sigma)
        bound = 0.0
    elif spec.family is Family.NORMAL:
        S0, S1, s2, _, _ = cf.normal_exact(sw.sigma, chi)
        t0, t1 = normal_tail_bounds(sw.sigma, cf.normal_terms(sw.sigma))
        bound = t1 + t0 * (2.0 * abs(S0) + t0)
    else:
        raise UsageError(f"no closed form for family {spec.family.value!r}")
    m = spec.mu - r.delta * w + w * S0
    return m, max(s2, 0.0) * w * w, S0, S1, bound * w * w


def cmd_moments(args, out):
    spec = DistributionSpec(args.family, args.mu, args.sigma)
    r = RoundingSpec(args.w, args.delta)
    extra = {}
    if args.method == "series":
        res = rounded_moments(spec, r, K=args.K)
        m, s2, S0, S1, tail = res.m, res.s2, res.S0, res.S1, res.tail_bound
    elif args.method == "closed":
        m, s2, S0, S1, tail = closed_moments(spec, r)
    elif args.method == "oracle":
        res = oracle_moments(spec, r, tol=args.tol)
        m, s2, tail = res.m, res.s2, res.tail_bound
        S0 = m / r.w - (spec.mu / r.w - r.delta)
        S1 = (spec.sigma / r.w) ** 2 + 1.0 / 12.0 - s2 / r.w ** 2 - S0 * S0
    else:
        rep = compare(spec, r, args.n, args.seed)
        m, s2, S0, S1, tail = rep.sample_m, rep.sample_s2, None, None, None
        extra = {"n": rep.n_samples, "seed": rep.seed, "z_mean": rep.z_mean, "z_var": rep.z_var,
                 "predicted_m": rep.predicted.m, "predicted_s2": rep.predicted.s2}
    chi, M = chi_and_M(spec.mu / r.w, r.delta)
    payload = {
        "family": spec.family.value, "mu": spec.mu, "sigma": spec.sigma,
        "w": r.w, "delta": r.delta, "method": args.method,
        "chi": chi, "M": M,
        "m": m, "s2": s2, "S0": S0, "S1": S1, "tail_bound": tail,
        **extra,
    }
    if args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        keys = list(payload)
        writer.writerow(keys)
        writer.writerow([_fmt(v) if isinstance(v, float) else ("" if v is None else v)
                         for v in payload.values()])
    else:
        _dump(payload, out)
    return EXIT_OK


# -- sweep -------------------------------------------------------------------

def _sigma_grid(args):
    if args.sigmas:
        return [float(s) for s in args.sigmas]
    if args.sigma_min is None or args.sigma_max is None or args.sigma_step is None:
        raise UsageError("give --sigmas or all of --sigma-min/--sigma-max/--sigma-step")
    if not args.sigma_step > 0 or args.sigma_max < args.sigma_min:
        raise UsageError("sigma range must be increasing with a positive step")
    count = int(round((args.sigma_max - args.sigma_min) / args.sigma_step)) + 1
    return [args.sigma_min + i * args.sigma_step for i in range(count)]


def _avg_s2(spec, r, methods):
    sw = spec.scaled(r.w)
    if "closed" in methods and sw.sigma > 0:
        if spec.family is Family.LAPLACE:
            return cf.laplace_avg_variance(sw.sigma) * r.w ** 2
        if spec.family is Family.UNIFORM:
            exact, _ = cf.uniform_avg_S0sq(sw.sigma)
            return (sw.sigma ** 2 + 1.0 / 12.0 - exact) * r.w ** 2
    return averaged_moments(spec, r).avg_s2


def sweep_rows(family, sigmas, r, chi=None, average=False, methods=("series",)):
    """Yield one dict per sigma with the :data:`SWEEP_COLUMNS` keys."""
    pointwise = chi is not None or not average
    if pointwise and chi is None:
        chi = 0.0
    for sigma in sigmas:
        row = dict.fromkeys(SWEEP_COLUMNS)
        row["sigma"] = sigma
        base = sigma * sigma + r.w * r.w / 12.0
        if pointwise:
            spec = DistributionSpec(family, (chi + r.delta) * r.w, sigma)
            row["chi"] = chi
            if "series" in methods:
                row["s2_series"] = rounded_moments(spec, r).s2
            if "closed" in methods:
                row["s2_closed"] = closed_moments(spec, r)[1]
            if "oracle" in methods:
                row["s2_oracle"] = oracle_moments(spec, r).s2
            for key in ("s2_series", "s2_closed", "s2_oracle"):
                if row[key] is not None:
                    row["remainder"] = row[key] - base
                    break
        if average:
            spec = DistributionSpec(family, 0.0, sigma)
            row["avg_s2"] = _avg_s2(spec, r, methods)
            row["avg_remainder"] = row["avg_s2"] - base
        yield row


def cmd_sweep(args, out):
    methods = tuple(m.strip() for m in args.methods.split(",") if m.strip())
    bad = set(methods) - {"series", "closed", "oracle"}
    if bad:
        raise UsageError(f"unknown method(s): {', '.join(sorted(bad))}")
    r = RoundingSpec(args.w, args.delta)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for row in sweep_rows(args.family, _sigma_grid(args), r, args.chi, args.average, methods):
        writer.writerow([_fmt(row[c]) for c in SWEEP_COLUMNS])
    return EXIT_OK


# -- estimate ----------------------------------------------------------------

def read_values(path, w, values="index"):
    """Read one value per line; ``#`` starts a comment.  Returns int64 indices."""
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            try:
                v = float(text)
            except ValueError:
                raise UsageError(f"{path}:{lineno}: not a number: {text!r}") from None
            out.append(v / w if values == "physical" else v)
    arr = np.asarray(out, dtype=float)
    idx = np.rint(arr)
    if not np.allclose(arr, idx, rtol=0.0, atol=1e-6):
        raise UsageError(f"{path}: values are not integer multiples of the unit")
    return idx.astype(np.int64)


def cmd_estimate(args, out):
    r = RoundingSpec(args.w, args.delta)
    try:
        data = read_values(args.file, r.w, args.values)
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc}") from None
    try:
        rep = estimate_from_samples(data, r, args.family)
    except NotEnoughData as exc:
        raise UsageError(str(exc)) from None
    except CorrectionUnderflow as exc:
        payload = asdict(exc.report)
        payload["error"] = "CorrectionUnderflow"
        payload["message"] = str(exc)
        _dump(payload, out)
        return EXIT_INVALID
    _dump(asdict(rep), out)
    return EXIT_INVALID if rep.validity is Validity.INVALID else EXIT_OK


# -- mc ----------------------------------------------------------------------

def cmd_mc(args, out):
    spec = DistributionSpec(args.family, args.mu, args.sigma)
    r = RoundingSpec(args.w, args.delta)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(f"# family={spec.family.value} mu={spec.mu!r} sigma={spec.sigma!r} "
                     f"w={r.w!r} delta={r.delta!r} n={args.n} seed={args.seed}\n")
            for chunk in iter_rounded(spec, r, args.n, args.seed):
                np.savetxt(fh, chunk, fmt="%d")
    rep = compare(spec, r, args.n, args.seed)
    payload = asdict(rep)
    payload["family"] = spec.family.value
    payload["output"] = args.output
    _dump(payload, out)
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def _add_dist_args(p, sigma_required=True):
    p.add_argument("--family", choices=BUILTIN_FAMILIES, default="normal")
    p.add_argument("--mu", type=float, default=0.0)
    if sigma_required:
        p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--w", type=float, default=1.0, help="rounding unit")
    p.add_argument("--delta", type=float, default=0.0, help="rounding offset in [-1/2, 1/2]")


def build_parser():
    parser = argparse.ArgumentParser(prog="rounded-moments",
                                     description="Moments of rounded random variables.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moments", help="mean and variance of the rounded variable")
    _add_dist_args(p)
    p.add_argument("--method", choices=["series", "closed", "oracle", "mc"], default="series")
    p.add_argument("--K", type=int, default=None, help="fixed series truncation")
    p.add_argument("--tol", type=float, default=1e-12, help="oracle tail tolerance")
    p.add_argument("--n", type=int, default=1_000_000, help="Monte Carlo sample size")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("sweep", help="CSV table over a sigma grid")
    p.add_argument("--family", choices=BUILTIN_FAMILIES, default="normal")
    p.add_argument("--w", type=float, default=1.0)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--sigmas", type=float, nargs="+")
    p.add_argument("--sigma-min", type=float)
    p.add_argument("--sigma-max", type=float)
    p.add_argument("--sigma-step", type=float)
    p.add_argument("--chi", type=float, default=None, help="offset of the mean (units of w)")
    p.add_argument("--average", action="store_true", help="add chi-averaged columns")
    p.add_argument("--methods", default="series", help="comma list of series,closed,oracle")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("estimate", help="Sheppard-corrected sigma from a data file")
    p.add_argument("file")
    p.add_argument("--family", choices=BUILTIN_FAMILIES, default="normal")
    p.add_argument("--w", type=float, default=1.0)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--values", choices=["index", "physical"], default="index")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("mc", help="Monte Carlo check; optionally write the samples")
    _add_dist_args(p)
    p.add_argument("--n", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default=None, help="write rounded integers, one per line")
    p.set_defaults(func=cmd_mc)
    return parser


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RoundedMomentsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    raise SystemExit(main())
