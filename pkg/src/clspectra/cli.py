"""``clspectra`` command-line front end.

Exit codes: 0 on success, 2 when an input violates a contract (a JSON error
object is written to stderr), 64 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from clspectra import __version__, reproduce
from clspectra.assumptions import check_assumptions
from clspectra.degree_models import (
    ExponentialParams,
    closed_form_params,
    lambda_closed_form,
    lambda_estimates,
    load_custom,
    make_constant,
    make_exponential,
    make_power_law,
)
from clspectra.distribution_analysis import kurtosis_analysis, largest_eigenvalue_prediction
from clspectra.empirical_spectra import (
    eigenvalues,
    histogram,
    moment_bounds_on_lambda,
    moments_dense,
    moments_eigen_sum,
    moments_hutchinson,
)
from clspectra.errors import ContractError
from clspectra.graph_sampler import MatrixKind, sample
from clspectra.io import dumps, metadata, read_edges, read_json, read_sequence, write_csv, write_edges
from clspectra.moment_engine import enumerate_Rs, limiting_moments, rescale_moments

EXIT_CONTRACT = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(args, payload) -> None:
    text = dumps(payload)
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _config(args) -> dict:
    skip = {"func", "out", "config"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _meta(args, seed=None, normalization=None) -> dict:
    return metadata(_config(args), seed, normalization)


# ---------------------------------------------------------------- commands


def cmd_degseq(args):
    m = args.model
    if m == "constant":
        ds = make_constant(args.n, args.p)
    elif m == "exponential":
        sampling = "quantile_grid" if args.grid else "uniform_random"
        ds = make_exponential(args.n, ExponentialParams(args.delta, args.alpha, sampling), args.seed)
    elif m == "powerlaw":
        ds = make_power_law(args.n, args.beta, args.delta, args.davg)
    else:
        if not args.path:
            raise UsageError("--model file needs --path")
        ds = load_custom(args.path)
    _emit(args, {**ds.to_dict(), "meta": _meta(args, args.seed)})


def _model_spec(args) -> dict:
    if args.model == "constant":
        return {"model": "constant", "p": args.p}
    if args.model == "exponential":
        return {"model": "exponential", "Delta_n": args.delta, "alpha": args.alpha, "sampling": "quantile_grid"}
    if args.model == "powerlaw":
        return {"model": "power_law", "beta": args.beta, "Delta": args.delta, "d": args.davg}
    raise ContractError("trend diagnostics require a parametric model")


def cmd_assume(args):
    ladder = [int(x) for x in args.ladder.split(",")]
    diag = check_assumptions(_model_spec(args), ladder, args.kmax)
    _emit(args, {**diag.to_dict(), "meta": _meta(args)})


def cmd_sample(args):
    ds = read_sequence(args.seq)
    smp = sample(ds, args.seed)
    if args.out:
        write_edges(smp, args.out)
    else:
        write_edges(smp, "/dev/stdout")


def _load_graph(args):
    return read_edges(args.graph, read_sequence(args.seq))


def cmd_moments_empirical(args):
    smp = _load_graph(args)
    kind = MatrixKind(args.kind)
    if args.method == "dense":
        rep = moments_dense(smp, args.kmax, kind)
    elif args.method == "eig":
        rep = moments_eigen_sum(smp, args.kmax, kind)
    else:
        rep = moments_hutchinson(smp, args.kmax, args.probes, args.seed, kind)
    _emit(args, {**rep.to_dict(), "meta": _meta(args, smp.seed, kind.value)})


def cmd_moments_theory(args):
    ds = read_sequence(args.seq)
    s_max = args.kmax // 2
    if args.lambda_ == "finite":
        lam = lambda_estimates(ds, max(s_max, 1))
        source = "finite_n_estimate"
    else:
        params = closed_form_params(ds)
        lam = np.array([lambda_closed_form(params, k) for k in range(1, max(s_max, 1) + 1)])
        source = "closed_form"
    th = limiting_moments(lam, args.kmax, lambda_source=source, model=ds.model)
    kind = MatrixKind(args.kind)
    moments = th.moments if kind.normalized else rescale_moments(th.moments, 1 / np.sqrt(ds.n * ds.rho))
    payload = {**th.to_dict(), "moments": moments.tolist(), "lambdas": lam.tolist(), "matrix_kind": kind.value}
    _emit(args, {**payload, "meta": _meta(args, None, kind.value)})


def cmd_spectrum(args):
    smp = _load_graph(args)
    eigs = eigenvalues(smp, args.kind)
    binning = int(args.hist) if args.hist.isdigit() else args.hist
    hist = histogram(eigs, binning)
    out = args.out or "/dev/stdout"
    write_csv(out, ["bin_lo", "bin_hi", "count"], hist.rows())


def cmd_bounds(args):
    smp = _load_graph(args)
    kind = MatrixKind(args.kind)
    rep = moments_dense(smp, args.k, kind)
    m_k = rep.m(args.k)
    lower, upper = moment_bounds_on_lambda(m_k, args.k, smp.n)
    eigs = eigenvalues(smp, kind)
    payload = {
        "k": args.k,
        "m_k": m_k,
        "lower": lower,
        "upper": upper,
        "lambda_max": float(eigs[-1]),
        "max_abs_lambda": float(np.abs(eigs).max()),
        "matrix_kind": kind.value,
    }
    _emit(args, {**payload, "meta": _meta(args, smp.seed, kind.value)})


def cmd_analyze_triangle(args):
    data = read_json(args.moments)
    m = data["moments"]
    if len(m) < 4:
        raise ContractError("triangle analysis needs moments up to order 4")
    fit = kurtosis_analysis(m[1], m[3], m[5] if len(m) >= 6 else None)
    payload = {
        "kappa": fit.kappa_graph,
        "kappa_triangle": fit.kappa_triangle,
        "verdict": fit.verdict,
        "b_match": fit.b_match,
        "m6_graph": fit.m6_graph,
        "m6_triangle": fit.m6_triangle,
    }
    _emit(args, {**payload, "meta": _meta(args, None, data.get("matrix_kind"))})


def cmd_analyze_lambda1(args):
    import warnings

    ds = read_sequence(args.seq)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        pred = largest_eigenvalue_prediction(ds)
    payload = dict(vars(pred))
    payload["warnings"] = [str(w.message) for w in caught]
    _emit(args, {**payload, "meta": _meta(args, None, "unnormalized")})


def cmd_rset(args):
    rows = [(*t.r, t.tree_count) for t in enumerate_Rs(args.s)]
    header = [f"r{j}" for j in range(1, args.s + 1)] + ["tree_count"]
    write_csv(args.out or "/dev/stdout", header, rows)


def _outdir(args) -> Path:
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_reproduce(args):
    out = _outdir(args)
    if args.target == "table1":
        res = reproduce.table1(args.seed)
        norm = "centralized"
        rows = zip(res["orders"], res["theoretical"], res["empirical"], res["relative_error"])
        write_csv(out / "table1.csv", ["order", "theoretical", "empirical", "relative_error"], rows)
    elif args.target == "semicircle":
        res = reproduce.semicircle(args.n or 2000, args.p, args.seed, args.samples or 10)
        norm = "centralized"
    else:
        res = reproduce.exponential_bounds(args.n or 1000, args.delta, args.alpha, args.k, args.seed, args.samples or 20)
        norm = "centralized_unnormalized"
    payload = {**res, "meta": _meta(args, args.seed, norm)}
    (out / f"{args.target}.json").write_text(dumps(payload), encoding="utf-8")
    sys.stdout.write(dumps({k: v for k, v in payload.items() if k != "per_seed"}))


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output path (stdout when omitted)")
    common.add_argument("--config", help="JSON file whose keys override command-line flags")

    p = _Parser(prog="clspectra", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"clspectra {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser, required=True)

    def add(name, func, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(func=func)
        return sp

    def model_flags(sp, expr=False):
        typ = str if expr else float
        sp.add_argument("--n", type=int, default=1000)
        sp.add_argument("--p", type=typ, default=0.01)
        sp.add_argument("--alpha", type=typ, default=1.0)
        sp.add_argument("--delta", type=typ, default=10.0)
        sp.add_argument("--beta", type=typ, default=3.0)
        sp.add_argument("--davg", type=typ, default=10.0)

    sp = add("degseq", cmd_degseq, help="build an expected degree sequence")
    sp.add_argument("--model", choices=["constant", "exponential", "powerlaw", "file"], required=True)
    model_flags(sp)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--grid", action="store_true", help="deterministic quantile grid for exponential degrees")
    sp.add_argument("--path", help="degree file for --model file")

    sp = add("assume", cmd_assume, help="finite-n assumption diagnostics over a size ladder")
    sp.add_argument("--model", choices=["constant", "exponential", "powerlaw", "file"], required=True)
    model_flags(sp, expr=True)
    sp.add_argument("--ladder", default="1000,10000,100000")
    sp.add_argument("--kmax", type=int, default=8)

    sp = add("sample", cmd_sample, help="draw one Chung-Lu graph")
    sp.add_argument("--seq", required=True)
    sp.add_argument("--seed", type=int, required=True)

    sp = sub.add_parser("moments", help="empirical or theoretical spectral moments")
    msub = sp.add_subparsers(dest="moments_command", parser_class=_Parser, required=True)
    kinds = [k.value for k in MatrixKind]

    sp = msub.add_parser("empirical", parents=[common])
    sp.set_defaults(func=cmd_moments_empirical)
    sp.add_argument("--graph", required=True)
    sp.add_argument("--seq", required=True)
    sp.add_argument("--kmax", type=int, default=20)
    sp.add_argument("--kind", choices=kinds, default="centralized")
    sp.add_argument("--method", choices=["dense", "eig", "hutch"], default="dense")
    sp.add_argument("--probes", type=int, default=64)
    sp.add_argument("--seed", type=int, default=0)

    sp = msub.add_parser("theory", parents=[common])
    sp.set_defaults(func=cmd_moments_theory)
    sp.add_argument("--seq", required=True)
    sp.add_argument("--kmax", type=int, default=20)
    sp.add_argument("--lambda", dest="lambda_", choices=["finite", "closed"], default="finite")
    sp.add_argument("--kind", choices=kinds, default="normalized")

    sp = add("spectrum", cmd_spectrum, help="eigenvalue histogram as CSV")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--seq", required=True)
    sp.add_argument("--kind", choices=kinds, default="centralized")
    sp.add_argument("--hist", default="fd", help="numpy binning rule or a bin count")

    sp = add("bounds", cmd_bounds, help="moment bounds on the top eigenvalue")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--seq", required=True)
    sp.add_argument("--k", type=int, default=20)
    sp.add_argument("--kind", choices=kinds, default="centralized")

    sp = sub.add_parser("analyze", help="triangle-law or largest-eigenvalue analysis")
    asub = sp.add_subparsers(dest="analyze_command", parser_class=_Parser, required=True)
    sp = asub.add_parser("triangle", parents=[common])
    sp.set_defaults(func=cmd_analyze_triangle)
    sp.add_argument("--moments", required=True)
    sp = asub.add_parser("lambda1", parents=[common])
    sp.set_defaults(func=cmd_analyze_lambda1)
    sp.add_argument("--seq", required=True)

    sp = add("rset", cmd_rset, help="tree degree distributions with their counts")
    sp.add_argument("--s", type=int, required=True)

    sp = add("reproduce", cmd_reproduce, help="end-to-end experiments")
    sp.add_argument("target", choices=["table1", "semicircle", "exponential-bounds"])
    sp.add_argument("--seed", type=int, default=7)
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--p", type=float, default=0.01)
    sp.add_argument("--delta", type=float, default=10.0)
    sp.add_argument("--alpha", type=float, default=1.0)
    sp.add_argument("--k", type=int, default=20)
    sp.add_argument("--samples", type=int, default=None)
    return p


def _apply_config(parser, args):
    if not getattr(args, "config", None):
        return args
    try:
        overrides = read_json(args.config)
    except (OSError, json.JSONDecodeError) as exc:
        parser.error(f"cannot read config {args.config}: {exc}")
    if not isinstance(overrides, dict):
        parser.error("config file must hold a JSON object")
    for key, value in overrides.items():
        dest = key.replace("-", "_")
        if dest == "lambda":
            dest = "lambda_"
        if not hasattr(args, dest) or dest in ("func", "config"):
            parser.error(f"unknown config key {key!r}")
        setattr(args, dest, value)
    return args


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args = _apply_config(parser, args)
        args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"clspectra: error: {exc}\n")
        return EXIT_USAGE
    except ContractError as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return EXIT_CONTRACT
    return 0


if __name__ == "__main__":
    sys.exit(main())
