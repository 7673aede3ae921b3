"""Command-line entry point: every experiment as a subcommand writing CSV or JSON.

Exit codes: 0 success, 2 usage, 3 numerical precondition, 4 convergence flag
(the report is still written).
"""
from __future__ import annotations

import os

_THREADS = os.environ.get("SYMHARM_THREADS")
if _THREADS:
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ.setdefault(_var, _THREADS)

import argparse
import datetime as _dt
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import io as sio
from .spaces import ADMISSIBLE, KINDS, all_reference_spaces, space_params

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_CONVERGENCE = 0, 2, 3, 4


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    space: str | None = None
    d: int | None = None
    M: int | None = None
    N: int | None = None
    delta: Fraction | float | None = None
    gamma: float | None = None
    times: list = field(default_factory=list)
    grid: int | None = None
    seed: int = 0
    out: str | None = None
    format: str = "json"
    extra: dict = field(default_factory=dict)


# ---------------------------------------------------------------- parsing

def _admissible_help():
    return "; ".join(f"{k}: {v}" for k, v in ADMISSIBLE.items())


def _space_args(sp):
    sp.add_argument("--space", required=True, choices=KINDS)
    sp.add_argument("--d", type=int, required=True, help=f"dimension ({_admissible_help()})")


def _out_args(sp, fmt="json"):
    sp.add_argument("--out", default=None, help="output path (stdout if omitted)")
    sp.add_argument("--format", choices=("csv", "json"), default=fmt)


def _parse_delta(text):
    if text == "auto":
        return "auto"
    try:
        return Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"delta must be a number or 'auto', got {text!r}")


def _parse_p(text):
    if text in ("inf", "infinity"):
        return float("inf")
    v = float(text)
    if v < 1:
        raise argparse.ArgumentTypeError("p must lie in [1, inf]")
    return v


def _parse_data(text):
    """cusp:gamma:theta0 | ball:theta0 | weierstrass:gamma."""
    parts = text.split(":")
    try:
        if parts[0] == "cusp" and len(parts) == 3:
            return {"kind": "cusp", "gamma": float(parts[1]), "theta0": float(parts[2])}
        if parts[0] == "ball" and len(parts) == 2:
            return {"kind": "ball", "gamma": 0.5, "theta0": float(parts[1])}
        if parts[0] == "weierstrass" and len(parts) == 2:
            return {"kind": "weierstrass", "gamma": float(parts[1]), "theta0": 1.0}
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(
        f"bad data spec {text!r}; use cusp:GAMMA:THETA0, ball:THETA0 or weierstrass:GAMMA")


def build_parser():
    ap = argparse.ArgumentParser(prog="symharm", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="subcommand", required=True)

    sp = sub.add_parser("spaces", help="list the space catalog")
    sp.add_argument("action", choices=("list",))
    _out_args(sp)

    sp = sub.add_parser("zonal", help="sample Z_n on a uniform grid")
    _space_args(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--grid", type=int, default=512)
    _out_args(sp, "csv")

    for name, what in (("cesaro", "Cesaro"), ("riesz", "Riesz")):
        sp = sub.add_parser(name, help=f"{what} sup-error rate report")
        _space_args(sp)
        sp.add_argument("--delta", type=_parse_delta, default="auto")
        sp.add_argument("--N", type=int, default=512, help="largest N; the sequence runs from 16 in half-octave steps")
        sp.add_argument("--data", type=_parse_data, default=_parse_data("cusp:0.5:1.0"))
        sp.add_argument("--grid", type=int, default=8192)
        _out_args(sp)

    sp = sub.add_parser("besov", help="Besov norm and Hoelder exponent of lacunary data")
    _space_args(sp)
    sp.add_argument("--gamma", type=float, default=0.5)
    sp.add_argument("--modes", type=int, default=1024)
    sp.add_argument("--grid", type=int, default=8192)
    _out_args(sp)

    sp = sub.add_parser("oscillatory", help="one-term expansion residuals and bound constants")
    _space_args(sp)
    sp.add_argument("--region", choices=("origin", "cutlocus"), default="origin")
    sp.add_argument("--n-max", type=int, default=512)
    sp.add_argument("--grid", type=int, default=2048)
    sp.add_argument("--dump-n", type=int, default=None, help="write the amplitude pair of this n as CSV")
    _out_args(sp)

    sp = sub.add_parser("weyl", help="Weyl-sum probe and block-kernel bound constants")
    _space_args(sp)
    sp.add_argument("--time", default="golden")
    sp.add_argument("--N-max", type=int, default=1024)
    sp.add_argument("--kernel-N-max", type=int, default=128)
    _out_args(sp)

    sp = sub.add_parser("talbot", help="Schroedinger evolution pipeline")
    _space_args(sp)
    sp.add_argument("--s", type=float, default=0.5)
    sp.add_argument("--p", type=_parse_p, default=float("inf"))
    sp.add_argument("--modes", type=int, default=1024)
    sp.add_argument("--time", action="append", default=None,
                    help="golden | random[:seed] | P/Q (t = 2 pi P/Q) | real t; repeatable")
    sp.add_argument("--random-times", type=int, default=0, help="add this many random times")
    sp.add_argument("--data", choices=("besov", "ball"), default="besov")
    sp.add_argument("--theta0", type=float, default=1.0)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--grid", type=int, default=8192)
    sp.add_argument("--no-convergence", action="store_true")
    _out_args(sp)

    sp = sub.add_parser("dim", help="box-count a CSV profile")
    sp.add_argument("--input", required=True)
    sp.add_argument("--floor", type=float, default=None, help="smallest epsilon (default 4 sample spacings)")
    _out_args(sp)
    return ap


def parse_args(argv) -> RunConfig:
    """argv -> RunConfig; raises UsageError with a message on invalid input."""
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        raise UsageError("invalid arguments") from exc
    cfg = RunConfig(ns.subcommand, out=ns.out, format=ns.format)
    if hasattr(ns, "space"):
        cfg.space, cfg.d = ns.space, ns.d
        try:
            p = space_params(ns.space, ns.d)
        except ValueError as exc:
            raise UsageError(f"{exc}; admissible: {_admissible_help()}")
    cmd = ns.subcommand
    if cmd == "zonal":
        if ns.n < 0 or ns.grid < 2:
            raise UsageError("--n must be >= 0 and --grid >= 2")
        cfg.N, cfg.grid = ns.n, ns.grid
    elif cmd in ("cesaro", "riesz"):
        cfg.delta = p.delta_star if ns.delta == "auto" else ns.delta
        if cfg.delta < 0:
            raise UsageError("--delta must be >= 0")
        if ns.N < 64:
            raise UsageError("--N must be >= 64 (the fit needs >= 4 levels after dropping two)")
        cfg.N, cfg.grid = ns.N, ns.grid
        cfg.gamma = ns.data["gamma"]
        cfg.extra["data"] = ns.data
    elif cmd == "besov":
        if ns.modes < 16 or ns.modes & (ns.modes - 1):
            raise UsageError("--modes must be a power of two >= 16")
        if not 0 < ns.gamma < 1:
            raise UsageError("--gamma must lie in (0, 1)")
        cfg.M, cfg.gamma, cfg.grid = ns.modes, ns.gamma, ns.grid
    elif cmd == "oscillatory":
        if ns.region == "cutlocus" and p.s != 1:
            raise UsageError("cut-locus expansion covers s = 1 kinds only")
        if ns.n_max < 128:
            raise UsageError("--n-max must be >= 128")
        cfg.N, cfg.grid = ns.n_max, ns.grid
        cfg.extra.update(region=ns.region, dump_n=ns.dump_n)
    elif cmd == "weyl":
        from .schrodinger import TimeSpec
        try:
            cfg.times = [TimeSpec.parse(ns.time)]
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad --time: {exc}")
        if ns.N_max < 128 or ns.kernel_N_max < 64:
            raise UsageError("--N-max must be >= 128 and --kernel-N-max >= 64")
        cfg.N = ns.N_max
        cfg.extra["kernel_N_max"] = ns.kernel_N_max
    elif cmd == "talbot":
        from .schrodinger import TimeSpec
        if ns.modes < 16 or ns.modes & (ns.modes - 1):
            raise UsageError("--modes must be a power of two >= 16")
        if ns.s < 0:
            raise UsageError("--s must be >= 0")
        try:
            times = [TimeSpec.parse(t, ns.seed) for t in (ns.time or [])]
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad --time: {exc}")
        times += [TimeSpec("random", seed=ns.seed * 1000 + k) for k in range(ns.random_times)]
        if not times:
            times = [TimeSpec("golden")]
        cfg.times, cfg.M, cfg.seed, cfg.grid = times, ns.modes, ns.seed, ns.grid
        cfg.extra.update(s=ns.s, p=ns.p, data=ns.data, theta0=ns.theta0,
                         convergence=not ns.no_convergence)
    elif cmd == "dim":
        if not os.path.isfile(ns.input):
            raise UsageError(f"--input {ns.input!r} is not a readable file")
        cfg.extra.update(input=ns.input, floor=ns.floor)
    return cfg


# ---------------------------------------------------------------- commands

def _stamp(report):
    report["generated_at"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    return report


def _run_spaces(cfg):
    rows = [p.to_json() for p in all_reference_spaces()]
    return rows, None, True


def _run_zonal(cfg):
    from .spectral import uniform_grid, zonal_eval
    p = space_params(cfg.space, cfg.d)
    th = uniform_grid(cfg.grid)
    vals = zonal_eval(p, cfg.N, th)
    if cfg.format == "csv":
        return None, sio.profile_csv(th, vals), True
    return {"command": "zonal", "space": p.kind, "d": p.d, "n": cfg.N,
            "thetas": th, "values": vals}, None, True


def half_octaves(top, start=16):
    """start, start*sqrt2, ... rounded to integers, ending exactly at top."""
    k = int(np.floor(2 * np.log2(top / start) + 1e-9))
    return sorted({int(round(start * 2 ** (j / 2))) for j in range(k + 1)} | {int(top)})


def _make_data(p, spec, M, G):
    from .regularity import make_test_profile
    return make_test_profile(p, spec["kind"], spec["gamma"], spec["theta0"], M, G=G)


def _run_rate(cfg):
    from .regularity import cesaro_errors, rate_fit, riesz_errors, riesz_radii
    p = space_params(cfg.space, cfg.d)
    Ns = half_octaves(cfg.N)
    spec = cfg.extra["data"]
    M = max(Ns) if spec["kind"] != "weierstrass" else 2 * max(Ns)
    data = _make_data(p, spec, M, cfg.grid)
    if cfg.subcommand == "cesaro":
        xs, ys = Ns, cesaro_errors(data, cfg.delta, Ns, cfg.grid)
        quantity = "sup |C^delta_N f - f|"
    else:
        xs = riesz_radii(p, Ns)
        ys = riesz_errors(data, cfg.delta, xs, cfg.grid)
        quantity = "sup |S^delta_R f - f|"
    fit = rate_fit(xs, ys)
    ok = fit.r2 >= 0.95
    if cfg.format == "csv":
        head = "N" if cfg.subcommand == "cesaro" else "R"
        return None, sio._rows_to_csv((head, "sup_error"), zip(xs, ys)), ok
    report = {"command": cfg.subcommand, "space": p.kind, "d": p.d, "delta": str(cfg.delta),
              "data": spec, "fit": fit.to_json(quantity, xs, ys),
              "fit_excludes": "two smallest abscissae", "expected_slope": -spec["gamma"],
              "converged": ok}
    return report, None, ok


def _run_besov(cfg):
    from .regularity import default_scales, holder_exponent, make_test_profile
    from .spectral import besov_norm, block_norms
    p = space_params(cfg.space, cfg.d)
    data = make_test_profile(p, "weierstrass", cfg.gamma, M=cfg.M, G=cfg.grid)
    fit = holder_exponent(data.profile, default_scales(cfg.grid, cfg.M))
    norms = block_norms(data.coeffs, np.inf, cfg.grid)
    report = {"command": "besov", "space": p.kind, "d": p.d, "gamma": cfg.gamma, "M": cfg.M,
              "besov_norm": besov_norm(data.coeffs, cfg.gamma, np.inf, cfg.grid),
              "besov_norm_plus_0.2": besov_norm(data.coeffs, cfg.gamma + 0.2, np.inf, cfg.grid),
              "block_norms": {str(N): v for N, v in norms.items()},
              "holder_fit": fit.to_json("modulus of continuity"),
              "holder_exponent": fit.slope}
    if cfg.format == "csv":
        return None, sio._rows_to_csv(("N", "block_sup_norm"), ((str(N), v) for N, v in norms.items())), True
    return report, None, True


def _run_oscillatory(cfg):
    from . import oscillatory as osc
    from .regularity import decay_fit
    p = space_params(cfg.space, cfg.d)
    region = cfg.extra["region"]
    th = osc.region_grid(p, region, cfg.grid)
    if cfg.extra["dump_n"] is not None:
        amp = osc.amplitudes(p, cfg.extra["dump_n"], th, region)
        return None, sio.amplitude_csv(amp), True
    ns = [16 * 2**k for k in range(int(np.log2(cfg.N // 16)) + 1)]
    table = osc.residual_table(p, ns, region, cfg.grid)
    if cfg.format == "csv":
        return None, sio.residual_csv(table), True
    fit = decay_fit(*zip(*table))
    amp_ns = [8] + ns
    amp_c = [osc.amplitude_constant(p, n, th, region) for n in amp_ns]
    report = {"command": "oscillatory", "space": p.kind, "d": p.d, "region": region,
              "residuals": [{"n": n, "sup_residual": r} for n, r in table],
              "residual_fit": fit.to_json("sup residual", *zip(*table)),
              "expected_exponent": osc.residual_exponent(p, region),
              "amplitude_constants": {str(n): c for n, c in zip(amp_ns, amp_c)},
              "amplitude_spread": max(amp_c) / min(amp_c)}
    if region == "origin":
        dc = [osc.difference_constant(p, n, th) for n in amp_ns]
        report["difference_constants"] = {str(n): c for n, c in zip(amp_ns, dc)}
        report["difference_spread"] = max(dc) / min(dc)
    return report, None, True


def _run_weyl(cfg):
    from .regularity import decay_fit
    from .schrodinger import kernel_constants, weyl_sum_probe
    p = space_params(cfg.space, cfg.d)
    t = cfg.times[0]
    Ns = [16 * 2**k for k in range(int(np.log2(cfg.N // 16)) + 1)]
    probes = {}
    for pg in (0, 1):
        vals = [weyl_sum_probe(pg, N, t) for N in Ns]
        probes[str(pg)] = decay_fit(Ns, vals).to_json(f"weyl sup, p={pg}", Ns, vals)
    kN = [8 * 2**k for k in range(int(np.log2(cfg.extra["kernel_N_max"] // 8)) + 1)]
    kc = [kernel_constants(p, N, t) for N in kN]
    c0, c1 = zip(*kc)
    report = {"command": "weyl", "space": p.kind, "d": p.d, "time": t.to_json(),
              "probes": probes,
              "kernel_constants": [{"N": N, "origin": a, "cutlocus": b} for N, a, b in zip(kN, c0, c1)],
              "origin_spread": max(c0) / min(c0), "cutlocus_spread": max(c1) / min(c1)}
    if cfg.format == "csv":
        rows = ((str(N), a, b) for N, a, b in zip(kN, c0, c1))
        return None, sio._rows_to_csv(("N", "origin_constant", "cutlocus_constant"), rows), True
    return report, None, True


def _run_talbot(cfg):
    from .schrodinger import DataSpec, talbot_experiment
    p = space_params(cfg.space, cfg.d)
    ex = cfg.extra
    data = DataSpec("besov_random" if ex["data"] == "besov" else "ball", ex["s"], ex["p"],
                    cfg.seed, ex["theta0"])
    report = talbot_experiment(p, data, cfg.times, cfg.M, cfg.grid, ex["convergence"])
    report["command"] = "talbot"
    ok = report["aggregates"]["converged"] is not False
    if cfg.format == "csv":
        rows = ((r["t_spec"]["label"], r["t_spec"]["t"], r["besov_exponent"], r["holder_exponent"],
                 r["dimension"]["dimension"]) for r in report["times"])
        return None, sio._rows_to_csv(("time", "t", "besov_exponent", "holder_exponent", "dimension"),
                                      rows), ok
    return report, None, ok


def _run_dim(cfg):
    from .fractal import dyadic_levels, graph_dimension
    th, vals = sio.read_profile_csv(cfg.extra["input"])
    h = float(np.max(np.diff(th)))
    floor = cfg.extra["floor"] or 4 * h
    levels = dyadic_levels(th[-1] - th[0], floor)
    est = graph_dimension(th, vals.real, levels)
    if cfg.format == "csv":
        return None, sio.counts_csv(est.epsilons, est.counts), True
    return {"command": "dim", "input": os.path.basename(cfg.extra["input"]), **est.to_json()}, None, True


COMMANDS = {"spaces": _run_spaces, "zonal": _run_zonal, "cesaro": _run_rate, "riesz": _run_rate,
            "besov": _run_besov, "oscillatory": _run_oscillatory, "weyl": _run_weyl,
            "talbot": _run_talbot, "dim": _run_dim}


def execute(cfg: RunConfig) -> int:
    try:
        report, text, ok = COMMANDS[cfg.subcommand](cfg)
    except (ValueError, ArithmeticError, FileNotFoundError) as exc:
        print(f"symharm {cfg.subcommand}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if text is None:
        if isinstance(report, dict):
            _stamp(report)
        text = sio.to_json(report)
    try:
        with sio.atomic_output(cfg.out) as fh:
            fh.write(text)
    except BrokenPipeError:
        # downstream reader closed early (e.g. piped into head)
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    if not ok:
        print(f"symharm {cfg.subcommand}: convergence flag not set", file=sys.stderr)
        return EXIT_CONVERGENCE
    return EXIT_OK


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_args(argv)
    except UsageError as exc:
        if str(exc) != "invalid arguments":
            print(f"symharm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return execute(cfg)


if __name__ == "__main__":
    sys.exit(main())
