"""Command-line frontend.

Subcommands:
  cov        evaluate sheet covariances and analytic limit constants
  field      draw exact Gaussian field samples on a grid (CSV)
  particles  run a particle-system ensemble (CSV + optional JSON report)
  verify     run a verification suite from a JSON config (JSON report)

Exit codes: 0 success / all checks pass, 1 numerical or verdict failure,
2 invalid input.  All CSV floats use 17 significant digits so files
round-trip losslessly.  ``--jobs`` (default from the WFBS_JOBS
environment variable) controls parallel replication workers; output is
identical for any job count.
"""

import argparse
import json
import os
import sys

from .covariance import (
    Rect,
    RayQuery,
    long_increment_limit,
    lrd_limit,
    ray_lrd_limit,
    sheet_cov,
    short_increment_limit,
)
from .errors import WfbsError
from .fields import GridSpec, sample_field
from .params import ParticleParams, WfbsParams
from .particles import ParticleConfig, TestFunction, run_ensemble
from .verify import (
    all_pass,
    check_holder,
    check_increment_limits,
    check_lrd,
    check_theorem31,
    reports_to_json,
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _fmt(x):
    return format(float(x), ".17g")


def _csv_row(values):
    return ",".join(_fmt(v) for v in values)


class UsageError(Exception):
    pass


def _parse_floats(text, n=None, name="value"):
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"could not parse {name} {text!r}: {exc}") from None
    if n is not None and len(vals) != n:
        raise UsageError(f"{name} needs {n} comma-separated numbers, got {text!r}")
    return vals


def _parse_grid(text):
    """Parse 'start:stop:count x start:stop:count' into a GridSpec."""
    axes = []
    for part in text.split("x"):
        bits = part.split(":")
        if len(bits) != 3:
            raise UsageError(f"grid axis must be start:stop:count, got {part!r}")
        try:
            start, stop, count = float(bits[0]), float(bits[1]), int(bits[2])
        except ValueError as exc:
            raise UsageError(f"bad grid axis {part!r}: {exc}") from None
        if count < 1 or stop < start:
            raise UsageError(f"bad grid axis {part!r}")
        if count == 1:
            axes.append((start,))
        else:
            step = (stop - start) / (count - 1)
            axes.append(tuple(start + k * step for k in range(count)))
    if len(axes) != 2:
        raise UsageError(f"grid must be two 'x'-separated axes, got {text!r}")
    return GridSpec(axes[0], axes[1])


def _parse_test_function(text):
    """Parse 'gaussian:center,width[,integral]' or 'indicator:lo,hi'."""
    kind, _, rest = text.partition(":")
    if kind == "gaussian":
        vals = _parse_floats(rest, name="gaussian spec")
        if len(vals) == 2:
            return TestFunction.gaussian(vals[0], vals[1])
        if len(vals) == 3:
            return TestFunction.gaussian(vals[0], vals[1], vals[2])
        raise UsageError(f"gaussian needs center,width[,integral], got {rest!r}")
    if kind == "indicator":
        lo, hi = _parse_floats(rest, 2, "indicator spec")
        return TestFunction.indicator(lo, hi)
    raise UsageError(f"unknown test function kind {kind!r}")


def _wfbs_params(args):
    return WfbsParams(a1=args.a1, b1=args.b1, a2=args.a2, b2=args.b2)


def _open_out(path):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w"), True


def _default_jobs():
    env = os.environ.get("WFBS_JOBS")
    if env is None:
        return 1
    try:
        return max(1, int(env))
    except ValueError:
        raise UsageError(f"WFBS_JOBS must be an integer, got {env!r}") from None


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_cov(args):
    p = _wfbs_params(args)
    out, close = _open_out(args.out)
    try:
        if args.limit is None:
            for spec in args.at:
                s, t, s2, t2 = _parse_floats(spec, 4, "--at")
                out.write(_csv_row([s, t, s2, t2, sheet_cov(p, s, t, s2, t2)]) + "\n")
        elif args.limit == "short":
            s, t = _parse_floats(args.point, 2, "--point")
            out.write(_fmt(short_increment_limit(p, s, t)) + "\n")
        elif args.limit == "long":
            out.write(_fmt(long_increment_limit(p)) + "\n")
        elif args.limit == "lrd":
            r1 = Rect(*_parse_floats(args.rect1, 4, "--rect1"))
            r2 = Rect(*_parse_floats(args.rect2, 4, "--rect2"))
            val = lrd_limit(p, r1.s, r1.t, r1.s2, r1.t2, r2.s, r2.t, r2.s2, r2.t2)
            out.write(_fmt(val) + "\n")
        elif args.limit == "ray":
            theta, u, v, s, t = _parse_floats(args.ray, 5, "--ray")
            out.write(_fmt(ray_lrd_limit(p, RayQuery(theta, u, v, s, t))) + "\n")
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_field(args):
    p = _wfbs_params(args)
    grid = _parse_grid(args.grid)
    samples = sample_field(p, grid, args.n, args.seed)
    out, close = _open_out(args.out)
    try:
        out.write("sample,s,t,value\n")
        for k, smp in enumerate(samples):
            for i, s in enumerate(grid.s_points):
                for j, t in enumerate(grid.t_points):
                    out.write(f"{k},{_csv_row([s, t, smp.values[i, j]])}\n")
    finally:
        if close:
            out.close()
    return EXIT_OK


def _particle_config(args):
    a1, a2 = _parse_floats(args.alpha, 2, "--alpha")
    g1, g2 = _parse_floats(args.gamma, 2, "--gamma")
    pp = ParticleParams(alpha1=a1, alpha2=a2, gamma1=g1, gamma2=g2)
    eval_points = tuple(tuple(_parse_floats(sp, 2, "--eval")) for sp in args.eval)
    return ParticleConfig(
        pp=pp,
        phi=_parse_test_function(args.phi),
        psi=_parse_test_function(args.psi),
        T=args.T,
        eval_points=eval_points,
        time_steps=args.time_steps,
        trunc_eps=args.trunc_eps,
    )


def cmd_particles(args):
    cfg = _particle_config(args)
    jobs = args.jobs if args.jobs is not None else _default_jobs()
    if args.ladder is not None:
        ladder = [float(v) for v in _parse_floats(args.ladder, name="--ladder")]
        reports = check_theorem31(cfg, ladder, args.reps, args.seed, jobs=jobs)
        out, close = _open_out(args.report or args.out)
        try:
            out.write(reports_to_json(reports) + "\n")
        finally:
            if close:
                out.close()
        return EXIT_OK if all_pass(reports) else EXIT_FAILURE
    ens = run_ensemble(cfg, args.reps, args.seed, jobs=jobs)
    out, close = _open_out(args.out)
    try:
        out.write("replication,s,t,xt\n")
        for r in range(ens.replications):
            for k, (s, t) in enumerate(cfg.eval_points):
                out.write(f"{r},{_csv_row([s, t, ens.xt_values[r, k]])}\n")
    finally:
        if close:
            out.close()
    return EXIT_OK


# --- verify: strict JSON config handling -----------------------------------

_PARAM_KEYS = {"a1", "b1", "a2", "b2"}
_TESTFN_KEYS = {"kind", "center", "width", "integral", "lo", "hi"}
_PARTICLE_KEYS = {
    "alpha",
    "gamma",
    "T_ladder",
    "replications",
    "eval_points",
    "time_steps",
    "trunc_eps",
    "phi",
    "psi",
}
_SUITE_KEYS = {
    "theorem31": {"suite", "particle", "jobs"},
    "lrd": {"suite", "params", "tau_ladder"},
    "holder": {"suite", "params", "grid_power", "replications"},
    "increments": {"suite", "params", "point"},
}


def _require(cond, msg):
    if not cond:
        raise UsageError(msg)


def _check_keys(obj, allowed, where):
    _require(isinstance(obj, dict), f"{where} must be a JSON object")
    unknown = set(obj) - allowed
    _require(not unknown, f"unknown keys in {where}: {sorted(unknown)}")


def _config_params(cfg):
    _require("params" in cfg, "config is missing 'params'")
    _check_keys(cfg["params"], _PARAM_KEYS, "params")
    _require(
        set(cfg["params"]) == _PARAM_KEYS, "params must supply exactly a1, b1, a2, b2"
    )
    return WfbsParams(**{k: float(v) for k, v in cfg["params"].items()})


def _config_test_function(obj, where):
    _check_keys(obj, _TESTFN_KEYS, where)
    kind = obj.get("kind")
    if kind == "gaussian":
        _require({"center", "width"} <= set(obj), f"{where}: gaussian needs center, width")
        return TestFunction.gaussian(
            float(obj["center"]), float(obj["width"]), float(obj.get("integral", 1.0))
        )
    if kind == "indicator":
        _require({"lo", "hi"} <= set(obj), f"{where}: indicator needs lo, hi")
        return TestFunction.indicator(float(obj["lo"]), float(obj["hi"]))
    raise UsageError(f"{where}: kind must be 'gaussian' or 'indicator', got {kind!r}")


def _config_particle(cfg):
    _require("particle" in cfg, "config is missing 'particle'")
    pc = cfg["particle"]
    _check_keys(pc, _PARTICLE_KEYS, "particle")
    for key in ("alpha", "gamma", "T_ladder", "replications", "eval_points", "phi", "psi"):
        _require(key in pc, f"particle is missing '{key}'")
    _require(len(pc["alpha"]) == 2 and len(pc["gamma"]) == 2, "alpha/gamma need 2 entries")
    pp = ParticleParams(
        alpha1=float(pc["alpha"][0]),
        alpha2=float(pc["alpha"][1]),
        gamma1=float(pc["gamma"][0]),
        gamma2=float(pc["gamma"][1]),
    )
    eval_points = tuple(
        (float(p[0]), float(p[1])) for p in pc["eval_points"]
    )
    ladder = [float(t) for t in pc["T_ladder"]]
    _require(len(ladder) >= 1, "T_ladder must be non-empty")
    config = ParticleConfig(
        pp=pp,
        phi=_config_test_function(pc["phi"], "particle.phi"),
        psi=_config_test_function(pc["psi"], "particle.psi"),
        T=max(ladder),
        eval_points=eval_points,
        time_steps=int(pc.get("time_steps", 256)),
        trunc_eps=float(pc.get("trunc_eps", 1e-3)),
    )
    return config, ladder, int(pc["replications"])


def cmd_verify(args):
    try:
        with open(args.config) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {args.config!r}: {exc}") from None
    _require(isinstance(cfg, dict), "config must be a JSON object")
    if args.suite is not None:
        cfg["suite"] = args.suite
    _require("suite" in cfg, "config must declare 'suite'")
    suite = cfg["suite"]
    _require(suite in _SUITE_KEYS, f"unknown suite {suite!r}")
    _check_keys(cfg, _SUITE_KEYS[suite], "config")
    jobs = args.jobs if args.jobs is not None else int(cfg.get("jobs", 0)) or _default_jobs()

    if suite == "theorem31":
        pcfg, ladder, reps = _config_particle(cfg)
        reports = check_theorem31(pcfg, ladder, reps, args.seed, jobs=jobs)
    elif suite == "lrd":
        p = _config_params(cfg)
        taus = [float(t) for t in cfg.get("tau_ladder", [1e2, 1e3, 1e4])]
        reports = check_lrd(p, taus)
    elif suite == "holder":
        p = _config_params(cfg)
        reports = [
            check_holder(
                p,
                grid_power=int(cfg.get("grid_power", 10)),
                seed=args.seed,
                replications=int(cfg.get("replications", 96)),
            )
        ]
    else:
        p = _config_params(cfg)
        point = tuple(float(v) for v in cfg.get("point", (1.0, 1.0)))
        reports = check_increment_limits(p, point=point)

    out, close = _open_out(args.out)
    try:
        out.write(reports_to_json(reports) + "\n")
    finally:
        if close:
            out.close()
    return EXIT_OK if all_pass(reports) else EXIT_FAILURE


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_param_flags(sub):
    for name in ("a1", "b1", "a2", "b2"):
        sub.add_argument(f"--{name}", type=float, required=True)


def build_parser():
    ap = argparse.ArgumentParser(prog="wfbs", description=__doc__)
    sp = ap.add_subparsers(dest="command", required=True)

    cov = sp.add_parser("cov", help="covariances and limit constants")
    _add_param_flags(cov)
    cov.add_argument("--at", action="append", default=[], metavar="s,t,s2,t2")
    cov.add_argument("--limit", choices=("short", "long", "lrd", "ray"))
    cov.add_argument("--point", default="1,1", metavar="s,t")
    cov.add_argument("--rect1", default="0,0,1,1", metavar="s,t,s2,t2")
    cov.add_argument("--rect2", default="1,1,2,2", metavar="s,t,s2,t2")
    cov.add_argument("--ray", default="1,0,1,0,1", metavar="theta,u,v,s,t")
    cov.add_argument("--out", default=None)
    cov.set_defaults(func=cmd_cov)

    fld = sp.add_parser("field", help="exact Gaussian field samples")
    _add_param_flags(fld)
    fld.add_argument("--grid", required=True, metavar="s0:s1:mxt0:t1:n")
    fld.add_argument("--n", type=int, required=True)
    fld.add_argument("--seed", type=int, required=True)
    fld.add_argument("--out", default=None)
    fld.set_defaults(func=cmd_field)

    par = sp.add_parser("particles", help="particle-system ensembles")
    par.add_argument("--alpha", required=True, metavar="a1,a2")
    par.add_argument("--gamma", required=True, metavar="g1,g2")
    par.add_argument("--T", type=float, required=True)
    par.add_argument("--reps", type=int, required=True)
    par.add_argument("--seed", type=int, required=True)
    par.add_argument("--eval", action="append", default=None, metavar="s,t")
    par.add_argument("--phi", default="gaussian:0,0.03125")
    par.add_argument("--psi", default="gaussian:0,0.03125")
    par.add_argument("--time-steps", type=int, default=256)
    par.add_argument("--trunc-eps", type=float, default=1e-3)
    par.add_argument("--ladder", default=None, metavar="T1,T2,...")
    par.add_argument("--jobs", type=int, default=None)
    par.add_argument("--out", default=None)
    par.add_argument("--report", default=None)
    par.set_defaults(func=cmd_particles)

    ver = sp.add_parser("verify", help="verification suites from JSON config")
    ver.add_argument("--suite", default=None, help="override the config's suite")
    ver.add_argument("--config", required=True)
    ver.add_argument("--seed", type=int, required=True)
    ver.add_argument("--jobs", type=int, default=None)
    ver.add_argument("--out", default=None)
    ver.set_defaults(func=cmd_verify)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if args.command == "particles" and args.eval is None:
        args.eval = ["1,1"]
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except WfbsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE if _is_input_error(exc) else EXIT_FAILURE
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_FAILURE


def _is_input_error(exc):
    from .errors import DomainError, InvalidRect, OutOfRange, TooFewReplications

    return isinstance(exc, (OutOfRange, DomainError, InvalidRect, TooFewReplications))


if __name__ == "__main__":
    sys.exit(main())
