"""Command-line front end: evaluate, tabulate, verify, sample.

Outputs are machine readable: CSV with a fixed header or JSON with a stable
{config, results, version} schema, every number at 15 significant digits.
Config precedence is flag > config file (key=value lines) > built-in default.
Report-producing commands can additionally render figures next to the
delimited output via --figures DIR.

Exit codes: 0 success / all identities pass, 1 verification failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, replace

from . import __version__
from . import ensembles as ens
from . import gap

DEFAULTS = {
    "quadrature_order": 64,
    "ode_tolerance": 1e-11,
    "identity_tolerance": 1e-6,
    "output_format": "json",
    "seed": 0,
}


@dataclass(frozen=True)
class RunConfig:
    quadrature_order: int = 64
    ode_tolerance: float = 1e-11
    identity_tolerance: float = 1e-6
    output_format: str = "json"
    seed: int = 0

    def __post_init__(self):
        if not (16 <= self.quadrature_order <= 2048):
            raise ValueError(f"quadrature order must lie in [16, 2048], got {self.quadrature_order}")
        if not (self.ode_tolerance > 0 and self.identity_tolerance > 0):
            raise ValueError("tolerances must be positive")
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"output format must be csv or json, got {self.output_format!r}")

    def as_dict(self):
        return {"quadrature_order": self.quadrature_order,
                "ode_tolerance": self.ode_tolerance,
                "identity_tolerance": self.identity_tolerance,
                "output_format": self.output_format,
                "seed": self.seed}


class UsageError(ValueError):
    pass


def _g15(x):
    return float(f"{x:.15g}")


def _round15(obj):
    if isinstance(obj, float):
        return _g15(obj)
    if isinstance(obj, dict):
        return {k: _round15(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round15(v) for v in obj]
    return obj


def _emit_json(config, results, stream):
    doc = {"config": _round15(config.as_dict()), "results": _round15(results),
           "version": __version__}
    stream.write(json.dumps(doc, indent=2) + "\n")


def _emit_csv(rows, header, stream):
    stream.write(",".join(header) + "\n")
    for row in rows:
        stream.write(",".join(f"{row[h]:.15g}" if isinstance(row[h], float)
                              else str(row[h]) for h in header) + "\n")


def _load_config(path):
    out = {}
    with open(path) as f:
        for line in f:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"malformed config line: {line!r}")
            k, v = (p.strip() for p in line.split("=", 1))
            if k not in DEFAULTS:
                raise UsageError(f"unknown config key: {k!r}")
            out[k] = v
    return out


def _build_config(args):
    merged = dict(DEFAULTS)
    if getattr(args, "config", None):
        merged.update(_load_config(args.config))
    cfg = RunConfig(quadrature_order=int(merged["quadrature_order"]),
                    ode_tolerance=float(merged["ode_tolerance"]),
                    identity_tolerance=float(merged["identity_tolerance"]),
                    output_format=str(merged["output_format"]),
                    seed=int(merged["seed"]))
    if getattr(args, "quadrature_order", None) is not None:
        cfg = replace(cfg, quadrature_order=args.quadrature_order)
    if getattr(args, "ode_tol", None) is not None:
        cfg = replace(cfg, ode_tolerance=args.ode_tol)
    if getattr(args, "identity_tol", None) is not None:
        cfg = replace(cfg, identity_tolerance=args.identity_tol)
    if getattr(args, "format", None) is not None:
        cfg = replace(cfg, output_format=args.format)
    if getattr(args, "seed", None) is not None:
        cfg = replace(cfg, seed=args.seed)
    return cfg


def _query_from_args(args, cfg):
    return gap.GapQuery(regime=args.regime, beta=args.beta, s=args.s,
                        a=args.a, xi=args.xi, route=args.route)


def cmd_eval(args):
    cfg = _build_config(args)
    query = _query_from_args(args, cfg)
    rec = gap.gap_eval(query, order=cfg.quadrature_order)
    if cfg.output_format == "csv":
        header = ["s", "value", "route", "error_estimate"]
        _emit_csv([{"s": query.s, "value": rec["value"], "route": query.route,
                    "error_estimate": rec.get("error_estimate", 0.0)}], header, sys.stdout)
    else:
        _emit_json(cfg, [rec], sys.stdout)
    return 0


def _parse_grid(text):
    if ":" in text:
        try:
            lo, hi, cnt = text.split(":")
            lo, hi, cnt = float(lo), float(hi), int(cnt)
        except ValueError as exc:
            raise UsageError(f"bad grid spec {text!r}: {exc}")
        if cnt < 1 or hi <= lo:
            raise UsageError(f"grid spec {text!r} must be lo:hi:count with hi > lo")
        step = (hi - lo) / (cnt - 1) if cnt > 1 else 0.0
        return [lo + i * step for i in range(cnt)]
    vals = [float(v) for v in text.split(",") if v.strip()]
    if not vals or any(b <= a for a, b in zip(vals, vals[1:])):
        raise UsageError("grid values must be strictly increasing")
    return vals


def cmd_table(args):
    cfg = _build_config(args)
    grid = _parse_grid(args.s_grid)
    rows = []
    for s in grid:
        query = gap.GapQuery(regime=args.regime, beta=args.beta, s=s,
                             a=args.a, xi=args.xi, route=args.route)
        rec = gap.gap_eval(query, order=cfg.quadrature_order)
        rows.append({"s": s, "value": rec["value"], "route": args.route,
                     "error_estimate": rec.get("error_estimate", 0.0)})
    if cfg.output_format == "json":
        _emit_json(cfg, rows, sys.stdout)
    else:
        _emit_csv(rows, ["s", "value", "route", "error_estimate"], sys.stdout)
    if args.figures:
        from . import plots

        plots.ensure_dir(args.figures)
        title = f"{args.regime} gap, beta={args.beta}, xi={args.xi}"
        path = f"{args.figures}/table_{args.regime}_beta{args.beta}.png"
        plots.save_table_figure(rows, path, title)
        print(f"figure written: {path}", file=sys.stderr)
    return 0


def cmd_verify(args):
    cfg = _build_config(args)
    reports = gap.verify_identities(args.suite, tolerance=cfg.identity_tolerance,
                                    order=cfg.quadrature_order)
    results = [r.as_dict() for r in reports]
    _emit_json(cfg, results, sys.stdout)
    if args.figures:
        from . import plots

        plots.ensure_dir(args.figures)
        path = f"{args.figures}/verify_{args.suite}.png"
        plots.save_verify_figure(reports, path, f"identity suite: {args.suite}")
        print(f"figure written: {path}", file=sys.stderr)
    return 0 if all(r.passed for r in reports) else 1


def cmd_sample(args):
    cfg = _build_config(args)
    spec = ens.EnsembleSpec(family=args.family, beta=args.beta, n=args.N,
                            a=args.a, seed=cfg.seed)
    if args.regime == "soft":
        emp = ens.empirical_gap_soft(spec, args.s, args.trials)
        comp = gap.gap_soft(args.beta, args.s, 1.0, "fredholm")
    else:
        emp = ens.empirical_gap_hard(spec, args.s, args.trials)
        comp = gap.gap_hard(args.beta, args.s, args.a, 1.0, "fredholm")
    rec = {"family": args.family, "beta": args.beta, "N": args.N, "a": args.a,
           "regime": args.regime, "s": args.s, "trials": emp.trials,
           "estimate": emp.estimate, "ci_halfwidth": emp.ci_halfwidth,
           "comparator": comp, "rng": ens.RNG_ALGORITHM}
    _emit_json(cfg, [rec], sys.stdout)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="gapprob",
                                description="Gap probabilities of scaled random-matrix "
                                            "ensembles by Fredholm-determinant and "
                                            "Painleve tau-function routes.")
    p.add_argument("--config", help="key=value config file")
    p.add_argument("--quadrature-order", type=int, dest="quadrature_order")
    p.add_argument("--ode-tol", type=float, dest="ode_tol")
    p.add_argument("--identity-tol", type=float, dest="identity_tol")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--seed", type=int)
    sub = p.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="evaluate one gap probability")
    pe.add_argument("--regime", required=True, choices=("bulk", "soft", "hard"))
    pe.add_argument("--beta", required=True, type=int, choices=(1, 2, 4))
    pe.add_argument("--s", required=True, type=float)
    pe.add_argument("--a", type=float, default=None)
    pe.add_argument("--xi", type=float, default=1.0)
    pe.add_argument("--route", default="fredholm", choices=("fredholm", "painleve", "both"))
    pe.set_defaults(func=cmd_eval)

    pt = sub.add_parser("table", help="tabulate over an s grid (CSV or JSON)")
    pt.add_argument("--regime", required=True, choices=("bulk", "soft", "hard"))
    pt.add_argument("--beta", required=True, type=int, choices=(1, 2, 4))
    pt.add_argument("--s-grid", required=True,
                    help="comma list '0.1,0.2,...' or range 'lo:hi:count'")
    pt.add_argument("--a", type=float, default=None)
    pt.add_argument("--xi", type=float, default=1.0)
    pt.add_argument("--route", default="fredholm", choices=("fredholm", "painleve", "both"))
    pt.add_argument("--figures", help="directory for rendered figures")
    pt.set_defaults(func=cmd_table)

    pv = sub.add_parser("verify", help="run an identity-verification suite")
    pv.add_argument("--suite", default="all", choices=gap.SUITES)
    pv.add_argument("--figures", help="directory for rendered figures")
    pv.set_defaults(func=cmd_verify)

    ps = sub.add_parser("sample", help="Monte Carlo estimate vs analytic comparator")
    ps.add_argument("--family", required=True, choices=("gaussian", "laguerre"))
    ps.add_argument("--beta", required=True, type=int, choices=(1, 2, 4))
    ps.add_argument("--N", required=True, type=int)
    ps.add_argument("--regime", required=True, choices=("soft", "hard"))
    ps.add_argument("--s", required=True, type=float)
    ps.add_argument("--a", type=float, default=0.0)
    ps.add_argument("--trials", type=int, default=2000)
    ps.set_defaults(func=cmd_sample)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors already
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
