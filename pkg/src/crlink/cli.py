"""Command-line front end: sweep, point, validate, selftest."""

from __future__ import annotations

import argparse
import math
import sys

import yaml

from . import __version__
from .fading import (FadingFamily, FadingSpec, LinkKind, SnrDistribution,
                     cdf_ratio, nakagami, rayleigh)
from .metrics import capacity, spectral_efficiency_cr, spectral_efficiency_dr
from .mud import MudDistribution
from .oracle import McConfig, mc_capacity, mc_power_check, mc_se_dr
from .power import (ConstellationSet, ConstraintMode, ConstraintSpec,
                    power_loss_factor, solve_cutoff, solve_cutoff_cr,
                    solve_dr_policy)
from .specfun import exp_integral_e1
from .sweep import (SweepConfig, db_to_linear, emit_csv, load_config,
                    render_csv, run_sweep)


def _parse_set(values):
    overrides = {}
    for item in values or []:
        if "=" not in item:
            raise SystemExit(f"--set expects key=value, got {item!r}")
        key, _, val = item.partition("=")
        overrides[key.strip()] = yaml.safe_load(val)
    return overrides


def cmd_sweep(args) -> int:
    overrides = _parse_set(args.set)
    if args.output:
        overrides["output"] = args.output
    cfg = load_config(args.config, overrides)
    res = run_sweep(cfg, workers=args.workers)
    emit_csv(res, cfg.output)
    failures = [r for r in res.rows if r.error]
    print(f"wrote {cfg.output}: {len(res.rows)} rows, {len(failures)} failed")
    for r in failures:
        print(f"  axis={r.axis_value:g} ns={r.ns} m={r.m:g}: {r.error}")
    return 0


def cmd_point(args) -> int:
    axis = "p_av_db" if args.mode == "osa" else "q_av_db"
    anchor = args.p_av_db if args.mode == "osa" else args.q_av_db
    cfg = SweepConfig(
        mode=args.mode, axis=axis, axis_range=(anchor, anchor, 1.0),
        num_users=(args.ns,), m_values=(args.m,),
        p_av_db=args.p_av_db, q_av_db=args.q_av_db,
        ber_target=args.ber,
        constellations=tuple(int(s) for s in args.sizes.split(",")),
        mc_validate=args.mc, mc_samples=args.mc_samples, seed=args.seed,
        output=args.output or "-")
    res = run_sweep(cfg)
    text = render_csv(res)
    if cfg.output == "-":
        sys.stdout.write(text)
    else:
        emit_csv(res, cfg.output)
        print(f"wrote {cfg.output}")
    return 1 if any(r.error for r in res.rows) else 0


# representative points for oracle validation: both modes, m in {1,2},
# single and multi user
_VALIDATE_POINTS = (
    ("osa", 1.0, 1, 10.0, None),
    ("osa", 2.0, 5, 10.0, None),
    ("osa", 1.0, 5, 0.0, None),
    ("ss", 1.0, 5, 10.0, 0.0),
    ("ss", 2.0, 1, 10.0, 10.0),
    ("ss", 2.0, 5, 10.0, 0.0),
)


def _build_point(mode, m, ns, p_db, q_db):
    spec = FadingSpec(FadingFamily.NAKAGAMI, db_to_linear(p_db), m)
    if mode == "osa":
        link = LinkKind.DIRECT
        constraint = ConstraintSpec(ConstraintMode.TRANSMIT_POWER, 1.0)
    else:
        link = LinkKind.RATIO
        constraint = ConstraintSpec(ConstraintMode.INTERFERENCE_POWER,
                                    db_to_linear(q_db) / db_to_linear(p_db))
    return MudDistribution(SnrDistribution(spec, link), ns), constraint


def cmd_validate(args) -> int:
    cset = ConstellationSet((0, 4, 8, 16, 64), 1e-3)
    cfg = McConfig(samples=args.samples, seed=args.seed)
    print(f"oracle validation: {args.samples} samples per estimate, "
          f"seed {args.seed}, 3-sigma bands")
    header = f"{'point':<28}{'metric':<10}{'analytic':>12}{'mc':>12}{'sigmas':>9}"
    print(header)
    ok = True
    for mode, m, ns, p_db, q_db in _VALIDATE_POINTS:
        dist, constraint = _build_point(mode, m, ns, p_db, q_db)
        label = f"{mode} m={m:g} ns={ns} p={p_db:g}" + (
            f" q={q_db:g}" if q_db is not None else "")
        cut = solve_cutoff(dist, constraint)
        cut_cr = solve_cutoff_cr(dist, constraint, cset.k)
        pol = solve_dr_policy(dist, constraint, cset)
        checks = [
            ("capacity", capacity(dist, cut).value,
             mc_capacity(dist, cut, cfg)),
            ("se_cr", spectral_efficiency_cr(dist, cut_cr, cset.k).value,
             mc_capacity(dist, cut_cr, cfg, k=cset.k)),
            ("se_dr", spectral_efficiency_dr(dist, pol, cset).value,
             mc_se_dr(dist, pol, cset, cfg)),
            ("power", constraint.budget_ratio,
             mc_power_check(dist, cut, cfg)),
            ("power_dr", constraint.budget_ratio,
             mc_power_check(dist, pol, cfg, cset=cset)),
        ]
        for name, analytic, est in checks:
            sig = abs(est.value - analytic) / est.stderr if est.stderr else 0.0
            good = sig <= 3.0
            ok = ok and good
            print(f"{label:<28}{name:<10}{analytic:>12.6f}{est.value:>12.6f}"
                  f"{sig:>9.2f}" + ("" if good else "  FAIL"))
    print("validation " + ("passed" if ok else "FAILED"))
    return 0 if ok else 1


def _check(results, label, cond):
    results.append((label, bool(cond)))
    print(("ok    " if cond else "FAIL  ") + label)


def cmd_selftest(args) -> int:
    results = []
    k = power_loss_factor(1e-3)
    _check(results, "power-loss factor matches closed form",
           abs(k - 1.5 / math.log(200.0)) < 1e-12)

    dist = MudDistribution(
        SnrDistribution(rayleigh(1.0), LinkKind.DIRECT), 1)
    c1 = ConstraintSpec(ConstraintMode.TRANSMIT_POWER, 1.0)
    cut = solve_cutoff(dist, c1)
    _check(results, "unit-budget cutoff in [0.39, 0.40]",
           0.39 <= cut.gamma0 <= 0.40)
    cap = capacity(dist, cut)
    closed = exp_integral_e1(cut.gamma0) / math.log(2.0)
    _check(results, "capacity matches exponential-integral closed form",
           abs(cap.value - closed) < 1e-8)

    cut_cr1 = solve_cutoff_cr(dist, c1, 1.0)
    _check(results, "unit power-loss factor reduces to plain cutoff",
           cut_cr1.gamma0 == cut.gamma0
           and spectral_efficiency_cr(dist, cut_cr1, 1.0).value == cap.value)

    naka = MudDistribution(
        SnrDistribution(nakagami(1.0, 1.0), LinkKind.DIRECT), 1)
    cut_n = solve_cutoff(naka, c1)
    _check(results, "shape factor 1 reproduces Rayleigh cutoff",
           abs(cut_n.gamma0 - cut.gamma0) < 1e-9)

    for m in (0.5, 2.0):
        _check(results, f"gain-ratio CDF symmetry at unit point (m={m:g})",
               abs(cdf_ratio(nakagami(m, 1.0), 1.0) - 0.5) < 1e-9)

    cset = ConstellationSet((0, 4, 8, 16, 64), 1e-3)
    for mode, m, ns, p_db, q_db in (("osa", 1.0, 5, 10.0, None),
                                    ("ss", 2.0, 5, 10.0, 0.0)):
        d, constraint = _build_point(mode, m, ns, p_db, q_db)
        cc = capacity(d, solve_cutoff(d, constraint)).value
        scr = spectral_efficiency_cr(
            d, solve_cutoff_cr(d, constraint, cset.k), cset.k).value
        pol = solve_dr_policy(d, constraint, cset)
        sdr = spectral_efficiency_dr(d, pol, cset).value
        _check(results, f"metric ordering at {mode} m={m:g} ns={ns}",
               cc >= scr >= sdr >= 0.0)
        _check(results, f"region probabilities sum to one at {mode} m={m:g}",
               abs(sum(pol.region_probs) + float(d.cdf(pol.boundaries[0])) - 1.0) < 1e-9)

    mc = mc_power_check(dist, cut, McConfig(samples=200_000, seed=1))
    _check(results, "sampled policy power hits the unit budget (3 sigma)",
           mc.within(1.0))

    failed = [lbl for lbl, good in results if not good]
    print(f"selftest: {len(results) - len(failed)}/{len(results)} checks passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="crlink",
        description="Capacity and adaptive-modulation spectral efficiency of "
                    "multi-user cognitive-radio links over fading channels.")
    ap.add_argument("--version", action="version", version=f"crlink {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sweep", help="run a sweep defined by a config file")
    sp.add_argument("config", help="YAML sweep definition (see configs/)")
    sp.add_argument("--set", action="append", metavar="KEY=VALUE",
                    help="override a config key (repeatable)")
    sp.add_argument("-o", "--output", help="override the output CSV path")
    sp.add_argument("--workers", type=int, default=1,
                    help="grid points evaluated in parallel (default 1)")
    sp.set_defaults(func=cmd_sweep)

    pp = sub.add_parser("point", help="evaluate a single operating point")
    pp.add_argument("--mode", choices=("osa", "ss"), required=True)
    pp.add_argument("--m", type=float, default=1.0, help="fading shape factor")
    pp.add_argument("--ns", type=int, default=1, help="number of secondary users")
    pp.add_argument("--p-av-db", type=float, default=0.0)
    pp.add_argument("--q-av-db", type=float, default=0.0)
    pp.add_argument("--ber", type=float, default=1e-3)
    pp.add_argument("--sizes", default="0,4,8,16,64")
    pp.add_argument("--mc", action="store_true", help="add oracle columns")
    pp.add_argument("--mc-samples", type=int, default=1_000_000)
    pp.add_argument("--seed", type=int, default=0)
    pp.add_argument("-o", "--output", help="CSV path (default: stdout)")
    pp.set_defaults(func=cmd_point)

    vp = sub.add_parser("validate",
                        help="compare analytic metrics against the Monte Carlo oracle")
    vp.add_argument("--samples", type=int, default=1_000_000)
    vp.add_argument("--seed", type=int, default=7)
    vp.set_defaults(func=cmd_validate)

    st = sub.add_parser("selftest", help="run the built-in invariant checks")
    st.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
