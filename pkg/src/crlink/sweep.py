"""Sweep driver: grid definition, per-point evaluation, CSV emission.

dB convention: the transmit-power axis scales the direct-link mean SNR
(opportunistic mode) or the ratio-link scale (sharing mode); the
interference-power axis sets the budget ratio Q/P. All dB values convert
as linear = 10^(dB/10). Output is a pure function of config plus seed.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
import yaml

from .fading import FadingFamily, FadingSpec, LinkKind, SnrDistribution
from .metrics import (capacity, spectral_efficiency_cr, spectral_efficiency_dr,
                      validate_against_oracle)
from .mud import MudDistribution
from .power import (ConstellationSet, ConstraintMode, ConstraintSpec,
                    solve_cutoff, solve_cutoff_cr, solve_dr_policy)

_MODES = ("osa", "ss")
_AXES = ("p_av_db", "q_av_db", "num_users")


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


@dataclass(frozen=True)
class SweepConfig:
    mode: str
    axis: str
    axis_range: Tuple[float, float, float]          # start, stop, step
    num_users: Tuple[int, ...] = (1,)
    m_values: Tuple[float, ...] = (1.0,)
    p_av_db: float = 0.0
    q_av_db: float = 0.0
    ber_target: float = 1e-3
    constellations: Tuple[int, ...] = (0, 4, 8, 16, 64)
    mc_validate: bool = False
    mc_samples: int = 1_000_000
    seed: int = 0
    output: str = "sweep.csv"

    def __post_init__(self):
        if self.mode not in _MODES:
            raise ValueError(f"mode must be one of {_MODES}, got {self.mode!r}")
        if self.axis not in _AXES:
            raise ValueError(f"axis must be one of {_AXES}, got {self.axis!r}")
        if self.mode == "osa" and self.axis == "q_av_db":
            raise ValueError("the interference axis applies to sharing mode only")
        start, stop, step = self.axis_range
        if step <= 0 or stop < start:
            raise ValueError(f"bad axis_range {self.axis_range}")
        if not self.num_users or any(n < 1 for n in self.num_users):
            raise ValueError(f"num_users must be positive, got {self.num_users}")
        if not self.m_values or any(m < 0.5 for m in self.m_values):
            raise ValueError(f"shape factors must be >= 0.5, got {self.m_values}")
        ConstellationSet(self.constellations, self.ber_target)  # validates both
        if self.mc_samples < 10 ** 5:
            raise ValueError(f"mc_samples must be >= 1e5, got {self.mc_samples}")

    def axis_values(self) -> List[float]:
        start, stop, step = self.axis_range
        n = int(np.floor((stop - start) / step + 1e-9)) + 1
        vals = [start + i * step for i in range(n)]
        if self.axis == "num_users":
            return [int(round(v)) for v in vals]
        return vals


@dataclass
class SweepRow:
    axis_value: float
    ns: int
    m: float
    capacity: Optional[float] = None
    se_cr: Optional[float] = None
    se_dr: Optional[float] = None
    gamma0_cap: Optional[float] = None
    gamma0_cr: Optional[float] = None
    gamma_star_dr: Optional[float] = None
    mc_cap_rel: Optional[float] = None
    mc_cr_rel: Optional[float] = None
    mc_dr_rel: Optional[float] = None
    error: str = ""


@dataclass
class SweepResult:
    config: SweepConfig
    rows: List[SweepRow] = field(default_factory=list)


def _grid(cfg: SweepConfig) -> List[Tuple[float, int, float]]:
    points = []
    for v in cfg.axis_values():
        if cfg.axis == "num_users":
            for m in cfg.m_values:
                points.append((float(v), int(v), m))
        else:
            for ns in cfg.num_users:
                for m in cfg.m_values:
                    points.append((float(v), ns, m))
    return points


def evaluate_point(cfg: SweepConfig, axis_value: float, ns: int, m: float,
                   mc_seed: int = 0) -> SweepRow:
    """Solve the three policies and metrics at one grid point."""
    row = SweepRow(axis_value=axis_value, ns=ns, m=m)
    try:
        p_db = axis_value if cfg.axis == "p_av_db" else cfg.p_av_db
        q_db = axis_value if cfg.axis == "q_av_db" else cfg.q_av_db
        spec = FadingSpec(FadingFamily.NAKAGAMI, db_to_linear(p_db), m)
        if cfg.mode == "osa":
            link = LinkKind.DIRECT
            constraint = ConstraintSpec(ConstraintMode.TRANSMIT_POWER, 1.0)
        else:
            link = LinkKind.RATIO
            budget = db_to_linear(q_db) / db_to_linear(p_db)
            constraint = ConstraintSpec(ConstraintMode.INTERFERENCE_POWER, budget)
        dist = MudDistribution(SnrDistribution(spec, link), ns)
        cset = ConstellationSet(cfg.constellations, cfg.ber_target)

        cut = solve_cutoff(dist, constraint)
        cut_cr = solve_cutoff_cr(dist, constraint, cset.k)
        pol = solve_dr_policy(dist, constraint, cset)

        row.capacity = capacity(dist, cut).value
        row.se_cr = spectral_efficiency_cr(dist, cut_cr, cset.k).value
        row.se_dr = spectral_efficiency_dr(dist, pol, cset).value
        row.gamma0_cap = cut.gamma0
        row.gamma0_cr = cut_cr.gamma0
        row.gamma_star_dr = pol.gamma_star

        if cfg.mc_validate:
            row.mc_cap_rel = validate_against_oracle(
                dist, cut, "capacity", cfg.mc_samples, seed=mc_seed)
            row.mc_cr_rel = validate_against_oracle(
                dist, cut_cr, "se_cr", cfg.mc_samples, seed=mc_seed,
                k=cset.k)
            row.mc_dr_rel = validate_against_oracle(
                dist, pol, "se_dr", cfg.mc_samples, seed=mc_seed, cset=cset)
    except Exception as exc:                 # record, keep sweeping
        row.error = f"{type(exc).__name__}: {exc}"
    return row


def _eval_args(args) -> SweepRow:
    return evaluate_point(*args)


def run_sweep(cfg: SweepConfig, workers: int = 1) -> SweepResult:
    """Evaluate the whole grid; row order is (axis, ns, m) regardless of
    worker scheduling, and per-point oracle streams derive from the config
    seed and the point index only."""
    points = _grid(cfg)
    seeds = np.random.SeedSequence(cfg.seed).generate_state(
        max(len(points), 1), dtype=np.uint64)
    tasks = [(cfg, v, ns, m, int(seeds[i]))
             for i, (v, ns, m) in enumerate(points)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_eval_args, tasks))
    else:
        rows = [_eval_args(t) for t in tasks]
    return SweepResult(config=cfg, rows=rows)


def _fmt(v) -> str:
    if v is None:
        return ""
    return format(v, ".9g")


def csv_header(cfg: SweepConfig) -> List[str]:
    cols = ["axis", "ns", "m", "capacity", "se_cr", "se_dr",
            "gamma0_cap", "gamma0_cr", "gamma_star_dr"]
    if cfg.mc_validate:
        cols += ["mc_cap_rel", "mc_cr_rel", "mc_dr_rel"]
    return cols + ["error"]


def render_csv(res: SweepResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(csv_header(res.config))
    mc = res.config.mc_validate
    for r in res.rows:
        rec = [_fmt(r.axis_value), str(r.ns), _fmt(r.m),
               _fmt(r.capacity), _fmt(r.se_cr), _fmt(r.se_dr),
               _fmt(r.gamma0_cap), _fmt(r.gamma0_cr), _fmt(r.gamma_star_dr)]
        if mc:
            rec += [_fmt(r.mc_cap_rel), _fmt(r.mc_cr_rel), _fmt(r.mc_dr_rel)]
        rec.append(r.error)
        writer.writerow(rec)
    return buf.getvalue()


def emit_csv(res: SweepResult, path: str) -> None:
    """Write the sweep table; one header plus one row per grid point."""
    try:
        with open(path, "w", newline="") as fh:
            fh.write(render_csv(res))
    except OSError as exc:
        raise OSError(f"cannot write sweep output to {path!r}: {exc}") from exc


def load_config(path: str, overrides: Optional[dict] = None) -> SweepConfig:
    """Read a YAML sweep definition; overrides replace top-level keys."""
    try:
        with open(path) as fh:
            raw = yaml.safe_load(fh) or {}
    except OSError as exc:
        raise OSError(f"cannot read sweep config {path!r}: {exc}") from exc
    if overrides:
        raw.update(overrides)
    return config_from_dict(raw)


def config_from_dict(raw: dict) -> SweepConfig:
    known = {
        "mode", "axis", "axis_range", "num_users", "m", "p_av_db", "q_av_db",
        "ber_target", "constellations", "mc_validate", "mc_samples", "seed",
        "output",
    }
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    kwargs = dict(raw)
    if "m" in kwargs:
        kwargs["m_values"] = tuple(float(v) for v in _as_list(kwargs.pop("m")))
    if "num_users" in kwargs:
        kwargs["num_users"] = tuple(int(v) for v in _as_list(kwargs["num_users"]))
    if "axis_range" in kwargs:
        rng = list(kwargs["axis_range"])
        if len(rng) == 2:
            rng.append(1.0)
        if len(rng) != 3:
            raise ValueError(f"axis_range needs [start, stop, step], got {rng}")
        kwargs["axis_range"] = tuple(float(v) for v in rng)
    if "constellations" in kwargs:
        kwargs["constellations"] = tuple(int(v) for v in kwargs["constellations"])
    return SweepConfig(**kwargs)


def _as_list(v):
    if isinstance(v, (list, tuple)):
        return v
    return [v]
