"""Config-driven experiment runner: sweeps, CSV/plot output, rate fits."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from .coeffio import read_config
from .cubature import cbc_search, fibonacci_rule, korobov_rule, random_rule, worst_case_error
from .discretization import estimate_er
from .dyadic import FAMILIES, HOELDER_H, ClassSpec
from .rates import fit_rate

OUT_DIR_ENV = "TORUSDISC_OUT"
CSV_HEADER = "m,rule,family,r,p,metric,value,tail,seed"

RULES = ("fibonacci", "korobov_cbc", "random")
METRICS = ("worst_case", "disc_er")


class ConfigError(ValueError):
    """Invalid experiment config; the message names the offending key."""

    def __init__(self, key, message):
        self.key = key
        super().__init__(f"config key '{key}': {message}")


@dataclass(frozen=True)
class ExperimentConfig:
    """One sweep: a rule family over sizes, a class, a metric, output paths."""

    rule: str
    family: str
    r: float
    p: float = 2.0
    B: float = 1.0
    dim: int = 2
    metric: str = "worst_case"
    index_range: tuple = ()      # fibonacci n values
    m_list: tuple = ()           # korobov_cbc / random sizes
    trunc: int | None = None
    n_samples: int = 100
    block_cap: int = 5
    seed: int = 0
    freeze_b: float | None = None
    label: str = "experiment"
    out_dir: str = "."

    def sweep(self):
        if self.rule == "fibonacci":
            return tuple(self.index_range)
        return tuple(self.m_list)


def _parse_int_list(text):
    out = []
    for part in text.replace(",", " ").split():
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return tuple(out)


def config_from_mapping(raw):
    """Build and validate an ExperimentConfig from a flat string mapping."""
    known = {"rule", "family", "r", "p", "B", "dim", "metric", "index_range",
             "m_list", "trunc", "n_samples", "block_cap", "seed", "freeze_b",
             "label", "out_dir"}
    for key in raw:
        if key not in known:
            raise ConfigError(key, "unknown key")

    def need(key):
        if key not in raw:
            raise ConfigError(key, "missing required key")
        return raw[key]

    rule = need("rule")
    if rule not in RULES:
        raise ConfigError("rule", f"must be one of {RULES}")
    family = need("family")
    if family not in FAMILIES:
        raise ConfigError("family", f"must be one of {FAMILIES}")
    metric = raw.get("metric", "worst_case")
    if metric not in METRICS:
        raise ConfigError("metric", f"must be one of {METRICS}")

    def number(key, default=None, cast=float):
        if key not in raw:
            if default is None:
                raise ConfigError(key, "missing required key")
            return default
        try:
            return cast(raw[key])
        except ValueError as exc:
            raise ConfigError(key, str(exc)) from None

    index_range = _parse_int_list(raw.get("index_range", ""))
    m_list = _parse_int_list(raw.get("m_list", ""))
    if rule == "fibonacci" and not index_range:
        raise ConfigError("index_range", "required for the fibonacci rule")
    if rule != "fibonacci" and not m_list:
        raise ConfigError("m_list", "required for korobov_cbc / random rules")

    cfg = ExperimentConfig(
        rule=rule, family=family,
        r=number("r"), p=number("p", 2.0), B=number("B", 1.0),
        dim=number("dim", 2, int), metric=metric,
        index_range=index_range, m_list=m_list,
        trunc=(int(raw["trunc"]) if "trunc" in raw else None),
        n_samples=number("n_samples", 100, int),
        block_cap=number("block_cap", 5, int),
        seed=number("seed", 0, int),
        freeze_b=(float(raw["freeze_b"]) if "freeze_b" in raw else None),
        label=raw.get("label", "experiment"),
        out_dir=raw.get("out_dir", os.environ.get(OUT_DIR_ENV, ".")),
    )
    spec_family = HOELDER_H if cfg.metric == "disc_er" else cfg.family
    try:
        ClassSpec(spec_family, cfg.r, cfg.p, cfg.B)
    except ValueError as exc:
        raise ConfigError("r", str(exc)) from None
    if cfg.metric == "disc_er" and cfg.r <= 1.0 / cfg.p:
        raise ConfigError("r", "disc_er sampling requires r > 1/p")
    if cfg.rule == "korobov_cbc" and cfg.r <= 1.0:
        raise ConfigError("r", "the CBC dual-sum objective requires r > 1")
    return cfg


def load_config(path):
    with open(path, encoding="utf-8") as fh:
        return config_from_mapping(read_config(fh))


def _build_rule(cfg, size):
    if cfg.rule == "fibonacci":
        rule = fibonacci_rule(size)
        return rule, f"fibonacci({size})"
    if cfg.rule == "korobov_cbc":
        a = cbc_search(size, cfg.dim, cfg.r, trunc=cfg.trunc)
        return korobov_rule(size, a), f"korobov_cbc({size})"
    rule = random_rule(size, cfg.dim, np.random.SeedSequence([cfg.seed, size]))
    return rule, f"random({size})"


def _cell_value(cfg, rule):
    if cfg.metric == "worst_case":
        spec = ClassSpec(cfg.family, cfg.r, cfg.p, cfg.B)
        rep = worst_case_error(rule, spec, trunc=cfg.trunc)
        return rep.value, rep.tail
    spec = ClassSpec(HOELDER_H, cfg.r, cfg.p, cfg.B)
    rep = estimate_er(rule.nodes, spec, cfg.n_samples, cfg.seed,
                      block_cap=cfg.block_cap, weights=rule.weights)
    return rep.empirical_sup, 0.0


@dataclass(frozen=True)
class ExperimentResult:
    config: ExperimentConfig
    rows: tuple
    fit: object | None
    csv_path: str
    plot_path: str


def run_experiment(cfg, out=print):
    """Execute the sweep, write CSV and plot files, print the rate fit."""
    rows = []
    for size in cfg.sweep():
        rule, name = _build_rule(cfg, size)
        value, tail = _cell_value(cfg, rule)
        rows.append((rule.m, name, cfg.family, cfg.r, cfg.p, cfg.metric,
                     value, tail, cfg.seed))

    os.makedirs(cfg.out_dir, exist_ok=True)
    csv_path = os.path.join(cfg.out_dir, f"{cfg.label}.csv")
    with open(csv_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(CSV_HEADER + "\n")
        for row in rows:
            fh.write(",".join(repr(x) if isinstance(x, float) else str(x)
                              for x in row) + "\n")

    plot_path = os.path.join(cfg.out_dir, f"{cfg.label}.svg")
    _write_plot(rows, cfg, plot_path)

    fit = None
    ms = [row[0] for row in rows]
    errs = [row[6] for row in rows]
    if len(rows) >= 4 and all(e > 0 for e in errs) and min(ms) >= 3:
        fit = fit_rate(list(zip(ms, errs)), freeze_b=cfg.freeze_b)
        out(f"{cfg.label}: {fit.summary()}")
    else:
        out(f"{cfg.label}: {len(rows)} rows (no rate fit)")
    out(f"wrote {csv_path} and {plot_path}")
    return ExperimentResult(cfg, tuple(rows), fit, csv_path, plot_path)


def _write_plot(rows, cfg, path):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ms = [row[0] for row in rows]
    errs = [row[6] for row in rows]
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.loglog(ms, errs, "o-", label=f"{cfg.rule} / {cfg.family}")
    ax.set_xlabel("m")
    ax.set_ylabel(cfg.metric)
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def read_result_csv(path):
    """Parse a runner CSV back into (header, rows with numeric fields)."""
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {header!r}")
        rows = []
        for line in fh:
            m, name, family, r, p, metric, value, tail, seed = line.strip().split(",")
            rows.append((int(m), name, family, float(r), float(p), metric,
                         float(value), float(tail), int(seed)))
    return rows
