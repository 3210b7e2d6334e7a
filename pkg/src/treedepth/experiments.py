"""Seeded experiment harness for the random-graph tree-depth regimes.

Each trial draws its graph from a seed mixed from (base seed, regime, n,
trial index), so adding n values or trials never perturbs existing rows.
Records are written as CSV with a ``# schema=1`` comment line.
"""

from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from typing import Optional

from . import census as census_mod
from .elimination import general_upper_bound, greedy_heuristic
from .expansion import (
    cheeger_exact,
    dense_separator_tail,
    dense_threshold,
    lambda2_estimate,
    tw_lower_from_expansion,
    vertex_expansion_exact,
)
from .graph import Graph, connected_components, diameter, eccentricity_sweep
from .models import (
    RandomSeed,
    mix_seed,
    sample_gnp,
    sample_labeled_tree,
    sample_regular,
    sparse_p,
)
from .solvers import EXACT_DIAMETER_LIMIT, td_lower_bound_path, treedepth_exact, treewidth_exact

__all__ = [
    "REGIMES",
    "ExperimentConfig",
    "ExperimentRecord",
    "ConfigError",
    "trial_seed",
    "run_trial",
    "run_experiment",
    "run_dense",
    "run_sparse",
    "run_regular",
    "run_tree_stats",
    "records_to_csv",
    "median",
]

SCHEMA = 1
REGIMES = ("dense", "sparse_sub", "sparse_crit", "sparse_super", "regular", "tree_stats")
SPARSE_REGIMES = ("sparse_sub", "sparse_crit", "sparse_super")


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    regime: str
    n_values: list
    trials: int = 1
    seed: int = 0
    p: Optional[float] = None
    c: Optional[float] = None
    d: Optional[int] = None
    td_limit: int = 20
    tw_limit: int = 18
    enum_limit: int = 24
    greedy_limit: int = 2000
    window_a: float = 10.0
    margin: float = 0.1
    workers: int = 1
    timing: bool = False
    output: Optional[str] = None

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.regime not in REGIMES:
            raise ConfigError(f"unknown regime {self.regime!r}; expected one of {REGIMES}")
        if self.trials < 1:
            raise ConfigError("trials must be at least 1")
        if not self.n_values:
            raise ConfigError("need at least one n value")
        if list(self.n_values) != sorted(self.n_values):
            raise ConfigError("n values must be sorted ascending")
        if self.regime == "dense":
            if self.p is None or not 0.0 < self.p <= 1.0:
                raise ConfigError("dense regime needs 0 < p <= 1")
            if max(self.n_values) > self.td_limit:
                raise ConfigError(f"dense regime runs the exact solver; n must be <= {self.td_limit}")
        if self.regime in SPARSE_REGIMES:
            if self.c is None or self.c <= 0:
                raise ConfigError("sparse regimes need c > 0")
            want = {"sparse_sub": self.c < 1, "sparse_crit": self.c == 1,
                    "sparse_super": self.c > 1}[self.regime]
            if not want:
                raise ConfigError(f"c={self.c} does not belong to regime {self.regime}")
            if self.c > min(self.n_values):
                raise ConfigError("c must not exceed n")
        if self.regime == "regular":
            if self.d is None or self.d < 1:
                raise ConfigError("regular regime needs d >= 1")
            for n in self.n_values:
                if (n * self.d) % 2 or self.d >= n:
                    raise ConfigError(f"no simple {self.d}-regular graph on {n} vertices")
                if n > self.enum_limit:
                    raise ConfigError(f"regular regime enumerates subsets; n must be <= {self.enum_limit}")

    @classmethod
    def from_text(cls, text: str) -> "ExperimentConfig":
        """Parse flat ``key=value`` lines; ``#`` starts a comment."""
        raw = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            raw[key.lower()] = value
        return cls.from_mapping(raw)

    @classmethod
    def from_mapping(cls, raw: dict) -> "ExperimentConfig":
        raw = dict(raw)
        if "n" in raw:
            raw["n_values"] = raw.pop("n")
        if "a" in raw:
            raw["window_a"] = raw.pop("a")
        known = {f.name: f for f in fields(cls)}
        kwargs = {}
        for key, value in raw.items():
            if key not in known:
                raise ConfigError(f"unknown config key {key!r}")
            try:
                kwargs[key] = _coerce(key, value)
            except ValueError as exc:
                raise ConfigError(f"bad value for {key}: {value!r}") from exc
        if "regime" not in kwargs or "n_values" not in kwargs:
            raise ConfigError("config needs regime and n")
        return cls(**kwargs)


_INTS = {"trials", "seed", "d", "td_limit", "tw_limit", "enum_limit", "greedy_limit", "workers"}
_FLOATS = {"p", "c", "window_a", "margin"}


def _coerce(key, value):
    if not isinstance(value, str):
        return value
    if key == "n_values":
        return [int(float(x)) for x in value.replace(",", " ").split()]
    if key in _INTS:
        return int(value)
    if key in _FLOATS:
        if "/" in value:
            num, den = value.split("/")
            return float(num) / float(den)
        return float(value)
    if key == "timing":
        return value.lower() in ("1", "true", "yes", "on")
    return value


@dataclass
class ExperimentRecord:
    regime: str
    n: int
    trial: int
    seed: int
    param: float
    m: Optional[int] = None
    n_c: Optional[int] = None
    ell_max: Optional[int] = None
    diam_largest: Optional[int] = None
    diam_exact: Optional[int] = None
    td_exact: Optional[int] = None
    td_upper: Optional[int] = None
    td_lower: Optional[int] = None
    tw_exact: Optional[int] = None
    tw_lower: Optional[int] = None
    deficiency: Optional[int] = None
    tail_f: Optional[float] = None
    tail_bound: Optional[float] = None
    lemma_bound: Optional[int] = None
    ratio_loglog: Optional[float] = None
    ratio_log: Optional[float] = None
    ratio_lin: Optional[float] = None
    phi: Optional[float] = None
    alpha: Optional[float] = None
    lambda2: Optional[float] = None
    spectral_bound: Optional[float] = None
    tree_height: Optional[int] = None
    tree_diameter: Optional[int] = None
    wall_time: Optional[float] = field(default=None, compare=False)

    def bounds_consistent(self) -> bool:
        pairs = [(self.td_lower, self.td_exact), (self.td_exact, self.td_upper),
                 (self.td_lower, self.td_upper), (self.tw_lower, self.tw_exact)]
        return all(a <= b for a, b in pairs if a is not None and b is not None)


def trial_seed(base: int, regime: str, n: int, trial: int) -> RandomSeed:
    return RandomSeed(mix_seed(base, regime, n), trial)


def _record(cfg, n, trial, seed, param) -> ExperimentRecord:
    return ExperimentRecord(cfg.regime, n, trial, seed.state(), param)


def _td_fields(rec: ExperimentRecord, g: Graph, cfg: ExperimentConfig) -> None:
    comps = connected_components(g)
    largest = max((c.order for c in comps), default=0)
    if largest <= cfg.td_limit:
        rec.td_exact = treedepth_exact(g, limit=cfg.td_limit).value
    upper = general_upper_bound(g)[0].height()
    if g.n <= cfg.greedy_limit:
        upper = min(upper, greedy_heuristic(g).height())
    rec.td_upper = upper
    rec.td_lower = td_lower_bound_path(g)


def _dense_trial(cfg, n, trial, seed):
    rec = _record(cfg, n, trial, seed, cfg.p)
    g = sample_gnp(n, cfg.p, seed)
    rec.m = g.m
    _td_fields(rec, g, cfg)
    rec.deficiency = n - rec.td_exact
    f = dense_threshold(cfg.p * n) * (1.0 + cfg.margin)
    rec.tail_f = f
    rec.tail_bound = dense_separator_tail(n, cfg.p, f)
    return rec


def _sparse_trial(cfg, n, trial, seed):
    rec = _record(cfg, n, trial, seed, cfg.c)
    g = sample_gnp(n, sparse_p(n, cfg.c), seed)
    rec.m = g.m
    cen = census_mod.classify(g)
    rec.n_c = cen.largest_order
    rec.ell_max = cen.max_excess
    comps = connected_components(g)
    big = min((c for c in comps if c.order == rec.n_c), key=lambda c: min(c.vertices))
    if big.order <= EXACT_DIAMETER_LIMIT:
        rec.diam_largest, rec.diam_exact = diameter(g, big.vertices), 1
    else:
        rec.diam_largest, rec.diam_exact = eccentricity_sweep(g, big.vertices), 0
    _td_fields(rec, g, cfg)
    if rec.ell_max <= 0:
        rec.lemma_bound = rec.n_c.bit_length() - 1 + 2
    td = rec.td_exact if rec.td_exact is not None else rec.td_upper
    lg = math.log2(n)
    if lg > 1:
        rec.ratio_loglog = td / math.log2(lg) if lg > 2 else None
        rec.ratio_log = td / lg
    rec.ratio_lin = td / n
    return rec


def _regular_trial(cfg, n, trial, seed):
    rec = _record(cfg, n, trial, seed, cfg.d)
    g = sample_regular(n, cfg.d, seed)
    rec.m = g.m
    connected = len(connected_components(g)) == 1
    if connected:
        phi = cheeger_exact(g, limit=cfg.enum_limit)
        alpha = vertex_expansion_exact(g, limit=cfg.enum_limit)
        spec = lambda2_estimate(g)
        rec.phi = float(phi.value)
        rec.alpha = float(alpha.value)
        rec.lambda2 = spec.lambda2
        rec.spectral_bound = spec.conductance_bound
        rec.tw_lower = tw_lower_from_expansion(alpha.value, n)
    else:
        # a component of size <= n/2 has no boundary: expansion is 0
        rec.phi = rec.alpha = 0.0
        rec.tw_lower = 0
    if n <= cfg.tw_limit:
        rec.tw_exact = treewidth_exact(g, limit=cfg.tw_limit).value
    _td_fields(rec, g, cfg)
    return rec


def _tree_trial(cfg, n, trial, seed):
    rec = _record(cfg, n, trial, seed, n)
    t = sample_labeled_tree(n, seed)
    stats = census_mod.tree_height_and_diameter(t, 0)
    rec.m = t.m
    rec.tree_height = stats.height
    rec.tree_diameter = stats.diameter
    return rec


_TRIALS = {
    "dense": _dense_trial,
    "sparse_sub": _sparse_trial,
    "sparse_crit": _sparse_trial,
    "sparse_super": _sparse_trial,
    "regular": _regular_trial,
    "tree_stats": _tree_trial,
}


def run_trial(cfg: ExperimentConfig, n: int, trial: int) -> ExperimentRecord:
    seed = trial_seed(cfg.seed, cfg.regime, n, trial)
    start = time.perf_counter()
    rec = _TRIALS[cfg.regime](cfg, n, trial, seed)
    rec.wall_time = time.perf_counter() - start
    return rec


def _run_task(args):
    cfg, n, trial = args
    return run_trial(cfg, n, trial)


def run_experiment(cfg: ExperimentConfig) -> list[ExperimentRecord]:
    """All (n, trial) points in ascending order, optionally on a process pool."""
    cfg.validate()
    tasks = [(cfg, n, t) for n in cfg.n_values for t in range(cfg.trials)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            return list(pool.map(_run_task, tasks, chunksize=1))
    return [_run_task(t) for t in tasks]


def run_dense(cfg: ExperimentConfig) -> list[ExperimentRecord]:
    if cfg.regime != "dense":
        raise ConfigError("run_dense needs regime=dense")
    return run_experiment(cfg)


def run_sparse(cfg: ExperimentConfig) -> list[ExperimentRecord]:
    if cfg.regime not in SPARSE_REGIMES:
        raise ConfigError("run_sparse needs a sparse_* regime")
    return run_experiment(cfg)


def run_regular(cfg: ExperimentConfig) -> list[ExperimentRecord]:
    if cfg.regime != "regular":
        raise ConfigError("run_regular needs regime=regular")
    return run_experiment(cfg)


def run_tree_stats(cfg: ExperimentConfig) -> list[ExperimentRecord]:
    if cfg.regime != "tree_stats":
        raise ConfigError("run_tree_stats needs regime=tree_stats")
    return run_experiment(cfg)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".10g")
    return str(value)


def records_to_csv(records: list[ExperimentRecord], timing: bool = False) -> str:
    """CSV text; ``wall_time`` is only included when ``timing`` is set, since
    it would break byte-for-byte reproducibility."""
    names = [f.name for f in fields(ExperimentRecord)]
    if not timing:
        names.remove("wall_time")
    buf = io.StringIO()
    buf.write(f"# schema={SCHEMA}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(names)
    for rec in records:
        row = asdict(rec)
        writer.writerow([_fmt(row[k]) for k in names])
    return buf.getvalue()


def median(values) -> float:
    vals = sorted(v for v in values if v is not None)
    if not vals:
        raise ValueError("median of empty sequence")
    mid = len(vals) // 2
    return float(vals[mid]) if len(vals) % 2 else (vals[mid - 1] + vals[mid]) / 2.0
