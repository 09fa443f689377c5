"""Seeded Monte Carlo sweeps over (n, m) cells for both matching problems.

Every trial derives its seed by folding (master_seed, n, m, trial, stream)
through splitmix64, so tallies depend only on the configuration, never on
scheduling or worker count.  Budget-exceeded trials are tallied as unknowns
and excluded from the success estimate; a sweep where any cell has more than
5% unknowns is flagged invalid, because the transition statements concern
true existence rather than solver give-ups.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

from .errors import InvalidInputError, ParameterError
from .graphs import EdgeLaw, sample_gnp
from .isosearch import BUDGET_EXCEEDED, FOUND, common_exists, embed_exists
from .rng import fold_seed
from .thresholds import derive_params, m_star

PROBLEM_EMBED = "embed"
PROBLEM_COMMON = "common"

CSV_COLUMNS = (
    "problem,n,m,p,q,trials,successes,unknowns,"
    "p_hat,ci_low,ci_high,mean_nodes,wall_ms,master_seed"
)

MAX_UNKNOWN_SHARE = 0.05
WILSON_Z = 1.96  # 95% interval


@dataclass(frozen=True)
class ExperimentConfig:
    problem: str
    n_values: tuple[int, ...]
    p: float
    q: float
    trials: int = 200
    master_seed: int = 0
    workers: int = 1
    node_budget: int = 10**8
    m_values: Optional[tuple[int, ...]] = None
    m_offsets: Optional[tuple[int, ...]] = None
    csv_path: Optional[str] = None
    jsonl_path: Optional[str] = None
    q_overridden: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.problem not in (PROBLEM_EMBED, PROBLEM_COMMON):
            raise InvalidInputError(f"unknown problem {self.problem!r}")
        if self.trials < 1:
            raise InvalidInputError("need at least one trial per cell")
        if not (0.0 < self.p < 1.0) or not (0.0 < self.q < 1.0):
            raise InvalidInputError("p and q must lie strictly in (0, 1)")
        if not self.n_values:
            raise InvalidInputError("n_values must be nonempty")
        if (self.m_values is None) == (self.m_offsets is None):
            raise InvalidInputError("give exactly one of m_values / m_offsets")
        if self.workers < 1:
            raise InvalidInputError("workers must be >= 1")
        if self.node_budget < 1:
            raise InvalidInputError("node_budget must be >= 1")

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"config is not valid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise InvalidInputError("config must be a JSON object")
        problem = raw.get("problem")
        q_default = 0.5
        q = raw.get("q", q_default)
        q_overridden = problem == PROBLEM_EMBED and q != 0.5
        known = {
            "problem", "n_values", "m_values", "m_offsets", "p", "q",
            "trials", "master_seed", "workers", "node_budget",
            "csv_path", "jsonl_path",
        }
        unknown = set(raw) - known
        if unknown:
            raise InvalidInputError(f"unknown config keys: {sorted(unknown)}")
        return cls(
            problem=problem,
            n_values=tuple(raw.get("n_values", ())),
            p=raw.get("p", 0.5),
            q=q,
            trials=raw.get("trials", 200),
            master_seed=raw.get("master_seed", 0),
            workers=raw.get("workers", 1),
            node_budget=raw.get("node_budget", 10**8),
            m_values=tuple(raw["m_values"]) if "m_values" in raw else None,
            m_offsets=tuple(raw["m_offsets"]) if "m_offsets" in raw else None,
            csv_path=raw.get("csv_path"),
            jsonl_path=raw.get("jsonl_path"),
            q_overridden=q_overridden,
        )

    def resolve_m_values(self, n: int) -> list[int]:
        """Explicit sizes, or offsets applied to the theoretical center."""
        if self.m_values is not None:
            sizes = list(self.m_values)
        else:
            if self.problem == PROBLEM_EMBED:
                center = round(2.0 * math.log(n) / math.log(2.0) + 1.0)
            else:
                root, _, _ = m_star(n, derive_params(self.p, self.q))
                center = round(root)
            sizes = [center + off for off in self.m_offsets]
        sizes = [m for m in sizes if 0 <= m <= n]
        if not sizes:
            raise InvalidInputError(f"no feasible m values for n={n}")
        return sorted(set(sizes))


@dataclass(frozen=True)
class CellResult:
    problem: str
    n: int
    m: int
    p: float
    q: float
    trials: int
    successes: int
    unknowns: int
    p_hat: float
    ci_low: float
    ci_high: float
    mean_nodes: float
    wall_ms: int
    master_seed: int

    @property
    def failures(self) -> int:
        return self.trials - self.successes - self.unknowns

    def as_dict(self) -> dict:
        return {
            "problem": self.problem,
            "n": self.n,
            "m": self.m,
            "p": self.p,
            "q": self.q,
            "trials": self.trials,
            "successes": self.successes,
            "unknowns": self.unknowns,
            "p_hat": self.p_hat,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "mean_nodes": self.mean_nodes,
            "wall_ms": self.wall_ms,
            "master_seed": self.master_seed,
        }


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[CellResult, ...]
    empirical_thresholds: dict[int, Optional[float]]
    invalid: bool
    config: ExperimentConfig


def estimate_probability(successes: int, trials: int) -> tuple[float, float, float]:
    """Wilson 95% interval: (p_hat, ci_low, ci_high)."""
    if not 0 <= successes <= trials:
        raise ParameterError("need 0 <= successes <= trials")
    if trials == 0:
        return float("nan"), 0.0, 1.0
    z = WILSON_Z
    phat = successes / trials
    denom = trials + z * z
    center = (successes + z * z / 2.0) / denom
    half = z * math.sqrt(successes * (trials - successes) / trials + z * z / 4.0) / denom
    return phat, max(0.0, center - half), min(1.0, center + half)


def locate_empirical_threshold(rows: Sequence[CellResult]) -> Optional[float]:
    """m of the first downward 1/2-crossing of p_hat, linearly interpolated.

    Rows must be sorted by m (one n).  Returns None when the estimated curve
    never crosses 1/2 downward.
    """
    for a, b in zip(rows, rows[1:]):
        pa, pb = a.p_hat, b.p_hat
        if math.isnan(pa) or math.isnan(pb):
            continue
        if pa >= 0.5 > pb:
            return a.m + (pa - 0.5) * (b.m - a.m) / (pa - pb)
    return None


def _run_cell(config: ExperimentConfig, n: int, m: int) -> CellResult:
    successes = 0
    unknowns = 0
    total_nodes = 0
    start = time.perf_counter()
    for t in range(config.trials):
        x_seed = fold_seed(config.master_seed, n, m, t, 0)
        y_seed = fold_seed(config.master_seed, n, m, t, 1)
        if config.problem == PROBLEM_EMBED:
            x = sample_gnp(EdgeLaw(m, config.p, x_seed))
            y = sample_gnp(EdgeLaw(n, config.q, y_seed))
            outcome = embed_exists(x, y, config.node_budget)
        else:
            x = sample_gnp(EdgeLaw(n, config.p, x_seed))
            y = sample_gnp(EdgeLaw(n, config.q, y_seed))
            outcome = common_exists(x, y, m, config.node_budget)
        total_nodes += outcome.nodes
        if outcome.status == FOUND:
            successes += 1
        elif outcome.status == BUDGET_EXCEEDED:
            unknowns += 1
    wall_ms = int(round((time.perf_counter() - start) * 1000.0))
    determined = config.trials - unknowns
    p_hat, ci_low, ci_high = estimate_probability(successes, determined)
    return CellResult(
        config.problem, n, m, config.p, config.q, config.trials,
        successes, unknowns, p_hat, ci_low, ci_high,
        total_nodes / config.trials, wall_ms, config.master_seed,
    )


def run_sweep(config: ExperimentConfig) -> SweepResult:
    """Run every (n, m) cell; deterministic tallies regardless of workers."""
    cells = [(n, m) for n in config.n_values for m in config.resolve_m_values(n)]
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            rows = list(pool.map(lambda c: _run_cell(config, *c), cells))
    else:
        rows = [_run_cell(config, n, m) for n, m in cells]
    rows.sort(key=lambda row: (row.n, row.m))
    thresholds = {}
    for n in config.n_values:
        per_n = [row for row in rows if row.n == n]
        thresholds[n] = locate_empirical_threshold(per_n)
    invalid = any(row.unknowns > MAX_UNKNOWN_SHARE * row.trials for row in rows)
    return SweepResult(tuple(rows), thresholds, invalid, config)


def _csv_cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def export(result: SweepResult, fmt: str, path: str) -> None:
    """Write rows as CSV (fixed column order) or JSONL (one object per line)."""
    if fmt == "csv":
        lines = [CSV_COLUMNS]
        for row in result.rows:
            d = row.as_dict()
            lines.append(",".join(_csv_cell(d[key]) for key in CSV_COLUMNS.split(",")))
        payload = "\n".join(lines) + "\n"
    elif fmt == "jsonl":
        payload = "".join(json.dumps(row.as_dict()) + "\n" for row in result.rows)
    else:
        raise InvalidInputError(f"unknown export format {fmt!r}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(payload)


def parse_csv(text: str) -> list[dict]:
    """Inverse of the CSV export, for round-trip checks."""
    lines = [ln for ln in text.splitlines() if ln]
    if not lines or lines[0] != CSV_COLUMNS:
        raise InvalidInputError("unexpected CSV header")
    keys = CSV_COLUMNS.split(",")
    out = []
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != len(keys):
            raise InvalidInputError(f"bad CSV row: {ln!r}")
        row = dict(zip(keys, parts))
        for key in ("n", "m", "trials", "successes", "unknowns", "wall_ms", "master_seed"):
            row[key] = int(row[key])
        for key in ("p", "q", "p_hat", "ci_low", "ci_high", "mean_nodes"):
            row[key] = float(row[key])
        out.append(row)
    return out
