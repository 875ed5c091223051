"""Seeded operator generators, registry sweeps and report files.

A sweep runs ``trials`` independent trials. Trial ``t`` draws everything from
its own stream seeded by ``splitmix64(seed, t + 1)``, so trials can run in any
order or in parallel without changing a single bit of the output.
"""

from __future__ import annotations

import csv
import json
import math
import os
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ConfigError, NumradError, ReportIOError
from .inequalities import CheckParams, Workspace, build_plan, default_grid, resolve, run_plan
from .linalg import classify, hermitian_part, operator_norm
from .rng import MASK64, SplitMix64, splitmix64

__all__ = [
    "OPERATOR_CLASSES",
    "DEFAULT_SCENARIOS",
    "CSV_COLUMNS",
    "generate",
    "class_predicate",
    "FuzzConfig",
    "ReportRow",
    "FuzzReport",
    "run_sweep",
    "summarize",
    "write_report",
    "read_report",
    "thread_count",
]

OPERATOR_CLASSES = (
    "ginibre",
    "hermitian",
    "psd",
    "psd_invertible",
    "unitary",
    "normal",
    "nilpotent",
    "hermitian_invertible",
    "rank_deficient",
    "contraction",
)

# (class_A, class_B, class_X), cycled over trials
DEFAULT_SCENARIOS = (
    ("ginibre", "ginibre", "ginibre"),
    ("hermitian", "hermitian", "ginibre"),
    ("psd", "psd", "ginibre"),
    ("psd_invertible", "psd_invertible", "ginibre"),
    ("unitary", "unitary", "ginibre"),
    ("normal", "normal", "ginibre"),
    ("nilpotent", "nilpotent", "ginibre"),
    ("hermitian_invertible", "hermitian_invertible", "ginibre"),
    ("rank_deficient", "rank_deficient", "contraction"),
    ("contraction", "contraction", "ginibre"),
    ("psd", "rank_deficient", "nilpotent"),
    ("hermitian_invertible", "hermitian_invertible", "unitary"),
    ("normal", "ginibre", "hermitian"),
    ("rank_deficient", "psd_invertible", "ginibre"),
)

CSV_COLUMNS = (
    "trial",
    "checker_id",
    "link",
    "dim",
    "class_A",
    "class_B",
    "class_X",
    "r",
    "p",
    "q",
    "alpha",
    "s",
    "n_power",
    "lhs",
    "rhs",
    "slack",
    "satisfied",
    "tolerance",
    "sub_seed",
)

PARAM_COLUMNS = ("r", "p", "q", "alpha", "s", "n_power")
CLASS_TOL = 1e-10


# ---------------------------------------------------------------------------
# generators


def _unitary(stream: SplitMix64, n: int) -> np.ndarray:
    Q, R = np.linalg.qr(stream.complex_normal((n, n)))
    d = np.diag(R)
    return Q * (d / np.abs(d))  # phase-fixed diagonal of R gives a Haar sample


def _psd(stream: SplitMix64, n: int) -> np.ndarray:
    G = stream.complex_normal((n, n))
    return hermitian_part(G.conj().T @ G / n)


def generate(tag: str, n: int, stream: SplitMix64) -> np.ndarray:
    """Random ``n x n`` matrix of operator class ``tag`` drawn from ``stream``.

    Parameters
    ----------
    tag : str
        One of :data:`OPERATOR_CLASSES`.
    n : int
        Dimension, at least 1.
    stream : SplitMix64
        Source of randomness; advanced by the draw.

    Returns
    -------
    numpy.ndarray
        Complex matrix. Self-adjoint classes are exactly Hermitian in
        floating point.
    """
    n = int(n)
    if n < 1:
        raise ConfigError(f"dimension must be at least 1, got {n}")
    if tag == "ginibre":
        return stream.complex_normal((n, n))
    if tag == "hermitian":
        G = stream.complex_normal((n, n))
        return (G + G.conj().T) / 2
    if tag == "psd":
        return _psd(stream, n)
    if tag == "psd_invertible":
        return _psd(stream, n) + 0.1 * np.eye(n)
    if tag == "unitary":
        return _unitary(stream, n)
    if tag == "normal":
        U = _unitary(stream, n)
        z = stream.complex_normal(n)
        return (U * z) @ U.conj().T
    if tag == "nilpotent":
        return np.triu(stream.complex_normal((n, n)), 1)
    if tag == "hermitian_invertible":
        V = _unitary(stream, n)
        u = stream.uniform(2 * n)
        lam = (0.1 + 0.9 * u[:n]) * np.where(u[n:] < 0.5, -1.0, 1.0)
        return hermitian_part((V * lam) @ V.conj().T)
    if tag == "rank_deficient":
        w, V = np.linalg.eigh(_psd(stream, n))
        w[: n // 2] = 0.0  # ascending order: zero the smallest half
        return hermitian_part((V * w) @ V.conj().T)
    if tag == "contraction":
        G = stream.complex_normal((n, n))
        return G * (0.9 / operator_norm(G))
    raise ConfigError(f"unknown operator class {tag!r}")


def class_predicate(tag: str, A: np.ndarray, tol: float = CLASS_TOL) -> bool:
    """Whether ``A`` passes the structural test of class ``tag``."""
    fl = classify(A, tol)
    n = A.shape[0]
    scale = max(1.0, operator_norm(A))
    if tag == "ginibre":
        return True
    if tag == "hermitian":
        return "hermitian" in fl
    if tag == "psd":
        return "psd" in fl
    if tag == "psd_invertible":
        return {"psd", "invertible"} <= fl
    if tag == "unitary":
        return "unitary" in fl
    if tag == "normal":
        return "normal" in fl
    if tag == "nilpotent":
        return operator_norm(np.linalg.matrix_power(A, n)) <= tol * scale**n
    if tag == "hermitian_invertible":
        smin = float(np.linalg.svd(A, compute_uv=False)[-1])
        return "hermitian" in fl and smin >= 0.1 - tol
    if tag == "rank_deficient":
        return "psd" in fl and (n < 2 or "invertible" not in fl)
    if tag == "contraction":
        return operator_norm(A) <= 0.9 + tol
    raise ConfigError(f"unknown operator class {tag!r}")


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class FuzzConfig:
    """Sweep configuration.

    ``scenarios`` lists the ``(class_A, class_B, class_X)`` assignments;
    trial ``t`` uses scenario ``t mod len(scenarios)`` and dimension
    ``dims[t mod len(dims)]``.
    """

    trials: int = 1000
    dims: tuple[int, ...] = tuple(range(2, 17))
    scenarios: tuple[tuple[str, str, str], ...] = DEFAULT_SCENARIOS
    param_grid: tuple[CheckParams, ...] = field(default_factory=lambda: tuple(default_grid()))
    seed: int = 0
    tol: float = 1e-8
    checker_filter: tuple[str, ...] | None = None

    def __post_init__(self):
        if isinstance(self.trials, bool) or not isinstance(self.trials, (int, np.integer)):
            raise ConfigError("trials must be an integer")
        if self.trials < 1:
            raise ConfigError(f"trials must be at least 1, got {self.trials}")
        if not self.dims:
            raise ConfigError("dims must be nonempty")
        if any(int(d) != d or d < 1 for d in self.dims):
            raise ConfigError(f"dims must be integers >= 1, got {list(self.dims)}")
        if not self.param_grid:
            raise ConfigError("param_grid must be nonempty")
        if not self.scenarios:
            raise ConfigError("scenarios must be nonempty")
        for sc in self.scenarios:
            if len(sc) != 3 or any(t not in OPERATOR_CLASSES for t in sc):
                raise ConfigError(f"bad class assignment {sc!r}")
        if not 0 <= int(self.seed) <= MASK64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if not (math.isfinite(self.tol) and self.tol > 0):
            raise ConfigError(f"tol must be positive, got {self.tol}")
        if self.checker_filter is not None:
            if not self.checker_filter:
                raise ConfigError("checker filter must name at least one checker")
            try:
                for cid in self.checker_filter:
                    resolve(cid)
            except NumradError as exc:
                raise ConfigError(str(exc)) from None


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class ReportRow:
    trial: int
    checker_id: str
    link: str
    dim: int
    class_A: str
    class_B: str
    class_X: str
    r: float | None
    p: float | None
    q: float | None
    alpha: float | None
    s: float | None
    n_power: int | None
    lhs: float
    rhs: float
    slack: float
    satisfied: bool
    tolerance: float
    sub_seed: int
    grid_index: int = 0


@dataclass
class FuzzReport:
    rows: list[ReportRow]
    summary: dict[str, dict]
    notes: list[str] = field(default_factory=list)

    @property
    def violations(self) -> int:
        return sum(s["violations"] for s in self.summary.values())


def summarize(rows: Iterable[ReportRow]) -> dict[str, dict]:
    """Per-checker ``{count, min_slack, median_slack, violations}``, ordered by id."""
    slacks: dict[str, list[float]] = {}
    bad: dict[str, int] = {}
    for row in rows:
        slacks.setdefault(row.checker_id, []).append(row.slack)
        bad[row.checker_id] = bad.get(row.checker_id, 0) + (not row.satisfied)
    return {
        cid: {
            "count": len(v),
            "min_slack": min(v),
            "median_slack": statistics.median(v),
            "violations": bad[cid],
        }
        for cid, v in sorted(slacks.items())
    }


# ---------------------------------------------------------------------------
# sweeps


def _draw_bundle(classes, n: int, stream: SplitMix64) -> dict:
    A = generate(classes[0], n, stream)
    B = generate(classes[1], n, stream)
    X = generate(classes[2], n, stream)
    x = stream.unit_vector(n)
    u = stream.complex_normal(n)
    v = stream.complex_normal(n)
    e = stream.unit_vector(n)
    a, b = 2.0 * np.abs(stream.normal(2))
    return {"A": A, "B": B, "X": X, "x": x, "u": u, "v": v, "e": e, "a": a, "b": b}


def _run_trial(config: FuzzConfig, plan, trial: int) -> tuple[list[ReportRow], list[str]]:
    sub_seed = splitmix64(config.seed, trial + 1)
    n = int(config.dims[trial % len(config.dims)])
    classes = config.scenarios[trial % len(config.scenarios)]
    bundle = _draw_bundle(classes, n, SplitMix64(sub_seed))
    for role, tag in zip("ABX", classes):
        if not class_predicate(tag, bundle[role]):
            return [], [f"trial {trial}: operand {role} failed class {tag}; trial skipped"]
    skipped: list = []
    pairs = run_plan(Workspace(bundle, config.tol), plan, skipped)
    notes = [
        f"trial {trial}: {cid} {reasons[0]}"
        for cid, _, reasons in skipped
        if reasons[0].startswith("numerical failure")
    ]
    rows = [
        ReportRow(
            trial=trial,
            checker_id=res.checker_id,
            link=res.link,
            dim=n,
            class_A=classes[0],
            class_B=classes[1],
            class_X=classes[2],
            **{k: getattr(res.params, k) for k in PARAM_COLUMNS},
            lhs=res.lhs,
            rhs=res.rhs,
            slack=res.slack,
            satisfied=res.satisfied,
            tolerance=res.tolerance,
            sub_seed=sub_seed,
            grid_index=idx,
        )
        for idx, res in pairs
    ]
    return rows, notes


def _run_block(config: FuzzConfig, trials: Sequence[int]):
    plan = build_plan(config.param_grid, config.checker_filter)
    return [_run_trial(config, plan, t) for t in trials]


def thread_count() -> int:
    """Worker count: ``NUMRAD_THREADS`` if set, otherwise the CPU count."""
    env = os.environ.get("NUMRAD_THREADS")
    if env:
        try:
            k = int(env)
        except ValueError:
            raise ConfigError(f"NUMRAD_THREADS must be an integer, got {env!r}") from None
        if k < 1:
            raise ConfigError("NUMRAD_THREADS must be at least 1")
        return k
    return os.cpu_count() or 1


def run_sweep(config: FuzzConfig, workers: int | None = None) -> FuzzReport:
    """Run every trial of ``config`` and assemble the ordered report.

    Parameters
    ----------
    config : FuzzConfig
    workers : int, optional
        Process count; defaults to :func:`thread_count`. The output does not
        depend on it.
    """
    workers = thread_count() if workers is None else max(1, int(workers))
    workers = min(workers, config.trials)
    trials = list(range(config.trials))
    if workers == 1:
        results = _run_block(config, trials)
    else:
        blocks = [trials[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_run_block, [config] * workers, blocks))
        by_trial = {}
        for block, part in zip(blocks, parts):
            by_trial.update(zip(block, part))
        results = [by_trial[t] for t in trials]
    rows: list[ReportRow] = []
    notes: list[str] = []
    for trial_rows, trial_notes in results:
        rows.extend(trial_rows)
        notes.extend(trial_notes)
    rows.sort(key=lambda r: (r.trial, r.checker_id, r.grid_index))  # stable: links keep order
    return FuzzReport(rows, summarize(rows), notes)


# ---------------------------------------------------------------------------
# serialization


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def write_report(report: FuzzReport, path, fmt: str = "csv") -> None:
    """Write ``report`` as CSV (rows only) or JSON (rows, summary, notes)."""
    if fmt not in ("csv", "json"):
        raise ConfigError(f"unknown report format {fmt!r}")
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            if fmt == "csv":
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(CSV_COLUMNS)
                for row in report.rows:
                    w.writerow([_fmt(getattr(row, c)) for c in CSV_COLUMNS])
            else:
                doc = {
                    "rows": [{c: getattr(row, c) for c in CSV_COLUMNS} for row in report.rows],
                    "summary": report.summary,
                    "notes": report.notes,
                }
                json.dump(doc, fh, indent=1, allow_nan=False)
                fh.write("\n")
    except OSError as exc:
        raise ReportIOError(f"cannot write report {path}: {exc}") from exc


def _opt(text: str, kind):
    return None if text in ("", None) else kind(text)


def _row_from_mapping(m: Mapping) -> ReportRow:
    sat = m["satisfied"]
    if isinstance(sat, str):
        sat = sat.lower() == "true"
    return ReportRow(
        trial=int(m["trial"]),
        checker_id=str(m["checker_id"]),
        link=str(m["link"]),
        dim=int(m["dim"]),
        class_A=str(m["class_A"]),
        class_B=str(m["class_B"]),
        class_X=str(m["class_X"]),
        r=_opt(m["r"], float),
        p=_opt(m["p"], float),
        q=_opt(m["q"], float),
        alpha=_opt(m["alpha"], float),
        s=_opt(m["s"], float),
        n_power=_opt(m["n_power"], int),
        lhs=float(m["lhs"]),
        rhs=float(m["rhs"]),
        slack=float(m["slack"]),
        satisfied=bool(sat),
        tolerance=float(m["tolerance"]),
        sub_seed=int(m["sub_seed"]),
    )


def read_report(path) -> FuzzReport:
    """Load a CSV or JSON report; the summary is recomputed from the rows."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ReportIOError(f"cannot read report {path}: {exc}") from exc
    notes: list[str] = []
    try:
        if text.lstrip().startswith("{"):
            doc = json.loads(text)
            rows = [_row_from_mapping(m) for m in doc["rows"]]
            notes = list(doc.get("notes", []))
        else:
            reader = csv.DictReader(text.splitlines())
            if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
                raise ConfigError(f"{path}: unexpected CSV header {reader.fieldnames}")
            rows = [_row_from_mapping(m) for m in reader]
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{path}: malformed report ({exc})") from exc
    return FuzzReport(rows, summarize(rows), notes)

