"""Config-driven verification runs with byte-stable reports.

A run is described by a ``RunConfig`` (file plus flag overrides, one
master seed, no environment entropy).  ``run_command`` dispatches to the
suites and returns a ``ReportEnvelope``; ``write_report`` persists it as
JSON (sorted keys, floats at 17 significant digits) or CSV (one fixed
documented header).  Identical configs produce byte-identical files; the
wall time is carried on the envelope for console display but kept out of
the persisted bytes for exactly that reason.
"""

from __future__ import annotations

import json
import math
import os
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Iterable, Sequence

from . import __version__ as _version
from .harness import (
    BARI_DEGREES,
    BARI_EXPONENTS,
    BARI_PS,
    CONSTANTS_ALPHAS,
    CONSTANTS_BETAS,
    CONSTANTS_MUS,
    CONSTANTS_NS,
    CONSTANTS_PS,
    NIKOLSKII_AB,
    NIKOLSKII_DEGREES,
    NIKOLSKII_MUS,
    NIKOLSKII_PQS,
    RATIO_ABS_SLACK,
    RATIO_REL_SLACK,
    ConstantCheckRecord,
    InequalityRecord,
    SharpnessFit,
    run_bari_suite,
    run_nikolskii_suite,
    sharpness_series,
    verify_constant_properties,
)
from .segments import ALL_STATEMENTS, DEFAULT_LEMMA_TOL, LemmaReport, sweep_segments
from .weights import NikolskiiParams

COMMANDS = ("constants", "lemmas", "bari", "nikolskii", "sharpness", "all")

LEMMA_EXPONENTS = (0.0, 0.5, 1.0, 2.0, 3.0, 4.5)
DEFAULT_SEGMENTS_PER_COMBO = 121
DEFAULT_TRIALS = 10_000

SHARPNESS_DEGREES = (2, 4, 8, 16, 32)
SHARPNESS_RESTARTS = 4
SHARPNESS_BUDGET = 6000
SHARPNESS_EXPONENT_TOL = 0.25
# the one instance with a known classical answer; all other tuples are
# report-only
SHARPNESS_TUPLES = (
    {"alpha": -0.5, "beta": -0.5, "mu": 0.0, "p": 2.0, "q": math.inf, "asserted": True},
    {"alpha": 0.0, "beta": 0.0, "mu": 0.0, "p": 1.0, "q": math.inf, "asserted": False},
    {"alpha": 0.0, "beta": 0.0, "mu": 1.0, "p": 2.0, "q": 4.0, "asserted": False},
)


class ConfigError(ValueError):
    """The run configuration is invalid; nothing has been computed."""


def _normalize_infinities(value):
    """Replace the strings "inf"/"Infinity" by math.inf, recursively."""
    if isinstance(value, str) and value.strip().lower() in ("inf", "infinity"):
        return math.inf
    if isinstance(value, list):
        return [_normalize_infinities(v) for v in value]
    if isinstance(value, dict):
        return {k: _normalize_infinities(v) for k, v in value.items()}
    return value


@dataclass
class RunConfig:
    """One CLI run: command, parameter grids, trial counts, master seed."""

    command: str
    seed: int = 0
    out: str | None = None
    fmt: str = "json"
    figures: bool = True
    trials: int | None = None
    segments_per_combo: int | None = None
    grid: dict[str, list] = field(default_factory=dict)
    tolerances: dict[str, float] = field(default_factory=dict)
    statements: list[str] | None = None
    tuples: list[dict] | None = None
    degrees: list[int] | None = None
    restarts: int | None = None
    budget: int | None = None

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}; choose from {COMMANDS}")
        if not isinstance(self.seed, int):
            raise ConfigError(f"seed must be an integer, got {self.seed!r}")
        if self.fmt not in ("json", "csv"):
            raise ConfigError(f"format must be 'json' or 'csv', got {self.fmt!r}")
        for name, value in (
            ("trials", self.trials),
            ("segments_per_combo", self.segments_per_combo),
            ("restarts", self.restarts),
            ("budget", self.budget),
        ):
            if value is not None and (not isinstance(value, int) or value < 1):
                raise ConfigError(f"{name} must be a positive integer, got {value!r}")
        for key, value in self.tolerances.items():
            if key not in ("ratio_rel", "ratio_abs", "lemma_rel"):
                raise ConfigError(f"unknown tolerance {key!r}")
            if not (isinstance(value, (int, float)) and value >= 0.0):
                raise ConfigError(f"tolerance {key} must be a nonnegative number")
        if self.statements is not None:
            bad = set(self.statements) - set(ALL_STATEMENTS)
            if bad:
                raise ConfigError(f"unknown lemma statements: {sorted(bad)}")
        if self.degrees is not None:
            if len(self.degrees) < 3:
                raise ConfigError("sharpness needs at least 3 degrees")
            if any((not isinstance(d, int)) or d < 1 for d in self.degrees):
                raise ConfigError("degrees must be positive integers")
            if any(b <= a for a, b in zip(self.degrees, self.degrees[1:])):
                raise ConfigError("degrees must be strictly increasing")
        self._validate_grid()
        if self.tuples is not None:
            for tup in self.tuples:
                self._nikolskii_params_from(tup, n=1)

    def _validate_grid(self) -> None:
        grid = self.grid
        if not grid:
            return

        def numbers(key, lo=None, allow_inf=False):
            values = grid[key]
            if not isinstance(values, (list, tuple)) or not values:
                raise ConfigError(f"grid key {key!r} must be a nonempty list")
            for v in values:
                if not isinstance(v, (int, float)):
                    raise ConfigError(f"grid key {key!r} holds a non-number: {v!r}")
                if math.isinf(v) and not allow_inf:
                    raise ConfigError(f"grid key {key!r} must be finite")
                if lo is not None and v < lo:
                    raise ConfigError(f"grid key {key!r} needs values >= {lo}, got {v}")

        known = {
            "alpha", "beta", "mu", "p", "q", "n", "alpha_beta", "p_q",
        }
        bad = set(grid) - known
        if bad:
            raise ConfigError(f"unknown grid keys: {sorted(bad)}")
        if "n" in grid:
            numbers("n", lo=1)
            if any(int(v) != v for v in grid["n"]):
                raise ConfigError("grid key 'n' must hold integers")
        if "mu" in grid:
            numbers("mu", lo=0.0)
        if "p" in grid:
            numbers("p", lo=1.0)
        if "q" in grid:
            numbers("q", lo=1.0, allow_inf=True)
        if "alpha" in grid:
            lo = 0.0 if self.command in ("bari", "lemmas") else -0.5
            numbers("alpha", lo=lo)
        if "beta" in grid:
            numbers("beta", lo=-0.5)
        for key in ("alpha_beta", "p_q"):
            if key in grid:
                for pair in grid[key]:
                    if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
                        raise ConfigError(f"grid key {key!r} must hold pairs")
        if "alpha_beta" in grid:
            for a, b in grid["alpha_beta"]:
                if not (a >= b >= -0.5):
                    raise ConfigError(f"pair ({a}, {b}) violates alpha >= beta >= -1/2")
        if "p_q" in grid:
            for p, q in grid["p_q"]:
                if not (1.0 <= p < q):
                    raise ConfigError(f"pair ({p}, {q}) violates 1 <= p < q")

    @staticmethod
    def _nikolskii_params_from(tup: dict, n: int) -> NikolskiiParams:
        try:
            return NikolskiiParams(
                alpha=float(tup["alpha"]),
                beta=float(tup["beta"]),
                mu=float(tup["mu"]),
                p=float(tup["p"]),
                q=float(tup["q"]),
                n=n,
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"invalid sharpness tuple {tup!r}: {exc}") from exc

    @classmethod
    def from_sources(cls, command: str | None, file_path: str | None, overrides: dict) -> "RunConfig":
        """Merge a config file with flag overrides (flags win)."""
        data: dict[str, Any] = {}
        if file_path is not None:
            try:
                with open(file_path, "r", encoding="utf-8") as fh:
                    data = json.load(fh)
            except OSError as exc:
                raise ConfigError(f"cannot read config file {file_path}: {exc}") from exc
            except json.JSONDecodeError as exc:
                raise ConfigError(f"config file {file_path} is not valid JSON: {exc}") from exc
            if not isinstance(data, dict):
                raise ConfigError("config file must hold a JSON object")
        if "format" in data:
            data["fmt"] = data.pop("format")
        if "grid" in data:
            data["grid"] = _normalize_infinities(data["grid"])
        if "tuples" in data and data["tuples"] is not None:
            data["tuples"] = _normalize_infinities(data["tuples"])
        if command is not None:
            data["command"] = command
        for key, value in overrides.items():
            if value is not None:
                data[key] = value
        if "command" not in data:
            raise ConfigError("no command given (positional, --cmd, or config file)")
        known = {f.name for f in cls.__dataclass_fields__.values()}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        config = cls(**data)
        config.validate()
        return config

    def echo(self) -> dict:
        """Fully-resolved config for the report (deterministic)."""
        return asdict(self)


@dataclass
class ReportEnvelope:
    """Everything one run produced; the persisted form drops wall_time_s."""

    version: str
    command: str
    config: dict
    records: list[dict]
    summary: dict
    wall_time_s: float

    @property
    def failed(self) -> int:
        return int(self.summary["failed"])


# --- record flattening --------------------------------------------------------


def _lemma_dict(r: LemmaReport) -> dict:
    return {
        "statement": r.statement,
        "alpha": r.alpha,
        "mu": r.mu,
        "a": r.segment.a,
        "b": r.segment.b,
        "l": r.segment.length,
        "lhs": r.lhs,
        "rhs": r.rhs,
        "margin": r.margin,
        "tolerance": r.tolerance,
        "pass": r.passed,
        "note": r.note,
    }


def _inequality_dict(r: InequalityRecord) -> dict:
    out = {
        "statement": r.statement,
        "alpha": r.alpha,
        "mu": r.mu,
        "p": r.p,
        "n": r.n,
        "seed": r.seed,
        "exact_degree": r.exact_degree,
        "lhs": r.lhs,
        "rhs": r.rhs,
        "ratio": r.ratio,
        "pass": r.passed,
        "note": r.note,
    }
    if r.beta is not None:
        out["beta"] = r.beta
    if r.q is not None:
        out["q"] = r.q
    return out


def _constant_dict(r: ConstantCheckRecord) -> dict:
    out = {
        "statement": "constant-properties",
        "check": r.check,
        "alpha": r.alpha,
        "mu": r.mu,
        "p": r.p,
        "lhs": r.lhs,
        "rhs": r.rhs,
        "pass": r.passed,
    }
    if r.beta is not None:
        out["beta"] = r.beta
    if r.n is not None:
        out["n"] = r.n
    return out


def _sharpness_dict(fit: SharpnessFit, asserted: bool, tol: float) -> dict:
    passed = (abs(fit.fitted_exponent - fit.theory_exponent) <= tol) if asserted else True
    return {
        "statement": "sharpness-probe",
        "alpha": fit.alpha,
        "beta": fit.beta,
        "mu": fit.mu,
        "p": fit.p,
        "q": fit.q,
        "degrees": list(fit.degrees),
        "best_ratios": list(fit.best_ratios),
        "fitted_exponent": fit.fitted_exponent,
        "theory_exponent": fit.theory_exponent,
        "r_squared": fit.r_squared,
        "asserted": asserted,
        "pass": passed,
    }


# --- command runners ------------------------------------------------------------


def _run_constants(config: RunConfig) -> tuple[list[dict], int]:
    grid = config.grid
    report = verify_constant_properties(
        alphas=grid.get("alpha", CONSTANTS_ALPHAS),
        betas=grid.get("beta", CONSTANTS_BETAS),
        mus=grid.get("mu", CONSTANTS_MUS),
        ps=grid.get("p", CONSTANTS_PS),
        ns=[int(n) for n in grid.get("n", CONSTANTS_NS)],
    )
    return [_constant_dict(r) for r in report.records], 0


def _run_lemmas(config: RunConfig) -> tuple[list[dict], int]:
    grid = config.grid
    alphas = grid.get("alpha", LEMMA_EXPONENTS)
    mus = grid.get("mu", LEMMA_EXPONENTS)
    combos = [(a, m) for a in alphas for m in mus]
    statements = config.statements or list(ALL_STATEMENTS)
    per_combo = config.segments_per_combo or DEFAULT_SEGMENTS_PER_COMBO
    rel_tol = config.tolerances.get("lemma_rel", DEFAULT_LEMMA_TOL)
    records: list[dict] = []
    skipped = 0
    for statement in statements:
        sweep = sweep_segments(statement, combos, per_combo, rel_tol)
        records.extend(_lemma_dict(r) for r in sweep.reports)
        skipped += sweep.skipped
    return records, skipped


def _run_bari(config: RunConfig) -> tuple[list[dict], int]:
    grid = config.grid
    records = run_bari_suite(
        trials=config.trials or DEFAULT_TRIALS,
        degrees=[int(n) for n in grid.get("n", BARI_DEGREES)],
        exponents=grid.get("alpha", BARI_EXPONENTS),
        ps=grid.get("p", BARI_PS),
        master_seed=config.seed,
        rel_slack=config.tolerances.get("ratio_rel", RATIO_REL_SLACK),
        abs_slack=config.tolerances.get("ratio_abs", RATIO_ABS_SLACK),
    )
    return [_inequality_dict(r) for r in records], 0


def _run_nikolskii(config: RunConfig) -> tuple[list[dict], int]:
    grid = config.grid
    records = run_nikolskii_suite(
        trials=config.trials or DEFAULT_TRIALS,
        degrees=[int(n) for n in grid.get("n", NIKOLSKII_DEGREES)],
        ab_pairs=[tuple(p) for p in grid.get("alpha_beta", NIKOLSKII_AB)],
        mus=grid.get("mu", NIKOLSKII_MUS),
        pq_pairs=[tuple(p) for p in grid.get("p_q", NIKOLSKII_PQS)],
        master_seed=config.seed,
        rel_slack=config.tolerances.get("ratio_rel", RATIO_REL_SLACK),
        abs_slack=config.tolerances.get("ratio_abs", RATIO_ABS_SLACK),
    )
    return [_inequality_dict(r) for r in records], 0


def _run_sharpness(config: RunConfig) -> tuple[list[dict], int]:
    tuples = config.tuples if config.tuples is not None else [dict(t) for t in SHARPNESS_TUPLES]
    degrees = config.degrees or list(SHARPNESS_DEGREES)
    restarts = config.restarts or SHARPNESS_RESTARTS
    budget = config.budget or SHARPNESS_BUDGET
    records = []
    for i, tup in enumerate(tuples):
        params = RunConfig._nikolskii_params_from(tup, n=int(degrees[-1]))
        fit = sharpness_series(
            params, degrees, restarts=restarts, budget=budget,
            master_seed=config.seed + i,
        )
        records.append(_sharpness_dict(fit, bool(tup.get("asserted", False)), SHARPNESS_EXPONENT_TOL))
    return records, 0


_RUNNERS = {
    "constants": _run_constants,
    "lemmas": _run_lemmas,
    "bari": _run_bari,
    "nikolskii": _run_nikolskii,
    "sharpness": _run_sharpness,
}


def run_command(config: RunConfig) -> ReportEnvelope:
    """Validate, dispatch, and assemble the envelope.

    The report content is a pure function of the config (seed included),
    so reruns are byte-identical.
    """
    config.validate()
    start = time.perf_counter()
    if config.command == "all":
        records: list[dict] = []
        skipped = 0
        for name in ("constants", "lemmas", "bari", "nikolskii", "sharpness"):
            recs, skip = _RUNNERS[name](config)
            records.extend(recs)
            skipped += skip
    else:
        records, skipped = _RUNNERS[config.command](config)
    passed = sum(1 for r in records if r["pass"])
    summary = {
        "total": len(records),
        "passed": passed,
        "failed": len(records) - passed,
        "skipped": skipped,
    }
    return ReportEnvelope(
        version=_version,
        command=config.command,
        config=config.echo(),
        records=records,
        summary=summary,
        wall_time_s=time.perf_counter() - start,
    )


# --- deterministic serialization -------------------------------------------------


def format_float(x: float) -> str:
    """17-significant-digit decimal form; round-trips every finite double."""
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return f"{x:.17g}"


def dumps_deterministic(obj: Any, indent: int = 0) -> str:
    """JSON text with sorted keys and floats via ``format_float``.

    Infinities use the Python-JSON literals (``Infinity``), which
    ``json.loads`` accepts back.
    """
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        parts = [
            f"{inner}{json.dumps(str(k))}: {dumps_deterministic(obj[k], indent + 1)}"
            for k in sorted(obj, key=str)
        ]
        return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        parts = [f"{inner}{dumps_deterministic(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(parts) + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, int):
        return str(obj)
    if obj is None:
        return "null"
    return json.dumps(str(obj))


CSV_HEADER = (
    "statement,check,alpha,beta,mu,p,q,n,seed,a,b,l,lhs,rhs,margin,ratio,"
    "tolerance,degrees,best_ratios,fitted_exponent,theory_exponent,r_squared,"
    "exact_degree,asserted,pass,note"
)


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, (list, tuple)):
        return ";".join(_csv_cell(v) for v in value)
    return str(value)


def _csv_rows(records: Iterable[dict]) -> list[str]:
    columns = CSV_HEADER.split(",")
    rows = []
    for record in records:
        rows.append(",".join(_csv_cell(record.get(col)) for col in columns))
    return rows


def envelope_to_json(envelope: ReportEnvelope) -> str:
    payload = {
        "version": envelope.version,
        "command": envelope.command,
        "config": envelope.config,
        "records": envelope.records,
        "summary": envelope.summary,
    }
    return dumps_deterministic(payload) + "\n"


def envelope_to_csv(envelope: ReportEnvelope) -> str:
    lines = [CSV_HEADER]
    lines.extend(_csv_rows(envelope.records))
    summary = envelope.summary
    lines.append(
        f"# summary total={summary['total']} passed={summary['passed']} "
        f"failed={summary['failed']} skipped={summary['skipped']}"
    )
    return "\n".join(lines) + "\n"


def _write_atomic(path: str, text: str) -> None:
    tmp = path + ".tmp"
    try:
        with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError:
        for leftover in (tmp, path):
            try:
                if os.path.exists(leftover) and leftover == tmp:
                    os.remove(leftover)
            except OSError:
                pass
        raise


def write_report(envelope: ReportEnvelope, path: str, fmt: str | None = None) -> list[str]:
    """Persist the envelope; returns the list of files written.

    Sharpness records additionally produce one two-column plot-data file
    per parameter tuple (log degree, log best ratio), named
    ``<stem>-sharpness-<i>.dat``.
    """
    fmt = fmt or ("csv" if path.endswith(".csv") else "json")
    if fmt not in ("json", "csv"):
        raise ValueError(f"format must be 'json' or 'csv', got {fmt!r}")
    text = envelope_to_json(envelope) if fmt == "json" else envelope_to_csv(envelope)
    try:
        _write_atomic(path, text)
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc}") from exc
    written = [path]
    stem = os.path.splitext(path)[0]
    sharp = [r for r in envelope.records if r["statement"] == "sharpness-probe"]
    for i, record in enumerate(sharp):
        lines = ["log_n log_best_ratio"]
        for n, ratio in zip(record["degrees"], record["best_ratios"]):
            lines.append(f"{format_float(math.log(n))} {format_float(math.log(ratio))}")
        data_path = f"{stem}-sharpness-{i}.dat"
        _write_atomic(data_path, "\n".join(lines) + "\n")
        written.append(data_path)
    return written
