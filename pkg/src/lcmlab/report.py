"""Convergence experiments: log L(n) / n against the closed-form constant."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .constants import theorem_constant
from .lcm_engine import check_budget, factor_window_sieve, lcm_fold, log_lcm, window_terms
from .ntk import ProgressionSpec
from .residue_decomp import assemble_log_lcm

CSV_HEADER = ("n", "log_lcm", "ratio", "constant", "abs_err")
CONVERGE_METHODS = ("sieve", "theta-intervals")


def fmt(x: float) -> str:
    return f"{x:.12g}"


@dataclass(frozen=True)
class Row:
    n: int
    log_lcm: float
    ratio: float
    constant: float
    abs_err: float

    def as_tuple(self) -> tuple:
        return (self.n, self.log_lcm, self.ratio, self.constant, self.abs_err)


@dataclass
class ExperimentReport:
    rows: list[Row]
    meta: dict = field(default_factory=dict)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in self.rows:
            writer.writerow([row.n] + [fmt(v) for v in row.as_tuple()[1:]])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "meta": self.meta,
            "rows": [dict(zip(CSV_HEADER, row.as_tuple())) for row in self.rows],
        }

    def dumps(self, fmt_name: str = "json") -> str:
        if fmt_name == "csv":
            return self.to_csv()
        return json.dumps(self.to_json(), indent=2) + "\n"


def compute_log_lcm(spec: ProgressionSpec, n: int, method: str, *, threads: int = 1,
                    max_bound: int | None = None) -> float:
    check_budget(spec, n, max_bound)
    if method == "sieve":
        return log_lcm(factor_window_sieve(spec, n, threads=threads))
    if method == "theta-intervals":
        return assemble_log_lcm(spec, n, "theta-intervals").total
    if method == "gcd-fold":
        return math.log(lcm_fold(window_terms(spec, n)))
    raise ValueError(f"unknown method {method!r}")


def converge(spec: ProgressionSpec, n_grid: list[int], method: str = "sieve", *,
             threads: int = 1, max_bound: int | None = None) -> ExperimentReport:
    if method not in CONVERGE_METHODS:
        raise ValueError(f"converge method must be one of {CONVERGE_METHODS}, got {method!r}")
    if not n_grid:
        raise ValueError("n_grid is empty")
    if any(n < 1 for n in n_grid) or list(n_grid) != sorted(set(n_grid)):
        raise ValueError("n_grid must be strictly ascending positive integers")
    # fail before any work if the largest n is over budget
    check_budget(spec, n_grid[-1], max_bound)
    const = theorem_constant(spec).value
    rows = []
    for n in n_grid:
        value = compute_log_lcm(spec, n, method, threads=threads, max_bound=max_bound)
        ratio = value / n
        rows.append(Row(n, value, ratio, float(const), abs(ratio - float(const))))
    meta = {
        "spec": spec.as_dict(),
        "method": method,
        "constant_exact": str(const),
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
    return ExperimentReport(rows, meta)
