"""Check records, report bundles and their JSON/CSV serialization."""

from __future__ import annotations

import csv
import json
import math
import platform
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .scalars import format_exact


def _num(x):
    if x is None:
        return None
    v = float(x)
    return v if math.isfinite(v) else str(v)


MAX_EXACT_DIGITS = 400


def _exact(x):
    if x is None or isinstance(x, float):
        return None
    return format_exact(x, MAX_EXACT_DIGITS)


@dataclass
class Check:
    """Outcome of one verification.  ``passed is None`` marks an informational row."""

    name: str
    passed: bool | None
    value: object = None
    bound: object = None
    window: str | None = None
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        if self.passed is None:
            return "info"
        return "pass" if self.passed else "fail"

    def to_record(self) -> dict:
        rec = {
            "name": self.name,
            "status": self.status,
            "exact": _exact(self.value),
            "value": _num(self.value),
            "bound_exact": _exact(self.bound),
            "bound": _num(self.bound),
            "window": self.window,
            "failures": [[str(i), format_exact(v, MAX_EXACT_DIGITS) if not isinstance(v, str) else v]
                         for i, v in self.failures],
        }
        if self.details:
            rec["details"] = {k: _plain(v) for k, v in self.details.items()}
        return rec


def _plain(v):
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, float):
        return v if math.isfinite(v) else str(v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    return format_exact(v, MAX_EXACT_DIGITS)


@dataclass
class DistanceRow:
    """One line of a distance table: ||T - f|| against its certified lower bound."""

    method: str
    level: int
    dist_sq: object
    bound_sq: object
    slack: float = 0.0
    passed: bool | None = None

    @property
    def distance(self) -> float:
        return math.sqrt(max(float(self.dist_sq), 0.0))

    @property
    def bound(self) -> float | None:
        return None if self.bound_sq is None else math.sqrt(float(self.bound_sq))

    def to_record(self) -> dict:
        return {
            "method": self.method,
            "level": self.level,
            "dist_sq_exact": _exact(self.dist_sq),
            "distance": self.distance,
            "certified_lower_bound": self.bound,
            "slack": self.slack,
            "status": "info" if self.passed is None else ("pass" if self.passed else "fail"),
        }


CSV_COLUMNS = ["method", "level", "dist_sq_exact", "distance", "certified_lower_bound", "slack", "status"]


@dataclass
class ReportBundle:
    command: str
    config: dict
    checks: list[Check] = field(default_factory=list)
    tables: dict[str, list[DistanceRow]] = field(default_factory=dict)
    plots: dict[str, tuple[list[str], list[list]]] = field(default_factory=dict)
    notices: list[str] = field(default_factory=list)

    def add(self, checks: Check | Iterable[Check]) -> None:
        if isinstance(checks, Check):
            self.checks.append(checks)
        else:
            self.checks.extend(checks)

    @property
    def failed(self) -> list[Check]:
        failed = [c for c in self.checks if c.passed is False]
        failed += [Check(f"{name}[{r.method}@{r.level}]", False) for name, rows in self.tables.items()
                   for r in rows if r.passed is False]
        return failed

    @property
    def ok(self) -> bool:
        return not self.failed

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "config": self.config,
            "ok": self.ok,
            "checks": [c.to_record() for c in self.checks],
            "tables": {k: [r.to_record() for r in rows] for k, rows in self.tables.items()},
            "notices": list(self.notices),
        }

    def write(self, out_dir: str | Path, formats: Iterable[str] = ("json", "csv"), plot_data: bool = True) -> list[Path]:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        written = []
        formats = set(formats)
        if "json" in formats:
            p = out / f"{self.command}.json"
            p.write_text(dumps(self.to_json()) + "\n")
            written.append(p)
            env = out / "environment.json"
            env.write_text(dumps(environment_stamp()) + "\n")
            written.append(env)
        if "csv" in formats:
            p = out / f"{self.command}_checks.csv"
            with p.open("w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(["name", "status", "exact", "value", "bound", "window"])
                for c in self.checks:
                    r = c.to_record()
                    w.writerow([r["name"], r["status"], r["exact"], r["value"], r["bound"], r["window"]])
            written.append(p)
            for name, rows in self.tables.items():
                p = out / f"{name}.csv"
                with p.open("w", newline="") as fh:
                    w = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
                    w.writeheader()
                    for r in rows:
                        w.writerow(r.to_record())
                written.append(p)
        if plot_data:
            for name, (header, rows) in self.plots.items():
                p = out / f"plot_{name}.csv"
                with p.open("w", newline="") as fh:
                    w = csv.writer(fh)
                    w.writerow(header)
                    w.writerows(rows)
                written.append(p)
        return written


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def environment_stamp() -> dict:
    import numpy
    import scipy

    from . import __version__

    return {
        "package": __version__,
        "python": sys.version.split()[0],
        "platform": platform.platform(),
        "numpy": numpy.__version__,
        "scipy": scipy.__version__,
    }
