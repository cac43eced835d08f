"""Report records for inequality checks and whole verification runs.

Every check produces an :class:`InequalityReport` comparing an exact or
carefully accumulated left side against the right side of the statement
*without* its implicit constant.  The effective constant ``lhs / rhs`` is
the quantity of interest: a sweep of instances passing at constant 1
witnesses that the stated inequality holds with a small constant there.

Serialization is deterministic: keys are sorted, floats use Python's
shortest round-trip repr, timing fields are omitted unless explicitly
requested, and non-finite floats become the strings ``"inf"``/``"-inf"``/
``"nan"`` so output stays strict JSON.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

__all__ = [
    "InequalityReport",
    "SuiteReport",
    "evaluate_inequality",
    "evaluate_inequality_log2",
    "summarize_reports",
    "make_suite_report",
    "suite_to_json",
    "suite_to_csv",
    "suite_from_json",
    "SUITE_VERSION",
]

SUITE_VERSION = 1


@dataclass
class InequalityReport:
    """Outcome of one inequality check on one instance.

    ``rhs`` excludes the asserted constant; ``direction`` is ``"le"``
    (lhs bounded above by constant * rhs), ``"ge"`` (bounded below) or
    ``"eq"``.  ``asserted`` distinguishes gating checks from diagnostics
    that are recorded but never fail a run.
    """

    statement_id: str
    instance: dict[str, Any]
    lhs: float
    rhs: float
    direction: str
    assert_constant: float
    effective_constant: float
    passed: bool
    asserted: bool = True
    runtime_ms: float = 0.0

    def to_dict(self, include_timings: bool = False) -> dict[str, Any]:
        out: dict[str, Any] = {
            "statement_id": self.statement_id,
            "instance": _json_safe(self.instance),
            "lhs": _json_safe(self.lhs),
            "rhs": _json_safe(self.rhs),
            "direction": self.direction,
            "assert_constant": _json_safe(self.assert_constant),
            "effective_constant": _json_safe(self.effective_constant),
            "passed": self.passed,
            "asserted": self.asserted,
        }
        if include_timings:
            out["runtime_ms"] = _json_safe(self.runtime_ms)
        return out


def _json_safe(value: Any) -> Any:
    """Map values into strict-JSON territory, recursively."""
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
        return value
    if isinstance(value, dict):
        return {str(k): _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


def _from_json_float(value: Any) -> float:
    if value == "inf":
        return math.inf
    if value == "-inf":
        return -math.inf
    if value == "nan":
        return math.nan
    return float(value)


def _ratio(lhs: float, rhs: float) -> float:
    if rhs > 0.0:
        return lhs / rhs
    if lhs == 0.0:
        return 0.0
    return math.inf


def evaluate_inequality(
    statement_id: str,
    instance: dict[str, Any],
    lhs: float,
    rhs: float,
    direction: str,
    assert_constant: float = 1.0,
    tolerance: float = 1e-9,
    asserted: bool = True,
) -> InequalityReport:
    """Build a report for ``lhs (direction) assert_constant * rhs``.

    A relative tolerance guards against float rounding on the comparison
    itself; both sides are expected nonnegative.
    """
    if direction not in ("le", "ge", "eq"):
        raise ValueError(f"unknown direction {direction!r}")
    if direction == "le":
        passed = lhs <= assert_constant * rhs * (1.0 + tolerance)
    elif direction == "ge":
        passed = lhs * (1.0 + tolerance) >= assert_constant * rhs
    else:
        scale = max(abs(lhs), abs(rhs), 1e-300)
        passed = abs(lhs - rhs) <= tolerance * scale
    return InequalityReport(
        statement_id=statement_id,
        instance=instance,
        lhs=lhs,
        rhs=rhs,
        direction=direction,
        assert_constant=assert_constant,
        effective_constant=_ratio(lhs, rhs),
        passed=bool(passed),
        asserted=asserted,
    )


def evaluate_inequality_log2(
    statement_id: str,
    instance: dict[str, Any],
    lhs_log2: float,
    rhs_log2: float,
    direction: str,
    assert_constant: float = 1.0,
    tolerance: float = 1e-9,
    asserted: bool = True,
) -> InequalityReport:
    """Like :func:`evaluate_inequality` for sides given as base-2 logs.

    Used by statements whose power products overflow doubles; the linear
    ``lhs``/``rhs`` fields are still populated when they fit, and the log
    values are recorded in the instance data either way.
    """
    if direction not in ("le", "ge"):
        raise ValueError("log-scale comparison supports only le/ge")
    margin = math.log2(1.0 + tolerance)
    shift = math.log2(assert_constant) if assert_constant > 0 else -math.inf
    if direction == "le":
        passed = lhs_log2 <= shift + rhs_log2 + margin
    else:
        passed = lhs_log2 + margin >= shift + rhs_log2
    diff = lhs_log2 - rhs_log2
    effective = 2.0**diff if diff < 1020.0 else math.inf
    instance = dict(instance)
    instance["lhs_log2"] = lhs_log2
    instance["rhs_log2"] = rhs_log2
    return InequalityReport(
        statement_id=statement_id,
        instance=instance,
        lhs=2.0**lhs_log2 if lhs_log2 < 1020.0 else math.inf,
        rhs=2.0**rhs_log2 if rhs_log2 < 1020.0 else math.inf,
        direction=direction,
        assert_constant=assert_constant,
        effective_constant=effective,
        passed=bool(passed),
        asserted=asserted,
    )


@dataclass
class SuiteReport:
    """One verification run: configuration echo, reports and a summary."""

    suite_version: int
    seed: int
    config: dict[str, Any]
    reports: list[InequalityReport]
    summary: dict[str, Any] = field(default_factory=dict)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.reports if r.asserted)

    def to_dict(self, include_timings: bool = False) -> dict[str, Any]:
        return {
            "suite_version": self.suite_version,
            "seed": self.seed,
            "config": _json_safe(self.config),
            "summary": _json_safe(self.summary),
            "reports": [r.to_dict(include_timings) for r in self.reports],
        }


def summarize_reports(reports: Sequence[InequalityReport]) -> dict[str, Any]:
    """Per-statement aggregates plus an overall pass count.

    Min/max effective constants are taken over asserted reports with a
    finite positive ratio; diagnostics are tallied separately.
    """
    per: dict[str, dict[str, Any]] = {}
    for r in reports:
        slot = per.setdefault(
            r.statement_id,
            {
                "count": 0,
                "passed": 0,
                "asserted": r.asserted,
                "min_effective_constant": math.inf,
                "max_effective_constant": 0.0,
            },
        )
        slot["count"] += 1
        slot["passed"] += int(r.passed)
        if math.isfinite(r.effective_constant) and r.effective_constant > 0:
            slot["min_effective_constant"] = min(
                slot["min_effective_constant"], r.effective_constant
            )
            slot["max_effective_constant"] = max(
                slot["max_effective_constant"], r.effective_constant
            )
    for slot in per.values():
        slot["pass_rate"] = slot["passed"] / slot["count"] if slot["count"] else 0.0
        if slot["min_effective_constant"] is math.inf:
            slot["min_effective_constant"] = None
            slot["max_effective_constant"] = None
    gating = [r for r in reports if r.asserted]
    return {
        "statements": per,
        "total_reports": len(reports),
        "asserted_reports": len(gating),
        "asserted_failures": sum(1 for r in gating if not r.passed),
        "all_passed": all(r.passed for r in gating),
    }


def make_suite_report(
    config: dict[str, Any],
    reports: Iterable[InequalityReport],
    seed: int,
    suite_version: int = SUITE_VERSION,
) -> SuiteReport:
    report_list = list(reports)
    return SuiteReport(
        suite_version=suite_version,
        seed=seed,
        config=config,
        reports=report_list,
        summary=summarize_reports(report_list),
    )


def suite_to_json(suite: SuiteReport, include_timings: bool = False) -> str:
    """Deterministic JSON rendering (sorted keys, round-trip floats)."""
    return json.dumps(
        suite.to_dict(include_timings), sort_keys=True, indent=1, allow_nan=False
    )


_CSV_COLUMNS = [
    "statement_id",
    "family",
    "n",
    "direction",
    "lhs",
    "rhs",
    "assert_constant",
    "effective_constant",
    "passed",
    "asserted",
    "instance",
]


def _csv_float(value: float) -> str:
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if math.isnan(value):
        return "nan"
    return repr(value)


def suite_to_csv(suite: SuiteReport, include_timings: bool = False) -> str:
    """Flatten reports to CSV, one row per report, instance as JSON blob."""
    buf = io.StringIO()
    columns = _CSV_COLUMNS + (["runtime_ms"] if include_timings else [])
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in suite.reports:
        row = [
            r.statement_id,
            str(r.instance.get("family", "")),
            str(r.instance.get("n", "")),
            r.direction,
            _csv_float(r.lhs),
            _csv_float(r.rhs),
            _csv_float(r.assert_constant),
            _csv_float(r.effective_constant),
            str(r.passed),
            str(r.asserted),
            json.dumps(_json_safe(r.instance), sort_keys=True),
        ]
        if include_timings:
            row.append(_csv_float(r.runtime_ms))
        writer.writerow(row)
    return buf.getvalue()


def suite_from_json(text: str) -> SuiteReport:
    """Rebuild a SuiteReport from its JSON rendering."""
    data = json.loads(text)
    reports = []
    for item in data["reports"]:
        reports.append(
            InequalityReport(
                statement_id=item["statement_id"],
                instance=item["instance"],
                lhs=_from_json_float(item["lhs"]),
                rhs=_from_json_float(item["rhs"]),
                direction=item["direction"],
                assert_constant=_from_json_float(item["assert_constant"]),
                effective_constant=_from_json_float(item["effective_constant"]),
                passed=bool(item["passed"]),
                asserted=bool(item["asserted"]),
                runtime_ms=float(item.get("runtime_ms", 0.0)),
            )
        )
    return SuiteReport(
        suite_version=int(data["suite_version"]),
        seed=int(data["seed"]),
        config=data.get("config", {}),
        reports=reports,
        summary=data.get("summary", {}),
    )
