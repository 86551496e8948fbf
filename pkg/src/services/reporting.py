"""Deterministic JSON and CSV renderings of reports."""
import csv
import io
import json
from typing import Any, Optional

from pydantic import BaseModel

from src.config.settings import settings
from src.models.experiments import ExperimentCell, ExperimentResult
from src.models.pairwise import ConsistencyReport
from src.models.reports import RankReport


def round_floats(value: Any, precision: int) -> Any:
    """Round every float in a JSON-ready structure to *precision* significant digits."""
    if isinstance(value, bool):
        return value
    if isinstance(value, float):
        return float(f"{value:.{precision}g}")
    if isinstance(value, dict):
        return {key: round_floats(item, precision) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [round_floats(item, precision) for item in value]
    return value


def render_json(model: BaseModel, precision: Optional[int] = None) -> str:
    """Fields in declaration order, floats at fixed precision, UTF-8 text with trailing newline."""
    precision = settings.output_precision if precision is None else precision
    if precision < 1:
        raise ValueError(f"precision must be at least 1, got {precision}")
    data = round_floats(model.model_dump(mode="json"), precision)
    return json.dumps(data, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def render_csv(result: ExperimentResult, precision: Optional[int] = None) -> str:
    """One row per (n, sigma) cell; empty cells for absent values."""
    precision = settings.output_precision if precision is None else precision
    columns = list(ExperimentCell.model_fields)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for cell in result.cells:
        row = round_floats(cell.model_dump(), precision)
        writer.writerow(["" if row[c] is None else row[c] for c in columns])
    return buffer.getvalue()


def summarize_rank(report: RankReport) -> str:
    """Short human-readable view of a RankReport."""
    names = report.labels or tuple(f"c{i}" for i in range(1, len(report.raw) + 1))
    lines = [f"method: {report.method}" + ("" if report.feasible else " (INFEASIBLE)")]
    shown = report.normalized if report.normalized is not None else report.raw
    for index in report.ranking:
        lines.append(f"  {report.ranks[index - 1]:>3}. {names[index - 1]:<12} {report.raw[index - 1]:>14.6g}  {shown[index - 1]:.4f}")
    if report.consistency.koczkodaj is not None:
        lines.append(f"Koczkodaj index: {report.consistency.koczkodaj:.4f}")
    lines.extend(f"warning: {w}" for w in report.warnings)
    return "\n".join(lines)


def summarize_consistency(report: ConsistencyReport) -> str:
    lines = [f"n={report.n} reciprocal={report.reciprocal} consistent={report.consistent}"]
    if report.koczkodaj is not None:
        lines.append(f"Koczkodaj index: {report.koczkodaj:.4f} at triad {report.worst_triad}")
    for v in report.violations:
        lines.append(f"  m_{v.i},{v.j} * m_{v.j},{v.i} = {v.product:.6g}")
    return "\n".join(lines)


def summarize_experiment(result: ExperimentResult) -> str:
    lines = ["    n   sigma   geom  arith  mean K"]
    for cell in result.cells:
        lines.append(
            f"{cell.n:>5} {cell.sigma:>7.3g} {cell.geometric_feasible_rate:>6.3f} "
            f"{cell.arithmetic_feasible_rate:>6.3f} {cell.mean_koczkodaj:>7.4f}"
        )
    return "\n".join(lines)
