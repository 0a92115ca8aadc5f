"""
Evaluation reports: correlation statistics per dataset, averages across
datasets and per-distortion summaries
"""
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence

import numpy as np

from ..core.errors import DegenerateInput
from ..core.models import EvalReport
from ..utils.logging import get_logger
from .correlation import kendall, pearson, spearman
from .logistic import fit_logistic, predict

logger = get_logger("evaluation.report")

STAT_FIELDS = ("src", "krc", "lpcc", "pcc", "rmse")
# Statistics whose sign only encodes the direction of the metric
SIGNED_FIELDS = ("src", "krc", "lpcc")


def evaluate(scores: Sequence[float], mos: Sequence[float], name: str = "") -> EvalReport:
    """
    Full statistics of metric scores against MOS

    SRC, KRC and LPCC use the raw scores; PCC and RMSE are computed after
    the logistic mapping.
    """
    x = np.asarray(scores, dtype=np.float64).ravel()
    y = np.asarray(mos, dtype=np.float64).ravel()
    src = spearman(x, y)
    krc = kendall(x, y)
    lpcc = pearson(x, y)

    params = fit_logistic(x, y)
    fitted = predict(x, params)
    residuals = fitted - y
    try:
        pcc = pearson(fitted, y)
    except DegenerateInput:
        logger.warning("logistic mapping collapsed to a constant for %s", name or "dataset")
        pcc = 0.0

    return EvalReport(
        n=int(x.size),
        src=src,
        krc=krc,
        lpcc=lpcc,
        pcc=pcc,
        rmse=float(np.sqrt(np.mean(residuals ** 2))),
        params=params,
        residuals=residuals,
        name=name,
    )


def display_value(report: EvalReport, field: str, signed: bool = False) -> float:
    """Statistic for display; direction-only signs are dropped unless signed"""
    value = getattr(report, field)
    if not signed and field in SIGNED_FIELDS:
        return abs(value)
    return value


def aggregate_reports(
    reports: Sequence[EvalReport],
    weighted: bool = False,
    signed: bool = False,
) -> Dict[str, float]:
    """
    Average statistics across datasets

    Args:
        reports: Per-dataset reports
        weighted: Weight each dataset by its number of entries
        signed: Keep the sign of rank and linear correlations

    Returns:
        Mapping from statistic name to the (weighted) average
    """
    if not reports:
        raise DegenerateInput("no reports to aggregate")
    weights = np.array([r.n if weighted else 1 for r in reports], dtype=np.float64)
    averages = {}
    for field in STAT_FIELDS:
        values = np.array([display_value(r, field, signed) for r in reports])
        averages[field] = float(np.dot(weights, values) / weights.sum())
    return averages


@dataclass
class GroupSummary:
    """Per-distortion SRC values and their avg/min/std"""
    src_by_group: Dict[str, float]
    average: float
    minimum: float
    std: float


def summarize_groups(
    groups: Mapping[str, Sequence[float]],
    group_mos: Mapping[str, Sequence[float]],
    signed: bool = False,
) -> Optional[GroupSummary]:
    """
    SRC per distortion group plus summary columns

    Groups whose SRC is undefined (fewer than two entries or constant
    values) are skipped with a warning.
    """
    src_by_group: Dict[str, float] = {}
    for label, scores in groups.items():
        try:
            value = spearman(scores, group_mos[label])
        except DegenerateInput as e:
            logger.warning("skipping distortion group %s: %s", label, e)
            continue
        src_by_group[label] = value if signed else abs(value)

    if not src_by_group:
        return None
    values = np.array(list(src_by_group.values()))
    return GroupSummary(
        src_by_group=src_by_group,
        average=float(values.mean()),
        minimum=float(values.min()),
        std=float(values.std()),
    )


def report_rows(reports: List[EvalReport], signed: bool = False) -> List[List[str]]:
    """Formatted table rows, one per report"""
    rows = []
    for report in reports:
        rows.append(
            [report.name, str(report.n)]
            + [f"{display_value(report, f, signed):.4f}" for f in STAT_FIELDS]
        )
    return rows
