"""
Ablation Engine - scores a dataset under every compared variant of the metric

Cells cover pooling strategy x exponent, summation vs multiplication,
two-factor vs joint chromaticity similarity under three poolings,
conventional vs fused gradients and, optionally, a parameter sensitivity
grid, a chromaticity x pooling x C3 sweep and an outer-power sweep whose
cells also report linear correlations.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.config import MetricConfig
from ..core.errors import MDSIError
from ..core.models import ChromaVariant, CombineScheme, Dataset, EvalReport, GradientVariant
from ..utils.logging import get_logger
from .batch import BatchScorer
from .correlation import spearman
from .report import evaluate
from .significance import DEFAULT_SIGNIFICANCE, f_test_matrix

logger = get_logger("evaluation.ablation")

EXPONENTS = (0.25, 0.5, 1.0, 2.0, 4.0)
SENSITIVITY_ALPHAS = (0.5, 0.55, 0.6, 0.65, 0.7)
SENSITIVITY_C3 = (300.0, 400.0, 500.0, 600.0)
CHROMA_SWEEP_C3 = tuple(float(c3) for c3 in range(100, 1001, 100))
OUTER_POWERS = (0.125, 0.25, 0.5, 1.0)

# (C1 / C3, C2 / C3) tying the three constants together in the sensitivity grid
SENSITIVITY_RELATIONS: Dict[str, Tuple[float, float]] = {
    "conventional": (1.0 / 4.0, 1.0 / 10.0),
    "fused": (1.0 / 3.0, 1.0 / 6.0),
}

# (label, flat overrides) of the three pooling families
POOLINGS = (
    ("Mean", {"strategy": "minkowski"}),
    ("MAD", {"strategy": "deviation", "rho": 1.0}),
    ("SD", {"strategy": "deviation", "rho": 2.0}),
)

# Cells whose fitted LPCC/PCC are reported alongside SRC
LINEARITY_GROUP = "power"


@dataclass(frozen=True)
class AblationCell:
    """One variant of the metric in the sweep"""
    group: str
    label: str
    config: MetricConfig

    @property
    def name(self) -> str:
        return f"{self.group}: {self.label}"


@dataclass
class AblationResult:
    """SRC per cell, with optional fitted reports and F-test matrix"""
    cells: List[AblationCell]
    src: List[float]
    n: int
    failures: int
    reports: Optional[List[Optional[EvalReport]]] = None
    ftest: Optional[Tuple[List[str], np.ndarray]] = None


def _exponent_label(q: float) -> str:
    return str(Fraction(q).limit_denominator(16))


def sensitivity_relation(base: MetricConfig) -> Tuple[float, float]:
    """The (C1 / C3, C2 / C3) relation closest to the base configuration's own ratios"""
    r1 = base.c1 / base.c3
    r2 = base.c2 / base.c3
    return min(
        SENSITIVITY_RELATIONS.values(),
        key=lambda relation: abs(relation[0] - r1) + abs(relation[1] - r2),
    )


def build_cells(
    base: Optional[MetricConfig] = None,
    sensitivity: bool = False,
    chroma_sweep: bool = False,
    power_sweep: bool = False,
) -> List[AblationCell]:
    """
    Enumerate the ablation cells derived from a base configuration

    Args:
        base: Configuration the variants are derived from
        sensitivity: Add the alpha x C3 grid; C1 and C2 follow C3 through
            the relation closest to the base constants
        chroma_sweep: Add both chromaticity maps x three poolings over a
            wide range of C3
        power_sweep: Add outer-power variants of the deviation pooling

    Returns:
        Cells in table order
    """
    base = base or MetricConfig()
    cells: List[AblationCell] = []

    for label, overrides in POOLINGS:
        for q in EXPONENTS:
            cells.append(AblationCell(
                "pooling", f"{label} q={_exponent_label(q)}", base.with_options(q=q, **overrides)
            ))

    for scheme in CombineScheme:
        cells.append(AblationCell("combination", scheme.value, base.with_options(combine=scheme.value)))

    for variant in ChromaVariant:
        for label, overrides in POOLINGS:
            cells.append(AblationCell(
                "chroma", f"{variant.value} {label}",
                base.with_options(chroma_variant=variant.value, **overrides),
            ))

    for variant in GradientVariant:
        cells.append(AblationCell(
            "gradient", variant.value, base.with_options(gradient_variant=variant.value)
        ))

    if sensitivity:
        c1_ratio, c2_ratio = sensitivity_relation(base)
        for alpha in SENSITIVITY_ALPHAS:
            for c3 in SENSITIVITY_C3:
                cells.append(AblationCell(
                    "sensitivity", f"alpha={alpha:g} C3={c3:g}",
                    base.with_options(alpha=alpha, c1=c3 * c1_ratio, c2=c3 * c2_ratio, c3=c3),
                ))

    if chroma_sweep:
        for variant in ChromaVariant:
            for label, overrides in POOLINGS:
                for c3 in CHROMA_SWEEP_C3:
                    cells.append(AblationCell(
                        "chroma-c3", f"{variant.value} {label} C3={c3:g}",
                        base.with_options(chroma_variant=variant.value, c3=c3, **overrides),
                    ))

    if power_sweep:
        for o in OUTER_POWERS:
            cells.append(AblationCell(
                LINEARITY_GROUP, f"o={_exponent_label(o)}",
                base.with_options(strategy="deviation", o=o),
            ))
    return cells


class AblationEngine:
    """
    Runs the ablation sweep over a dataset

    Each image pair is loaded and prepared once; every distinct cell
    configuration is then scored from the cached planes.
    """

    def __init__(
        self,
        base: Optional[MetricConfig] = None,
        threads: int = 1,
        sensitivity: bool = False,
        ftest: bool = False,
        significance: float = DEFAULT_SIGNIFICANCE,
        chroma_sweep: bool = False,
        power_sweep: bool = False,
    ):
        self.cells = build_cells(base, sensitivity, chroma_sweep, power_sweep)
        self.threads = threads
        self.ftest = ftest
        self.significance = significance

    def run(self, dataset: Dataset) -> AblationResult:
        unique: Dict[MetricConfig, int] = {}
        for cell in self.cells:
            unique.setdefault(cell.config, len(unique))
        configs = list(unique)

        batch = BatchScorer(configs, threads=self.threads).score(dataset)
        mos = batch.mos
        columns = [batch.column(unique[cell.config]) for cell in self.cells]

        src = []
        for cell, scores in zip(self.cells, columns):
            try:
                src.append(spearman(scores, mos))
            except MDSIError as e:
                logger.warning("SRC undefined for %s: %s", cell.name, e)
                src.append(float("nan"))

        result = AblationResult(
            cells=self.cells, src=src, n=len(mos), failures=len(batch.failures)
        )
        wanted = [self.ftest or cell.group == LINEARITY_GROUP for cell in self.cells]
        if any(wanted):
            result.reports = self._reports(columns, mos, wanted)
        if self.ftest:
            residuals = {
                cell.name: report.residuals
                for cell, report in zip(self.cells, result.reports)
                if report is not None
            }
            if len(residuals) >= 2:
                result.ftest = f_test_matrix(residuals, self.significance)
        return result

    def _reports(
        self, columns: List[np.ndarray], mos: np.ndarray, wanted: Sequence[bool]
    ) -> List[Optional[EvalReport]]:
        reports: List[Optional[EvalReport]] = []
        for cell, scores, needed in zip(self.cells, columns, wanted):
            if not needed:
                reports.append(None)
                continue
            try:
                reports.append(evaluate(scores, mos, name=cell.name))
            except MDSIError as e:
                logger.warning("cannot evaluate %s: %s", cell.name, e)
                reports.append(None)
        return reports
