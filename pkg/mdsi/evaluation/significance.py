"""
F-test on regression residuals for statistical superiority between metrics
"""
from typing import List, Mapping, Sequence, Tuple

import numpy as np
from scipy import special

from ..core.errors import DegenerateInput
from ..core.models import FTestVerdict

DEFAULT_SIGNIFICANCE = 0.05


def f_cdf(x: float, d1: float, d2: float) -> float:
    """CDF of the F distribution via the regularized incomplete beta function"""
    if x <= 0.0:
        return 0.0
    z = d1 * x / (d1 * x + d2)
    return float(special.betainc(d1 / 2.0, d2 / 2.0, z))


def f_test(
    residuals_a: Sequence[float],
    residuals_b: Sequence[float],
    significance: float = DEFAULT_SIGNIFICANCE,
) -> FTestVerdict:
    """
    Two-tailed variance-ratio test between two residual vectors

    Args:
        residuals_a: Residuals of metric A after logistic mapping
        residuals_b: Residuals of metric B
        significance: Test level, 0.05 for 95%

    Returns:
        The metric with the smaller residual variance when the difference
        is significant, INDISTINGUISHABLE otherwise
    """
    if not 0.0 < significance < 1.0:
        raise ValueError(f"significance must lie in (0, 1), got {significance}")
    a = np.asarray(residuals_a, dtype=np.float64).ravel()
    b = np.asarray(residuals_b, dtype=np.float64).ravel()
    if a.size < 2 or b.size < 2:
        raise DegenerateInput("F-test needs at least two residuals on each side")

    var_a = float(np.var(a, ddof=1))
    var_b = float(np.var(b, ddof=1))
    if var_a == 0.0 and var_b == 0.0:
        raise DegenerateInput("both residual vectors have zero variance")
    if var_b == 0.0:
        return FTestVerdict.B_BETTER
    if var_a == 0.0:
        return FTestVerdict.A_BETTER

    ratio = var_a / var_b
    cdf = f_cdf(ratio, a.size - 1, b.size - 1)
    p_value = 2.0 * min(cdf, 1.0 - cdf)
    if p_value >= significance:
        return FTestVerdict.INDISTINGUISHABLE
    return FTestVerdict.A_BETTER if var_a < var_b else FTestVerdict.B_BETTER


def f_test_matrix(
    residuals: Mapping[str, Sequence[float]],
    significance: float = DEFAULT_SIGNIFICANCE,
) -> Tuple[List[str], np.ndarray]:
    """
    Pairwise +1/-1/0 matrix; entry (i, j) is +1 when i is significantly better than j

    Returns:
        Row/column names and the integer matrix; pairs the test cannot
        rank stay 0
    """
    names = list(residuals)
    matrix = np.zeros((len(names), len(names)), dtype=int)
    for i, name_i in enumerate(names):
        for j in range(i + 1, len(names)):
            try:
                verdict = f_test(residuals[name_i], residuals[names[j]], significance)
            except DegenerateInput:
                # Two perfect fits cannot be ranked
                continue
            matrix[i, j] = verdict.value
            matrix[j, i] = verdict.mirrored().value
    return names, matrix
