"""
Correlation coefficients between metric scores and subjective scores
"""
from typing import Sequence, Tuple

import numpy as np
from scipy import stats

from ..core.errors import DegenerateInput, LengthMismatch


def _paired(x: Sequence[float], y: Sequence[float]) -> Tuple[np.ndarray, np.ndarray]:
    a = np.asarray(x, dtype=np.float64).ravel()
    b = np.asarray(y, dtype=np.float64).ravel()
    if a.size != b.size:
        raise LengthMismatch(f"vectors have different lengths: {a.size} vs {b.size}")
    if a.size < 2:
        raise DegenerateInput("at least two paired values are required")
    if np.all(a == a[0]) or np.all(b == b[0]):
        raise DegenerateInput("correlation is undefined for a constant vector")
    return a, b


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Linear correlation coefficient"""
    a, b = _paired(x, y)
    da = a - a.mean()
    db = b - b.mean()
    r = float(np.dot(da, db) / np.sqrt(np.dot(da, da) * np.dot(db, db)))
    return max(-1.0, min(1.0, r))


def spearman(x: Sequence[float], y: Sequence[float]) -> float:
    """Spearman rank-order correlation; tied values share their average rank"""
    a, b = _paired(x, y)
    return pearson(stats.rankdata(a), stats.rankdata(b))


def kendall(x: Sequence[float], y: Sequence[float]) -> float:
    """Kendall tau-b rank correlation with tie correction"""
    a, b = _paired(x, y)
    tau, _ = stats.kendalltau(a, b, variant="b")
    return max(-1.0, min(1.0, float(tau)))
