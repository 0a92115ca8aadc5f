"""
Five-parameter logistic mapping from metric scores to MOS

f(x) = b1 * (1/2 - 1 / (1 + exp(b2 * (x - b3)))) + b4 * x + b5

The denominator uses 1 + exp, the standard form of this mapping; the
1 - exp variant has a pole at x = b3.
"""
import warnings
from typing import List, Optional, Sequence

import numpy as np
from scipy import optimize, special

from ..core.errors import DegenerateInput, FitDiverged, LengthMismatch
from ..core.models import LogisticParams
from ..utils.logging import get_logger

logger = get_logger("evaluation.logistic")

MIN_POINTS = 5
RESTARTS = 5
SIMPLEX_ROUND = 50
MAX_EVALUATIONS = 10000
REL_TOLERANCE = 1e-10


def logistic(x, b1: float, b2: float, b3: float, b4: float, b5: float):
    """Evaluate the mapping; 1 / (1 + exp(z)) is computed as expit(-z)"""
    x = np.asarray(x, dtype=np.float64)
    return b1 * (0.5 - special.expit(-b2 * (x - b3))) + b4 * x + b5


def predict(scores: Sequence[float], params: LogisticParams) -> np.ndarray:
    return logistic(scores, *params.as_array())


def _sse(params: np.ndarray, x: np.ndarray, y: np.ndarray) -> float:
    with np.errstate(over="ignore", invalid="ignore"):
        value = float(np.sum((logistic(x, *params) - y) ** 2))
    return value if np.isfinite(value) else np.inf


def initial_guesses(x: np.ndarray, y: np.ndarray, count: int, seed: int) -> List[np.ndarray]:
    """
    Data-driven starting points

    The first guess puts b3 at the median score, b2 at 4 / score range,
    b1 at the MOS range and (b4, b5) at the least-squares line. The second
    is the pure straight line (b1 = 0). The rest are seeded perturbations
    of the first.
    """
    slope, intercept = np.polyfit(x, y, 1)
    x_range = float(np.ptp(x))
    y_range = float(np.ptp(y)) or 1.0
    direction = 1.0 if slope >= 0 else -1.0
    base = np.array([y_range, direction * 4.0 / x_range, float(np.median(x)), slope, intercept])
    line = np.array([0.0, base[1], base[2], slope, intercept])

    guesses = [base, line]
    rng = np.random.default_rng(seed)
    while len(guesses) < count + 1:
        jitter = base.copy()
        jitter[0] *= np.exp(rng.normal(0.0, 0.5))
        jitter[1] *= np.exp(rng.normal(0.0, 0.5))
        jitter[2] += rng.normal(0.0, 0.25) * x_range
        guesses.append(jitter)
    return guesses


def _damped_least_squares(start: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        try:
            params, _ = optimize.curve_fit(logistic, x, y, p0=start, method="lm", maxfev=5000)
        except (RuntimeError, ValueError, optimize.OptimizeWarning):
            return start
    return params if np.all(np.isfinite(params)) else start


def _simplex_refine(start: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Nelder-Mead in rounds of 50 iterations until the relative SSE gain stalls"""
    current = start
    current_sse = _sse(current, x, y)
    evaluations = 0
    while evaluations < MAX_EVALUATIONS:
        result = optimize.minimize(
            _sse, current, args=(x, y), method="Nelder-Mead",
            options={
                "maxiter": SIMPLEX_ROUND,
                "maxfev": MAX_EVALUATIONS - evaluations,
                "xatol": 0.0,
                "fatol": 0.0,
            },
        )
        evaluations += result.nfev
        if not np.isfinite(result.fun) or result.fun >= current_sse:
            break
        improvement = (current_sse - result.fun) / max(current_sse, np.finfo(float).tiny)
        current, current_sse = result.x, float(result.fun)
        if improvement < REL_TOLERANCE:
            break
    return current


def fit_logistic(
    scores: Sequence[float],
    mos: Sequence[float],
    restarts: int = RESTARTS,
    seed: int = 0,
) -> LogisticParams:
    """
    Fit the logistic mapping by minimizing the squared error against MOS

    Each starting point goes through a damped least-squares pass and a
    Nelder-Mead refinement; the lowest SSE wins. The model is not
    identifiable, so only the fitted function values are meaningful.

    Args:
        scores: Metric scores
        mos: Subjective scores
        restarts: Number of seeded random restarts
        seed: Seed for the restart perturbations

    Returns:
        Fitted LogisticParams
    """
    x = np.asarray(scores, dtype=np.float64).ravel()
    y = np.asarray(mos, dtype=np.float64).ravel()
    if x.size != y.size:
        raise LengthMismatch(f"scores and MOS differ in length: {x.size} vs {y.size}")
    if x.size < MIN_POINTS:
        raise DegenerateInput(f"logistic fitting needs at least {MIN_POINTS} points, got {x.size}")
    if np.all(x == x[0]):
        raise DegenerateInput("cannot fit a logistic mapping to constant scores")

    best: Optional[np.ndarray] = None
    best_sse = np.inf
    for index, start in enumerate(initial_guesses(x, y, restarts, seed)):
        for candidate in (start, _simplex_refine(_damped_least_squares(start, x, y), x, y)):
            sse = _sse(candidate, x, y)
            if sse < best_sse:
                best, best_sse = candidate, sse
        logger.debug("logistic start %d: best SSE so far %.6g", index, best_sse)

    if best is None:
        raise FitDiverged("logistic fit produced no finite error from any starting point")
    return LogisticParams.from_array(best)
