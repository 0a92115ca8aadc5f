"""
Pooling - collapses a similarity map to a scalar

Deviation pooling measures the spread of power-transformed map values
around their mean, then applies an outer power; mean and Minkowski pooling
are kept for ablations.
"""
import math
from typing import Union

import numpy as np

from ..core.config import PoolingConfig
from ..core.errors import EmptyInput
from ..core.models import Plane, PoolingStrategy
from ..utils.logging import get_logger

logger = get_logger("pooling")

ArrayOrScalar = Union[float, np.ndarray]


def signed_pow(x: ArrayOrScalar, q: float) -> ArrayOrScalar:
    """
    Real part of the principal power x ** q

    Non-negative bases give plain x ** q; a negative base gives
    |x| ** q * cos(q * pi).
    """
    values = np.asarray(x, dtype=np.float64)
    magnitude = np.power(np.abs(values), q)
    result = np.where(values < 0.0, magnitude * math.cos(q * math.pi), magnitude)
    if np.ndim(x) == 0:
        return float(result)
    return result


def _flatten(sim_map: Plane) -> np.ndarray:
    values = np.asarray(sim_map, dtype=np.float64).ravel()
    if values.size == 0:
        raise EmptyInput("cannot pool an empty map")
    return values


def _fractional(q: float) -> bool:
    return q != math.floor(q)


def negative_count(sim_map: Plane, cfg: PoolingConfig) -> int:
    """Number of map values pooling raises to a fractional power while negative"""
    if cfg.strategy == PoolingStrategy.MEAN or not _fractional(cfg.q):
        return 0
    return int(np.count_nonzero(np.asarray(sim_map) < 0.0))


def _powered(values: np.ndarray, q: float) -> np.ndarray:
    negatives = int(np.count_nonzero(values < 0.0))
    if negatives and _fractional(q):
        logger.debug(
            "%d of %d map values are negative; using the real part of the principal root for power %g",
            negatives, values.size, q,
        )
    return signed_pow(values, q)


def deviation_pool(sim_map: Plane, cfg: PoolingConfig) -> float:
    """
    Generalized deviation pooling

    With y = signed_pow(x, q) and mu = mean(y), returns
    (mean(|y - mu| ** rho)) ** (o / rho). Zero exactly when all y are equal.

    Args:
        sim_map: Similarity map (any shape)
        cfg: Pooling parameters rho, q, o

    Returns:
        Non-negative score, larger for more distorted images
    """
    y = _powered(_flatten(sim_map), cfg.q)
    if np.all(y == y[0]):
        return 0.0
    mu = np.mean(y)
    spread = np.mean(np.power(np.abs(y - mu), cfg.rho))
    return float(np.power(spread, cfg.o / cfg.rho))


def mean_pool(sim_map: Plane) -> float:
    return float(np.mean(_flatten(sim_map)))


def minkowski_pool(sim_map: Plane, p: float) -> float:
    """Mean of the map raised to p, negatives through signed_pow"""
    return float(np.mean(_powered(_flatten(sim_map), p)))


def pool(sim_map: Plane, cfg: PoolingConfig) -> float:
    """Dispatch on the configured pooling strategy; Minkowski uses q as its exponent"""
    if cfg.strategy == PoolingStrategy.DEVIATION:
        return deviation_pool(sim_map, cfg)
    if cfg.strategy == PoolingStrategy.MEAN:
        return mean_pool(sim_map)
    return minkowski_pool(sim_map, cfg.q)
