"""
Prewitt gradient magnitudes of luminance planes
"""
import numpy as np
from scipy import signal

from ..core.models import Plane

PREWITT_X = np.array([
    [1.0, 0.0, -1.0],
    [1.0, 0.0, -1.0],
    [1.0, 0.0, -1.0],
]) / 3.0
PREWITT_Y = PREWITT_X.T


def prewitt_magnitude(lum: Plane) -> Plane:
    """
    Gradient magnitude sqrt(Gx^2 + Gy^2) of a plane

    Gx and Gy are zero-padded "same"-size convolutions with the
    1/3-normalized Prewitt kernels.
    """
    lum = np.asarray(lum, dtype=np.float64)
    gx = signal.convolve2d(lum, PREWITT_X, mode="same", boundary="fill", fillvalue=0.0)
    gy = signal.convolve2d(lum, PREWITT_Y, mode="same", boundary="fill", fillvalue=0.0)
    return np.sqrt(gx * gx + gy * gy)
