"""
Preprocessing - mean-filter downsampling applied before any metric computation
"""
import math

import numpy as np

from ..core.errors import DimensionError
from ..core.models import Plane, RgbImage

# Images are reduced so that their short side lands near this many pixels
TARGET_SIDE = 256


def downsample_factor(height: int, width: int) -> int:
    """
    Downsampling factor M = round(min(h, w) / 256), never below 1

    Ties round away from zero.
    """
    if height < 1 or width < 1:
        raise DimensionError(f"image dimensions must be positive, got {height}x{width}")
    ratio = min(height, width) / TARGET_SIDE
    factor = int(math.floor(ratio + 0.5))
    return max(factor, 1)


def box_filter_downsample(img: RgbImage, factor: int) -> RgbImage:
    """
    Apply an M x M mean filter to every channel and keep rows/cols 0, M, 2M, ...

    The filter is zero-padded at the borders. For even M the window of
    output pixel i spans input rows i*M - (M - 1) // 2 .. i*M + M // 2, the
    "same"-size alignment of a full 2-D convolution.

    Args:
        img: Source image
        factor: Filter size and stride M

    Returns:
        Image of size ceil(h / M) x ceil(w / M)
    """
    if factor < 1:
        raise DimensionError(f"downsampling factor must be >= 1, got {factor}")
    if factor == 1:
        return img

    out_h = -(-img.height // factor)
    out_w = -(-img.width // factor)
    if out_h < 1 or out_w < 1:
        raise DimensionError("downsampled image would be empty")

    channels = [_mean_filter_strided(img.channel(c), factor) for c in range(3)]
    return RgbImage(np.stack(channels, axis=2))


def _mean_filter_strided(plane: Plane, factor: int) -> Plane:
    """Mean filter evaluated only at the strided sample positions"""
    before = (factor - 1) // 2
    after = factor // 2
    padded = np.pad(plane, ((before, after), (before, after)), mode="constant")

    out_h = -(-plane.shape[0] // factor)
    out_w = -(-plane.shape[1] // factor)
    total = np.zeros((out_h, out_w), dtype=np.float64)
    # Output (r, c) sums padded rows r*M .. r*M + M - 1 and the same columns
    for di in range(factor):
        for dj in range(factor):
            total += padded[di::factor, dj::factor][:out_h, :out_w]
    # Rounding can push a full-255 window a hair above range
    return np.clip(total / (factor * factor), 0.0, 255.0)
