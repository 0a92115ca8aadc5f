"""
Color conversion from RGB to luminance plus two Gaussian-color-model chromaticity channels
"""
import numpy as np

from ..core.models import ChannelTriplet, RgbImage

# Rows produce L, H and M from (R, G, B)
LHM_MATRIX = np.array([
    [0.2989, 0.5870, 0.1140],
    [0.30, 0.04, -0.35],
    [0.34, -0.60, 0.17],
])


def to_lhm(img: RgbImage) -> ChannelTriplet:
    """
    Convert an image to its (L, H, M) planes

    Chromaticity planes are signed and left unclamped.
    """
    r, g, b = img.channel(0), img.channel(1), img.channel(2)
    planes = [row[0] * r + row[1] * g + row[2] * b for row in LHM_MATRIX]
    return ChannelTriplet(L=planes[0], H=planes[1], M=planes[2])
