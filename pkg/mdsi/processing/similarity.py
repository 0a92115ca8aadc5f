"""
Similarity maps: gradient similarity (conventional and fused), chromaticity
similarity (two-factor and joint) and their combination
"""
import numpy as np

from ..core.config import MetricConfig
from ..core.errors import ShapeMismatch
from ..core.models import CombineScheme, Plane
from .gradient import prewitt_magnitude


def _check_shapes(*planes: Plane) -> None:
    first = planes[0].shape
    for plane in planes[1:]:
        if plane.shape != first:
            raise ShapeMismatch(first, plane.shape)


def gs_map(gr: Plane, gd: Plane, c: float) -> Plane:
    """SSIM-style gradient similarity (2 gr gd + c) / (gr^2 + gd^2 + c)"""
    _check_shapes(gr, gd)
    return (2.0 * gr * gd + c) / (gr * gr + gd * gd + c)


def fused_luma(lr: Plane, ld: Plane) -> Plane:
    """Average of reference and distorted luminance"""
    _check_shapes(lr, ld)
    return 0.5 * (lr + ld)


def gs_hat_from_gradients(gr: Plane, gd: Plane, gf: Plane, c1: float, c2: float) -> Plane:
    """Fused gradient similarity from precomputed magnitudes: GS_RD + GS_DF - GS_RF"""
    _check_shapes(gr, gd, gf)
    return gs_map(gr, gd, c1) + (gs_map(gd, gf, c2) - gs_map(gr, gf, c2))


def gs_hat_map(lr: Plane, ld: Plane, c1: float, c2: float) -> Plane:
    """
    Fused gradient similarity of two luminance planes

    The gradient of the fused plane is taken after averaging, so it
    generally differs from the average of the two gradients. Edges removed
    from the distorted image drive the correction term negative.
    """
    _check_shapes(lr, ld)
    fused = fused_luma(lr, ld)
    return gs_hat_from_gradients(
        prewitt_magnitude(lr), prewitt_magnitude(ld), prewitt_magnitude(fused), c1, c2
    )


def cs_two_factor(hr: Plane, hd: Plane, mr: Plane, md: Plane, c3: float) -> Plane:
    """Product of the per-channel H and M similarities"""
    _check_shapes(hr, hd, mr, md)
    sim_h = (2.0 * hr * hd + c3) / (hr * hr + hd * hd + c3)
    sim_m = (2.0 * mr * md + c3) / (mr * mr + md * md + c3)
    return sim_h * sim_m


def cs_hat(hr: Plane, hd: Plane, mr: Plane, md: Plane, c3: float) -> Plane:
    """Joint chromaticity similarity over both channels at once; signed, not clamped"""
    _check_shapes(hr, hd, mr, md)
    numerator = 2.0 * (hr * hd + mr * md) + c3
    denominator = (hr * hr + hd * hd) + (mr * mr + md * md) + c3
    return numerator / denominator


def combine(gs: Plane, cs: Plane, cfg: MetricConfig) -> Plane:
    """
    Merge gradient and chromaticity maps

    Summation: alpha * gs + (1 - alpha) * cs.
    Multiplication: max(gs, 0) ** gamma * max(cs, 0) ** beta, always real.
    """
    _check_shapes(gs, cs)
    if cfg.combine == CombineScheme.SUMMATION:
        return cfg.alpha * gs + (1.0 - cfg.alpha) * cs
    return np.power(np.maximum(gs, 0.0), cfg.gamma) * np.power(np.maximum(cs, 0.0), cfg.beta)
