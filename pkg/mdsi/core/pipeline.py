"""
MDSI Pipeline - Orchestrates preprocessing, color conversion, gradients,
similarity maps and pooling into a single quality score
"""
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Dict, Optional, Tuple, Union

import numpy as np

from ..loaders.image_loader import load_image, validate_pair
from ..processing.colorspace import to_lhm
from ..processing.gradient import prewitt_magnitude
from ..processing.pooling import negative_count, pool
from ..processing.preprocess import box_filter_downsample, downsample_factor
from ..processing.similarity import (
    combine, cs_hat, cs_two_factor, fused_luma, gs_hat_from_gradients, gs_map
)
from ..utils.logging import get_logger
from .config import MetricConfig
from .models import ChannelTriplet, ChromaVariant, GradientVariant, Plane, QualityScore, RgbImage

logger = get_logger("pipeline")

# PSNR of identical images
PSNR_PERFECT = math.inf


@dataclass
class PreparedPair:
    """
    Preprocessed and color-converted image pair

    Gradient magnitudes are computed on first use and cached, so every
    variant scored from the same pair shares them.
    """
    ref: ChannelTriplet
    dist: ChannelTriplet
    source_dims: Tuple[int, int]
    factor: int

    @property
    def processed_dims(self) -> Tuple[int, int]:
        return self.ref.dims

    @cached_property
    def grad_ref(self) -> Plane:
        return prewitt_magnitude(self.ref.L)

    @cached_property
    def grad_dist(self) -> Plane:
        return prewitt_magnitude(self.dist.L)

    @cached_property
    def grad_fused(self) -> Plane:
        return prewitt_magnitude(fused_luma(self.ref.L, self.dist.L))


class MDSIMetric:
    """
    Mean deviation similarity index

    Every ablation variant is selected through the MetricConfig; the
    default configuration is the fused-gradient, joint-chromaticity,
    summation, deviation-pooled index.
    """

    def __init__(self, config: Optional[MetricConfig] = None):
        """
        Initialize the metric

        Args:
            config: Metric configuration, defaults to MetricConfig()
        """
        self.config = config or MetricConfig()

    def prepare(self, ref: RgbImage, dist: RgbImage) -> PreparedPair:
        """Validate, downsample and convert both images to (L, H, M)"""
        validate_pair(ref, dist)
        factor = downsample_factor(ref.height, ref.width)
        small_ref = box_filter_downsample(ref, factor)
        small_dist = box_filter_downsample(dist, factor)
        logger.debug(
            "downsample factor %d: %dx%d -> %dx%d",
            factor, ref.height, ref.width, small_ref.height, small_ref.width,
        )
        return PreparedPair(
            ref=to_lhm(small_ref),
            dist=to_lhm(small_dist),
            source_dims=ref.dims,
            factor=factor,
        )

    def similarity_maps(
        self, pair: PreparedPair, config: Optional[MetricConfig] = None
    ) -> Dict[str, Plane]:
        """
        Build the gradient, chromaticity and combined maps of a prepared pair

        Returns:
            Mapping with "gs", the chromaticity map ("cs" or "cs_hat"), the
            fused gradient map "gs_hat" when selected, and the combined map
            ("gcs" or "gcs_hat") that pooling consumes under key "combined"
        """
        cfg = config or self.config
        maps: Dict[str, Plane] = {}

        maps["gs"] = gs_map(pair.grad_ref, pair.grad_dist, cfg.c1)
        if cfg.gradient_variant == GradientVariant.FUSED:
            gradient = gs_hat_from_gradients(
                pair.grad_ref, pair.grad_dist, pair.grad_fused, cfg.c1, cfg.c2
            )
            maps["gs_hat"] = gradient
        else:
            gradient = maps["gs"]

        ref, dist = pair.ref, pair.dist
        if cfg.chroma_variant == ChromaVariant.JOINT_CS_HAT:
            chroma = cs_hat(ref.H, dist.H, ref.M, dist.M, cfg.c3)
            maps["cs_hat"] = chroma
        else:
            chroma = cs_two_factor(ref.H, dist.H, ref.M, dist.M, cfg.c3)
            maps["cs"] = chroma

        combined = combine(gradient, chroma, cfg)
        combined_name = "gcs_hat" if cfg.gradient_variant == GradientVariant.FUSED else "gcs"
        maps[combined_name] = combined
        maps["combined"] = combined
        return maps

    def score_prepared(
        self,
        pair: PreparedPair,
        config: Optional[MetricConfig] = None,
        keep_maps: bool = False,
    ) -> QualityScore:
        """Score a prepared pair under the given (or the metric's) configuration"""
        cfg = config or self.config
        maps = self.similarity_maps(pair, cfg)
        value = pool(maps["combined"], cfg.pooling)
        negatives = negative_count(maps["combined"], cfg.pooling)
        if not keep_maps:
            maps = {}
        else:
            maps.pop("combined")
        return QualityScore(
            value=value,
            config=cfg,
            source_dims=pair.source_dims,
            processed_dims=pair.processed_dims,
            maps=maps,
            negative_values=negatives,
        )

    def compute(self, ref: RgbImage, dist: RgbImage, keep_maps: bool = False) -> QualityScore:
        """
        Score a distorted image against its reference

        Args:
            ref: Reference image
            dist: Distorted image of the same size
            keep_maps: Attach the intermediate similarity maps to the result

        Returns:
            QualityScore; 0 for identical images, larger for worse quality
        """
        return self.score_prepared(self.prepare(ref, dist), keep_maps=keep_maps)

    def compute_files(
        self,
        ref_path: Union[str, Path],
        dist_path: Union[str, Path],
        keep_maps: bool = False,
    ) -> QualityScore:
        return self.compute(load_image(ref_path), load_image(dist_path), keep_maps=keep_maps)


def mdsi(ref: RgbImage, dist: RgbImage, config: Optional[MetricConfig] = None) -> QualityScore:
    """Score one pair with a one-off MDSIMetric"""
    return MDSIMetric(config).compute(ref, dist)


def psnr(ref: RgbImage, dist: RgbImage) -> float:
    """
    Peak signal-to-noise ratio over all RGB samples, in dB

    Identical images return PSNR_PERFECT (+inf).
    """
    validate_pair(ref, dist)
    mse = float(np.mean((ref.data - dist.data) ** 2))
    if mse == 0.0:
        return PSNR_PERFECT
    return 10.0 * math.log10(255.0 ** 2 / mse)
