"""
MDSI - Mean Deviation Similarity Index for full-reference image quality assessment

This package scores distorted images against their references with gradient
similarity, fused gradient similarity, joint chromaticity similarity and
generalized deviation pooling, and evaluates metric scores against
subjective ratings (SRC/KRC/PCC/RMSE, logistic mapping, F-test).
"""

__version__ = "1.0.0"
__author__ = "MDSI-IQA Team"

from .core.config import MetricConfig, PoolingConfig, PRESETS
from .core.models import RgbImage, ChannelTriplet, QualityScore, EvalReport, Dataset, ManifestEntry
from .core.pipeline import MDSIMetric, mdsi, psnr
from .loaders.image_loader import load_image, validate_pair
from .loaders.manifest_loader import load_manifest
from .evaluation.report import evaluate

__all__ = [
    "MetricConfig",
    "PoolingConfig",
    "PRESETS",
    "RgbImage",
    "ChannelTriplet",
    "QualityScore",
    "EvalReport",
    "Dataset",
    "ManifestEntry",
    "MDSIMetric",
    "mdsi",
    "psnr",
    "load_image",
    "validate_pair",
    "load_manifest",
    "evaluate",
]
