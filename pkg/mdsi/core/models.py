"""
Core data models for MDSI quality assessment
"""
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import TYPE_CHECKING, Any, Dict, List, Optional, Tuple

import numpy as np

from .errors import DimensionError

if TYPE_CHECKING:
    from .config import MetricConfig

# Single-channel 2-D grid of float64 samples
Plane = np.ndarray


class GradientVariant(str, Enum):
    """Gradient similarity flavours"""
    CONVENTIONAL = "conventional"
    FUSED = "fused"


class ChromaVariant(str, Enum):
    """Chromaticity similarity flavours"""
    TWO_FACTOR_CS = "two_factor_cs"
    JOINT_CS_HAT = "joint_cs_hat"


class CombineScheme(str, Enum):
    """How gradient and chromaticity maps are merged"""
    SUMMATION = "summation"
    MULTIPLICATION = "multiplication"


class PoolingStrategy(str, Enum):
    """Similarity map reductions"""
    DEVIATION = "deviation"
    MEAN = "mean"
    MINKOWSKI = "minkowski"


class FTestVerdict(Enum):
    """Outcome of a residual variance comparison, in +1/-1/0 table convention"""
    A_BETTER = 1
    B_BETTER = -1
    INDISTINGUISHABLE = 0

    def mirrored(self) -> "FTestVerdict":
        """Verdict seen from the other metric's side"""
        return FTestVerdict(-self.value)


@dataclass(frozen=True)
class RgbImage:
    """RGB image with float64 samples in [0, 255], stored as a (height, width, 3) array"""
    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.float64)
        if data.ndim != 3 or data.shape[2] != 3:
            raise DimensionError(f"expected a (height, width, 3) array, got shape {data.shape}")
        if data.shape[0] < 1 or data.shape[1] < 1:
            raise DimensionError(f"image must be at least 1x1, got {data.shape[0]}x{data.shape[1]}")
        if not np.all(np.isfinite(data)):
            raise DimensionError("image samples must be finite")
        if data.min() < 0.0 or data.max() > 255.0:
            raise DimensionError("image samples must lie in [0, 255]")
        object.__setattr__(self, "data", data)

    @classmethod
    def from_array(cls, array: Any) -> "RgbImage":
        """Build from an (h, w, 3) or grayscale (h, w) array; grayscale is replicated"""
        array = np.asarray(array, dtype=np.float64)
        if array.ndim == 2:
            array = np.repeat(array[:, :, np.newaxis], 3, axis=2)
        return cls(array)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def dims(self) -> Tuple[int, int]:
        """(height, width)"""
        return self.data.shape[0], self.data.shape[1]

    def channel(self, index: int) -> Plane:
        return self.data[:, :, index]


@dataclass(frozen=True)
class ChannelTriplet:
    """Luminance and the two chromaticity planes of one image"""
    L: Plane
    H: Plane
    M: Plane

    @property
    def dims(self) -> Tuple[int, int]:
        return self.L.shape[0], self.L.shape[1]


@dataclass
class QualityScore:
    """MDSI output for one image pair"""
    value: float
    config: "MetricConfig"
    source_dims: Tuple[int, int]
    processed_dims: Tuple[int, int]
    maps: Dict[str, Plane] = field(default_factory=dict)
    # Combined-map values pooled through the principal-root branch
    negative_values: int = 0

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready representation (maps excluded)"""
        return {
            "score": self.value,
            "config": self.config.to_flat_dict(),
            "dims": {
                "height": self.source_dims[0],
                "width": self.source_dims[1],
                "processed_height": self.processed_dims[0],
                "processed_width": self.processed_dims[1],
            },
        }


@dataclass
class ManifestEntry:
    """One distorted image with its reference and subjective score"""
    ref_path: Path
    dist_path: Path
    mos: float
    distortion: Optional[str] = None
    level: Optional[int] = None


@dataclass
class Dataset:
    """Named collection of manifest entries"""
    name: str
    entries: List[ManifestEntry] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def mos(self) -> np.ndarray:
        return np.array([entry.mos for entry in self.entries], dtype=np.float64)


@dataclass(frozen=True)
class LogisticParams:
    """Parameters of the five-parameter logistic mapping"""
    beta1: float
    beta2: float
    beta3: float
    beta4: float
    beta5: float

    def as_array(self) -> np.ndarray:
        return np.array([self.beta1, self.beta2, self.beta3, self.beta4, self.beta5])

    @classmethod
    def from_array(cls, values: Any) -> "LogisticParams":
        return cls(*(float(v) for v in values))


@dataclass
class EvalReport:
    """Correlation statistics of one score vector against MOS"""
    n: int
    src: float
    krc: float
    lpcc: float
    pcc: float
    rmse: float
    params: LogisticParams
    residuals: np.ndarray
    name: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "n": self.n,
            "src": self.src,
            "krc": self.krc,
            "lpcc": self.lpcc,
            "pcc": self.pcc,
            "rmse": self.rmse,
            "params": [float(v) for v in self.params.as_array()],
        }
