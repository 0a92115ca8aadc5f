"""
Image Loader - Decodes image files into RgbImage and checks pair compatibility
"""
from pathlib import Path
from typing import Union

import numpy as np
from PIL import Image, UnidentifiedImageError

from ..core.errors import DecodeError, ImageIOError, ShapeMismatch
from ..core.models import RgbImage
from ..utils.logging import get_logger

logger = get_logger("loaders.image")

# PIL modes carrying more than 8 bits per sample
_WIDE_MODES = {"I;16", "I;16B", "I;16L", "I;16N", "I"}
_WIDE_SCALE = 255.0 / 65535.0


def load_image(path: Union[str, Path]) -> RgbImage:
    """
    Load a PNG/JPEG/BMP file as an RgbImage with samples in [0, 255]

    8-bit channels keep their integer value, 16-bit samples are rescaled by
    255/65535 and grayscale input is replicated to three channels.

    Args:
        path: Image file path

    Returns:
        Decoded RgbImage
    """
    path = Path(path)
    if not path.is_file():
        raise ImageIOError(f"cannot read image file {path}")

    try:
        with Image.open(path) as img:
            img.load()
            array = _to_rgb_array(img)
    except UnidentifiedImageError as e:
        raise DecodeError(f"unsupported image format: {path}") from e
    except PermissionError as e:
        raise ImageIOError(f"cannot read image file {path}: {e}") from e
    except (OSError, SyntaxError, ValueError) as e:
        raise DecodeError(f"corrupt image file {path}: {e}") from e

    logger.debug("loaded %s (%dx%d)", path, array.shape[1], array.shape[0])
    return RgbImage(array)


def _to_rgb_array(img: Image.Image) -> np.ndarray:
    if img.mode in _WIDE_MODES:
        gray = np.asarray(img, dtype=np.float64) * _WIDE_SCALE
        gray = np.clip(gray, 0.0, 255.0)
        return np.repeat(gray[:, :, np.newaxis], 3, axis=2)
    if img.mode != "RGB":
        img = img.convert("RGB")
    return np.asarray(img, dtype=np.float64)


def validate_pair(ref: RgbImage, dist: RgbImage) -> None:
    """Raise ShapeMismatch unless both images have identical dimensions"""
    if ref.dims != dist.dims:
        raise ShapeMismatch(ref.dims, dist.dims)
