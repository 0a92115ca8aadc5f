"""
Shared fixtures for the MDSI test suite
"""
import logging

import numpy as np
import pytest

from mdsi.core.models import RgbImage
from mdsi.utils.logging import ROOT_LOGGER
from synthetic import save_png, structured_image


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def random_image(rng):
    """Factory for random RgbImages"""
    def make(height: int = 16, width: int = 16) -> RgbImage:
        return RgbImage(rng.uniform(0.0, 255.0, size=(height, width, 3)))
    return make


@pytest.fixture
def seed_image():
    return RgbImage(structured_image(7))


@pytest.fixture
def png_writer(tmp_path):
    """Write an (h, w, 3) array as an 8-bit PNG under tmp_path"""
    def write(name: str, array: np.ndarray):
        path = tmp_path / name
        save_png(path, array)
        return path
    return write


@pytest.fixture
def log_records():
    """Every record the package logger sees at DEBUG and above"""
    records = []
    handler = logging.Handler(logging.DEBUG)
    handler.emit = records.append
    logger = logging.getLogger(ROOT_LOGGER)
    level = logger.level
    logger.addHandler(handler)
    logger.setLevel(logging.DEBUG)
    yield records
    logger.removeHandler(handler)
    logger.setLevel(level)
