"""
Tests for gradient, chromaticity and combined similarity maps
"""
import numpy as np
import pytest

from mdsi.core.config import MetricConfig
from mdsi.core.errors import ShapeMismatch
from mdsi.processing.gradient import prewitt_magnitude
from mdsi.processing.similarity import (
    combine, cs_hat, cs_two_factor, fused_luma, gs_hat_map, gs_map
)

import scalar_oracle


def elementwise(fn, *planes):
    shape = planes[0].shape
    out = np.empty(shape)
    for index in np.ndindex(shape):
        out[index] = fn(*(float(p[index]) for p in planes))
    return out


class TestGradientSimilarity:
    """Test the SSIM-style gradient similarity"""

    def test_equal_gradients(self, rng):
        g = rng.uniform(0, 100, size=(5, 5))
        assert np.all(gs_map(g, g, 140.0) == 1.0)

    def test_half_similarity(self):
        gr = np.full((2, 2), np.sqrt(140.0))
        gd = np.zeros((2, 2))
        np.testing.assert_allclose(gs_map(gr, gd, 140.0), 0.5, atol=1e-12)

    def test_matches_oracle(self, rng):
        gr, gd = rng.uniform(0, 200, size=(2, 4, 4))
        expected = elementwise(lambda a, b: scalar_oracle.gs(a, b, 140.0), gr, gd)
        np.testing.assert_allclose(gs_map(gr, gd, 140.0), expected, atol=1e-12)

    def test_symmetric(self, rng):
        gr, gd = rng.uniform(0, 200, size=(2, 6, 6))
        np.testing.assert_array_equal(gs_map(gr, gd, 55.0), gs_map(gd, gr, 55.0))

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            gs_map(np.zeros((2, 2)), np.zeros((2, 3)), 1.0)


class TestFusedLuma:
    """Test luminance averaging"""

    def test_idempotent(self, rng):
        lum = rng.uniform(0, 255, size=(4, 4))
        np.testing.assert_array_equal(fused_luma(lum, lum), lum)

    def test_midpoint(self):
        np.testing.assert_array_equal(fused_luma(np.zeros((2, 2)), np.full((2, 2), 200.0)), 100.0)

    def test_matches_oracle(self, rng):
        lr, ld = rng.uniform(0, 255, size=(2, 3, 5))
        np.testing.assert_allclose(fused_luma(lr, ld), elementwise(lambda a, b: (a + b) / 2, lr, ld))


class TestFusedGradientSimilarity:
    """Test the fused gradient similarity"""

    def test_identical_inputs(self, rng):
        lum = rng.uniform(0, 255, size=(8, 8))
        assert np.all(gs_hat_map(lum, lum, 140.0, 55.0) == 1.0)

    def test_removed_edge_is_emphasized(self):
        lr = np.zeros((8, 8))
        lr[:, 4:] = 200.0
        ld = np.full((8, 8), 100.0)
        gs_hat = gs_hat_map(lr, ld, 140.0, 55.0)
        gs = gs_map(prewitt_magnitude(lr), prewitt_magnitude(ld), 140.0)
        edge = (slice(1, 7), slice(3, 5))
        assert np.all(gs_hat[edge] < gs[edge])

    def test_matches_oracle(self, rng):
        lr, ld = rng.uniform(0, 255, size=(2, 6, 6))
        gr = scalar_oracle.prewitt(lr.tolist())
        gd = scalar_oracle.prewitt(ld.tolist())
        gf = scalar_oracle.prewitt(((lr + ld) / 2).tolist())
        expected = np.empty((6, 6))
        for i in range(6):
            for j in range(6):
                expected[i, j] = (
                    scalar_oracle.gs(gr[i][j], gd[i][j], 140.0)
                    + scalar_oracle.gs(gd[i][j], gf[i][j], 55.0)
                    - scalar_oracle.gs(gr[i][j], gf[i][j], 55.0)
                )
        np.testing.assert_allclose(gs_hat_map(lr, ld, 140.0, 55.0), expected, atol=1e-12)

    def test_bounds(self, rng):
        for _ in range(200):
            lr, ld = rng.uniform(0, 255, size=(2, 8, 8))
            values = gs_hat_map(lr, ld, 140.0, 55.0)
            assert values.min() > -1.0 and values.max() < 2.0


class TestChromaticitySimilarity:
    """Test the two-factor and joint chromaticity maps"""

    def test_equal_inputs(self, rng):
        h, m = rng.uniform(-80, 80, size=(2, 5, 5))
        assert np.all(cs_two_factor(h, h, m, m, 550.0) == 1.0)
        assert np.all(cs_hat(h, h, m, m, 550.0) == 1.0)

    def test_zero_chroma(self):
        zeros = np.zeros((3, 3))
        assert np.all(cs_two_factor(zeros, zeros, zeros, zeros, 550.0) == 1.0)
        assert np.all(cs_hat(zeros, zeros, zeros, zeros, 550.0) == 1.0)

    def test_opposite_chroma_reaches_zero(self):
        k = np.full((2, 2), np.sqrt(275.0))
        zeros = np.zeros((2, 2))
        np.testing.assert_allclose(cs_hat(k, -k, zeros, zeros, 550.0), 0.0, atol=1e-12)

    def test_matches_oracle(self, rng):
        hr, hd, mr, md = rng.uniform(-90, 90, size=(4, 5, 5))
        np.testing.assert_allclose(
            cs_hat(hr, hd, mr, md, 550.0),
            elementwise(lambda a, b, c, d: scalar_oracle.cs_hat(a, b, c, d, 550.0), hr, hd, mr, md),
            atol=1e-12,
        )
        np.testing.assert_allclose(
            cs_two_factor(hr, hd, mr, md, 550.0),
            elementwise(lambda a, b, c, d: scalar_oracle.cs_two_factor(a, b, c, d, 550.0), hr, hd, mr, md),
            atol=1e-12,
        )

    def test_cs_hat_symmetric_under_swap(self, rng):
        hr, hd, mr, md = rng.uniform(-90, 90, size=(4, 4, 4))
        np.testing.assert_allclose(cs_hat(hr, hd, mr, md, 550.0), cs_hat(hd, hr, md, mr, 550.0), atol=1e-15)

    def test_bounds(self, rng):
        for _ in range(1000):
            hr, hd = rng.uniform(-0.35 * 255, 0.34 * 255, size=(2, 4, 4))
            mr, md = rng.uniform(-0.6 * 255, 0.51 * 255, size=(2, 4, 4))
            joint = cs_hat(hr, hd, mr, md, 550.0)
            assert joint.min() >= -1.0 and joint.max() <= 1.0 + 1e-12
            agreeing = (hr * hd + mr * md) >= -550.0 / 2
            assert np.all(joint[agreeing] >= -1e-12)
            two = cs_two_factor(np.abs(hr), np.abs(hd), np.abs(mr), np.abs(md), 550.0)
            assert two.min() >= 0.0 and two.max() <= 1.0 + 1e-12

    def test_gradient_map_bounds(self, rng):
        for _ in range(1000):
            gr, gd = rng.uniform(0, 300, size=(2, 4, 4))
            values = gs_map(gr, gd, 140.0)
            assert values.min() >= 0.0 and values.max() <= 1.0 + 1e-12


class TestCombine:
    """Test summation and multiplication schemes"""

    def test_all_ones(self):
        ones = np.ones((3, 3))
        for alpha in (0.0, 0.3, 0.6, 1.0):
            np.testing.assert_allclose(combine(ones, ones, MetricConfig(alpha=alpha)), 1.0)

    def test_summation_arithmetic(self):
        result = combine(np.full((2, 2), 0.8), np.full((2, 2), 0.5), MetricConfig(alpha=0.6))
        np.testing.assert_allclose(result, 0.68, atol=1e-12)

    def test_multiplication_arithmetic(self):
        cfg = MetricConfig(combine="multiplication")
        result = combine(np.full((2, 2), 0.8), np.full((2, 2), 0.5), cfg)
        np.testing.assert_allclose(result, 0.8 ** 0.2 * 0.5 ** 0.1, atol=1e-12)

    def test_multiplication_clamps_negative_gradient(self):
        cfg = MetricConfig(combine="multiplication")
        result = combine(np.full((1, 2), -0.3), np.full((1, 2), 0.9), cfg)
        np.testing.assert_array_equal(result, 0.0)

    def test_multiplication_clamps_negative_chroma(self):
        cfg = MetricConfig(combine="multiplication")
        gs = np.full((1, 3), 0.8)
        cs = np.array([[-0.5, -1e-9, 0.0]])
        result = combine(gs, cs, cfg)
        assert np.all(np.isfinite(result))
        np.testing.assert_array_equal(result, 0.0)

    def test_multiplication_mixed_signs(self):
        cfg = MetricConfig(combine="multiplication")
        result = combine(np.array([[0.8, -0.2]]), np.array([[-0.4, 0.6]]), cfg)
        np.testing.assert_array_equal(result, [[0.0, 0.0]])

    def test_alpha_moves_toward_gradient(self, rng):
        gs, cs = rng.uniform(0, 1, size=(2, 4, 4))
        low = combine(gs, cs, MetricConfig(alpha=0.2))
        high = combine(gs, cs, MetricConfig(alpha=0.8))
        assert np.all(np.abs(high - gs) <= np.abs(low - gs) + 1e-15)

    def test_summation_monotone(self, rng):
        gs, cs = rng.uniform(0, 1, size=(2, 4, 4))
        cfg = MetricConfig()
        base = combine(gs, cs, cfg)
        assert np.all(combine(gs + 0.1, cs, cfg) >= base)
        assert np.all(combine(gs, cs + 0.1, cfg) >= base)
