import math

import numpy as np
import pytest

from robust1d.estimator import brute_force_robust_mean, make_sample_set
from robust1d.smoothing import SmoothingConfig, gaussian_weights, smooth_image

DEFAULTS = SmoothingConfig(window_radius=2, sigma=1.5, cutoff=0.1)


def step_image(height=8, width=8, lo=0.2, hi=0.8):
    img = np.full((height, width), lo)
    img[:, width // 2 :] = hi
    return img


def noisy_step(height=8, width=8, amplitude=0.02, seed=0):
    img = step_image(height, width)
    rng = np.random.default_rng(seed)
    return img + rng.uniform(-amplitude, amplitude, img.shape)


class TestGaussianWeights:
    def test_flat_limit(self):
        g = gaussian_weights(1, 1e9)
        assert np.all(np.abs(g - 1.0) < 1e-12)

    def test_radius_one(self):
        g = gaussian_weights(1, 1.0)
        assert g[1, 1] == 1.0
        assert g[0, 1] == pytest.approx(math.exp(-0.5), rel=1e-15)
        assert g[0, 0] == pytest.approx(math.exp(-1.0), rel=1e-15)

    def test_radius_two_corner(self):
        g = gaussian_weights(2, 1.0)
        assert g.shape == (5, 5)
        assert g[4, 4] == pytest.approx(math.exp(-4.0), rel=1e-15)

    def test_validation(self):
        with pytest.raises(ValueError):
            gaussian_weights(0, 1.0)
        with pytest.raises(ValueError):
            gaussian_weights(1, 0.0)


class TestConfig:
    @pytest.mark.parametrize(
        "kwargs",
        [dict(window_radius=0), dict(sigma=0.0), dict(sigma=-1.0), dict(cutoff=0.0)],
    )
    def test_invalid_rejected(self, kwargs):
        with pytest.raises(ValueError):
            SmoothingConfig(**kwargs)


class TestSmoothImage:
    def test_constant_image_unchanged(self):
        img = np.full((6, 7), 0.5)
        assert np.array_equal(smooth_image(img, DEFAULTS), img)

    def test_step_image_unchanged(self):
        # both sides are >= 0.6 > 2*cutoff apart, so every window fully
        # rejects its minority side and returns its own side's constant
        img = step_image()
        assert np.array_equal(smooth_image(img, DEFAULTS), img)

    def test_step_agrees_with_brute_force_per_window(self):
        img = step_image()
        out = smooth_image(img, DEFAULTS)
        grid = gaussian_weights(2, 1.5)
        for y, x in [(0, 0), (3, 3), (3, 4), (7, 7), (2, 5), (5, 2)]:
            y0, y1 = max(0, y - 2), min(8, y + 3)
            x0, x1 = max(0, x - 2), min(8, x + 3)
            vals = img[y0:y1, x0:x1].ravel()
            wts = grid[y0 - y + 2 : y1 - y + 2, x0 - x + 2 : x1 - x + 2].ravel()
            ref = brute_force_robust_mean(make_sample_set(vals, wts), 0.1)
            assert out[y, x] == pytest.approx(ref.mean, abs=1e-12)

    def test_three_level_idempotence(self):
        # wide bands, gaps > 2*cutoff, windows never straddle 3 regions
        img = np.full((6, 18), 0.1)
        img[:, 6:12] = 0.5
        img[:, 12:] = 0.9
        assert np.array_equal(smooth_image(img, DEFAULTS), img)

    def test_noise_reduced_edge_kept(self):
        img = noisy_step()
        out = smooth_image(img, DEFAULTS)
        flat_in = img[:, :4]
        flat_out = out[:, :4]
        assert flat_out.std() <= flat_in.std() / 2.0
        jump_in = img[:, 4:].mean() - img[:, :4].mean()
        jump_out = out[:, 4:].mean() - out[:, :4].mean()
        assert abs(jump_out - 0.6) < 0.05
        assert abs(jump_in - jump_out) < 0.02

    def test_output_within_window_range(self):
        rng = np.random.default_rng(2)
        img = rng.random((9, 9))
        cfg = SmoothingConfig(window_radius=1, sigma=1.0, cutoff=0.3)
        out = smooth_image(img, cfg)
        for y in range(9):
            for x in range(9):
                win = img[max(0, y - 1) : y + 2, max(0, x - 1) : x + 2]
                assert win.min() <= out[y, x] <= win.max()

    def test_mirror_symmetry(self):
        img = noisy_step(seed=3)
        mirrored = smooth_image(img[:, ::-1].copy(), DEFAULTS)
        assert np.array_equal(mirrored[:, ::-1], smooth_image(img, DEFAULTS))

    def test_flat_limit_is_gaussian_weighted_mean(self):
        rng = np.random.default_rng(4)
        img = rng.random((7, 7))
        cfg = SmoothingConfig(window_radius=2, sigma=1.5, cutoff=1.0)
        out = smooth_image(img, cfg)
        grid = gaussian_weights(2, 1.5)
        for y in range(7):
            for x in range(7):
                y0, y1 = max(0, y - 2), min(7, y + 3)
                x0, x1 = max(0, x - 2), min(7, x + 3)
                wts = grid[y0 - y + 2 : y1 - y + 2, x0 - x + 2 : x1 - x + 2]
                expected = np.average(img[y0:y1, x0:x1], weights=wts)
                assert abs(out[y, x] - expected) < 1e-12

    def test_threads_do_not_change_result(self):
        img = noisy_step(seed=5)
        base = smooth_image(img, DEFAULTS, threads=1)
        assert np.array_equal(smooth_image(img, DEFAULTS, threads=3), base)
        assert np.array_equal(smooth_image(img, DEFAULTS, threads=64), base)

    def test_single_row_image(self):
        img = np.linspace(0.0, 1.0, 12).reshape(1, 12)
        out = smooth_image(img, SmoothingConfig(window_radius=1, sigma=1.0, cutoff=0.5))
        assert out.shape == img.shape

    @pytest.mark.parametrize(
        "img",
        [
            np.array([[0.5, 1.5], [0.0, 0.2]]),
            np.array([[-0.1, 0.5], [0.0, 0.2]]),
            np.array([[np.nan, 0.5], [0.0, 0.2]]),
            np.zeros((0, 4)),
            np.zeros(9),
        ],
    )
    def test_invalid_images_rejected(self, img):
        with pytest.raises(ValueError):
            smooth_image(img, DEFAULTS)
