import numpy as np
import pytest

from app.errors import InvalidParameterError, ZeroVarianceError
from app.motion.ncc import ncc, ncc_or_zero


class TestNcc:
    """Test suite for zero-normalized cross correlation."""

    def test_self_correlation(self):
        w = np.random.default_rng(0).standard_normal((16, 4))
        assert ncc(w, w) == pytest.approx(1.0, abs=1e-12)

    def test_sign_flip(self):
        w = np.random.default_rng(0).standard_normal((16, 4))
        assert ncc(w, -w) == pytest.approx(-1.0, abs=1e-12)

    def test_hand_computed_value(self):
        assert ncc(np.array([1.0, 2.0, 3.0, 4.0]), np.array([1.0, 3.0, 2.0, 4.0])) == pytest.approx(0.8)

    def test_symmetric(self):
        rng = np.random.default_rng(1)
        a, b = rng.standard_normal((2, 32, 8))
        assert ncc(a, b) == pytest.approx(ncc(b, a), abs=1e-12)

    def test_affine_invariance(self):
        rng = np.random.default_rng(2)
        a, b = rng.standard_normal((2, 32, 8))
        assert ncc(a, 3.7 * b + 11.0) == pytest.approx(ncc(a, b), abs=1e-9)

    def test_result_in_range(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            a, b = rng.standard_normal((2, 8, 4))
            assert -1.0 <= ncc(a, b) <= 1.0

    def test_shape_mismatch(self):
        with pytest.raises(InvalidParameterError):
            ncc(np.ones((4, 4)), np.ones((4, 5)))

    def test_too_few_samples(self):
        with pytest.raises(InvalidParameterError):
            ncc(np.ones(1), np.ones(1))

    def test_constant_window(self):
        with pytest.raises(ZeroVarianceError):
            ncc(np.full((4, 4), 2.0), np.arange(16.0).reshape(4, 4))

    def test_constant_window_scored_zero(self):
        value, flat = ncc_or_zero(np.full((4, 4), 2.0), np.arange(16.0).reshape(4, 4))
        assert (value, flat) == (0.0, True)

        value, flat = ncc_or_zero(np.arange(16.0), np.arange(16.0))
        assert flat is False
        assert value == pytest.approx(1.0)
