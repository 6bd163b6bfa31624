from pathlib import Path
from typing import Callable, Tuple

import numpy as np
import pytest

from app.classifier.network import build_model
from app.dependencies import _load_cached_model, get_settings
from app.models.classifier import ArchitectureSpec, ConvStage
from app.models.motion import DisplacementField
from app.models.rf import RfFrame
from app.models.simulation import MotionSpec, PulseSpec
from app.nn.model import Model
from app.rf.io import store_frame
from app.simulation.generator import synth_pair

FS_HZ = 40e6
F0_HZ = 8.5e6


@pytest.fixture(autouse=True)
def clear_caches(monkeypatch):
    """Settings and loaded models are cached per process; start every test clean."""
    monkeypatch.setenv("ELASTO_PROGRESS", "false")
    get_settings.cache_clear()
    _load_cached_model.cache_clear()
    yield
    get_settings.cache_clear()
    _load_cached_model.cache_clear()


@pytest.fixture
def make_frame() -> Callable[..., RfFrame]:
    """Wrap an array into a frame with the default pulse metadata."""

    def _make(samples, fs_hz: float = FS_HZ, f0_hz: float = F0_HZ, frame_id: int = 0) -> RfFrame:
        return RfFrame(samples=samples, fs_hz=fs_hz, f0_hz=f0_hz, frame_id=frame_id)

    return _make


@pytest.fixture
def noise_frame(make_frame) -> RfFrame:
    """512x64 white-noise frame."""
    rng = np.random.default_rng(11)
    return make_frame(rng.standard_normal((512, 64)).astype(np.float32))


@pytest.fixture
def pulse() -> PulseSpec:
    return PulseSpec()


@pytest.fixture(scope="session")
def compressed_pair() -> Tuple[RfFrame, RfFrame, DisplacementField, int]:
    """Seeded 512x64 pair under 1% uniform compression, fully correlated."""
    return synth_pair(PulseSpec(), MotionSpec(axial_strain=0.01), (512, 64), seed=3)


@pytest.fixture(scope="session")
def decorrelated_pair() -> Tuple[RfFrame, RfFrame, DisplacementField, int]:
    """Same compression with strong speckle decorrelation."""
    return synth_pair(
        PulseSpec(), MotionSpec(axial_strain=0.01, decorrelation_rho=0.5), (512, 64), seed=3
    )


@pytest.fixture
def tiny_arch() -> ArchitectureSpec:
    """Small network that keeps training tests fast."""
    return ArchitectureSpec(
        input_dims=(2, 32, 16),
        stages=[ConvStage(out_channels=4, kernel=3, stride=2), ConvStage(out_channels=8, kernel=3, stride=2)],
    )


@pytest.fixture
def tiny_model(tiny_arch) -> Model:
    return build_model(tiny_arch, seed=0)


@pytest.fixture
def frame_dir(tmp_path, make_frame) -> Callable[[int], Path]:
    """Write `count` random 128x16 frames as frame{idx:05}.rf and return the directory."""

    def _write(count: int) -> Path:
        rng = np.random.default_rng(5)
        directory = tmp_path / "seq"
        for idx in range(count):
            samples = rng.standard_normal((128, 16)).astype(np.float32)
            store_frame(make_frame(samples, frame_id=idx), directory / f"frame{idx:05d}.rf")
        return directory

    return _write
