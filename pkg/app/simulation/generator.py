"""
Point-scatterer RF synthesis with known ground-truth motion.

Frames are the superposition of one Gaussian-modulated cosine pulse per
scatterer, weighted by a Gaussian lateral point-spread function.
"""

import math
from typing import Tuple, Union

import numpy as np

from ..errors import InvalidParameterError
from ..models.motion import DisplacementField
from ..models.rf import RfFrame
from ..models.simulation import MotionSpec, PulseSpec, ScattererField

SeedLike = Union[int, np.random.SeedSequence]

DEFAULT_DENSITY = 10.0
GOOD_RHO_MIN = 0.95
GOOD_DISP_MIN = 0.5

# Axial / lateral PSF support in sigmas.
AXIAL_SUPPORT_SIGMAS = 4.0
LATERAL_SUPPORT_SIGMAS = 3.0

# Scatterers rendered per bincount pass.
RENDER_CHUNK = 16384


def make_scatterers(
    axial_len: int,
    lateral_len: int,
    density: float = DEFAULT_DENSITY,
    seed: SeedLike = 0,
    pulse: PulseSpec = PulseSpec(),
) -> ScattererField:
    """
    Draw a Poisson number of uniformly placed scatterers with N(0, 1) amplitudes.

    The expected count is `density` per resolution cell of `pulse`.
    """
    if axial_len <= 0 or lateral_len <= 0:
        raise InvalidParameterError(
            f"scatterer field dimensions must be positive, got {axial_len}x{lateral_len}"
        )
    if density <= 0:
        raise InvalidParameterError(f"scatterer density must be positive, got {density}")

    rng = np.random.default_rng(seed)
    cells = axial_len * lateral_len / pulse.resolution_cell
    count = int(rng.poisson(density * cells))
    positions = np.column_stack(
        [
            rng.uniform(0.0, axial_len, size=count),
            rng.uniform(0.0, lateral_len, size=count),
        ]
    )
    amplitudes = rng.standard_normal(count)
    return ScattererField(
        positions=positions.reshape(count, 2),
        amplitudes=amplitudes,
        density_per_cell=density,
        extent=(axial_len, lateral_len),
    )


def _support(pulse: PulseSpec) -> Tuple[int, int]:
    return (
        int(math.ceil(AXIAL_SUPPORT_SIGMAS * pulse.axial_sigma_samples)),
        int(math.ceil(LATERAL_SUPPORT_SIGMAS * pulse.lateral_sigma_lines)),
    )


def render_samples(
    field: ScattererField, pulse: PulseSpec, axial_len: int, lateral_len: int
) -> np.ndarray:
    """Render in float64; `render_rf` wraps this into a frame."""
    if axial_len <= 0 or lateral_len <= 0:
        raise InvalidParameterError("render dimensions must be positive")

    sigma_a = pulse.axial_sigma_samples
    sigma_l = pulse.lateral_sigma_lines
    omega = 2.0 * math.pi * pulse.normalized_frequency
    ka, kl = _support(pulse)
    axial_offsets = np.arange(-ka, ka + 2)
    lateral_offsets = np.arange(-kl, kl + 1)

    total = np.zeros(axial_len * lateral_len, dtype=np.float64)
    for start in range(0, field.count, RENDER_CHUNK):
        z = field.positions[start:start + RENDER_CHUNK, 0]
        x = field.positions[start:start + RENDER_CHUNK, 1]
        amp = field.amplitudes[start:start + RENDER_CHUNK]

        rows = np.floor(z).astype(np.int64)[:, None] + axial_offsets[None, :]
        cols = np.rint(x).astype(np.int64)[:, None] + lateral_offsets[None, :]
        t = rows - z[:, None]
        axial_w = np.exp(-(t * t) / (2.0 * sigma_a * sigma_a)) * np.cos(omega * t)
        u = cols - x[:, None]
        lateral_w = np.exp(-(u * u) / (2.0 * sigma_l * sigma_l))

        contrib = amp[:, None, None] * axial_w[:, :, None] * lateral_w[:, None, :]
        rr = np.broadcast_to(rows[:, :, None], contrib.shape)
        cc = np.broadcast_to(cols[:, None, :], contrib.shape)
        inside = (rr >= 0) & (rr < axial_len) & (cc >= 0) & (cc < lateral_len)
        flat = rr[inside] * lateral_len + cc[inside]
        total += np.bincount(flat, weights=contrib[inside], minlength=total.size)

    return total.reshape(axial_len, lateral_len)


def render_rf(
    field: ScattererField,
    pulse: PulseSpec,
    axial_len: int,
    lateral_len: int,
    frame_id: int = 0,
) -> RfFrame:
    samples = render_samples(field, pulse, axial_len, lateral_len)
    return RfFrame(
        samples=samples.astype(np.float32),
        fs_hz=pulse.fs_hz,
        f0_hz=pulse.f0_hz,
        frame_id=frame_id,
    )


def moved_axial(motion: MotionSpec, axial: np.ndarray, lateral: np.ndarray) -> np.ndarray:
    """
    New depth of points under fixed-top compression.

    Displacement is positive away from the transducer and equals the depth
    integral of local strain above the point, with the inclusion
    contributing `axial_strain * strain_ratio`.
    """
    z = np.asarray(axial, dtype=np.float64)
    s = motion.axial_strain
    if motion.inclusion is None:
        return z * (1.0 + s)
    overlap = motion.inclusion.depth_overlap(z, lateral)
    return z + s * (z - (1.0 - motion.inclusion.strain_ratio) * overlap)


def apply_motion(field: ScattererField, motion: MotionSpec, seed: SeedLike = 0) -> ScattererField:
    z = field.positions[:, 0]
    x = field.positions[:, 1]
    new_positions = np.column_stack(
        [moved_axial(motion, z, x), x + motion.lateral_shift_lines]
    ).reshape(field.count, 2)

    rng = np.random.default_rng(seed)
    fresh = rng.standard_normal(field.count)
    rho = motion.decorrelation_rho
    amplitudes = rho * field.amplitudes + math.sqrt(1.0 - rho * rho) * fresh

    return ScattererField(
        positions=new_positions,
        amplitudes=amplitudes,
        density_per_cell=field.density_per_cell,
        extent=field.extent,
    )


def analytic_displacement(motion: MotionSpec, dims: Tuple[int, int]) -> DisplacementField:
    """Ground truth at every sample, in the estimator's sign convention."""
    axial_len, lateral_len = dims
    z, x = np.meshgrid(
        np.arange(axial_len, dtype=np.float64),
        np.arange(lateral_len, dtype=np.float64),
        indexing="ij",
    )
    return DisplacementField(
        axial=moved_axial(motion, z, x) - z,
        lateral=np.full(dims, float(motion.lateral_shift_lines)),
        valid_mask=np.ones(dims, dtype=bool),
    )


def expected_label(motion: MotionSpec, ground_truth: DisplacementField) -> int:
    return int(
        motion.decorrelation_rho >= GOOD_RHO_MIN
        and ground_truth.mean_abs_axial() > GOOD_DISP_MIN
    )


def padded_field(
    dims: Tuple[int, int],
    pulse: PulseSpec,
    density: float,
    seed: SeedLike,
    max_lateral_shift: float = 0.0,
) -> ScattererField:
    """
    Scatterers over a region larger than the frame.

    Negative strain pulls deeper tissue into view and lateral shifts pull in
    neighbouring lines, so the moved frame must not see an empty border.
    """
    axial_len, lateral_len = dims
    ka, kl = _support(pulse)
    pad_axial = int(math.ceil(0.12 * axial_len)) + ka
    pad_lateral = int(math.ceil(abs(max_lateral_shift))) + kl + 1

    field = make_scatterers(
        axial_len + pad_axial, lateral_len + 2 * pad_lateral, density, seed, pulse
    )
    positions = field.positions - np.array([0.0, float(pad_lateral)])
    return ScattererField(
        positions=positions.reshape(field.count, 2),
        amplitudes=field.amplitudes,
        density_per_cell=density,
        extent=dims,
    )


def synth_pair(
    pulse: PulseSpec,
    motion: MotionSpec,
    dims: Tuple[int, int],
    seed: int,
    density: float = DEFAULT_DENSITY,
) -> Tuple[RfFrame, RfFrame, DisplacementField, int]:
    """Render a pre/post-motion pair with its analytic displacement and intended label."""
    axial_len, lateral_len = dims
    base_seq, motion_seq = np.random.SeedSequence(seed).spawn(2)

    base = padded_field(dims, pulse, density, base_seq, motion.lateral_shift_lines)
    moved = apply_motion(base, motion, motion_seq)

    frame_a = render_rf(base, pulse, axial_len, lateral_len, frame_id=0)
    frame_b = render_rf(moved, pulse, axial_len, lateral_len, frame_id=1)
    truth = analytic_displacement(motion, dims)
    return frame_a, frame_b, truth, expected_label(motion, truth)
