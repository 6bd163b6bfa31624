"""
NCC block matching on a regular node grid.

Each node keeps the integer offset of best correlation, refined axially by a
parabolic fit through the peak and its two neighbours. Node estimates are
spread to every sample by separable linear interpolation.
"""

from typing import Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from ..errors import InvalidParameterError
from ..models.motion import BlockMatchConfig, DisplacementField
from ..models.rf import RfFrame

# An NCC this close to 1 is a perfect match; no subsample correction.
PERFECT_MATCH = 1.0 - 1e-9


def _node_starts(length: int, block: int, step: int) -> np.ndarray:
    return np.arange(0, length - block + 1, step)


def _candidate_scores(block: np.ndarray, candidates: np.ndarray) -> np.ndarray:
    """NCC of one block against a (nz, nx, bh, bw) stack; constant blocks score 0."""
    ref = block - block.mean()
    ref_norm = np.sqrt(np.sum(ref * ref))

    cand = candidates - candidates.mean(axis=(2, 3), keepdims=True)
    cand_norm = np.sqrt(np.sum(cand * cand, axis=(2, 3)))
    cross = np.tensordot(cand, ref, axes=([2, 3], [0, 1]))

    denom = cand_norm * ref_norm
    scores = np.zeros_like(cross)
    np.divide(cross, denom, out=scores, where=denom > 0.0)
    return np.clip(scores, -1.0, 1.0)


def parabolic_offset(c_minus: float, c0: float, c_plus: float) -> float:
    """Subsample peak correction in [-0.5, 0.5]; 0 when the fit has no maximum."""
    denom = c_minus - 2.0 * c0 + c_plus
    if denom >= 0.0 or c0 >= PERFECT_MATCH:
        return 0.0
    delta = (c_minus - c_plus) / (2.0 * denom)
    return float(np.clip(delta, -0.5, 0.5))


def match_node(
    block: np.ndarray,
    windows: np.ndarray,
    z0: int,
    x0: int,
    cfg: BlockMatchConfig,
) -> Tuple[float, float]:
    """
    Best (axial, lateral) offset of `block`.

    `windows` is the block view of frame b zero-padded by the search range,
    so every offset in range has a candidate even at the frame edges.
    """
    sa, sl = cfg.search_axial, cfg.search_lateral
    candidates = windows[z0:z0 + 2 * sa + 1, x0:x0 + 2 * sl + 1]
    scores = _candidate_scores(block, candidates)

    dz = np.arange(-sa, sa + 1)
    dx = np.arange(-sl, sl + 1)
    dz_grid, dx_grid = np.meshgrid(dz, dx, indexing="ij")
    # Ties go to the smallest |offset|: argmax returns the first maximum in this order.
    order = np.lexsort((np.abs(dx_grid).ravel(), np.abs(dz_grid).ravel()))
    best = order[np.argmax(scores.ravel()[order])]
    iz, ix = np.unravel_index(best, scores.shape)

    correction = 0.0
    if 0 < iz < scores.shape[0] - 1:
        correction = parabolic_offset(
            float(scores[iz - 1, ix]), float(scores[iz, ix]), float(scores[iz + 1, ix])
        )
    return float(dz[iz]) + correction, float(dx[ix])


def interpolation_matrix(targets: np.ndarray, knots: np.ndarray) -> np.ndarray:
    """Rows map knot values to linear interpolants at `targets`, clamped at the ends."""
    eye = np.eye(len(knots))
    return np.column_stack([np.interp(targets, knots, eye[k]) for k in range(len(knots))])


def estimate_displacement(
    a: RfFrame, b: RfFrame, cfg: BlockMatchConfig = BlockMatchConfig()
) -> DisplacementField:
    """Displacement d with b(z + d_axial, x + d_lateral) matching a(z, x)."""
    if a.shape != b.shape:
        raise InvalidParameterError(f"frame shapes differ: {a.shape} vs {b.shape}")
    axial_len, lateral_len = a.shape
    if axial_len < cfg.block_axial or lateral_len < cfg.block_lateral:
        raise InvalidParameterError(
            f"frames too small for one block: {axial_len}x{lateral_len} < "
            f"{cfg.block_axial}x{cfg.block_lateral}"
        )

    a64 = a.samples.astype(np.float64)
    b64 = np.pad(
        b.samples.astype(np.float64),
        ((cfg.search_axial, cfg.search_axial), (cfg.search_lateral, cfg.search_lateral)),
    )
    windows = sliding_window_view(b64, (cfg.block_axial, cfg.block_lateral))

    z_starts = _node_starts(axial_len, cfg.block_axial, cfg.step_axial)
    x_starts = _node_starts(lateral_len, cfg.block_lateral, cfg.step_lateral)
    node_axial = np.zeros((len(z_starts), len(x_starts)))
    node_lateral = np.zeros_like(node_axial)
    for i, z0 in enumerate(z_starts):
        for j, x0 in enumerate(x_starts):
            block = a64[z0:z0 + cfg.block_axial, x0:x0 + cfg.block_lateral]
            node_axial[i, j], node_lateral[i, j] = match_node(block, windows, z0, x0, cfg)

    z_centers = z_starts + (cfg.block_axial - 1) / 2.0
    x_centers = x_starts + (cfg.block_lateral - 1) / 2.0
    rows = interpolation_matrix(np.arange(axial_len, dtype=np.float64), z_centers)
    cols = interpolation_matrix(np.arange(lateral_len, dtype=np.float64), x_centers)
    axial = rows @ node_axial @ cols.T
    lateral = rows @ node_lateral @ cols.T

    half_a, half_l = cfg.margins
    z = np.arange(axial_len)
    x = np.arange(lateral_len)
    row_ok = (z >= half_a) & (z < axial_len - half_a) & (z >= z_centers[0]) & (z <= z_centers[-1])
    col_ok = (x >= half_l) & (x < lateral_len - half_l) & (x >= x_centers[0]) & (x <= x_centers[-1])

    return DisplacementField(
        axial=axial,
        lateral=lateral,
        valid_mask=row_ok[:, None] & col_ok[None, :],
    )
