from .generator import (
    make_scatterers,
    render_rf,
    render_samples,
    apply_motion,
    analytic_displacement,
    synth_pair,
)
from .dataset import DatasetGenerator, draw_motion, synth_dataset, synth_sequence

__all__ = [
    "make_scatterers",
    "render_rf",
    "render_samples",
    "apply_motion",
    "analytic_displacement",
    "synth_pair",
    "DatasetGenerator",
    "draw_motion",
    "synth_dataset",
    "synth_sequence",
]
