"""Dispersive estimates on R^m x T^n: spectral core, bilinear norms, counting,
extremizers, I-method energies and the sweep harness."""

import json as _json

from ._core import (
    ConfigError,
    DegenerateFit,
    Geometry,
    NumericalAbort,
    PreconditionError,
    ResourceRefusal,
    StructuralError,
    UnsupportedRegime,
    bilinear_record,
    estimate_cost as _estimate_cost,
    forward_transform,
    i_multiplier_profile,
    increment_point,
    inverse_transform,
    lower_bound,
    measure,
    measure_sup,
    predicted_constant,
    project_band,
    propagate,
    run_experiment as _run_experiment,
    slice_length,
)


def _text(config):
    return config if isinstance(config, str) else _json.dumps(config)


def estimate_cost(config):
    """Modeled work of a config (dict or JSON text), in site-transforms."""
    return _estimate_cost(_text(config))


def run_experiment(config, workers=0):
    """Run a sweep. Returns header, rows (strings as in the CSV), summary dict
    and failure counts."""
    return _run_experiment(_text(config), workers)


def frequency_grid(geometry):
    """Frequency coordinates of every lattice site, one array per direction."""
    import numpy as np

    axes = [np.asarray(geometry.frequency_axis(d)) for d in range(geometry.m + geometry.n)]
    return np.meshgrid(*axes, indexing="ij")


__all__ = [name for name in dir() if not name.startswith("_")]
