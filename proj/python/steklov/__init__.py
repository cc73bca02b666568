"""Steklov eigenvalues of compact surfaces with boundary: FEM solver, closed forms and bounds."""

import json as _json

from ._core import (
    Mesh,
    Spectrum,
    SolverError,
    Surface,
    __version__,
    collar_mixed,
    collar_test_energy,
    collar_width,
    cylinder_mixed,
    cylinder_steklov,
    level_set_sweep,
    rho,
    sandwich_bounds,
    steklov_spectrum,
    strip_spectrum,
    suite_names,
)
from . import _core


def surface(spec):
    """Build a surface from a preset id or a spec dict (same schema as the CLI JSON files)."""
    if isinstance(spec, str):
        return Surface.preset(spec)
    return Surface.from_json(_json.dumps(spec))


def zoo():
    """Preset surfaces as {id: spec}."""
    doc = _json.loads(_core.zoo_json())
    return {e["id"]: e["spec"] for e in doc["surfaces"]}


def geometry(surf, mesh):
    return _json.loads(_core.geometry_json(surf, mesh))


def constants(g, b):
    return _json.loads(_core.constants_json(g, b))


def verify(suite, h_factor=0.02, timings=True):
    """Run one verification suite and return the report as a dict."""
    return _json.loads(_core.verify_json(suite, h_factor, timings))


__all__ = [
    "Mesh",
    "Spectrum",
    "SolverError",
    "Surface",
    "__version__",
    "collar_mixed",
    "collar_test_energy",
    "collar_width",
    "constants",
    "cylinder_mixed",
    "cylinder_steklov",
    "geometry",
    "level_set_sweep",
    "rho",
    "sandwich_bounds",
    "steklov_spectrum",
    "strip_spectrum",
    "suite_names",
    "surface",
    "verify",
    "zoo",
]
