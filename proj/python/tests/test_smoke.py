import math

import numpy as np
import pytest

import steklov


def test_version():
    assert steklov.__version__.count(".") == 2


def test_rho_and_cylinder_closed_form():
    r = steklov.rho()
    assert abs(r * math.tanh(r) - 1.0) < 1e-12
    vals = steklov.cylinder_steklov(1.0, 1.0, 4)
    assert vals[0][0] == 0.0
    assert vals[1][0] == pytest.approx(math.tanh(1.0), rel=1e-15)
    assert vals[1][2] == "tanh"
    assert vals[3] == (1.0, 0, "linear")


def test_growing_cylinder_sigma1():
    T = 2 * math.pi
    assert steklov.cylinder_steklov(1.0, T, 1)[1][0] == 1.0 / T


def test_invalid_arguments_raise_value_error():
    with pytest.raises(ValueError):
        steklov.cylinder_steklov(-1.0, 1.0, 3)
    with pytest.raises(ValueError):
        steklov.surface({"family": "flat_cylinder", "R": -1, "T": 1})
    with pytest.raises(ValueError):
        steklov.surface("no-such-preset")
    with pytest.raises(ValueError):
        steklov.cylinder_mixed(1.0, 1.0, "X", 2)


def test_unit_cylinder_fem():
    s = steklov.surface({"family": "flat_cylinder", "R": 1, "T": 1})
    mesh = s.triangulate(0.05)
    assert mesh.vertices.shape == (mesh.vertex_count, 2)
    assert mesh.triangles.shape == (mesh.triangle_count, 3)
    assert mesh.total_area() == pytest.approx(4 * math.pi, rel=1e-12)
    spec = steklov.steklov_spectrum(mesh, 4)
    assert spec.sigma(0) == 0.0
    assert spec.sigma(1) == pytest.approx(math.tanh(1.0), rel=0.01)
    assert spec.max_residual() < 1e-8
    assert spec.extensions.shape == (mesh.vertex_count, 5)


def test_sweep_on_first_eigenfunction():
    s = steklov.surface("cyl-n1")
    mesh = s.triangulate(s.mesh_size(0.05))
    spec = steklov.steklov_spectrum(mesh, 1)
    rows, h1, h2, bound = steklov.level_set_sweep(mesh, np.ascontiguousarray(spec.extensions[:, 1]))
    assert rows
    assert bound == pytest.approx(h1 * h2 / 4)
    assert bound <= spec.sigma(1) * 1.05


def test_zoo_and_geometry():
    z = steklov.zoo()
    assert "cyl-unit" in z
    s = steklov.surface(z["cyl-unit"])
    g = steklov.geometry(s, s.triangulate(0.1))
    assert g["b"] == 2
    assert g["a"] == pytest.approx(2 * math.pi)


def test_constants_and_sandwich():
    c = steklov.constants(1, 2)
    assert c["C2"] == pytest.approx(2.2446, abs=5e-4)
    # b = 2: k = 0, 1 share band 0, k = 2..5 band 1
    assert steklov.sandwich_bounds(2 * math.pi, 1.0, 2, 1)[2] == 0
    lo, hi, j = steklov.sandwich_bounds(2 * math.pi, 1.0, 2, 2)
    assert j == 1
    assert lo == pytest.approx(math.tanh(1.0))
    assert hi == pytest.approx(1 / math.tanh(1.0))


def test_collar_width():
    assert steklov.collar_width(2 * math.asinh(1.0)) == pytest.approx(math.asinh(1.0), rel=1e-15)


def test_verify_closed_forms():
    assert "closed-forms" in steklov.suite_names()
    rep = steklov.verify("closed-forms", timings=False)
    assert rep["summary"]["fail"] == 0
    assert rep["summary"]["pass"] > 0
    with pytest.raises(ValueError):
        steklov.verify("nope")
