import math
import os
import subprocess
import sys

import numpy as np
import pytest

from funk_conics import _pykernels, kernels
from funk_conics.core import funk_distance_array

BACKENDS = kernels.available_backends()


def _points(n, seed):
    rng = np.random.default_rng(seed)
    r = 0.95 * np.sqrt(rng.uniform(size=n))
    a = rng.uniform(0.0, 2.0 * math.pi, size=n)
    return r * np.cos(a), r * np.sin(a)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_batch_matches_core(name):
    px, py = _points(500, 1)
    qx, qy = _points(500, 2)
    got = BACKENDS[name].funk_distance_batch(px, py, qx, qy)
    np.testing.assert_allclose(got, funk_distance_array(px, py, qx, qy), rtol=0, atol=1e-14)


@pytest.mark.parametrize("name", sorted(BACKENDS))
@pytest.mark.parametrize("to_line", [True, False])
def test_chord_minimum_agrees_with_reference(name, to_line):
    px, py = _points(60, 3)
    d, x = BACKENDS[name].chord_minimum(px, py, -0.2, to_line, 2000)
    d_ref, x_ref = _pykernels.chord_minimum(px, py, -0.2, to_line, 2000)
    np.testing.assert_allclose(d, d_ref, rtol=0, atol=1e-13)
    np.testing.assert_allclose(x, x_ref, rtol=0, atol=1e-5)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_chord_endpoints_sampled(name):
    # the infimum from the chord to this point is only reached at its end
    y0 = 0.6
    w = math.sqrt(1 - y0 * y0)
    d, x = BACKENDS[name].chord_minimum(np.array([0.8]), np.array([-0.5]), y0, False, 500)
    assert x[0] == w


def test_too_few_samples():
    for mod in BACKENDS.values():
        with pytest.raises(ValueError):
            mod.chord_minimum(np.zeros(1), np.zeros(1), 0.0, True, 1)


def test_golden_iterations():
    for mod in BACKENDS.values():
        assert mod.golden_iterations(1e-13) == 0
        n = mod.golden_iterations(1e-3)
        assert 1e-3 * _pykernels.INV_PHI ** n <= 1e-12 < 1e-3 * _pykernels.INV_PHI ** (n - 1)


def test_pure_python_switch():
    env = dict(os.environ, FUNK_CONICS_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from funk_conics import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "numpy"


def test_backend_reported():
    assert kernels.BACKEND in BACKENDS
