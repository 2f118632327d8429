"""The compiled and pure-Python kernels must agree everywhere."""

import subprocess
import sys

import numpy as np
import pytest

from dynsolve import _kernel_py
from dynsolve._backend import backend_name

from conftest import GRAVITY
from util import random_chain

_kernel_cy = pytest.importorskip(
    "dynsolve._kernel_cy", reason="compiled kernel not built"
)


def test_backend_name_reports_a_known_kernel():
    assert backend_name() in ("python", "cython")


def test_kernels_agree_on_random_chains(rng):
    for _ in range(40):
        chain = random_chain(rng, int(rng.integers(1, 9)), prismatic_prob=0.4)
        q = rng.uniform(-np.pi, np.pi, chain.dof)
        qd = rng.uniform(-5.0, 5.0, chain.dof)
        qdd = rng.uniform(-5.0, 5.0, chain.dof)
        packed = chain.packed()
        tau_py = _kernel_py.rnea_kernel(*packed, q, qd, qdd, GRAVITY)
        tau_cy = _kernel_cy.rnea_kernel(*packed, q, qd, qdd, GRAVITY)
        np.testing.assert_allclose(
            tau_cy, tau_py, atol=1e-12 * (1.0 + np.abs(tau_py).max())
        )


def test_kernels_agree_on_degenerate_bodies(rng):
    """Unit-parameter bodies (zero mass, lone first moment) feed the
    regressor; both kernels must treat them identically."""
    chain = random_chain(rng, 3)
    types, rot0, trans0, axis, _, _, _ = chain.packed()
    q = rng.uniform(-np.pi, np.pi, 3)
    qd = rng.uniform(-5.0, 5.0, 3)
    qdd = rng.uniform(-5.0, 5.0, 3)
    mass = np.zeros(3)
    moment = np.zeros((3, 3))
    moment[1, 0] = 1.0
    inertia_o = np.zeros((3, 3, 3))
    args = (types, rot0, trans0, axis, mass, moment, inertia_o, q, qd, qdd, GRAVITY)
    np.testing.assert_allclose(
        _kernel_cy.rnea_kernel(*args), _kernel_py.rnea_kernel(*args), atol=1e-12
    )


def test_empty_chain_returns_empty(rng):
    chain = random_chain(rng, 1)
    types, rot0, trans0, axis, m, h, io = chain.packed()
    empty = (types[:0], rot0[:0], trans0[:0], axis[:0], m[:0], h[:0], io[:0])
    zero = np.zeros(0)
    for kernel in (_kernel_py, _kernel_cy):
        out = kernel.rnea_kernel(*empty, zero, zero, zero, GRAVITY)
        assert out.shape == (0,)


def test_environment_variable_forces_python_backend():
    code = ("import dynsolve; import sys; "
            "sys.exit(0 if dynsolve.backend_name() == 'python' else 1)")
    result = subprocess.run(
        [sys.executable, "-c", code],
        env={"DYNSOLVE_PURE_PYTHON": "1", "PATH": "/usr/bin:/bin"},
        capture_output=True,
    )
    assert result.returncode == 0, result.stderr.decode()
