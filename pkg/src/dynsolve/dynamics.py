"""Rigid-body dynamics of a kinematic chain.

Every operation here is a pure function of immutable inputs and safe to
call concurrently. Torques follow the equation of motion

    tau = H(q) qdd + C(q, qd) qd + g(q)

with friction handled separately (see dynsolve.friction). All values
are SI, 64-bit floats.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ._backend import rnea_kernel
from .chain import KinematicChain
from .errors import AsymmetryError, DimensionError, InputError, SingularInertiaError

_INERTIA_ASYMMETRY_TOL = 1e-9


def _as_vector(value, dof: int, name: str) -> np.ndarray:
    vec = np.asarray(value, dtype=float)
    if vec.shape != (dof,):
        raise DimensionError(f"{name} must have length {dof}, got shape {vec.shape}")
    if not np.isfinite(vec).all():
        raise InputError(f"{name} contains non-finite values")
    return vec


def _as_gravity(value) -> np.ndarray:
    vec = np.asarray(value, dtype=float)
    if vec.shape != (3,):
        raise DimensionError(f"gravity must be a 3-vector, got shape {vec.shape}")
    if not np.isfinite(vec).all():
        raise InputError("gravity contains non-finite values")
    return vec


@dataclass(frozen=True)
class JointState:
    """One joint-space motion sample: positions, velocities, accelerations."""

    q: np.ndarray
    qd: np.ndarray
    qdd: np.ndarray

    def __post_init__(self):
        q = np.asarray(self.q, dtype=float)
        qd = np.asarray(self.qd, dtype=float)
        qdd = np.asarray(self.qdd, dtype=float)
        if not (q.ndim == qd.ndim == qdd.ndim == 1 and len(q) == len(qd) == len(qdd)):
            raise DimensionError(
                f"q, qd, qdd must be 1-d vectors of equal length, got "
                f"{q.shape}, {qd.shape}, {qdd.shape}"
            )
        for name, vec in (("q", q), ("qd", qd), ("qdd", qdd)):
            if not np.isfinite(vec).all():
                raise InputError(f"{name} contains non-finite values")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "qd", qd)
        object.__setattr__(self, "qdd", qdd)

    @property
    def dof(self) -> int:
        return len(self.q)


@dataclass(frozen=True)
class DynamicComponents:
    """Inertia matrix, Coriolis/centrifugal vector and gravity vector."""

    inertia: np.ndarray   # dof x dof, symmetric
    coriolis: np.ndarray  # dof, C(q, qd) qd
    gravity: np.ndarray   # dof, g(q)


@dataclass(frozen=True)
class Regressor:
    """Matrix Y with tau = Y @ pi for the stacked inertial parameters pi.

    Per moved body the 10 parameters are, about the joint-frame origin:
    [m, m*cx, m*cy, m*cz, Ixx, Ixy, Ixz, Iyy, Iyz, Izz].
    """

    matrix: np.ndarray  # dof x (10*dof)


def rnea(chain: KinematicChain, gravity, state: JointState) -> np.ndarray:
    """Friction-free joint torques for one state via Newton-Euler recursion."""
    if state.dof != chain.dof:
        raise DimensionError(
            f"state has {state.dof} joints but chain has dof {chain.dof}"
        )
    grav = _as_gravity(gravity)
    types, rot0, trans0, axis, mass, moment, inertia_o = chain.packed()
    return rnea_kernel(
        types, rot0, trans0, axis, mass, moment, inertia_o,
        state.q, state.qd, state.qdd, grav,
    )


def gravity_vector(chain: KinematicChain, gravity, q) -> np.ndarray:
    """g(q): torques balancing the gravity field at rest."""
    q = _as_vector(q, chain.dof, "q")
    zero = np.zeros(chain.dof)
    return rnea(chain, gravity, JointState(q, zero, zero))


def coriolis_vector(chain: KinematicChain, q, qd) -> np.ndarray:
    """C(q, qd) qd: velocity-quadratic torques, independent of gravity."""
    q = _as_vector(q, chain.dof, "q")
    qd = _as_vector(qd, chain.dof, "qd")
    return rnea(chain, np.zeros(3), JointState(q, qd, np.zeros(chain.dof)))


def inertia_matrix(chain: KinematicChain, q) -> np.ndarray:
    """H(q), assembled column-wise from unit-acceleration torque runs.

    Column j is the torque for qdd = e_j at zero velocity and zero
    gravity. The result is checked for symmetry (AsymmetryError beyond
    1e-9 relative) and then symmetrized exactly.
    """
    q = _as_vector(q, chain.dof, "q")
    dof = chain.dof
    zero = np.zeros(dof)
    inertia = np.empty((dof, dof))
    no_gravity = np.zeros(3)
    for j in range(dof):
        unit_acc = np.zeros(dof)
        unit_acc[j] = 1.0
        inertia[:, j] = rnea(chain, no_gravity, JointState(q, zero, unit_acc))
    asymmetry = float(np.max(np.abs(inertia - inertia.T), initial=0.0))
    scale = 1.0 + float(np.max(np.abs(inertia), initial=0.0))
    if asymmetry > _INERTIA_ASYMMETRY_TOL * scale:
        raise AsymmetryError(
            f"inertia matrix asymmetry {asymmetry:.3e} exceeds "
            f"{_INERTIA_ASYMMETRY_TOL:.0e} relative"
        )
    return 0.5 * (inertia + inertia.T)


def dynamic_components(chain: KinematicChain, gravity, q, qd) -> DynamicComponents:
    """(H, C qd, g) computed through the three dedicated operations."""
    return DynamicComponents(
        inertia=inertia_matrix(chain, q),
        coriolis=coriolis_vector(chain, q, qd),
        gravity=gravity_vector(chain, gravity, q),
    )


def inertial_parameter_vector(chain: KinematicChain) -> np.ndarray:
    """The chain's stacked inertial parameters pi (length 10*dof)."""
    _, _, _, _, mass, moment, inertia_o = chain.packed()
    pi = np.empty(10 * chain.dof)
    for j in range(chain.dof):
        io = inertia_o[j]
        pi[10 * j:10 * (j + 1)] = [
            mass[j], moment[j, 0], moment[j, 1], moment[j, 2],
            io[0, 0], io[0, 1], io[0, 2], io[1, 1], io[1, 2], io[2, 2],
        ]
    return pi


# (row, col, value) patterns of the symmetric unit tensors for
# [Ixx, Ixy, Ixz, Iyy, Iyz, Izz]
_UNIT_TENSORS = (
    ((0, 0, 1.0),),
    ((0, 1, 1.0), (1, 0, 1.0)),
    ((0, 2, 1.0), (2, 0, 1.0)),
    ((1, 1, 1.0),),
    ((1, 2, 1.0), (2, 1, 1.0)),
    ((2, 2, 1.0),),
)


def regressor_matrix(chain: KinematicChain, gravity, state: JointState) -> Regressor:
    """Y(q, qd, qdd) with tau = Y @ pi, built column by column.

    The torque computation is exactly linear in each body's
    (m, m*c, I_origin), so each column is one torque run on a chain
    carrying a single unit parameter.
    """
    if state.dof != chain.dof:
        raise DimensionError(
            f"state has {state.dof} joints but chain has dof {chain.dof}"
        )
    grav = _as_gravity(gravity)
    types, rot0, trans0, axis, _, _, _ = chain.packed()
    dof = chain.dof
    matrix = np.empty((dof, 10 * dof))
    mass = np.zeros(dof)
    moment = np.zeros((dof, 3))
    inertia_o = np.zeros((dof, 3, 3))
    for j in range(dof):
        for k in range(10):
            if k == 0:
                mass[j] = 1.0
            elif k < 4:
                moment[j, k - 1] = 1.0
            else:
                for row, col, value in _UNIT_TENSORS[k - 4]:
                    inertia_o[j, row, col] = value
            matrix[:, 10 * j + k] = rnea_kernel(
                types, rot0, trans0, axis, mass, moment, inertia_o,
                state.q, state.qd, state.qdd, grav,
            )
            mass[j] = 0.0
            moment[j] = 0.0
            inertia_o[j] = 0.0
    return Regressor(matrix)


def forward_dynamics(chain: KinematicChain, gravity, q, qd, tau) -> np.ndarray:
    """Accelerations from torques: solves H(q) qdd = tau - C qd - g(q).

    Uses a symmetric positive-definite (Cholesky) solve; a chain whose
    inertia matrix is singular raises SingularInertiaError.
    """
    q = _as_vector(q, chain.dof, "q")
    qd = _as_vector(qd, chain.dof, "qd")
    tau = _as_vector(tau, chain.dof, "tau")
    inertia = inertia_matrix(chain, q)
    bias = coriolis_vector(chain, q, qd) + gravity_vector(chain, gravity, q)
    try:
        factor = scipy.linalg.cho_factor(inertia, lower=True)
    except scipy.linalg.LinAlgError as exc:
        raise SingularInertiaError(
            f"inertia matrix is not positive definite: {exc}"
        ) from exc
    return scipy.linalg.cho_solve(factor, tau - bias)
