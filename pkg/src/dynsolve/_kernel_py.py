"""Pure-numpy torque kernel: two-pass Newton-Euler recursion.

Reference implementation of the hot kernel; `dynsolve._kernel_cy` is the
compiled equivalent with identical semantics. Inputs are the packed
chain arrays (see KinematicChain.packed) plus one joint state and the
gravity vector. Per-body inertial data is carried as (mass, first
moment h = m*com, inertia about the joint-frame origin), the
parametrization in which joint torques are exactly linear.

Conventions, all per-joint quantities expressed in that joint's frame:
gravity enters as a fictitious base acceleration -g; the outward pass
propagates angular velocity, angular acceleration and the linear
acceleration of each frame origin; the inward pass accumulates body
wrenches about the frame origins and projects the joint-transmitted
wrench onto the joint axis (moment for revolute, force for prismatic).
"""

import numpy as np

from .transforms import rotation_about_axis

BACKEND_NAME = "python"


def rnea_kernel(types, rot0, trans0, axis, mass, moment, inertia_o,
                q, qd, qdd, gravity, out=None):
    """Joint torques for one state; friction is not modeled here.

    types: (n,) int, 0 revolute / 1 prismatic
    rot0, trans0: (n,3,3), (n,3) fixed pose of each joint frame in its
        predecessor frame at zero displacement
    axis: (n,3) unit joint axes, joint-local
    mass, moment, inertia_o: (n,), (n,3), (n,3,3) body parameters
    q, qd, qdd: (n,) joint state
    gravity: (3,) in the root frame
    """
    n = len(types)
    tau = out if out is not None else np.empty(n)
    if n == 0:
        return tau

    joint_rot = np.empty((n, 3, 3))  # joint frame -> predecessor frame
    origin = np.empty((n, 3))        # joint-frame origin in predecessor frame
    omega = np.empty((n, 3))
    alpha = np.empty((n, 3))
    accel = np.empty((n, 3))
    force = np.empty((n, 3))
    torque = np.empty((n, 3))

    w_prev = np.zeros(3)
    wd_prev = np.zeros(3)
    a_prev = -np.asarray(gravity, dtype=float)

    for i in range(n):
        ax = axis[i]
        if types[i] == 0:  # revolute
            rot = rot0[i] @ rotation_about_axis(ax, q[i])
            r = trans0[i]
        else:  # prismatic
            rot = rot0[i]
            r = trans0[i] + rot0[i] @ (ax * q[i])
        joint_rot[i] = rot
        origin[i] = r
        to_local = rot.T

        w_parent = to_local @ w_prev
        a_here = to_local @ (
            a_prev + np.cross(wd_prev, r) + np.cross(w_prev, np.cross(w_prev, r))
        )
        if types[i] == 0:
            w = w_parent + ax * qd[i]
            wd = to_local @ wd_prev + ax * qdd[i] + np.cross(w_parent, ax * qd[i])
        else:
            w = w_parent
            wd = to_local @ wd_prev
            a_here = a_here + 2.0 * np.cross(w, ax * qd[i]) + ax * qdd[i]

        omega[i] = w
        alpha[i] = wd
        accel[i] = a_here

        # Net body wrench about this joint-frame origin.
        h = moment[i]
        force[i] = mass[i] * a_here + np.cross(wd, h) + np.cross(w, np.cross(w, h))
        torque[i] = inertia_o[i] @ wd + np.cross(w, inertia_o[i] @ w) \
            + np.cross(h, a_here)

        w_prev, wd_prev, a_prev = w, wd, a_here

    f_child = np.zeros(3)
    n_child = np.zeros(3)
    for i in range(n - 1, -1, -1):
        f = force[i].copy()
        nm = torque[i].copy()
        if i < n - 1:
            rot = joint_rot[i + 1]
            f_in = rot @ f_child
            f += f_in
            nm += rot @ n_child + np.cross(origin[i + 1], f_in)
        tau[i] = axis[i] @ (nm if types[i] == 0 else f)
        f_child, n_child = f, nm
    return tau
