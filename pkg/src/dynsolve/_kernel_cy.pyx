# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled torque kernel: two-pass Newton-Euler recursion.

Semantics match dynsolve._kernel_py.rnea_kernel exactly; see that module
for the frame conventions. This version scalarizes the per-joint vector
math to avoid per-call numpy overhead in hot loops (trajectory sweeps,
inertia-matrix columns, regressor columns, integrators).
"""

import numpy as np

cimport cython
from libc.math cimport cos, sin

BACKEND_NAME = "cython"


cdef inline void _cross(const double* a, const double* b, double* out) noexcept nogil:
    out[0] = a[1] * b[2] - a[2] * b[1]
    out[1] = a[2] * b[0] - a[0] * b[2]
    out[2] = a[0] * b[1] - a[1] * b[0]


cdef inline double _dot(const double* a, const double* b) noexcept nogil:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


cdef inline void _matvec(const double* m, const double* v, double* out) noexcept nogil:
    # m is row-major 3x3
    out[0] = m[0] * v[0] + m[1] * v[1] + m[2] * v[2]
    out[1] = m[3] * v[0] + m[4] * v[1] + m[5] * v[2]
    out[2] = m[6] * v[0] + m[7] * v[1] + m[8] * v[2]


cdef inline void _matTvec(const double* m, const double* v, double* out) noexcept nogil:
    out[0] = m[0] * v[0] + m[3] * v[1] + m[6] * v[2]
    out[1] = m[1] * v[0] + m[4] * v[1] + m[7] * v[2]
    out[2] = m[2] * v[0] + m[5] * v[1] + m[8] * v[2]


cdef inline void _matmul(const double* a, const double* b, double* out) noexcept nogil:
    cdef int i, j, k
    for i in range(3):
        for j in range(3):
            out[3 * i + j] = (a[3 * i] * b[j]
                              + a[3 * i + 1] * b[3 + j]
                              + a[3 * i + 2] * b[6 + j])


cdef inline void _axis_rotation(const double* a, double angle, double* out) noexcept nogil:
    # Rodrigues: cos(t) I + sin(t) [a]x + (1 - cos(t)) a a^T
    cdef double c = cos(angle)
    cdef double s = sin(angle)
    cdef double v = 1.0 - c
    out[0] = c + v * a[0] * a[0]
    out[1] = v * a[0] * a[1] - s * a[2]
    out[2] = v * a[0] * a[2] + s * a[1]
    out[3] = v * a[1] * a[0] + s * a[2]
    out[4] = c + v * a[1] * a[1]
    out[5] = v * a[1] * a[2] - s * a[0]
    out[6] = v * a[2] * a[0] - s * a[1]
    out[7] = v * a[2] * a[1] + s * a[0]
    out[8] = c + v * a[2] * a[2]


def rnea_kernel(types, rot0, trans0, axis, mass, moment, inertia_o,
                q, qd, qdd, gravity, out=None):
    """Joint torques for one state; same contract as the numpy kernel."""
    cdef const int[::1] types_v = np.ascontiguousarray(types, dtype=np.int32)
    cdef const double[:, :, ::1] rot0_v = np.ascontiguousarray(rot0, dtype=np.float64)
    cdef const double[:, ::1] trans0_v = np.ascontiguousarray(trans0, dtype=np.float64)
    cdef const double[:, ::1] axis_v = np.ascontiguousarray(axis, dtype=np.float64)
    cdef const double[::1] mass_v = np.ascontiguousarray(mass, dtype=np.float64)
    cdef const double[:, ::1] moment_v = np.ascontiguousarray(moment, dtype=np.float64)
    cdef const double[:, :, ::1] inertia_v = np.ascontiguousarray(inertia_o, dtype=np.float64)
    cdef const double[::1] q_v = np.ascontiguousarray(q, dtype=np.float64)
    cdef const double[::1] qd_v = np.ascontiguousarray(qd, dtype=np.float64)
    cdef const double[::1] qdd_v = np.ascontiguousarray(qdd, dtype=np.float64)
    cdef const double[::1] g_v = np.ascontiguousarray(gravity, dtype=np.float64)

    cdef int n = types_v.shape[0]
    tau_arr = out if out is not None else np.empty(n, dtype=np.float64)
    cdef double[::1] tau = tau_arr
    if n == 0:
        return tau_arr

    scratch_rot = np.empty((n, 3, 3), dtype=np.float64)
    scratch_vec = np.empty((n, 4, 3), dtype=np.float64)  # origin, force, torque, axis-of-use
    cdef double[:, :, ::1] joint_rot = scratch_rot
    cdef double[:, :, ::1] sv = scratch_vec

    cdef double w_prev[3]
    cdef double wd_prev[3]
    cdef double a_prev[3]
    cdef double w[3]
    cdef double wd[3]
    cdef double a_here[3]
    cdef double w_parent[3]
    cdef double rot_a[9]
    cdef double rot[9]
    cdef double r[3]
    cdef double ax[3]
    cdef double h[3]
    cdef double t1[3]
    cdef double t2[3]
    cdef double t3[3]
    cdef double f_child[3]
    cdef double n_child[3]
    cdef double f_here[3]
    cdef double n_here[3]
    cdef double io[9]
    cdef int i, k
    cdef double qi, qdi, qddi, m_i

    with nogil:
        for k in range(3):
            w_prev[k] = 0.0
            wd_prev[k] = 0.0
            a_prev[k] = -g_v[k]

        for i in range(n):
            qi = q_v[i]
            qdi = qd_v[i]
            qddi = qdd_v[i]
            for k in range(3):
                ax[k] = axis_v[i, k]
            if types_v[i] == 0:
                _axis_rotation(ax, qi, rot_a)
                _matmul(&rot0_v[i, 0, 0], rot_a, rot)
                for k in range(3):
                    r[k] = trans0_v[i, k]
            else:
                for k in range(9):
                    rot[k] = rot0_v[i, k // 3, k % 3]
                _matvec(&rot0_v[i, 0, 0], ax, t1)
                for k in range(3):
                    r[k] = trans0_v[i, k] + t1[k] * qi
            for k in range(9):
                joint_rot[i, k // 3, k % 3] = rot[k]
            for k in range(3):
                sv[i, 0, k] = r[k]

            # a_prev + wd_prev x r + w_prev x (w_prev x r), then to local
            _cross(wd_prev, r, t1)
            _cross(w_prev, r, t2)
            _cross(w_prev, t2, t3)
            for k in range(3):
                t1[k] += a_prev[k] + t3[k]
            _matTvec(rot, t1, a_here)
            _matTvec(rot, w_prev, w_parent)
            _matTvec(rot, wd_prev, wd)

            if types_v[i] == 0:
                for k in range(3):
                    t1[k] = ax[k] * qdi
                _cross(w_parent, t1, t2)
                for k in range(3):
                    w[k] = w_parent[k] + t1[k]
                    wd[k] += ax[k] * qddi + t2[k]
            else:
                for k in range(3):
                    w[k] = w_parent[k]
                    t1[k] = ax[k] * qdi
                _cross(w, t1, t2)
                for k in range(3):
                    a_here[k] += 2.0 * t2[k] + ax[k] * qddi

            # body wrench about the joint-frame origin
            m_i = mass_v[i]
            for k in range(3):
                h[k] = moment_v[i, k]
            for k in range(9):
                io[k] = inertia_v[i, k // 3, k % 3]
            _cross(wd, h, t1)
            _cross(w, h, t2)
            _cross(w, t2, t3)
            for k in range(3):
                sv[i, 1, k] = m_i * a_here[k] + t1[k] + t3[k]
            _matvec(io, wd, t1)
            _matvec(io, w, t2)
            _cross(w, t2, t3)
            _cross(h, a_here, t2)
            for k in range(3):
                sv[i, 2, k] = t1[k] + t3[k] + t2[k]
                sv[i, 3, k] = ax[k]

            for k in range(3):
                w_prev[k] = w[k]
                wd_prev[k] = wd[k]
                a_prev[k] = a_here[k]

        for k in range(3):
            f_child[k] = 0.0
            n_child[k] = 0.0
        for i in range(n - 1, -1, -1):
            for k in range(3):
                f_here[k] = sv[i, 1, k]
                n_here[k] = sv[i, 2, k]
            if i < n - 1:
                _matvec(&joint_rot[i + 1, 0, 0], f_child, t1)
                _matvec(&joint_rot[i + 1, 0, 0], n_child, t2)
                for k in range(3):
                    r[k] = sv[i + 1, 0, k]
                _cross(r, t1, t3)
                for k in range(3):
                    f_here[k] += t1[k]
                    n_here[k] += t2[k] + t3[k]
            for k in range(3):
                ax[k] = sv[i, 3, k]
            if types_v[i] == 0:
                tau[i] = _dot(ax, n_here)
            else:
                tau[i] = _dot(ax, f_here)
            for k in range(3):
                f_child[k] = f_here[k]
                n_child[k] = n_here[k]

    return tau_arr
