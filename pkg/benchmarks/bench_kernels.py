#!/usr/bin/env python3
"""Benchmark the compiled torque kernel against the numpy fallback.

Times single-state torque runs and inertia-matrix assembly on a random
serial chain, the two call patterns that dominate trajectory sweeps and
integrators.

Usage: python benchmarks/bench_kernels.py [--dof 6] [--iters 20000]
"""

import argparse
import time

import numpy as np

from dynsolve import _kernel_py
from dynsolve.chain import ChainJoint, KinematicChain
from dynsolve.urdf import SpatialInertia

try:
    from dynsolve import _kernel_cy
except ImportError:
    _kernel_cy = None


def build_chain(dof, seed=7):
    rng = np.random.default_rng(seed)
    joints = []
    for i in range(dof):
        rot, _ = np.linalg.qr(rng.normal(size=(3, 3)))
        if np.linalg.det(rot) < 0:
            rot[:, 0] *= -1.0
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        spread = 0.1 * rng.normal(size=(3, 3))
        joints.append(ChainJoint(
            name=f"j{i}",
            kind="revolute" if i % 3 else "prismatic",
            rotation=rot,
            translation=0.4 * rng.normal(size=3),
            axis=axis,
            body=SpatialInertia(rng.uniform(0.5, 3.0), 0.2 * rng.normal(size=3),
                                spread @ spread.T + 1e-3 * np.eye(3)),
            lower=-np.pi, upper=np.pi, velocity=np.inf, effort=np.inf,
        ))
    return KinematicChain(joints, "root", "tip")


def time_kernel(kernel, packed, states, gravity):
    start = time.perf_counter()
    for q, qd, qdd in states:
        kernel.rnea_kernel(*packed, q, qd, qdd, gravity)
    return time.perf_counter() - start


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dof", type=int, default=6)
    parser.add_argument("--iters", type=int, default=20000)
    args = parser.parse_args()

    chain = build_chain(args.dof)
    packed = chain.packed()
    rng = np.random.default_rng(1)
    states = list(zip(
        rng.uniform(-np.pi, np.pi, (args.iters, args.dof)),
        rng.uniform(-3.0, 3.0, (args.iters, args.dof)),
        rng.uniform(-3.0, 3.0, (args.iters, args.dof)),
    ))
    gravity = np.array([0.0, 0.0, -9.81])

    print(f"dof={args.dof}, {args.iters} torque runs per backend")
    t_py = time_kernel(_kernel_py, packed, states, gravity)
    print(f"  python : {t_py:8.3f} s  ({1e6 * t_py / args.iters:8.2f} us/call)")
    if _kernel_cy is None:
        print("  cython : not built (pip install -e . --no-build-isolation)")
        return
    t_cy = time_kernel(_kernel_cy, packed, states, gravity)
    print(f"  cython : {t_cy:8.3f} s  ({1e6 * t_cy / args.iters:8.2f} us/call)")
    print(f"  speedup: {t_py / t_cy:.1f}x")

    # sanity: identical results on the last state
    q, qd, qdd = states[-1]
    difference = np.abs(
        _kernel_py.rnea_kernel(*packed, q, qd, qdd, gravity)
        - _kernel_cy.rnea_kernel(*packed, q, qd, qdd, gravity)
    ).max()
    print(f"  max |tau_py - tau_cy| on final state: {difference:.2e}")


if __name__ == "__main__":
    main()
