"""Shared test helpers: random chains, random trees, FK at rest, RK4."""

import numpy as np

from dynsolve.chain import ChainJoint, KinematicChain
from dynsolve.urdf import JointSpec, LinkSpec, RobotModel, SpatialInertia


def random_rotation(rng) -> np.ndarray:
    q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    if np.linalg.det(q) < 0:
        q[:, 0] *= -1.0
    return q


def random_unit(rng) -> np.ndarray:
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def random_body(rng, min_mass=0.1) -> SpatialInertia:
    b = 0.1 * rng.normal(size=(3, 3))
    return SpatialInertia(
        rng.uniform(min_mass, 3.0),
        0.3 * rng.normal(size=3),
        b @ b.T + 1e-3 * np.eye(3),
    )


def random_chain(rng, dof, prismatic_prob=0.3) -> KinematicChain:
    """Random serial chain with positive masses and PD rotational inertias."""
    joints = []
    for i in range(dof):
        kind = "prismatic" if rng.random() < prismatic_prob else "revolute"
        joints.append(
            ChainJoint(
                name=f"j{i}",
                kind=kind,
                rotation=random_rotation(rng),
                translation=0.5 * rng.normal(size=3),
                axis=random_unit(rng),
                body=random_body(rng),
                lower=-np.pi,
                upper=np.pi,
                velocity=np.inf,
                effort=np.inf,
            )
        )
    return KinematicChain(joints, "root", "tip")


def random_tree_model(rng, n_path_joints, fixed_prob=0.4, n_branches=2,
                      movable_branches=0):
    """Random tree RobotModel whose root-to-tip path mixes fixed joints.

    Off-path branches attach by fixed joints (their masses must fuse into
    the chain); ``movable_branches`` adds revolute branches whose subtree
    masses must be excluded. Returns (model, root, tip).
    """
    links = {"L0": LinkSpec("L0", random_body(rng))}
    joints = {}

    def add_joint(name, kind, parent, child):
        links[child] = LinkSpec(child, random_body(rng))
        joints[name] = JointSpec(
            name=name,
            kind=kind,
            parent=parent,
            child=child,
            xyz=0.4 * rng.normal(size=3),
            rpy=rng.uniform(-np.pi, np.pi, 3),
            axis=random_unit(rng),
            lower=-np.pi,
            upper=np.pi,
        )

    path_links = ["L0"]
    movable_seen = False
    for i in range(n_path_joints):
        # Keep at least one movable joint so the chain is nonempty.
        fixed = rng.random() < fixed_prob and not (
            i == n_path_joints - 1 and not movable_seen
        )
        kind = "fixed" if fixed else ("revolute" if rng.random() < 0.7 else "prismatic")
        movable_seen = movable_seen or not fixed
        child = f"L{i + 1}"
        add_joint(f"J{i}", kind, path_links[-1], child)
        path_links.append(child)

    for b in range(n_branches):
        parent = path_links[int(rng.integers(1, len(path_links)))]
        add_joint(f"B{b}", "fixed", parent, f"LB{b}")
    for b in range(movable_branches):
        parent = path_links[int(rng.integers(1, len(path_links)))]
        add_joint(f"M{b}", "revolute", parent, f"LM{b}")

    return RobotModel("tree", links, joints), "L0", path_links[-1]


def link_poses_at_rest(model):
    """Pose (R, p) of every link frame in the root frame with all joints
    at zero displacement."""
    from dynsolve.transforms import rpy_to_matrix

    poses = {model.root_link: (np.eye(3), np.zeros(3))}
    pending = [model.root_link]
    while pending:
        parent = pending.pop()
        rot_p, trans_p = poses[parent]
        for joint in model.child_joints_of(parent):
            rot = rot_p @ rpy_to_matrix(joint.rpy)
            trans = trans_p + rot_p @ joint.xyz
            poses[joint.child] = (rot, trans)
            pending.append(joint.child)
    return poses


def rk4_step(f, t, y, dt):
    k1 = f(t, y)
    k2 = f(t + 0.5 * dt, y + 0.5 * dt * k1)
    k3 = f(t + 0.5 * dt, y + 0.5 * dt * k2)
    k4 = f(t + dt, y + dt * k3)
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
