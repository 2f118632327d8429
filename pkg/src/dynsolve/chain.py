"""Serial kinematic chains extracted from a robot model.

A chain is the ordered list of movable joints on the root-to-tip path.
Fixed joints never appear as entries: their child bodies are fused into
the nearest preceding movable joint's composite body via the
parallel-axis theorem, and their origins are folded into the next
movable joint's fixed transform. Chains are immutable and safe to share
across threads.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .errors import EmptyChainError, ModelError
from .transforms import rpy_to_matrix
from .urdf import RobotModel, SpatialInertia, combine_inertias

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChainJoint:
    """One movable joint plus the composite rigid body it moves.

    ``rotation`` and ``translation`` give the zero-displacement pose of
    this joint's frame in the predecessor joint's frame (root frame for
    the first entry). ``axis`` is the unit motion axis and ``body`` the
    fused inertia, both expressed in this joint's frame.
    """

    name: str
    kind: str  # "revolute" | "prismatic"
    rotation: np.ndarray
    translation: np.ndarray
    axis: np.ndarray
    body: SpatialInertia
    lower: float
    upper: float
    velocity: float
    effort: float


class KinematicChain:
    """Ordered root-to-tip list of movable joints with fused inertias."""

    def __init__(self, joints, root_link: str, tip_link: str):
        self._joints = tuple(joints)
        self.root_link = root_link
        self.tip_link = tip_link
        n = len(self._joints)
        types = np.zeros(n, dtype=np.int32)
        rotations = np.zeros((n, 3, 3))
        translations = np.zeros((n, 3))
        axes = np.zeros((n, 3))
        masses = np.zeros(n)
        first_moments = np.zeros((n, 3))
        origin_inertias = np.zeros((n, 3, 3))
        for i, joint in enumerate(self._joints):
            if joint.kind not in ("revolute", "prismatic"):
                raise ModelError(
                    f"chain entry '{joint.name}' has kind '{joint.kind}'"
                )
            types[i] = 0 if joint.kind == "revolute" else 1
            rotations[i] = joint.rotation
            translations[i] = joint.translation
            axes[i] = joint.axis
            masses[i] = joint.body.mass
            first_moments[i] = joint.body.mass * joint.body.com
            origin_inertias[i] = joint.body.about_origin()
        for arr in (types, rotations, translations, axes, masses,
                    first_moments, origin_inertias):
            arr.flags.writeable = False
        self._packed = (types, rotations, translations, axes, masses,
                        first_moments, origin_inertias)

    @property
    def joints(self):
        return self._joints

    @property
    def dof(self) -> int:
        return len(self._joints)

    @property
    def joint_names(self):
        return [j.name for j in self._joints]

    @property
    def total_mass(self) -> float:
        return float(sum(j.body.mass for j in self._joints))

    def packed(self):
        """Kernel-layout arrays: (types, R0, p0, axis, m, h, I_origin).

        ``h`` is the per-body first moment (mass * com) and ``I_origin``
        the rotational inertia about the joint-frame origin; together
        with the mass these are the 10 inertial parameters the torque
        computation is linear in.
        """
        return self._packed

    def __repr__(self):
        names = ", ".join(self.joint_names)
        return (
            f"KinematicChain({self.root_link!r} -> {self.tip_link!r}, "
            f"dof={self.dof}, joints=[{names}])"
        )


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "warning" | "error"
    where: str
    message: str

    def __str__(self):
        return f"[{self.severity}] {self.where}: {self.message}"


def _compose(rot_a, trans_a, rot_b, trans_b):
    """Pose composition: frame B expressed through frame A's pose."""
    return rot_a @ rot_b, trans_a + rot_a @ trans_b


def _rigid_group(model, start_link, path_joint_names):
    """Links rigidly connected to ``start_link`` through fixed joints.

    Returns {link_name: (rotation, translation)} poses in the start
    link's frame. Movable joints are never traversed; ones that are not
    on the extraction path are reported as excluded branches.
    """
    group = {start_link: (np.eye(3), np.zeros(3))}
    stack = [start_link]
    while stack:
        link = stack.pop()
        rot, trans = group[link]
        for joint in model.child_joints_of(link):
            if joint.kind == "fixed":
                pose = _compose(rot, trans, rpy_to_matrix(joint.rpy), joint.xyz)
                group[joint.child] = pose
                stack.append(joint.child)
            elif joint.name not in path_joint_names:
                logger.warning(
                    "excluding branch at movable joint '%s' (subtree under "
                    "link '%s' does not belong to the chain)",
                    joint.name,
                    joint.child,
                )
    return group


def extract_chain(model: RobotModel, root: str, tip: str) -> KinematicChain:
    """Extract the serial chain of movable joints on the root-to-tip path.

    Fixed joints on the path are fused; so are bodies hanging off path
    links through fixed joints. Branches reached through movable joints
    are excluded (logged as warnings). Deterministic for identical inputs.
    """
    if root not in model.links:
        raise ModelError(f"root link '{root}' not in model")
    if tip not in model.links:
        raise ModelError(f"tip link '{tip}' not in model")
    if root == tip:
        raise EmptyChainError(f"root and tip are both '{root}'")

    path = []
    link = tip
    while link != root:
        joint = model.parent_joint_of(link)
        if joint is None:
            raise ModelError(f"tip '{tip}' is not a descendant of root '{root}'")
        path.append(joint)
        link = joint.parent
    path.reverse()
    path_joint_names = {j.name for j in path}

    # Fold consecutive fixed-joint origins into the next movable joint's
    # fixed transform.
    entries = []  # (JointSpec, rotation, translation)
    rot_acc, trans_acc = np.eye(3), np.zeros(3)
    for joint in path:
        rot, trans = _compose(rot_acc, trans_acc, rpy_to_matrix(joint.rpy), joint.xyz)
        if joint.kind == "fixed":
            rot_acc, trans_acc = rot, trans
        else:
            entries.append((joint, rot, trans))
            rot_acc, trans_acc = np.eye(3), np.zeros(3)

    # Base-side sweep: report movable branches hanging off the immobile
    # base group (its masses never move, so they are skipped silently).
    _rigid_group(model, root, path_joint_names)

    chain_joints = []
    for joint, rot, trans in entries:
        group = _rigid_group(model, joint.child, path_joint_names)
        body = combine_inertias(
            model.links[name].inertial.transformed(g_rot, g_trans)
            for name, (g_rot, g_trans) in group.items()
        )
        chain_joints.append(
            ChainJoint(
                name=joint.name,
                kind=joint.kind,
                rotation=rot,
                translation=trans,
                axis=joint.axis,
                body=body,
                lower=joint.lower,
                upper=joint.upper,
                velocity=joint.velocity,
                effort=joint.effort,
            )
        )
    return KinematicChain(chain_joints, root, tip)


def validate_chain(chain: KinematicChain):
    """Check chain health; returns one Diagnostic per violation.

    An empty list means every body satisfies the inertia invariants,
    every axis is unit length and the chain has at least one degree of
    freedom. Zero-mass bodies are legal but flagged (they can make the
    inertia matrix singular).
    """
    diagnostics = []
    if chain.dof < 1:
        diagnostics.append(Diagnostic("error", "chain", "chain has no movable joints"))
    for joint in chain.joints:
        if abs(float(np.linalg.norm(joint.axis)) - 1.0) > 1e-9:
            diagnostics.append(
                Diagnostic("error", joint.name, "joint axis is not unit length")
            )
        body = joint.body
        if not np.allclose(body.inertia, body.inertia.T, rtol=0.0, atol=1e-12):
            diagnostics.append(
                Diagnostic("error", joint.name, "inertia tensor is not symmetric")
            )
        eigenvalues = np.linalg.eigvalsh(body.inertia)
        if eigenvalues.min() < -1e-9:
            diagnostics.append(
                Diagnostic(
                    "error",
                    joint.name,
                    f"inertia tensor has negative eigenvalue {eigenvalues.min():.3g}",
                )
            )
        if body.mass == 0.0:
            diagnostics.append(
                Diagnostic("warning", joint.name, "zero-mass body")
            )
    return diagnostics
