"""URDF parsing into an immutable robot model.

Only the data that feeds rigid-body dynamics is read: link inertials
(mass, center of mass, rotational inertia) and joint kinematics (type,
origin, axis, limits). Visual, collision and transmission elements are
skipped. Units are SI; rpy angles are fixed-axis XYZ rotations applied
as Rz(yaw) @ Ry(pitch) @ Rx(roll).
"""

import logging
import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

import numpy as np

from .errors import ModelError, ParseError, UnsupportedJointError
from .transforms import rpy_to_matrix

logger = logging.getLogger(__name__)

ALL_JOINT_KINDS = ("revolute", "prismatic", "fixed")
MOVABLE_JOINT_KINDS = ("revolute", "prismatic")

_AXIS_NORM_WARN = 1e-6


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(eq=False)
class SpatialInertia:
    """Mass, center of mass and rotational inertia of one rigid body.

    ``com`` is the center-of-mass position in the body frame (m) and
    ``inertia`` the 3x3 rotational inertia about the COM, expressed in
    body-frame axes (kg m^2). The tensor is symmetrized on construction.
    """

    mass: float
    com: np.ndarray
    inertia: np.ndarray

    def __post_init__(self):
        self.mass = float(self.mass)
        self.com = np.asarray(self.com, dtype=float).reshape(3).copy()
        inertia = np.asarray(self.inertia, dtype=float).reshape(3, 3)
        self.inertia = 0.5 * (inertia + inertia.T)
        if not math.isfinite(self.mass) or self.mass < 0.0:
            raise ModelError(f"mass must be finite and >= 0, got {self.mass}")
        if not (np.isfinite(self.com).all() and np.isfinite(self.inertia).all()):
            raise ModelError("inertial parameters must be finite")
        _freeze(self.com)
        _freeze(self.inertia)

    @classmethod
    def zero(cls) -> "SpatialInertia":
        return cls(0.0, np.zeros(3), np.zeros((3, 3)))

    def transformed(self, rotation: np.ndarray, translation: np.ndarray) -> "SpatialInertia":
        """Express this inertia in a frame where the body frame has pose (R, p)."""
        return SpatialInertia(
            self.mass,
            rotation @ self.com + translation,
            rotation @ self.inertia @ rotation.T,
        )

    def about_origin(self) -> np.ndarray:
        """Rotational inertia about the body-frame origin (parallel-axis shift)."""
        c = self.com
        return self.inertia + self.mass * (np.dot(c, c) * np.eye(3) - np.outer(c, c))

    def __eq__(self, other):
        if not isinstance(other, SpatialInertia):
            return NotImplemented
        return (
            self.mass == other.mass
            and np.array_equal(self.com, other.com)
            and np.array_equal(self.inertia, other.inertia)
        )


def combine_inertias(parts) -> SpatialInertia:
    """Composite inertia of rigidly joined bodies sharing one frame.

    COMs are mass-averaged and each tensor is moved to the composite COM
    with the parallel-axis theorem. A zero total mass yields the zero
    inertia placed at the frame origin.
    """
    parts = list(parts)
    total_mass = sum(p.mass for p in parts)
    if total_mass > 0.0:
        com = sum(p.mass * p.com for p in parts) / total_mass
    else:
        com = np.zeros(3)
    inertia = np.zeros((3, 3))
    for p in parts:
        d = p.com - com
        inertia += p.inertia + p.mass * (np.dot(d, d) * np.eye(3) - np.outer(d, d))
    return SpatialInertia(total_mass, com, inertia)


@dataclass(eq=False)
class LinkSpec:
    name: str
    inertial: SpatialInertia

    def __eq__(self, other):
        if not isinstance(other, LinkSpec):
            return NotImplemented
        return self.name == other.name and self.inertial == other.inertial


@dataclass(eq=False)
class JointSpec:
    """One URDF joint: the pose of the child frame in the parent frame at
    zero displacement, plus the joint-local motion axis and limits."""

    name: str
    kind: str
    parent: str
    child: str
    xyz: np.ndarray
    rpy: np.ndarray
    axis: np.ndarray
    lower: float = -math.inf
    upper: float = math.inf
    velocity: float = math.inf
    effort: float = math.inf

    def __post_init__(self):
        self.xyz = _freeze(np.asarray(self.xyz, dtype=float).reshape(3).copy())
        self.rpy = _freeze(np.asarray(self.rpy, dtype=float).reshape(3).copy())
        self.axis = _freeze(np.asarray(self.axis, dtype=float).reshape(3).copy())

    def __eq__(self, other):
        if not isinstance(other, JointSpec):
            return NotImplemented
        return (
            self.name == other.name
            and self.kind == other.kind
            and self.parent == other.parent
            and self.child == other.child
            and np.array_equal(self.xyz, other.xyz)
            and np.array_equal(self.rpy, other.rpy)
            and np.array_equal(self.axis, other.axis)
            and (self.lower, self.upper, self.velocity, self.effort)
            == (other.lower, other.upper, other.velocity, other.effort)
        )


@dataclass(eq=False)
class RobotModel:
    """Parsed robot description: a tree of links connected by joints.

    Immutable after construction; safe to share across threads and to
    reuse for multiple root/tip chain extractions.
    """

    name: str
    links: dict = field(default_factory=dict)
    joints: dict = field(default_factory=dict)

    def __post_init__(self):
        self._validate_tree()

    def _validate_tree(self):
        parent_joint = {}
        for joint in self.joints.values():
            if joint.parent not in self.links:
                raise ModelError(
                    f"joint '{joint.name}' names unknown parent link '{joint.parent}'"
                )
            if joint.child not in self.links:
                raise ModelError(
                    f"joint '{joint.name}' names unknown child link '{joint.child}'"
                )
            if joint.child in parent_joint:
                raise ModelError(
                    f"link '{joint.child}' has more than one parent joint"
                )
            parent_joint[joint.child] = joint
        roots = [name for name in self.links if name not in parent_joint]
        if not roots:
            raise ModelError("link graph has no root (cycle)")
        if len(roots) > 1:
            raise ModelError(f"link graph has multiple roots: {sorted(roots)}")
        # Walking up from every link must terminate at the root; a cycle
        # among non-root links would loop forever otherwise.
        root = roots[0]
        for name in self.links:
            seen = set()
            while name != root:
                if name in seen:
                    raise ModelError("link graph contains a cycle")
                seen.add(name)
                name = parent_joint[name].parent
        self._root_link = root
        self._parent_joint = parent_joint

    @property
    def root_link(self) -> str:
        return self._root_link

    def parent_joint_of(self, link: str):
        """The joint whose child is ``link``, or None for the root."""
        return self._parent_joint.get(link)

    def child_joints_of(self, link: str):
        return [j for j in self.joints.values() if j.parent == link]

    def __eq__(self, other):
        if not isinstance(other, RobotModel):
            return NotImplemented
        return (
            self.name == other.name
            and self.links == other.links
            and self.joints == other.joints
        )


def _parse_vec3(text, what):
    try:
        vals = [float(v) for v in text.split()]
    except ValueError as exc:
        raise ParseError(f"bad {what} value '{text}'") from exc
    if len(vals) != 3:
        raise ParseError(f"{what} needs 3 values, got {len(vals)}")
    return np.array(vals)


def _origin_of(elem):
    origin = elem.find("origin")
    xyz = np.zeros(3)
    rpy = np.zeros(3)
    if origin is not None:
        if origin.get("xyz") is not None:
            xyz = _parse_vec3(origin.get("xyz"), "origin xyz")
        if origin.get("rpy") is not None:
            rpy = _parse_vec3(origin.get("rpy"), "origin rpy")
    return xyz, rpy


def _parse_inertial(link_elem, link_name) -> SpatialInertia:
    inertial = link_elem.find("inertial")
    if inertial is None:
        return SpatialInertia.zero()
    xyz, rpy = _origin_of(inertial)
    mass_elem = inertial.find("mass")
    mass = float(mass_elem.get("value", "0")) if mass_elem is not None else 0.0
    tensor = np.zeros((3, 3))
    inertia_elem = inertial.find("inertia")
    if inertia_elem is not None:
        def attr(key):
            return float(inertia_elem.get(key, "0"))

        ixx, ixy, ixz = attr("ixx"), attr("ixy"), attr("ixz")
        iyy, iyz, izz = attr("iyy"), attr("iyz"), attr("izz")
        tensor = np.array([[ixx, ixy, ixz], [ixy, iyy, iyz], [ixz, iyz, izz]])
    # URDF expresses the tensor about the COM in the inertial-frame axes;
    # rotate it into link axes so one canonical representation remains.
    rot = rpy_to_matrix(rpy)
    try:
        return SpatialInertia(mass, xyz, rot @ tensor @ rot.T)
    except ModelError as exc:
        raise ModelError(f"link '{link_name}': {exc}") from exc


def parse_urdf(xml_text: str) -> RobotModel:
    """Parse a URDF document into a RobotModel.

    Raises ParseError for malformed XML, UnsupportedJointError for joint
    types outside revolute/continuous/prismatic/fixed, and ModelError for
    structural problems (dangling link references, cycles, bad values).
    """
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError as exc:
        line, col = exc.position
        raise ParseError(f"malformed XML at line {line}, column {col}: {exc.msg}") from exc
    if root.tag != "robot":
        raise ModelError(f"root element must be <robot>, got <{root.tag}>")

    links = {}
    for link_elem in root.findall("link"):
        name = link_elem.get("name")
        if not name:
            raise ModelError("link without a name attribute")
        if name in links:
            raise ModelError(f"duplicate link name '{name}'")
        links[name] = LinkSpec(name, _parse_inertial(link_elem, name))

    joints = {}
    for joint_elem in root.findall("joint"):
        name = joint_elem.get("name")
        if not name:
            raise ModelError("joint without a name attribute")
        if name in joints:
            raise ModelError(f"duplicate joint name '{name}'")
        kind = joint_elem.get("type")
        continuous = kind == "continuous"
        if continuous:
            kind = "revolute"
            lower, upper = -math.inf, math.inf
        elif kind in ("revolute", "prismatic"):
            lower, upper = -math.inf, math.inf
        elif kind == "fixed":
            lower, upper = 0.0, 0.0
        else:
            raise UnsupportedJointError(
                f"joint '{name}' has unsupported type '{kind}'"
            )
        parent_elem = joint_elem.find("parent")
        child_elem = joint_elem.find("child")
        if parent_elem is None or child_elem is None:
            raise ModelError(f"joint '{name}' lacks a parent or child element")
        xyz, rpy = _origin_of(joint_elem)

        axis = np.array([1.0, 0.0, 0.0])
        axis_elem = joint_elem.find("axis")
        if axis_elem is not None and axis_elem.get("xyz") is not None:
            axis = _parse_vec3(axis_elem.get("xyz"), f"joint '{name}' axis")
        if kind in MOVABLE_JOINT_KINDS:
            norm = float(np.linalg.norm(axis))
            if norm < 1e-9:
                raise ModelError(f"joint '{name}' axis has near-zero norm")
            if abs(norm - 1.0) > _AXIS_NORM_WARN:
                logger.warning(
                    "joint '%s' axis norm %.6g != 1; normalizing", name, norm
                )
            if abs(norm - 1.0) > 1e-12:  # keep already-unit axes bit-stable
                axis = axis / norm

        limit_elem = joint_elem.find("limit")
        velocity = effort = math.inf
        if limit_elem is not None:
            # position bounds do not apply to continuous joints
            if not continuous and limit_elem.get("lower") is not None:
                lower = float(limit_elem.get("lower"))
            if not continuous and limit_elem.get("upper") is not None:
                upper = float(limit_elem.get("upper"))
            if limit_elem.get("velocity") is not None:
                velocity = float(limit_elem.get("velocity"))
            if limit_elem.get("effort") is not None:
                effort = float(limit_elem.get("effort"))

        joints[name] = JointSpec(
            name=name,
            kind=kind,
            parent=parent_elem.get("link", ""),
            child=child_elem.get("link", ""),
            xyz=xyz,
            rpy=rpy,
            axis=axis,
            lower=lower,
            upper=upper,
            velocity=velocity,
            effort=effort,
        )

    return RobotModel(root.get("name", ""), links, joints)


def load_urdf(path) -> RobotModel:
    """Read and parse a URDF file."""
    from .errors import IoError

    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise IoError(f"cannot read URDF file '{path}': {exc}") from exc
    return parse_urdf(text)


def _fmt(x: float) -> str:
    return repr(float(x))


def model_to_urdf(model: RobotModel) -> str:
    """Serialize a RobotModel back to URDF text.

    The output is the canonical form (inertial origin at the COM with
    zero rpy); parsing it reproduces the model exactly.
    """
    out = [f'<robot name="{model.name}">']
    for link in model.links.values():
        si = link.inertial
        out.append(f'  <link name="{link.name}">')
        out.append("    <inertial>")
        out.append(
            f'      <origin xyz="{_fmt(si.com[0])} {_fmt(si.com[1])} {_fmt(si.com[2])}" rpy="0 0 0"/>'
        )
        out.append(f'      <mass value="{_fmt(si.mass)}"/>')
        t = si.inertia
        out.append(
            f'      <inertia ixx="{_fmt(t[0, 0])}" ixy="{_fmt(t[0, 1])}" ixz="{_fmt(t[0, 2])}"'
            f' iyy="{_fmt(t[1, 1])}" iyz="{_fmt(t[1, 2])}" izz="{_fmt(t[2, 2])}"/>'
        )
        out.append("    </inertial>")
        out.append("  </link>")
    for joint in model.joints.values():
        kind = joint.kind
        if kind == "revolute" and math.isinf(joint.lower) and math.isinf(joint.upper):
            kind = "continuous"
        out.append(f'  <joint name="{joint.name}" type="{kind}">')
        out.append(f'    <parent link="{joint.parent}"/>')
        out.append(f'    <child link="{joint.child}"/>')
        out.append(
            f'    <origin xyz="{_fmt(joint.xyz[0])} {_fmt(joint.xyz[1])} {_fmt(joint.xyz[2])}"'
            f' rpy="{_fmt(joint.rpy[0])} {_fmt(joint.rpy[1])} {_fmt(joint.rpy[2])}"/>'
        )
        if joint.kind in MOVABLE_JOINT_KINDS:
            out.append(
                f'    <axis xyz="{_fmt(joint.axis[0])} {_fmt(joint.axis[1])} {_fmt(joint.axis[2])}"/>'
            )
            attrs = []
            for key in ("lower", "upper", "velocity", "effort"):
                value = getattr(joint, key)
                if math.isfinite(value):
                    attrs.append(f'{key}="{_fmt(value)}"')
            if attrs:
                out.append(f'    <limit {" ".join(attrs)}/>')
        out.append("  </joint>")
    out.append("</robot>")
    return "\n".join(out) + "\n"
