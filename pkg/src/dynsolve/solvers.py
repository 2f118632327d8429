"""Solver interface and name-keyed plugin registry.

A solver binds one kinematic chain, a gravity vector and optional
friction/drive-gain data, and answers the seven dynamics queries
(inertia matrix, Coriolis vector, gravity vector, friction vector,
combined components, torques, and, for current-level plugins, joint
currents). Which concrete solver runs is chosen by name through a
configuration document, so calling code never depends on a particular
implementation.

Built-ins registered at import:

* ``generic``         - model-based rigid-body solver; friction is
                        deliberately left out of its torques.
* ``ur10-current``    - current-level solver: torques pass through a
                        diagonal drive-gains map and joint currents are
                        retrievable; friction parameters optional.
* ``franka-friction`` - torque-level solver that adds a required
                        friction model to the rigid-body torques.

Solvers are immutable after creation and safe for concurrent calls. The
registry itself should only be mutated during start-up.
"""

import json
import logging
from abc import ABC
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import dynamics
from .chain import KinematicChain, extract_chain
from .dynamics import DynamicComponents, JointState
from .errors import (
    ConfigError,
    DimensionError,
    IoError,
    MissingParamError,
    UnknownPluginError,
    UnsupportedOperationError,
)
from .friction import (
    DriveGains,
    FrictionParams,
    currents_from_torques,
    drive_gains_matrix,
    eval_friction,
    torques_from_currents,
)
from .urdf import parse_urdf

logger = logging.getLogger(__name__)

_CONFIG_KEYS = {
    "plugin_name",
    "robot_description_path",
    "root",
    "tip",
    "gravity",
    "friction",
    "drive_gains",
    "friction_units",
}


@dataclass(frozen=True)
class SolverConfig:
    """Everything needed to instantiate a solver.

    ``robot_description`` is URDF text; ``description_path`` only echoes
    where it came from (reports include it).
    """

    plugin_name: str
    robot_description: str
    root: str
    tip: str
    gravity: np.ndarray
    friction: FrictionParams | None = None
    drive_gains: DriveGains | None = None
    friction_units: str = "torque"
    description_path: str | None = None

    def __post_init__(self):
        if self.plugin_name not in _REGISTRY:
            raise UnknownPluginError(
                f"unknown plugin '{self.plugin_name}'; registered: "
                f"{', '.join(registered_solvers())}"
            )
        gravity = np.asarray(self.gravity, dtype=float).reshape(-1)
        if gravity.shape != (3,) or not np.isfinite(gravity).all():
            raise ConfigError("gravity must be a finite 3-vector")
        gravity = gravity.copy()
        gravity.flags.writeable = False
        object.__setattr__(self, "gravity", gravity)
        if self.friction_units not in ("torque", "current"):
            raise ConfigError(
                f"friction_units must be 'torque' or 'current', got "
                f"'{self.friction_units}'"
            )

    @classmethod
    def from_dict(cls, doc: dict, base_dir=".") -> "SolverConfig":
        """Build from a parsed configuration document (see from_file)."""
        unknown = set(doc) - _CONFIG_KEYS
        for key in sorted(unknown):
            logger.warning("ignoring unknown config key '%s'", key)
        for key in ("plugin_name", "robot_description_path", "root", "tip", "gravity"):
            if key not in doc:
                raise ConfigError(f"config is missing required key '{key}'")
        path = Path(base_dir) / doc["robot_description_path"]
        try:
            description = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise IoError(f"cannot read robot description '{path}': {exc}") from exc
        friction = None
        if doc.get("friction") is not None:
            friction = FrictionParams.from_list(doc["friction"])
        gains = None
        if doc.get("drive_gains") is not None:
            gains = DriveGains(np.asarray(doc["drive_gains"], dtype=float))
        return cls(
            plugin_name=doc["plugin_name"],
            robot_description=description,
            root=doc["root"],
            tip=doc["tip"],
            gravity=doc["gravity"],
            friction=friction,
            drive_gains=gains,
            friction_units=doc.get("friction_units", "torque"),
            description_path=str(path),
        )

    @classmethod
    def from_file(cls, path) -> "SolverConfig":
        """Load a JSON configuration document.

        Keys: ``plugin_name``, ``robot_description_path`` (relative paths
        resolve against the config file's directory), ``root``, ``tip``,
        ``gravity`` (3 numbers), optional ``friction`` (per-joint list of
        ``{"model": ..., "params": {...}}``), optional ``drive_gains``
        (list of numbers) and optional ``friction_units``
        ("torque" | "current"). Unknown keys are ignored with a warning.
        """
        path = Path(path)
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise IoError(f"cannot read config '{path}': {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config '{path}' is not valid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise ConfigError(f"config '{path}' must be a JSON object")
        return cls.from_dict(doc, base_dir=path.parent)

    def echo(self) -> dict:
        """JSON-serializable summary for report provenance."""
        return {
            "plugin_name": self.plugin_name,
            "robot_description_path": self.description_path,
            "root": self.root,
            "tip": self.tip,
            "gravity": list(self.gravity),
            "friction": self.friction.to_list() if self.friction else None,
            "drive_gains": list(self.drive_gains.k) if self.drive_gains else None,
            "friction_units": self.friction_units,
        }


class InverseDynamicsSolver(ABC):
    """Abstract solver bound to one chain, gravity and parameter set.

    The default torque computation leaves friction out; plugins with a
    friction model override get_torques to add it. All methods return
    vectors/matrices sized by the chain's dof.
    """

    plugin_name = "abstract"

    def __init__(self, chain: KinematicChain, config: SolverConfig):
        self._chain = chain
        self._gravity = np.array(config.gravity, dtype=float)
        self._gravity.flags.writeable = False
        self._config = config

    @property
    def chain(self) -> KinematicChain:
        return self._chain

    @property
    def dof(self) -> int:
        return self._chain.dof

    @property
    def gravity(self) -> np.ndarray:
        return self._gravity

    @property
    def config(self) -> SolverConfig:
        return self._config

    def get_inertia_matrix(self, q) -> np.ndarray:
        return dynamics.inertia_matrix(self._chain, q)

    def get_coriolis_vector(self, q, qd) -> np.ndarray:
        return dynamics.coriolis_vector(self._chain, q, qd)

    def get_gravity_vector(self, q) -> np.ndarray:
        return dynamics.gravity_vector(self._chain, self._gravity, q)

    def get_friction_vector(self, qd) -> np.ndarray:
        """f(qd); zero unless the plugin carries a friction model."""
        qd = dynamics._as_vector(qd, self.dof, "qd")
        return np.zeros(self.dof)

    def get_dynamic_components(self, q, qd) -> DynamicComponents:
        return DynamicComponents(
            inertia=self.get_inertia_matrix(q),
            coriolis=self.get_coriolis_vector(q, qd),
            gravity=self.get_gravity_vector(q),
        )

    def get_torques(self, q, qd, qdd) -> np.ndarray:
        """tau = H(q) qdd + C(q, qd) qd + g(q), friction-free."""
        return dynamics.rnea(self._chain, self._gravity, JointState(q, qd, qdd))

    def get_joint_currents(self, q, qd, qdd) -> np.ndarray:
        raise UnsupportedOperationError(
            f"plugin '{self.plugin_name}' does not expose joint currents"
        )


class GenericSolver(InverseDynamicsSolver):
    """Model-based solver for any robot whose URDF carries inertials.

    Disregards friction entirely, which is appropriate for simulated
    robots; the friction vector is identically zero.
    """

    plugin_name = "generic"


class _FrictionBearingSolver(InverseDynamicsSolver):
    """Shared behavior for plugins whose torques include friction."""

    requires_friction = False

    def __init__(self, chain, config):
        super().__init__(chain, config)
        if config.friction is None:
            if self.requires_friction:
                raise MissingParamError(
                    f"plugin '{self.plugin_name}' requires friction parameters"
                )
            self._friction = FrictionParams.none(chain.dof)
        else:
            if len(config.friction) != chain.dof:
                raise DimensionError(
                    f"friction has {len(config.friction)} entries but chain "
                    f"dof is {chain.dof}"
                )
            self._friction = config.friction

    def _raw_friction(self, qd) -> np.ndarray:
        return eval_friction(self._friction, qd)

    def get_friction_vector(self, qd) -> np.ndarray:
        return self._raw_friction(qd)

    def get_torques(self, q, qd, qdd) -> np.ndarray:
        """tau = H qdd + C qd + g + f: friction joins the decomposition."""
        return super().get_torques(q, qd, qdd) + self.get_friction_vector(qd)


class FrankaFrictionSolver(_FrictionBearingSolver):
    """Torque-level solver with an explicit (required) friction model."""

    plugin_name = "franka-friction"
    requires_friction = True


class UR10CurrentSolver(_FrictionBearingSolver):
    """Current-level solver: drives are characterized in amperes.

    Joint currents are first-class outputs; torques are currents scaled
    by the diagonal drive gains. A friction model is optional and may be
    declared in current units (friction_units = "current"), in which
    case the friction vector is converted to torque units through the
    gains.
    """

    plugin_name = "ur10-current"

    def __init__(self, chain, config):
        super().__init__(chain, config)
        if config.drive_gains is None:
            raise MissingParamError(
                f"plugin '{self.plugin_name}' requires drive_gains"
            )
        if len(config.drive_gains) != chain.dof:
            raise DimensionError(
                f"drive_gains has {len(config.drive_gains)} entries but chain "
                f"dof is {chain.dof}"
            )
        self._gains = config.drive_gains

    def get_drive_gains_matrix(self) -> np.ndarray:
        return drive_gains_matrix(self._gains)

    def get_friction_vector(self, qd) -> np.ndarray:
        friction = self._raw_friction(qd)
        if self._config.friction_units == "current":
            return torques_from_currents(self._gains, friction)
        return friction

    def get_joint_currents(self, q, qd, qdd) -> np.ndarray:
        """Currents whose gain-scaled torques equal get_torques exactly."""
        return currents_from_torques(self._gains, self.get_torques(q, qd, qdd))


_REGISTRY: dict = {}


def register_solver(name: str, factory) -> None:
    """Register a solver factory under a plugin name.

    ``factory(chain, config)`` must return an InverseDynamicsSolver.
    Re-registering a name replaces the old factory with a warning.
    """
    if not name:
        raise ConfigError("plugin name must be nonempty")
    if name in _REGISTRY:
        logger.warning("replacing already-registered solver plugin '%s'", name)
    _REGISTRY[name] = factory


def registered_solvers():
    """Sorted names of all registered plugins."""
    return sorted(_REGISTRY)


def create_solver(config: SolverConfig) -> InverseDynamicsSolver:
    """Instantiate and initialize the solver selected by the config.

    Parses the robot description, extracts the root-to-tip chain, binds
    gravity and plugin parameters. Raises UnknownPluginError for an
    unregistered name and MissingParamError when the plugin needs
    friction/drive-gain data the config lacks.
    """
    try:
        factory = _REGISTRY[config.plugin_name]
    except KeyError:
        raise UnknownPluginError(
            f"unknown plugin '{config.plugin_name}'; registered: "
            f"{', '.join(registered_solvers())}"
        ) from None
    model = parse_urdf(config.robot_description)
    chain = extract_chain(model, config.root, config.tip)
    return factory(chain, config)


register_solver("generic", GenericSolver)
register_solver("ur10-current", UR10CurrentSolver)
register_solver("franka-friction", FrankaFrictionSolver)
