"""Robot-agnostic inverse dynamics toolkit.

Parses URDF robot descriptions into serial kinematic chains and computes
the torque decomposition of the rigid-body equations of motion (inertia,
Coriolis/centrifugal, gravity, friction) through a pluggable solver
registry, plus trajectory-level tooling behind the ``dynsolve`` CLI.
"""

__version__ = "0.1.0"

from ._backend import backend_name
from .chain import ChainJoint, Diagnostic, KinematicChain, extract_chain, validate_chain
from .dynamics import (
    DynamicComponents,
    JointState,
    Regressor,
    coriolis_vector,
    dynamic_components,
    forward_dynamics,
    gravity_vector,
    inertia_matrix,
    inertial_parameter_vector,
    regressor_matrix,
    rnea,
)
from .errors import (
    AsymmetryError,
    ConfigError,
    DimensionError,
    DynsolveError,
    EmptyChainError,
    FormatError,
    InputError,
    IoError,
    MissingMeasurementError,
    MissingParamError,
    ModelError,
    NonMonotonicTimeError,
    ParseError,
    SingularInertiaError,
    UnknownPluginError,
    UnsupportedJointError,
    UnsupportedOperationError,
)
from .friction import (
    AsymmetricSigmoid,
    DriveGains,
    FrictionParams,
    NoFriction,
    ViscousCoulomb,
    currents_from_torques,
    drive_gains_matrix,
    eval_friction,
    torques_from_currents,
)
from .solvers import (
    FrankaFrictionSolver,
    GenericSolver,
    InverseDynamicsSolver,
    SolverConfig,
    UR10CurrentSolver,
    create_solver,
    register_solver,
    registered_solvers,
)
from .trajectory import (
    ComparisonReport,
    ComputedRecord,
    TrajectoryData,
    TrajectorySample,
    compare_torques,
    compute_along_trajectory,
    emit_report,
    generate_sinusoid,
    load_trajectory,
    write_trajectory_csv,
)
from .urdf import (
    JointSpec,
    LinkSpec,
    RobotModel,
    SpatialInertia,
    combine_inertias,
    load_urdf,
    model_to_urdf,
    parse_urdf,
)
