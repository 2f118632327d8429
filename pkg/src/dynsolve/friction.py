"""Joint friction models and diagonal drive gains.

Friction acts per joint and depends only on that joint's velocity. All
bundled models vanish exactly at zero velocity: the Coulomb term is
smoothed with tanh(qd / v_eps) instead of sign(qd) so integrators and
finite-difference checks stay well behaved, and the sigmoid model
subtracts its own value at rest rather than assuming it is zero.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .errors import ConfigError, DimensionError, InputError


@dataclass(frozen=True)
class NoFriction:
    """Frictionless joint."""

    def evaluate(self, qd: float) -> float:
        return 0.0


@dataclass(frozen=True)
class ViscousCoulomb:
    """fv * qd + fc * tanh(qd / v_eps); v_eps is the boundary-layer width."""

    fv: float
    fc: float
    v_eps: float = 1e-3

    def __post_init__(self):
        if self.fv < 0.0 or self.fc < 0.0:
            raise ConfigError("viscous-coulomb gains Fv, Fc must be >= 0")
        if not self.v_eps > 0.0:
            raise ConfigError("viscous-coulomb vEps must be > 0")

    def evaluate(self, qd: float) -> float:
        return self.fv * qd + self.fc * np.tanh(qd / self.v_eps)


@dataclass(frozen=True)
class AsymmetricSigmoid:
    """Bounded velocity-offset sigmoid:

    phi1 * sigmoid(phi2 * (qd + phi3)) - phi1 * sigmoid(phi2 * phi3)

    The subtracted rest value makes f(0) = 0 exact for any parameters.
    """

    phi1: float
    phi2: float
    phi3: float

    def evaluate(self, qd: float) -> float:
        return self.phi1 * (
            expit(self.phi2 * (qd + self.phi3)) - expit(self.phi2 * self.phi3)
        )


_MODEL_NAMES = {
    NoFriction: "none",
    ViscousCoulomb: "viscous-coulomb",
    AsymmetricSigmoid: "asymmetric-sigmoid",
}


@dataclass(frozen=True)
class FrictionParams:
    """One friction model per chain joint, root to tip."""

    models: tuple

    def __post_init__(self):
        object.__setattr__(self, "models", tuple(self.models))
        for model in self.models:
            if type(model) not in _MODEL_NAMES:
                raise ConfigError(f"unknown friction model object {model!r}")

    def __len__(self):
        return len(self.models)

    @classmethod
    def from_list(cls, entries) -> "FrictionParams":
        """Build from config entries: [{"model": name, "params": {...}}, ...]."""
        models = []
        for i, entry in enumerate(entries):
            if not isinstance(entry, dict) or "model" not in entry:
                raise ConfigError(f"friction entry {i} must be {{'model': ..., 'params': ...}}")
            name = entry["model"]
            params = entry.get("params", {})
            try:
                if name == "none":
                    models.append(NoFriction())
                elif name == "viscous-coulomb":
                    models.append(
                        ViscousCoulomb(
                            fv=float(params["Fv"]),
                            fc=float(params["Fc"]),
                            v_eps=float(params.get("vEps", 1e-3)),
                        )
                    )
                elif name == "asymmetric-sigmoid":
                    models.append(
                        AsymmetricSigmoid(
                            phi1=float(params["phi1"]),
                            phi2=float(params["phi2"]),
                            phi3=float(params["phi3"]),
                        )
                    )
                else:
                    raise ConfigError(f"friction entry {i}: unknown model '{name}'")
            except KeyError as exc:
                raise ConfigError(
                    f"friction entry {i} ('{name}') is missing parameter {exc}"
                ) from exc
        return cls(tuple(models))

    def to_list(self):
        out = []
        for model in self.models:
            name = _MODEL_NAMES[type(model)]
            if isinstance(model, ViscousCoulomb):
                params = {"Fv": model.fv, "Fc": model.fc, "vEps": model.v_eps}
            elif isinstance(model, AsymmetricSigmoid):
                params = {"phi1": model.phi1, "phi2": model.phi2, "phi3": model.phi3}
            else:
                params = {}
            out.append({"model": name, "params": params})
        return out

    @classmethod
    def none(cls, dof: int) -> "FrictionParams":
        return cls(tuple(NoFriction() for _ in range(dof)))


def eval_friction(params: FrictionParams, qd) -> np.ndarray:
    """Per-joint friction torques f(qd)."""
    qd = np.asarray(qd, dtype=float)
    if qd.shape != (len(params),):
        raise DimensionError(
            f"qd must have length {len(params)}, got shape {qd.shape}"
        )
    if not np.isfinite(qd).all():
        raise InputError("qd contains non-finite values")
    return np.array([m.evaluate(v) for m, v in zip(params.models, qd)])


@dataclass(frozen=True)
class DriveGains:
    """Diagonal torque-per-current gains, N*m/A, strictly positive."""

    k: np.ndarray

    def __post_init__(self):
        k = np.asarray(self.k, dtype=float).reshape(-1).copy()
        if len(k) == 0 or not np.isfinite(k).all() or (k <= 0.0).any():
            raise ConfigError("drive gains must be finite and strictly positive")
        k.flags.writeable = False
        object.__setattr__(self, "k", k)

    def __len__(self):
        return len(self.k)


def drive_gains_matrix(gains: DriveGains) -> np.ndarray:
    """The diagonal current-to-torque conversion matrix."""
    return np.diag(gains.k)


def _check_len(gains: DriveGains, vec, name) -> np.ndarray:
    vec = np.asarray(vec, dtype=float)
    if vec.shape != (len(gains),):
        raise DimensionError(
            f"{name} must have length {len(gains)}, got shape {vec.shape}"
        )
    return vec


def torques_from_currents(gains: DriveGains, currents) -> np.ndarray:
    """Elementwise k_i * i_i."""
    return gains.k * _check_len(gains, currents, "currents")


def currents_from_torques(gains: DriveGains, torques) -> np.ndarray:
    """Elementwise tau_i / k_i (gains are strictly positive)."""
    return _check_len(gains, torques, "torques") / gains.k
