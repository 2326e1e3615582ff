"""Geometric user model and the two ergonomic objective functions.

Positions are meters in a right-handed world frame (y up); directions are
unit vectors; angles are radians everywhere, degrees only at presentation
boundaries. All functions are pure and safe to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePositionError, ValidationError

# Inside this radius of an anchor the connecting direction is numerically
# meaningless; such placements score the worst possible angle.
DEGENERACY_RADIUS = 0.01

UNIT_TOLERANCE = 1e-9


def vec3(x, y=None, z=None) -> np.ndarray:
    """Coerce to a float64 3-vector."""
    if y is None:
        v = np.asarray(x, dtype=np.float64)
        if v.shape != (3,):
            raise ValidationError(f"expected a 3-vector, got shape {v.shape}")
        return v
    return np.array([x, y, z], dtype=np.float64)


def is_unit(v: np.ndarray, tol: float = UNIT_TOLERANCE) -> bool:
    return abs(float(np.sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])) - 1.0) <= tol


@dataclass(frozen=True)
class UserPose:
    """Anthropometric frame: where the user looks from and reaches from.

    `gaze_forward` is the neutral line of sight from `head_position`;
    `arm_rest_direction` points along the relaxed arm from
    `shoulder_position`; `arm_length` bounds reach.
    """

    head_position: np.ndarray
    gaze_forward: np.ndarray
    shoulder_position: np.ndarray
    arm_rest_direction: np.ndarray
    arm_length: float

    def __post_init__(self):
        object.__setattr__(self, "head_position", vec3(self.head_position))
        object.__setattr__(self, "gaze_forward", vec3(self.gaze_forward))
        object.__setattr__(self, "shoulder_position", vec3(self.shoulder_position))
        object.__setattr__(self, "arm_rest_direction", vec3(self.arm_rest_direction))
        object.__setattr__(self, "arm_length", float(self.arm_length))
        if not self.arm_length > 0:
            raise ValidationError("arm_length must be > 0", field="arm_length")
        if not is_unit(self.gaze_forward):
            raise ValidationError("gaze_forward must be unit length", field="gaze_forward")
        if not is_unit(self.arm_rest_direction):
            raise ValidationError(
                "arm_rest_direction must be unit length", field="arm_rest_direction"
            )
        if np.array_equal(self.head_position, self.shoulder_position):
            raise ValidationError(
                "head_position and shoulder_position must differ", field="head_position"
            )

    def to_dict(self) -> dict:
        return {
            "head_position": [float(v) for v in self.head_position],
            "gaze_forward": [float(v) for v in self.gaze_forward],
            "shoulder_position": [float(v) for v in self.shoulder_position],
            "arm_rest_direction": [float(v) for v in self.arm_rest_direction],
            "arm_length": self.arm_length,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "UserPose":
        required = (
            "head_position",
            "gaze_forward",
            "shoulder_position",
            "arm_rest_direction",
            "arm_length",
        )
        for key in required:
            if key not in data:
                raise ValidationError(f"pose is missing '{key}'", field=key)
        try:
            return cls(
                head_position=vec3(data["head_position"]),
                gaze_forward=vec3(data["gaze_forward"]),
                shoulder_position=vec3(data["shoulder_position"]),
                arm_rest_direction=vec3(data["arm_rest_direction"]),
                arm_length=data["arm_length"],
            )
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"malformed pose: {exc}") from exc


def default_pose() -> UserPose:
    """Standing adult, right-handed: eyes at 1.70 m looking along +z, right
    shoulder at (0.20, 1.45, 0) with the arm resting straight down, 0.65 m
    reach."""
    return UserPose(
        head_position=vec3(0.0, 1.70, 0.0),
        gaze_forward=vec3(0.0, 0.0, 1.0),
        shoulder_position=vec3(0.20, 1.45, 0.0),
        arm_rest_direction=vec3(0.0, -1.0, 0.0),
        arm_length=0.65,
    )


def _angles_from(anchor: np.ndarray, axis: np.ndarray, positions: np.ndarray) -> np.ndarray:
    """Angle between `axis` and anchor->position for each row of (n, 3)
    `positions`; positions inside the degeneracy radius score pi.

    Written with explicit component arithmetic (no BLAS reductions) so the
    result is bit-identical regardless of batch size or thread settings.
    """
    dx = positions[:, 0] - anchor[0]
    dy = positions[:, 1] - anchor[1]
    dz = positions[:, 2] - anchor[2]
    dist = np.sqrt(dx * dx + dy * dy + dz * dz)
    degenerate = dist < DEGENERACY_RADIUS
    safe = np.where(degenerate, 1.0, dist)
    cosang = (dx * axis[0] + dy * axis[1] + dz * axis[2]) / safe
    angles = np.arccos(np.clip(cosang, -1.0, 1.0))
    angles[degenerate] = np.pi
    return angles


def neck_angle_many(pose: UserPose, positions: np.ndarray) -> np.ndarray:
    """Neck strain proxy: angle between the neutral gaze and head->position."""
    return _angles_from(pose.head_position, pose.gaze_forward, positions)


def arm_angle_many(pose: UserPose, positions: np.ndarray) -> np.ndarray:
    """Arm strain proxy: angle between the resting arm and shoulder->position."""
    return _angles_from(pose.shoulder_position, pose.arm_rest_direction, positions)


def reach_violation_many(pose: UserPose, positions: np.ndarray) -> np.ndarray:
    """Signed reach constraint: ||p - shoulder|| - arm_length (<= 0 feasible)."""
    dx = positions[:, 0] - pose.shoulder_position[0]
    dy = positions[:, 1] - pose.shoulder_position[1]
    dz = positions[:, 2] - pose.shoulder_position[2]
    return np.sqrt(dx * dx + dy * dy + dz * dz) - pose.arm_length


def _single_angle(pose, p, anchor, batch_fn):
    p = vec3(p)
    d = p - anchor
    if float(np.sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2])) < DEGENERACY_RADIUS:
        raise DegeneratePositionError(
            f"position {p.tolist()} within {DEGENERACY_RADIUS} m of anchor {anchor.tolist()}"
        )
    return float(batch_fn(pose, p[None, :])[0])


def neck_angle(pose: UserPose, p) -> float:
    """Single-point neck angle in radians.

    Raises DegeneratePositionError within the degeneracy radius of the head;
    batch evaluation maps such positions to pi instead.
    """
    return _single_angle(pose, p, pose.head_position, neck_angle_many)


def arm_angle(pose: UserPose, p) -> float:
    """Single-point arm angle in radians (right shoulder)."""
    return _single_angle(pose, p, pose.shoulder_position, arm_angle_many)


def reach_violation(pose: UserPose, p) -> float:
    """Signed reach constraint for a single position."""
    return float(reach_violation_many(pose, vec3(p)[None, :])[0])


# Objective registry: id -> batch evaluator. Order of ids in a problem fixes
# the objective-vector layout.
OBJECTIVES = {
    "neck_angle": neck_angle_many,
    "arm_angle": arm_angle_many,
}
