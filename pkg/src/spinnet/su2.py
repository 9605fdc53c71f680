"""
SU(2) as unit quaternions.

A group element is a point (w, x, y, z) of S^3, with w equal to half the trace
in the defining representation. The character of the spin-n representation
depends only on the angle phi between two such points, through the Chebyshev
recurrence chi_{k+1} = 2 cos(phi) chi_k - chi_{k-1}.
"""

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

__all__ = [
    "Angle",
    "GroupElement",
    "haar_sample",
    "haar_samples",
    "relative_angle",
    "character",
    "character_from_cos",
    "edge_weight",
]

# radians, in [0, pi]
Angle = float

ArrayOrFloat = Union[float, np.ndarray]


@dataclass(frozen=True)
class GroupElement:
    """Unit quaternion w + xi + yj + zk; renormalized on construction."""
    w: float
    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        norm = math.sqrt(self.w**2 + self.x**2 + self.y**2 + self.z**2)
        if norm == 0.0:
            raise ValueError("zero quaternion is not a group element")
        for name in ("w", "x", "y", "z"):
            object.__setattr__(self, name, float(getattr(self, name)) / norm)

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls(1.0, 0.0, 0.0, 0.0)

    @classmethod
    def from_array(cls, values: np.ndarray) -> "GroupElement":
        w, x, y, z = (float(v) for v in values)
        return cls(w, x, y, z)

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        a1, b1, c1, d1 = self.w, self.x, self.y, self.z
        a2, b2, c2, d2 = other.w, other.x, other.y, other.z
        return GroupElement(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def inverse(self) -> "GroupElement":
        return GroupElement(self.w, -self.x, -self.y, -self.z)

    def __neg__(self) -> "GroupElement":
        return GroupElement(-self.w, -self.x, -self.y, -self.z)


def haar_sample(rng: np.random.Generator) -> GroupElement:
    """Draw one element from the normalized Haar measure."""
    return GroupElement.from_array(haar_samples(rng, 1)[0])


def haar_samples(rng: np.random.Generator, *shape: int) -> np.ndarray:
    """Haar samples as an array of shape (*shape, 4) of unit 4-vectors.

    Normalizing independent standard Gaussians gives the uniform measure on S^3.
    """
    gauss = rng.standard_normal((*shape, 4))
    return gauss / np.linalg.norm(gauss, axis=-1, keepdims=True)


def relative_angle(h1: GroupElement, h2: GroupElement) -> Angle:
    """Angle between h1 and h2 as vectors in R^4."""
    dot = h1.w * h2.w + h1.x * h2.x + h1.y * h2.y + h1.z * h2.z
    return math.acos(min(1.0, max(-1.0, dot)))


def character_from_cos(n: int, cos_phi: ArrayOrFloat) -> ArrayOrFloat:
    """U_n(cos phi), the trace of the spin-n representation; vectorized."""
    if n < 0:
        raise ValueError(f"spin must be nonnegative, got: {n}")
    if n == 0:
        return np.ones_like(cos_phi) if isinstance(cos_phi, np.ndarray) else 1.0
    two_c = 2.0 * cos_phi
    previous, current = 1.0, two_c
    for _ in range(n - 1):
        previous, current = current, two_c * current - previous
    return current


def character(n: int, phi: Angle) -> float:
    """Character chi_n = sin((n+1) phi) / sin(phi), without the 0/0 at 0 and pi."""
    return float(character_from_cos(n, math.cos(phi)))


def edge_weight(n: int, h1: GroupElement, h2: GroupElement) -> float:
    """Signed edge weight (-1)^n Tr rho_n(h1 h2^-1)."""
    sign = -1.0 if n % 2 else 1.0
    return sign * character(n, relative_angle(h1, h2))
