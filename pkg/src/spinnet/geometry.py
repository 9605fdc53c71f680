"""
4-simplex geometry of the complete graph on five vertices.

A vertex variable h in SU(2) is a unit vector in R^4, read as the outward
normal of a hyperplane. Five generic normals bound a 4-simplex, unique up to
translation and scale; its facet weights are the positive null vector of the
4x5 matrix of normals (Minkowski closure), and the angles between normals
are the ten dihedral data that the K5 integrand depends on.
"""

import concurrent.futures
import logging
import math
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import null_space, svdvals

from .config import SpinNetConfig
from .errors import DegenerateSimplexError, GraphStructureError, NonSimplexError, SamplingError
from .graph import MAX_SPIN
from .montecarlo import chunk_rng, chunk_sizes
from .su2 import GroupElement, character_from_cos, haar_samples

logger = logging.getLogger(__name__)

UNIT_TOL = 1e-12
RANK_TOL = 1e-10
K5_PAIRS: Tuple[Tuple[int, int], ...] = tuple(combinations(range(5), 2))


@dataclass(frozen=True)
class UnitVector4:
    w: float
    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        norm = math.sqrt(self.w**2 + self.x**2 + self.y**2 + self.z**2)
        if abs(norm - 1.0) > UNIT_TOL:
            raise ValueError(f"not a unit vector: norm {norm}")

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])


def to_unit_vector(h: GroupElement) -> UnitVector4:
    return UnitVector4(h.w, h.x, h.y, h.z)


def _as_matrix(vectors: Sequence) -> np.ndarray:
    rows = [v.as_array() if hasattr(v, "as_array") else np.asarray(v, dtype=float) for v in vectors]
    return np.vstack(rows)


def angle_matrix(hs: Sequence) -> np.ndarray:
    """Symmetric matrix of angles between unit 4-vectors, zero diagonal."""
    if len(hs) < 2:
        raise ValueError(f"angle_matrix needs at least 2 elements, got {len(hs)}")
    points = _as_matrix(hs)
    angles = np.arccos(np.clip(points @ points.T, -1.0, 1.0))
    np.fill_diagonal(angles, 0.0)
    return (angles + angles.T) / 2.0


@dataclass(frozen=True)
class SimplexGeometry:
    """Normals, facet weights summing to 1, and the angles between normals."""
    normals: Tuple[UnitVector4, ...]
    weights: Tuple[float, ...]
    angles: np.ndarray

    def dihedral_angles(self) -> Tuple[float, ...]:
        """The ten upper-triangle angles, pairs in lexicographic order."""
        return tuple(float(self.angles[i, j]) for i, j in K5_PAIRS)

    def interior_angles(self) -> np.ndarray:
        """Interior dihedral angles pi - phi off the diagonal."""
        interior = math.pi - self.angles
        np.fill_diagonal(interior, 0.0)
        return interior


def reconstruct_simplex(normals: Sequence) -> SimplexGeometry:
    """Recover the simplex with the given five outward facet normals.

    Raises DegenerateSimplexError when the normals do not span R^4 and
    NonSimplexError when the closure weights have mixed signs.
    """
    if len(normals) != 5:
        raise ValueError(f"a 4-simplex has 5 facets, got {len(normals)} normals")
    matrix = _as_matrix(normals).T

    singular = svdvals(matrix)
    rank = int(np.sum(singular > RANK_TOL * max(singular[0], 1.0)))
    kernel = null_space(matrix, rcond=RANK_TOL)
    if rank != 4 or kernel.shape[1] != 1:
        raise DegenerateSimplexError(5 - rank)

    weights = kernel[:, 0]
    if np.any(np.abs(weights) <= RANK_TOL):
        raise DegenerateSimplexError(1, "closure weight vanishes on a facet")
    if np.all(weights > RANK_TOL) or np.all(weights < -RANK_TOL):
        weights = weights / weights.sum()
    else:
        raise NonSimplexError(f"closure weights have mixed signs: {np.round(weights, 6).tolist()}")

    units = tuple(n if isinstance(n, UnitVector4) else UnitVector4(*map(float, n)) for n in normals)
    return SimplexGeometry(units, tuple(float(w) for w in weights), angle_matrix(units))


class GeometryStatus(Enum):
    SIMPLEX = "simplex"
    DEGENERATE = "degenerate"
    NON_SIMPLEX = "non-simplex"


@dataclass(frozen=True)
class GeometrySample:
    """One K5 sample: its reconstruction outcome and integrand value."""
    index: int
    status: GeometryStatus
    angles: Tuple[float, ...]
    weights: Optional[Tuple[float, ...]]
    integrand: float


def _k5_integrand(points: np.ndarray, spins: Sequence[int]) -> np.ndarray:
    """Product of signed edge weights for points of shape (size, 5, 4)."""
    values = np.ones(points.shape[0])
    for (i, j), spin in zip(K5_PAIRS, spins):
        cos_phi = np.clip(np.einsum("sk,sk->s", points[:, i], points[:, j]), -1.0, 1.0)
        sign = -1.0 if spin % 2 else 1.0
        values *= sign * character_from_cos(spin, cos_phi)
    return values


def _sample(index: int, point: np.ndarray, value: float) -> GeometrySample:
    angles = angle_matrix(point)
    dihedral = tuple(float(angles[i, j]) for i, j in K5_PAIRS)
    try:
        geometry = reconstruct_simplex(point)
    except DegenerateSimplexError:
        return GeometrySample(index, GeometryStatus.DEGENERATE, dihedral, None, value)
    except NonSimplexError:
        return GeometrySample(index, GeometryStatus.NON_SIMPLEX, dihedral, None, value)
    return GeometrySample(index, GeometryStatus.SIMPLEX, dihedral, geometry.weights, value)


def sample_geometries(
    spins: Sequence[int],
    n_samples: int,
    seed: int = 0,
    chunk_size: Optional[int] = None,
    workers: int = 1,
) -> Iterator[GeometrySample]:
    """Haar-sample five normals per draw and yield geometry plus integrand, in order.

    Draws use the Monte Carlo chunk streams without gauge fixing, so the
    integrand values are exactly those of mc_evaluate(k5_graph(spins),
    gauge_fix=False) for the same seed and chunk size.
    """
    if len(spins) != len(K5_PAIRS):
        raise ValueError(f"K5 needs {len(K5_PAIRS)} spins, got {len(spins)}")
    bad = [s for s in spins if not 0 <= int(s) <= MAX_SPIN]
    if bad:
        raise GraphStructureError(f"K5 spins must lie in [0, {MAX_SPIN}], got: {bad}")
    if n_samples < 1:
        raise SamplingError(f"n_samples must be at least 1, got: {n_samples}")
    if workers < 1:
        raise SamplingError(f"workers must be at least 1, got: {workers}")
    chunk_size = chunk_size or SpinNetConfig().chunk_size
    sizes = chunk_sizes(n_samples, chunk_size)
    spins = [int(s) for s in spins]

    def run_chunk(chunk: int) -> List[GeometrySample]:
        points = haar_samples(chunk_rng(seed, chunk), sizes[chunk], 5)
        values = _k5_integrand(points, spins)
        logger.debug(f"geometry chunk {chunk}: {sizes[chunk]} samples")
        start = chunk * chunk_size
        return [_sample(start + k, points[k], float(values[k])) for k in range(len(values))]

    if workers == 1:
        for chunk in range(len(sizes)):
            yield from run_chunk(chunk)
        return

    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        for samples in executor.map(run_chunk, range(len(sizes))):
            yield from samples
