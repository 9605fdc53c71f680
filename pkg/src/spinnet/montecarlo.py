"""
Monte Carlo estimation of I over SU(2)^V.

Samples are drawn in fixed-size chunks. Chunk i owns the random substream
SeedSequence(seed, spawn_key=(i,)), and chunk statistics are merged in chunk
order, so the estimate is bit-identical for any worker count.
"""

import concurrent.futures
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .config import SpinNetConfig
from .errors import EvaluationError, SamplingError
from .graph import LabeledGraph
from .su2 import character_from_cos, haar_samples

logger = logging.getLogger(__name__)

_SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class MCEstimate:
    """Monte Carlo estimate of I with per-chunk batch statistics."""
    mean: float
    stderr: float
    n_samples: int
    seed: int
    batch_means: Tuple[float, ...]
    batch_sizes: Tuple[int, ...]
    chunk_size: int


@dataclass(frozen=True)
class _ChunkStats:
    count: int
    mean: float
    m2: float


class ConvergenceFlag(Enum):
    """Diagnostics raised by convergence_report."""
    EXACT_INTEGRAND = "exact integrand"
    NON_STATIONARY = "non-stationary"


@dataclass(frozen=True)
class ConvergenceReport:
    running_means: Tuple[float, ...]
    batch_variance: float
    flags: Tuple[ConvergenceFlag, ...]
    suggested_additional_samples: int


class _Integrand:
    """Vectorized sign * prod_e chi_{n_e} for one graph."""

    def __init__(self, graph: LabeledGraph, gauge_fix: bool):
        index = {v: i for i, v in enumerate(graph.vertices)}
        self.n_vertices = len(graph.vertices)
        self.edges = [(index[e.end0], index[e.end1], e.spin) for e in graph.edges]
        self.sign = float(graph.prefactor_sign)
        self.bound = float(math.prod(e.spin + 1 for e in graph.edges))
        self.gauge = [index[c[0]] for c in graph.components()] if gauge_fix else []

    def draw(self, rng: np.random.Generator, size: int) -> np.ndarray:
        points = haar_samples(rng, size, self.n_vertices)
        if self.gauge:
            points[:, self.gauge, :] = (1.0, 0.0, 0.0, 0.0)
        return points

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Integrand values for points of shape (size, n_vertices, 4)."""
        values = np.ones(points.shape[0])
        for i, j, spin in self.edges:
            if i == j:
                cos_phi = np.ones(points.shape[0])
            else:
                cos_phi = np.clip(np.einsum("sk,sk->s", points[:, i], points[:, j]), -1.0, 1.0)
            values *= character_from_cos(spin, cos_phi)
        return self.sign * values


def chunk_sizes(n_samples: int, chunk_size: int) -> List[int]:
    full, rest = divmod(n_samples, chunk_size)
    return [chunk_size] * full + ([rest] if rest else [])


def chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    """Independent random stream for one chunk."""
    return np.random.default_rng(np.random.SeedSequence(seed & _SEED_MASK, spawn_key=(chunk,)))


def mc_evaluate(
    graph: LabeledGraph,
    n_samples: int,
    seed: int = 0,
    workers: int = 1,
    chunk_size: Optional[int] = None,
    gauge_fix: bool = True,
) -> MCEstimate:
    """Estimate I = (-1)^{sum n_e} E[prod_e Tr rho_e(h_e0 h_e1^-1)] under Haar measure."""
    if n_samples < 1:
        raise SamplingError(f"n_samples must be at least 1, got: {n_samples}")
    if workers < 1:
        raise SamplingError(f"workers must be at least 1, got: {workers}")
    chunk_size = chunk_size or SpinNetConfig().chunk_size

    integrand = _Integrand(graph, gauge_fix)
    sizes = chunk_sizes(n_samples, chunk_size)
    logger.info(
        f"Monte Carlo: {n_samples} samples in {len(sizes)} chunks, "
        f"seed={seed}, workers={workers}"
    )

    def run_chunk(chunk: int) -> _ChunkStats:
        values = integrand.evaluate(integrand.draw(chunk_rng(seed, chunk), sizes[chunk]))
        if np.any(np.abs(values) > integrand.bound * (1.0 + 1e-9)):
            raise EvaluationError(f"integrand exceeds bound {integrand.bound} in chunk {chunk}")
        mean = float(np.mean(values))
        logger.debug(f"chunk {chunk} done: mean={mean}")
        return _ChunkStats(len(values), mean, float(np.sum((values - mean) ** 2)))

    if workers == 1:
        stats = [run_chunk(i) for i in range(len(sizes))]
    else:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
            stats = list(executor.map(run_chunk, range(len(sizes))))

    total = _merge(stats)
    stderr = math.sqrt(total.m2 / (total.count - 1) / total.count) if total.count > 1 else 0.0
    return MCEstimate(
        mean=total.mean,
        stderr=stderr,
        n_samples=total.count,
        seed=seed,
        batch_means=tuple(s.mean for s in stats),
        batch_sizes=tuple(s.count for s in stats),
        chunk_size=chunk_size,
    )


def _merge(stats: Sequence[_ChunkStats]) -> _ChunkStats:
    """Pairwise mean/M2 update, applied in chunk order."""
    count, mean, m2 = 0, 0.0, 0.0
    for s in stats:
        combined = count + s.count
        delta = s.mean - mean
        mean = mean + delta * s.count / combined
        m2 = m2 + s.m2 + delta * delta * count * s.count / combined
        count = combined
    return _ChunkStats(count, mean, m2)


def convergence_report(
    estimate: MCEstimate, target_stderr: Optional[float] = None
) -> ConvergenceReport:
    """Running means over batches plus stationarity and sample-size hints."""
    if len(estimate.batch_means) < 2:
        raise SamplingError("convergence report needs at least 2 batches")

    means = np.asarray(estimate.batch_means)
    sizes = np.asarray(estimate.batch_sizes, dtype=float)
    running = np.cumsum(means * sizes) / np.cumsum(sizes)
    batch_variance = float(np.var(means, ddof=1))

    flags = []
    if batch_variance == 0.0 and estimate.stderr == 0.0:
        flags.append(ConvergenceFlag.EXACT_INTEGRAND)

    tail = max(1, len(means) // 4)
    tail_mean = float(np.average(means[-tail:], weights=sizes[-tail:]))
    if abs(tail_mean - estimate.mean) > 5.0 * estimate.stderr and estimate.stderr > 0.0:
        logger.warning(
            f"Non-stationary batches: last-quarter mean {tail_mean} vs {estimate.mean}"
        )
        flags.append(ConvergenceFlag.NON_STATIONARY)

    target = target_stderr if target_stderr is not None else 1e-3 * max(1.0, abs(estimate.mean))
    needed = 0
    if estimate.stderr > target:
        needed = math.ceil(estimate.n_samples * (estimate.stderr / target) ** 2) - estimate.n_samples

    return ConvergenceReport(
        running_means=tuple(float(x) for x in running),
        batch_variance=batch_variance,
        flags=tuple(flags),
        suggested_additional_samples=max(0, needed),
    )
