"""
Monte-Carlo oracle for the closed forms in ``services.credit``.

Credit vectors are drawn uniformly from the polytope
{x_1 >= ... >= x_m >= 0, sum c_i x_i = 1}: y is drawn uniformly on the
standard simplex through normalised exponential spacings and mapped by
x_k = sum_{j>=k} y_j / C_j, a linear bijection onto the polytope with constant
Jacobian. The volume check uses plain rejection sampling over a bounding box.

Samples are produced in fixed-size chunks, each with its own PCG64 stream
spawned from the master seed, and partial results are merged in chunk order.
Estimates therefore depend on (seed, num_samples, chunk_size) only, never on
the number of worker threads.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Tuple, TypeVar, Union

import numpy as np

from pytypes.credit import CreditVector, GroupStructure, NORMALIZATION_TOLERANCE
from pytypes.oracle import MomentEstimate, OracleComparison, SampleConfig, VolumeEstimate, validate_seed
from services.credit import credit_moments
from services.exceptions import CreditError, GroupStructureError, NumericalFault

logger = logging.getLogger(__name__)

DEFAULT_CHUNK_SIZE = 50_000

T = TypeVar('T')


def make_rng(seed: Union[int, np.random.SeedSequence]) -> np.random.Generator:
    """PCG64 generator for a u64 seed or an already spawned child sequence."""
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(validate_seed(seed))
    return np.random.Generator(np.random.PCG64(seed))


def _chunk_sizes(num_samples: int, chunk_size: int) -> List[int]:
    if chunk_size < 1:
        raise CreditError(f"Chunk size must be positive, got {chunk_size}")
    full, rest = divmod(num_samples, chunk_size)
    return [chunk_size] * full + ([rest] if rest else [])


def _run_chunks(
    seed: int,
    num_samples: int,
    chunk_size: int,
    workers: int,
    task: Callable[[np.random.Generator, int], T],
) -> List[T]:
    """Run ``task(rng, size)`` per chunk and return the results in chunk order."""
    sizes = _chunk_sizes(num_samples, chunk_size)
    children = np.random.SeedSequence(validate_seed(seed)).spawn(len(sizes))
    jobs = [(make_rng(child), size) for child, size in zip(children, sizes)]

    logger.debug("Sampling %d draws in %d chunks on %d worker(s)", num_samples, len(jobs), workers)

    if workers <= 1 or len(jobs) == 1:
        return [task(rng, size) for rng, size in jobs]

    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(lambda job: task(*job), jobs))


def sample_credit_vectors(groups: GroupStructure, size: int, rng: np.random.Generator) -> np.ndarray:
    """``size`` uniform draws from the credit polytope, shape (size, m)."""
    if groups.m == 1:
        return np.full((size, 1), 1.0 / groups.counts[0])

    prefix = np.asarray(groups.prefix_sums, dtype=float)
    spacings = rng.standard_exponential((size, groups.m))
    simplex = spacings / spacings.sum(axis=1, keepdims=True)
    return np.cumsum((simplex / prefix)[:, ::-1], axis=1)[:, ::-1]


def check_axioms(groups: GroupStructure, samples: np.ndarray) -> None:
    """Every row must be non-increasing, non-negative and weight-sum to 1."""
    totals = samples @ np.asarray(groups.counts, dtype=float)
    worst = float(np.max(np.abs(totals - 1.0))) if len(totals) else 0.0
    if worst > NORMALIZATION_TOLERANCE:
        raise NumericalFault(f"Sampled vector violates normalization by {worst!r} for {groups}")
    if np.any(samples < 0.0) or np.any(np.diff(samples, axis=1) > 0.0):
        raise NumericalFault(f"Sampled vector violates the ranking order for {groups}")


def sample_credit_vector(groups: GroupStructure, rng: np.random.Generator) -> CreditVector:
    samples = sample_credit_vectors(groups, 1, rng)
    check_axioms(groups, samples)
    return CreditVector.per_group(samples[0].tolist(), groups)


def _chunk_moments(groups: GroupStructure) -> Callable[[np.random.Generator, int], Tuple[int, np.ndarray, np.ndarray]]:
    def task(rng: np.random.Generator, size: int):
        samples = sample_credit_vectors(groups, size, rng)
        check_axioms(groups, samples)
        mean = samples.mean(axis=0)
        squares = ((samples - mean) ** 2).sum(axis=0)
        return size, mean, squares

    return task


def estimate_moments(
    config: SampleConfig,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    workers: int = 1,
) -> MomentEstimate:
    """Empirical mean, stddev (ddof=1) and standard error per group."""
    partials = _run_chunks(config.seed, config.num_samples, chunk_size, workers, _chunk_moments(config.groups))

    count, mean, squares = partials[0]
    for size, chunk_mean, chunk_squares in partials[1:]:
        total = count + size
        delta = chunk_mean - mean
        mean = mean + delta * (size / total)
        squares = squares + chunk_squares + delta ** 2 * (count * size / total)
        count = total

    if count > 1:
        stddev = np.sqrt(squares / (count - 1))
    else:
        stddev = np.zeros_like(mean)
    standard_error = stddev / math.sqrt(count)

    logger.info(
        "Estimated moments for %s from %d samples (seed=%d)", config.groups, count, config.seed
    )
    return MomentEstimate(
        mean=tuple(mean.tolist()),
        stddev=tuple(stddev.tolist()),
        standard_error_of_mean=tuple(standard_error.tolist()),
        num_samples=count,
    )


def _delta_in_se(observed: float, expected: float, standard_error: float) -> float:
    # Agreement to rounding noise counts as exact, even when the SE is itself noise.
    difference = observed - expected
    if abs(difference) <= NORMALIZATION_TOLERANCE:
        return 0.0
    if standard_error == 0.0:
        return math.copysign(math.inf, difference)
    return difference / standard_error


def compare_with_closed_form(groups: GroupStructure, estimate: MomentEstimate) -> OracleComparison:
    stats = credit_moments(groups)
    return OracleComparison(
        estimate=estimate,
        closed_mean=stats.mean,
        closed_stddev=stats.stddev,
        delta_se=tuple(
            _delta_in_se(observed, expected, se)
            for observed, expected, se in zip(estimate.mean, stats.mean, estimate.standard_error_of_mean)
        ),
    )


def polytope_volume_closed_form(groups: GroupStructure) -> float:
    """M_m = 1 / ((m-1)! * C_2 * C_3 * ... * C_m); 1 for a single group."""
    prefix = groups.prefix_sums
    return 1.0 / (math.factorial(groups.m - 1) * math.prod(prefix[1:]))


def _chunk_acceptance(groups: GroupStructure) -> Callable[[np.random.Generator, int], int]:
    counts = np.asarray(groups.counts, dtype=float)
    upper = 1.0 / np.asarray(groups.prefix_sums[1:], dtype=float)

    def task(rng: np.random.Generator, size: int) -> int:
        tail = rng.uniform(0.0, upper, size=(size, groups.m - 1))
        ordered = np.all(np.diff(tail, axis=1) <= 0.0, axis=1)
        head = (1.0 - tail @ counts[1:]) / counts[0]
        return int(np.count_nonzero(ordered & (head >= tail[:, 0])))

    return task


def estimate_volume(
    groups: GroupStructure,
    num_samples: int,
    seed: int = 42,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    workers: int = 1,
) -> VolumeEstimate:
    """
    Rejection estimate of the polytope volume over the coordinates x_2..x_m.

    Points are drawn in the box prod_{i>=2} [0, 1/C_i] and accepted when they
    are ordered and the implied x_1 is at least x_2. The acceptance rate is
    about 1/(m-1)!, so keep m small.
    """
    if groups.m < 2:
        raise GroupStructureError("Volume estimation needs at least two groups")
    SampleConfig(groups=groups, num_samples=num_samples, seed=seed)

    accepted = sum(_run_chunks(seed, num_samples, chunk_size, workers, _chunk_acceptance(groups)))
    box = math.prod(1.0 / total for total in groups.prefix_sums[1:])
    rate = accepted / num_samples

    result = VolumeEstimate(
        estimate=rate * box,
        standard_error=box * math.sqrt(rate * (1.0 - rate) / num_samples),
        accepted=accepted,
        num_samples=num_samples,
        closed_form=polytope_volume_closed_form(groups),
    )
    logger.info(
        "Volume of %s: %.6g +/- %.2g (closed form %.6g, %d/%d accepted)",
        groups, result.estimate, result.standard_error, result.closed_form, accepted, num_samples,
    )
    return result


def draw_credit_vectors(
    config: SampleConfig,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    workers: int = 1,
) -> List[CreditVector]:
    """The raw draws behind ``estimate_moments`` for the same config and chunking."""

    def task(rng: np.random.Generator, size: int) -> np.ndarray:
        samples = sample_credit_vectors(config.groups, size, rng)
        check_axioms(config.groups, samples)
        return samples

    chunks = _run_chunks(config.seed, config.num_samples, chunk_size, workers, task)
    return [CreditVector.per_group(row.tolist(), config.groups) for chunk in chunks for row in chunk]
