import math
from dataclasses import dataclass
from typing import TypedDict

from pytypes.credit import GroupStructure
from services.exceptions import CreditError

MAX_SEED = 2 ** 64 - 1


def validate_seed(seed: int) -> int:
    if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed <= MAX_SEED:
        raise CreditError(f"Seed must be an integer in [0, 2**64 - 1], got {seed!r}")
    return seed


@dataclass(frozen=True)
class SampleConfig:
    groups: GroupStructure
    num_samples: int
    seed: int = 42

    def __post_init__(self):
        if isinstance(self.num_samples, bool) or not isinstance(self.num_samples, int) or self.num_samples < 1:
            raise CreditError(f"Number of samples must be a positive integer, got {self.num_samples!r}")
        validate_seed(self.seed)


@dataclass(frozen=True)
class MomentEstimate:
    """Empirical per-group moments; standard_error_of_mean = stddev / sqrt(num_samples)."""

    mean: tuple[float, ...]
    stddev: tuple[float, ...]
    standard_error_of_mean: tuple[float, ...]
    num_samples: int


@dataclass(frozen=True)
class OracleComparison:
    """A MomentEstimate lined up against the closed forms, deviations in SE units."""

    estimate: MomentEstimate
    closed_mean: tuple[float, ...]
    closed_stddev: tuple[float, ...]
    delta_se: tuple[float, ...]

    @property
    def max_abs_delta_se(self) -> float:
        return max(abs(delta) for delta in self.delta_se)


@dataclass(frozen=True)
class VolumeEstimate:
    estimate: float
    standard_error: float
    accepted: int
    num_samples: int
    closed_form: float

    @property
    def delta_se(self) -> float:
        difference = self.estimate - self.closed_form
        if self.standard_error == 0.0:
            return 0.0 if abs(difference) <= 1e-12 else math.copysign(math.inf, difference)
        return difference / self.standard_error


class GroupMomentRow(TypedDict):
    group: int
    size: int
    mean: float
    closed_mean: float
    delta_se: float
    stddev: float
    closed_stddev: float
    standard_error: float
