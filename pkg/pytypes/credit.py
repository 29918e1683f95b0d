import math
from dataclasses import dataclass
from itertools import accumulate
from typing import Literal, Optional, TypedDict

from services.exceptions import GroupStructureError, RankingCodeError

NORMALIZATION_TOLERANCE = 1e-12

Granularity = Literal['group', 'author']


@dataclass(frozen=True)
class RankingCode:
    """Rank label per author, in author-list order. Rank 1 gets the most credit."""

    ranks: tuple[int, ...]

    def __post_init__(self):
        if not self.ranks:
            raise RankingCodeError("Ranking code is empty")

        for rank in self.ranks:
            if isinstance(rank, bool) or not isinstance(rank, int):
                raise RankingCodeError(f"Rank {rank!r} is not an integer")
            if rank <= 0:
                raise RankingCodeError(f"Rank {rank} must be a positive integer")

        distinct = set(self.ranks)
        missing = sorted(set(range(1, max(distinct) + 1)) - distinct)
        if missing:
            labels = ", ".join(str(rank) for rank in missing)
            raise RankingCodeError(f"Ranking code skips rank {labels}; ranks must run 1..m without gaps")

    def __len__(self) -> int:
        return len(self.ranks)

    def __iter__(self):
        return iter(self.ranks)

    @property
    def m(self) -> int:
        return max(self.ranks)

    def __str__(self) -> str:
        return ", ".join(str(rank) for rank in self.ranks)


@dataclass(frozen=True)
class GroupStructure:
    """Number of co-authors per credit tier, tier 1 first."""

    counts: tuple[int, ...]

    def __post_init__(self):
        if not self.counts:
            raise GroupStructureError("Group structure needs at least one group")
        for count in self.counts:
            if isinstance(count, bool) or not isinstance(count, int) or count < 1:
                raise GroupStructureError(f"Group size {count!r} must be a positive integer")

    @property
    def m(self) -> int:
        return len(self.counts)

    @property
    def n(self) -> int:
        return sum(self.counts)

    @property
    def prefix_sums(self) -> tuple[int, ...]:
        """C_j = c_1 + ... + c_j."""
        return tuple(accumulate(self.counts))

    def __str__(self) -> str:
        return "(" + ", ".join(str(count) for count in self.counts) + ")"


@dataclass(frozen=True)
class CreditVector:
    """
    Credit shares of one publication.

    ``multiplicity`` holds how many authors each share stands for (group sizes
    for a per-group vector, all ones per author) and ``ranks`` the rank each
    entry belongs to. Both axioms are checked on construction.
    """

    shares: tuple[float, ...]
    granularity: Granularity
    multiplicity: tuple[int, ...]
    ranks: tuple[int, ...]

    def __post_init__(self):
        if not self.shares:
            raise GroupStructureError("Credit vector is empty")
        if not (len(self.shares) == len(self.multiplicity) == len(self.ranks)):
            raise GroupStructureError("Credit vector fields differ in length")

        if any(share < 0.0 for share in self.shares):
            raise GroupStructureError(f"Negative share in {self.shares}")

        if abs(self.total - 1.0) > NORMALIZATION_TOLERANCE:
            raise GroupStructureError(f"Shares sum to {self.total!r}, expected 1")

        by_rank = [share for _, share in sorted(zip(self.ranks, self.shares), key=lambda pair: pair[0])]
        if any(later > earlier for earlier, later in zip(by_rank, by_rank[1:])):
            raise GroupStructureError(f"Shares {self.shares} increase with rank")

    @classmethod
    def per_group(cls, shares, groups: GroupStructure) -> 'CreditVector':
        return cls(
            shares=tuple(float(share) for share in shares),
            granularity='group',
            multiplicity=groups.counts,
            ranks=tuple(range(1, groups.m + 1)),
        )

    @classmethod
    def per_author(cls, shares, ranks: Optional[tuple[int, ...]] = None) -> 'CreditVector':
        shares = tuple(float(share) for share in shares)
        return cls(
            shares=shares,
            granularity='author',
            multiplicity=(1,) * len(shares),
            ranks=ranks if ranks is not None else tuple(range(1, len(shares) + 1)),
        )

    @property
    def total(self) -> float:
        return math.fsum(count * share for count, share in zip(self.multiplicity, self.shares))

    def __len__(self) -> int:
        return len(self.shares)

    def __iter__(self):
        return iter(self.shares)

    def __getitem__(self, index):
        return self.shares[index]


@dataclass(frozen=True)
class CreditStats:
    """Per-group mean (R), second moment (S) and standard deviation."""

    mean: tuple[float, ...]
    second_moment: tuple[float, ...]
    stddev: tuple[float, ...]


class CreditPayload(TypedDict, total=False):
    code: list[int]
    groups: list[int]
    shares: list[float]
    group_shares: list[float]
    second_moment: list[float]
    stddev: list[float]


class SchemeRow(TypedDict):
    scheme: str
    position: int
    share: float
