from dataclasses import dataclass
from typing import Literal, TypedDict

from pytypes.credit import RankingCode

InputFormat = Literal['csv', 'json']
OutputFormat = Literal['csv', 'json', 'plain']

REPORT_COLUMNS = (
    'author',
    'inflated',
    'fractional',
    'fractional_weighted',
    'harmonic',
    'harmonic_weighted',
    'axiomatic',
    'axiomatic_weighted',
)


@dataclass(frozen=True)
class PublicationRecord:
    """
    One publication as ingested.

    ``weight`` is the publication's absolute value (citation count, impact
    factor, ...); shares are multiplied by it for the weighted totals.
    """

    pub_id: str
    authors: tuple[str, ...]
    ranking_code: RankingCode
    weight: float = 1.0


@dataclass(frozen=True)
class AuthorReport:
    author: str
    inflated: float
    fractional: float
    fractional_weighted: float
    harmonic: float
    harmonic_weighted: float
    axiomatic: float
    axiomatic_weighted: float


class AuthorReportRow(TypedDict):
    author: str
    inflated: float
    fractional: float
    fractional_weighted: float
    harmonic: float
    harmonic_weighted: float
    axiomatic: float
    axiomatic_weighted: float
