"""
Closed-form credit allocation.

Shares of a publication's credit under the axiomatic model (the a-index), its
second moments and standard deviations, plus the fractional and harmonic
baselines and the rounded reproduction of the unequal-contribution table.

With m groups of sizes c_1..c_m and prefix sums C_j = c_1 + ... + c_j:

    E(x_k)   = (1/m) * sum_{j>=k} 1/C_j
    E(x_k^2) = 2/(m(m+1)) * sum_{k<=i<=j<=m} 1/(C_i C_j)

Everything here is a pure function of its arguments.
"""

import logging
import math
import re
from decimal import ROUND_HALF_UP, Decimal
from itertools import accumulate
from typing import Dict, List, Sequence, Tuple

from pytypes.credit import CreditPayload, CreditStats, CreditVector, GroupStructure, RankingCode, SchemeRow
from services.exceptions import GroupStructureError, NumericalFault, RankingCodeError

logger = logging.getLogger(__name__)

# S - R^2 may come out marginally negative from rounding; anything below this is a bug.
RADICAND_TOLERANCE = 1e-12

_TOKEN_SEPARATOR = re.compile(r"\s*,\s*|\s+")
_INTEGER_TOKEN = re.compile(r"[+-]?[0-9]+")


def parse_ranking_code(text: str) -> RankingCode:
    """
    Parse a ranking code such as ``"1, 2, 3, 3, 2"``.

    Tokens are decimal integers separated by commas and/or whitespace. Ranks
    may appear in any author order but must cover 1..m without gaps.
    """
    if text is None or not text.strip():
        raise RankingCodeError("Ranking code is empty")

    ranks = []
    for position, token in enumerate(_TOKEN_SEPARATOR.split(text.strip()), start=1):
        if token == "":
            raise RankingCodeError(f"Empty rank at position {position} in {text!r}")
        if not _INTEGER_TOKEN.fullmatch(token):
            raise RankingCodeError(f"Rank {token!r} at position {position} is not an integer")
        ranks.append(int(token))

    return RankingCode(tuple(ranks))


def group_structure(code: RankingCode) -> GroupStructure:
    counts = [0] * code.m
    for rank in code:
        counts[rank - 1] += 1
    return GroupStructure(tuple(counts))


def _suffix_sums(values: Sequence[float]) -> List[float]:
    """t_k = values[k] + ... + values[-1], summed from the tail."""
    return list(accumulate(reversed(values)))[::-1]


def _reciprocal_prefix_sums(groups: GroupStructure) -> List[float]:
    return [1.0 / total for total in groups.prefix_sums]


def axiomatic_credit(groups: GroupStructure) -> CreditVector:
    """Per-group a-index: share_k = (1/m) * sum_{j=k}^{m} 1/C_j."""
    m = groups.m
    tails = _suffix_sums(_reciprocal_prefix_sums(groups))
    return CreditVector.per_group([tail / m for tail in tails], groups)


def axiomatic_credit_per_author(code: RankingCode) -> CreditVector:
    """Scatter the group shares back onto author positions."""
    group_shares = axiomatic_credit(group_structure(code)).shares
    return CreditVector.per_author([group_shares[rank - 1] for rank in code], ranks=code.ranks)


def second_moment(groups: GroupStructure) -> Tuple[float, ...]:
    """
    E(x_k^2) for every group.

    The pair sum over k <= i <= j <= m includes the diagonal, so with
    T_k = sum_{j>=k} 1/C_j and Q_k = sum_{j>=k} 1/C_j^2 it collapses to
    (T_k^2 + Q_k) / 2.
    """
    m = groups.m
    reciprocals = _reciprocal_prefix_sums(groups)
    tails = _suffix_sums(reciprocals)
    square_tails = _suffix_sums([value * value for value in reciprocals])
    return tuple((tail * tail + square) / (m * (m + 1)) for tail, square in zip(tails, square_tails))


def credit_moments(groups: GroupStructure) -> CreditStats:
    mean = axiomatic_credit(groups).shares
    moments = second_moment(groups)

    if groups.m == 1:
        # The domain is a single point.
        return CreditStats(mean=mean, second_moment=moments, stddev=(0.0,))

    stddev = []
    for k, (r, s) in enumerate(zip(mean, moments), start=1):
        radicand = s - r * r
        if radicand < -RADICAND_TOLERANCE:
            raise NumericalFault(f"Negative variance {radicand!r} for group {k} of {groups}")
        stddev.append(math.sqrt(max(radicand, 0.0)))

    return CreditStats(mean=mean, second_moment=moments, stddev=tuple(stddev))


def credit_stddev(groups: GroupStructure) -> CreditStats:
    """sigma(x_k) = sqrt(S_k - R_k^2), returned with the moments it came from."""
    return credit_moments(groups)


def credit_payload(code: RankingCode, with_stddev: bool = False) -> CreditPayload:
    """Shares of one ranking code as plain lists, shared by the CLI and the API."""
    groups = group_structure(code)
    payload = CreditPayload(
        code=list(code.ranks),
        groups=list(groups.counts),
        shares=list(axiomatic_credit_per_author(code).shares),
        group_shares=list(axiomatic_credit(groups).shares),
    )
    if with_stddev:
        stats = credit_moments(groups)
        payload["second_moment"] = list(stats.second_moment)
        payload["stddev"] = list(stats.stddev)
    return payload


def credit_stddev_radical(groups: GroupStructure) -> Tuple[float, ...]:
    """
    sigma(x_k) from the closed-form radical

        (1/m) * sqrt((m-1)/(m+1) * sum_{j>=k} 1/C_j^2
                     - 2/(m+1) * sum_{k<=i<j<=m} 1/(C_i C_j))

    Evaluated with an explicit pair loop, independent of ``second_moment``.
    """
    return _radical_stddev(_reciprocal_prefix_sums(groups), str(groups))


def _radical_stddev(reciprocals: Sequence[float], label: str) -> Tuple[float, ...]:
    m = len(reciprocals)
    if m == 1:
        return (0.0,)

    stddev = []
    for k in range(m):
        tail = reciprocals[k:]
        diagonal = math.fsum(value * value for value in tail)
        pairs = math.fsum(
            tail[i] * tail[j]
            for i in range(len(tail))
            for j in range(i + 1, len(tail))
        )
        radicand = (m - 1) / (m + 1) * diagonal - 2.0 / (m + 1) * pairs
        if radicand < -RADICAND_TOLERANCE:
            raise NumericalFault(f"Negative radicand {radicand!r} for group {k + 1} of {label}")
        stddev.append(math.sqrt(max(radicand, 0.0)) / m)
    return tuple(stddev)


def _require_authors(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise GroupStructureError(f"Number of co-authors must be a positive integer, got {n!r}")


def unequal_a_index(n: int) -> CreditVector:
    """a-index when no two co-authors share a rank: share_k = (1/n) * sum_{j=k}^{n} 1/j."""
    _require_authors(n)
    tails = _suffix_sums([1.0 / j for j in range(1, n + 1)])
    return CreditVector.per_author([tail / n for tail in tails])


def unequal_stddev(n: int) -> Tuple[float, ...]:
    """sigma(x_k) for n unequal co-authors: the radical with C_j = j, no moments involved."""
    _require_authors(n)
    return _radical_stddev([1.0 / j for j in range(1, n + 1)], f"n={n}")


def harmonic_credit(n: int) -> CreditVector:
    """share_k = alpha / k with alpha = 1 / sum_{j=1}^{n} 1/j."""
    _require_authors(n)
    alpha = 1.0 / math.fsum(1.0 / j for j in range(1, n + 1))
    return CreditVector.per_author([alpha / k for k in range(1, n + 1)])


def fractional_credit(n: int) -> CreditVector:
    _require_authors(n)
    return CreditVector.per_author([1.0 / n] * n)


def _round_half_up(value: float, decimals: int) -> Decimal:
    return Decimal(repr(value)).quantize(Decimal(1).scaleb(-decimals), rounding=ROUND_HALF_UP)


def render_table1(max_n: int, decimals: int = 4) -> List[List[Decimal]]:
    """
    Rounded a-index rows for n = 1..max_n.

    Each share is rounded half-up to ``decimals`` places and the row's rounding
    residual 1 - sum(rounded) is added to the first entry, so every printed
    row sums to exactly 1.
    """
    _require_authors(max_n)
    if isinstance(decimals, bool) or not isinstance(decimals, int) or decimals < 1:
        raise GroupStructureError(f"Precision must be a positive integer, got {decimals!r}")

    rows = []
    for n in range(1, max_n + 1):
        row = [_round_half_up(share, decimals) for share in unequal_a_index(n)]
        residual = Decimal(1) - sum(row)
        if residual:
            logger.debug("Row n=%d carries rounding residual %s", n, residual)
            row[0] += residual
        rows.append(row)
    return rows


def table1_stddev(max_n: int, decimals: int = 4) -> List[List[Decimal]]:
    """sigma companion of ``render_table1``; plain half-up rounding, no residual rule."""
    _require_authors(max_n)
    return [
        [_round_half_up(value, decimals) for value in unequal_stddev(n)]
        for n in range(1, max_n + 1)
    ]


COMPARED_SCHEMES = ('fractional', 'harmonic', 'axiomatic')


def compare_schemes(n: int) -> Dict[str, CreditVector]:
    """Shares of every scheme in ``COMPARED_SCHEMES`` for n unequal co-authors, aligned by position."""
    from services.schemes import scheme_registry

    _require_authors(n)
    code = RankingCode(tuple(range(1, n + 1)))
    return {name: CreditVector.per_author(scheme_registry[name](code)) for name in COMPARED_SCHEMES}


def comparison_rows(n: int) -> List[SchemeRow]:
    """``compare_schemes`` flattened to (scheme, position, share) rows for plotting."""
    return [
        SchemeRow(scheme=scheme, position=position, share=share)
        for scheme, vector in compare_schemes(n).items()
        for position, share in enumerate(vector, start=1)
    ]
