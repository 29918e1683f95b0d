"""
Registry of per-author counting schemes.

A scheme maps a publication's ranking code to one credit value per author, in
author-list order. The aggregator walks the registry, so adding a scheme here
is enough for it to show up in reports.
"""

import logging
from typing import Callable, Dict, Tuple

from pytypes.credit import RankingCode
from services.credit import axiomatic_credit_per_author, fractional_credit, harmonic_credit

logger = logging.getLogger(__name__)

SchemeFn = Callable[[RankingCode], Tuple[float, ...]]

scheme_registry: Dict[str, SchemeFn] = {}


def scheme(name: str) -> Callable[[SchemeFn], SchemeFn]:
    """Decorator registering a counting scheme under ``name``."""

    def register(func: SchemeFn) -> SchemeFn:
        if name in scheme_registry:
            raise ValueError(f"Scheme {name!r} is already registered")
        scheme_registry[name] = func
        logger.debug("Registered counting scheme %s -> %s", name, func.__name__)
        return func

    return register


@scheme('inflated')
def inflated_shares(code: RankingCode) -> Tuple[float, ...]:
    """Every co-author receives the full credit of the publication."""
    return (1.0,) * len(code)


@scheme('fractional')
def fractional_shares(code: RankingCode) -> Tuple[float, ...]:
    return fractional_credit(len(code)).shares


@scheme('harmonic')
def harmonic_shares(code: RankingCode) -> Tuple[float, ...]:
    # Baseline only: the k-th listed author gets alpha/k whatever the ranks say.
    return harmonic_credit(len(code)).shares


@scheme('axiomatic')
def axiomatic_shares(code: RankingCode) -> Tuple[float, ...]:
    return axiomatic_credit_per_author(code).shares


def shares_for(name: str, code: RankingCode) -> Tuple[float, ...]:
    try:
        func = scheme_registry[name]
    except KeyError:
        raise ValueError(f"Unknown counting scheme {name!r}; known: {', '.join(scheme_registry)}") from None
    return func(code)
