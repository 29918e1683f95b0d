"""
Shared plumbing for the credit management commands.

Every command accepts the global flags ``--format``, ``--seed`` and
``--precision``; input problems exit with code 2, anything unexpected with 1.
"""

import argparse
import csv
import json
import logging
from typing import Any, Iterable, Sequence

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from pytypes.credit import RankingCode
from pytypes.oracle import MAX_SEED
from services.credit import parse_ranking_code
from services.exceptions import CreditError
from utils import OUTPUT_FORMATS

logger = logging.getLogger(__name__)

MAX_PRECISION = 15


def seed_type(value: str) -> int:
    try:
        seed = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {value!r}") from None
    if not 0 <= seed <= MAX_SEED:
        raise argparse.ArgumentTypeError("seed must lie in [0, 2**64 - 1]")
    return seed


def precision_type(value: str) -> int:
    try:
        precision = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"precision must be an integer, got {value!r}") from None
    if not 1 <= precision <= MAX_PRECISION:
        raise argparse.ArgumentTypeError(f"precision must lie in [1, {MAX_PRECISION}]")
    return precision


def positive_int(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value!r}") from None
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {number}")
    return number


class CreditCommand(BaseCommand):
    requires_system_checks = []
    stealth_options = ('stdin',)

    def add_arguments(self, parser):
        parser.add_argument(
            '--format',
            dest='output_format',
            choices=OUTPUT_FORMATS,
            default='plain',
            help='Output format: plain (fixed-point), csv or json (full precision)'
        )
        parser.add_argument(
            '--seed',
            type=seed_type,
            default=settings.AINDEX_DEFAULT_SEED,
            help='Seed of the Monte-Carlo streams (unsigned 64-bit)'
        )
        parser.add_argument(
            '--precision',
            type=precision_type,
            default=settings.AINDEX_DEFAULT_PRECISION,
            help='Decimal places in plain output'
        )
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def handle(self, *args, **options):
        try:
            self.run(**options)
        except CommandError:
            raise
        except CreditError as e:
            raise CommandError(str(e), returncode=2) from e
        except Exception as e:
            logger.exception(f'Error in {self.__module__.rsplit(".", 1)[-1]}: {str(e)}')
            raise CommandError(f'Internal error: {str(e)}', returncode=1) from e

    def run(self, **options):
        raise NotImplementedError

    def parse_code(self, text: str) -> RankingCode:
        code = parse_ranking_code(text)
        if len(code) > settings.AINDEX_MAX_AUTHORS:
            raise CreditError(
                f"Ranking code has {len(code)} authors; the limit is {settings.AINDEX_MAX_AUTHORS}"
            )
        return code

    def write_json(self, payload: Any):
        self.stdout.write(json.dumps(payload, indent=2, allow_nan=False))

    def write_csv(self, header: Sequence[str], rows: Iterable[Sequence[Any]]):
        writer = csv.writer(self.stdout, lineterminator='\n')
        writer.writerow(header)
        writer.writerows(rows)

    def write_lines(self, lines: Iterable[str]):
        for line in lines:
            self.stdout.write(line)
