"""
Per-author credit totals for a batch of publications.

Usage:
    python manage.py aggregate --input publications.csv
    python manage.py aggregate --input pubs.json --format json --output report.json
    cat pubs.csv | python manage.py aggregate --input - --input-format csv
"""

import logging
import sys

from credit.management.commands._base import CreditCommand
from services.aggregator import author_credit_report, conservation_check, infer_format, load_publications, write_report
from services.exceptions import CreditError

logger = logging.getLogger(__name__)


class Command(CreditCommand):
    help = 'Aggregate inflated, fractional, harmonic and axiomatic credit per author'

    def add_command_arguments(self, parser):
        parser.add_argument('--input', type=str, required=True, help="Publication file, or '-' for stdin")
        parser.add_argument(
            '--input-format',
            choices=('csv', 'json'),
            help='Input format; inferred from the file extension when omitted (csv otherwise)'
        )
        parser.add_argument('--output', type=str, help='Report destination; stdout when omitted')

    def _load(self, path: str, input_format: str, stdin):
        if path == '-':
            return load_publications(stdin, input_format)
        try:
            with open(path, 'rb') as handle:
                return load_publications(handle, input_format)
        except OSError as e:
            raise CreditError(f"Cannot read {path}: {e.strerror or e}") from e

    def run(self, **options):
        path = options['input']
        input_format = options['input_format'] or infer_format(None if path == '-' else path)
        records = self._load(path, input_format, options.get('stdin') or sys.stdin)
        report = author_credit_report(records)
        logger.debug("Conservation: %s", conservation_check(records, report))
        write_report(report, options['output_format'], options['output'] or self.stdout)
