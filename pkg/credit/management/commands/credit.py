"""
Per-author a-index shares for a ranking code.

Usage:
    python manage.py credit --code "1, 2, 3, 3, 2"
    python manage.py credit --code "1,1,2" --stddev --format json
    printf '1,2\n1,1,2\n' | python manage.py credit      # one code per line
"""

import sys

from services.credit import credit_payload
from services.exceptions import CreditError
from utils import format_share, format_shares

from ._base import CreditCommand


class Command(CreditCommand):
    help = 'Axiomatic credit share of every author of one publication'

    def add_command_arguments(self, parser):
        parser.add_argument(
            '--code',
            type=str,
            help='Ranking code, e.g. "1, 2, 3, 3, 2"; read from stdin (one per line) when omitted'
        )
        parser.add_argument(
            '--stddev',
            action='store_true',
            help='Also report the standard deviation of every group share'
        )

    def _codes(self, options):
        if options.get('code') is not None:
            return [self.parse_code(options['code'])]

        stdin = options.get('stdin') or sys.stdin
        codes = []
        for line_number, line in enumerate(stdin, start=1):
            if not line.strip():
                continue
            try:
                codes.append(self.parse_code(line))
            except CreditError as e:
                raise CreditError(f'line {line_number}: {e}') from e
        if not codes:
            raise CreditError('No ranking code given (use --code or pipe codes on stdin)')
        return codes

    def run(self, **options):
        codes = self._codes(options)
        with_stddev = options['stddev']
        precision = options['precision']
        payloads = [credit_payload(code, with_stddev) for code in codes]

        if options['output_format'] == 'json':
            self.write_json(payloads[0] if options.get('code') is not None else payloads)
            return

        if options['output_format'] == 'csv':
            header = ['code', 'position', 'rank', 'share'] + (['stddev'] if with_stddev else [])
            rows = []
            for payload in payloads:
                code_text = ','.join(str(rank) for rank in payload['code'])
                for position, (rank, share) in enumerate(zip(payload['code'], payload['shares']), start=1):
                    row = [code_text, position, rank, repr(share)]
                    if with_stddev:
                        row.append(repr(payload['stddev'][rank - 1]))
                    rows.append(row)
            self.write_csv(header, rows)
            return

        for payload in payloads:
            self.stdout.write(format_shares(payload['shares'], precision))
            if with_stddev:
                self.stdout.write('stddev ' + ' '.join(
                    format_share(value, precision) for value in payload['stddev']
                ))
