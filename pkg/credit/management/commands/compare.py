"""
Fractional, harmonic and axiomatic shares side by side, as tidy rows for plotting.

Usage:
    python manage.py compare --n 5 --format csv
"""

from services.credit import comparison_rows
from utils import format_share

from ._base import CreditCommand, positive_int


class Command(CreditCommand):
    help = 'Emit (scheme, position, share) rows comparing the counting schemes'

    def add_command_arguments(self, parser):
        parser.add_argument(
            '--n',
            type=positive_int,
            default=5,
            help='Number of co-authors with unequal contributions (default 5)'
        )

    def run(self, **options):
        rows = comparison_rows(options['n'])

        if options['output_format'] == 'json':
            self.write_json(rows)
            return

        if options['output_format'] == 'csv':
            self.write_csv(
                ['scheme', 'position', 'share'],
                [[row['scheme'], row['position'], repr(row['share'])] for row in rows],
            )
            return

        self.stdout.write('scheme position share')
        self.write_lines(
            f"{row['scheme']} {row['position']} {format_share(row['share'], options['precision'])}"
            for row in rows
        )
