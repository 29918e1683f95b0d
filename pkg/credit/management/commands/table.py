"""
Rounded a-index table for unequal-contribution co-authors.

Usage:
    python manage.py table --max-n 10 --precision 4
    python manage.py table --max-n 6 --stddev --format csv
"""

from services.credit import render_table1, table1_stddev, unequal_a_index, unequal_stddev

from ._base import CreditCommand, positive_int


class Command(CreditCommand):
    help = 'Print the rounded a-index table (first share absorbs the rounding residual)'

    def add_command_arguments(self, parser):
        parser.add_argument(
            '--max-n',
            type=positive_int,
            default=10,
            help='Largest number of co-authors (default 10)'
        )
        parser.add_argument(
            '--stddev',
            action='store_true',
            help='Print standard deviations instead of shares (no residual adjustment)'
        )

    def run(self, **options):
        max_n = options['max_n']
        precision = options['precision']

        if options['stddev']:
            rows = table1_stddev(max_n, precision)
            raw = [list(unequal_stddev(n)) for n in range(1, max_n + 1)]
        else:
            rows = render_table1(max_n, precision)
            raw = [list(unequal_a_index(n).shares) for n in range(1, max_n + 1)]

        if options['output_format'] == 'json':
            self.write_json({
                'max_n': max_n,
                'precision': precision,
                'quantity': 'stddev' if options['stddev'] else 'share',
                'rows': [[float(value) for value in row] for row in rows],
                'raw': raw,
            })
            return

        if options['output_format'] == 'csv':
            self.write_csv(
                ['n', 'position', 'value', 'raw'],
                [
                    [n, position, str(value), repr(raw[n - 1][position - 1])]
                    for n, row in enumerate(rows, start=1)
                    for position, value in enumerate(row, start=1)
                ],
            )
            return

        width = len(str(max_n))
        self.write_lines(
            f"{n:>{width}}  " + " ".join(str(value) for value in row)
            for n, row in enumerate(rows, start=1)
        )
