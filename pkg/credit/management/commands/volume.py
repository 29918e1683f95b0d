"""
Rejection estimate of the credit polytope volume against its closed form.

Usage:
    python manage.py volume --code "1,2,3" --samples 100000
"""

from django.conf import settings

from services.credit import group_structure
from services.oracle import estimate_volume
from utils import finite_or_none

from ._base import CreditCommand, positive_int


class Command(CreditCommand):
    help = 'Estimate the volume of the credit polytope by rejection sampling'

    def add_command_arguments(self, parser):
        parser.add_argument('--code', type=str, required=True, help='Ranking code with at least two distinct ranks')
        parser.add_argument(
            '--samples',
            type=positive_int,
            default=settings.AINDEX_DEFAULT_SAMPLES,
            help='Number of box draws'
        )
        parser.add_argument(
            '--workers',
            type=positive_int,
            default=settings.AINDEX_WORKERS,
            help='Worker threads; results do not depend on it'
        )

    def run(self, **options):
        groups = group_structure(self.parse_code(options['code']))
        result = estimate_volume(
            groups,
            num_samples=options['samples'],
            seed=options['seed'],
            chunk_size=settings.AINDEX_CHUNK_SIZE,
            workers=options['workers'],
        )
        values = {
            'estimate': result.estimate,
            'standard_error': result.standard_error,
            'closed_form': result.closed_form,
            'delta_se': result.delta_se,
        }

        if options['output_format'] == 'json':
            self.write_json({
                'groups': list(groups.counts),
                'samples': result.num_samples,
                'accepted': result.accepted,
                'seed': options['seed'],
                **{key: finite_or_none(value) for key, value in values.items()},
            })
            return

        if options['output_format'] == 'csv':
            self.write_csv(list(values), [[repr(value) for value in values.values()]])
            return

        precision = options['precision']
        self.write_lines(f"{key} {value:.{precision}f}" for key, value in values.items())
