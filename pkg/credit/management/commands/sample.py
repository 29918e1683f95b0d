"""
Monte-Carlo check of the closed-form group means and standard deviations.

Usage:
    python manage.py sample --code "1,2,3" --samples 200000 --seed 7
    python manage.py sample --code "1,2" --samples 5 --show-vector
"""

from django.conf import settings

from pytypes.oracle import GroupMomentRow, SampleConfig
from services.credit import group_structure
from services.oracle import compare_with_closed_form, draw_credit_vectors, estimate_moments
from utils import finite_or_none, format_share, format_shares

from ._base import CreditCommand, positive_int

MAX_ECHOED_VECTORS = 10


class Command(CreditCommand):
    help = 'Sample credit vectors uniformly and compare their moments with the closed forms'

    def add_command_arguments(self, parser):
        parser.add_argument('--code', type=str, required=True, help='Ranking code, e.g. "1,2,3"')
        parser.add_argument(
            '--samples',
            type=positive_int,
            default=settings.AINDEX_DEFAULT_SAMPLES,
            help='Number of sampled vectors'
        )
        parser.add_argument(
            '--workers',
            type=positive_int,
            default=settings.AINDEX_WORKERS,
            help='Worker threads; results do not depend on it'
        )
        parser.add_argument(
            '--chunk-size',
            type=positive_int,
            default=settings.AINDEX_CHUNK_SIZE,
            help='Draws per random stream'
        )
        parser.add_argument(
            '--show-vector',
            action='store_true',
            help=f'Echo the sampled group vectors (at most {MAX_ECHOED_VECTORS} samples)'
        )

    def run(self, **options):
        groups = group_structure(self.parse_code(options['code']))
        config = SampleConfig(groups=groups, num_samples=options['samples'], seed=options['seed'])
        estimate = estimate_moments(config, chunk_size=options['chunk_size'], workers=options['workers'])
        comparison = compare_with_closed_form(groups, estimate)

        rows = [
            GroupMomentRow(
                group=index + 1,
                size=groups.counts[index],
                mean=estimate.mean[index],
                closed_mean=comparison.closed_mean[index],
                delta_se=comparison.delta_se[index],
                stddev=estimate.stddev[index],
                closed_stddev=comparison.closed_stddev[index],
                standard_error=estimate.standard_error_of_mean[index],
            )
            for index in range(groups.m)
        ]

        vectors = []
        if config.num_samples == 1 or (options['show_vector'] and config.num_samples <= MAX_ECHOED_VECTORS):
            vectors = [
                list(vector.shares)
                for vector in draw_credit_vectors(config, chunk_size=options['chunk_size'], workers=options['workers'])
            ]

        if options['output_format'] == 'json':
            self.write_json({
                'code': options['code'].strip(),
                'groups': list(groups.counts),
                'samples': config.num_samples,
                'seed': config.seed,
                'rows': [
                    {key: finite_or_none(value) if isinstance(value, float) else value for key, value in row.items()}
                    for row in rows
                ],
                'max_abs_delta_se': finite_or_none(comparison.max_abs_delta_se),
                'vectors': vectors,
            })
            return

        if options['output_format'] == 'csv':
            self.write_csv(
                list(GroupMomentRow.__annotations__),
                [[repr(value) if isinstance(value, float) else value for value in row.values()] for row in rows],
            )
            return

        precision = options['precision']
        self.stdout.write(
            f"groups {groups} samples {config.num_samples} seed {config.seed}"
        )
        self.stdout.write(' '.join(GroupMomentRow.__annotations__))
        for row in rows:
            self.stdout.write(' '.join(
                format_share(value, precision) if isinstance(value, float) else str(value)
                for value in row.values()
            ))
        self.stdout.write(f"max_abs_delta_se {format_share(comparison.max_abs_delta_se, precision)}")
        for vector in vectors:
            self.stdout.write('vector ' + format_shares(vector, precision))
