"""
Credit App Tests

Closed-form shares and moments, the rounded table, the counting-scheme
comparison, the Monte-Carlo oracle, the management commands and the API.
"""

import json
import math
import random
from decimal import Decimal
from io import StringIO
from unittest.mock import patch

import numpy as np
from django.core.management import call_command, execute_from_command_line
from django.core.management.base import CommandError
from django.test import SimpleTestCase
from hypothesis import given
from hypothesis import settings as hypothesis_settings
from hypothesis import strategies as st
from rest_framework import status
from rest_framework.test import APISimpleTestCase

from pytypes.credit import CreditVector, GroupStructure, RankingCode
from pytypes.oracle import SampleConfig
from services.credit import (
    COMPARED_SCHEMES,
    axiomatic_credit,
    axiomatic_credit_per_author,
    compare_schemes,
    comparison_rows,
    credit_moments,
    credit_stddev,
    credit_stddev_radical,
    fractional_credit,
    group_structure,
    harmonic_credit,
    parse_ranking_code,
    render_table1,
    second_moment,
    table1_stddev,
    unequal_a_index,
    unequal_stddev,
)
from services.exceptions import CreditError, GroupStructureError, NumericalFault, RankingCodeError
from services.oracle import (
    check_axioms,
    compare_with_closed_form,
    draw_credit_vectors,
    estimate_moments,
    estimate_volume,
    make_rng,
    polytope_volume_closed_form,
    sample_credit_vector,
    sample_credit_vectors,
)
from services.schemes import scheme_registry, shares_for

# Rows as printed in the published a-index table (first entries residual-adjusted).
PUBLISHED_TABLE = [
    "1.0000",
    "0.7500 0.2500",
    "0.6111 0.2778 0.1111",
    "0.5209 0.2708 0.1458 0.0625",
    "0.4566 0.2567 0.1567 0.0900 0.0400",
    "0.4083 0.2417 0.1583 0.1028 0.0611 0.0278",
    "0.3704 0.2276 0.1561 0.1085 0.0728 0.0442 0.0204",
    "0.3398 0.2147 0.1522 0.1106 0.0793 0.0543 0.0335 0.0156",
    "0.3145 0.2032 0.1477 0.1106 0.0828 0.0606 0.0421 0.0262 0.0123",
    "0.2928 0.1929 0.1429 0.1096 0.0846 0.0646 0.0479 0.0336 0.0211 0.0100",
]

group_counts = st.lists(st.integers(min_value=1, max_value=5), min_size=1, max_size=12)


def random_structures(count, max_groups, max_size, seed):
    generator = random.Random(seed)
    return [
        GroupStructure(tuple(generator.randint(1, max_size) for _ in range(generator.randint(1, max_groups))))
        for _ in range(count)
    ]


class RankingCodeTestCase(SimpleTestCase):
    """Parsing and validation of ranking codes"""

    def test_parse_comma_and_space_separated(self):
        self.assertEqual(parse_ranking_code("1, 2, 3, 3, 2").ranks, (1, 2, 3, 3, 2))
        self.assertEqual(parse_ranking_code("1 2 2").ranks, (1, 2, 2))
        self.assertEqual(parse_ranking_code(" 1,1,2\n").ranks, (1, 1, 2))

    def test_rejects_gaps(self):
        with self.assertRaisesMessage(RankingCodeError, "skips rank 2"):
            parse_ranking_code("1,3")

    def test_rejects_zero_negative_and_junk(self):
        for text in ["0", "1,-1", "1,a", "1,,2", "", "   ", "\u0661, \u0662", "1,\uff12"]:
            with self.subTest(text=text):
                with self.assertRaises(RankingCodeError):
                    parse_ranking_code(text)

    def test_group_structure(self):
        groups = group_structure(parse_ranking_code("1,2,3,3,2"))
        self.assertEqual(groups.counts, (1, 2, 2))
        self.assertEqual(groups.prefix_sums, (1, 3, 5))
        self.assertEqual(groups.n, 5)
        self.assertEqual(str(groups), "(1, 2, 2)")

    def test_ranking_code_is_a_credit_error(self):
        with self.assertRaises(CreditError):
            RankingCode(())


class AxiomaticCreditTestCase(SimpleTestCase):
    """Closed-form a-index shares"""

    def test_worked_example(self):
        shares = axiomatic_credit_per_author(parse_ranking_code("1,2,3,3,2")).shares
        expected = [0.5111, 0.1778, 0.0667, 0.0667, 0.1778]
        for share, value in zip(shares, expected):
            self.assertAlmostEqual(share, value, delta=5e-5)

    def test_exact_fractions(self):
        self.assertEqual(axiomatic_credit(GroupStructure((1,))).shares, (1.0,))
        self.assertEqual(axiomatic_credit(GroupStructure((3,))).shares, (1.0 / 3,))
        half = axiomatic_credit(GroupStructure((1, 1))).shares
        self.assertAlmostEqual(half[0], 0.75, delta=1e-15)
        self.assertAlmostEqual(half[1], 0.25, delta=1e-15)

        shares = axiomatic_credit_per_author(parse_ranking_code("1,1,2")).shares
        self.assertAlmostEqual(shares[0], 5 / 12, delta=1e-15)
        self.assertAlmostEqual(shares[1], 5 / 12, delta=1e-15)
        self.assertAlmostEqual(shares[2], 1 / 6, delta=1e-15)

    def test_normalization_on_random_structures(self):
        for groups in random_structures(1000, max_groups=12, max_size=5, seed=1):
            shares = axiomatic_credit(groups).shares
            total = math.fsum(count * share for count, share in zip(groups.counts, shares))
            self.assertLessEqual(abs(total - 1.0), 1e-12, msg=str(groups))
            self.assertTrue(all(a > b for a, b in zip(shares, shares[1:])), msg=str(groups))

    @hypothesis_settings(deadline=None)
    @given(group_counts)
    def test_normalization_property(self, counts):
        groups = GroupStructure(tuple(counts))
        shares = axiomatic_credit(groups).shares
        total = math.fsum(count * share for count, share in zip(groups.counts, shares))
        self.assertLessEqual(abs(total - 1.0), 1e-12)
        self.assertTrue(all(share > 0.0 for share in shares))

    @hypothesis_settings(deadline=None)
    @given(st.integers(min_value=1, max_value=60))
    def test_equal_ranks_collapse_to_fractional(self, n):
        shares = axiomatic_credit_per_author(RankingCode((1,) * n)).shares
        for share in shares:
            self.assertAlmostEqual(share, 1.0 / n, delta=1e-15)

    def test_unequal_case_matches_group_form(self):
        for n in range(1, 51):
            from_groups = axiomatic_credit(GroupStructure((1,) * n)).shares
            special = unequal_a_index(n).shares
            for a, b in zip(from_groups, special):
                self.assertAlmostEqual(a, b, delta=1e-15)

            direct = [math.fsum(1.0 / j for j in range(k, n + 1)) / n for k in range(1, n + 1)]
            for a, b in zip(special, direct):
                self.assertAlmostEqual(a, b, delta=1e-13)

    def test_credit_vector_rejects_broken_axioms(self):
        with self.assertRaises(GroupStructureError):
            CreditVector.per_author([0.6, 0.6])
        with self.assertRaises(GroupStructureError):
            CreditVector.per_author([0.25, 0.75])
        with self.assertRaises(GroupStructureError):
            CreditVector.per_author([1.5, -0.5])

    def test_baselines(self):
        self.assertEqual(fractional_credit(5).shares, (0.2,) * 5)
        harmonic = harmonic_credit(2).shares
        self.assertAlmostEqual(harmonic[0], 2 / 3, delta=1e-15)
        self.assertAlmostEqual(harmonic[1], 1 / 3, delta=1e-15)
        self.assertEqual(harmonic_credit(1).shares, (1.0,))
        with self.assertRaises(GroupStructureError):
            harmonic_credit(0)
        with self.assertRaises(GroupStructureError):
            unequal_a_index(0)


class MomentsTestCase(SimpleTestCase):
    """Second moments and standard deviations"""

    def test_two_unequal_authors(self):
        stats = credit_stddev(GroupStructure((1, 1)))
        expected = 1 / (4 * math.sqrt(3))
        self.assertAlmostEqual(stats.stddev[0], expected, delta=1e-12)
        self.assertAlmostEqual(stats.stddev[1], expected, delta=1e-12)

    def test_single_group_has_no_spread(self):
        self.assertEqual(credit_stddev(GroupStructure((1,))).stddev, (0.0,))
        self.assertEqual(credit_stddev(GroupStructure((4,))).stddev, (0.0,))
        self.assertEqual(credit_stddev_radical(GroupStructure((4,))), (0.0,))
        self.assertEqual(unequal_stddev(1), (0.0,))

    def test_second_moment_two_groups(self):
        moments = second_moment(GroupStructure((1, 1)))
        # E(x_1^2) = 7/12, E(x_2^2) = 1/12
        self.assertAlmostEqual(moments[0], 7 / 12, delta=1e-15)
        self.assertAlmostEqual(moments[1], 1 / 12, delta=1e-15)

    def test_equal_pair_with_junior(self):
        stddev = credit_stddev(GroupStructure((2, 1))).stddev
        self.assertAlmostEqual(stddev[0], 1 / math.sqrt(432), delta=1e-12)
        self.assertAlmostEqual(stddev[1], 1 / math.sqrt(108), delta=1e-12)

    def test_radical_agrees_on_random_structures(self):
        for groups in random_structures(300, max_groups=12, max_size=5, seed=2):
            from_moments = credit_moments(groups).stddev
            from_radical = credit_stddev_radical(groups)
            for a, b in zip(from_moments, from_radical):
                self.assertAlmostEqual(a, b, delta=1e-12, msg=str(groups))

    @hypothesis_settings(deadline=None)
    @given(group_counts)
    def test_moments_are_consistent(self, counts):
        stats = credit_moments(GroupStructure(tuple(counts)))
        for mean, moment, stddev in zip(stats.mean, stats.second_moment, stats.stddev):
            self.assertGreaterEqual(moment, mean * mean - 1e-12)
            self.assertGreaterEqual(stddev, 0.0)
            self.assertLessEqual(stddev, mean)

    def test_unequal_stddev_matches_group_form(self):
        for n in range(1, 31):
            from_moments = credit_stddev(GroupStructure((1,) * n)).stddev
            for k, (a, b) in enumerate(zip(unequal_stddev(n), from_moments), start=1):
                self.assertAlmostEqual(a, b, delta=1e-12, msg=f"n={n} k={k}")

    def test_three_unequal_authors_last_place(self):
        # E(x_3^2) = 1/54 and E(x_3) = 1/9, so sigma_3 = 1/sqrt(162).
        self.assertAlmostEqual(second_moment(GroupStructure((1, 1, 1)))[2], 1 / 54, delta=1e-15)
        stddev = unequal_stddev(3)
        self.assertAlmostEqual(stddev[2], 0.0786, delta=5e-5)
        self.assertAlmostEqual(stddev[2], 1 / math.sqrt(162), delta=1e-12)


class TableTestCase(SimpleTestCase):
    """Rounded table with the first-share residual rule"""

    def test_reproduces_published_table(self):
        rows = render_table1(10, 4)
        self.assertEqual(len(rows), 10)
        for n, (row, printed) in enumerate(zip(rows, PUBLISHED_TABLE), start=1):
            with self.subTest(n=n):
                self.assertEqual([str(value) for value in row], printed.split())

    def test_rows_sum_to_one(self):
        for row in render_table1(10, 4):
            self.assertEqual(sum(row), Decimal("1.0000"))

    def test_residual_rows(self):
        rows = render_table1(10, 4)
        self.assertEqual(rows[3][0], Decimal("0.5209"))
        self.assertEqual(rows[6][6], Decimal("0.0204"))
        self.assertEqual(rows[1], [Decimal("0.7500"), Decimal("0.2500")])

    def test_stddev_table(self):
        rows = table1_stddev(3, 4)
        self.assertEqual(rows[0], [Decimal("0.0000")])
        self.assertEqual(rows[1], [Decimal("0.1443"), Decimal("0.1443")])

    def test_rejects_bad_arguments(self):
        with self.assertRaises(GroupStructureError):
            render_table1(0)
        with self.assertRaises(GroupStructureError):
            render_table1(3, 0)


class SchemeComparisonTestCase(SimpleTestCase):
    """Fractional, harmonic and axiomatic schemes side by side"""

    def test_axiomatic_promotes_first_author(self):
        for n in range(2, 11):
            schemes = compare_schemes(n)
            self.assertGreaterEqual(schemes['axiomatic'][0], schemes['harmonic'][0])
            self.assertLessEqual(schemes['axiomatic'][-1], schemes['harmonic'][-1])

    def test_comparison_rows(self):
        rows = comparison_rows(5)
        self.assertEqual(len(rows), 15)
        fractional = [row['share'] for row in rows if row['scheme'] == 'fractional']
        self.assertEqual(fractional, [0.2] * 5)
        first = next(row for row in rows if row['scheme'] == 'axiomatic' and row['position'] == 1)
        self.assertAlmostEqual(first['share'], 0.4566, delta=1e-4)

    def test_comparison_follows_the_registry(self):
        schemes = compare_schemes(4)
        self.assertEqual(tuple(schemes), COMPARED_SCHEMES)
        code = RankingCode((1, 2, 3, 4))
        for name, vector in schemes.items():
            with self.subTest(scheme=name):
                self.assertEqual(vector.shares, scheme_registry[name](code))
        for a, b in zip(schemes['axiomatic'], unequal_a_index(4)):
            self.assertAlmostEqual(a, b, delta=1e-15)

    def test_registry(self):
        self.assertEqual(set(scheme_registry), {'inflated', 'fractional', 'harmonic', 'axiomatic'})
        code = parse_ranking_code("1,2,2")
        self.assertEqual(shares_for('inflated', code), (1.0, 1.0, 1.0))
        self.assertEqual(shares_for('axiomatic', code), axiomatic_credit_per_author(code).shares)
        with self.assertRaises(ValueError):
            shares_for('alphabetical', code)


class OracleTestCase(SimpleTestCase):
    """Monte-Carlo checks of the closed forms"""

    def test_samples_satisfy_axioms(self):
        groups = GroupStructure((1, 2, 3, 1))
        samples = sample_credit_vectors(groups, 10_000, make_rng(3))
        self.assertEqual(samples.shape, (10_000, 4))
        check_axioms(groups, samples)

        vector = sample_credit_vector(groups, make_rng(3))
        self.assertEqual(len(vector), 4)
        self.assertAlmostEqual(vector.total, 1.0, delta=1e-12)

    def test_make_rng_accepts_seeds_and_child_sequences(self):
        child = np.random.SeedSequence(3).spawn(1)[0]
        self.assertEqual(make_rng(3).random(), make_rng(3).random())
        self.assertEqual(make_rng(child).random(), np.random.Generator(np.random.PCG64(child)).random())
        with self.assertRaises(CreditError):
            make_rng(-1)

    def test_check_axioms_flags_broken_samples(self):
        groups = GroupStructure((1, 1))
        with self.assertRaises(NumericalFault):
            check_axioms(groups, np.array([[0.5, 0.6]]))
        with self.assertRaises(NumericalFault):
            check_axioms(groups, np.array([[0.25, 0.75]]))

    def test_single_group_is_a_point(self):
        config = SampleConfig(groups=GroupStructure((2,)), num_samples=100, seed=5)
        estimate = estimate_moments(config)
        self.assertEqual(estimate.mean, (0.5,))
        self.assertEqual(estimate.stddev, (0.0,))
        self.assertEqual(compare_with_closed_form(config.groups, estimate).delta_se, (0.0,))

    def test_moments_match_closed_forms(self):
        for groups in random_structures(50, max_groups=8, max_size=4, seed=4):
            config = SampleConfig(groups=groups, num_samples=100_000, seed=42)
            comparison = compare_with_closed_form(groups, estimate_moments(config))
            with self.subTest(groups=str(groups)):
                self.assertLessEqual(comparison.max_abs_delta_se, 5.0)
                for observed, expected in zip(comparison.estimate.stddev, comparison.closed_stddev):
                    self.assertLessEqual(abs(observed - expected), 0.01)

    def test_estimates_do_not_depend_on_workers(self):
        config = SampleConfig(groups=GroupStructure((1, 2, 1)), num_samples=40_000, seed=11)
        serial = estimate_moments(config, chunk_size=7_000, workers=1)
        threaded = estimate_moments(config, chunk_size=7_000, workers=4)
        self.assertEqual(serial, threaded)
        self.assertEqual(serial, estimate_moments(config, chunk_size=7_000, workers=1))

    def test_drawn_vectors_follow_the_same_streams(self):
        config = SampleConfig(groups=GroupStructure((1, 1, 1)), num_samples=3, seed=9)
        vectors = draw_credit_vectors(config)
        self.assertEqual(len(vectors), 3)
        mean = [sum(vector[k] for vector in vectors) / 3 for k in range(3)]
        for a, b in zip(mean, estimate_moments(config).mean):
            self.assertAlmostEqual(a, b, delta=1e-12)

    def test_sample_config_validation(self):
        groups = GroupStructure((1, 1))
        with self.assertRaises(CreditError):
            SampleConfig(groups=groups, num_samples=0)
        with self.assertRaises(CreditError):
            SampleConfig(groups=groups, num_samples=10, seed=-1)
        with self.assertRaises(CreditError):
            SampleConfig(groups=groups, num_samples=10, seed=2 ** 64)

    def test_volume_closed_form(self):
        self.assertEqual(polytope_volume_closed_form(GroupStructure((1, 1))), 0.5)
        self.assertAlmostEqual(polytope_volume_closed_form(GroupStructure((1, 1, 1))), 1 / 12, delta=1e-15)
        self.assertAlmostEqual(polytope_volume_closed_form(GroupStructure((1, 2, 2))), 1 / 30, delta=1e-15)

    def test_volume_estimates(self):
        for counts in [(1, 1), (1, 1, 1), (1, 2, 2), (1, 1, 1, 1)]:
            groups = GroupStructure(counts)
            result = estimate_volume(groups, num_samples=100_000, seed=42)
            with self.subTest(groups=counts):
                self.assertLessEqual(abs(result.delta_se), 3.0)
                self.assertEqual(result, estimate_volume(groups, num_samples=100_000, seed=42, workers=3))

    def test_volume_needs_two_groups(self):
        with self.assertRaises(GroupStructureError):
            estimate_volume(GroupStructure((3,)), num_samples=10)


class CreditCommandTestCase(SimpleTestCase):
    """Management commands and their exit codes"""

    def run_command(self, *args, **options):
        out = StringIO()
        call_command(*args, stdout=out, stderr=StringIO(), **options)
        return out.getvalue()

    def run_from_argv(self, *argv):
        with patch('sys.stdout', new_callable=StringIO), patch('sys.stderr', new_callable=StringIO) as err:
            with self.assertRaises(SystemExit) as ctx:
                execute_from_command_line(['manage.py', *argv])
        return ctx.exception.code, err.getvalue()

    def test_credit_plain(self):
        output = self.run_command('credit', '--code', '1,2,3,3,2')
        self.assertEqual(output.strip(), "0.5111 0.1778 0.0667 0.0667 0.1778")
        self.assertEqual(self.run_command('credit', '--code', '1').strip(), "1.0000")

    def test_credit_with_stddev(self):
        lines = self.run_command('credit', '--code', '1,1,2', '--stddev').splitlines()
        self.assertEqual(lines[0], "0.4167 0.4167 0.1667")
        self.assertEqual(lines[1], "stddev 0.0481 0.0962")

    def test_credit_json(self):
        payload = json.loads(self.run_command('credit', '--code', '1,1,2', '--stddev', '--format', 'json'))
        self.assertEqual(payload['code'], [1, 1, 2])
        self.assertEqual(payload['groups'], [2, 1])
        self.assertAlmostEqual(payload['shares'][0], 5 / 12, delta=1e-15)
        self.assertEqual(len(payload['stddev']), 2)

    def test_credit_csv(self):
        lines = self.run_command('credit', '--code', '1,2', '--format', 'csv').splitlines()
        self.assertEqual(lines[0], "code,position,rank,share")
        self.assertEqual(lines[1], '"1,2",1,1,0.75')

    def test_credit_stdin_batch(self):
        output = self.run_command('credit', '--format', 'json', stdin=StringIO("1,2\n\n1 1\n"))
        payload = json.loads(output)
        self.assertEqual([item['code'] for item in payload], [[1, 2], [1, 1]])

    def test_credit_stdin_reports_bad_line(self):
        with self.assertRaises(CommandError) as ctx:
            self.run_command('credit', stdin=StringIO("1,2\n1,3\n"))
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertIn("line 2", str(ctx.exception))

    def test_table_matches_published_rows(self):
        lines = self.run_command('table', '--max-n', '10', '--precision', '4').splitlines()
        self.assertEqual(len(lines), 10)
        for line, printed in zip(lines, PUBLISHED_TABLE):
            self.assertEqual(line.split()[1:], printed.split())

    def test_table_json_and_stddev(self):
        payload = json.loads(self.run_command('table', '--max-n', '3', '--format', 'json'))
        self.assertEqual(payload['rows'][1], [0.75, 0.25])
        self.assertEqual(len(payload['raw'][2]), 3)

        lines = self.run_command('table', '--max-n', '2', '--stddev').splitlines()
        self.assertEqual(lines[1].split()[1:], ["0.1443", "0.1443"])

    def test_compare(self):
        lines = self.run_command('compare', '--n', '2').splitlines()
        self.assertEqual(lines[0], "scheme position share")
        self.assertIn("harmonic 1 0.6667", lines)
        self.assertIn("harmonic 2 0.3333", lines)

        rows = json.loads(self.run_command('compare', '--n', '5', '--format', 'json'))
        self.assertTrue(all(row['share'] == 0.2 for row in rows if row['scheme'] == 'fractional'))

    def test_sample_single_draw_is_echoed(self):
        payload = json.loads(self.run_command('sample', '--code', '1,2', '--samples', '1', '--format', 'json'))
        self.assertEqual(len(payload['vectors']), 1)
        first, second = payload['vectors'][0]
        self.assertGreaterEqual(first, second)
        self.assertAlmostEqual(first + second, 1.0, delta=1e-12)

    def test_sample_point_polytope(self):
        payload = json.loads(self.run_command('sample', '--code', '1,1', '--samples', '100', '--format', 'json'))
        row = payload['rows'][0]
        self.assertEqual(row['mean'], 0.5)
        self.assertEqual(row['stddev'], 0.0)
        self.assertEqual(row['delta_se'], 0.0)
        self.assertEqual(payload['max_abs_delta_se'], 0.0)
        self.assertEqual(payload['vectors'], [])

    def test_sample_agrees_and_is_deterministic(self):
        args = ('sample', '--code', '1,2,3', '--samples', '200000', '--seed', '7', '--format', 'json')
        first = self.run_command(*args)
        self.assertEqual(first, self.run_command(*args, '--workers', '3'))
        payload = json.loads(first)
        self.assertEqual(payload['max_abs_delta_se'], max(abs(row['delta_se']) for row in payload['rows']))
        for row in json.loads(first)['rows']:
            self.assertLessEqual(abs(row['delta_se']), 5.0)

    def test_sample_show_vector(self):
        output = self.run_command('sample', '--code', '1,2,2', '--samples', '4', '--show-vector')
        self.assertEqual(sum(1 for line in output.splitlines() if line.startswith('vector ')), 4)
        self.assertEqual(sum(1 for line in output.splitlines() if line.startswith('max_abs_delta_se ')), 1)

    def test_volume(self):
        payload = json.loads(self.run_command('volume', '--code', '1,2', '--samples', '100000', '--format', 'json'))
        self.assertAlmostEqual(payload['estimate'], 0.5, delta=1e-3)
        self.assertEqual(payload['closed_form'], 0.5)

    def test_validation_errors_exit_2(self):
        code, stderr = self.run_from_argv('credit', '--code', '1,3')
        self.assertEqual(code, 2)
        self.assertIn("skips rank 2", stderr)

        code, _ = self.run_from_argv('table', '--precision', '16')
        self.assertEqual(code, 2)

        code, _ = self.run_from_argv('sample', '--code', '1,2', '--samples', '0')
        self.assertEqual(code, 2)

        code, _ = self.run_from_argv('volume', '--code', '1,1', '--samples', '10')
        self.assertEqual(code, 2)

    def test_internal_errors_exit_1(self):
        with patch('credit.management.commands.table.render_table1', side_effect=RuntimeError("boom")):
            with self.assertRaises(CommandError) as ctx:
                self.run_command('table')
        self.assertEqual(ctx.exception.returncode, 1)


class CreditAPITestCase(APISimpleTestCase):
    """HTTP endpoints under /api/v1/"""

    def test_health(self):
        response = self.client.get('/api/v1/health/')
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.json()['status'], 'ok')

    def test_credit(self):
        response = self.client.get('/api/v1/credit/', {'code': '1,2,3,3,2', 'stddev': 'true'})
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        data = response.json()['data']
        self.assertEqual(data['groups'], [1, 2, 2])
        self.assertAlmostEqual(data['shares'][0], 23 / 45, delta=1e-15)
        self.assertEqual(len(data['stddev']), 3)

    def test_credit_rejects_bad_code(self):
        response = self.client.get('/api/v1/credit/', {'code': '2,3'})
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        body = response.json()
        self.assertEqual(body['status'], 'error')
        self.assertIn('code', body['error'])

    def test_table(self):
        response = self.client.get('/api/v1/table/', {'max_n': 10})
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        rows = response.json()['data']['rows']
        self.assertEqual([" ".join(row) for row in rows], PUBLISHED_TABLE)

    def test_compare(self):
        response = self.client.get('/api/v1/compare/', {'n': 3})
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(len(response.json()['data']), 9)

    def test_sample_and_volume(self):
        response = self.client.get('/api/v1/sample/', {'code': '1,2', 'samples': 20000, 'seed': 3})
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        data = response.json()['data']
        self.assertEqual(data['samples'], 20000)
        self.assertTrue(all(abs(delta) <= 5.0 for delta in data['delta_se']))
        self.assertEqual(data['max_abs_delta_se'], max(abs(delta) for delta in data['delta_se']))

        response = self.client.get('/api/v1/volume/', {'code': '1,2,3', 'samples': 20000})
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertAlmostEqual(response.json()['data']['closed_form'], 1 / 6, delta=1e-15)

    def test_sample_limit(self):
        response = self.client.get('/api/v1/sample/', {'code': '1,2', 'samples': 10 ** 9})
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)

    def test_volume_single_group_is_rejected(self):
        response = self.client.get('/api/v1/volume/', {'code': '1,1', 'samples': 100})
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn('detail', response.json()['error'])
