"""
Publications App Tests

Ingestion diagnostics, per-author rollups, report round-trips, the aggregate
command and the report endpoint.
"""

import json
import os
import tempfile
from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase
from hypothesis import given
from hypothesis import settings as hypothesis_settings
from hypothesis import strategies as st
from rest_framework import status
from rest_framework.test import APISimpleTestCase

from services.aggregator import (
    author_credit_report,
    conservation_check,
    infer_format,
    load_publications,
    parse_record,
    read_report,
    write_report,
)
from services.exceptions import CreditError, PublicationFormatError, ReportWriteError

# A leads a two-author publication with 10 citations and is second of three on one with 4.
FIXTURE_CSV = (
    "pub_id,authors,ranking_code,weight\n"
    "p1,A;B,1;2,10\n"
    "p2,C;A;D,1;2;3,4\n"
)

FIXTURE_JSON = [
    {"pub_id": "p1", "authors": ["A", "B"], "ranking_code": [1, 2], "weight": 10},
    {"pub_id": "p2", "authors": "C;A;D", "ranking_code": "1;2;3", "weight": 4},
]

MIXED_RECORDS = load_publications(
    "pub_id,authors,ranking_code,weight\n"
    "a,X;Y;Z,1;1;2,3\n"
    "b,Y,1,\n"
    "c,Z;X,1;2,0.5\n"
    "d,W;X;Y;Z,1;2;2;3,7\n"
    "e,X;W,1;1,2\n",
    'csv',
)


class LoadPublicationsTestCase(SimpleTestCase):
    """Parsing and validation of publication records"""

    def test_csv_row(self):
        records = load_publications("pub_id,authors,ranking_code,weight\np1,A;B,1;2,10\n", 'csv')
        self.assertEqual(len(records), 1)
        self.assertEqual(records[0].authors, ('A', 'B'))
        self.assertEqual(records[0].ranking_code.ranks, (1, 2))
        self.assertEqual(records[0].weight, 10.0)

    def test_json_lists_strings_and_default_weight(self):
        records = load_publications(
            json.dumps([{"pub_id": "p1", "authors": ["A", "B"], "ranking_code": [1, 1]}]).encode('utf-8'),
            'json',
        )
        self.assertEqual(records[0].weight, 1.0)
        self.assertEqual(records[0].ranking_code.ranks, (1, 1))
        self.assertEqual(len(load_publications(json.dumps(FIXTURE_JSON), 'json')), 2)

    def test_empty_inputs(self):
        self.assertEqual(load_publications("[]", 'json'), [])
        self.assertEqual(load_publications(b"", 'csv'), [])

    def test_collects_every_bad_row(self):
        text = (
            "pub_id,authors,ranking_code,weight\n"
            "p1,A;B;C,1;2,1\n"
            "p2,A;B,1;3,1\n"
            "p3,A,1,-2\n"
            "p4,A;B,1;2,1\n"
            "p4,C,1,1\n"
        )
        with self.assertRaises(PublicationFormatError) as ctx:
            load_publications(text, 'csv')

        diagnostics = ctx.exception.diagnostics
        self.assertEqual([row for row, _ in diagnostics], [1, 2, 3, 5])
        self.assertTrue(diagnostics[0][1].startswith("length mismatch"))
        self.assertTrue(diagnostics[1][1].startswith("malformed ranking code"))
        self.assertTrue(diagnostics[2][1].startswith("negative weight"))
        self.assertIn("duplicate pub_id 'p4' (first seen in row 4)", diagnostics[3][1])
        self.assertIn("row 5:", str(ctx.exception))

    def test_record_level_errors(self):
        cases = [
            ({"authors": "A", "ranking_code": "1"}, "missing pub_id"),
            ({"pub_id": "p", "authors": "A;A", "ranking_code": "1;2"}, "duplicate author"),
            ({"pub_id": "p", "authors": "A;", "ranking_code": "1;2"}, "empty author name"),
            ({"pub_id": "p", "authors": "A", "ranking_code": "1", "weight": "lots"}, "not a number"),
            ({"pub_id": "p", "authors": "A", "ranking_code": "1", "weight": "inf"}, "not finite"),
            ({"pub_id": "p", "authors": ["A", None], "ranking_code": [1, 2]}, "author names must be strings"),
            ({"pub_id": "p", "authors": ["A", 7], "ranking_code": [1, 2]}, "author names must be strings"),
            ({"pub_id": "p", "authors": ["A", "B"], "ranking_code": [1, None]}, "ranking_code entries must be integers"),
            ({"pub_id": "p", "authors": ["A", "B"], "ranking_code": [1, True]}, "ranking_code entries must be integers"),
        ]
        for raw, message in cases:
            with self.subTest(message=message):
                with self.assertRaisesMessage(CreditError, message):
                    parse_record(raw)

    def test_null_author_is_reported_with_its_row(self):
        source = json.dumps([
            {"pub_id": "p1", "authors": ["A", "B"], "ranking_code": [1, 2]},
            {"pub_id": "p2", "authors": ["A", None], "ranking_code": [1, 2]},
        ])
        with self.assertRaises(PublicationFormatError) as ctx:
            load_publications(source, 'json')
        self.assertEqual([row for row, _ in ctx.exception.diagnostics], [2])
        self.assertIn("author names must be strings", ctx.exception.diagnostics[0][1])

    def test_byte_order_mark_is_skipped(self):
        text = "\ufeffpub_id,authors,ranking_code,weight\np1,A;B,1;2,10\n"
        for source in (text.encode('utf-8'), text):
            with self.subTest(kind=type(source).__name__):
                records = load_publications(source, 'csv')
                self.assertEqual(len(records), 1)
                self.assertEqual(records[0].pub_id, 'p1')
                self.assertEqual(records[0].authors, ('A', 'B'))
        records = load_publications(("\ufeff" + json.dumps(FIXTURE_JSON)).encode('utf-8'), 'json')
        self.assertEqual(len(records), 2)

    def test_file_level_errors(self):
        for source, fmt in [
            ("pub_id,authors\np1,A\n", 'csv'),
            ("{not json", 'json'),
            ('{"pub_id": "p1"}', 'json'),
            (b"\xff\xfe\x00", 'csv'),
        ]:
            with self.subTest(source=source):
                with self.assertRaises(PublicationFormatError) as ctx:
                    load_publications(source, fmt)
                self.assertEqual(ctx.exception.diagnostics[0][0], 0)

    def test_infer_format(self):
        self.assertEqual(infer_format("pubs.JSON"), 'json')
        self.assertEqual(infer_format("pubs.csv"), 'csv')
        self.assertEqual(infer_format(None), 'csv')


class AuthorCreditReportTestCase(SimpleTestCase):
    """Per-author rollups across counting schemes"""

    def setUp(self):
        self.records = load_publications(FIXTURE_CSV, 'csv')
        self.report = author_credit_report(self.records)

    def test_weighted_axiomatic_total(self):
        first = self.report[0]
        self.assertEqual(first.author, 'A')
        self.assertAlmostEqual(first.axiomatic_weighted, 0.75 * 10 + (5 / 18) * 4, delta=1e-12)
        self.assertAlmostEqual(first.axiomatic_weighted, 8.611, delta=1e-3)
        self.assertEqual(first.inflated, 2.0)

    def test_ordering(self):
        self.assertEqual([row.author for row in self.report], ['A', 'B', 'C', 'D'])

    def test_ties_broken_by_name(self):
        records = load_publications(
            "pub_id,authors,ranking_code,weight\nq1,Zed;Amy,1;1,2\n", 'csv'
        )
        self.assertEqual([row.author for row in author_credit_report(records)], ['Amy', 'Zed'])

    def test_conservation(self):
        for records in (self.records, MIXED_RECORDS):
            report = author_credit_report(records)
            for scheme, totals in conservation_check(records, report).items():
                with self.subTest(scheme=scheme):
                    self.assertAlmostEqual(totals['total'], totals['expected'], delta=1e-9)
                    self.assertAlmostEqual(totals['weighted_total'], totals['expected_weighted'], delta=1e-9)

    def test_inflated_bounds_axiomatic(self):
        for row in author_credit_report(MIXED_RECORDS):
            self.assertGreaterEqual(row.inflated, row.axiomatic)

    def test_single_author_gets_the_weight(self):
        records = load_publications("pub_id,authors,ranking_code,weight\ns,Solo,1,3.5\n", 'csv')
        row = author_credit_report(records)[0]
        for column in ('fractional_weighted', 'harmonic_weighted', 'axiomatic_weighted'):
            self.assertEqual(getattr(row, column), 3.5)

    def test_harmonic_uses_list_position(self):
        records = load_publications("pub_id,authors,ranking_code,weight\nh,A;B,1;1,1\n", 'csv')
        report = {row.author: row for row in author_credit_report(records)}
        self.assertAlmostEqual(report['A'].harmonic, 2 / 3, delta=1e-15)
        self.assertAlmostEqual(report['A'].axiomatic, 0.5, delta=1e-15)

    def test_empty_report(self):
        self.assertEqual(author_credit_report([]), [])

    @hypothesis_settings(deadline=None)
    @given(st.permutations(MIXED_RECORDS))
    def test_order_independent(self, shuffled):
        self.assertEqual(author_credit_report(shuffled), author_credit_report(MIXED_RECORDS))


class ReportIOTestCase(SimpleTestCase):
    """Writing and re-reading reports"""

    def setUp(self):
        self.report = author_credit_report(load_publications(FIXTURE_CSV, 'csv'))

    def test_round_trips(self):
        for fmt in ('csv', 'json'):
            with self.subTest(fmt=fmt):
                buffer = StringIO()
                write_report(self.report, fmt, buffer)
                restored = read_report(buffer.getvalue(), fmt)
                self.assertEqual([row.author for row in restored], [row.author for row in self.report])
                for original, parsed in zip(self.report, restored):
                    self.assertAlmostEqual(original.axiomatic_weighted, parsed.axiomatic_weighted, delta=1e-6)
                    self.assertAlmostEqual(original.harmonic, parsed.harmonic, delta=1e-6)

    def test_csv_layout(self):
        buffer = StringIO()
        write_report(self.report, 'csv', buffer)
        lines = buffer.getvalue().splitlines()
        self.assertEqual(
            lines[0],
            "author,inflated,fractional,fractional_weighted,harmonic,harmonic_weighted,axiomatic,axiomatic_weighted",
        )
        self.assertTrue(lines[1].startswith("A,2.000000,"))

    def test_empty_report_is_header_only(self):
        buffer = StringIO()
        write_report([], 'csv', buffer)
        self.assertEqual(len(buffer.getvalue().splitlines()), 1)

    def test_sole_author_row(self):
        buffer = StringIO()
        write_report(author_credit_report(load_publications('[{"pub_id": "x", "authors": "A", "ranking_code": "1"}]', 'json')), 'csv', buffer)
        self.assertEqual(buffer.getvalue().splitlines()[1], "A," + ",".join(["1.000000"] * 7))

    def test_plain_output(self):
        buffer = StringIO()
        write_report(self.report, 'plain', buffer)
        lines = buffer.getvalue().splitlines()
        self.assertTrue(lines[0].startswith("author"))
        self.assertEqual(len(lines), 5)

    def test_unwritable_destination(self):
        with tempfile.TemporaryDirectory() as directory:
            with self.assertRaises(ReportWriteError):
                write_report(self.report, 'csv', os.path.join(directory, 'missing', 'report.csv'))

    def test_write_to_path(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'report.json')
            write_report(self.report, 'json', path)
            with open(path, 'rb') as handle:
                restored = read_report(handle, 'json')
        self.assertEqual(len(restored), 4)


class AggregateCommandTestCase(SimpleTestCase):
    """The aggregate management command"""

    def run_command(self, *args, **options):
        out = StringIO()
        call_command('aggregate', *args, stdout=out, stderr=StringIO(), **options)
        return out.getvalue()

    def test_aggregate_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'pubs.csv')
            with open(path, 'w', encoding='utf-8') as handle:
                handle.write(FIXTURE_CSV)
            rows = json.loads(self.run_command('--input', path, '--format', 'json'))

        self.assertEqual(rows[0]['author'], 'A')
        self.assertAlmostEqual(rows[0]['axiomatic_weighted'], 8.611, delta=1e-3)

    def test_aggregate_json_stdin_to_file(self):
        with tempfile.TemporaryDirectory() as directory:
            output = os.path.join(directory, 'report.csv')
            self.run_command(
                '--input', '-', '--input-format', 'json', '--format', 'csv', '--output', output,
                stdin=StringIO(json.dumps(FIXTURE_JSON)),
            )
            with open(output, encoding='utf-8') as handle:
                restored = read_report(handle, 'csv')
        self.assertAlmostEqual(restored[0].axiomatic_weighted, 8.611111, delta=1e-6)

    def test_empty_array(self):
        output = self.run_command('--input', '-', '--input-format', 'json', '--format', 'json', stdin=StringIO("[]"))
        self.assertEqual(json.loads(output), [])

    def test_malformed_input_exits_2(self):
        with self.assertRaises(CommandError) as ctx:
            self.run_command(
                '--input', '-',
                stdin=StringIO("pub_id,authors,ranking_code,weight\np1,A;B;C,1;2,1\n"),
            )
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertIn("row 1: length mismatch", str(ctx.exception))

    def test_missing_file_exits_2(self):
        with self.assertRaises(CommandError) as ctx:
            self.run_command('--input', '/nonexistent/pubs.csv')
        self.assertEqual(ctx.exception.returncode, 2)


class PublicationReportAPITestCase(APISimpleTestCase):
    """POST /api/v1/publications/report/"""

    url = '/api/v1/publications/report/'

    def test_report(self):
        response = self.client.post(self.url, FIXTURE_JSON, format='json')
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        data = response.json()['data']
        self.assertEqual(data['publications'], 2)
        self.assertEqual(data['authors'][0]['author'], 'A')
        self.assertAlmostEqual(data['authors'][0]['axiomatic_weighted'], 8.611, delta=1e-3)
        self.assertAlmostEqual(data['conservation']['axiomatic']['total'], 2.0, delta=1e-9)

    def test_row_diagnostics(self):
        records = FIXTURE_JSON + [{"pub_id": "p1", "authors": "E", "ranking_code": "1"}]
        response = self.client.post(self.url, records, format='json')
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        rows = response.json()['error']['rows']
        self.assertEqual(rows[0]['row'], 3)

    def test_requires_array(self):
        response = self.client.post(self.url, {"pub_id": "p1"}, format='json')
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
