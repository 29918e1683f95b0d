"""
Batch ingestion of publication records and per-author credit rollups.

Input is CSV (columns pub_id, authors, ranking_code, weight; lists inside a
cell separated by ``;``) or a JSON array of objects with the same keys. Every
registered counting scheme is applied to every record and the shares are
summed per author, both as is and multiplied by the record's weight.
"""

import csv
import io
import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, IO, Iterable, List, Optional, Sequence, Tuple, Union

import pandas as pd

from pytypes.credit import RankingCode
from pytypes.publications import REPORT_COLUMNS, AuthorReport, AuthorReportRow, InputFormat, OutputFormat, PublicationRecord
from services.credit import parse_ranking_code
from services.exceptions import CreditError, PublicationFormatError, ReportWriteError
from services.schemes import scheme_registry, shares_for

logger = logging.getLogger(__name__)

REQUIRED_FIELDS = ('pub_id', 'authors', 'ranking_code')
NORMALIZED_SCHEMES = ('fractional', 'harmonic', 'axiomatic')
LIST_SEPARATOR = ';'

Source = Union[bytes, str, IO[bytes], IO[str]]
Destination = Union[str, Path, IO[str]]


def _read_text(source: Source) -> str:
    data = source.read() if hasattr(source, 'read') else source
    if isinstance(data, str):
        return data.lstrip("\ufeff")
    try:
        return data.decode('utf-8-sig')
    except UnicodeDecodeError as exc:
        raise PublicationFormatError([(0, f"Input is not valid UTF-8: {exc}")]) from exc


def _split_cell(value: Any, field: str) -> List[str]:
    if isinstance(value, str):
        return [item.strip() for item in value.split(LIST_SEPARATOR)]
    if isinstance(value, list):
        if field == 'authors':
            for item in value:
                if not isinstance(item, str):
                    raise CreditError(f"author names must be strings, got {item!r}")
        else:
            for item in value:
                if isinstance(item, bool) or not isinstance(item, (int, str)):
                    raise CreditError(f"{field} entries must be integers, got {item!r}")
        return [str(item).strip() for item in value]
    raise CreditError(f"{field} must be a '{LIST_SEPARATOR}'-separated string or a list")


def _parse_authors(value: Any) -> Tuple[str, ...]:
    if value is None or value == '':
        raise CreditError("missing authors")
    authors = _split_cell(value, 'authors')
    if any(not name for name in authors):
        raise CreditError("empty author name")
    seen = set()
    for name in authors:
        if name in seen:
            raise CreditError(f"duplicate author {name!r}")
        seen.add(name)
    return tuple(authors)


def _parse_code(value: Any) -> RankingCode:
    if value is None or value == '':
        raise CreditError("missing ranking_code")
    return parse_ranking_code(",".join(_split_cell(value, 'ranking_code')))


def _parse_weight(value: Any) -> float:
    if value is None or (isinstance(value, str) and not value.strip()):
        return 1.0
    if isinstance(value, bool):
        raise CreditError(f"weight {value!r} is not a number")
    try:
        weight = float(value)
    except (TypeError, ValueError):
        raise CreditError(f"weight {value!r} is not a number") from None
    if not math.isfinite(weight):
        raise CreditError(f"weight {value!r} is not finite")
    if weight < 0:
        raise CreditError(f"negative weight {weight}")
    return weight


def parse_record(raw: Dict[str, Any]) -> PublicationRecord:
    """Validate one raw row (CSV dict or JSON object) into a PublicationRecord."""
    if not isinstance(raw, dict):
        raise CreditError("record must be an object")

    pub_id = raw.get('pub_id')
    pub_id = str(pub_id).strip() if pub_id is not None else ''
    if not pub_id:
        raise CreditError("missing pub_id")

    authors = _parse_authors(raw.get('authors'))
    try:
        code = _parse_code(raw.get('ranking_code'))
    except CreditError as exc:
        raise CreditError(f"malformed ranking code: {exc}") from exc

    if len(authors) != len(code):
        raise CreditError(f"length mismatch: {len(authors)} authors but {len(code)} ranks")

    return PublicationRecord(
        pub_id=pub_id,
        authors=authors,
        ranking_code=code,
        weight=_parse_weight(raw.get('weight')),
    )


def _raw_rows(text: str, fmt: InputFormat) -> List[Any]:
    if fmt == 'csv':
        reader = csv.DictReader(io.StringIO(text))
        header = reader.fieldnames or []
        missing = [field for field in REQUIRED_FIELDS if field not in header]
        if missing and text.strip():
            raise PublicationFormatError([(0, f"missing column(s): {', '.join(missing)}")])
        return list(reader)

    if fmt == 'json':
        try:
            payload = json.loads(text) if text.strip() else []
        except json.JSONDecodeError as exc:
            raise PublicationFormatError([(0, f"invalid JSON: {exc}")]) from exc
        if not isinstance(payload, list):
            raise PublicationFormatError([(0, "JSON input must be an array of records")])
        return payload

    raise CreditError(f"Unsupported input format {fmt!r}; use csv or json")


def load_publications(source: Source, fmt: InputFormat) -> List[PublicationRecord]:
    """
    Parse and validate publication records.

    All rows are checked before failing; the raised PublicationFormatError
    lists every bad row by its 1-based record number.
    """
    rows = _raw_rows(_read_text(source), fmt)

    records: List[PublicationRecord] = []
    diagnostics: List[Tuple[int, str]] = []
    first_seen: Dict[str, int] = {}

    for row_number, raw in enumerate(rows, start=1):
        try:
            record = parse_record(raw)
        except CreditError as exc:
            diagnostics.append((row_number, str(exc)))
            continue

        if record.pub_id in first_seen:
            diagnostics.append((row_number, f"duplicate pub_id {record.pub_id!r} (first seen in row {first_seen[record.pub_id]})"))
            continue
        first_seen[record.pub_id] = row_number
        records.append(record)

    if diagnostics:
        logger.warning("Rejected publication input with %d bad row(s)", len(diagnostics))
        raise PublicationFormatError(diagnostics)

    logger.info("Loaded %d publication record(s) from %s input", len(records), fmt)
    return records


def _contributions(records: Iterable[PublicationRecord]) -> pd.DataFrame:
    """One row per (record, author) with every scheme's share, in (pub_id, position) order."""
    rows = []
    for record in sorted(records, key=lambda item: item.pub_id):
        shares = {name: shares_for(name, record.ranking_code) for name in scheme_registry}
        for position, author in enumerate(record.authors):
            row = {'pub_id': record.pub_id, 'position': position + 1, 'author': author, 'weight': record.weight}
            row.update({name: values[position] for name, values in shares.items()})
            rows.append(row)

    frame = pd.DataFrame(rows, columns=['pub_id', 'position', 'author', 'weight', *scheme_registry])
    for name in NORMALIZED_SCHEMES:
        frame[f'{name}_weighted'] = frame[name] * frame['weight']
    return frame


def author_credit_report(records: Sequence[PublicationRecord]) -> List[AuthorReport]:
    """
    Per-author totals for every scheme, sorted by descending weighted
    axiomatic credit and then by author name.
    """
    frame = _contributions(records)
    if frame.empty:
        return []

    value_columns = list(REPORT_COLUMNS[1:])
    totals = frame.groupby('author', sort=True)[value_columns].sum().reset_index()
    totals = totals.sort_values(
        ['axiomatic_weighted', 'author'], ascending=[False, True], kind='mergesort'
    )

    return [
        AuthorReport(author=str(row['author']), **{column: float(row[column]) for column in value_columns})
        for row in totals.to_dict('records')
    ]


def conservation_check(records: Sequence[PublicationRecord], report: Sequence[AuthorReport]) -> Dict[str, Dict[str, float]]:
    """Per normalized scheme: summed totals against record count and weight sum."""
    expected_weight = math.fsum(record.weight for record in records)
    return {
        name: {
            'total': math.fsum(getattr(row, name) for row in report),
            'expected': float(len(records)),
            'weighted_total': math.fsum(getattr(row, f'{name}_weighted') for row in report),
            'expected_weighted': expected_weight,
        }
        for name in NORMALIZED_SCHEMES
    }


def report_rows(report: Sequence[AuthorReport]) -> List[AuthorReportRow]:
    return [AuthorReportRow(**{column: getattr(row, column) for column in REPORT_COLUMNS}) for row in report]


def _render(report: Sequence[AuthorReport], fmt: OutputFormat) -> str:
    rows = report_rows(report)

    if fmt == 'json':
        return json.dumps(rows, indent=2, ensure_ascii=False) + "\n"

    if fmt == 'csv':
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(REPORT_COLUMNS)
        for row in rows:
            writer.writerow([row['author'], *(f"{row[column]:.6f}" for column in REPORT_COLUMNS[1:])])
        return buffer.getvalue()

    if fmt == 'plain':
        width = max([len('author'), *(len(row['author']) for row in rows)])
        lines = ["  ".join([f"{'author':<{width}}", *(f"{column:>19}" for column in REPORT_COLUMNS[1:])])]
        for row in rows:
            lines.append("  ".join([f"{row['author']:<{width}}", *(f"{row[column]:>19.6f}" for column in REPORT_COLUMNS[1:])]))
        return "\n".join(lines) + "\n"

    raise CreditError(f"Unsupported report format {fmt!r}; use csv, json or plain")


def write_report(report: Sequence[AuthorReport], fmt: OutputFormat, destination: Destination) -> None:
    """
    Write the report with the stable column order of REPORT_COLUMNS.

    CSV and plain output use 6 decimal places; JSON keeps full precision.
    ``destination`` is a path or an open text stream.
    """
    content = _render(report, fmt)

    if hasattr(destination, 'write'):
        destination.write(content)
    else:
        try:
            with open(destination, 'w', encoding='utf-8', newline='') as handle:
                handle.write(content)
        except OSError as exc:
            raise ReportWriteError(f"Cannot write report to {destination}: {exc.strerror or exc}") from exc

    logger.info("Wrote %s report with %d author(s)", fmt, len(report))


def read_report(source: Source, fmt: InputFormat) -> List[AuthorReport]:
    """Parse a report written by ``write_report`` back into AuthorReports."""
    text = _read_text(source)
    if fmt == 'csv':
        rows: List[Dict[str, Any]] = list(csv.DictReader(io.StringIO(text)))
    elif fmt == 'json':
        rows = json.loads(text) if text.strip() else []
    else:
        raise CreditError(f"Unsupported report format {fmt!r}; use csv or json")

    return [
        AuthorReport(author=row['author'], **{column: float(row[column]) for column in REPORT_COLUMNS[1:]})
        for row in rows
    ]


def infer_format(path: Optional[str], default: InputFormat = 'csv') -> InputFormat:
    if path and Path(path).suffix.lower() == '.json':
        return 'json'
    if path and Path(path).suffix.lower() == '.csv':
        return 'csv'
    return default
