"""
Data ingestion: subject-level records, CSV files and aggregated JSON tables.

Subject CSV:      header ``group,ep1,...,epk``; outcome values 0/1.
Aggregated JSON:  ``{"k": 2, "categories": ["11","10","01","00"], "trt": [...], "ctr": [...]}``
"""

from __future__ import annotations

import csv
import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from ..config import config
from ..exceptions import InputError
from .categories import n_categories, parse_pattern, position_of
from .table import CrossTable

logger = logging.getLogger(__name__)

SubjectRecord = Tuple[str, Sequence[int]]


def _check_k(k: int, max_endpoints: Optional[int]) -> None:
    limit = config.max_endpoints if max_endpoints is None else max_endpoints
    if k < 1:
        raise InputError("records must carry at least one endpoint")
    if k > limit:
        raise InputError(f"k={k} exceeds the configured endpoint limit of {limit}")


def ingest_subjects(
    records: Iterable[SubjectRecord],
    treatment: Optional[str] = None,
    control: Optional[str] = None,
    max_endpoints: Optional[int] = None,
) -> CrossTable:
    """Tally (group label, outcomes) records into a CrossTable."""
    treatment = treatment or config.treatment_label
    control = control or config.control_label
    if treatment == control:
        raise InputError("treatment and control labels must differ")

    k: Optional[int] = None
    trt: List[int] = []
    ctr: List[int] = []
    seen = set()
    for n, (label, outcomes) in enumerate(records):
        outcomes = [int(o) for o in outcomes]
        if k is None:
            k = len(outcomes)
            _check_k(k, max_endpoints)
            trt = [0] * n_categories(k)
            ctr = [0] * n_categories(k)
        elif len(outcomes) != k:
            raise InputError(f"record {n} has {len(outcomes)} endpoints, expected {k}")
        pos = position_of(outcomes)
        if label == treatment:
            trt[pos] += 1
        elif label == control:
            ctr[pos] += 1
        else:
            raise InputError(f"record {n}: unknown group label {label!r}")
        seen.add(label)

    if k is None:
        raise InputError("empty input")
    if seen != {treatment, control}:
        missing = {treatment, control} - seen
        raise InputError(f"no subjects in group(s) {sorted(missing)}")
    return CrossTable(k=k, counts_trt=tuple(trt), counts_ctr=tuple(ctr))


def read_subjects_csv(
    path: Path,
    treatment: Optional[str] = None,
    control: Optional[str] = None,
) -> CrossTable:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise InputError("empty input") from None
        if not header or header[0].strip().lower() != "group":
            raise InputError("subject CSV must start with a 'group' column")
        records = []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(header):
                raise InputError(f"line {lineno}: expected {len(header)} columns")
            try:
                outcomes = [int(cell) for cell in row[1:]]
            except ValueError:
                raise InputError(f"line {lineno}: outcomes must be 0 or 1") from None
            records.append((row[0].strip(), outcomes))
    table = ingest_subjects(records, treatment=treatment, control=control)
    logger.debug("read %d subjects from %s", table.n_trt + table.n_ctr, path)
    return table


def table_from_dict(data: Dict[str, Any]) -> CrossTable:
    """Build a CrossTable from the aggregated JSON layout."""
    try:
        k = int(data["k"])
        labels = list(data["categories"])
        trt = [int(c) for c in data["trt"]]
        ctr = [int(c) for c in data["ctr"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed aggregated table: {exc}") from None
    _check_k(k, None)
    d = n_categories(k)
    if not (len(labels) == len(trt) == len(ctr) == d):
        raise InputError(f"aggregated table for k={k} needs {d} categories")
    counts_trt = [0] * d
    counts_ctr = [0] * d
    filled = set()
    for label, a, b in zip(labels, trt, ctr):
        pattern = parse_pattern(label)
        if len(pattern) != k:
            raise InputError(f"category {label!r} does not have {k} endpoints")
        pos = position_of(pattern)
        if pos in filled:
            raise InputError(f"duplicate category {label!r}")
        filled.add(pos)
        counts_trt[pos] = a
        counts_ctr[pos] = b
    return CrossTable(k=k, counts_trt=tuple(counts_trt), counts_ctr=tuple(counts_ctr))


def read_aggregated_json(path: Path) -> CrossTable:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None
    return table_from_dict(data)


def load_table(
    path: Path,
    treatment: Optional[str] = None,
    control: Optional[str] = None,
) -> CrossTable:
    """Dispatch on file suffix: ``.json`` aggregated, anything else subject CSV."""
    path = Path(path)
    if not path.exists():
        raise InputError(f"{path}: no such file")
    if path.suffix.lower() == ".json":
        return read_aggregated_json(path)
    return read_subjects_csv(path, treatment=treatment, control=control)
