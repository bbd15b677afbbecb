"""Bridge-inventory CSV ingestion, validation and deterioration-pair extraction."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Iterable, TextIO

from .errors import DomainError, SchemaError
from .units import BridgeRecord

# record field -> CSV column; item numbers follow common NBI export headers
DEFAULT_COLUMNS = {
    "structure_id": "8 Structure Number",
    "inspection_year": "90 Inspection Year",
    "district": "2 District",
    "county": "3 County",
    "year_built": "27 Yr Built",
    "aadt": "29 AADT",
    "design_load": "31 Design Load",
    "skew": "34 Skew",
    "span_type": "43 1 Mn Span Ty",
    "structure_length": "49 Str Lgth",
    "deck_width": "52 Deck Width",
}
# rating name -> CSV column; the first entry is required
DEFAULT_RATINGS = {"structural_evaluation": "67 Str Eval"}


@dataclass
class RejectedRow:
    line: int  # 1-based line number in the file, header is line 1
    reason: str
    row: dict

    def to_dict(self) -> dict:
        return {"line": self.line, "reason": self.reason, "row": self.row}


@dataclass
class InventoryTable:
    """Records ordered by ``(structure_id, inspection_year)`` with unique keys."""

    records: list[BridgeRecord] = field(default_factory=list)

    def __post_init__(self):
        self.records.sort(key=lambda r: (r.structure_id, r.inspection_year))
        keys = [(r.structure_id, r.inspection_year) for r in self.records]
        if len(set(keys)) != len(keys):
            raise DomainError("duplicate (structure, year) keys")

    def __len__(self):
        return len(self.records)

    def rows(self) -> list[dict]:
        out = []
        for r in self.records:
            row = {
                "structure_id": r.structure_id,
                "inspection_year": r.inspection_year,
                "age": r.age,
                "district": r.district,
                "county": r.county,
                "year_built": r.year_built,
                "aadt": r.aadt,
                "design_load": r.design_load,
                "span_type": r.span_type,
                "skew": r.skew,
                "structure_length": r.structure_length,
                "deck_width": r.deck_width,
            }
            row.update({f"rating_{k}": v for k, v in sorted(r.ratings.items())})
            out.append(row)
        return out


def _int(v: str, name: str) -> int:
    try:
        f = float(v)
    except ValueError:
        raise DomainError(f"{name}: {v!r} is not a number") from None
    if f != int(f):
        raise DomainError(f"{name}: {v!r} is not an integer")
    return int(f)


def _float(v: str, name: str) -> float:
    try:
        f = float(v)
    except ValueError:
        raise DomainError(f"{name}: {v!r} is not a number") from None
    if f != f or f in (float("inf"), float("-inf")):
        raise DomainError(f"{name}: {v!r} is not finite")
    return f


def _parse_row(row: dict, columns: dict, ratings: dict) -> BridgeRecord:
    vals = {}
    for key, col in list(columns.items()) + list(ratings.items()):
        v = (row.get(col) or "").strip()
        if v == "":
            raise DomainError(f"missing value for {col!r}")
        vals[key] = v
    skew = _float(vals["skew"], "skew")
    if not 0 <= skew <= 90:
        raise DomainError(f"skew {skew} outside [0, 90] degrees")
    rating_vals = {}
    for key in ratings:
        r = _int(vals[key], key)
        if not 0 <= r <= 9:
            raise DomainError(f"{key} rating {r} outside 0..9")
        rating_vals[key] = r
    return BridgeRecord(
        structure_id=vals["structure_id"],
        inspection_year=_int(vals["inspection_year"], "inspection_year"),
        district=vals["district"],
        county=vals["county"],
        year_built=_int(vals["year_built"], "year_built"),
        aadt=_float(vals["aadt"], "aadt"),
        design_load=vals["design_load"],
        span_type=vals["span_type"],
        skew=skew,
        structure_length=_float(vals["structure_length"], "structure_length"),
        deck_width=_float(vals["deck_width"], "deck_width"),
        ratings=rating_vals,
    )


def ingest_nbi(
    source: str | TextIO,
    columns: dict | None = None,
    ratings: dict | None = None,
) -> tuple[InventoryTable, list[RejectedRow]]:
    """Parse an inventory CSV into validated records plus a reject report.

    Every data row ends up either as a record or as a :class:`RejectedRow`;
    a later row repeating an accepted ``(structure, year)`` key is rejected.

    Parameters
    ----------
    source : str or file-like
        CSV text (a string containing a newline) or a path, or an open file.
    columns, ratings : dict, optional
        Overrides for :data:`DEFAULT_COLUMNS` and :data:`DEFAULT_RATINGS`.

    Raises
    ------
    SchemaError
        If a mapped column is missing from the header.
    """
    columns = {**DEFAULT_COLUMNS, **(columns or {})}
    ratings = dict(DEFAULT_RATINGS if ratings is None else ratings)
    if isinstance(source, str):
        if "\n" in source:
            handle: TextIO = io.StringIO(source)
        else:
            with open(source, newline="", encoding="utf-8") as fh:
                return ingest_nbi(io.StringIO(fh.read()), columns, ratings)
    else:
        handle = source
    reader = csv.DictReader(handle)
    header = reader.fieldnames or []
    missing = [c for c in list(columns.values()) + list(ratings.values()) if c not in header]
    if missing:
        raise SchemaError(f"missing required columns: {missing}")
    records, rejects, seen = [], [], set()
    for k, row in enumerate(reader):
        line = k + 2
        if None in row:
            rejects.append(RejectedRow(line, "more fields than header columns", _clean(row)))
            continue
        try:
            rec = _parse_row(row, columns, ratings)
        except DomainError as exc:
            rejects.append(RejectedRow(line, str(exc), _clean(row)))
            continue
        key = (rec.structure_id, rec.inspection_year)
        if key in seen:
            rejects.append(RejectedRow(line, f"duplicate inspection {key}", _clean(row)))
            continue
        seen.add(key)
        records.append(rec)
    return InventoryTable(records), rejects


def _clean(row: dict) -> dict:
    return {str(k): v for k, v in row.items() if k is not None}


@dataclass(frozen=True)
class RatingPair:
    structure_id: str
    year: int
    rating_before: int
    rating_after: int


def filter_deterioration_pairs(
    table: InventoryTable, component: str = "structural_evaluation"
) -> tuple[list[RatingPair], int]:
    """Year-to-year rating pairs per structure, dropping improvements.

    Only inspections exactly one year apart form a pair; a missing year
    breaks the chain. Returns the kept pairs and the number dropped because
    the rating increased.
    """
    pairs, dropped = [], 0
    recs: Iterable[BridgeRecord] = table.records
    prev = None
    for r in recs:
        if prev is not None and prev.structure_id == r.structure_id and r.inspection_year == prev.inspection_year + 1:
            a, b = prev.ratings.get(component), r.ratings.get(component)
            if a is not None and b is not None:
                if b > a:
                    dropped += 1
                else:
                    pairs.append(RatingPair(r.structure_id, prev.inspection_year, a, b))
        prev = r
    return pairs, dropped
