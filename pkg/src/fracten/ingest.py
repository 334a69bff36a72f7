"""Reading daily OHLCV CSV files and turning prices into log returns."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from datetime import date
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from .errors import BadHeader, DuplicateDate, EmptyInput, NonPositivePrice, TooShort

# role -> header name, Yahoo Finance daily schema
YAHOO_COLUMNS = {
    "date": "Date",
    "open": "Open",
    "high": "High",
    "low": "Low",
    "close": "Close",
    "adj_close": "Adj Close",
    "volume": "Volume",
}

PRICE_ROLES = ("open", "high", "low", "close", "adj_close")
MISSING = {"", "null", "nan", "none", "n/a", "na"}


@dataclass(frozen=True)
class PriceRecord:
    date: date
    close: float
    open: Optional[float] = None
    high: Optional[float] = None
    low: Optional[float] = None
    adj_close: Optional[float] = None
    volume: Optional[float] = None


@dataclass(frozen=True)
class Series:
    """Ordered finite samples with optional per-sample date labels."""

    values: np.ndarray
    labels: Optional[tuple] = None
    name: str = "series"

    def __post_init__(self):
        values = np.array(self.values, dtype=float).ravel()
        if values.size < 1:
            raise TooShort("series must hold at least one value")
        if not np.all(np.isfinite(values)):
            raise ValueError("series values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != values.size:
                raise ValueError(
                    f"{len(labels)} labels for {values.size} values"
                )
            object.__setattr__(self, "labels", labels)

    def __len__(self):
        return self.values.size

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)

    @property
    def date_range(self):
        if not self.labels:
            return None
        return str(self.labels[0]), str(self.labels[-1])


ArrayLike = Union[Series, Sequence[float], np.ndarray]


def as_array(x: ArrayLike) -> np.ndarray:
    """Float64 view of ``x`` (a Series or anything numpy accepts)."""
    if isinstance(x, Series):
        return x.values
    return np.asarray(x, dtype=float).ravel()


@dataclass
class PriceTable:
    records: list = field(default_factory=list)
    dropped: int = 0

    def __len__(self):
        return len(self.records)

    def series(self, column: str = "close", name: str = "prices") -> Series:
        """Price series for one column; records lacking it are skipped."""
        if column not in PRICE_ROLES:
            raise ValueError(f"unknown price column {column!r}")
        rows = [r for r in self.records if getattr(r, column) is not None]
        if not rows:
            raise EmptyInput(f"no values in column {column!r}")
        return Series(
            np.array([getattr(r, column) for r in rows]),
            labels=tuple(r.date.isoformat() for r in rows),
            name=name,
        )


def _number(text: Optional[str]) -> Optional[float]:
    if text is None or text.strip().lower() in MISSING:
        return None
    try:
        value = float(text)
    except ValueError:
        return None
    return value if math.isfinite(value) else None


def _cell(row, cols, role):
    i = cols.get(role)
    return row[i] if i is not None and i < len(row) else None


def parse_csv(
    data: Union[bytes, str],
    column_map: Optional[Mapping[str, str]] = None,
    price_column: str = "close",
) -> PriceTable:
    """Parse a daily OHLCV CSV into date-sorted records.

    Rows whose date or ``price_column`` value is missing, unparsable or
    non-positive are dropped and counted in ``PriceTable.dropped``. Other
    price columns are optional and become ``None`` when absent.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8-sig")
    cmap = dict(YAHOO_COLUMNS if column_map is None else column_map)
    reader = csv.reader(io.StringIO(data))
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise EmptyInput("no header row") from None
    index = {h: i for i, h in enumerate(header)}
    for role in ("date", price_column):
        if cmap.get(role) not in index:
            raise BadHeader(f"required column {cmap.get(role)!r} ({role}) not in header")
    cols = {role: index[name] for role, name in cmap.items() if name in index}

    records, dropped, seen = [], 0, set()
    for row in reader:
        if not row or all(not c.strip() for c in row):
            continue
        try:
            day = date.fromisoformat(_cell(row, cols, "date").strip())
        except (AttributeError, ValueError):
            dropped += 1
            continue
        fields = {role: _number(_cell(row, cols, role)) for role in PRICE_ROLES + ("volume",)}
        target = fields[price_column]
        if target is None or target <= 0:
            dropped += 1
            continue
        if fields["close"] is None or fields["close"] <= 0:
            # close stays mandatory on every record even when reading adj_close
            dropped += 1
            continue
        if day in seen:
            raise DuplicateDate(f"date {day.isoformat()} appears twice")
        seen.add(day)
        records.append(PriceRecord(date=day, **fields))

    if not records:
        raise EmptyInput("no valid rows")
    records.sort(key=lambda r: r.date)
    return PriceTable(records, dropped)


def read_prices(path, column_map=None, price_column="close") -> PriceTable:
    with open(path, "rb") as fh:
        return parse_csv(fh.read(), column_map, price_column)


def log_returns(prices: ArrayLike, name: Optional[str] = None) -> Series:
    """ln(P[t+1] / P[t]); labels move to the later date."""
    p = as_array(prices)
    if p.size < 2:
        raise TooShort("need at least two prices for a return")
    if np.any(p <= 0):
        raise NonPositivePrice("prices must be strictly positive")
    r = np.log(p[1:] / p[:-1])
    labels = None
    if isinstance(prices, Series):
        labels = prices.labels[1:] if prices.labels else None
        name = name or f"{prices.name}_log_returns"
    return Series(r, labels=labels, name=name or "log_returns")


def series_to_csv(series: Series) -> str:
    """Two-column ``date,value`` CSV; the date column is empty without labels."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["date", "value"])
    labels = series.labels or [""] * len(series)
    for lab, v in zip(labels, series.values):
        w.writerow([lab, repr(float(v))])
    return buf.getvalue()


def parse_series_csv(data: Union[bytes, str], name: str = "series") -> Series:
    """Inverse of ``series_to_csv``."""
    if isinstance(data, bytes):
        data = data.decode("utf-8-sig")
    reader = csv.DictReader(io.StringIO(data))
    if reader.fieldnames is None or "value" not in reader.fieldnames:
        raise BadHeader("series CSV needs a 'value' column")
    values, labels = [], []
    for row in reader:
        v = _number(row.get("value"))
        if v is None:
            continue
        values.append(v)
        labels.append((row.get("date") or "").strip())
    if not values:
        raise EmptyInput("no valid rows")
    return Series(np.array(values), labels=tuple(labels) if all(labels) else None, name=name)
