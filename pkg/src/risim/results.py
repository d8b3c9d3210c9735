"""
Result files.

Simulated and analytical curves share one row schema and are written as
CSV (provenance metadata on leading ``#`` lines, then the header row) or as
JSON (``{"metadata": ..., "rows": [...]}``). Floats are written with
``repr`` so both forms read back to identical rows.

The gap report lists, for each target BER, the SNR each curve needs to
reach it (log-linear interpolation between grid points) and the difference
between two curves.
"""

from __future__ import annotations

import csv
import io
import json
import math
import platform
from dataclasses import dataclass
from importlib import metadata as importlib_metadata
from pathlib import Path
from typing import TYPE_CHECKING, Any

import cattrs

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

    from .montecarlo import BerCurve
    from .theory import TheoryCurve

HEADER = (
    "scheme",
    "detector",
    "N",
    "n_R",
    "M",
    "kappa",
    "snr_db",
    "ber",
    "ci_lo",
    "ci_hi",
    "bits",
    "errors",
    "source",
)

GAP_HEADER = ("target_ber", "curve_a", "curve_b", "snr_a_db", "snr_b_db", "gap_db")

FORMATS = ("csv", "json")

converter = cattrs.Converter()


class ResultFileError(ValueError):
    """A result file does not follow the row schema."""


@dataclass(frozen=True)
class ResultRow:
    """One point of a curve."""

    scheme: str
    detector: str
    N: int
    n_R: int
    M: int | None
    kappa: float | None
    snr_db: float
    ber: float
    ci_lo: float | None
    ci_hi: float | None
    bits: int | None
    errors: int | None
    source: str

    @property
    def curve_key(self) -> tuple[Any, ...]:
        return (self.source, self.scheme, self.detector, self.N, self.n_R, self.M, self.kappa)

    @property
    def curve_label(self) -> str:
        parts = [f"{self.scheme}-{self.detector}", f"N={self.N}", f"n_R={self.n_R}"]
        if self.M is not None:
            parts.append(f"M={self.M}")
        if self.kappa is not None:
            parts.append(f"kappa={self.kappa:g}")
        parts.append(self.source)
        return " ".join(parts)


_INT_COLUMNS = frozenset({"N", "n_R", "M", "bits", "errors"})
_STR_COLUMNS = frozenset({"scheme", "detector", "source"})


def rows_from_sweep(curve: BerCurve) -> list[ResultRow]:
    """Rows of a simulated curve."""
    plan = curve.plan
    return [
        ResultRow(
            scheme=str(plan.scheme),
            detector=str(plan.detector),
            N=plan.N,
            n_R=plan.n_R,
            M=plan.M,
            kappa=plan.kappa,
            snr_db=record.snr_db,
            ber=record.ber,
            ci_lo=record.ci_lo,
            ci_hi=record.ci_hi,
            bits=record.bits_sent,
            errors=record.bit_errors,
            source="sim",
        )
        for record in curve.records
    ]


def rows_from_theory(curve: TheoryCurve) -> list[ResultRow]:
    """Rows of an analytical curve (no interval, bit or error counts)."""
    req = curve.request
    return [
        ResultRow(
            scheme=str(req.scheme),
            detector=str(req.detector),
            N=req.N,
            n_R=req.n_R,
            M=req.M,
            kappa=None,
            snr_db=snr_db,
            ber=bep,
            ci_lo=None,
            ci_hi=None,
            bits=None,
            errors=None,
            source=str(curve.source),
        )
        for snr_db, bep in zip(curve.snr_grid_db, curve.bep, strict=True)
    ]


def group_curves(rows: Iterable[ResultRow]) -> dict[str, list[ResultRow]]:
    """Split rows into curves, keyed by label, keeping first-seen order."""
    curves: dict[tuple[Any, ...], list[ResultRow]] = {}
    for row in rows:
        curves.setdefault(row.curve_key, []).append(row)
    return {points[0].curve_label: sorted(points, key=lambda r: r.snr_db) for points in curves.values()}


def provenance(**extra: Any) -> dict[str, Any]:
    """Versions of the software that produced a file, plus ``extra``."""
    info: dict[str, Any] = {"python": platform.python_version()}
    for package in ("risim", "numpy", "scipy", "cattrs"):
        try:
            info[package] = importlib_metadata.version(package)
        except importlib_metadata.PackageNotFoundError:
            info[package] = "unknown"
    info.update(extra)
    return info


# CSV


def _format_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _parse_value(column: str, text: str) -> Any:
    if column in _STR_COLUMNS:
        return text
    if text == "":
        return None
    if column in _INT_COLUMNS:
        return int(text)
    return float(text)


def format_csv(rows: Sequence[ResultRow], metadata: dict[str, Any] | None = None) -> str:
    output = io.StringIO()
    for key, value in (metadata or {}).items():
        output.write(f"# {key}: {json.dumps(value, sort_keys=True)}\n")
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(HEADER)
    for row in rows:
        writer.writerow([_format_value(getattr(row, column)) for column in HEADER])
    return output.getvalue()


def parse_csv(text: str) -> tuple[list[ResultRow], dict[str, Any]]:
    """
    Parse CSV result text.

    Returns:
        The rows and the metadata read from the ``#`` lines

    Raises:
        ResultFileError: If the header or a value does not match the schema
    """
    metadata: dict[str, Any] = {}
    body = []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition(": ")
            metadata[key] = json.loads(value) if value else None
        else:
            body.append(line)

    reader = csv.reader(body)
    header = tuple(next(reader, ()))
    if header != HEADER:
        msg = f"Unexpected CSV header: {','.join(header)}"
        raise ResultFileError(msg)
    rows = []
    for values in reader:
        try:
            data = {column: _parse_value(column, text) for column, text in zip(HEADER, values, strict=True)}
        except ValueError as e:
            msg = f"Invalid result row {values}: {e}"
            raise ResultFileError(msg) from e
        rows.append(ResultRow(**data))
    return rows, metadata


def write_csv(path: Path | str, rows: Sequence[ResultRow], metadata: dict[str, Any] | None = None) -> None:
    Path(path).write_text(format_csv(rows, metadata), encoding="utf-8")


def read_csv(path: Path | str) -> tuple[list[ResultRow], dict[str, Any]]:
    return parse_csv(Path(path).read_text(encoding="utf-8"))


# JSON


def format_json(rows: Sequence[ResultRow], metadata: dict[str, Any] | None = None) -> str:
    document = {"metadata": metadata or {}, "rows": converter.unstructure(list(rows))}
    return json.dumps(document, indent=2, sort_keys=False)


def parse_json(text: str) -> tuple[list[ResultRow], dict[str, Any]]:
    try:
        document = json.loads(text)
        rows = converter.structure(document["rows"], list[ResultRow])
    except (json.JSONDecodeError, KeyError, cattrs.BaseValidationError) as e:
        msg = f"Invalid JSON result document: {e}"
        raise ResultFileError(msg) from e
    return rows, document.get("metadata", {})


def write_json(path: Path | str, rows: Sequence[ResultRow], metadata: dict[str, Any] | None = None) -> None:
    Path(path).write_text(format_json(rows, metadata), encoding="utf-8")


def read_json(path: Path | str) -> tuple[list[ResultRow], dict[str, Any]]:
    return parse_json(Path(path).read_text(encoding="utf-8"))


def write_rows(
    path: Path | str, rows: Sequence[ResultRow], metadata: dict[str, Any] | None = None, *, fmt: str = "csv"
) -> None:
    """Write rows in ``fmt`` (``csv`` or ``json``)."""
    if fmt == "json":
        write_json(path, rows, metadata)
    else:
        write_csv(path, rows, metadata)


def read_rows(path: Path | str) -> tuple[list[ResultRow], dict[str, Any]]:
    """Read a CSV or JSON result file, chosen by suffix."""
    if Path(path).suffix == ".json":
        return read_json(path)
    return read_csv(path)


# Gap report


@dataclass(frozen=True)
class GapRow:
    target_ber: float
    curve_a: str
    curve_b: str
    snr_a_db: float | None
    snr_b_db: float | None
    gap_db: float | None


def required_snr(snr_db: Sequence[float], ber: Sequence[float], target: float) -> float | None:
    """
    SNR at which a curve first falls to ``target``.

    Interpolates ``log10(ber)`` linearly in SNR between the two grid points
    bracketing the target. Points with zero BER are skipped.

    Returns:
        The SNR in dB, or None if the curve never crosses the target
    """
    points = [(s, b) for s, b in sorted(zip(snr_db, ber, strict=True)) if b > 0]
    for (s0, b0), (s1, b1) in zip(points, points[1:], strict=False):
        if b0 == target:
            return s0
        if b0 > target >= b1:
            t = (math.log10(target) - math.log10(b0)) / (math.log10(b1) - math.log10(b0))
            return s0 + t * (s1 - s0)
    if points and points[-1][1] == target:
        return points[-1][0]
    return None


def gap_report(
    curves: dict[str, list[ResultRow]],
    targets: Sequence[float],
    pairs: Sequence[tuple[str, str]] | None = None,
) -> list[GapRow]:
    """
    SNR gaps between curves at each target BER.

    Args:
        curves: Curves keyed by label (see :func:`group_curves`)
        targets: Target BER values
        pairs: ``(a, b)`` label pairs; all ordered pairs of distinct curves
            when None

    Returns:
        One row per (target, pair); ``gap_db = snr_a_db - snr_b_db``
    """
    if pairs is None:
        labels = list(curves)
        pairs = [(a, b) for i, a in enumerate(labels) for b in labels[i + 1 :]]
    required = {
        (label, target): required_snr([r.snr_db for r in rows], [r.ber for r in rows], target)
        for label, rows in curves.items()
        for target in targets
    }
    report = []
    for target in targets:
        for a, b in pairs:
            snr_a = required[a, target]
            snr_b = required[b, target]
            gap = snr_a - snr_b if snr_a is not None and snr_b is not None else None
            report.append(GapRow(target, a, b, snr_a, snr_b, gap))
    return report


def write_gaps(path: Path | str, report: Sequence[GapRow]) -> None:
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(GAP_HEADER)
    for row in report:
        writer.writerow([_format_value(getattr(row, column)) for column in GAP_HEADER])
    Path(path).write_text(output.getvalue(), encoding="utf-8")


def gaps_path(out: Path | str) -> Path:
    """``<stem>.gaps.csv`` next to a result file."""
    out = Path(out)
    return out.with_name(f"{out.stem}.gaps.csv")
