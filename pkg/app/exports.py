"""
File exports for computed tables and verification reports.

CSV: UTF-8, header row, complex columns split into ``<name>_re`` / ``<name>_im``,
every number printed with 17 significant digits so doubles round-trip.
JSON: ``{"columns": [...], "rows": [[...], ...]}`` with the same split.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import List, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel

from app.config import SUPPORTED_FORMATS
from app.core import ExportError
from app.utils import setup_logging

logger = setup_logging()

Number = Union[float, complex]

CSV_NUMBER_FORMAT = "%.17g"


def _ensure_parent(path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)


def _split_complex(
    columns: Sequence[str], rows: Sequence[Sequence[Number]]
) -> Tuple[List[str], np.ndarray]:
    """Expand complex columns into real/imaginary pairs."""
    data = np.asarray(rows, dtype=complex).reshape(len(rows), len(columns))
    headers: List[str] = []
    blocks: List[np.ndarray] = []
    for index, name in enumerate(columns):
        column = data[:, index]
        if np.any(column.imag != 0.0) or _is_complex_column(rows, index):
            headers.extend([f"{name}_re", f"{name}_im"])
            blocks.extend([column.real, column.imag])
        else:
            headers.append(name)
            blocks.append(column.real)
    return headers, np.column_stack(blocks) if blocks else np.empty((0, 0))


def _is_complex_column(rows: Sequence[Sequence[Number]], index: int) -> bool:
    return any(isinstance(row[index], (complex, np.complexfloating)) for row in rows)


def write_table(
    path: Union[str, Path],
    columns: Sequence[str],
    rows: Sequence[Sequence[Number]],
    fmt: str = "csv",
) -> Path:
    """Write a table of numbers as CSV or JSON.

    Args:
        path: Output file; parent directories are created.
        columns: Column names.
        rows: One sequence of numbers per row, aligned with ``columns``.
        fmt: "csv" or "json".

    Returns:
        The path written.

    Raises:
        ExportError: If the file cannot be written or the format is unknown.
    """
    path = Path(path)
    if fmt not in SUPPORTED_FORMATS:
        raise ExportError(str(path), f"unsupported format '{fmt}'")
    headers, matrix = _split_complex(columns, rows)

    try:
        _ensure_parent(path)
        if fmt == "csv":
            np.savetxt(
                path,
                matrix,
                delimiter=",",
                header=",".join(headers),
                comments="",
                fmt=CSV_NUMBER_FORMAT,
                encoding="utf-8",
            )
        else:
            payload = {"columns": headers, "rows": matrix.tolist()}
            with open(path, "w", encoding="utf-8") as f:
                json.dump(payload, f, indent=2)
    except OSError as exc:
        raise ExportError(str(path), str(exc)) from exc

    logger.info("Wrote %d rows to %s", len(rows), path)
    return path


def write_report(path: Union[str, Path], report: BaseModel) -> Path:
    """Write a pydantic model as pretty-printed JSON."""
    path = Path(path)
    try:
        _ensure_parent(path)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(report.model_dump(mode="json"), f, indent=2)
    except OSError as exc:
        raise ExportError(str(path), str(exc)) from exc
    logger.info("Wrote report to %s", path)
    return path
