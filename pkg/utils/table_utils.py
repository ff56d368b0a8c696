#!/usr/bin/env python3
"""
Tabular rendering and spreadsheet export of series and verification reports.
"""

import logging
import os
from typing import Iterable, Optional

import pandas as pd

try:
    import openpyxl
except ImportError:
    openpyxl = None

from utils.errors import ConfigurationError, ParseError
from utils.genera import ScalarSeries
from utils.pipelines import VerificationResult
from utils.pontrjagin import PontSeries


# Get logger for this module
logger = logging.getLogger(__name__)

SERIES_COLUMNS = ["n", "label", "half_degree", "coefficient"]


def series_frame(series: PontSeries) -> pd.DataFrame:
    """
    Long-form table of a series: one row per (n, basis element), n ascending
    and basis in declared order. Zero coefficients are listed as "0".
    """
    rows = []
    for n, term in enumerate(series.terms):
        values = term.as_dict()
        for index, (label, half) in enumerate(term.module.basis):
            value = values.get(index)
            rows.append([n, label, half, str(value) if value is not None else "0"])
    return pd.DataFrame(rows, columns=SERIES_COLUMNS)


def scalar_frame(series: ScalarSeries) -> pd.DataFrame:
    """Table n -> coefficient of a scalar series."""
    return pd.DataFrame(
        [[n, str(c)] for n, c in enumerate(series.coefficients)],
        columns=["n", "coefficient"],
    )


def report_frame(results: Iterable[VerificationResult]) -> pd.DataFrame:
    """Table of verification results with the first discrepancy, if any."""
    rows = []
    for result in results:
        discrepancy = result.discrepancy
        rows.append(
            {
                "identity": result.identity,
                "status": "PASS" if result.passed else "FAIL",
                "n": discrepancy.n if discrepancy else None,
                "label": discrepancy.label if discrepancy else None,
                "left": discrepancy.left if discrepancy else None,
                "right": discrepancy.right if discrepancy else None,
                "detail": result.detail,
            }
        )
    return pd.DataFrame(rows, columns=["identity", "status", "n", "label", "left", "right", "detail"])


def render_text(df: pd.DataFrame) -> str:
    """Plain-text table without the index column."""
    if df.empty:
        return "(empty)"
    return df.to_string(index=False)


def _format_workbook(file_path: str, sheet_name: str) -> None:
    """Turn the written sheet into a filterable table with sized columns."""
    from openpyxl.worksheet.table import Table, TableStyleInfo

    wb = openpyxl.load_workbook(file_path)
    ws = wb[sheet_name]
    if ws.max_row > 1 and ws.max_column > 0:
        table_ref = f"A1:{ws.cell(ws.max_row, ws.max_column).coordinate}"
        table = Table(displayName=f"Table_{sheet_name.replace(' ', '')}", ref=table_ref)
        table.tableStyleInfo = TableStyleInfo(
            name="TableStyleMedium16",
            showFirstColumn=False,
            showLastColumn=False,
            showRowStripes=False,
            showColumnStripes=False,
        )
        ws.add_table(table)

    for column in ws.columns:
        max_length = max(len(str(cell.value)) if cell.value is not None else 0 for cell in column)
        ws.column_dimensions[column[0].column_letter].width = min(max_length + 2, 80)
    wb.save(file_path)


def export_frame(df: pd.DataFrame, file_path: str, sheet_name: Optional[str] = "Series") -> None:
    """
    Write a table to CSV or XLSX, chosen by the file extension.

    Raises:
        ConfigurationError: For an unsupported extension or missing openpyxl
        ParseError: If the file cannot be written
    """
    extension = os.path.splitext(file_path)[1].lower()
    if extension not in (".csv", ".xlsx"):
        raise ConfigurationError(f"unsupported output extension {extension!r}; use .csv or .xlsx")
    if extension == ".xlsx" and openpyxl is None:
        raise ConfigurationError("openpyxl is required for Excel export")
    try:
        if extension == ".csv":
            df.to_csv(file_path, index=False)
        else:
            with pd.ExcelWriter(file_path, engine='openpyxl') as writer:
                df.to_excel(writer, sheet_name=sheet_name, index=False)
            _format_workbook(file_path, sheet_name)
    except OSError as e:
        raise ParseError(f"cannot write {file_path}: {e}") from e
    logger.info(f"Wrote {len(df)} rows to {file_path}")
