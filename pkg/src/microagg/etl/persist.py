"""Script used to persist tables and run reports to disk"""

import json
import logging
from pathlib import Path

import pandas as pd

from src.microagg.config.microagg_config import REPORT_FIELDS
from src.microagg.exceptions import DataError
from src.microagg.table import AnonymizedTable

logger = logging.getLogger(__name__)


def make_parent_dir(path):
    """Function used to create the directory a file will be written to."""
    Path(path).parent.mkdir(parents=True, exist_ok=True)


def write_csv(table, path):
    """Function used to write a Table or AnonymizedTable as a UTF-8 CSV file.

    An AnonymizedTable gets a trailing cluster id column.

    Args:
        table (Table | AnonymizedTable): data to write
        path (str | pathlib.Path): destination file
    """
    if isinstance(table, AnonymizedTable):
        output_df = table.to_frame()
    else:
        output_df = table.data
    if len(output_df) == 0:
        raise DataError("Refusing to write an empty table")

    make_parent_dir(path)
    output_df.to_csv(path, index=False, encoding="utf-8")
    logger.debug("Wrote %d rows to %s", len(output_df), path)


def write_report(report_dict, path):
    """Function used to write one run report as a flat JSON document."""
    make_parent_dir(path)
    with open(path, "w", encoding="utf-8") as report_file:
        json.dump(report_dict, report_file, indent=2)
        report_file.write("\n")
    logger.debug("Wrote report to %s", path)


def report_rows_to_df(rows):
    """Function used to stack report rows into a dataframe with the documented column order."""
    report_df = pd.DataFrame(rows)
    extra_columns = [col for col in report_df.columns if col not in REPORT_FIELDS]
    return report_df.reindex(columns=REPORT_FIELDS + extra_columns)


def write_reports_csv(report_df, path):
    """Function used to write the aggregate report of a benchmark sweep."""
    make_parent_dir(path)
    report_df.to_csv(path, index=False, encoding="utf-8")
    logger.debug("Wrote %d report rows to %s", len(report_df), path)
