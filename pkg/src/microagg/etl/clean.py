"""Clean script for microdata read from CSV files"""

import logging

import numpy as np
import pandas as pd

from src.microagg.exceptions import DataError

logger = logging.getLogger(__name__)


def clean_column_names(raw_df):
    """Function used to strip whitespace around header names."""
    raw_df.columns = [str(col_name).strip() for col_name in raw_df.columns]
    return raw_df


def parse_real(cell):
    """Function used to parse one text cell into a correctly rounded real, NaN when it is not one."""
    # float() accepts digit separators, CSV cells may not hold them
    if "_" in cell:
        return np.nan
    try:
        return float(cell)
    except ValueError:
        return np.nan


def parse_numeric_cells(raw_df, column_names):
    """Function used to parse string cells into reals.

    Every cell reloads to the exact double written by `write_csv`.

    Args:
        raw_df (pandas.DataFrame): dataframe of raw string cells
        column_names (list): columns to parse

    Returns:
        parsed_df (pandas.DataFrame): float columns, NaN where a cell is blank or unparseable
        bad_cells_df (pandas.DataFrame): boolean mask of blank or unparseable cells
    """
    parsed_df = pd.DataFrame(index=raw_df.index)
    for column in column_names:
        stripped = raw_df[column].astype(str).str.strip()
        parsed = stripped.map(parse_real).astype("float64")
        # inf/nan spelled out in the file count as unparseable
        parsed_df[column] = parsed.where(np.isfinite(parsed))

    bad_cells_df = parsed_df.isna()
    return parsed_df, bad_cells_df


def clean_microdata_df(raw_df, column_names, drop_missing=False):
    """Function used to turn raw CSV cells into a numeric dataframe ready for a Table.

    Args:
        raw_df (pandas.DataFrame): dataframe read with every cell as a string
        column_names (list): attribute names in table order
        drop_missing (bool): drop rows holding a blank or unparseable cell instead of failing

    Returns:
        cleaned_df (pandas.DataFrame): float dataframe with columns in table order
    """
    parsed_df, bad_cells_df = parse_numeric_cells(raw_df, column_names)
    bad_rows = bad_cells_df.any(axis=1)

    if bad_rows.any():
        if drop_missing:
            logger.info("Dropping %d of %d rows with missing or unparseable cells", int(bad_rows.sum()), len(raw_df))
        else:
            # data rows are numbered from 1, the header is not counted
            row_position = int(np.flatnonzero(bad_rows.to_numpy())[0])
            column = next(col for col in column_names if bad_cells_df[col].iloc[row_position])
            raw_value = raw_df[column].iloc[row_position]
            raise DataError(f"Row {row_position + 1}, column '{column}': cannot parse {raw_value!r} as a real")

    cleaned_df = parsed_df.loc[~bad_rows, list(column_names)].reset_index(drop=True)
    if len(cleaned_df) == 0:
        raise DataError("No rows left after removing rows with missing values")
    return cleaned_df
