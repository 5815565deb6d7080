"""Script used to read microdata and role configuration from disk"""

import logging

import pandas as pd

from src.microagg.config.microagg_config import CLUSTER_ID_COLUMN
from src.microagg.etl.clean import clean_column_names, clean_microdata_df
from src.microagg.exceptions import DataError
from src.microagg.table import AnonymizedTable, AttributeSpec, Role, Table

logger = logging.getLogger(__name__)


def load_roles_config(path):
    """Function used to read a roles file with one "column=role" entry per line.

    Blank lines and lines starting with "#" are skipped.

    Args:
        path (str | pathlib.Path): roles file

    Returns:
        specs (tuple): AttributeSpec per declared column, in file order
    """
    specs = []
    seen = set()
    with open(path, encoding="utf-8") as roles_file:
        for line_no, line in enumerate(roles_file, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise DataError(f"Roles file line {line_no}: expected 'column=role', got {line!r}")
            name, role_name = (token.strip() for token in line.split("=", 1))
            try:
                role = Role(role_name.lower())
            except ValueError as err:
                valid = ", ".join(role.value for role in Role)
                raise DataError(f"Roles file line {line_no}: unknown role {role_name!r} (expected {valid})") from err
            if name in seen:
                raise DataError(f"Roles file line {line_no}: column {name!r} declared twice")
            seen.add(name)
            specs.append(AttributeSpec(name, role))
    return tuple(specs)


def order_specs(specs):
    """Function used to put specs in table order: quasi-identifiers, confidential, ignored."""
    rank = {Role.QUASI_IDENTIFIER: 0, Role.CONFIDENTIAL: 1, Role.IGNORED: 2}
    return tuple(sorted(specs, key=lambda spec: rank[spec.role]))


def read_raw_csv(path):
    """Function used to read a CSV file keeping every cell as text."""
    try:
        raw_df = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
    except pd.errors.EmptyDataError as err:
        raise DataError(f"{path} holds no header row") from err
    except UnicodeDecodeError as err:
        raise DataError(f"{path} is not UTF-8 text: invalid byte at offset {err.start}") from err
    except pd.errors.ParserError as err:
        raise DataError(f"{path} is not a well-formed CSV file: {err}") from err
    return clean_column_names(raw_df)


def check_columns(raw_df, specs, allowed_extra=()):
    """Function used to check the CSV header against the declared roles."""
    declared = [spec.name for spec in specs]
    unknown = [col for col in raw_df.columns if col not in declared and col not in allowed_extra]
    if unknown:
        raise DataError(f"Unknown column(s) {unknown}: not declared in the roles config")
    missing = [name for name in declared if name not in raw_df.columns]
    if missing:
        raise DataError(f"Column(s) {missing} declared in the roles config are not in the file header")


def load_csv(path, roles, drop_missing=False):
    """Function used to load a microdata CSV file into a Table.

    Args:
        path (str | pathlib.Path): UTF-8 comma separated file with a header row
        roles (Sequence[AttributeSpec]): role of every column in the file
        drop_missing (bool): drop rows with missing or unparseable cells instead of failing

    Returns:
        table (Table): table with columns ordered quasi-identifiers, confidential, ignored
    """
    specs = order_specs(roles)
    raw_df = read_raw_csv(path)
    check_columns(raw_df, specs)

    names = [spec.name for spec in specs]
    cleaned_df = clean_microdata_df(raw_df, names, drop_missing=drop_missing)
    logger.debug("Loaded %d records from %s", len(cleaned_df), path)
    return Table(specs, cleaned_df)


def load_anonymized_csv(path, roles):
    """Function used to load a released CSV file, including its cluster id column."""
    specs = order_specs(roles)
    raw_df = read_raw_csv(path)
    if CLUSTER_ID_COLUMN not in raw_df.columns:
        raise DataError(f"{path} has no '{CLUSTER_ID_COLUMN}' column")
    check_columns(raw_df, specs, allowed_extra=(CLUSTER_ID_COLUMN,))

    names = [spec.name for spec in specs]
    cleaned_df = clean_microdata_df(raw_df, names + [CLUSTER_ID_COLUMN])
    cluster_ids = cleaned_df.pop(CLUSTER_ID_COLUMN)
    if not (cluster_ids == cluster_ids.round()).all():
        raise DataError(f"'{CLUSTER_ID_COLUMN}' must hold integers")
    return AnonymizedTable(Table(specs, cleaned_df), cluster_ids.to_numpy(dtype=int))
