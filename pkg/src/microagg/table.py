"""Tabular data model: attribute roles, tables, anonymized tables and normalization"""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Sequence, Tuple

import numpy as np
import pandas as pd

from src.microagg.config.microagg_config import (
    CLUSTER_ID_COLUMN,
    CONFIDENTIAL_ROLE,
    IGNORED_ROLE,
    QI_ROLE,
)
from src.microagg.exceptions import DataError
from src.utility.functions import minmax_scale


class Role(str, Enum):
    QUASI_IDENTIFIER = QI_ROLE
    CONFIDENTIAL = CONFIDENTIAL_ROLE
    IGNORED = IGNORED_ROLE


@dataclass(frozen=True)
class AttributeSpec:
    name: str
    role: Role


@dataclass(frozen=True, eq=False)
class Table:
    """Microdata set of n records over real-valued attributes with role tags.

    The frame is copied on construction, indexed 0..n-1 and cast to float64; record
    indices used by clusters and partitions are row positions in this frame.
    """

    specs: Tuple[AttributeSpec, ...]
    data: pd.DataFrame

    def __post_init__(self):
        specs = tuple(self.specs)
        names = [spec.name for spec in specs]
        if len(set(names)) != len(names):
            raise DataError(f"Duplicate attribute names in {names}")
        if list(self.data.columns) != names:
            raise DataError(f"Columns {list(self.data.columns)} do not match attribute specs {names}")

        roles = [spec.role for spec in specs]
        if Role.QUASI_IDENTIFIER not in roles:
            raise DataError("A table needs at least one quasi-identifier attribute")
        if roles.count(Role.CONFIDENTIAL) != 1:
            raise DataError(f"A table needs exactly one confidential attribute, got {roles.count(Role.CONFIDENTIAL)}")
        if len(self.data) < 1:
            raise DataError("A table needs at least one record")

        try:
            data = self.data.reset_index(drop=True).astype("float64")
        except (TypeError, ValueError) as err:
            raise DataError(f"Non-numeric cells in table: {err}") from err
        if data.isna().any().any():
            raise DataError("Tables cannot hold missing cells")

        object.__setattr__(self, "specs", specs)
        object.__setattr__(self, "data", data)

    @property
    def n(self) -> int:
        return len(self.data)

    @property
    def qi_names(self) -> Tuple[str, ...]:
        return tuple(spec.name for spec in self.specs if spec.role == Role.QUASI_IDENTIFIER)

    @property
    def confidential_name(self) -> str:
        return next(spec.name for spec in self.specs if spec.role == Role.CONFIDENTIAL)

    @property
    def released_names(self) -> Tuple[str, ...]:
        return tuple(spec.name for spec in self.specs if spec.role != Role.IGNORED)

    @cached_property
    def qi_matrix(self) -> np.ndarray:
        return self.data[list(self.qi_names)].to_numpy(dtype=float)

    @cached_property
    def confidential_values(self) -> np.ndarray:
        return self.data[self.confidential_name].to_numpy(dtype=float)

    @cached_property
    def confidential_order(self) -> np.ndarray:
        """Record indices sorted by (confidential value, record index)."""
        return np.argsort(self.confidential_values, kind="stable")

    def with_qi_values(self, qi_matrix: np.ndarray) -> "Table":
        """Function used to build a copy of the table with its quasi-identifier cells replaced."""
        data = self.data.copy()
        data[list(self.qi_names)] = qi_matrix
        return Table(self.specs, data)

    def equals(self, other: "Table", atol: float = 1e-9) -> bool:
        """Function used to compare two tables value by value."""
        if self.specs != other.specs or self.n != other.n:
            return False
        return bool(np.allclose(self.data.to_numpy(), other.data.to_numpy(), rtol=0.0, atol=atol))


@dataclass(frozen=True, eq=False)
class AnonymizedTable:
    """Table whose quasi-identifiers have been replaced by cluster centroids."""

    table: Table
    cluster_ids: np.ndarray

    def __post_init__(self):
        cluster_ids = np.asarray(self.cluster_ids, dtype=int)
        if cluster_ids.shape != (self.table.n,):
            raise DataError(f"Expected {self.table.n} cluster ids, got {cluster_ids.shape[0]}")
        object.__setattr__(self, "cluster_ids", cluster_ids)

    @property
    def n(self) -> int:
        return self.table.n

    def to_frame(self) -> pd.DataFrame:
        """Function used to return the release as a dataframe with a trailing cluster id column."""
        return self.table.data.assign(**{CLUSTER_ID_COLUMN: self.cluster_ids})


@dataclass(frozen=True, eq=False)
class NormalizationParams:
    """Per quasi-identifier min/max taken from the original table."""

    names: Tuple[str, ...]
    mins: np.ndarray
    maxs: np.ndarray

    def normalize(self, qi_matrix: np.ndarray) -> np.ndarray:
        """Function used to map quasi-identifier values onto [0, 1]; degenerate ranges map to 0."""
        return minmax_scale(qi_matrix, self.mins, self.maxs)


def make_specs(qi_names: Sequence[str], confidential_name: str, ignored_names: Sequence[str] = ()):
    """Function used to build attribute specs in the order QIs, confidential, ignored."""
    specs = [AttributeSpec(name, Role.QUASI_IDENTIFIER) for name in qi_names]
    specs.append(AttributeSpec(confidential_name, Role.CONFIDENTIAL))
    specs += [AttributeSpec(name, Role.IGNORED) for name in ignored_names]
    return tuple(specs)


def minmax_params(table: Table) -> NormalizationParams:
    """Function used to freeze the per quasi-identifier ranges of the original table."""
    qi_matrix = table.qi_matrix
    return NormalizationParams(
        names=table.qi_names,
        mins=qi_matrix.min(axis=0),
        maxs=qi_matrix.max(axis=0),
    )
