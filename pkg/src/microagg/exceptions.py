"""Exceptions raised by the microaggregation engine"""


class MicroaggError(Exception):
    """Base class for every error raised by this package."""


class DataError(MicroaggError, ValueError):
    """Input data cannot be turned into a valid table."""


class ParameterError(MicroaggError, ValueError):
    """A numeric parameter lies outside its domain."""


class DistributionError(MicroaggError, ValueError):
    """Distributions or clusters that cannot be compared."""


class PartitionError(MicroaggError, ValueError):
    """Clusters that do not form a disjoint cover of the table."""


class VerificationError(MicroaggError):
    """An anonymized output failed its in-process verification."""
