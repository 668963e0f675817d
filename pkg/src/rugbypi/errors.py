"""Exception hierarchy.

``DataError`` covers anything wrong with the input file and maps to CLI
exit status 2. ``StatsError`` and ``RipperError`` are raised by the
analysis engines.
"""


class DataError(ValueError):
    pass


class MissingHeader(DataError):
    pass


class UnknownColumn(DataError):
    pass


class PairingViolation(DataError):
    pass


class RangeViolation(DataError):
    pass


class OpponentMismatch(DataError):
    pass


class EmptyStage(DataError):
    pass


class StatsError(ValueError):
    pass


class EmptySample(StatsError):
    pass


class SampleTooSmall(StatsError):
    pass


class SampleTooLarge(StatsError):
    pass


class DegenerateSample(StatsError):
    pass


class AllZeroDifferences(StatsError):
    pass


class LengthMismatch(StatsError):
    pass


class ExactWithTies(StatsError):
    pass


class OutOfRange(StatsError):
    pass


class RipperError(ValueError):
    pass


class NotBinary(RipperError):
    pass


class EmptyDataset(RipperError):
    pass
