"""Error types raised by the trip-planning engine.

Every error carries a stable ``code`` (the class name) so the HTTP service
and CLI can report machine-readable failures without string matching.
"""


class OptimileError(Exception):
    """Base class for all engine errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


# --- network loading ---------------------------------------------------------

class DuplicateStopId(OptimileError):
    """A stop id appears more than once in the stop table."""


class UnknownStopInRoute(OptimileError):
    """A route references a stop id missing from the stop table."""


class RouteTooShort(OptimileError):
    """A route visits fewer than two stops."""


class NonPositiveLegTime(OptimileError):
    """A route leg has a zero or negative travel time."""


class InvalidGridShape(OptimileError):
    """Synthetic grid dimensions or spacing are out of range."""


# --- geometry / graph --------------------------------------------------------

class NegativeDistance(OptimileError):
    """A distance argument was negative."""


class UnknownStop(OptimileError):
    """A stop id was looked up that the network does not contain."""


class DegenerateNetwork(OptimileError):
    """The network is too small for the requested statistic."""


class DegenerateBox(OptimileError):
    """A bounding box has zero or negative extent."""


# --- planning ----------------------------------------------------------------

class WeightConstraintViolated(OptimileError):
    """Cost weights do not satisfy w_lm + w_pt = 1 with both positive."""


class NoCandidateStops(OptimileError):
    """No transit stop lies within first/last-mile range of an endpoint."""


class NoConnection(OptimileError):
    """No transit connection exists between any candidate stop pair."""


class FareInfeasible(OptimileError):
    """Connections exist but every one breaches the fare cap."""


# --- scoring -----------------------------------------------------------------

class ZeroCost(OptimileError):
    """A plan's generalized cost is zero; convenience is undefined."""


class ZeroFare(OptimileError):
    """A plan's fare is zero; cost effectiveness is undefined."""


class EmptySet(OptimileError):
    """An operation over a set of plans or scores received none."""


class NoComparablePairs(OptimileError):
    """No trip pair succeeded in both restricted and unrestricted modes."""
