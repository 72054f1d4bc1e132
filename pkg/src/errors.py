"""
errors.py — Exception hierarchy for the zero-weight engine

Every failure raised by the library derives from ZeroWeightError so callers
(the CLI in particular) can catch one class. Bad-input errors also derive
from ValueError.

Created: 2026-10-02
"""


class ZeroWeightError(Exception):
    """Base class for all engine errors."""


class RootSystemError(ZeroWeightError, ValueError):
    """Unsupported family/rank, or vectors of the wrong rank."""


class WeylGroupCapError(ZeroWeightError):
    """Weyl group order exceeds the configured enumeration cap."""

    def __init__(self, type_name: str, order: int, cap: int):
        super().__init__(
            f"|W({type_name})| = {order} exceeds the enumeration cap {cap} "
            f"(raise ZEROWEIGHT_WEYL_CAP to allow it)"
        )
        self.order = order
        self.cap = cap


class WeightError(ZeroWeightError, ValueError):
    """Weight is not dominant, not in the root lattice, or malformed."""


class ChamberError(ZeroWeightError, ValueError):
    """Chamber enumeration refused (rank cap) or chamber lookup failed."""


class LatticeError(ZeroWeightError, ValueError):
    """Descent lattice construction or reduction failed."""


class SamplingError(ZeroWeightError):
    """Not enough lattice points found within the search radius cap."""


class FitError(ZeroWeightError):
    """A piecewise fit could not be certified.

    Carries the failing certificate (if one was produced) so the caller can
    report the counterexample.
    """

    def __init__(self, message: str, certificate=None):
        super().__init__(message)
        self.certificate = certificate
