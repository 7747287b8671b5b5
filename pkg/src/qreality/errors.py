"""Exception types shared across the package."""

from __future__ import annotations


class SpecParseError(ValueError):
    """A state/basis spec string or a state file document could not be parsed."""


class StateValidationError(ValueError):
    """A validated-object invariant failed.

    Carries the name of the violated invariant and the measured residual so
    callers (and the CLI) can produce a precise diagnostic.
    """

    def __init__(self, invariant: str, residual: float, detail: str = ""):
        self.invariant = invariant
        self.residual = float(residual)
        msg = f"invariant '{invariant}' violated (residual {self.residual:.6e})"
        if detail:
            msg = f"{msg}: {detail}"
        super().__init__(msg)
