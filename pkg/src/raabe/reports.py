from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .exact_algebra import Polynomial


@dataclass(frozen=True)
class ResidualReport:
    """Outcome of one exact or sampled residual check.

    ``residual`` is a :class:`Polynomial` for symbolic checks and a list of
    floats for sampled ones.  ``witness`` describes the first failure and is
    ``None`` when the check passed.  ``hypothesis_met`` is only ever False for
    conditional checks whose premise did not hold; such a report makes no
    claim either way.
    """

    is_zero: bool
    residual: Any
    params: dict[str, Any] = field(default_factory=dict)
    witness: dict[str, Any] | None = None
    hypothesis_met: bool = True

    @property
    def passed(self) -> bool:
        return self.hypothesis_met and self.is_zero


def polynomial_report(residual: Polynomial, params: dict[str, Any]) -> ResidualReport:
    """Wrap a residual polynomial, using its lowest nonzero coefficient as witness."""
    if residual.is_zero():
        return ResidualReport(True, residual, params)
    i = next(i for i, c in enumerate(residual.coeffs) if c != 0)
    witness = {"power": i, "coefficient": residual.coeffs[i], "degree": residual.degree}
    return ResidualReport(False, residual, params, witness)
