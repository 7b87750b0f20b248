"""Two-photon momentum labels and their (E, Delta) views."""

from __future__ import annotations

import math
from dataclasses import dataclass

from app.core.errors import InvalidParametersError


@dataclass(frozen=True)
class MomentumPair:
    """A two-photon label (k, p).

    The dual view is the total energy ``E = k + p`` and the half energy
    difference ``delta = (k - p) / 2``; the change of variables has unit
    Jacobian. ``E`` is conjugate to the center of mass x_c and ``delta`` to the
    relative coordinate x.
    """

    k: float
    p: float

    @property
    def energy(self) -> float:
        return self.k + self.p

    @property
    def delta(self) -> float:
        return 0.5 * (self.k - self.p)

    @property
    def is_ordered(self) -> bool:
        """Canonicalization flag: True when k <= p."""
        return self.k <= self.p

    @property
    def is_degenerate(self) -> bool:
        return self.k == self.p

    def swapped(self) -> "MomentumPair":
        return MomentumPair(self.p, self.k)

    def canonical(self) -> "MomentumPair":
        return self if self.is_ordered else self.swapped()

    @classmethod
    def from_energy(cls, energy: float, delta: float) -> "MomentumPair":
        """Rebuild (k, p) from (E, delta): k = E/2 + delta, p = E/2 - delta."""
        _require_finite(energy=energy, delta=delta)
        return cls(0.5 * energy + delta, 0.5 * energy - delta)


def momentum_views(k: float, p: float) -> MomentumPair:
    """Return the label (k, p) with its (E, delta) views.

    Raises:
        InvalidParametersError: If k or p is not finite.
    """
    _require_finite(k=k, p=p)
    return MomentumPair(float(k), float(p))


def _require_finite(**values: float) -> None:
    for name, value in values.items():
        if not math.isfinite(value):
            raise InvalidParametersError(f"{name} must be finite, got {value!r}")
