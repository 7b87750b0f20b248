"""
Physical parameters of the two-level impurity.

Units follow the usual waveguide convention v_g = hbar = 1, so momenta and
energies share one unit. The linewidth Gamma equals the squared coupling V**2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from app.core.errors import InvalidParametersError

DEFAULT_OMEGA = 0.0
DEFAULT_GAMMA = 1.0


@dataclass(frozen=True)
class ImpurityParams:
    """Atom transition energy ``omega`` and resonance width ``gamma``.

    ``coupling`` is derived (V = sqrt(gamma)) and cached at construction.
    """

    omega: float = DEFAULT_OMEGA
    gamma: float = DEFAULT_GAMMA
    coupling: float = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not math.isfinite(self.omega):
            raise InvalidParametersError(f"omega must be finite, got {self.omega!r}")
        if not math.isfinite(self.gamma) or self.gamma <= 0:
            raise InvalidParametersError(f"gamma must be positive and finite, got {self.gamma!r}")
        object.__setattr__(self, "omega", float(self.omega))
        object.__setattr__(self, "gamma", float(self.gamma))
        object.__setattr__(self, "coupling", math.sqrt(self.gamma))

    def detuning(self, energy: float) -> float:
        """Two-photon detuning E - 2*omega."""
        return energy - 2.0 * self.omega


def make_params(omega: float = DEFAULT_OMEGA, gamma: float = DEFAULT_GAMMA) -> ImpurityParams:
    """Build validated impurity parameters.

    Args:
        omega: Atom transition energy.
        gamma: Resonance width, must be positive.

    Returns:
        ImpurityParams with ``coupling = sqrt(gamma)``.

    Raises:
        InvalidParametersError: If gamma <= 0 or either input is not finite.
    """
    try:
        omega_value = float(omega)
        gamma_value = float(gamma)
    except (TypeError, ValueError) as exc:
        raise InvalidParametersError(f"parameters must be real numbers: {exc}") from exc
    return ImpurityParams(omega=omega_value, gamma=gamma_value)
