"""
Containers for two-photon and photon-plus-excited-atom amplitudes.

Coordinates: x_c = (x1 + x2) / 2 is the center of mass and x = x1 - x2 the
relative coordinate. Evaluators accept scalars or numpy arrays and broadcast.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Tuple, Union

import numpy as np

ArrayLike = Union[float, np.ndarray]
ComplexLike = Union[complex, np.ndarray]


def sgn(x: ArrayLike) -> ArrayLike:
    """Sign function with sgn(0) = 0."""
    return np.sign(x)


def step(x: ArrayLike) -> ArrayLike:
    """Heaviside step with the two-sided average 1/2 at the jump."""
    return np.heaviside(x, 0.5)


def to_relative(x1: ArrayLike, x2: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
    return 0.5 * (np.asarray(x1) + np.asarray(x2)), np.asarray(x1) - np.asarray(x2)


def to_positions(x_c: ArrayLike, x: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
    return np.asarray(x_c) + 0.5 * np.asarray(x), np.asarray(x_c) - 0.5 * np.asarray(x)


@dataclass(frozen=True)
class TwoPhotonAmplitude:
    """A closed-form two-photon wavefunction g(x_c, x).

    Attributes:
        evaluator: Map (x_c, x) -> complex, numpy-broadcastable.
        tag: Channel/provenance tag, e.g. ``"S"`` or ``"bethe-out"``.
        symmetric: True when the object claims g(x_c, -x) == g(x_c, x).
    """

    evaluator: Callable[[ArrayLike, ArrayLike], ComplexLike]
    tag: str = ""
    symmetric: bool = True

    def __call__(self, x_c: ArrayLike, x: ArrayLike) -> ComplexLike:
        return self.evaluator(x_c, x)

    def sample(self, xc_values: np.ndarray, x_values: np.ndarray) -> np.ndarray:
        """Evaluate on the tensor grid; rows follow ``xc_values``."""
        xc_grid, x_grid = np.meshgrid(
            np.asarray(xc_values, dtype=float), np.asarray(x_values, dtype=float), indexing="ij"
        )
        return np.asarray(self.evaluator(xc_grid, x_grid), dtype=complex)

    def symmetry_defect(self, x_c: ArrayLike, x: ArrayLike) -> float:
        """Largest |g(x_c, x) - g(x_c, -x)| over the given points."""
        values = np.asarray(self.evaluator(x_c, x)) - np.asarray(self.evaluator(x_c, -np.asarray(x)))
        return float(np.max(np.abs(values)))


@dataclass(frozen=True)
class ExponentialTerm:
    """``coefficient * exp(i * wavenumber * x)``; the wavenumber may be complex."""

    coefficient: complex
    wavenumber: complex

    def value(self, x: ArrayLike) -> ComplexLike:
        return self.coefficient * np.exp(1j * self.wavenumber * np.asarray(x))

    def derivative(self, x: ArrayLike) -> ComplexLike:
        return 1j * self.wavenumber * self.value(x)


def _sum_terms(terms: Tuple[ExponentialTerm, ...], x: ArrayLike, derivative: bool) -> ComplexLike:
    total: ComplexLike = np.zeros_like(np.asarray(x, dtype=float), dtype=complex)
    for term in terms:
        total = total + (term.derivative(x) if derivative else term.value(x))
    return total


@dataclass(frozen=True)
class ExcitationAmplitude:
    """Piecewise amplitude e(x): one photon at x, the atom excited.

    Each side is a finite sum of exponentials, so derivatives are exact. The
    single jump location is x = 0, where evaluation returns the two-sided
    average.
    """

    left: Tuple[ExponentialTerm, ...]
    right: Tuple[ExponentialTerm, ...]
    tag: str = ""
    jump_location: float = 0.0

    def one_sided(self, x: ArrayLike, side: str, derivative: bool = False) -> ComplexLike:
        terms = self.left if side == "left" else self.right
        return _sum_terms(terms, np.asarray(x, dtype=float) - self.jump_location, derivative)

    def _piecewise(self, x: ArrayLike, derivative: bool) -> ComplexLike:
        x_arr = np.asarray(x, dtype=float)
        left = self.one_sided(x_arr, "left", derivative)
        right = self.one_sided(x_arr, "right", derivative)
        shifted = x_arr - self.jump_location
        result = np.where(shifted < 0, left, np.where(shifted > 0, right, 0.5 * (left + right)))
        return result[()] if result.ndim == 0 else result

    def __call__(self, x: ArrayLike) -> ComplexLike:
        return self._piecewise(x, derivative=False)

    def derivative(self, x: ArrayLike) -> ComplexLike:
        return self._piecewise(x, derivative=True)

    def jump(self) -> complex:
        """e(0+) - e(0-)."""
        return complex(
            self.one_sided(self.jump_location, "right") - self.one_sided(self.jump_location, "left")
        )

    def is_continuous(self, tolerance: float = 1e-12) -> bool:
        return abs(self.jump()) <= tolerance
