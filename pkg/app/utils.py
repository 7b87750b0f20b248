from __future__ import annotations

import logging
from typing import Iterable, Tuple

import numpy as np

LOGGER_NAME = "waveguide_scattering"


def setup_logging(level: int = logging.INFO) -> logging.Logger:
    """Configure and return the package logger."""
    logger = logging.getLogger(LOGGER_NAME)
    if not logger.handlers:
        handler = logging.StreamHandler()
        formatter = logging.Formatter(
            fmt="%(asctime)s [%(levelname)s] %(name)s - %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
        )
        handler.setFormatter(formatter)
        logger.addHandler(handler)
    logger.setLevel(level)
    return logger


def parse_grid(text: str) -> Tuple[float, float, int]:
    """Parse a ``min:max:points`` grid specification.

    Example:
        parse_grid("-5:5:201") -> (-5.0, 5.0, 201)
    """
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must look like min:max:points, got '{text}'")
    lower, upper, points = float(parts[0]), float(parts[1]), int(parts[2])
    if points < 2:
        raise ValueError("grid needs at least 2 points")
    if not lower < upper:
        raise ValueError("grid min must be smaller than grid max")
    return lower, upper, points


def max_abs(values: Iterable[complex]) -> float:
    """Largest modulus in ``values`` (0.0 for an empty iterable)."""
    array = np.asarray(list(values), dtype=complex)
    return float(np.max(np.abs(array))) if array.size else 0.0
