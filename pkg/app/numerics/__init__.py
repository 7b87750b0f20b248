"""
Quadrature infrastructure.

Modules:
- specs: tolerance and wavepacket specifications
- quadrature: complex adaptive, Fourier-weighted and principal-value integrals
- wavepackets: Gaussian smearing of delta-normalized overlaps

``wavepackets`` depends on the state modules, which themselves integrate
through this package, so import it directly:
``from app.numerics.wavepackets import smeared_overlap``.
"""

from app.numerics.specs import BOX_EDGE_WEIGHT_LIMIT, QuadratureSpec, WavepacketSpec
from app.numerics.quadrature import integrate, integrate_fourier, pv_integrate

__all__ = [
    "BOX_EDGE_WEIGHT_LIMIT",
    "QuadratureSpec",
    "WavepacketSpec",
    "integrate",
    "integrate_fourier",
    "pv_integrate",
]
