"""
Two-photon machinery of the interacting (even) channel.

Modules:
- basis: S, A, W and bound basis wavefunctions
- states: Bethe and bound eigenstates, boundary residuals, in/out read-off
- smatrix: eigenvalues, background fluorescence, S-matrix elements
- overlaps: distributional overlaps and the completeness residual
"""

from app.bethe.basis import (
    BasisKind,
    BasisState,
    a_basis,
    bound_basis,
    relative_envelope,
    s_basis,
    w_basis,
)
from app.bethe.states import (
    BetheCoefficients,
    BetheState,
    BoundInteractingState,
    BoundaryResiduals,
    InteractingState,
    boundary_residuals,
    build_bethe_state,
    build_bound_state,
    in_state,
    out_state,
)
from app.bethe.smatrix import (
    BackgroundSplit,
    ChannelKind,
    ScatteringChannel,
    SMatrixElement,
    background_B,
    background_split,
    bound_eigenvalue,
    channel_eigenvalue,
    correlated_envelope,
    out_state_relative,
    resum_background,
    s_ee_element,
)
from app.bethe.overlaps import (
    Overlap,
    OverlapKernel,
    bound_projection,
    completeness_residual,
    overlap,
    overlap_kernel,
    projection_integral,
)

__all__ = [
    "BackgroundSplit",
    "BasisKind",
    "BasisState",
    "BetheCoefficients",
    "BetheState",
    "BoundInteractingState",
    "BoundaryResiduals",
    "ChannelKind",
    "InteractingState",
    "Overlap",
    "OverlapKernel",
    "SMatrixElement",
    "ScatteringChannel",
    "a_basis",
    "background_B",
    "background_split",
    "bound_basis",
    "bound_eigenvalue",
    "bound_projection",
    "boundary_residuals",
    "build_bethe_state",
    "build_bound_state",
    "channel_eigenvalue",
    "completeness_residual",
    "correlated_envelope",
    "in_state",
    "out_state",
    "out_state_relative",
    "overlap",
    "overlap_kernel",
    "projection_integral",
    "relative_envelope",
    "resum_background",
    "s_basis",
    "s_ee_element",
    "w_basis",
]
