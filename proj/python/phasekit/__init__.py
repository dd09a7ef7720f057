"""Generalized oscillator algebras, phase states and mutually unbiased bases."""

from ._phasekit import (
    DomainError,
    Kappa,
    PhaseState,
    Representation,
    commutator_residual,
    dimension,
    energies,
    evolve,
    gauss_sum,
    mub_set,
    mub_state_finite,
    mub_state_truncated,
    overlap,
    phase_operator,
    phase_operator_infinite_cutoff,
    phase_states,
    potential_report,
    representation,
    structure_function,
    theta_phase_state,
    truncation_order,
    verify,
    vs_phase_states,
)

__all__ = [name for name in dir() if not name.startswith("_")]
