//! Numerical laboratory for two-body scattering with a two-dimensional
//! contact interaction.
//!
//! The unregulated interaction has an identically vanishing amplitude; any
//! bound-state scale appears only once a regulator supplies one. The crate
//! computes both sides of that statement exactly and checks them against
//! brute-force oracles.

// Negated comparisons are how NaN inputs get rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod amplitude;
pub mod energy;
pub mod error;
pub mod observables;
pub mod oracle;
pub mod regulators;
pub mod special;
pub mod tolerances;

pub use amplitude::{
    bound_state_pole, slide, tau_regulated, tau_renormalized, theorem_limit_demo,
    transmutation_limit_demo, Amplitude, BoundState, Coupling, FlowPoint, Provenance,
    TransmutationStep,
};
pub use energy::{principal_log_ratio, wavenumber, ComplexEnergy, PhysicalScales, Wavenumber};
pub use error::{Error, Result};
pub use observables::{
    f_from_tau, observables, optical_theorem_defect, phase_shift_from_tau, total_target_length,
    ScatteringObservables,
};
pub use regulators::{
    decay_amplitude, g_function, i_function, slide_kernel, spectral_weight, Regulator,
};
