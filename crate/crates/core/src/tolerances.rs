//! Numerical thresholds shared by the library, its tests and the CLI checks.

/// `|1 + εI|` (or the slide denominator) below this is reported as a pole.
pub const POLE_THRESHOLD: f64 = 1e-14;

/// Relative step in `ln E` at which the bound-state search stops.
pub const POLE_SEARCH_LOG_TOL: f64 = 1e-13;

/// Flow composition `slide(slide(a, z₁), z₂) = slide(a, z₂)`, relative.
pub const GROUP_PROPERTY: f64 = 1e-12;

/// Direct regulated amplitude vs. slide from another anchor, relative.
pub const ANCHOR_INDEPENDENCE: f64 = 1e-10;

/// Numerically extracted pole residue vs. `4πE_B`, relative.
pub const RESIDUE: f64 = 1e-6;

/// Accepted `|Im(1/τ) − 1/4|` before an amplitude is called non-unitary.
pub const UNITARITY: f64 = 1e-9;

/// Largest `Im τ` tolerated on the continuum (unitarity sign).
pub const IM_TAU_SIGN: f64 = 1e-12;

/// Closed-form spectral integrals vs. adaptive quadrature, relative.
pub const ORACLE_AGREEMENT: f64 = 1e-8;
