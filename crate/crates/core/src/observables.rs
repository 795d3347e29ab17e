//! Continuum observables derived from `τ(E + i0⁺)`: the scattering
//! amplitude `f`, differential and total target lengths, the s-wave phase
//! shift, and the two-dimensional optical theorem.
//!
//! Sign convention: `L ≥ 0` from both `−Im τ / k` and `sqrt(8π/k)·Im f`
//! forces `Im τ ≤ 0` on the continuum, i.e. `τ = −4 e^{iδ₀} sin δ₀`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::amplitude::Amplitude;
use crate::energy::{wavenumber, ComplexEnergy, PhysicalScales, Wavenumber};
use crate::error::{domain, Error, Result};
use crate::tolerances::{IM_TAU_SIGN, UNITARITY};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringObservables {
    pub energy: f64,
    pub k: Wavenumber,
    /// Units of `sqrt(length)`.
    pub f: Complex64,
    pub dl_dtheta: f64,
    /// `−Im τ / k`.
    pub l_total: f64,
    /// `sqrt(8π/k)·Im f`.
    pub l_optical: f64,
    /// In `(−π/2, π/2]`; 0 for the zero amplitude.
    pub delta0: f64,
    /// `Im(1/τ) − 1/4`; zero for an elastic amplitude.
    pub unitarity_defect: f64,
}

/// `f(E) = −sqrt(1/(8πk))·τ(E + i0⁺)`.
pub fn f_from_tau(tau: &Amplitude, k: Wavenumber) -> Complex64 {
    -(1.0 / (8.0 * PI * k.value())).sqrt() * tau.tau
}

/// `dL/dθ = |f|²`.
pub fn differential_target_length(tau: &Amplitude, k: Wavenumber) -> f64 {
    f_from_tau(tau, k).norm_sqr()
}

/// `L = −Im τ / k`.
pub fn total_target_length(tau: &Amplitude, k: Wavenumber) -> Result<f64> {
    if tau.tau.im > IM_TAU_SIGN {
        return Err(Error::UnitarityViolation { defect: tau.tau.im });
    }
    Ok((-tau.tau.im / k.value()).max(0.0))
}

/// `L = sqrt(8π/k)·Im f`, the optical-theorem route.
pub fn optical_target_length(tau: &Amplitude, k: Wavenumber) -> f64 {
    (8.0 * PI / k.value()).sqrt() * f_from_tau(tau, k).im
}

/// `Im(1/τ) − 1/4`; zero amplitudes count as unitary.
pub fn unitarity_defect(tau: &Amplitude) -> f64 {
    if tau.is_zero() {
        0.0
    } else {
        (1.0 / tau.tau).im - 0.25
    }
}

/// `δ₀ ∈ (−π/2, π/2]` with `τ = −4 e^{iδ₀} sin δ₀`.
pub fn phase_shift_from_tau(tau: &Amplitude) -> Result<f64> {
    if tau.is_zero() {
        return Ok(0.0);
    }
    let defect = unitarity_defect(tau);
    if !(defect.abs() <= UNITARITY) {
        return Err(Error::UnitarityViolation { defect });
    }
    // Re τ = −2 sin 2δ, Im τ = −4 sin²δ, so tan δ = Im τ / Re τ.
    let (re, im) = (tau.tau.re, tau.tau.im);
    if re == 0.0 {
        return Ok(FRAC_PI_2);
    }
    let delta = (im / re).atan();
    Ok(if delta == -FRAC_PI_2 {
        FRAC_PI_2
    } else {
        delta
    })
}

/// `τ = −4 e^{iδ} sin δ`.
pub fn tau_from_phase_shift(delta: f64) -> Amplitude {
    Amplitude::new(-4.0 * Complex64::from_polar(delta.sin(), delta))
}

/// `∫₀^{2π} |f|² dθ − sqrt(8π/k)·Im f = 2π|f|² − sqrt(8π/k)·Im f`.
pub fn optical_theorem_defect(tau: &Amplitude, k: Wavenumber) -> f64 {
    2.0 * PI * differential_target_length(tau, k) - optical_target_length(tau, k)
}

/// Everything above at one continuum point.
pub fn observables(
    tau: &Amplitude,
    z: ComplexEnergy,
    scales: PhysicalScales,
) -> Result<ScatteringObservables> {
    if !z.is_continuum() {
        return Err(domain(format!(
            "observables exist only on the continuum, got z = {z}"
        )));
    }
    let k = wavenumber(z.re(), scales)?;
    Ok(ScatteringObservables {
        energy: z.re(),
        k,
        f: f_from_tau(tau, k),
        dl_dtheta: differential_target_length(tau, k),
        l_total: total_target_length(tau, k)?,
        l_optical: optical_target_length(tau, k),
        delta0: phase_shift_from_tau(tau)?,
        unitarity_defect: unitarity_defect(tau),
    })
}
