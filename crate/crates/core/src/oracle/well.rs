//! Exact s-wave solution of the attractive circular well
//! `V(r) = −V₀` for `r < a`, 0 outside.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::amplitude::find_root_in_log;
use crate::energy::{PhysicalScales, Wavenumber};
use crate::error::{domain, Error, Result};
use crate::oracle::bessel::{jy, k_scaled};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellParameters {
    pub radius: f64,
    /// Depth `V₀ > 0` of the attractive well.
    pub depth: f64,
}

impl WellParameters {
    pub fn new(radius: f64, depth: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0 && depth.is_finite() && depth > 0.0) {
            return Err(domain(format!(
                "well needs positive radius and depth, got a={radius}, V0={depth}"
            )));
        }
        Ok(Self { radius, depth })
    }

    /// The well whose spatial integral `V₀πa²` matches a contact interaction
    /// of strength `ε`: `V₀ = ε c / (π a²)`.
    pub fn from_coupling(epsilon: f64, radius: f64, scales: PhysicalScales) -> Result<Self> {
        if !(epsilon > 0.0) {
            return Err(domain("coupling must be positive"));
        }
        Self::new(
            radius,
            epsilon * scales.kinetic_constant() / (PI * radius * radius),
        )
    }

    pub fn coupling(&self, scales: PhysicalScales) -> f64 {
        self.depth * PI * self.radius * self.radius / scales.kinetic_constant()
    }
}

/// `e^{γa}·[q J1(qa) K0(γa) − γ K1(γa) J0(qa)]`, whose zeros are the bound
/// states at binding energy `e^{u}`. Positive for shallow binding.
fn matching(well: &WellParameters, log_binding: f64, scales: PhysicalScales) -> f64 {
    let c = scales.kinetic_constant();
    let a = well.radius;
    let e = log_binding.exp();
    let q = ((well.depth - e).max(0.0) / c).sqrt();
    let gamma = (e / c).sqrt();
    let inner = jy(q * a);
    let (k0, k1) = k_scaled(gamma * a);
    q * inner.j1 * k0 - gamma * k1 * inner.j0
}

/// Ground-state binding energy `E_B ∈ (0, V₀)`.
pub fn well_bound_state(well: &WellParameters, scales: PhysicalScales) -> Result<f64> {
    let top = (well.depth * (1.0 - 1e-12)).ln();
    let bottom = (well.depth * 1e-300).ln();
    let f = |u: f64| matching(well, u, scales);

    // Scan downward from V₀; the first sign change is the deepest state.
    const SCAN: usize = 2000;
    let mut hi = top;
    let mut f_hi = f(hi);
    for i in 1..=SCAN {
        let t = i as f64 / SCAN as f64;
        // Dense near V₀ in linear energy, then logarithmic.
        let lo = if t < 0.5 {
            (well.depth * (1.0 - 2.0 * t).max(1e-12)).ln().min(top)
        } else {
            top + (bottom - top) * (2.0 * t - 1.0)
        };
        if lo >= hi {
            continue;
        }
        let f_lo = f(lo);
        if f_lo > 0.0 && f_hi <= 0.0 {
            return find_root_in_log(|u| Ok(-f(u)), lo, hi).map(f64::exp);
        }
        hi = lo;
        f_hi = f_lo;
    }
    Err(Error::Numerical(
        "circular-well matching root not bracketed".into(),
    ))
}

/// s-wave phase shift in `(−π/2, π/2]` from matching `J0(q r)` inside to
/// `cos δ J0(kr) − sin δ Y0(kr)` outside, in cross-multiplied form.
pub fn well_phase_shift(
    well: &WellParameters,
    k: Wavenumber,
    scales: PhysicalScales,
) -> Result<f64> {
    let c = scales.kinetic_constant();
    let a = well.radius;
    let kv = k.value();
    let energy = c * kv * kv;
    let q = ((well.depth + energy) / c).sqrt();
    let inner = jy(q * a);
    let outer = jy(kv * a);
    let num = q * inner.j1 * outer.j0 - kv * inner.j0 * outer.j1;
    let den = q * inner.j1 * outer.y0 - kv * inner.j0 * outer.y1;
    if den == 0.0 {
        return Ok(FRAC_PI_2);
    }
    let delta = (num / den).atan();
    Ok(if delta == -FRAC_PI_2 {
        FRAC_PI_2
    } else {
        delta
    })
}
