//! Browser bindings. Each export returns a flat `Float64Array` of rows so
//! the page can plot without any marshalling layer.

use num_complex::Complex64;
use transmute_lab::oracle::{well_bound_state, well_phase_shift, WellParameters};
use transmute_lab::{
    phase_shift_from_tau, slide, tau_renormalized, transmutation_limit_demo, ComplexEnergy, Error,
    FlowPoint, PhysicalScales, Regulator, Wavenumber,
};
use wasm_bindgen::prelude::*;

const NAT: PhysicalScales = PhysicalScales::natural();

fn log_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>, String> {
    if !(lo > 0.0 && hi > lo && (2..=10_000).contains(&n)) {
        return Err("need 0 < lo < hi and 2 <= n <= 10000".into());
    }
    let (a, b) = (lo.ln(), hi.ln());
    Ok((0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect())
}

/// Rows `[ln|z|, Re 1/τ, Im 1/τ, |τ|]` along the ray through `z0 = i`.
/// Pole rows carry `|τ| = ∞`.
pub fn flow_rows(
    tau0_re: f64,
    tau0_im: f64,
    lo: f64,
    hi: f64,
    n: usize,
) -> Result<Vec<f64>, String> {
    let z0 = ComplexEnergy::interior(0.0, 1.0).map_err(|e| e.to_string())?;
    let tau0 = Complex64::new(tau0_re, tau0_im);
    let anchor = FlowPoint::new(z0, tau0).map_err(|e| e.to_string())?;
    let mut out = Vec::with_capacity(4 * n);
    for m in log_grid(lo, hi, n)? {
        let z = z0.scaled(m).map_err(|e| e.to_string())?;
        let (inv, abs) = match slide(&anchor, &Regulator::PureDelta, z, NAT) {
            Ok(a) if a.is_zero() => (Complex64::new(f64::INFINITY, 0.0), 0.0),
            Ok(a) => (1.0 / a.tau, a.tau.norm()),
            Err(Error::Pole { .. }) => (Complex64::new(0.0, 0.0), f64::INFINITY),
            Err(e) => return Err(e.to_string()),
        };
        out.extend([m.ln(), inv.re, inv.im, abs]);
    }
    Ok(out)
}

/// Rows `[n, Λ_n, ε_n, Re τ, Im τ, deviation]` at real energy `e` above
/// threshold.
pub fn transmutation_rows(binding_energy: f64, e: f64, steps: u32) -> Result<Vec<f64>, String> {
    let z = ComplexEnergy::continuum(e).map_err(|e| e.to_string())?;
    let rows =
        transmutation_limit_demo(binding_energy, z, steps, NAT).map_err(|e| e.to_string())?;
    Ok(rows
        .iter()
        .flat_map(|s| {
            [
                s.n as f64,
                s.lambda,
                s.epsilon,
                s.amplitude.tau.re,
                s.amplitude.tau.im,
                s.deviation,
            ]
        })
        .collect())
}

/// Rows `[E, δ_well, δ_renormalized]` for a circular well of coupling `ε`
/// and radius `a`, the renormalized curve using the well's own `E_B`.
/// The first element of the result is that `E_B`.
pub fn phase_shift_rows(
    epsilon: f64,
    radius: f64,
    lo: f64,
    hi: f64,
    n: usize,
) -> Result<Vec<f64>, String> {
    let well = WellParameters::from_coupling(epsilon, radius, NAT).map_err(|e| e.to_string())?;
    let eb = well_bound_state(&well, NAT).map_err(|e| e.to_string())?;
    let mut out = vec![eb];
    for e in log_grid(lo, hi, n)? {
        let k = Wavenumber::new(e.sqrt()).map_err(|e| e.to_string())?;
        let dw = well_phase_shift(&well, k, NAT).map_err(|e| e.to_string())?;
        let z = ComplexEnergy::continuum(e).map_err(|e| e.to_string())?;
        let tau = tau_renormalized(eb, z).map_err(|e| e.to_string())?;
        let dr = phase_shift_from_tau(&tau).map_err(|e| e.to_string())?;
        out.extend([e, dw, dr]);
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn flow_curve(
    tau0_re: f64,
    tau0_im: f64,
    lo: f64,
    hi: f64,
    n: usize,
) -> Result<Vec<f64>, JsError> {
    flow_rows(tau0_re, tau0_im, lo, hi, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn transmutation_sequence(
    binding_energy: f64,
    e: f64,
    steps: u32,
) -> Result<Vec<f64>, JsError> {
    transmutation_rows(binding_energy, e, steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn phase_shifts(
    epsilon: f64,
    radius: f64,
    lo: f64,
    hi: f64,
    n: usize,
) -> Result<Vec<f64>, JsError> {
    phase_shift_rows(epsilon, radius, lo, hi, n).map_err(|e| JsError::new(&e))
}
