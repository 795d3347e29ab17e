//! Brute-force verification layer, independent of the closed forms in
//! [`crate::regulators`] and [`crate::amplitude`]: adaptive quadrature of the
//! spectral integrals, cylinder functions, a contour residue extractor, and
//! the exact circular-well problem.

pub mod bessel;
pub mod quadrature;
pub mod well;

use std::cell::RefCell;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::energy::{ComplexEnergy, PhysicalScales};
use crate::error::{domain, Error, Result};
use crate::regulators::{spectral_weight, Regulator};

pub use bessel::{
    bessel_j0, bessel_j1, bessel_k0, bessel_k0_scaled, bessel_k1, bessel_k1_scaled, bessel_y0,
    bessel_y1,
};
pub use quadrature::{integrate, integrate_to_infinity, Estimate, QuadratureSpec};
pub use well::{well_bound_state, well_phase_shift, WellParameters};

/// `Q(E)` from the two-dimensional momentum integral
/// `∫ δ(E − c k²) |⟨k|v⟩|² d²k/(2π)²`: the radial delta is resolved by
/// `k dk = dE/(2c)` and the angle integrated numerically.
pub fn shell_spectral_weight(
    reg: &Regulator,
    energy: f64,
    scales: PhysicalScales,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(energy >= 0.0) {
        return Err(domain("shell reduction needs E ≥ 0"));
    }
    let c = scales.kinetic_constant();
    let k = (energy / c).sqrt();
    let failure = RefCell::new(None);
    let angular = integrate(
        |theta: f64| {
            let (s, co) = theta.sin_cos();
            match reg.form_factor_sq(k * co, k * s, scales) {
                Ok(v) => Complex64::new(v, 0.0),
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    Complex64::new(0.0, 0.0)
                }
            }
        },
        &[0.0, 0.5 * PI, PI, 1.5 * PI, 2.0 * PI],
        spec,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(angular?.value.re / (4.0 * PI * PI) / (2.0 * c))
}

fn breakpoints(
    reg: &Regulator,
    center: f64,
    scale: f64,
    upper: Option<f64>,
    scales: PhysicalScales,
) -> Vec<f64> {
    let mut pts = vec![0.0];
    let limit = upper.unwrap_or(f64::INFINITY);
    let mut push = |x: f64| {
        if x > 0.0 && x < limit && x.is_finite() {
            pts.push(x);
        }
    };
    for p in -12..=12 {
        push(scale * 10f64.powi(p));
    }
    push(center);
    if let Some(ea) = reg.gaussian_energy(scales) {
        for m in [0.1, 1.0, 3.0, 10.0, 30.0, 100.0] {
            push(ea * m);
        }
    }
    if let Some(l) = upper {
        pts.push(l);
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

fn integrate_spectrum<F>(
    f: F,
    points: &[f64],
    finite: bool,
    spec: &QuadratureSpec,
) -> Result<Estimate>
where
    F: Fn(f64) -> Complex64,
{
    if finite {
        integrate(f, points, spec)
    } else {
        integrate_to_infinity(f, points, spec)
    }
}

/// `g(z) = ∫₀^∞ Q(E)/(z − E) dE` by adaptive quadrature. Continuum points
/// inside the spectrum are split as `PV ∫ − iπ Q(E₀)`, with the principal
/// value folded symmetrically around `E₀`.
pub fn quadrature_g(
    reg: &Regulator,
    z: ComplexEnergy,
    spec: &QuadratureSpec,
    scales: PhysicalScales,
) -> Result<Estimate> {
    if matches!(reg, Regulator::PureDelta) {
        return Err(Error::Divergent { quantity: "g(z)" });
    }
    if matches!(reg, Regulator::CircularWell { .. }) {
        return Err(Error::UnsupportedRegulator("circular-well"));
    }
    let q = |e: f64| spectral_weight(reg, e, scales).unwrap_or(0.0);
    let upper = reg.support_limit();
    let finite = upper.is_some();
    let zc = z.to_complex();
    let points = breakpoints(reg, z.re().abs(), z.norm(), upper, scales);

    let on_spectrum = z.is_boundary() && z.re() > 0.0 && upper.is_none_or(|l| z.re() < l);
    if !on_spectrum {
        if upper == Some(z.re()) && z.is_boundary() {
            return Err(Error::Singular("boundary point at the cutoff".into()));
        }
        return integrate_spectrum(|e| q(e) / (zc - e), &points, finite, spec);
    }
    if !spec.singularity_subtraction {
        return Err(domain(
            "boundary values on the spectrum need singularity subtraction",
        ));
    }

    let e0 = z.re();
    let half_width = 0.5 * upper.map_or(e0, |l| e0.min(l - e0));
    let (left, right) = (e0 - half_width, e0 + half_width);
    let outside = |e: f64| Complex64::new(q(e) / (e0 - e), 0.0);

    let below: Vec<f64> = points
        .iter()
        .copied()
        .filter(|&p| p < left)
        .chain([left])
        .collect();
    let lower = integrate(outside, &below, spec)?;
    let mut above: Vec<f64> = vec![right];
    above.extend(points.iter().copied().filter(|&p| p > right));
    let upper_part = integrate_spectrum(outside, &above, finite, spec)?;
    // ∫_{E₀−d}^{E₀+d} Q(E)/(E₀−E) dE = ∫₀^d [Q(E₀−u) − Q(E₀+u)]/u du
    let folded = integrate(
        |u| Complex64::new((q(e0 - u) - q(e0 + u)) / u, 0.0),
        &[0.0, 0.5 * half_width, half_width],
        spec,
    )?;
    let pole = Complex64::new(0.0, -PI * q(e0));
    Ok(Estimate {
        value: lower.value + upper_part.value + folded.value + pole,
        error: lower.error + upper_part.error + folded.error,
    })
}

/// `I(z) = c·g(z)` by quadrature.
pub fn quadrature_i(
    reg: &Regulator,
    z: ComplexEnergy,
    spec: &QuadratureSpec,
    scales: PhysicalScales,
) -> Result<Complex64> {
    Ok(scales.kinetic_constant() * quadrature_g(reg, z, spec, scales)?.value)
}

/// `𝒢(z, z₀) = ∫₀^∞ Q(E) [1/(z − E) − 1/(z₀ − E)] dE` by quadrature.
/// For the pure delta the integrand is combined before integrating, which
/// keeps it finite.
pub fn quadrature_slide_kernel(
    reg: &Regulator,
    z: ComplexEnergy,
    z0: ComplexEnergy,
    spec: &QuadratureSpec,
    scales: PhysicalScales,
) -> Result<Complex64> {
    match reg {
        Regulator::PureDelta => {
            if z.is_boundary() || z0.is_boundary() {
                return Err(domain("pure-delta kernel quadrature takes interior points"));
            }
            let q = spectral_weight(reg, 0.0, scales)?;
            let (zc, z0c) = (z.to_complex(), z0.to_complex());
            let scale = z.norm().max(z0.norm());
            let points = breakpoints(reg, z.re().abs().max(z0.re().abs()), scale, None, scales);
            let est =
                integrate_to_infinity(|e| q * (z0c - zc) / ((zc - e) * (z0c - e)), &points, spec)?;
            Ok(est.value)
        }
        _ => {
            Ok(quadrature_g(reg, z, spec, scales)?.value
                - quadrature_g(reg, z0, spec, scales)?.value)
        }
    }
}

/// `q(t) = ∫₀^∞ Q(E) e^{-iEt} dE` by quadrature (finite-support or
/// exponentially damped weights only).
pub fn quadrature_decay_amplitude(
    reg: &Regulator,
    t: f64,
    spec: &QuadratureSpec,
    scales: PhysicalScales,
) -> Result<Complex64> {
    if matches!(reg, Regulator::PureDelta) {
        return Err(Error::Divergent {
            quantity: "∫ Q(E) e^{-iEt} dE",
        });
    }
    let q = |e: f64| spectral_weight(reg, e, scales).unwrap_or(0.0);
    let f = |e: f64| q(e) * Complex64::from_polar(1.0, -e * t);
    match reg.support_limit() {
        Some(l) => {
            let n = ((l * t / PI).ceil() as usize).clamp(1, 100_000);
            let pts: Vec<f64> = (0..=n).map(|i| l * i as f64 / n as f64).collect();
            Ok(integrate(f, &pts, spec)?.value)
        }
        None => {
            let ea = reg
                .gaussian_energy(scales)
                .ok_or(Error::UnsupportedRegulator("circular-well"))?;
            let span = 60.0 * ea;
            let n = ((span * t / PI).ceil() as usize).clamp(4, 100_000);
            let pts: Vec<f64> = (0..=n).map(|i| span * i as f64 / n as f64).collect();
            Ok(integrate_to_infinity(f, &pts, spec)?.value)
        }
    }
}

/// Residue of `f` at the real point `pole` from semicircle averages in the
/// upper half plane,
/// `A(r) = (1/iπ) ∫_arc f(w) dw = R − (2r/iπ)·a₀ + O(r³)`,
/// combined by one Richardson step over the two radii.
pub fn contour_residue<F>(
    f: F,
    pole: f64,
    radii: (f64, f64),
    spec: &QuadratureSpec,
) -> Result<Complex64>
where
    F: Fn(ComplexEnergy) -> Result<Complex64>,
{
    let (r1, r2) = radii;
    if !(r1 > r2 && r2 > 0.0) {
        return Err(domain("residue radii must satisfy r1 > r2 > 0"));
    }
    let arc = |r: f64| -> Result<Complex64> {
        let failure = RefCell::new(None);
        let est = integrate(
            |theta| {
                let w = Complex64::from_polar(r, theta);
                let z = ComplexEnergy::interior(pole + w.re, w.im);
                match z.and_then(&f) {
                    Ok(v) => v * w,
                    Err(e) => {
                        failure.borrow_mut().get_or_insert(e);
                        Complex64::new(0.0, 0.0)
                    }
                }
            },
            &[0.0, 0.25 * PI, 0.5 * PI, 0.75 * PI, PI],
            spec,
        );
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        Ok(est?.value / PI)
    };
    let a1 = arc(r1)?;
    let a2 = arc(r2)?;
    Ok((r1 * a2 - r2 * a1) / (r1 - r2))
}
