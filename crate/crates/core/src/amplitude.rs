//! The dimensionless amplitude `τ(z) = (2μ/ħ²)𝒯(z)` in its exact, regulated
//! and renormalized forms, the sliding-scale flow, and bound-state poles.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::energy::{principal_log_ratio, ComplexEnergy, PhysicalScales};
use crate::error::{domain, Error, Result};
use crate::regulators::{g_derivative, i_function, slide_kernel, Regulator};
use crate::tolerances::{POLE_SEARCH_LOG_TOL, POLE_THRESHOLD};

const FOUR_PI: f64 = 4.0 * PI;

/// Attractive dimensionless coupling `ε > 0`; the potential strength is
/// `𝒱 = −(ħ²/2μ)ε`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Coupling(f64);

impl Coupling {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(domain(format!("coupling must be positive, got {epsilon}")));
        }
        Ok(Self(epsilon))
    }

    pub fn epsilon(&self) -> f64 {
        self.0
    }
}

/// Where an amplitude value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Evaluated,
    /// Exact zero: the unregulated contact interaction neither scatters nor
    /// binds.
    NoScatteringTheorem,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitude {
    pub tau: Complex64,
    pub provenance: Provenance,
}

impl Amplitude {
    pub fn new(tau: Complex64) -> Self {
        Self {
            tau,
            provenance: Provenance::Evaluated,
        }
    }

    pub fn theorem_zero() -> Self {
        Self {
            tau: Complex64::new(0.0, 0.0),
            provenance: Provenance::NoScatteringTheorem,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.tau == Complex64::new(0.0, 0.0)
    }
}

/// Anchor `(z₀, τ(z₀))` of the sliding-scale relation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowPoint {
    pub z0: ComplexEnergy,
    pub tau0: Amplitude,
}

impl FlowPoint {
    pub fn new(z0: ComplexEnergy, tau0: Complex64) -> Result<Self> {
        if !(tau0.re.is_finite() && tau0.im.is_finite()) {
            return Err(domain("anchor amplitude must be finite"));
        }
        Ok(Self {
            z0,
            tau0: Amplitude::new(tau0),
        })
    }
}

/// Simple pole of `τ` at `z = −binding_energy`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    pub binding_energy: f64,
    /// `lim (z + E_B)·τ(z)`.
    pub residue: f64,
}

/// `τ(z) = −ε / (1 + ε I(z))`.
///
/// The pure delta yields the exact zero amplitude: its `I(z)` diverges and
/// the divergence is absorbed here rather than reported.
pub fn tau_regulated(
    coupling: Coupling,
    reg: &Regulator,
    z: ComplexEnergy,
    scales: PhysicalScales,
) -> Result<Amplitude> {
    let eps = coupling.epsilon();
    let i = match i_function(reg, z, scales) {
        Err(Error::Divergent { .. }) => return Ok(Amplitude::theorem_zero()),
        other => other?,
    };
    let den = 1.0 + eps * i;
    if den.norm() < POLE_THRESHOLD {
        return Err(Error::Pole {
            pole: z.to_complex(),
        });
    }
    Ok(Amplitude::new(-eps / den))
}

/// Transports the amplitude from the anchor to `z`:
/// `τ(z) = τ(z₀) / (1 − τ(z₀)·(ħ²/2μ)·𝒢(z, z₀))`.
pub fn slide(
    anchor: &FlowPoint,
    reg: &Regulator,
    z: ComplexEnergy,
    scales: PhysicalScales,
) -> Result<Amplitude> {
    let tau0 = anchor.tau0.tau;
    if anchor.tau0.is_zero() {
        // Zero is a fixed point of the flow.
        return Ok(anchor.tau0);
    }
    let kernel = scales.kinetic_constant() * slide_kernel(reg, z, anchor.z0, scales)?;
    let den = 1.0 - tau0 * kernel;
    if den.norm() < POLE_THRESHOLD {
        let pole = match reg {
            Regulator::PureDelta => anchor.z0.to_complex() * (FOUR_PI / tau0).exp(),
            _ => z.to_complex(),
        };
        return Err(Error::Pole { pole });
    }
    Ok(Amplitude {
        tau: tau0 / den,
        provenance: anchor.tau0.provenance,
    })
}

/// `τ(z) = 4π / ln(−E_B/z)`, the renormalized amplitude with its pole at
/// `z = −E_B`.
pub fn tau_renormalized(binding_energy: f64, z: ComplexEnergy) -> Result<Amplitude> {
    let bound = ComplexEnergy::below_threshold(binding_energy)?;
    let log = principal_log_ratio(bound, z)?;
    if log.norm() < POLE_THRESHOLD {
        return Err(Error::Pole {
            pole: bound.to_complex(),
        });
    }
    Ok(Amplitude::new(FOUR_PI / log))
}

/// `1 + ε I(−E)` on the negative real axis, as a function of `u = ln E`.
fn pole_condition(
    eps: f64,
    reg: &Regulator,
    log_energy: f64,
    scales: PhysicalScales,
) -> Result<f64> {
    let z = ComplexEnergy::below_threshold(log_energy.exp())?;
    Ok((1.0 + eps * i_function(reg, z, scales)?).re)
}

/// Solves `1 + ε I(−E_B) = 0` for the regulated model.
pub fn bound_state_pole(
    coupling: Coupling,
    reg: &Regulator,
    scales: PhysicalScales,
) -> Result<BoundState> {
    let eps = coupling.epsilon();
    let (lo, hi) = match *reg {
        Regulator::PureDelta => return Err(Error::NoBoundState { theorem: true }),
        Regulator::CircularWell { .. } => return Err(Error::UnsupportedRegulator("circular-well")),
        Regulator::SharpCutoff { lambda } => (lambda * 1e-300, lambda),
        Regulator::GaussianFormFactor { .. } => {
            let ea = reg.gaussian_energy(scales).expect("gaussian");
            // 1 + εI(−E) > 0 once E/E_a ≥ ε.
            (ea * 1e-300, ea * eps.max(1.0))
        }
    };
    let f = |u: f64| pole_condition(eps, reg, u, scales);
    let u = find_root_in_log(f, lo.ln(), hi.ln())?;
    let binding_energy = u.exp();
    let z = ComplexEnergy::below_threshold(binding_energy)?;
    let di = scales.kinetic_constant() * g_derivative(reg, z, scales)?;
    Ok(BoundState {
        binding_energy,
        residue: -1.0 / di.re,
    })
}

/// Bisection on a sign change in `[lo, hi]`, finished with safeguarded
/// secant steps. The function must be negative at `lo` and positive at `hi`.
pub(crate) fn find_root_in_log<F>(f: F, mut lo: f64, mut hi: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut f_lo = f(lo)?;
    let mut f_hi = f(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if !(f_lo < 0.0 && f_hi > 0.0) {
        return Err(Error::NoBoundState { theorem: false });
    }
    let tol = |u: f64| POLE_SEARCH_LOG_TOL * u.abs().max(1.0);
    while hi - lo > 1e-6 * lo.abs().max(hi.abs()).max(1.0) {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm < 0.0 {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
            f_hi = fm;
        }
    }
    let mut a = lo;
    let mut fa = f_lo;
    let mut b = hi;
    let mut fb = f_hi;
    for _ in 0..100 {
        let mut next = b - fb * (b - a) / (fb - fa);
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        let fn_ = f(next)?;
        if fn_ == 0.0 {
            return Ok(next);
        }
        if fn_ < 0.0 {
            lo = next;
        } else {
            hi = next;
        }
        let step = (next - b).abs();
        a = b;
        fa = fb;
        b = next;
        fb = fn_;
        if step <= tol(next) || hi - lo <= tol(next) {
            return Ok(next);
        }
    }
    Err(Error::Numerical("pole search did not converge".into()))
}

/// `τ_Λ(z)` with the sharp cutoff for each `Λ` of an increasing schedule.
/// As `Λ → ∞` the values approach the exact zero amplitude.
pub fn theorem_limit_demo(
    coupling: Coupling,
    z: ComplexEnergy,
    cutoffs: &[f64],
    scales: PhysicalScales,
) -> Result<Vec<Amplitude>> {
    if cutoffs.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(domain("cutoff schedule must be strictly increasing"));
    }
    cutoffs
        .iter()
        .map(|&lambda| {
            if !(lambda > z.norm()) {
                return Err(domain(format!(
                    "cutoff {lambda} does not exceed |z| = {}",
                    z.norm()
                )));
            }
            tau_regulated(coupling, &Regulator::sharp_cutoff(lambda)?, z, scales)
        })
        .collect()
}

/// Upper envelope `4π / ln(Λ/|z|)` of `|τ_Λ(z)|` past the pole region.
pub fn theorem_envelope(lambda: f64, z: ComplexEnergy) -> f64 {
    FOUR_PI / (lambda / z.norm()).ln()
}

/// One rung of the renormalization limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmutationStep {
    pub n: u32,
    pub lambda: f64,
    pub epsilon: f64,
    pub amplitude: Amplitude,
    /// `|τ_{ε_n,Λ_n}(z) − τ_renormalized(E_B, z)|`.
    pub deviation: f64,
}

/// Couplings `ε_n = 4π / ln(Λ_n/E_B)` at cutoffs `Λ_n = E_B·10ⁿ`, which
/// keep `Λ_n e^{-4π/ε_n} = E_B` fixed while `Λ_n → ∞` and `ε_n → 0⁺`.
pub fn transmutation_schedule(binding_energy: f64, n: u32) -> Result<(f64, Coupling)> {
    if !(binding_energy.is_finite() && binding_energy > 0.0) {
        return Err(domain("binding energy must be positive"));
    }
    if n == 0 {
        return Err(domain("schedule starts at n = 1"));
    }
    let lambda = binding_energy * 10f64.powi(n as i32);
    let eps = FOUR_PI / (lambda / binding_energy).ln();
    Ok((lambda, Coupling::new(eps)?))
}

pub fn transmutation_limit_demo(
    binding_energy: f64,
    z: ComplexEnergy,
    steps: u32,
    scales: PhysicalScales,
) -> Result<Vec<TransmutationStep>> {
    if steps < 2 {
        return Err(domain("transmutation demo needs at least two steps"));
    }
    let limit = tau_renormalized(binding_energy, z)?;
    (1..=steps)
        .map(|n| {
            let (lambda, coupling) = transmutation_schedule(binding_energy, n)?;
            let amplitude = tau_regulated(coupling, &Regulator::sharp_cutoff(lambda)?, z, scales)?;
            Ok(TransmutationStep {
                n,
                lambda,
                epsilon: coupling.epsilon(),
                amplitude,
                deviation: (amplitude.tau - limit.tau).norm(),
            })
        })
        .collect()
}
