//! Short-distance regularizations of the contact interaction and the
//! spectral quantities they induce: `Q(E)`, `q(t)`, `g(z)`, `I(z)` and the
//! sliding kernel `𝒢(z, z₀) = g(z) − g(z₀)`.
//!
//! Form-factor regulators act on the rank-one vector `|v⟩`. The sharp cutoff
//! keeps kinetic energies up to `Λ`; the Gaussian uses `e^{-k²a²}`. The
//! circular well is a genuine finite-range potential and is only understood
//! by [`crate::oracle`].

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::energy::{principal_log_ratio, ComplexEnergy, PhysicalScales};
use crate::error::{domain, Error, Result};
use crate::special::{exp_e1_scaled, exp_neg_ei};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regulator {
    /// `⟨k|v⟩ = 1` for every `k`.
    PureDelta,
    /// `|⟨k|v⟩|² = 1` for kinetic energy `≤ lambda`, 0 above.
    SharpCutoff { lambda: f64 },
    /// `|⟨k|v⟩|² = e^{-k²a²}` with `a = range`.
    GaussianFormFactor { range: f64 },
    /// Attractive disc of the given radius; oracle only.
    CircularWell { radius: f64 },
}

impl Regulator {
    pub fn sharp_cutoff(lambda: f64) -> Result<Self> {
        positive(lambda, "cutoff")?;
        Ok(Self::SharpCutoff { lambda })
    }

    pub fn gaussian(range: f64) -> Result<Self> {
        positive(range, "Gaussian range")?;
        Ok(Self::GaussianFormFactor { range })
    }

    pub fn circular_well(radius: f64) -> Result<Self> {
        positive(radius, "well radius")?;
        Ok(Self::CircularWell { radius })
    }

    /// Command-line name.
    pub fn name(&self) -> &'static str {
        match self {
            Self::PureDelta => "pure-delta",
            Self::SharpCutoff { .. } => "sharp-cutoff",
            Self::GaussianFormFactor { .. } => "gaussian",
            Self::CircularWell { .. } => "circular-well",
        }
    }

    /// Largest energy carrying spectral weight, if finite.
    pub fn support_limit(&self) -> Option<f64> {
        match *self {
            Self::SharpCutoff { lambda } => Some(lambda),
            _ => None,
        }
    }

    /// `c/a²` for the Gaussian: the energy where `|⟨k|v⟩|²` drops to `1/e`.
    pub fn gaussian_energy(&self, scales: PhysicalScales) -> Option<f64> {
        match *self {
            Self::GaussianFormFactor { range } => Some(scales.kinetic_constant() / (range * range)),
            _ => None,
        }
    }

    /// The regulator with every energy scale multiplied by `factor`
    /// (lengths by `factor^{-1/2}`).
    pub fn rescaled(&self, factor: f64) -> Result<Self> {
        positive(factor, "scale factor")?;
        Ok(match *self {
            Self::PureDelta => Self::PureDelta,
            Self::SharpCutoff { lambda } => Self::SharpCutoff {
                lambda: lambda * factor,
            },
            Self::GaussianFormFactor { range } => Self::GaussianFormFactor {
                range: range / factor.sqrt(),
            },
            Self::CircularWell { radius } => Self::CircularWell {
                radius: radius / factor.sqrt(),
            },
        })
    }

    /// `|⟨k|v⟩|²` at momentum `(kx, ky)`.
    pub fn form_factor_sq(&self, kx: f64, ky: f64, scales: PhysicalScales) -> Result<f64> {
        let k2 = kx * kx + ky * ky;
        match *self {
            Self::PureDelta => Ok(1.0),
            Self::SharpCutoff { lambda } => Ok(if scales.kinetic_constant() * k2 <= lambda {
                1.0
            } else {
                0.0
            }),
            Self::GaussianFormFactor { range } => Ok((-k2 * range * range).exp()),
            Self::CircularWell { .. } => Err(Error::UnsupportedRegulator("circular-well")),
        }
    }
}

impl fmt::Display for Regulator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::PureDelta => write!(f, "pure-delta"),
            Self::SharpCutoff { lambda } => write!(f, "sharp-cutoff(lambda={lambda})"),
            Self::GaussianFormFactor { range } => write!(f, "gaussian(a={range})"),
            Self::CircularWell { radius } => write!(f, "circular-well(a={radius})"),
        }
    }
}

fn positive(x: f64, what: &str) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(domain(format!("{what} must be positive, got {x}")))
    }
}

/// `μ/2πħ² = 1/(4π c)`: the flat spectral weight of `⟨k|v⟩ = 1`.
pub fn flat_weight(scales: PhysicalScales) -> f64 {
    1.0 / (4.0 * PI * scales.kinetic_constant())
}

/// `Q(E) = ⟨v|δ(E − H)|v⟩`.
pub fn spectral_weight(reg: &Regulator, energy: f64, scales: PhysicalScales) -> Result<f64> {
    if !(energy.is_finite() && energy >= 0.0) {
        return Err(domain(format!("spectral weight needs E ≥ 0, got {energy}")));
    }
    let flat = flat_weight(scales);
    match *reg {
        Regulator::PureDelta => Ok(flat),
        Regulator::SharpCutoff { lambda } => Ok(if energy <= lambda { flat } else { 0.0 }),
        Regulator::GaussianFormFactor { .. } => {
            let ea = reg.gaussian_energy(scales).expect("gaussian");
            Ok(flat * (-energy / ea).exp())
        }
        Regulator::CircularWell { .. } => Err(Error::UnsupportedRegulator("circular-well")),
    }
}

/// `q(t) = ∫₀^∞ Q(E) e^{-iEt} dE` in units with `ħ = 1`.
pub fn decay_amplitude(reg: &Regulator, t: f64, scales: PhysicalScales) -> Result<Complex64> {
    if !(t.is_finite() && t > 0.0) {
        return Err(domain(format!("decay amplitude needs t > 0, got {t}")));
    }
    let flat = flat_weight(scales);
    let i = Complex64::i();
    match *reg {
        Regulator::PureDelta => Ok(Complex64::new(flat, 0.0) / (i * t)),
        Regulator::SharpCutoff { lambda } => {
            // (1 − e^{-iΛt})/(it), written to stay accurate for small Λt.
            let x = lambda * t;
            let half = 0.5 * x;
            let sinc = if half.abs() < 1e-8 {
                1.0
            } else {
                half.sin() / half
            };
            Ok(flat * lambda * sinc * Complex64::from_polar(1.0, -half))
        }
        Regulator::GaussianFormFactor { .. } => {
            let ea = reg.gaussian_energy(scales).expect("gaussian");
            Ok(flat * ea / Complex64::new(1.0, ea * t))
        }
        Regulator::CircularWell { .. } => Err(Error::UnsupportedRegulator("circular-well")),
    }
}

/// `h(w) = e^{-w} E₁(−w)` for `w` in the closed upper half plane, with
/// boundary points taken as limits from above.
fn gaussian_kernel(w: Complex64, boundary: bool) -> Complex64 {
    if boundary && w.re > 0.0 {
        // E₁(−x − i0) = −Ei(x) + iπ
        let x = w.re;
        Complex64::new(-exp_neg_ei(x), PI * (-x).exp())
    } else if boundary {
        Complex64::new(exp_e1_scaled(Complex64::new(-w.re, 0.0)).re, 0.0)
    } else {
        exp_e1_scaled(-w)
    }
}

/// `g(z) = ⟨v|(z − H)^{-1}|v⟩ = ∫₀^∞ Q(E)/(z − E) dE`.
pub fn g_function(reg: &Regulator, z: ComplexEnergy, scales: PhysicalScales) -> Result<Complex64> {
    let flat = flat_weight(scales);
    match *reg {
        Regulator::PureDelta => Err(Error::Divergent { quantity: "g(z)" }),
        Regulator::SharpCutoff { lambda } => {
            let below = z.shifted_raw(-lambda);
            Ok(flat * principal_log_ratio(z, below)?)
        }
        Regulator::GaussianFormFactor { .. } => {
            let ea = reg.gaussian_energy(scales).expect("gaussian");
            let w = z.to_complex() / ea;
            Ok(-flat * gaussian_kernel(w, z.is_boundary()))
        }
        Regulator::CircularWell { .. } => Err(Error::UnsupportedRegulator("circular-well")),
    }
}

/// `dg/dz`, used for pole residues.
pub fn g_derivative(
    reg: &Regulator,
    z: ComplexEnergy,
    scales: PhysicalScales,
) -> Result<Complex64> {
    let flat = flat_weight(scales);
    match *reg {
        Regulator::PureDelta => Err(Error::Divergent { quantity: "g'(z)" }),
        Regulator::SharpCutoff { lambda } => {
            let zc = z.to_complex();
            let below = zc - lambda;
            if zc == Complex64::new(0.0, 0.0) || below == Complex64::new(0.0, 0.0) {
                return Err(Error::Singular(
                    "g'(z) at an endpoint of the spectrum".into(),
                ));
            }
            Ok(flat * (1.0 / zc - 1.0 / below))
        }
        Regulator::GaussianFormFactor { .. } => {
            let ea = reg.gaussian_energy(scales).expect("gaussian");
            let w = z.to_complex() / ea;
            Ok(flat / ea * (gaussian_kernel(w, z.is_boundary()) + 1.0 / w))
        }
        Regulator::CircularWell { .. } => Err(Error::UnsupportedRegulator("circular-well")),
    }
}

/// `I(z) = (ħ²/2μ) g(z)`, dimensionless.
pub fn i_function(reg: &Regulator, z: ComplexEnergy, scales: PhysicalScales) -> Result<Complex64> {
    Ok(scales.kinetic_constant() * g_function(reg, z, scales)?)
}

/// `𝒢(z, z₀) = g(z) − g(z₀)`. Finite for the pure delta, where the
/// divergences of the two terms cancel and leave `ln(z/z₀)/(4πc)`.
pub fn slide_kernel(
    reg: &Regulator,
    z: ComplexEnergy,
    z0: ComplexEnergy,
    scales: PhysicalScales,
) -> Result<Complex64> {
    match reg {
        Regulator::PureDelta => Ok(flat_weight(scales) * principal_log_ratio(z, z0)?),
        _ => Ok(g_function(reg, z, scales)? - g_function(reg, z0, scales)?),
    }
}
