//! Complex energy plane, unit conventions and the one logarithm branch used
//! throughout the crate.
//!
//! Every point lives in the closed upper half plane. Points on the real
//! axis are limits taken from above: the positive axis carries `arg = 0`,
//! the negative axis `arg = π`. They are never approximated by a small
//! finite imaginary part.

use std::fmt;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};

/// Unit system. Energies and lengths are tied together through the single
/// combination `ħ²/2μ`; time is measured in units where `ħ = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalScales {
    kinetic_constant: f64,
}

impl PhysicalScales {
    pub fn new(kinetic_constant: f64) -> Result<Self> {
        if !(kinetic_constant.is_finite() && kinetic_constant > 0.0) {
            return Err(domain(format!(
                "kinetic constant must be positive, got {kinetic_constant}"
            )));
        }
        Ok(Self { kinetic_constant })
    }

    /// `ħ²/2μ = 1`, so that `E = k²`.
    pub const fn natural() -> Self {
        Self {
            kinetic_constant: 1.0,
        }
    }

    pub fn kinetic_constant(&self) -> f64 {
        self.kinetic_constant
    }
}

impl Default for PhysicalScales {
    fn default() -> Self {
        Self::natural()
    }
}

/// A point `z` of the closed upper half energy plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexEnergy {
    re: f64,
    im: f64,
    boundary: bool,
}

impl ComplexEnergy {
    /// General constructor. `boundary = true` stores `im = 0` and marks the
    /// point as the limit `re + i0⁺`.
    pub fn new(re: f64, im: f64, boundary: bool) -> Result<Self> {
        if !(re.is_finite() && im.is_finite()) {
            return Err(domain("energy components must be finite"));
        }
        if boundary {
            if im != 0.0 {
                return Err(domain("boundary points carry im = 0"));
            }
            if re == 0.0 {
                return Err(domain("the threshold z = 0 has no boundary value"));
            }
            Ok(Self {
                re,
                im: 0.0,
                boundary: true,
            })
        } else {
            if im <= 0.0 {
                return Err(domain(format!(
                    "interior points need im > 0, got {re} + {im}i"
                )));
            }
            Ok(Self {
                re,
                im,
                boundary: false,
            })
        }
    }

    /// Interior point `re + i·im` with `im > 0`.
    pub fn interior(re: f64, im: f64) -> Result<Self> {
        Self::new(re, im, false)
    }

    /// Continuum energy `E + i0⁺`, `E > 0`.
    pub fn continuum(energy: f64) -> Result<Self> {
        if !(energy > 0.0) {
            return Err(domain(format!(
                "continuum energy must be positive, got {energy}"
            )));
        }
        Self::new(energy, 0.0, true)
    }

    /// The point `-binding + i0⁺` on the negative real axis.
    pub fn below_threshold(binding: f64) -> Result<Self> {
        if !(binding > 0.0) {
            return Err(domain(format!(
                "binding energy must be positive, got {binding}"
            )));
        }
        Self::new(-binding, 0.0, true)
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn is_boundary(&self) -> bool {
        self.boundary
    }

    pub fn is_continuum(&self) -> bool {
        self.boundary && self.re > 0.0
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn norm(&self) -> f64 {
        self.re.hypot(self.im)
    }

    /// Argument in `[0, π]`; `π` on the negative real axis.
    pub fn arg(&self) -> f64 {
        // im is +0.0 on the boundary, so atan2 returns π for re < 0.
        self.im.atan2(self.re)
    }

    /// `λ·z` for `λ > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(domain("scale factor must be positive"));
        }
        Self::new(self.re * factor, self.im * factor, self.boundary)
    }

    /// `z + shift` along the real axis. The result may sit at the origin,
    /// which [`principal_log_ratio`] rejects.
    pub(crate) fn shifted_raw(&self, shift: f64) -> Self {
        Self {
            re: self.re + shift,
            im: self.im,
            boundary: self.boundary,
        }
    }
}

impl fmt::Display for ComplexEnergy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.boundary {
            write!(f, "{}+i0", self.re)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// Wavenumber `k > 0` of a continuum state.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Wavenumber(f64);

impl Wavenumber {
    pub fn new(k: f64) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(domain(format!("wavenumber must be positive, got {k}")));
        }
        Ok(Self(k))
    }

    pub fn value(&self) -> f64 {
        self.0
    }

    pub fn energy(&self, scales: PhysicalScales) -> f64 {
        scales.kinetic_constant() * self.0 * self.0
    }
}

/// `k = sqrt(E / (ħ²/2μ))`.
pub fn wavenumber(energy: f64, scales: PhysicalScales) -> Result<Wavenumber> {
    if !(energy.is_finite() && energy > 0.0) {
        return Err(domain(format!(
            "wavenumber needs a positive energy, got {energy}"
        )));
    }
    Wavenumber::new((energy / scales.kinetic_constant()).sqrt())
}

fn check_nonzero(z: &ComplexEnergy) -> Result<()> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::Singular("logarithm at z = 0".into()));
    }
    Ok(())
}

/// `ln|a/b|`, computed from the ratio so that scaling both arguments by a
/// power of two leaves the result bit-identical.
pub(crate) fn log_abs_ratio(a: f64, b: f64) -> f64 {
    let ratio = a / b;
    if ratio.is_normal() {
        ratio.ln()
    } else {
        a.ln() - b.ln()
    }
}

/// `ln(z/z₀) = ln|z/z₀| + i(arg z − arg z₀)` with both arguments in `[0, π]`.
pub fn principal_log_ratio(z: ComplexEnergy, z0: ComplexEnergy) -> Result<Complex64> {
    check_nonzero(&z)?;
    check_nonzero(&z0)?;
    Ok(Complex64::new(
        log_abs_ratio(z.norm(), z0.norm()),
        z.arg() - z0.arg(),
    ))
}
