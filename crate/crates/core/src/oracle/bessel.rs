//! Cylinder functions of order 0 and 1 for real argument.
//!
//! `J` and `Y` use three regimes: power series for `x ≤ 8`, Miller backward
//! recurrence with Neumann sums for `8 < x ≤ 25`, and the Hankel asymptotic
//! expansion above 25. `K` uses its power series for `x ≤ 2` and the
//! trapezoid rule on `∫₀^∞ e^{-x cosh t} cosh(νt) dt` above.

use std::f64::consts::{FRAC_2_PI, FRAC_PI_4, PI};

use crate::error::{domain, Result};
use crate::special::EULER_GAMMA;

const SERIES_MAX: f64 = 8.0;
const MILLER_MAX: f64 = 25.0;
const K_SERIES_MAX: f64 = 2.0;

fn check(x: f64, strictly_positive: bool, name: &str) -> Result<()> {
    let ok = x.is_finite() && if strictly_positive { x > 0.0 } else { x >= 0.0 };
    if ok {
        Ok(())
    } else {
        Err(domain(format!("{name}({x}) is outside its domain")))
    }
}

pub fn bessel_j0(x: f64) -> Result<f64> {
    check(x, false, "J0")?;
    Ok(jy(x).j0)
}

pub fn bessel_j1(x: f64) -> Result<f64> {
    check(x, false, "J1")?;
    Ok(jy(x).j1)
}

pub fn bessel_y0(x: f64) -> Result<f64> {
    check(x, true, "Y0")?;
    Ok(jy(x).y0)
}

pub fn bessel_y1(x: f64) -> Result<f64> {
    check(x, true, "Y1")?;
    Ok(jy(x).y1)
}

pub fn bessel_k0(x: f64) -> Result<f64> {
    Ok(bessel_k0_scaled(x)? * (-x).exp())
}

pub fn bessel_k1(x: f64) -> Result<f64> {
    Ok(bessel_k1_scaled(x)? * (-x).exp())
}

/// `e^x K0(x)`, finite for all `x > 0`.
pub fn bessel_k0_scaled(x: f64) -> Result<f64> {
    check(x, true, "K0")?;
    Ok(k_scaled(x).0)
}

/// `e^x K1(x)`.
pub fn bessel_k1_scaled(x: f64) -> Result<f64> {
    check(x, true, "K1")?;
    Ok(k_scaled(x).1)
}

/// All four `J`/`Y` values at one argument; `Y` is meaningless at `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylinderValues {
    pub j0: f64,
    pub j1: f64,
    pub y0: f64,
    pub y1: f64,
}

pub(crate) fn jy(x: f64) -> CylinderValues {
    if x <= SERIES_MAX {
        jy_series(x)
    } else if x <= MILLER_MAX {
        jy_miller(x)
    } else {
        jy_hankel(x)
    }
}

pub(crate) fn jy_series(x: f64) -> CylinderValues {
    let q = -0.25 * x * x;
    let log_half = (0.5 * x).ln();

    // t0 = q^k/(k!)², t1 = q^k/(k!(k+1)!)
    let mut t0 = 1.0;
    let mut t1 = 1.0;
    let mut j0 = 0.0;
    let mut j1 = 0.0;
    let mut y0_sum = 0.0;
    let mut y1_sum = 0.0;
    let mut h = 0.0; // H_k
    for k in 0..200 {
        let kf = k as f64;
        if k > 0 {
            t0 *= q / (kf * kf);
            t1 *= q / (kf * (kf + 1.0));
            h += 1.0 / kf;
        }
        let h_next = h + 1.0 / (kf + 1.0);
        j0 += t0;
        j1 += t1;
        // (-1)^{k+1} H_k (x²/4)^k/(k!)² = -H_k t0
        y0_sum -= h * t0;
        // ψ(k+1) + ψ(k+2) = H_k + H_{k+1} − 2γ
        y1_sum += (h + h_next - 2.0 * EULER_GAMMA) * t1;
        if k > 2 && t0.abs() < 1e-18 * j0.abs().max(1e-300) && t1.abs() < 1e-18 {
            break;
        }
    }
    j1 *= 0.5 * x;
    let y0 = FRAC_2_PI * ((log_half + EULER_GAMMA) * j0 + y0_sum);
    let y1 = if x == 0.0 {
        f64::NEG_INFINITY
    } else {
        -FRAC_2_PI / x + FRAC_2_PI * log_half * j1 - 0.5 * x * y1_sum / PI
    };
    CylinderValues { j0, j1, y0, y1 }
}

pub(crate) fn jy_miller(x: f64) -> CylinderValues {
    let top = 2 * (((1.5 * x + 40.0) as usize) / 2);
    let mut j = vec![0.0_f64; top + 2];
    j[top] = 1e-30;
    for k in (1..=top).rev() {
        j[k - 1] = 2.0 * k as f64 / x * j[k] - j[k + 1];
        if j[k - 1].abs() > 1e250 {
            for v in j.iter_mut().skip(k - 1) {
                *v *= 1e-250;
            }
        }
    }
    let norm = j[0] + 2.0 * j.iter().skip(2).step_by(2).sum::<f64>();
    for v in j.iter_mut() {
        *v /= norm;
    }
    let log_term = (0.5 * x).ln() + EULER_GAMMA;
    let mut even = 0.0;
    let mut odd = 0.0;
    for k in 1..=top / 2 {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let kf = k as f64;
        even += sign * j[2 * k] / kf;
        odd += sign * (j[2 * k - 1] - j[2 * k + 1]) / kf;
    }
    CylinderValues {
        j0: j[0],
        j1: j[1],
        y0: FRAC_2_PI * (log_term * j[0] - 2.0 * even),
        y1: FRAC_2_PI * (-j[0] / x + log_term * j[1] + odd),
    }
}

/// Hankel `P(ν, x)`, `Q(ν, x)` truncated at the smallest term.
fn hankel_pq(nu: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0; // a_k(ν)/x^k with alternating signs folded in below
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term *= (mu - odd * odd) / (kf * 8.0 * x);
        let size = term.abs();
        if size >= last || size < 1e-18 {
            break;
        }
        last = size;
        // P gets (−1)^{k/2} a_{k}, Q gets (−1)^{(k−1)/2} a_{k}.
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
    }
    (p, q)
}

fn jy_hankel(x: f64) -> CylinderValues {
    let amp = (FRAC_2_PI / x).sqrt();
    let (p0, q0) = hankel_pq(0.0, x);
    let (p1, q1) = hankel_pq(1.0, x);
    let chi0 = x - FRAC_PI_4;
    let chi1 = x - 3.0 * FRAC_PI_4;
    let (s0, c0) = chi0.sin_cos();
    let (s1, c1) = chi1.sin_cos();
    CylinderValues {
        j0: amp * (p0 * c0 - q0 * s0),
        y0: amp * (p0 * s0 + q0 * c0),
        j1: amp * (p1 * c1 - q1 * s1),
        y1: amp * (p1 * s1 + q1 * c1),
    }
}

/// Returns `(e^x K0(x), e^x K1(x))`.
pub(crate) fn k_scaled(x: f64) -> (f64, f64) {
    if x <= K_SERIES_MAX {
        let (k0, k1) = k_series(x);
        let e = x.exp();
        (k0 * e, k1 * e)
    } else {
        k_trapezoid(x)
    }
}

pub(crate) fn k_series(x: f64) -> (f64, f64) {
    let q = 0.25 * x * x;
    let log_half = (0.5 * x).ln();
    let mut t0 = 1.0;
    let mut t1 = 1.0;
    let mut i0 = 0.0;
    let mut i1 = 0.0;
    let mut s0 = 0.0;
    let mut s1 = 0.0;
    let mut h = 0.0;
    for k in 0..200 {
        let kf = k as f64;
        if k > 0 {
            t0 *= q / (kf * kf);
            t1 *= q / (kf * (kf + 1.0));
            h += 1.0 / kf;
        }
        let h_next = h + 1.0 / (kf + 1.0);
        i0 += t0;
        i1 += t1;
        s0 += h * t0;
        s1 += (h + h_next - 2.0 * EULER_GAMMA) * t1;
        if k > 2 && t0 < 1e-18 * i0 {
            break;
        }
    }
    i1 *= 0.5 * x;
    let k0 = -(log_half + EULER_GAMMA) * i0 + s0;
    let k1 = 1.0 / x + log_half * i1 - 0.25 * x * s1;
    (k0, k1)
}

pub(crate) fn k_trapezoid(x: f64) -> (f64, f64) {
    // The integrand narrows like x^{-1/2}; keep several nodes across it.
    let step = 0.05f64.min(0.4 / x.sqrt());
    let mut k0 = 0.5;
    let mut k1 = 0.5;
    for n in 1.. {
        let t = n as f64 * step;
        let (c, expo) = (t.cosh(), -x * (t.cosh() - 1.0));
        if expo < -745.0 {
            break;
        }
        let w = expo.exp();
        k0 += w;
        k1 += w * c;
        if w * c < 1e-18 * k1 {
            break;
        }
    }
    (k0 * step, k1 * step)
}
