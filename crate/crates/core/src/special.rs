//! Exponential-integral kernels for the Gaussian form factor.

use num_complex::Complex64;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const ASYMPTOTIC_RADIUS: f64 = 40.0;
const SERIES_RADIUS: f64 = 2.0;
const MAX_TERMS: usize = 10_000;

/// `e^{u} E₁(u)` for `u ≠ 0` in the cut plane `|arg u| ≤ π`.
///
/// On the negative real axis the sign of `u.im` selects the side of the cut
/// (`-0.0` gives the value approached from below).
pub fn exp_e1_scaled(u: Complex64) -> Complex64 {
    let r = u.norm();
    if r >= ASYMPTOTIC_RADIUS {
        asymptotic(u)
    } else if r <= SERIES_RADIUS || (u.re < 0.0 && u.im.abs() < -u.re) {
        series(u) * u.exp()
    } else {
        continued_fraction(u)
    }
}

/// `E₁(u)` by its convergent power series.
fn series(u: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut power = Complex64::new(1.0, 0.0);
    for n in 1..MAX_TERMS {
        let nf = n as f64;
        power *= -u / nf;
        let term = power / nf;
        sum += term;
        if term.norm() <= f64::EPSILON * 0.25 * sum.norm() {
            break;
        }
    }
    -EULER_GAMMA - u.ln() - sum
}

/// Modified Lentz evaluation of the even continued fraction
/// `e^{u}E₁(u) = 1/(u+1− 1/(u+3− 4/(u+5− …)))`.
fn continued_fraction(u: Complex64) -> Complex64 {
    let tiny = Complex64::new(1e-300, 0.0);
    let mut b = u + 1.0;
    let mut c = Complex64::new(1.0 / 1e-300, 0.0);
    let mut d = Complex64::new(1.0, 0.0) / b;
    let mut h = d;
    for i in 1..MAX_TERMS {
        let a = -((i * i) as f64);
        b += 2.0;
        d = a * d + b;
        if d.norm() < 1e-300 {
            d = tiny;
        }
        c = b + a / c;
        if c.norm() < 1e-300 {
            c = tiny;
        }
        d = Complex64::new(1.0, 0.0) / d;
        let delta = c * d;
        h *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            break;
        }
    }
    h
}

/// Optimally truncated `Σ (−1)^k k!/u^{k+1}`.
fn asymptotic(u: Complex64) -> Complex64 {
    let inv = 1.0 / u;
    let mut term = inv;
    let mut sum = term;
    let mut last = term.norm();
    for k in 1..MAX_TERMS {
        let next = term * (-(k as f64)) * inv;
        let size = next.norm();
        if size >= last {
            break;
        }
        sum += next;
        term = next;
        last = size;
        if size <= f64::EPSILON * 0.25 * sum.norm() {
            break;
        }
    }
    sum
}

/// `e^{-x} Ei(x)` for real `x > 0`.
pub fn exp_neg_ei(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x >= ASYMPTOTIC_RADIUS {
        let mut term = 1.0 / x;
        let mut sum = term;
        for k in 1..MAX_TERMS {
            let next = term * k as f64 / x;
            if next >= term {
                break;
            }
            sum += next;
            term = next;
            if term <= f64::EPSILON * 0.25 * sum {
                break;
            }
        }
        sum
    } else {
        let mut sum = 0.0;
        let mut power = 1.0;
        for n in 1..MAX_TERMS {
            let nf = n as f64;
            power *= x / nf;
            let term = power / nf;
            sum += term;
            if term <= f64::EPSILON * 0.25 * sum {
                break;
            }
        }
        (EULER_GAMMA + x.ln() + sum) * (-x).exp()
    }
}
