//! Closed-form spectral quantities against the quadrature oracle.

use std::f64::consts::PI;

use num_complex::Complex64;
use transmute_lab::oracle::{
    quadrature_decay_amplitude, quadrature_g, quadrature_i, quadrature_slide_kernel,
    shell_spectral_weight, QuadratureSpec,
};
use transmute_lab::regulators::flat_weight;
use transmute_lab::tolerances::ORACLE_AGREEMENT;
use transmute_lab::{
    bound_state_pole, decay_amplitude, g_function, i_function, slide_kernel, spectral_weight,
    tau_regulated, ComplexEnergy, Coupling, PhysicalScales, Regulator,
};

const NAT: PhysicalScales = PhysicalScales::natural();

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

/// 20 points per regulator: interior points on a log-radius spiral plus
/// boundary values on both sides of the threshold.
fn z_grid(scale: f64) -> Vec<ComplexEnergy> {
    let angles: [f64; 4] = [0.3, 1.2, 2.0, 2.9];
    let mut zs: Vec<ComplexEnergy> = (0..14)
        .map(|i| {
            let r = scale * 10f64.powf(-3.0 + 6.0 * i as f64 / 13.0);
            let phi = angles[i % angles.len()];
            ComplexEnergy::interior(r * phi.cos(), r * phi.sin()).unwrap()
        })
        .collect();
    for m in [0.01, 0.3, 0.9] {
        zs.push(ComplexEnergy::continuum(scale * m).unwrap());
    }
    for m in [1e-4, 0.5, 20.0] {
        zs.push(ComplexEnergy::below_threshold(scale * m).unwrap());
    }
    zs
}

#[test]
fn shell_reduction_matches_spectral_weight() {
    let spec = QuadratureSpec::default();
    let c = PhysicalScales::new(0.8).unwrap();
    let regs = [
        Regulator::PureDelta,
        Regulator::sharp_cutoff(5.0).unwrap(),
        Regulator::gaussian(0.6).unwrap(),
    ];
    for reg in &regs {
        for &e in &[0.0, 1e-3, 0.4, 2.0, 4.9, 5.1, 12.0] {
            let closed = spectral_weight(reg, e, c).unwrap();
            let shell = shell_spectral_weight(reg, e, c, &spec).unwrap();
            assert!(
                (closed - shell).abs() <= 1e-10 * closed.abs().max(1e-300),
                "{reg} E={e}: {closed} vs {shell}"
            );
        }
    }
    assert_eq!(
        spectral_weight(&Regulator::PureDelta, 1.0, NAT).unwrap(),
        1.0 / (4.0 * PI)
    );
}

#[test]
fn resolvent_matches_quadrature_on_grids() {
    let spec = QuadratureSpec::default();
    for reg in [
        Regulator::sharp_cutoff(50.0).unwrap(),
        Regulator::gaussian(0.2).unwrap(),
    ] {
        let scale = reg
            .support_limit()
            .unwrap_or_else(|| reg.gaussian_energy(NAT).unwrap());
        for z in z_grid(scale) {
            let closed = g_function(&reg, z, NAT).unwrap();
            let quad = quadrature_g(&reg, z, &spec, NAT).unwrap().value;
            assert!(
                rel(closed, quad) <= ORACLE_AGREEMENT,
                "{reg} z={z}: {closed} vs {quad}"
            );
            let i = i_function(&reg, z, NAT).unwrap();
            let iq = quadrature_i(&reg, z, &spec, NAT).unwrap();
            assert!(rel(i, iq) <= ORACLE_AGREEMENT);
        }
    }
}

#[test]
fn slide_kernel_matches_quadrature_on_grids() {
    let spec = QuadratureSpec::default();
    let z0 = ComplexEnergy::interior(0.2, 0.7).unwrap();
    for reg in [
        Regulator::PureDelta,
        Regulator::sharp_cutoff(50.0).unwrap(),
        Regulator::gaussian(0.2).unwrap(),
    ] {
        for z in z_grid(10.0) {
            if matches!(reg, Regulator::PureDelta) && z.is_boundary() {
                continue;
            }
            let closed = slide_kernel(&reg, z, z0, NAT).unwrap();
            let quad = quadrature_slide_kernel(&reg, z, z0, &spec, NAT).unwrap();
            assert!(
                (closed - quad).norm() <= ORACLE_AGREEMENT * closed.norm().max(flat_weight(NAT)),
                "{reg} z={z}: {closed} vs {quad}"
            );
        }
    }
}

#[test]
fn large_cutoff_resolvent_at_i() {
    let spec = QuadratureSpec::default();
    let reg = Regulator::sharp_cutoff(1e6).unwrap();
    let z = ComplexEnergy::interior(0.0, 1.0).unwrap();
    let closed = g_function(&reg, z, NAT).unwrap();
    let quad = quadrature_g(&reg, z, &spec, NAT).unwrap().value;
    assert!(rel(closed, quad) < 1e-8);
    // Scaling regime: (1/4π) ln(−z/Λ) + O(|z|/Λ)
    let asym = (-z.to_complex() / 1e6).ln() / (4.0 * PI);
    assert!((closed - asym).norm() < 1e-6 / (4.0 * PI) * 2.0);
}

#[test]
fn regulator_independent_kernel_at_large_cutoff() {
    let z = ComplexEnergy::interior(0.0, 1.0).unwrap();
    let z0 = ComplexEnergy::interior(0.0, 2.0).unwrap();
    let exact = slide_kernel(&Regulator::PureDelta, z, z0, NAT).unwrap();
    let sharp = slide_kernel(&Regulator::sharp_cutoff(1e8).unwrap(), z, z0, NAT).unwrap();
    assert!(rel(sharp, exact) < 1e-6);
    let spec = QuadratureSpec::default();
    let quad =
        quadrature_slide_kernel(&Regulator::sharp_cutoff(1e8).unwrap(), z, z0, &spec, NAT).unwrap();
    assert!(rel(quad, exact) < 1e-6);
}

#[test]
fn slide_kernel_converges_over_decades() {
    let z = ComplexEnergy::interior(0.5, 1.0).unwrap();
    let z0 = ComplexEnergy::interior(-0.3, 2.0).unwrap();
    let exact = slide_kernel(&Regulator::PureDelta, z, z0, NAT).unwrap();
    let size = z.norm().max(z0.norm());
    for p in 2..=10 {
        let lambda = 10f64.powi(p);
        let sharp = slide_kernel(&Regulator::sharp_cutoff(lambda).unwrap(), z, z0, NAT).unwrap();
        let err = (sharp - exact).norm() / flat_weight(NAT);
        assert!(err <= 2.0 * size / lambda, "Λ=1e{p}: {err}");

        let a = 10f64.powf(-p as f64 / 2.0);
        let gauss = slide_kernel(&Regulator::gaussian(a).unwrap(), z, z0, NAT).unwrap();
        let err = (gauss - exact).norm() / flat_weight(NAT);
        // The Gaussian kernel expands in w·ln(w), w = z a²/c.
        let w = size * a * a;
        assert!(
            err <= 2.0 * w * (1.0 + w.ln().abs()),
            "a=1e-{}: {err}",
            p as f64 / 2.0
        );
    }
}

#[test]
fn cutoff_difference_is_universal() {
    let (l1, l2) = (1e9, 3.7e11);
    for &(re, im) in &[(0.0, 1.0), (-200.0, 1.0), (300.0, 20.0), (900.0, 1e-3)] {
        let z = ComplexEnergy::interior(re, im).unwrap();
        assert!(z.norm() / l1 <= 1e-6);
        let d = i_function(&Regulator::sharp_cutoff(l2).unwrap(), z, NAT).unwrap()
            - i_function(&Regulator::sharp_cutoff(l1).unwrap(), z, NAT).unwrap();
        let want = (l1 / l2).ln() / (4.0 * PI);
        assert!((d - want).norm() < 1e-5, "{z}: {d}");
    }
}

#[test]
fn i_at_transmuted_energy() {
    for &eps in &[0.5, 1.0, 2.0] {
        let lambda = 7.0;
        let eb = lambda * (-4.0 * PI / eps).exp();
        let z = ComplexEnergy::below_threshold(eb).unwrap();
        let i = i_function(&Regulator::sharp_cutoff(lambda).unwrap(), z, NAT).unwrap();
        assert!((i.re + 1.0 / eps).abs() <= eb / lambda);
        assert_eq!(i.im, 0.0);
    }
}

#[test]
fn fixed_ratio_i_against_quadrature() {
    let spec = QuadratureSpec::default();
    let reg = Regulator::sharp_cutoff(4f64.exp()).unwrap();
    let z = ComplexEnergy::below_threshold(1.0).unwrap();
    let i = i_function(&reg, z, NAT).unwrap();
    let q = quadrature_i(&reg, z, &spec, NAT).unwrap();
    assert!(rel(i, q) < 1e-10);
    assert!((i.re + 1.0 / PI).abs() < 2e-3);
}

#[test]
fn regulated_amplitude_against_quadrature_backed_i() {
    let spec = QuadratureSpec::default();
    let eps = 4.0 * PI;
    let lambda = 8f64.exp();
    let reg = Regulator::sharp_cutoff(lambda).unwrap();
    let z = ComplexEnergy::continuum(1.0).unwrap();
    let tau = tau_regulated(Coupling::new(eps).unwrap(), &reg, z, NAT).unwrap();
    let i = quadrature_i(&reg, z, &spec, NAT).unwrap();
    let oracle = -eps / (1.0 + eps * i);
    assert!(rel(tau.tau, oracle) < 1e-10);
    assert!(((1.0 / tau.tau).im - 0.25).abs() < 1e-14);
}

/// Plain bisection in ln E on the quadrature-backed pole condition.
fn oracle_binding(eps: f64, reg: &Regulator, lo: f64, hi: f64) -> f64 {
    let spec = QuadratureSpec::default();
    let f = |u: f64| {
        let z = ComplexEnergy::below_threshold(u.exp()).unwrap();
        1.0 + eps * quadrature_i(reg, z, &spec, NAT).unwrap().re
    };
    let (mut a, mut b) = (lo.ln(), hi.ln());
    assert!(f(a) < 0.0 && f(b) > 0.0);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if f(m) < 0.0 {
            a = m;
        } else {
            b = m;
        }
        if b - a < 1e-12 {
            break;
        }
    }
    (0.5 * (a + b)).exp()
}

#[test]
fn pole_solver_matches_quadrature_bisection() {
    let cases = [(4.0 * PI, 10.0), (1.0, 1.0)];
    for (eps, lambda) in cases {
        let reg = Regulator::sharp_cutoff(lambda).unwrap();
        let solved = bound_state_pole(Coupling::new(eps).unwrap(), &reg, NAT).unwrap();
        let oracle = oracle_binding(eps, &reg, lambda * 1e-12, lambda);
        assert!(
            (solved.binding_energy / oracle - 1.0).abs() < 1e-9,
            "ε={eps}: {} vs {oracle}",
            solved.binding_energy
        );
    }
    let reg = Regulator::gaussian(1.0).unwrap();
    let solved = bound_state_pole(Coupling::new(2.0).unwrap(), &reg, NAT).unwrap();
    let oracle = oracle_binding(2.0, &reg, 1e-12, 10.0);
    assert!((solved.binding_energy / oracle - 1.0).abs() < 1e-9);
}

#[test]
fn decay_amplitude_against_quadrature() {
    let spec = QuadratureSpec::default();
    for reg in [
        Regulator::sharp_cutoff(3.0).unwrap(),
        Regulator::gaussian(0.8).unwrap(),
    ] {
        for &t in &[0.05, 0.7, 4.0] {
            let closed = decay_amplitude(&reg, t, NAT).unwrap();
            let quad = quadrature_decay_amplitude(&reg, t, &spec, NAT).unwrap();
            assert!(rel(closed, quad) < 1e-9, "{reg} t={t}: {closed} vs {quad}");
        }
    }
}

#[test]
fn pure_delta_decay_amplitude_is_the_narrow_gaussian_limit() {
    let t = 1.0;
    let exact = decay_amplitude(&Regulator::PureDelta, t, NAT).unwrap();
    assert!((exact - Complex64::new(0.0, -1.0 / (4.0 * PI))).norm() < 1e-17);
    let spec = QuadratureSpec::default();
    let mut last = f64::INFINITY;
    for &a in &[0.3, 0.1, 0.03] {
        let q =
            quadrature_decay_amplitude(&Regulator::gaussian(a).unwrap(), t, &spec, NAT).unwrap();
        let err = (q - exact).norm();
        assert!(err < last);
        assert!(err <= 2.0 * a * a * exact.norm());
        last = err;
    }
}
