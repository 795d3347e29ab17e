//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fail.

use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use transmute_lab::amplitude::transmutation_schedule;
use transmute_lab::oracle::{
    bessel_j0, bessel_j1, bessel_y0, bessel_y1, contour_residue, quadrature_g, quadrature_i,
    quadrature_slide_kernel, QuadratureSpec,
};
use transmute_lab::{
    bound_state_pole, g_function, i_function, principal_log_ratio, slide, slide_kernel,
    tau_regulated, tau_renormalized, ComplexEnergy, Coupling, FlowPoint, PhysicalScales, Regulator,
};

const NAT: PhysicalScales = PhysicalScales::natural();
const FOUR_PI: f64 = 4.0 * PI;
const BIN: &str = env!("CARGO_BIN_EXE_transmute-lab");

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn run_cli(args: &[&str], threads: &str) -> (i32, String) {
    let out = Command::new(BIN)
        .args(args)
        .env("TRANSMUTE_LAB_THREADS", threads)
        .output()
        .expect("run transmute-lab");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 output"),
    )
}

/// Data rows of a CSV table as string cells.
fn data_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn footer(csv: &str, key: &str) -> Option<String> {
    let prefix = format!("# {key} = ");
    csv.lines()
        .find_map(|l| l.strip_prefix(&prefix).map(str::to_string))
}

fn num(s: &str) -> f64 {
    s.parse().unwrap_or(f64::NAN)
}

fn uhp(rng: &mut StdRng) -> ComplexEnergy {
    let r = rng.gen_range(-6.0f64..6.0).exp();
    let th = rng.gen_range(0.01..PI - 0.01);
    ComplexEnergy::interior(r * th.cos(), r * th.sin()).unwrap()
}

fn running_relation() -> Outcome {
    let mut rng = StdRng::seed_from_u64(20260418);
    let reg = Regulator::PureDelta;
    let (mut worst_run, mut worst_group) = (0.0f64, 0.0f64);
    let mut checked = 0;
    while checked < 100 {
        let (z0, z1, z) = (uhp(&mut rng), uhp(&mut rng), uhp(&mut rng));
        let t0 = Complex64::new(rng.gen_range(-20.0..20.0), rng.gen_range(-20.0..0.0));
        let anchor = FlowPoint::new(z0, t0).unwrap();
        let (Ok(direct), Ok(mid)) = (slide(&anchor, &reg, z, NAT), slide(&anchor, &reg, z1, NAT))
        else {
            continue;
        };
        let Ok(two) = slide(&FlowPoint::new(z1, mid.tau).unwrap(), &reg, z, NAT) else {
            continue;
        };
        let lhs = 1.0 / direct.tau - 1.0 / t0 + principal_log_ratio(z, z0).unwrap() / FOUR_PI;
        worst_run = worst_run.max(lhs.norm());
        worst_group = worst_group.max((two.tau - direct.tau).norm() / direct.tau.norm());
        checked += 1;
    }
    outcome(
        worst_run <= 1e-12 && worst_group <= 1e-12,
        format!("max running-relation residual {worst_run:.3e}, max group defect {worst_group:.3e} over 100 pairs"),
    )
}

fn theorem() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    let all_zero = (0..100).all(|_| {
        let z = uhp(&mut rng);
        let eps = Coupling::new(rng.gen_range(0.01..50.0)).unwrap();
        tau_regulated(eps, &Regulator::PureDelta, z, NAT)
            .unwrap()
            .is_zero()
    });
    let (code, csv) = run_cli(
        &[
            "theorem",
            "--epsilon",
            "1",
            "--z",
            "0,1",
            "--lambda",
            "1e2:1e12:11,log",
        ],
        "0",
    );
    let rows = data_rows(&csv);
    let abs: Vec<f64> = rows.iter().map(|r| num(&r[1])).collect();
    let monotone = footer(&csv, "monotone_decrease").as_deref() == Some("true");
    let rel = num(&footer(&csv, "slope_rel_dev_from_1_over_4pi").unwrap_or_default());
    let peak =
        abs.iter().zip(&rows).fold(
            (0.0, 0.0),
            |acc, (&a, r)| if a > acc.0 { (a, num(&r[0])) } else { acc },
        );
    // Beyond the pole region, for the record.
    let beyond: Vec<f64> = rows
        .iter()
        .filter(|r| num(&r[0]) >= 1e7)
        .map(|r| num(&r[1]))
        .collect();
    let beyond_monotone = beyond.windows(2).all(|w| w[1] < w[0]);
    outcome(
        code == 0 && all_zero && monotone && rel.abs() <= 0.01,
        format!(
            "unregulated tau == 0: {all_zero}; |tau| monotone over 1e2..1e12: {monotone} (peak {:.3e} at Lambda={:.0e}); \
             slope rel dev {rel:.3e} (limit 1e-2); monotone for Lambda >= 1e7: {beyond_monotone}",
            peak.0, peak.1
        ),
    )
}

fn transmutation_formula() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for &lambda in &[1.0, 1e3, 1e6] {
        for i in 0..=30 {
            let eps = 0.5 + 7.5 * i as f64 / 30.0;
            let b = bound_state_pole(
                Coupling::new(eps).unwrap(),
                &Regulator::sharp_cutoff(lambda).unwrap(),
                NAT,
            )
            .unwrap();
            let closed = lambda * (-FOUR_PI / eps).exp();
            let rel = (b.binding_energy / closed - 1.0).abs();
            let bound = 2.0 * closed / lambda;
            ok &= rel <= bound;
            worst = worst.max(rel / bound);
        }
    }
    outcome(ok, format!("max (rel err)/(2 E_B/Lambda) = {worst:.4} over eps in [0.5, 8], Lambda in {{1, 1e3, 1e6}}"))
}

fn renormalized_limit() -> Outcome {
    let (code, csv) = run_cli(
        &[
            "transmute",
            "--binding-energy",
            "1",
            "--z",
            "2+i0",
            "--steps",
            "10",
        ],
        "0",
    );
    let dev: Vec<f64> = data_rows(&csv).iter().map(|r| num(&r[5])).collect();
    let monotone = dev.len() == 10 && dev.windows(2).all(|w| w[1] < w[0]);
    let spec = QuadratureSpec::new(1e-300, 1e-9, 20_000, true).unwrap();
    let mut worst: f64 = 0.0;
    for &eb in &[1e-3, 1.0, 1e3] {
        let r = contour_residue(
            |z| Ok(tau_renormalized(eb, z)?.tau),
            -eb,
            (1e-4 * eb, 1e-5 * eb),
            &spec,
        )
        .unwrap();
        worst = worst.max((r - FOUR_PI * eb).norm() / (FOUR_PI * eb));
    }
    // Pole of the regulated sequence tracks -E_B.
    let (lambda, c) = transmutation_schedule(1.0, 10).unwrap();
    let pole = bound_state_pole(c, &Regulator::sharp_cutoff(lambda).unwrap(), NAT).unwrap();
    outcome(
        code == 0 && monotone && worst <= 1e-6,
        format!(
            "deviation monotone over 10 decades: {monotone} (last {:.3e}); residue rel err {worst:.3e}; n=10 pole at -{:.12}",
            dev.last().copied().unwrap_or(f64::NAN),
            pole.binding_energy
        ),
    )
}

fn unitarity() -> Outcome {
    let (code, csv) = run_cli(
        &[
            "scatter",
            "--regulator",
            "renormalized",
            "--binding-energy",
            "1",
            "--energy",
            "1e-6:1e6:200,log",
        ],
        "0",
    );
    let rows = data_rows(&csv);
    let (mut u, mut opt, mut l) = (0.0f64, 0.0f64, 0.0f64);
    for r in &rows {
        let k = num(&r[1]);
        let f = Complex64::new(num(&r[2]), num(&r[3]));
        let l_opt = num(&r[5]);
        let l_im = num(&r[6]);
        u = u.max(num(&r[8]).abs());
        let defect = 2.0 * PI * f.norm_sqr() - (8.0 * PI / k).sqrt() * f.im;
        opt = opt.max(defect.abs() / l_im);
        l = l.max((l_opt - l_im).abs() / l_im);
    }
    outcome(
        code == 0 && rows.len() == 200 && u <= 1e-13 && opt <= 1e-12 && l <= 1e-12,
        format!("{} rows; max |Im(1/tau) - 1/4| {u:.3e}; max optical defect {opt:.3e}; max L disagreement {l:.3e}", rows.len()),
    )
}

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

fn oracle_equivalence() -> Outcome {
    let spec = QuadratureSpec::default();
    let rel = |a: Complex64, b: Complex64| (a - b).norm() / b.norm();
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    for reg in [
        Regulator::sharp_cutoff(50.0).unwrap(),
        Regulator::gaussian(0.2).unwrap(),
    ] {
        let scale = reg
            .support_limit()
            .unwrap_or_else(|| reg.gaussian_energy(NAT).unwrap());
        let grid = z_grid(scale);
        let anchor = grid[5];
        for z in grid {
            let g = (g_function(&reg, z, NAT), quadrature_g(&reg, z, &spec, NAT));
            let i = (i_function(&reg, z, NAT), quadrature_i(&reg, z, &spec, NAT));
            let k = (
                slide_kernel(&reg, z, anchor, NAT),
                quadrature_slide_kernel(&reg, z, anchor, &spec, NAT),
            );
            match (g, i, k) {
                ((Ok(g), Ok(gq)), (Ok(i), Ok(iq)), (Ok(k), Ok(kq))) => {
                    let mut m = rel(g, gq.value).max(rel(i, iq));
                    if kq.norm() > 0.0 {
                        m = m.max(rel(k, kq));
                    }
                    worst = worst.max(m);
                }
                _ => failures += 1,
            }
        }
    }
    let delta_grid: Vec<ComplexEnergy> = z_grid(1.0)
        .into_iter()
        .filter(|z| !z.is_boundary())
        .collect();
    let anchor = ComplexEnergy::interior(0.2, 0.7).unwrap();
    for &z in &delta_grid {
        match quadrature_slide_kernel(&Regulator::PureDelta, z, anchor, &spec, NAT) {
            Ok(q) => {
                worst = worst.max(rel(
                    slide_kernel(&Regulator::PureDelta, z, anchor, NAT).unwrap(),
                    q,
                ))
            }
            Err(_) => failures += 1,
        }
    }
    let mut wr: f64 = 0.0;
    for &x in &[0.1, 1.0, 10.0, 100.0] {
        let w = bessel_j1(x).unwrap() * bessel_y0(x).unwrap()
            - bessel_j0(x).unwrap() * bessel_y1(x).unwrap();
        wr = wr.max((w * PI * x / 2.0 - 1.0).abs());
    }
    outcome(
        failures == 0 && worst <= 1e-8 && wr <= 1e-10,
        format!("max closed-vs-quadrature rel dev {worst:.3e} ({failures} quadrature failures); max Wronskian rel dev {wr:.3e}"),
    )
}

fn regulator_dependence() -> Outcome {
    let start = Instant::now();
    let (code, csv) = run_cli(
        &[
            "bind",
            "--regulator",
            "sharp-cutoff,gaussian,circular-well",
            "--epsilon",
            "0.5:2:16",
            "--lambda",
            "1",
            "--range",
            "1",
            "--radius",
            "1",
        ],
        "0",
    );
    let get = |k: &str| num(&footer(&csv, k).unwrap_or_default());
    let (sw, sg) = (get("circular-well_slope"), get("gaussian_slope"));
    let (pw, pg, ps) = (
        get("circular-well_prefactor"),
        get("gaussian_prefactor"),
        get("sharp-cutoff_prefactor"),
    );
    let slopes_ok = (sw - 1.0).abs() <= 0.02 && (sg - 1.0).abs() <= 0.02;
    let mut worst: f64 = 0.0;
    let mut scatter_ok = true;
    for eps in ["0.5", "1", "1.5", "2"] {
        let (c, s) = run_cli(
            &[
                "scatter",
                "--regulator",
                "circular-well",
                "--radius",
                "1",
                "--epsilon",
                eps,
                "--energy",
                "1e-10:1e-6:5,log",
            ],
            "0",
        );
        scatter_ok &= c == 0;
        let eb = num(&footer(&s, "well_binding_energy").unwrap_or_default());
        for r in data_rows(&s) {
            let (e, delta) = (num(&r[0]), num(&r[7]));
            let fitted = e * (-PI / delta.tan()).exp();
            let tau = -4.0 * Complex64::from_polar(delta.sin(), delta);
            let ren = tau_renormalized(fitted, ComplexEnergy::continuum(e).unwrap())
                .unwrap()
                .tau;
            let dev = (tau - ren).norm() / ren.norm();
            let fit_dev = (fitted / eb - 1.0).abs();
            worst = worst.max(dev.max(fit_dev));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        code == 0 && scatter_ok && slopes_ok && worst <= 0.03 && secs <= 60.0,
        format!(
            "slopes: circular-well {sw:.5}, gaussian {sg:.5}; prefactors vs sharp cutoff ({ps:.5}): circular-well {pw:.5}, gaussian {pg:.5}; \
             low-energy tau and fitted E_B max rel dev {worst:.3e}; {secs:.2}s"
        ),
    )
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("scan.cfg");
    std::fs::write(&cfg, "regulator = sharp-cutoff,gaussian,circular-well,pure-delta\nepsilon = 0.5:4:12\nlambda = 1\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let out = |name: &str, threads: &str, args: &[&str]| -> Vec<u8> {
        let p = dir.path().join(name);
        let mut a: Vec<&str> = args.to_vec();
        let ps = p.to_str().unwrap().to_string();
        a.extend(["--out", &ps]);
        let (code, _) = run_cli(&a, threads);
        assert_eq!(code, 0, "{args:?}");
        std::fs::read(Path::new(&p)).unwrap()
    };
    let mut same = true;
    let scans: [&[&str]; 3] = [
        &["bind", "--config", cfg],
        &[
            "scatter",
            "--regulator",
            "circular-well",
            "--epsilon",
            "1",
            "--energy",
            "1e-6:1e2:64,log",
        ],
        &[
            "flow",
            "--regulator",
            "sharp-cutoff",
            "--lambda",
            "1e6",
            "--tau0",
            "-1,-0.5",
            "--energy",
            "1e-3:1e3:64,log",
        ],
    ];
    for (i, scan) in scans.iter().enumerate() {
        let golden = out(&format!("g{i}.csv"), "1", scan);
        same &= out(&format!("a{i}.csv"), "1", scan) == golden;
        same &= out(&format!("b{i}.csv"), "4", scan) == golden;
    }
    outcome(
        same,
        format!("byte-identical across two runs and threads {{1, 4}}: {same}"),
    )
}

type Check = fn() -> Outcome;

fn main() {
    let criteria: [(&str, Check); 8] = [
        ("running relation and group property", running_relation),
        ("no-scattering theorem", theorem),
        ("transmutation formula", transmutation_formula),
        ("renormalized amplitude", renormalized_limit),
        ("unitarity and optical theorem", unitarity),
        ("oracle equivalence", oracle_equivalence),
        ("regulator dependence of the scale", regulator_dependence),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} criterion {}: {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
