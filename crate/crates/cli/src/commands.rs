//! The five experiments. Rows are evaluated on the worker pool and kept in
//! input order; footers are computed from the ordered rows.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use transmute_lab::amplitude::{theorem_envelope, transmutation_schedule};
use transmute_lab::observables::{tau_from_phase_shift, unitarity_defect};
use transmute_lab::oracle::{well_bound_state, well_phase_shift, WellParameters};
use transmute_lab::regulators::{flat_weight, spectral_weight};
use transmute_lab::{
    bound_state_pole, f_from_tau, phase_shift_from_tau, slide, slide_kernel, tau_regulated,
    tau_renormalized, theorem_limit_demo, wavenumber, Amplitude, ComplexEnergy, Coupling, Error,
    FlowPoint, PhysicalScales, Regulator,
};

use crate::config::ScanConfig;
use crate::grid::{parse_complex, parse_complex_energy, Spacing};
use crate::table::{Cell, Table};
use crate::CliError;

const FOUR_PI: f64 = 4.0 * PI;

/// Least-squares slope and intercept.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

fn flag(b: bool) -> Cell {
    Cell::Text(if b { "true" } else { "false" }.into())
}

fn single(cfg: &ScanConfig, key: &str, default: &str) -> Result<f64, CliError> {
    let g = cfg.grid_or(key, default, Spacing::Linear)?;
    if g.len() != 1 {
        return Err(CliError::Usage(format!(
            "`{key}` takes a single value here"
        )));
    }
    Ok(g[0])
}

pub fn run(cfg: &ScanConfig) -> Result<Table, CliError> {
    match cfg.command.as_str() {
        "flow" => flow(cfg),
        "bind" => bind(cfg),
        "theorem" => theorem(cfg),
        "transmute" => transmute(cfg),
        "scatter" => scatter(cfg),
        other => Err(CliError::Usage(format!("unknown command `{other}`"))),
    }
}

struct FlowRow {
    z: ComplexEnergy,
    inv: Complex64,
    tau: Option<Complex64>,
}

fn flow(cfg: &ScanConfig) -> Result<Table, CliError> {
    let scales = cfg.scales;
    let z0 = parse_complex_energy("anchor", cfg.get("anchor").unwrap_or("0,1"))?;
    let tau0 = match cfg.get("tau0") {
        Some(t) => parse_complex("tau0", t)?,
        None => Complex64::new(FOUR_PI, 0.0),
    };
    let names = cfg.regulator_names("pure-delta");
    let [name] = names.as_slice() else {
        return Err(CliError::Usage("flow takes a single regulator".into()));
    };
    let reg = cfg.regulator(name)?;
    if matches!(reg, Regulator::CircularWell { .. }) {
        return Err(CliError::Usage(
            "circular-well has no separable flow".into(),
        ));
    }
    let anchor = FlowPoint::new(z0, tau0)?;
    let mags = cfg.energy_or("1:2980.9579870417283:9,log")?;
    let points: Vec<ComplexEnergy> = mags
        .iter()
        .map(|&m| z0.scaled(m / z0.norm()))
        .collect::<transmute_lab::Result<_>>()?;

    let rows: Vec<FlowRow> = points
        .par_iter()
        .map(|&z| -> Result<FlowRow, CliError> {
            let kernel = scales.kinetic_constant() * slide_kernel(&reg, z, z0, scales)?;
            let inv = if anchor.tau0.is_zero() {
                Complex64::new(f64::INFINITY, 0.0)
            } else {
                1.0 / tau0 - kernel
            };
            let tau = match slide(&anchor, &reg, z, scales) {
                Ok(a) => Some(a.tau),
                Err(Error::Pole { .. }) => None,
                Err(e) => return Err(e.into()),
            };
            Ok(FlowRow { z, inv, tau })
        })
        .collect::<Result<_, _>>()?;

    // Group property: hop from each row to the next and compare with the
    // direct slide from the anchor.
    let defects: Vec<f64> = (1..rows.len())
        .into_par_iter()
        .map(|i| -> Result<f64, CliError> {
            let (Some(prev), Some(direct)) = (rows[i - 1].tau, rows[i].tau) else {
                return Ok(0.0);
            };
            if direct == Complex64::new(0.0, 0.0) {
                return Ok(if prev == direct { 0.0 } else { f64::INFINITY });
            }
            let hop = FlowPoint::new(rows[i - 1].z, prev)?;
            match slide(&hop, &reg, rows[i].z, scales) {
                Ok(a) => Ok((a.tau - direct).norm() / direct.norm()),
                Err(Error::Pole { .. }) => Ok(0.0),
                Err(e) => Err(e.into()),
            }
        })
        .collect::<Result<_, _>>()?;
    let max_defect = defects.iter().cloned().fold(0.0, f64::max);

    let mut t = Table::new(
        "flow",
        &[
            "z_re",
            "z_im",
            "re_inv_tau",
            "im_inv_tau",
            "re_tau",
            "im_tau",
            "status",
        ],
    );
    t.note(format!(
        "regulator = {reg}; anchor z0 = {z0}, tau0 = {},{}",
        tau0.re, tau0.im
    ));
    t.note("re_inv_tau, im_inv_tau: 1/tau(z) = 1/tau(z0) - c*[g(z) - g(z0)]; pure-delta kernel (1/4pi c) ln(z/z0)");
    t.note("re_tau, im_tau: tau(z) = tau(z0) / (1 - tau(z0) c [g(z) - g(z0)])");
    t.note("status: OK or POLE (denominator below the pole threshold)");
    for r in &rows {
        let (tr, ti, st) = match r.tau {
            Some(v) => (v.re, v.im, "OK"),
            None => (f64::NAN, f64::NAN, "POLE"),
        };
        t.push(vec![
            r.z.re().into(),
            r.z.im().into(),
            r.inv.re.into(),
            r.inv.im.into(),
            tr.into(),
            ti.into(),
            st.into(),
        ]);
    }
    let finite: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.inv.re.is_finite())
        .map(|r| (r.z.norm().ln(), r.inv.re))
        .collect();
    if finite.len() >= 2 {
        let (xs, ys): (Vec<f64>, Vec<f64>) = finite.into_iter().unzip();
        t.meta("inv_tau_slope_vs_ln_abs_z", linear_fit(&xs, &ys).0);
    }
    t.meta("group_property_max_defect", max_defect);
    t.meta("group_property_tolerance", cfg.tolerances.group_property);
    t.meta(
        "group_property_pass",
        flag(max_defect <= cfg.tolerances.group_property),
    );
    Ok(t)
}

struct BindRow {
    epsilon: f64,
    name: String,
    solver: f64,
    closed: f64,
    status: &'static str,
}

/// Natural energy unit of a regulator: `Λ`, `E_a = c/a²`, or `c/a²`.
fn regulator_scale(reg: &Regulator, scales: PhysicalScales) -> f64 {
    match *reg {
        Regulator::SharpCutoff { lambda } => lambda,
        Regulator::GaussianFormFactor { .. } => reg.gaussian_energy(scales).expect("gaussian"),
        Regulator::CircularWell { radius } => scales.kinetic_constant() / (radius * radius),
        Regulator::PureDelta => f64::NAN,
    }
}

fn bind(cfg: &ScanConfig) -> Result<Table, CliError> {
    let scales = cfg.scales;
    let eps = cfg.grid_or("epsilon", "0.5:2:16", Spacing::Linear)?;
    let regs: Vec<(String, Regulator)> = cfg
        .regulator_names("sharp-cutoff,gaussian,circular-well,pure-delta")
        .into_iter()
        .map(|n| cfg.regulator(&n).map(|r| (n, r)))
        .collect::<Result<_, _>>()?;
    let jobs: Vec<(f64, usize)> = regs
        .iter()
        .enumerate()
        .flat_map(|(i, _)| eps.iter().map(move |&e| (e, i)))
        .collect();
    let rows: Vec<BindRow> = jobs
        .par_iter()
        .map(|&(e, i)| -> Result<BindRow, CliError> {
            let (name, reg) = &regs[i];
            let scale = regulator_scale(reg, scales);
            let closed = scale * (-FOUR_PI / e).exp();
            let coupling = Coupling::new(e)?;
            let solved = match reg {
                Regulator::CircularWell { radius } => {
                    let w = WellParameters::from_coupling(e, *radius, scales)?;
                    well_bound_state(&w, scales)
                }
                _ => bound_state_pole(coupling, reg, scales).map(|b| b.binding_energy),
            };
            let (solver, status) = match solved {
                Ok(v) => (v, "OK"),
                Err(Error::NoBoundState { .. }) => (f64::NAN, "NO_BOUND_STATE"),
                Err(err) => return Err(err.into()),
            };
            Ok(BindRow {
                epsilon: e,
                name: name.clone(),
                solver,
                closed,
                status,
            })
        })
        .collect::<Result<_, _>>()?;

    let mut t = Table::new(
        "bind",
        &[
            "epsilon",
            "regulator",
            "E_B_solver",
            "E_B_closed_form",
            "rel_dev",
            "status",
        ],
    );
    t.note("E_B_solver: root of 1 + eps*I(-E_B) = 0 (circular-well: exact Bessel matching)");
    t.note("E_B_closed_form: S*exp(-4pi/eps), S = Lambda (sharp-cutoff), c/a^2 (gaussian, circular-well)");
    t.note("rel_dev: E_B_solver/E_B_closed_form - 1");
    t.note("status: OK or NO_BOUND_STATE");
    for r in &rows {
        t.push(vec![
            r.epsilon.into(),
            r.name.as_str().into(),
            r.solver.into(),
            r.closed.into(),
            (r.solver / r.closed - 1.0).into(),
            r.status.into(),
        ]);
    }
    for (name, reg) in &regs {
        let pts: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| &r.name == name && r.status == "OK")
            .map(|r| {
                (
                    -FOUR_PI / r.epsilon,
                    (r.solver / regulator_scale(reg, scales)).ln(),
                )
            })
            .collect();
        if pts.len() < 2 {
            continue;
        }
        let (xs, ys): (Vec<f64>, Vec<f64>) = pts.into_iter().unzip();
        let (slope, intercept) = linear_fit(&xs, &ys);
        t.meta(&format!("{name}_slope"), slope);
        t.meta(&format!("{name}_prefactor"), intercept.exp());
        t.meta(
            &format!("{name}_slope_pass"),
            flag((slope - 1.0).abs() <= cfg.tolerances.bind_slope),
        );
    }
    t.meta("bind_slope_tolerance", cfg.tolerances.bind_slope);
    Ok(t)
}

fn theorem(cfg: &ScanConfig) -> Result<Table, CliError> {
    let scales = cfg.scales;
    let eps = Coupling::new(single(cfg, "epsilon", "1")?)?;
    let z = parse_complex_energy("z", cfg.get("z").unwrap_or("0,1"))?;
    let cutoffs = cfg.grid_or("lambda", "1e2:1e12:11,log", Spacing::Log)?;
    let taus: Vec<Amplitude> = cutoffs
        .par_iter()
        .map(|&l| -> Result<Amplitude, CliError> {
            Ok(theorem_limit_demo(eps, z, &[l], scales)?[0])
        })
        .collect::<Result<_, _>>()?;
    let unregulated = tau_regulated(eps, &Regulator::PureDelta, z, scales)?;

    let mut t = Table::new("theorem", &["Lambda", "abs_tau", "bound_4pi_over_lnLambda"]);
    t.note(format!(
        "epsilon = {}; z = {z}; sharp cutoff",
        eps.epsilon()
    ));
    t.note("abs_tau: |tau_Lambda(z)|, tau = -eps/(1 + eps*I(z))");
    t.note("bound_4pi_over_lnLambda: 4pi/ln(Lambda/|z|), the large-cutoff envelope");
    let abs: Vec<f64> = taus.iter().map(|a| a.tau.norm()).collect();
    for (&l, &a) in cutoffs.iter().zip(&abs) {
        t.push(vec![l.into(), a.into(), theorem_envelope(l, z).into()]);
    }
    let monotone = abs.windows(2).all(|w| w[1] < w[0]);
    t.meta("unregulated_abs_tau", unregulated.tau.norm());
    t.meta("monotone_decrease", flag(monotone));
    if abs.len() >= 2 {
        let xs: Vec<f64> = cutoffs.iter().map(|l| l.ln()).collect();
        let ys: Vec<f64> = abs.iter().map(|a| 1.0 / a).collect();
        let slope = linear_fit(&xs, &ys).0;
        let rel = slope * FOUR_PI - 1.0;
        t.meta("inv_abs_tau_slope", slope);
        t.meta("slope_rel_dev_from_1_over_4pi", rel);
        t.meta(
            "slope_pass",
            flag(rel.abs() <= cfg.tolerances.theorem_slope),
        );
    }
    t.meta("theorem_slope_tolerance", cfg.tolerances.theorem_slope);
    Ok(t)
}

fn transmute(cfg: &ScanConfig) -> Result<Table, CliError> {
    let scales = cfg.scales;
    let eb = cfg.number_or("binding-energy", 1.0)?;
    let z = parse_complex_energy("z", cfg.get("z").unwrap_or("2+i0"))?;
    let steps = cfg.count_or("steps", 10)?;
    if steps < 2 {
        return Err(CliError::Usage("transmute needs --steps >= 2".into()));
    }
    let limit = tau_renormalized(eb, z)?;
    let rows: Vec<(f64, f64, Amplitude)> = (1..=steps)
        .into_par_iter()
        .map(|n| -> Result<_, CliError> {
            let (lambda, c) = transmutation_schedule(eb, n)?;
            let a = tau_regulated(c, &Regulator::sharp_cutoff(lambda)?, z, scales)?;
            Ok((lambda, c.epsilon(), a))
        })
        .collect::<Result<_, _>>()?;

    let mut t = Table::new(
        "transmute",
        &[
            "n",
            "Lambda_n",
            "epsilon_n",
            "re_tau",
            "im_tau",
            "deviation",
        ],
    );
    t.note(format!("E_B = {eb}; z = {z}"));
    t.note("Lambda_n = E_B*10^n, epsilon_n = 4pi/ln(Lambda_n/E_B)");
    t.note("re_tau, im_tau: sharp-cutoff tau = -eps/(1 + eps*I(z))");
    t.note("deviation: |tau_n - 4pi/ln(-E_B/z)|");
    let devs: Vec<f64> = rows.iter().map(|r| (r.2.tau - limit.tau).norm()).collect();
    for (i, ((l, e, a), d)) in rows.iter().zip(&devs).enumerate() {
        t.push(vec![
            Cell::Int(i as i64 + 1),
            (*l).into(),
            (*e).into(),
            a.tau.re.into(),
            a.tau.im.into(),
            (*d).into(),
        ]);
    }
    t.meta("limit_re_tau", limit.tau.re);
    t.meta("limit_im_tau", limit.tau.im);
    t.meta(
        "monotone_convergence",
        flag(devs.windows(2).all(|w| w[1] < w[0])),
    );
    Ok(t)
}

enum Model {
    Renormalized(f64),
    Separable(Coupling, Regulator),
    Well(WellParameters, f64),
}

fn scatter(cfg: &ScanConfig) -> Result<Table, CliError> {
    let scales = cfg.scales;
    let names = cfg.regulator_names("renormalized");
    let [name] = names.as_slice() else {
        return Err(CliError::Usage("scatter takes a single regulator".into()));
    };
    let model = match name.as_str() {
        "renormalized" => Model::Renormalized(cfg.number_or("binding-energy", 1.0)?),
        other => {
            let reg = cfg.regulator(other)?;
            let eps = single(cfg, "epsilon", "1")?;
            match reg {
                Regulator::CircularWell { radius } => {
                    let w = WellParameters::from_coupling(eps, radius, scales)?;
                    let eb = well_bound_state(&w, scales)?;
                    Model::Well(w, eb)
                }
                _ => Model::Separable(Coupling::new(eps)?, reg),
            }
        }
    };
    let energies = cfg.energy_or("1e-6:1e6:200,log")?;
    let tol = cfg.tolerances.clone();

    let rows: Vec<Vec<Cell>> = energies
        .par_iter()
        .map(|&e| -> Result<Vec<Cell>, CliError> {
            let z = ComplexEnergy::continuum(e)?;
            let k = wavenumber(e, scales)?;
            let tau = match &model {
                Model::Renormalized(eb) => tau_renormalized(*eb, z),
                // On-shell amplitude carries the form factor |v(E)|².
                Model::Separable(c, reg) => tau_regulated(*c, reg, z, scales).and_then(|a| {
                    let v2 = spectral_weight(reg, e, scales)? / flat_weight(scales);
                    Ok(Amplitude {
                        tau: a.tau * v2,
                        ..a
                    })
                }),
                Model::Well(w, _) => Ok(tau_from_phase_shift(well_phase_shift(w, k, scales)?)),
            };
            let tau = match tau {
                Ok(t) => t,
                Err(Error::Pole { .. }) => {
                    let mut r: Vec<Cell> = vec![e.into(), k.value().into()];
                    r.extend((0..7).map(|_| Cell::Num(f64::NAN)));
                    r.push("POLE".into());
                    return Ok(r);
                }
                Err(err) => return Err(err.into()),
            };
            let f = f_from_tau(&tau, k);
            let l_im = -tau.tau.im / k.value();
            let l_opt = transmute_lab::observables::optical_target_length(&tau, k);
            let defect = unitarity_defect(&tau);
            let delta = phase_shift_from_tau(&tau).unwrap_or(f64::NAN);
            let status = if tau.tau.im > transmute_lab::tolerances::IM_TAU_SIGN
                || defect.abs() > tol.unitarity
            {
                "UNITARITY_VIOLATION"
            } else if (l_im - l_opt).abs() > tol.l_agreement * l_im.abs() {
                "L_MISMATCH"
            } else {
                "OK"
            };
            Ok(vec![
                e.into(),
                k.value().into(),
                f.re.into(),
                f.im.into(),
                f.norm_sqr().into(),
                l_opt.into(),
                l_im.into(),
                delta.into(),
                defect.into(),
                status.into(),
            ])
        })
        .collect::<Result<_, _>>()?;

    let mut t = Table::new(
        "scatter",
        &[
            "E",
            "k",
            "re_f",
            "im_f",
            "dL_dtheta",
            "L_optical",
            "L_from_im_tau",
            "delta0",
            "unitarity_defect",
            "status",
        ],
    );
    t.note(match &model {
        Model::Renormalized(eb) => format!("model = renormalized, E_B = {eb}"),
        Model::Separable(c, reg) => {
            format!(
                "model = {reg}, epsilon = {}, tau on shell = |v(E)|^2 tau",
                c.epsilon()
            )
        }
        Model::Well(w, _) => format!("model = circular-well, a = {}, V0 = {}", w.radius, w.depth),
    });
    t.note("k = sqrt(E/c); f = -sqrt(1/(8 pi k)) tau");
    t.note("dL_dtheta = |f|^2; L_optical = sqrt(8pi/k) Im f; L_from_im_tau = -Im(tau)/k");
    t.note("delta0: tau = -4 exp(i delta0) sin(delta0), delta0 in (-pi/2, pi/2]");
    t.note("unitarity_defect: Im(1/tau) - 1/4");
    t.note("status: OK, POLE, UNITARITY_VIOLATION or L_MISMATCH");
    for r in &rows {
        t.push(r.clone());
    }
    let num = |r: &[Cell], i: usize| match r[i] {
        Cell::Num(v) => v,
        _ => f64::NAN,
    };
    let max_l = rows
        .iter()
        .filter(|r| num(r, 6) != 0.0 && num(r, 6).is_finite())
        .map(|r| ((num(r, 5) - num(r, 6)) / num(r, 6)).abs())
        .fold(0.0, f64::max);
    let max_u = rows
        .iter()
        .map(|r| num(r, 8).abs())
        .filter(|v| v.is_finite())
        .fold(0.0, f64::max);
    t.meta("max_L_rel_dev", max_l);
    t.meta("max_abs_unitarity_defect", max_u);
    t.meta("l_agreement_tolerance", tol.l_agreement);
    if let Model::Well(w, eb) = &model {
        t.meta("well_binding_energy", *eb);
        let mut worst: f64 = 0.0;
        for r in &rows {
            let (e, k) = (num(r, 0), num(r, 1));
            if k * w.radius > 1e-3 {
                continue;
            }
            let delta = num(r, 7);
            let tau = tau_from_phase_shift(delta).tau;
            let ren = tau_renormalized(*eb, ComplexEnergy::continuum(e)?)?.tau;
            worst = worst.max((tau - ren).norm() / ren.norm());
        }
        t.meta("low_energy_tau_rel_dev", worst);
    }
    Ok(t)
}
