//! Grid and energy syntax: `v`, `v1:v2:n`, `lo:hi:n,log`, and complex
//! energies `re,im` or `E+i0`.

use transmute_lab::ComplexEnergy;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

pub type EnergySpec = Vec<f64>;

fn usage(key: &str, v: &str) -> CliError {
    CliError::Usage(format!("`{key}`: cannot parse `{v}`"))
}

/// Parses `v` or `v1:v2:n[,lin|,log]`; `spacing` applies when no suffix is
/// given.
pub fn parse_grid(key: &str, text: &str, spacing: Spacing) -> Result<Vec<f64>, CliError> {
    let text = text.trim();
    let (body, spacing) = match text.rsplit_once(',') {
        Some((b, "log")) => (b, Spacing::Log),
        Some((b, "lin")) => (b, Spacing::Linear),
        Some(_) => return Err(usage(key, text)),
        None => (text, spacing),
    };
    let parts: Vec<&str> = body.split(':').collect();
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| usage(key, text));
    let out = match parts.as_slice() {
        [v] => vec![num(v)?],
        [a, b, n] => {
            let (a, b) = (num(a)?, num(b)?);
            let n: usize = n.trim().parse().map_err(|_| usage(key, text))?;
            if n == 0 {
                return Err(CliError::Usage(format!("`{key}`: empty grid")));
            }
            if n == 1 {
                vec![a]
            } else {
                let step = |i: usize| i as f64 / (n - 1) as f64;
                match spacing {
                    Spacing::Linear => (0..n).map(|i| a + (b - a) * step(i)).collect(),
                    Spacing::Log => {
                        if !(a > 0.0 && b > 0.0) {
                            return Err(CliError::Usage(format!(
                                "`{key}`: log grid bounds must be positive"
                            )));
                        }
                        // Base 10 keeps decade grids on exact powers of ten.
                        let (la, lb) = (a.log10(), b.log10());
                        (0..n)
                            .map(|i| match i {
                                0 => a,
                                _ if i == n - 1 => b,
                                _ => 10f64.powf(la + (lb - la) * step(i)),
                            })
                            .collect()
                    }
                }
            }
        }
        _ => return Err(usage(key, text)),
    };
    if out.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(CliError::Usage(format!("`{key}`: values must be positive")));
    }
    Ok(out)
}

pub fn parse_energy(text: &str) -> Result<EnergySpec, CliError> {
    parse_grid("energy", text, Spacing::Log)
}

/// `re,im` (interior when `im > 0`, boundary when `im == 0`) or `E+i0`.
pub fn parse_complex_energy(key: &str, text: &str) -> Result<ComplexEnergy, CliError> {
    let t = text.trim();
    let bad = |e: transmute_lab::Error| CliError::Usage(format!("`{key}`: {e}"));
    if let Some(re) = t.strip_suffix("+i0") {
        let re: f64 = re.trim().parse().map_err(|_| usage(key, t))?;
        return ComplexEnergy::new(re, 0.0, true).map_err(bad);
    }
    let (re, im) = t.split_once(',').ok_or_else(|| usage(key, t))?;
    let re: f64 = re.trim().parse().map_err(|_| usage(key, t))?;
    let im: f64 = im.trim().parse().map_err(|_| usage(key, t))?;
    ComplexEnergy::new(re, im, im == 0.0).map_err(bad)
}

/// Complex amplitude `re,im`.
pub fn parse_complex(key: &str, text: &str) -> Result<num_complex::Complex64, CliError> {
    let t = text.trim();
    let (re, im) = t.split_once(',').unwrap_or((t, "0"));
    let re: f64 = re.trim().parse().map_err(|_| usage(key, t))?;
    let im: f64 = im.trim().parse().map_err(|_| usage(key, t))?;
    Ok(num_complex::Complex64::new(re, im))
}
