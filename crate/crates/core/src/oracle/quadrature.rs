//! Globally adaptive Gauss–Kronrod (7/15) quadrature for complex integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Tolerances and limits for one adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Split boundary-value integrals into a principal value plus the
    /// `−iπ·Q(E)` pole term instead of integrating through the pole.
    pub singularity_subtraction: bool,
}

impl QuadratureSpec {
    pub fn new(
        abs_tol: f64,
        rel_tol: f64,
        max_subdivisions: usize,
        singularity_subtraction: bool,
    ) -> Result<Self> {
        if !(abs_tol > 0.0 && rel_tol > 0.0) {
            return Err(domain("quadrature tolerances must be positive"));
        }
        if max_subdivisions < 64 {
            return Err(domain("max_subdivisions must be at least 64"));
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_subdivisions,
            singularity_subtraction,
        })
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-300,
            rel_tol: 1e-12,
            max_subdivisions: 20_000,
            singularity_subtraction: true,
        }
    }
}

/// Integral value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

fn kronrod<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += pair * w;
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    Panel {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).norm(),
    }
}

struct ByError(Panel);

impl PartialEq for ByError {
    fn eq(&self, other: &Self) -> bool {
        self.0.error.total_cmp(&other.0.error).is_eq()
    }
}

impl Eq for ByError {}

impl PartialOrd for ByError {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ByError {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.error.total_cmp(&other.0.error)
    }
}

/// Fixed-order total so that results do not depend on refinement history.
fn ordered_total(panels: Vec<ByError>) -> (Complex64, f64) {
    let mut panels: Vec<Panel> = panels.into_iter().map(|p| p.0).collect();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let values: Vec<Complex64> = panels.iter().map(|p| p.value).collect();
    let error = panels.iter().map(|p| p.error).sum();
    (pairwise_sum(&values), error)
}

pub(crate) fn pairwise_sum(xs: &[Complex64]) -> Complex64 {
    match xs.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => xs[0],
        n => pairwise_sum(&xs[..n / 2]) + pairwise_sum(&xs[n / 2..]),
    }
}

/// Integrates `f` over `[points[0], points[last]]`, with the interior
/// points used as initial panel boundaries.
pub fn integrate<F>(f: F, points: &[f64], spec: &QuadratureSpec) -> Result<Estimate>
where
    F: Fn(f64) -> Complex64,
{
    if points.len() < 2 {
        return Err(domain("need at least two integration points"));
    }
    if points.iter().any(|p| !p.is_finite()) || points.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(domain("integration points must be finite and increasing"));
    }
    let mut heap: BinaryHeap<ByError> = points
        .windows(2)
        .map(|w| ByError(kronrod(&f, w[0], w[1])))
        .collect();
    let mut total: Complex64 = heap.iter().map(|p| p.0.value).sum();
    let mut error: f64 = heap.iter().map(|p| p.0.error).sum();
    let budget = spec.max_subdivisions + heap.len();
    loop {
        let target = spec.abs_tol.max(spec.rel_tol * total.norm());
        if error <= target {
            let (value, error) = ordered_total(heap.into_vec());
            return Ok(Estimate { value, error });
        }
        if heap.len() >= budget {
            let (estimate, error) = ordered_total(heap.into_vec());
            return Err(Error::Precision { estimate, error });
        }
        let p = heap.pop().expect("non-empty panel heap").0;
        let mid = 0.5 * (p.a + p.b);
        if !(p.a < mid && mid < p.b) {
            // Panel cannot be split further in floating point.
            heap.push(ByError(p));
            let (estimate, error) = ordered_total(heap.into_vec());
            return Err(Error::Precision { estimate, error });
        }
        let left = kronrod(&f, p.a, mid);
        let right = kronrod(&f, mid, p.b);
        total += left.value + right.value - p.value;
        error += left.error + right.error - p.error;
        heap.push(ByError(left));
        heap.push(ByError(right));
    }
}

/// Integrates `f` over `[points[0], ∞)`. The tail beyond the last point is
/// mapped onto `[0, 1)` through `x = c + h·t/(1 − t)` with `h = max(|c|, 1)`.
pub fn integrate_to_infinity<F>(f: F, points: &[f64], spec: &QuadratureSpec) -> Result<Estimate>
where
    F: Fn(f64) -> Complex64,
{
    let c = *points
        .last()
        .ok_or_else(|| domain("need a starting point"))?;
    let finite = if points.len() >= 2 {
        Some(integrate(&f, points, spec)?)
    } else {
        None
    };
    let h = c.abs().max(1.0);
    let tail_spec = QuadratureSpec {
        abs_tol: finite.as_ref().map_or(spec.abs_tol, |e| {
            spec.abs_tol.max(0.5 * spec.rel_tol * e.value.norm())
        }),
        ..*spec
    };
    let tail = integrate(
        |t: f64| {
            let s = 1.0 - t;
            let x = c + h * t / s;
            if !x.is_finite() {
                return Complex64::new(0.0, 0.0);
            }
            let v = f(x);
            if v == Complex64::new(0.0, 0.0) {
                v
            } else {
                v * (h / (s * s))
            }
        },
        &[0.0, 0.5, 0.9, 0.99, 1.0],
        &tail_spec,
    )?;
    Ok(match finite {
        Some(head) => Estimate {
            value: head.value + tail.value,
            error: head.error + tail.error,
        },
        None => tail,
    })
}
