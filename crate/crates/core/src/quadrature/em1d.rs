use serde::Serialize;

use super::function::{Function1D, FunctionError};
use super::integrate::gauss_legendre_unit;
use crate::numerics::accel::accel_coefficients;
use crate::numerics::bernoulli::bernoulli_sequence;
use crate::numerics::rational::to_f64;
use crate::numerics::summation::pairwise_sum;

/// Terms of the summation formula
/// `trapezoid = int g + sum corrections + remainder`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EM1DReport {
    pub n: u64,
    pub w: u32,
    pub trapezoid_sum: f64,
    /// `(j, N^{-j-1} B_{j+1}(0) (g^(j)(b) - g^(j)(a)))` for odd `j <= w`.
    pub corrections: Vec<(u32, f64)>,
    pub remainder_estimate: f64,
}

impl EM1DReport {
    pub fn correction_total(&self) -> f64 {
        self.corrections.iter().map(|&(_, v)| v).sum()
    }

    /// The integral implied by the formula.
    pub fn predicted_integral(&self) -> f64 {
        self.trapezoid_sum - self.correction_total() - self.remainder_estimate
    }
}

const REMAINDER_GL_ORDER: usize = 10;

/// `(1/N) (g(a)/2 + sum_{a < n/N < b} g(n/N) + g(b)/2)`.
pub fn trapezoid_1d(g: &Function1D, a: i64, b: i64, n: u64) -> f64 {
    assert!(a < b && n >= 1);
    let h = 1.0 / n as f64;
    let (lo, hi) = (a * n as i64, b * n as i64);
    let mut terms: Vec<f64> = Vec::with_capacity((hi - lo + 1) as usize);
    terms.push(0.5 * g.eval(a as f64));
    terms.extend((lo + 1..hi).map(|k| g.eval(k as f64 * h)));
    terms.push(0.5 * g.eval(b as f64));
    h * pairwise_sum(&terms)
}

/// Composite Simpson rule on the `N (b - a)` panels of width `1/N`.
pub fn simpson_1d(g: &Function1D, a: i64, b: i64, n: u64) -> f64 {
    assert!(a < b && n >= 1);
    let h = 1.0 / n as f64;
    let (lo, hi) = (a * n as i64, b * n as i64);
    let terms: Vec<f64> = (lo..hi)
        .map(|k| {
            let x0 = k as f64 * h;
            g.eval(x0) + 4.0 * g.eval(x0 + 0.5 * h) + g.eval(x0 + h)
        })
        .collect();
    h / 6.0 * pairwise_sum(&terms)
}

/// `sum_i c_i T(2^{i-1} N)` for the 1-D trapezoid sums.
pub fn accelerate_1d(g: &Function1D, a: i64, b: i64, n: u64, k: usize) -> f64 {
    let terms: Vec<f64> = accel_coefficients(k)
        .iter()
        .enumerate()
        .map(|(i, c)| to_f64(c) * trapezoid_1d(g, a, b, n << i))
        .collect();
    terms.iter().sum()
}

/// Euler-Maclaurin decomposition of the trapezoid sum on `[a, b]`.
pub fn em1d(g: &Function1D, a: i64, b: i64, n: u64, w: u32) -> Result<EM1DReport, FunctionError> {
    assert!(a < b, "interval must satisfy a < b");
    assert!(n >= 1, "N must be positive");
    g.require_order(w + 1)?;
    let bern = bernoulli_sequence(w as usize + 1);
    let nf = n as f64;
    let mut corrections = Vec::new();
    for j in (1..=w).step_by(2) {
        let b0 = to_f64(&bern[j as usize + 1].poly.coefficient(0));
        let diff = g.derivative(j, b as f64)? - g.derivative(j, a as f64)?;
        corrections.push((j, nf.powi(-(j as i32) - 1) * b0 * diff));
    }

    let top = &bern[w as usize + 1];
    let gl = gauss_legendre_unit(REMAINDER_GL_ORDER);
    let h = 1.0 / nf;
    let mut cells = Vec::with_capacity((b - a) as usize * n as usize);
    for k in a * n as i64..b * n as i64 {
        let x0 = k as f64 * h;
        let mut terms = Vec::with_capacity(gl.len());
        for &(u, wt) in &gl {
            terms.push(wt * top.eval_f64(u) * g.derivative(w + 1, x0 + u * h)?);
        }
        cells.push(h * pairwise_sum(&terms));
    }
    let sign = if w % 2 == 0 { 1.0 } else { -1.0 };
    let remainder_estimate = sign * nf.powi(-(w as i32) - 1) * pairwise_sum(&cells);

    Ok(EM1DReport { n, w, trapezoid_sum: trapezoid_1d(g, a, b, n), corrections, remainder_estimate })
}
