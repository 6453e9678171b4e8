use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::numerics::linalg::{least_squares_exact, least_squares_f64};
use crate::numerics::rational::{to_f64, ExactRational};
use crate::quadrature::WeightedSum;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FitError {
    #[error("need at least {needed} samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("sample values are not usable for a fit")]
    Singular,
}

/// One observation `S(N) = exact + float`. Keeping the exact part separate
/// lets it be fitted without rounding.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaSample {
    pub n: u64,
    pub exact: Option<ExactRational>,
    pub float: f64,
}

impl DeltaSample {
    pub fn float(n: u64, value: f64) -> Self {
        DeltaSample { n, exact: None, float: value }
    }

    pub fn exact(n: u64, value: ExactRational) -> Self {
        DeltaSample { n, exact: Some(value), float: 0.0 }
    }

    pub fn value(&self) -> f64 {
        self.exact.as_ref().map_or(0.0, to_f64) + self.float
    }
}

impl From<&WeightedSum> for DeltaSample {
    fn from(s: &WeightedSum) -> Self {
        DeltaSample { n: s.n, exact: s.exact_part.clone(), float: s.float_part() }
    }
}

/// Coefficients of `S(N) ~ alpha0 + sum_j delta(j) N^{-2j}`, optionally with
/// odd powers `N^{-(2j-1)}` as well.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeltaFit {
    pub alpha0: f64,
    pub deltas: Vec<(u32, f64)>,
    /// `(power, coefficient)` of the odd powers, when requested.
    pub odd_terms: Vec<(u32, f64)>,
    /// Largest odd coefficient over largest even coefficient.
    pub odd_residual: f64,
    /// Condition number estimate of the column-scaled design matrix.
    pub condition: f64,
    pub ill_conditioned: bool,
    /// All coefficients, lowest power first, when the fit was fully exact.
    #[serde(skip)]
    pub exact_coefficients: Option<Vec<ExactRational>>,
}

impl DeltaFit {
    /// Model value at `N`.
    pub fn predict(&self, n: u64) -> f64 {
        let x = 1.0 / n as f64;
        let even: f64 = self.deltas.iter().map(|&(j, d)| d * x.powi(2 * j as i32)).sum();
        let odd: f64 = self.odd_terms.iter().map(|&(p, c)| c * x.powi(p as i32)).sum();
        self.alpha0 + even + odd
    }

    /// Exact model value at `N`, when available.
    pub fn predict_exact(&self, n: u64) -> Option<ExactRational> {
        let coeffs = self.exact_coefficients.as_ref()?;
        let powers = self.powers();
        let x = ExactRational::new(1.into(), n.into());
        Some(
            coeffs
                .iter()
                .zip(powers)
                .fold(ExactRational::zero(), |acc, (c, p)| acc + c * num_traits::pow(x.clone(), p as usize)),
        )
    }

    fn powers(&self) -> Vec<u32> {
        let mut p: Vec<u32> = std::iter::once(0)
            .chain(self.deltas.iter().map(|&(j, _)| 2 * j))
            .chain(self.odd_terms.iter().map(|&(p, _)| p))
            .collect();
        p.sort_unstable();
        p
    }
}

const ILL_CONDITIONED: f64 = 1e12;

fn model_powers(w: u32, include_odd: bool) -> Vec<u32> {
    if include_odd {
        (0..=2 * w).collect()
    } else {
        (0..=w).map(|j| 2 * j).collect()
    }
}

/// Least-squares fit of the even-power expansion in `1/N`.
pub fn fit_delta(samples: &[DeltaSample], w: u32, include_odd: bool) -> Result<DeltaFit, FitError> {
    let powers = model_powers(w, include_odd);
    if samples.len() < powers.len() {
        return Err(FitError::InsufficientSamples { needed: powers.len(), got: samples.len() });
    }
    let design_f: Vec<Vec<f64>> = samples
        .iter()
        .map(|s| powers.iter().map(|&p| (s.n as f64).powi(-(p as i32))).collect())
        .collect();

    let exact_coeffs: Option<Vec<ExactRational>> = if samples.iter().all(|s| s.exact.is_some()) {
        let design: Vec<Vec<ExactRational>> = samples
            .iter()
            .map(|s| {
                powers
                    .iter()
                    .map(|&p| ExactRational::new(1.into(), num_traits::pow(num_bigint::BigInt::from(s.n), p as usize)))
                    .collect()
            })
            .collect();
        let rhs: Vec<ExactRational> = samples.iter().map(|s| s.exact.clone().unwrap()).collect();
        Some(least_squares_exact(&design, &rhs).ok_or(FitError::Singular)?)
    } else {
        None
    };

    let float_rhs: Vec<f64> = match &exact_coeffs {
        Some(_) => samples.iter().map(|s| s.float).collect(),
        None => samples.iter().map(DeltaSample::value).collect(),
    };
    let float_fit = least_squares_f64(&design_f, &float_rhs).ok_or(FitError::Singular)?;
    let float_zero = float_rhs.iter().all(|v| *v == 0.0);

    let coeffs: Vec<f64> = (0..powers.len())
        .map(|i| {
            let e = exact_coeffs.as_ref().map_or(0.0, |c| to_f64(&c[i]));
            let f = if float_zero { 0.0 } else { float_fit.coefficients[i] };
            e + f
        })
        .collect();

    let mut deltas = Vec::new();
    let mut odd_terms = Vec::new();
    for (&p, &c) in powers.iter().zip(&coeffs).skip(1) {
        if p % 2 == 0 {
            deltas.push((p / 2, c));
        } else {
            odd_terms.push((p, c));
        }
    }
    let max_even = powers
        .iter()
        .zip(&coeffs)
        .filter(|(p, _)| *p % 2 == 0)
        .fold(0.0f64, |m, (_, c)| m.max(c.abs()));
    let max_odd = odd_terms.iter().fold(0.0f64, |m, (_, c)| m.max(c.abs()));
    let odd_residual = if max_odd == 0.0 { 0.0 } else { max_odd / max_even };

    Ok(DeltaFit {
        alpha0: coeffs[0],
        deltas,
        odd_terms,
        odd_residual,
        condition: float_fit.condition,
        ill_conditioned: float_fit.condition > ILL_CONDITIONED,
        exact_coefficients: exact_coeffs.filter(|_| float_zero),
    })
}

/// Convenience: fit plain `(N, S(N))` pairs.
pub fn fit_delta_values(pairs: &[(u64, f64)], w: u32, include_odd: bool) -> Result<DeltaFit, FitError> {
    let samples: Vec<DeltaSample> = pairs.iter().map(|&(n, v)| DeltaSample::float(n, v)).collect();
    fit_delta(&samples, w, include_odd)
}
