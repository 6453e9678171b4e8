use thiserror::Error;

use super::lattice::weighted_sum;
use crate::expansion::fit::{fit_delta, DeltaFit, DeltaSample, FitError};
use crate::geometry::IntPolygon;
use crate::numerics::poly2d::Poly2D;
use crate::numerics::rational::to_f64;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ResidualError {
    #[error("integrand is not homogeneous")]
    NotHomogeneous,
    #[error("order w = {w} is too low for degree {degree}; need 2w + 1 > degree")]
    OrderTooLow { w: u32, degree: u32 },
    #[error("need at least {needed} sample sizes, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error(transparent)]
    Fit(#[from] FitError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionResidual {
    /// Largest `|prediction - S(N)|` over the held-out sample sizes.
    pub residual: f64,
    pub fit: DeltaFit,
}

/// Fits `alpha0 + sum_{j <= w} delta(j) N^{-2j}` to `S(N)` on the first
/// `w + 1` sample sizes and reports the misfit on the remaining ones. For
/// homogeneous polynomials of degree below `2w + 1` the expansion is exact.
pub fn polynomial_expansion_residual(
    g: &Poly2D,
    p: &IntPolygon,
    w: u32,
    sample_ns: &[u64],
) -> Result<ExpansionResidual, ResidualError> {
    let degree = g.homogeneous_degree().ok_or(ResidualError::NotHomogeneous)?;
    if 2 * w < degree {
        return Err(ResidualError::OrderTooLow { w, degree });
    }
    let needed = w as usize + 2;
    if sample_ns.len() < needed {
        return Err(ResidualError::InsufficientSamples { needed, got: sample_ns.len() });
    }
    let f = g.clone().into();
    let sums: Vec<_> = sample_ns.iter().map(|&n| weighted_sum(&f, p, n)).collect();
    let (train, held) = sums.split_at(w as usize + 1);
    let samples: Vec<DeltaSample> = train.iter().map(DeltaSample::from).collect();
    let fit = fit_delta(&samples, w, false)?;
    let residual = held
        .iter()
        .map(|s| {
            // compare the exact parts exactly whenever both sides have one
            match (fit.predict_exact(s.n), &s.exact) {
                (Some(pred), Some(actual)) => to_f64(&(pred - actual)).abs(),
                _ => (fit.predict(s.n) - s.value).abs(),
            }
        })
        .fold(0.0, f64::max);
    Ok(ExpansionResidual { residual, fit })
}
