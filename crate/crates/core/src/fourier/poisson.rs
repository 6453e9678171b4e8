use rayon::prelude::*;
use serde::Serialize;

use super::transform::PolygonTransform;
use crate::expansion::required_cutoff;
use crate::geometry::IntPolygon;
use crate::numerics::linalg::neville_at_zero;
use crate::numerics::poly2d::Poly2D;
use crate::numerics::rational::to_f64;
use crate::numerics::summation::pairwise_sum;
use crate::quadrature::integrate_polynomial_exact;

/// `int_P g + sum_{0 < |(m,n)|_inf <= cutoff} e^{-pi eps^2 (m^2 + n^2)} F(N m, N n)`
/// where `F` is the transform of `g chi_P`.
pub fn mollified_poisson_sum(g: &Poly2D, p: &IntPolygon, n: u64, eps: f64, cutoff: u64) -> f64 {
    let ft = PolygonTransform::new(g, p);
    let integral = to_f64(&integrate_polynomial_exact(g, p));
    mollified_with(&ft, integral, n as i64, eps, cutoff as i64)
}

fn mollified_with(ft: &PolygonTransform, integral: f64, n: i64, eps: f64, cutoff: i64) -> f64 {
    let damp = |k: i64| (-std::f64::consts::PI * (eps * k as f64).powi(2)).exp();
    // imaginary parts cancel between (m, n) and (-m, -n)
    let rows: Vec<f64> = (-cutoff..=cutoff)
        .into_par_iter()
        .map(|m| {
            let terms: Vec<f64> = (-cutoff..=cutoff)
                .filter(|&k| m != 0 || k != 0)
                .map(|k| damp(m) * damp(k) * ft.at(n * m, n * k).re)
                .collect();
            pairwise_sum(&terms)
        })
        .collect();
    integral + pairwise_sum(&rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct PoissonLimit {
    pub limit: f64,
    /// Change in the extrapolated value when the last schedule entry is dropped.
    pub spread: f64,
    pub raw: Vec<(f64, f64)>,
}

/// Polynomial extrapolation to `eps = 0` of the mollified Poisson sum. For a
/// polynomial integrand the sum is a polynomial in `eps` up to exponentially
/// small terms, and its value at zero is the weighted lattice sum.
pub fn poisson_limit(g: &Poly2D, p: &IntPolygon, n: u64, schedule: &[f64]) -> PoissonLimit {
    assert!(schedule.len() >= 2, "schedule needs at least two values");
    let ft = PolygonTransform::new(g, p);
    let integral = to_f64(&integrate_polynomial_exact(g, p));
    let raw: Vec<(f64, f64)> = schedule
        .iter()
        .map(|&eps| (eps, mollified_with(&ft, integral, n as i64, eps, required_cutoff(eps) as i64)))
        .collect();
    let xs: Vec<f64> = raw.iter().map(|r| r.0).collect();
    let ys: Vec<f64> = raw.iter().map(|r| r.1).collect();
    let limit = neville_at_zero(&xs, &ys);
    let reduced = neville_at_zero(&xs[..xs.len() - 1], &ys[..ys.len() - 1]);
    PoissonLimit { limit, spread: (limit - reduced).abs(), raw }
}
