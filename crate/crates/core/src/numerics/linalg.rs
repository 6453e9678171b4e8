use nalgebra::{DMatrix, DVector};
use num_traits::{Signed, Zero};

use super::rational::ExactRational;

/// Gauss-Jordan elimination over the rationals. `None` when the matrix is
/// singular or not square.
pub fn solve_exact(matrix: &[Vec<ExactRational>], rhs: &[ExactRational]) -> Option<Vec<ExactRational>> {
    let n = rhs.len();
    if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
        return None;
    }
    let mut a: Vec<Vec<ExactRational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| row.iter().cloned().chain(std::iter::once(b.clone())).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v = &*v / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..=n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

/// Exact least squares through the normal equations.
pub fn least_squares_exact(design: &[Vec<ExactRational>], rhs: &[ExactRational]) -> Option<Vec<ExactRational>> {
    let cols = design.first()?.len();
    let mut normal = vec![vec![ExactRational::zero(); cols]; cols];
    let mut projected = vec![ExactRational::zero(); cols];
    for (row, b) in design.iter().zip(rhs) {
        for i in 0..cols {
            projected[i] += &row[i] * b;
            for j in 0..cols {
                normal[i][j] += &row[i] * &row[j];
            }
        }
    }
    solve_exact(&normal, &projected)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FloatFit {
    pub coefficients: Vec<f64>,
    /// Ratio of extreme singular values of the column-scaled design matrix.
    pub condition: f64,
}

/// Least squares by QR on a column-equilibrated design matrix.
pub fn least_squares_f64(design: &[Vec<f64>], rhs: &[f64]) -> Option<FloatFit> {
    let rows = design.len();
    let cols = design.first()?.len();
    if rows < cols || cols == 0 {
        return None;
    }
    let mut a = DMatrix::from_fn(rows, cols, |i, j| design[i][j]);
    let scales: Vec<f64> = (0..cols)
        .map(|j| {
            let norm = a.column(j).norm();
            if norm > 0.0 { norm } else { 1.0 }
        })
        .collect();
    for (j, s) in scales.iter().enumerate() {
        a.column_mut(j).unscale_mut(*s);
    }
    let sv = a.clone().singular_values();
    let (smax, smin) = sv.iter().fold((0.0f64, f64::INFINITY), |(hi, lo), &s| (hi.max(s), lo.min(s)));
    let b = DVector::from_column_slice(rhs);
    let qr = a.qr();
    let qtb = qr.q().transpose() * b;
    let x = qr.r().solve_upper_triangular(&qtb)?;
    Some(FloatFit {
        coefficients: x.iter().zip(&scales).map(|(v, s)| v / s).collect(),
        condition: if smin > 0.0 { smax / smin } else { f64::INFINITY },
    })
}

/// Value at `x = 0` of the interpolating polynomial through `(xs[i], ys[i])`.
pub fn neville_at_zero(xs: &[f64], ys: &[f64]) -> f64 {
    let mut p = ys.to_vec();
    let n = p.len();
    for level in 1..n {
        for i in 0..n - level {
            let (xi, xj) = (xs[i], xs[i + level]);
            p[i] = (xj * p[i] - xi * p[i + 1]) / (xj - xi);
        }
    }
    p[0]
}

/// Largest absolute value, 0 for an empty slice.
pub fn max_abs(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, |m, v| m.max(v.abs()))
}

pub fn max_abs_exact<'a>(values: impl IntoIterator<Item = &'a ExactRational>) -> ExactRational {
    values.into_iter().fold(ExactRational::zero(), |m, v| if v.abs() > m { v.abs() } else { m })
}
