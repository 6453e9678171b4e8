use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::lemma1::{lemma1_expand, ComplexValue, Expansion1D};
use super::transform::ft_simplex_polynomial;
use super::FourierError;
use crate::numerics::poly1d::Poly1D;
use crate::numerics::poly2d::Poly2D;
use crate::quadrature::{Function1D, Function2D};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axis {
    X,
    Y,
}

fn polynomial(g: &Function2D) -> Result<&Poly2D, FourierError> {
    g.as_polynomial().ok_or(FourierError::NonPolynomialIntegrand)
}

fn as_function(p: Poly1D) -> Function1D {
    Function1D::polynomial(p.coefficients().to_vec())
}

/// `G(t) = int_0^t g(s, t - s) ds`, exact for polynomial `g`.
pub fn diagonal_slice(g: &Function2D) -> Result<Poly1D, FourierError> {
    Ok(polynomial(g)?.diagonal_slice())
}

/// Expansion of the transform of `g chi_T` at `(n, n)`, the integral of
/// `G(t) e^{-2 pi i n t}` over `[0, 1]`.
pub fn diagonal_expansion(g: &Function2D, n: i64, w: u32) -> Result<Expansion1D, FourierError> {
    if n == 0 {
        return Err(FourierError::ZeroFrequency);
    }
    let slice = diagonal_slice(g)?;
    lemma1_expand(&as_function(slice), 0.0, 1.0, n as f64, w)
}

/// Expansion of the transform at `(n, 0)` (axis `X`) or `(0, n)` (axis `Y`)
/// after integrating out the other variable.
pub fn axis_expansion(g: &Function2D, axis: Axis, n: i64, w: u32) -> Result<Expansion1D, FourierError> {
    if n == 0 {
        return Err(FourierError::ZeroFrequency);
    }
    let p = polynomial(g)?;
    let inner = match axis {
        Axis::X => p.integrate_y_to_hypotenuse(),
        Axis::Y => p.integrate_x_to_hypotenuse(),
    };
    lemma1_expand(&as_function(inner), 0.0, 1.0, n as f64, w)
}

/// `|t - F| * min(|m|, |n|, |m - n|)^2` where `F` is the transform of
/// `g chi_T` at `(m, n)` and `t = alpha/(m n) + beta/((m - n) n)` its
/// leading-order truncation.
pub fn leading_offdiagonal_check(g: &Function2D, m: i64, n: i64) -> Result<f64, FourierError> {
    if m == 0 || n == 0 {
        return Err(FourierError::ZeroFrequency);
    }
    if m == n {
        return Err(FourierError::DiagonalFrequency);
    }
    let p = polynomial(g)?;
    let at = |x: i64, y: i64| p.eval_f64(x as f64, y as f64);
    let inv = Complex64::new(0.0, 2.0 * PI).powi(-2);
    let alpha = inv * (at(0, 0) - at(1, 0));
    let beta = inv * (at(1, 0) - at(0, 1));
    let (mf, nf) = (m as f64, n as f64);
    let truncation = alpha / (mf * nf) + beta / ((mf - nf) * nf);
    let exact = ft_simplex_polynomial(p, mf, nf);
    let scale = m.abs().min(n.abs()).min((m - n).abs()) as f64;
    Ok((truncation - exact).norm() * scale * scale)
}

/// Scaled residuals of `leading_offdiagonal_check` over `m, n in +-1..=+-radius`.
#[derive(Clone, Debug, Serialize)]
pub struct OffDiagonalScan {
    pub radius: i64,
    pub max: f64,
    /// Maximum over the inner half of the grid, for comparison with `max`.
    pub inner_max: f64,
    pub values: Vec<(i64, i64, f64)>,
}

impl OffDiagonalScan {
    /// Growth test: the outer grid may not exceed `factor` times the inner
    /// one, with `floor` absorbing rounding when both vanish.
    pub fn bounded(&self, factor: f64, floor: f64) -> bool {
        self.max <= factor * self.inner_max + floor
    }
}

pub fn offdiagonal_scan(g: &Function2D, radius: i64) -> Result<OffDiagonalScan, FourierError> {
    let range: Vec<i64> = (-radius..=radius).filter(|&v| v != 0).collect();
    let inner = radius / 2;
    let mut values = Vec::new();
    for &m in &range {
        for &n in &range {
            if m != n {
                values.push((m, n, leading_offdiagonal_check(g, m, n)?));
            }
        }
    }
    let max = values.iter().map(|v| v.2).fold(0.0, f64::max);
    let inner_max = values
        .iter()
        .filter(|v| v.0.abs() <= inner && v.1.abs() <= inner)
        .map(|v| v.2)
        .fold(0.0, f64::max);
    Ok(OffDiagonalScan { radius, max, inner_max, values })
}

/// Scaled residuals along the ray `k (dm, dn)`. With the correct leading
/// order these decay like `1/k`; a wrong constant leaves them flat.
pub fn offdiagonal_ray(g: &Function2D, direction: (i64, i64), ks: &[i64]) -> Result<Vec<f64>, FourierError> {
    ks.iter()
        .map(|&k| leading_offdiagonal_check(g, k * direction.0, k * direction.1))
        .collect()
}

/// Closed-form transform of `g chi_T` at `(m, n)`, for comparisons.
pub fn simplex_transform(g: &Function2D, m: i64, n: i64) -> Result<ComplexValue, FourierError> {
    Ok(ft_simplex_polynomial(polynomial(g)?, m as f64, n as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::transform::ft_triangle_numeric;
    use crate::geometry::Triangle;
    use crate::numerics::rational::{int, ratio};

    fn poly(terms: &[(i64, u32, u32)]) -> Function2D {
        Poly2D::new(terms.iter().map(|&(c, i, j)| (int(c), i, j))).into()
    }

    #[test]
    fn diagonal_of_constant_is_exact() {
        let e = diagonal_expansion(&poly(&[(1, 0, 0)]), 3, 1).unwrap();
        let expected = -Complex64::new(0.0, 2.0 * PI * 3.0).inv();
        assert!((e.total() - expected).norm() < 1e-14);
        assert!(e.remainder.norm() < 1e-15);
        assert_eq!(diagonal_slice(&Poly2D::x().into()).unwrap(), Poly1D::monomial(ratio(1, 2), 2));
    }

    #[test]
    fn expansions_match_numeric_transform() {
        let t = Triangle::standard();
        for g in [poly(&[(1, 1, 0)]), poly(&[(1, 2, 3), (-2, 0, 1)])] {
            for n in 1..=8 {
                let d = diagonal_expansion(&g, n, 2).unwrap().total();
                assert!((d - ft_triangle_numeric(&g, &t, n, n).unwrap()).norm() < 1e-10);
                let x = axis_expansion(&g, Axis::X, n, 2).unwrap().total();
                assert!((x - ft_triangle_numeric(&g, &t, n, 0).unwrap()).norm() < 1e-10);
                let y = axis_expansion(&g, Axis::Y, n, 2).unwrap().total();
                assert!((y - ft_triangle_numeric(&g, &t, 0, n).unwrap()).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn zero_integrand_and_errors() {
        let zero = Function2D::zero();
        assert!(diagonal_expansion(&zero, 2, 1).unwrap().total().norm() == 0.0);
        assert!(axis_expansion(&zero, Axis::Y, 2, 1).unwrap().total().norm() == 0.0);
        assert_eq!(leading_offdiagonal_check(&zero, 2, 3).unwrap(), 0.0);
        assert_eq!(leading_offdiagonal_check(&zero, 2, 2), Err(FourierError::DiagonalFrequency));
        assert_eq!(diagonal_expansion(&zero, 0, 1), Err(FourierError::ZeroFrequency));
        let analytic = Function2D::builtin("expxy").unwrap();
        assert_eq!(diagonal_expansion(&analytic, 1, 1), Err(FourierError::NonPolynomialIntegrand));
    }

    #[test]
    fn leading_order_is_bounded() {
        for g in [poly(&[(1, 0, 0)]), poly(&[(1, 2, 3)]), poly(&[(1, 1, 0), (3, 0, 0)])] {
            let scan = offdiagonal_scan(&g, 6).unwrap();
            assert!(scan.bounded(2.0, 1e-12), "{} vs {}", scan.max, scan.inner_max);
        }
    }

    #[test]
    fn leading_order_residual_decays_along_rays() {
        let g = poly(&[(1, 2, 3), (2, 1, 0), (-1, 0, 2)]);
        for dir in [(2, 1), (1, -1), (3, -2), (-1, 2)] {
            let r = offdiagonal_ray(&g, dir, &[4, 8, 16, 32]).unwrap();
            assert!(r[3] < 0.3 * r[0], "{dir:?}: {r:?}");
        }
    }
}
