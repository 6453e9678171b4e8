use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::FourierError;
use crate::numerics::summation::pairwise_sum;
use crate::quadrature::integrate::gauss_legendre_unit;
use crate::quadrature::Function1D;

pub type ComplexValue = Complex64;

/// Boundary terms `j = 0..=w` of the integration-by-parts expansion and the
/// remaining integral.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Expansion1D {
    pub terms: Vec<(u32, ComplexValue)>,
    pub remainder: ComplexValue,
}

impl Expansion1D {
    pub fn total(&self) -> ComplexValue {
        self.terms.iter().map(|t| t.1).sum::<Complex64>() + self.remainder
    }
}

const PANEL_ORDER: usize = 16;

/// `int_a^b f(x) e^{-2 pi i x y} dx` by composite Gauss-Legendre with at
/// least two panels per period.
pub fn oscillatory_quadrature(f: impl Fn(f64) -> f64, a: f64, b: f64, y: f64) -> ComplexValue {
    let panels = ((2.0 * y.abs() * (b - a)).ceil() as usize).max(2);
    let h = (b - a) / panels as f64;
    let gl = gauss_legendre_unit(PANEL_ORDER);
    let mut re = Vec::with_capacity(panels);
    let mut im = Vec::with_capacity(panels);
    for p in 0..panels {
        let x0 = a + p as f64 * h;
        let mut acc = Complex64::new(0.0, 0.0);
        for &(u, w) in &gl {
            let x = x0 + u * h;
            acc += w * f(x) * Complex64::from_polar(1.0, -2.0 * PI * x * y);
        }
        re.push(h * acc.re);
        im.push(h * acc.im);
    }
    Complex64::new(pairwise_sum(&re), pairwise_sum(&im))
}

/// Expansion of `int_a^b g(x) e^{-2 pi i x y} dx` into
/// `sum_j (2 pi i y)^{-j-1} (e^{-2 pi i a y} g^(j)(a) - e^{-2 pi i b y} g^(j)(b))`
/// plus `(2 pi i y)^{-w-1} int_a^b g^(w+1)(x) e^{-2 pi i x y} dx`.
pub fn lemma1_expand(g: &Function1D, a: f64, b: f64, y: f64, w: u32) -> Result<Expansion1D, FourierError> {
    if y == 0.0 {
        return Err(FourierError::ZeroFrequency);
    }
    g.require_order(w + 1)?;
    let z = Complex64::new(0.0, 2.0 * PI * y);
    let ea = Complex64::from_polar(1.0, -2.0 * PI * a * y);
    let eb = Complex64::from_polar(1.0, -2.0 * PI * b * y);
    let mut terms = Vec::with_capacity(w as usize + 1);
    for j in 0..=w {
        let zpow = z.powi(-(j as i32) - 1);
        let ga = g.derivative(j, a)?;
        let gb = g.derivative(j, b)?;
        terms.push((j, zpow * (ea * ga - eb * gb)));
    }
    let top = |x: f64| g.derivative(w + 1, x).expect("order checked above");
    let remainder = z.powi(-(w as i32) - 1) * oscillatory_quadrature(top, a, b, y);
    Ok(Expansion1D { terms, remainder })
}
