use num_complex::Complex64;
use serde::Serialize;

use super::complexpoly::{add_scaled, monomial_times_one_minus, oscillatory_integral, phase, CPoly};
use super::lemma1::ComplexValue;
use super::FourierError;
use crate::geometry::{triangulate, IntPolygon, Triangle};
use crate::numerics::poly2d::Poly2D;
use crate::numerics::rational::to_f64;
use crate::numerics::summation::pairwise_sum;
use crate::quadrature::integrate::simplex_rule;
use crate::quadrature::Function2D;

/// The affine map `(s, t) -> (p + a s + c t, q + b s + d t)` taking the
/// standard simplex onto a triangle, evaluated at the frequency `(m, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AffineMapData {
    pub p: i64,
    pub q: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub jacobian: i64,
    /// `p m + q n`
    pub phase_frequency: i64,
    /// Frequencies `(a m + b n, c m + d n)` seen by the pulled-back integrand.
    pub pulled_frequency: (i64, i64),
}

impl AffineMapData {
    pub fn map(&self, s: f64, t: f64) -> (f64, f64) {
        (
            self.p as f64 + self.a as f64 * s + self.c as f64 * t,
            self.q as f64 + self.b as f64 * s + self.d as f64 * t,
        )
    }

    /// `e^{-2 pi i (p m + q n)} |ad - bc|`.
    pub fn prefactor(&self) -> ComplexValue {
        phase(self.phase_frequency as f64, 1.0) * self.jacobian as f64
    }
}

/// Pull-back data for `tri`; the first vertex is `(p, q)`.
pub fn affine_pullback(tri: &Triangle, m: i64, n: i64) -> Result<AffineMapData, FourierError> {
    let [v0, v1, v2] = tri.vertices();
    let (a, b, c, d) = (v1.x - v0.x, v1.y - v0.y, v2.x - v0.x, v2.y - v0.y);
    let det = a * d - b * c;
    if det == 0 {
        return Err(FourierError::DegenerateTriangle);
    }
    Ok(AffineMapData {
        p: v0.x,
        q: v0.y,
        a,
        b,
        c,
        d,
        jacobian: det.abs(),
        phase_frequency: v0.x * m + v0.y * n,
        pulled_frequency: (a * m + b * n, c * m + d * n),
    })
}

/// Largest `|m|`, `|n|` accepted by the numeric oracle.
pub const MAX_NUMERIC_FREQUENCY: i64 = 64;
const SUBTRIANGLE_ORDER: usize = 12;

/// `int_T f(s, t) e^{-2 pi i (mu s + nu t)}` over the standard simplex, on a
/// uniform subdivision fine enough to resolve the oscillation.
fn simplex_oscillatory(f: &(dyn Fn(f64, f64) -> f64 + Sync), mu: f64, nu: f64) -> ComplexValue {
    let fastest = mu.abs().max(nu.abs()).max((mu - nu).abs());
    let k = (fastest.ceil() as usize).max(2);
    let h = 1.0 / k as f64;
    let rule = simplex_rule(SUBTRIANGLE_ORDER);
    let mut re = Vec::with_capacity(k * k);
    let mut im = Vec::with_capacity(k * k);
    let mut cell = |o: (f64, f64), e1: (f64, f64), e2: (f64, f64)| {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(s, t, w) in &rule {
            let x = o.0 + e1.0 * s + e2.0 * t;
            let y = o.1 + e1.1 * s + e2.1 * t;
            acc += w * f(x, y) * Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * (mu * x + nu * y));
        }
        re.push(acc.re * h * h);
        im.push(acc.im * h * h);
    };
    for i in 0..k {
        for j in 0..k - i {
            let o = (i as f64 * h, j as f64 * h);
            cell(o, (h, 0.0), (0.0, h));
            if i + j + 1 < k {
                cell(((i + 1) as f64 * h, (j + 1) as f64 * h), (-h, 0.0), (0.0, -h));
            }
        }
    }
    Complex64::new(pairwise_sum(&re), pairwise_sum(&im))
}

/// `int_tri g(x) e^{-2 pi i (m x + n y)} dx` by quadrature on the pulled-back
/// simplex.
pub fn ft_triangle_numeric(g: &Function2D, tri: &Triangle, m: i64, n: i64) -> Result<ComplexValue, FourierError> {
    if m.abs() > MAX_NUMERIC_FREQUENCY || n.abs() > MAX_NUMERIC_FREQUENCY {
        return Err(FourierError::FrequencyTooLarge { m, n });
    }
    let map = affine_pullback(tri, m, n)?;
    let (mu, nu) = map.pulled_frequency;
    let eval = g.evaluator();
    let pulled = |s: f64, t: f64| {
        let (x, y) = map.map(s, t);
        eval(x, y)
    };
    Ok(map.prefactor() * simplex_oscillatory(&pulled, mu as f64, nu as f64))
}

/// Closed form of `int_T f e^{-2 pi i (mu s + nu t)}` for a polynomial `f` on
/// the standard simplex, by integrating by parts in `t` and then in `s`.
pub fn ft_simplex_polynomial(f: &Poly2D, mu: f64, nu: f64) -> ComplexValue {
    let zero = Complex64::new(0.0, 0.0);
    // result = int_0^1 P0(s) e^{-2 pi i mu s} ds + e^{-2 pi i nu} int_0^1 P1(s) e^{-2 pi i (mu - nu) s} ds
    let mut p0: CPoly = Vec::new();
    let mut p1: CPoly = Vec::new();
    let z = Complex64::new(0.0, 2.0 * std::f64::consts::PI * nu);
    for (c, i, j) in f.monomials() {
        let c = Complex64::new(to_f64(c), 0.0);
        let (i, j) = (i as usize, j as usize);
        if nu == 0.0 {
            add_scaled(&mut p0, &monomial_times_one_minus(i, j + 1), c / (j + 1) as f64);
            continue;
        }
        let jf: f64 = (1..=j).map(|r| r as f64).product();
        let mut lone = vec![zero; i + 1];
        lone[i] = Complex64::new(1.0, 0.0);
        add_scaled(&mut p0, &lone, c * jf * z.powi(-(j as i32) - 1));
        let mut falling = 1.0f64;
        for r in 0..=j {
            // j! / (j - r)!
            if r > 0 {
                falling *= (j - r + 1) as f64;
            }
            add_scaled(&mut p1, &monomial_times_one_minus(i, j - r), -c * falling * z.powi(-(r as i32) - 1));
        }
    }
    let mut total = oscillatory_integral(&p0, 0.0, 1.0, mu);
    if !p1.is_empty() {
        total += phase(nu, 1.0) * oscillatory_integral(&p1, 0.0, 1.0, mu - nu);
    }
    total
}

/// Closed-form Fourier transform of `g chi_tri` for polynomial `g`.
pub fn ft_triangle_polynomial(g: &Poly2D, tri: &Triangle, m: i64, n: i64) -> Result<ComplexValue, FourierError> {
    let map = affine_pullback(tri, m, n)?;
    let pulled = g.compose_affine([map.p, map.q], [map.a, map.b], [map.c, map.d]);
    let (mu, nu) = map.pulled_frequency;
    Ok(map.prefactor() * ft_simplex_polynomial(&pulled, mu as f64, nu as f64))
}

/// Pulled-back polynomials of a triangulation, precomputed for repeated
/// transforms of the same polygon.
pub struct PolygonTransform {
    parts: Vec<(AffineMapData, Poly2D)>,
}

impl PolygonTransform {
    pub fn new(g: &Poly2D, p: &IntPolygon) -> Self {
        let parts = triangulate(p)
            .iter()
            .map(|t| {
                let map = affine_pullback(t, 0, 0).expect("triangulation yields nondegenerate triangles");
                let pulled = g.compose_affine([map.p, map.q], [map.a, map.b], [map.c, map.d]);
                (map, pulled)
            })
            .collect();
        PolygonTransform { parts }
    }

    pub fn at(&self, m: i64, n: i64) -> ComplexValue {
        self.parts
            .iter()
            .map(|(map, f)| {
                let mu = map.a * m + map.b * n;
                let nu = map.c * m + map.d * n;
                let pre = phase((map.p * m + map.q * n) as f64, 1.0) * map.jacobian as f64;
                pre * ft_simplex_polynomial(f, mu as f64, nu as f64)
            })
            .sum()
    }
}

/// Closed-form transform of `g chi_P`.
pub fn ft_polygon_polynomial(g: &Poly2D, p: &IntPolygon, m: i64, n: i64) -> ComplexValue {
    PolygonTransform::new(g, p).at(m, n)
}
