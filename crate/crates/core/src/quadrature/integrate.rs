use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use num_traits::Zero;

use super::function::Function2D;
use crate::geometry::{triangulate, IntPolygon, Triangle};
use crate::numerics::poly2d::Poly2D;
use crate::numerics::rational::ExactRational;
use crate::numerics::summation::pairwise_sum;

/// Gauss-Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre_unit(order: usize) -> Vec<(f64, f64)> {
    let rule = GaussLegendre::new(NonZeroUsize::new(order.max(1)).unwrap());
    rule.as_node_weight_pairs().iter().map(|&(x, w)| (0.5 * (x + 1.0), 0.5 * w)).collect()
}

/// Collapsed (Duffy) tensor rule on the standard simplex
/// `{s, t >= 0, s + t <= 1}`; weights sum to 1/2.
pub fn simplex_rule(order: usize) -> Vec<(f64, f64, f64)> {
    let gl = gauss_legendre_unit(order);
    let mut out = Vec::with_capacity(gl.len() * gl.len());
    for &(u, wu) in &gl {
        for &(v, wv) in &gl {
            out.push((u, (1.0 - u) * v, wu * wv * (1.0 - u)));
        }
    }
    out
}

/// Exact integral of `g` over a triangle via the affine map from the
/// standard simplex.
pub fn integrate_polynomial_triangle(g: &Poly2D, t: &Triangle) -> ExactRational {
    let [a, b, c] = t.vertices();
    let pulled = g.compose_affine([a.x, a.y], [b.x - a.x, b.y - a.y], [c.x - a.x, c.y - a.y]);
    let jac = ExactRational::from_integer(t.twice_signed_area().abs().into());
    pulled.integrate_standard_simplex() * jac
}

/// Exact `int_P g`.
pub fn integrate_polynomial_exact(g: &Poly2D, p: &IntPolygon) -> ExactRational {
    triangulate(p)
        .iter()
        .map(|t| integrate_polynomial_triangle(g, t))
        .fold(ExactRational::zero(), |acc, v| acc + v)
}

/// `int_T g` by the collapsed Gauss rule of the given order.
pub fn integrate_numeric_triangle(g: &Function2D, t: &Triangle, order: usize) -> f64 {
    let [a, b, c] = t.vertices();
    let (ax, ay) = (a.x as f64, a.y as f64);
    let (ux, uy) = ((b.x - a.x) as f64, (b.y - a.y) as f64);
    let (vx, vy) = ((c.x - a.x) as f64, (c.y - a.y) as f64);
    let jac = t.twice_signed_area().abs() as f64;
    let eval = g.evaluator();
    let terms: Vec<f64> = simplex_rule(order)
        .into_iter()
        .map(|(s, r, w)| w * eval(ax + ux * s + vx * r, ay + uy * s + vy * r))
        .collect();
    jac * pairwise_sum(&terms)
}

/// Numerical `int_P g` over the ear-clipping triangulation.
pub fn integrate_numeric(g: &Function2D, p: &IntPolygon, order: usize) -> f64 {
    let parts: Vec<f64> = triangulate(p).iter().map(|t| integrate_numeric_triangle(g, t, order)).collect();
    pairwise_sum(&parts)
}

/// Reference value: exact for polynomials, high-order Gauss otherwise.
pub fn integrate(g: &Function2D, p: &IntPolygon) -> (f64, Option<ExactRational>) {
    match g.as_polynomial() {
        Some(poly) => {
            let e = integrate_polynomial_exact(poly, p);
            (crate::numerics::rational::to_f64(&e), Some(e))
        }
        None => (integrate_numeric(g, p, 32), None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::{int, ratio};

    #[test]
    fn exact_examples() {
        let sq = IntPolygon::from_coords(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        assert_eq!(integrate_polynomial_exact(&Poly2D::constant(int(1)), &sq), int(1));
        let simplex = IntPolygon::from_coords(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        assert_eq!(integrate_polynomial_exact(&Poly2D::x(), &simplex), ratio(1, 6));
        let tri = IntPolygon::from_coords(&[(0, 0), (2, 1), (1, 2)]).unwrap();
        assert_eq!(integrate_polynomial_exact(&Poly2D::monomial(int(1), 2, 3), &tri), ratio(423, 140));
    }

    #[test]
    fn numeric_matches_exact() {
        let pent = IntPolygon::from_coords(&[(0, 0), (4, 0), (3, 3), (2, 1), (0, 2)]).unwrap();
        let g = Poly2D::new([(int(1), 2, 3), (ratio(-2, 3), 4, 0), (int(5), 0, 1)]);
        let exact = crate::numerics::rational::to_f64(&integrate_polynomial_exact(&g, &pent));
        let numeric = integrate_numeric(&Function2D::Polynomial(g), &pent, 12);
        assert!((exact - numeric).abs() < 1e-10 * exact.abs());
    }

    #[test]
    fn exponential_over_simplex() {
        // int_T e^{x+y} = int_0^1 t e^t dt = 1
        let t = Triangle::standard();
        let v = integrate_numeric_triangle(&Function2D::builtin("expxy").unwrap(), &t, 20);
        assert!((v - 1.0).abs() < 1e-14);
    }
}
