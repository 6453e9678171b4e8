use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::function::Function2D;
use crate::geometry::{vertex_angle, IntPolygon, PointClass, ScaledPolygon};
use crate::numerics::accel::accel_coefficients;
use crate::numerics::poly2d::Poly2D;
use crate::numerics::rational::{int, ratio, to_f64, ExactRational};
use crate::numerics::summation::pairwise_sum;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PointCounts {
    pub interior: u64,
    pub edge: u64,
    pub vertex: u64,
}

impl PointCounts {
    pub fn total(&self) -> u64 {
        self.interior + self.edge + self.vertex
    }
}

/// A lattice sum together with the data needed to fit or combine it.
///
/// For polynomial integrands the value splits as
/// `exact_part + vertex_residual / N^2`, where `vertex_residual` collects
/// vertices whose weight is irrational. `exact` is present when that
/// residual is absent.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedSum {
    pub n: u64,
    pub value: f64,
    pub exact: Option<ExactRational>,
    pub counts: PointCounts,
    pub exact_part: Option<ExactRational>,
    pub vertex_residual: f64,
}

impl WeightedSum {
    /// Part of the value not carried by `exact_part`.
    pub fn float_part(&self) -> f64 {
        if self.exact_part.is_some() {
            self.vertex_residual / (self.n as f64 * self.n as f64)
        } else {
            self.value
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SumMode {
    Open,
    Closed,
}

#[derive(Clone, Debug)]
enum VertexRule {
    SolidAngle,
    Fixed(ExactRational),
}

#[derive(Clone, Debug)]
struct Rule {
    interior: ExactRational,
    edge: ExactRational,
    vertex: VertexRule,
    /// grid refinement relative to N
    refine: i64,
    /// drop points that already lie on the coarse grid `N^{-1} Z^2`
    skip_coarse: bool,
}

struct Row {
    y: i64,
    interior: Vec<i64>,
    edge: Vec<i64>,
    vertices: Vec<usize>,
}

fn scan(p: &IntPolygon, scale: i64, skip_coarse: bool) -> Vec<Row> {
    let sp = ScaledPolygon::new(p, scale);
    let (x0, y0, x1, y1) = sp.bounding_box();
    (y0..=y1)
        .into_par_iter()
        .map(|y| {
            let mut row = Row { y, interior: Vec::new(), edge: Vec::new(), vertices: Vec::new() };
            for x in x0..=x1 {
                if skip_coarse && x % 2 == 0 && y % 2 == 0 {
                    continue;
                }
                match sp.classify(x, y) {
                    PointClass::Outside => {}
                    PointClass::Interior => row.interior.push(x),
                    PointClass::EdgeInterior => row.edge.push(x),
                    PointClass::Vertex(i) => row.vertices.push(i),
                }
            }
            row
        })
        .collect()
}

/// `[sum x^0, sum x^1, ..., sum x^max]` over `xs`.
fn power_sums(xs: &[i64], max: u32) -> Vec<BigInt> {
    let mut acc = vec![0i128; max as usize + 1];
    let mut overflow = false;
    'points: for &x in xs {
        let mut p: i128 = 1;
        for k in 0..=max as usize {
            match acc[k].checked_add(p) {
                Some(v) => acc[k] = v,
                None => {
                    overflow = true;
                    break 'points;
                }
            }
            if k < max as usize {
                match p.checked_mul(x as i128) {
                    Some(v) => p = v,
                    None => {
                        overflow = true;
                        break 'points;
                    }
                }
            }
        }
    }
    if !overflow {
        return acc.into_iter().map(BigInt::from).collect();
    }
    let mut big = vec![BigInt::zero(); max as usize + 1];
    for &x in xs {
        let mut p = BigInt::one();
        for slot in big.iter_mut() {
            *slot += &p;
            p *= x;
        }
    }
    big
}

/// Exact `sum g(x / scale, y / scale)` over the listed points of each row.
fn exact_class_sum(g: &Poly2D, rows: &[Row], pick: fn(&Row) -> &Vec<i64>, scale: i64) -> ExactRational {
    let max_x = g.monomials().map(|(_, i, _)| i).max().unwrap_or(0);
    let max_y = g.monomials().map(|(_, _, j)| j).max().unwrap_or(0);
    // moments[i][j] = sum x^i y^j
    let moments = rows
        .par_iter()
        .map(|row| {
            let xs = pick(row);
            let mut m = vec![vec![BigInt::zero(); max_y as usize + 1]; max_x as usize + 1];
            if xs.is_empty() {
                return m;
            }
            let px = power_sums(xs, max_x);
            let mut ypow = BigInt::one();
            for j in 0..=max_y as usize {
                for i in 0..=max_x as usize {
                    m[i][j] = &px[i] * &ypow;
                }
                ypow *= row.y;
            }
            m
        })
        .reduce(
            || vec![vec![BigInt::zero(); max_y as usize + 1]; max_x as usize + 1],
            |mut a, b| {
                for (ra, rb) in a.iter_mut().zip(b) {
                    for (x, y) in ra.iter_mut().zip(rb) {
                        *x += y;
                    }
                }
                a
            },
        );
    let s = BigInt::from(scale);
    g.monomials().fold(ExactRational::zero(), |acc, (c, i, j)| {
        let denom = num_traits::pow(s.clone(), (i + j) as usize);
        acc + c * ExactRational::new(moments[i as usize][j as usize].clone(), denom)
    })
}

fn lattice_sum(g: &Function2D, p: &IntPolygon, n: u64, rule: &Rule) -> WeightedSum {
    assert!(n >= 1, "N must be positive");
    let scale = n as i64 * rule.refine;
    let rows = scan(p, scale, rule.skip_coarse);
    let mut counts = PointCounts::default();
    for row in &rows {
        if !rule.interior.is_zero() {
            counts.interior += row.interior.len() as u64;
        }
        if !rule.edge.is_zero() {
            counts.edge += row.edge.len() as u64;
        }
        counts.vertex += row.vertices.len() as u64;
    }
    let vertex_weight = |i: usize| match &rule.vertex {
        VertexRule::SolidAngle => vertex_angle(p, i),
        VertexRule::Fixed(w) => crate::geometry::SolidAngle::exact(w.clone()),
    };
    let area = int(scale) * int(scale);
    let area_f = (scale as f64) * (scale as f64);
    match g {
        Function2D::Polynomial(poly) => {
            let mut exact = &rule.interior * exact_class_sum(poly, &rows, |r| &r.interior, scale)
                + &rule.edge * exact_class_sum(poly, &rows, |r| &r.edge, scale);
            let mut residual = 0.0f64;
            let mut residual_present = false;
            for row in &rows {
                for &i in &row.vertices {
                    let v = p.vertices()[i];
                    let gv = poly.eval(&int(v.x), &int(v.y));
                    if gv.is_zero() {
                        continue;
                    }
                    let w = vertex_weight(i);
                    match w.exact {
                        Some(e) => exact += e * gv,
                        None => {
                            residual += w.value * to_f64(&gv);
                            residual_present = true;
                        }
                    }
                }
            }
            // vertices sit at the same point of P for every N, so their
            // contribution scales exactly like N^{-2}
            let exact_part = exact / &area;
            let refine2 = (rule.refine * rule.refine) as f64;
            let vertex_residual = residual / refine2;
            let value = to_f64(&exact_part) + residual / area_f;
            WeightedSum {
                n,
                value,
                exact: (!residual_present).then(|| exact_part.clone()),
                counts,
                exact_part: Some(exact_part),
                vertex_residual,
            }
        }
        Function2D::Analytic(_) => {
            let eval = g.evaluator();
            let wi = to_f64(&rule.interior);
            let we = to_f64(&rule.edge);
            let inv = 1.0 / scale as f64;
            let row_sums: Vec<f64> = rows
                .par_iter()
                .map(|row| {
                    let y = row.y as f64 * inv;
                    let mut terms: Vec<f64> = Vec::with_capacity(row.interior.len() + row.edge.len() + 2);
                    if wi != 0.0 {
                        terms.extend(row.interior.iter().map(|&x| wi * eval(x as f64 * inv, y)));
                    }
                    if we != 0.0 {
                        terms.extend(row.edge.iter().map(|&x| we * eval(x as f64 * inv, y)));
                    }
                    for &i in &row.vertices {
                        let v = p.vertices()[i];
                        terms.push(vertex_weight(i).value * eval(v.x as f64, v.y as f64));
                    }
                    pairwise_sum(&terms)
                })
                .collect();
            let value = pairwise_sum(&row_sums) / area_f;
            WeightedSum { n, value, exact: None, counts, exact_part: None, vertex_residual: 0.0 }
        }
    }
}

/// `S(N) = N^{-2} sum omega_P(n/N) g(n/N)`.
pub fn weighted_sum(g: &Function2D, p: &IntPolygon, n: u64) -> WeightedSum {
    let rule = Rule { interior: int(1), edge: ratio(1, 2), vertex: VertexRule::SolidAngle, refine: 1, skip_coarse: false };
    lattice_sum(g, p, n, &rule)
}

/// Plain Riemann sum over sampling points in the open or closed polygon.
pub fn unweighted_sum(g: &Function2D, p: &IntPolygon, n: u64, mode: SumMode) -> f64 {
    let boundary = match mode {
        SumMode::Open => int(0),
        SumMode::Closed => int(1),
    };
    let rule = Rule {
        interior: int(1),
        edge: boundary.clone(),
        vertex: VertexRule::Fixed(boundary),
        refine: 1,
        skip_coarse: false,
    };
    lattice_sum(g, p, n, &rule).value
}

/// Interior points at weight 1, every boundary point (vertices included) at
/// weight 1/2, all over `N^2`.
pub fn trapezoid_analog(g: &Function2D, p: &IntPolygon, n: u64) -> WeightedSum {
    let rule = Rule { interior: int(1), edge: ratio(1, 2), vertex: VertexRule::Fixed(ratio(1, 2)), refine: 1, skip_coarse: false };
    lattice_sum(g, p, n, &rule)
}

/// `-(1/3) S(N) + (4/3) S(2N)` written as one sum over the points of
/// `(2N)^{-1} Z^2` that are not in `N^{-1} Z^2`.
pub fn collected_accelerated_sum(g: &Function2D, p: &IntPolygon, n: u64) -> WeightedSum {
    let rule = Rule { interior: ratio(4, 3), edge: ratio(2, 3), vertex: VertexRule::Fixed(int(0)), refine: 2, skip_coarse: true };
    let mut s = lattice_sum(g, p, n, &rule);
    debug_assert_eq!(s.counts.vertex, 0);
    s.vertex_residual = 0.0;
    s
}

#[derive(Clone, Debug, PartialEq)]
pub struct AcceleratedSum {
    pub n: u64,
    pub k: usize,
    pub value: f64,
    pub exact: Option<ExactRational>,
    pub levels: Vec<WeightedSum>,
}

/// `sum_i c_i S(2^{i-1} N)` with the acceleration weights of order `k`.
pub fn accelerate_detailed(g: &Function2D, p: &IntPolygon, n: u64, k: usize) -> AcceleratedSum {
    let coeffs = accel_coefficients(k);
    let levels: Vec<WeightedSum> = (0..k).map(|i| weighted_sum(g, p, n << i)).collect();
    let exact_parts: Option<ExactRational> = coeffs
        .iter()
        .zip(&levels)
        .map(|(c, s)| s.exact_part.as_ref().map(|e| c * e))
        .sum();
    // vertex residuals enter as V / (2^{i-1} N)^2; they cancel for k >= 2
    let vertex_factor: ExactRational = coeffs.iter().enumerate().map(|(i, c)| c * ratio(1, 4i64.pow(i as u32))).sum();
    let (value, exact) = match exact_parts {
        Some(e) => {
            let residual = if vertex_factor.is_zero() {
                0.0
            } else {
                coeffs
                    .iter()
                    .zip(&levels)
                    .map(|(c, s)| to_f64(c) * s.vertex_residual / ((s.n * s.n) as f64))
                    .sum()
            };
            let exact_ok = vertex_factor.is_zero() || levels.iter().all(|s| s.exact.is_some());
            (to_f64(&e) + residual, exact_ok.then_some(e))
        }
        None => {
            let terms: Vec<f64> = coeffs.iter().zip(&levels).map(|(c, s)| to_f64(c) * s.value).collect();
            (pairwise_sum(&terms), None)
        }
    };
    AcceleratedSum { n, k, value, exact, levels }
}

pub fn accelerate(g: &Function2D, p: &IntPolygon, n: u64, k: usize) -> f64 {
    accelerate_detailed(g, p, n, k).value
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x2y3() -> Function2D {
        Poly2D::monomial(int(1), 2, 3).into()
    }

    fn appendix() -> IntPolygon {
        IntPolygon::from_coords(&[(0, 0), (2, 1), (1, 2)]).unwrap()
    }

    fn square() -> IntPolygon {
        IntPolygon::from_coords(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap()
    }

    fn one() -> Function2D {
        Poly2D::constant(int(1)).into()
    }

    #[test]
    fn appendix_values() {
        let t = trapezoid_analog(&x2y3(), &appendix(), 4);
        assert_eq!(t.exact, Some(ratio(54335, 16384)));
        assert_eq!(t.counts.total(), 31);
        let c = collected_accelerated_sum(&x2y3(), &appendix(), 2);
        assert_eq!(c.exact, Some(ratio(37295, 12288)));
        assert_eq!(c.counts.total(), 21);
        let a = accelerate_detailed(&x2y3(), &appendix(), 2, 2);
        assert_eq!(a.exact, Some(ratio(37295, 12288)));
        assert!((a.value - 37295.0 / 12288.0).abs() < 1e-12);
    }

    #[test]
    fn constant_integrand() {
        let s = weighted_sum(&one(), &square(), 1);
        assert_eq!(s.exact, Some(int(1)));
        for n in 1..=8 {
            let s = weighted_sum(&one(), &appendix(), n);
            assert!(s.exact.is_none());
            assert!((s.value - 1.5).abs() < 1e-12, "N={n}: {}", s.value);
        }
        assert_eq!(unweighted_sum(&one(), &square(), 1, SumMode::Closed), 4.0);
        assert_eq!(unweighted_sum(&one(), &square(), 1, SumMode::Open), 0.0);
        assert_eq!(unweighted_sum(&one(), &appendix(), 1, SumMode::Closed), 4.0);
        assert_eq!(trapezoid_analog(&one(), &square(), 1).exact, Some(int(2)));
    }

    #[test]
    fn zero_integrand() {
        assert_eq!(trapezoid_analog(&Function2D::zero(), &appendix(), 3).exact, Some(int(0)));
        assert_eq!(collected_accelerated_sum(&Function2D::zero(), &appendix(), 3).exact, Some(int(0)));
    }

    #[test]
    fn collected_matches_combination_on_square() {
        let c = collected_accelerated_sum(&one(), &square(), 1);
        let combo = -weighted_sum(&one(), &square(), 1).value / 3.0 + 4.0 * weighted_sum(&one(), &square(), 2).value / 3.0;
        assert!((c.value - combo).abs() < 1e-12);
    }

    #[test]
    fn error_shrinks_by_four() {
        let exact = 423.0 / 140.0;
        let e2 = (weighted_sum(&x2y3(), &appendix(), 2).value - exact).abs();
        let e4 = (weighted_sum(&x2y3(), &appendix(), 4).value - exact).abs();
        let ratio = e2 / e4;
        assert!((3.0..5.5).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn analytic_matches_polynomial_path() {
        let f = Function2D::builtin("expxy").unwrap();
        let s = weighted_sum(&f, &appendix(), 6);
        assert!(s.exact.is_none());
        let reference = super::super::integrate::integrate_numeric(&f, &appendix(), 24);
        assert!((s.value - reference).abs() < 0.5);
    }

    #[test]
    fn power_sums_overflow_fallback() {
        let xs = [i64::MAX / 2, 3];
        let sums = power_sums(&xs, 3);
        let expected: BigInt = BigInt::from(i64::MAX / 2).pow(3) + 27;
        assert_eq!(sums[3], expected);
    }
}
