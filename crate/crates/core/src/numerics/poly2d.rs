use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly1d::Poly1D;
use super::rational::{factorial, to_f64, ExactRational};

/// Bivariate polynomial `sum c * x^i * y^j` with exact coefficients.
///
/// Each exponent pair appears at most once and zero coefficients are never
/// stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly2D {
    terms: BTreeMap<(u32, u32), ExactRational>,
}

impl Poly2D {
    /// Builds a polynomial from `(coefficient, xpow, ypow)` triples, merging
    /// repeated exponent pairs.
    pub fn new(monomials: impl IntoIterator<Item = (ExactRational, u32, u32)>) -> Self {
        let mut terms: BTreeMap<(u32, u32), ExactRational> = BTreeMap::new();
        for (c, i, j) in monomials {
            *terms.entry((i, j)).or_insert_with(Zero::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Poly2D { terms }
    }

    pub fn zero() -> Self {
        Poly2D::default()
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::new([(c, 0, 0)])
    }

    pub fn monomial(c: ExactRational, xpow: u32, ypow: u32) -> Self {
        Self::new([(c, xpow, ypow)])
    }

    pub fn x() -> Self {
        Self::monomial(One::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(One::one(), 0, 1)
    }

    /// `(coefficient, xpow, ypow)` in increasing exponent order.
    pub fn monomials(&self) -> impl Iterator<Item = (&ExactRational, u32, u32)> + '_ {
        self.terms.iter().map(|(&(i, j), c)| (c, i, j))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    /// `Some(d)` when every monomial has total degree `d`. The zero polynomial
    /// is reported as homogeneous of degree 0.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|&(i, j)| i + j);
        match degrees.next() {
            None => Some(0),
            Some(d) => degrees.all(|e| e == d).then_some(d),
        }
    }

    pub fn eval(&self, x: &ExactRational, y: &ExactRational) -> ExactRational {
        self.monomials()
            .map(|(c, i, j)| c * num_traits::pow(x.clone(), i as usize) * num_traits::pow(y.clone(), j as usize))
            .fold(Zero::zero(), |acc: ExactRational, t| acc + t)
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.monomials()
            .map(|(c, i, j)| to_f64(c) * x.powi(i as i32) * y.powi(j as i32))
            .sum()
    }

    /// Compiled form for repeated floating-point evaluation.
    pub fn to_f64_terms(&self) -> Vec<(f64, i32, i32)> {
        self.monomials()
            .map(|(c, i, j)| (to_f64(c), i as i32, j as i32))
            .collect()
    }

    /// Mixed partial derivative `d^(dx+dy) / dx^dx dy^dy`.
    pub fn partial(&self, dx: u32, dy: u32) -> Poly2D {
        Self::new(self.monomials().filter(|&(_, i, j)| i >= dx && j >= dy).map(|(c, i, j)| {
            let fx = falling_factorial(i, dx);
            let fy = falling_factorial(j, dy);
            (c * ExactRational::from_integer(fx * fy), i - dx, j - dy)
        }))
    }

    /// Pull-back under the affine map `(s, t) -> (p + a s + c t, q + b s + d t)`;
    /// the result is a polynomial in `(s, t)`, with `s` in the `x` slot.
    pub fn compose_affine(&self, origin: [i64; 2], first: [i64; 2], second: [i64; 2]) -> Poly2D {
        let lin = |o: i64, u: i64, v: i64| {
            Self::new([
                (ExactRational::from_integer(o.into()), 0, 0),
                (ExactRational::from_integer(u.into()), 1, 0),
                (ExactRational::from_integer(v.into()), 0, 1),
            ])
        };
        let xs = lin(origin[0], first[0], second[0]);
        let ys = lin(origin[1], first[1], second[1]);
        let max_i = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let max_j = self.terms.keys().map(|k| k.1).max().unwrap_or(0);
        let xpows = powers(&xs, max_i);
        let ypows = powers(&ys, max_j);
        let mut out = Poly2D::zero();
        for (c, i, j) in self.monomials() {
            let term = &xpows[i as usize] * &ypows[j as usize];
            out = &out + &term.scale(c);
        }
        out
    }

    pub fn scale(&self, c: &ExactRational) -> Poly2D {
        Self::new(self.monomials().map(|(k, i, j)| (k * c, i, j)))
    }

    /// Exact integral over the standard simplex `{0 <= x, y; x + y <= 1}`,
    /// using `int x^i y^j = i! j! / (i + j + 2)!`.
    pub fn integrate_standard_simplex(&self) -> ExactRational {
        self.monomials()
            .map(|(c, i, j)| {
                c * ExactRational::new(factorial(i) * factorial(j), factorial(i + j + 2))
            })
            .fold(Zero::zero(), |acc: ExactRational, t| acc + t)
    }

    /// `x -> int_0^{1-x} g(x, y) dy`.
    pub fn integrate_y_to_hypotenuse(&self) -> Poly1D {
        let one_minus = Poly1D::linear(One::one(), -ExactRational::one());
        self.monomials().fold(Poly1D::zero(), |acc, (c, i, j)| {
            let k = ExactRational::from_integer((j + 1).into());
            let term = &Poly1D::monomial(c / k, i as usize) * &one_minus.pow(j + 1);
            &acc + &term
        })
    }

    /// `y -> int_0^{1-y} g(x, y) dx`.
    pub fn integrate_x_to_hypotenuse(&self) -> Poly1D {
        self.swap_variables().integrate_y_to_hypotenuse()
    }

    /// `t -> int_0^t g(s, t - s) ds`. Each monomial contributes
    /// `t^(i+j+1) i! j! / (i+j+1)!`.
    pub fn diagonal_slice(&self) -> Poly1D {
        self.monomials().fold(Poly1D::zero(), |acc, (c, i, j)| {
            let beta = ExactRational::new(factorial(i) * factorial(j), factorial(i + j + 1));
            &acc + &Poly1D::monomial(c * beta, (i + j + 1) as usize)
        })
    }

    /// `x -> g(x, 0)`.
    pub fn restrict_y_zero(&self) -> Poly1D {
        self.monomials()
            .filter(|&(_, _, j)| j == 0)
            .fold(Poly1D::zero(), |acc, (c, i, _)| &acc + &Poly1D::monomial(c.clone(), i as usize))
    }

    pub fn swap_variables(&self) -> Poly2D {
        Self::new(self.monomials().map(|(c, i, j)| (c.clone(), j, i)))
    }
}

fn falling_factorial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, r| acc * BigInt::from(n - r))
}

fn powers(base: &Poly2D, max: u32) -> Vec<Poly2D> {
    let mut out = vec![Poly2D::constant(One::one())];
    for k in 0..max as usize {
        let next = &out[k] * base;
        out.push(next);
    }
    out
}

impl Add for &Poly2D {
    type Output = Poly2D;
    fn add(self, rhs: &Poly2D) -> Poly2D {
        Poly2D::new(self.monomials().chain(rhs.monomials()).map(|(c, i, j)| (c.clone(), i, j)))
    }
}

impl Sub for &Poly2D {
    type Output = Poly2D;
    fn sub(self, rhs: &Poly2D) -> Poly2D {
        self + &(-rhs)
    }
}

impl Neg for &Poly2D {
    type Output = Poly2D;
    fn neg(self) -> Poly2D {
        Poly2D::new(self.monomials().map(|(c, i, j)| (-c, i, j)))
    }
}

impl Mul for &Poly2D {
    type Output = Poly2D;
    fn mul(self, rhs: &Poly2D) -> Poly2D {
        let mut terms = Vec::with_capacity(self.len() * rhs.len());
        for (a, i, j) in self.monomials() {
            for (b, k, l) in rhs.monomials() {
                terms.push((a * b, i + k, j + l));
            }
        }
        Poly2D::new(terms)
    }
}
