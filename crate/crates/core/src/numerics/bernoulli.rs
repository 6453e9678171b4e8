use std::sync::OnceLock;

use num_traits::{One, Zero};

use super::poly1d::Poly1D;
use super::rational::ExactRational;

/// Bernoulli polynomial normalized by `B_0 = 1`, `B_{j+1}' = B_j` and
/// `int_0^1 B_{j+1} = 0`. This is the classical polynomial divided by `j!`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernoulliPoly {
    pub degree: usize,
    pub poly: Poly1D,
}

impl BernoulliPoly {
    pub fn eval(&self, x: &ExactRational) -> ExactRational {
        self.poly.eval(x)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.poly.eval_f64(x)
    }

    /// Value at the fractional part of `x`.
    pub fn eval_periodized(&self, x: f64) -> f64 {
        self.poly.eval_f64(x - x.floor())
    }
}

fn build(max: usize) -> Vec<BernoulliPoly> {
    let mut out = Vec::with_capacity(max + 1);
    let mut poly = Poly1D::constant(ExactRational::one());
    out.push(BernoulliPoly { degree: 0, poly: poly.clone() });
    for degree in 1..=max {
        let anti = poly.antiderivative();
        let mean = anti.integrate(&ExactRational::zero(), &ExactRational::one());
        poly = &anti - &Poly1D::constant(mean);
        out.push(BernoulliPoly { degree, poly: poly.clone() });
    }
    out
}

const CACHED: usize = 32;

fn table() -> &'static [BernoulliPoly] {
    static TABLE: OnceLock<Vec<BernoulliPoly>> = OnceLock::new();
    TABLE.get_or_init(|| build(CACHED))
}

/// Runs `f` on `B_j`, from the shared table when `j` is small.
pub(crate) fn with_bernoulli<R>(j: usize, f: impl FnOnce(&BernoulliPoly) -> R) -> R {
    match table().get(j) {
        Some(b) => f(b),
        None => f(build(j).last().expect("sequence is never empty")),
    }
}

/// `B_0, ..., B_max` built by repeated integration.
pub fn bernoulli_sequence(max: usize) -> Vec<BernoulliPoly> {
    if max <= CACHED {
        table()[..=max].to_vec()
    } else {
        build(max)
    }
}

pub fn bernoulli_poly(j: usize) -> BernoulliPoly {
    with_bernoulli(j, BernoulliPoly::clone)
}

/// `B_j(0)` exactly.
pub fn bernoulli_at_zero(j: usize) -> ExactRational {
    with_bernoulli(j, |b| b.poly.coefficient(0))
}

/// `B_j(x - [x])`.
pub fn bernoulli_periodized(j: usize, x: f64) -> f64 {
    with_bernoulli(j, |b| b.eval_periodized(x))
}
