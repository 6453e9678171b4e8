//! Exact rationals, polynomials, Bernoulli polynomials and small linear
//! algebra helpers.

pub mod accel;
pub mod bernoulli;
pub mod linalg;
pub mod poly1d;
pub mod poly2d;
pub mod rational;
pub mod summation;

pub use accel::accel_coefficients;
pub use bernoulli::{bernoulli_at_zero, bernoulli_periodized, bernoulli_poly, bernoulli_sequence, BernoulliPoly};
pub use poly1d::Poly1D;
pub use poly2d::Poly2D;
pub use rational::ExactRational;

/// Mixed partial derivative of a bivariate polynomial.
pub fn poly2d_partial(p: &Poly2D, dx: u32, dy: u32) -> Poly2D {
    p.partial(dx, dy)
}
