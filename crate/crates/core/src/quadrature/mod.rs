//! Lattice sums, acceleration, reference integrals and the 1-D
//! Euler-Maclaurin formula.

pub mod em1d;
pub mod function;
pub mod integrate;
pub mod lattice;
pub mod residual;

pub use em1d::{accelerate_1d, em1d, simpson_1d, trapezoid_1d, EM1DReport};
pub use function::{AnalyticFn1D, AnalyticFn2D, Function1D, Function2D, FunctionError};
pub use integrate::{integrate, integrate_numeric, integrate_polynomial_exact, integrate_polynomial_triangle};
pub use lattice::{
    accelerate, accelerate_detailed, collected_accelerated_sum, trapezoid_analog, unweighted_sum, weighted_sum,
    AcceleratedSum, PointCounts, SumMode, WeightedSum,
};
pub use residual::{polynomial_expansion_residual, ExpansionResidual, ResidualError};
