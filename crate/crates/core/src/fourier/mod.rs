//! Fourier transforms of polynomials restricted to triangles, and the
//! integration-by-parts expansions they admit.

mod complexpoly;
pub mod lemma1;
pub mod lemma2;
pub mod poisson;
pub mod transform;

use thiserror::Error;

use crate::quadrature::FunctionError;

pub use lemma1::{lemma1_expand, oscillatory_quadrature, ComplexValue, Expansion1D};
pub use lemma2::{
    axis_expansion, diagonal_expansion, diagonal_slice, leading_offdiagonal_check, offdiagonal_scan, Axis,
    OffDiagonalScan,
};
pub use poisson::{mollified_poisson_sum, poisson_limit, PoissonLimit};
pub use transform::{
    affine_pullback, ft_polygon_polynomial, ft_simplex_polynomial, ft_triangle_numeric, ft_triangle_polynomial,
    AffineMapData, PolygonTransform, MAX_NUMERIC_FREQUENCY,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FourierError {
    #[error("frequency must be nonzero")]
    ZeroFrequency,
    #[error(transparent)]
    Function(#[from] FunctionError),
    #[error("frequency ({m}, {n}) exceeds the oracle limit of {MAX_NUMERIC_FREQUENCY}")]
    FrequencyTooLarge { m: i64, n: i64 },
    #[error("integrand must be a polynomial")]
    NonPolynomialIntegrand,
    #[error("off-diagonal check needs m != n")]
    DiagonalFrequency,
    #[error("triangle is degenerate")]
    DegenerateTriangle,
}
