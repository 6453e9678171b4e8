//! Solid-angle weighted lattice quadrature over integer polygons.

pub mod numerics;
pub mod geometry;
pub mod expansion;
pub mod fourier;
pub mod quadrature;

pub use expansion::{fit_delta, DeltaFit, LemmaSum};
pub use fourier::{ComplexValue, Expansion1D};
pub use geometry::{IntPolygon, LatticePoint, PointClass, Triangle};
pub use numerics::{BernoulliPoly, ExactRational, Poly1D, Poly2D};
pub use quadrature::{Function1D, Function2D, WeightedSum};
