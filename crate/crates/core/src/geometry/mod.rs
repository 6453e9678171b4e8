//! Integer polygons, exact point classification, normalized angles,
//! triangulation and lattice point counts.

pub mod classify;
pub mod counts;
pub mod polygon;
pub mod triangle;

pub use classify::{class_weight, classify_scaled_point, solid_angle, vertex_angle, PointClass, ScaledPolygon, SolidAngle};
pub use counts::{boundary_lattice_count, interior_lattice_count, pick_residual, vertex_angle_sum, AngleSum};
pub use polygon::{area_exact, IntPolygon, LatticePoint, PolygonError, PolygonParseError};
pub use triangle::{triangulate, DegenerateTriangle, Triangle};
