// Shared helpers for the integration tests.
#![allow(dead_code)]

use polyquad::geometry::{classify_scaled_point, IntPolygon, LatticePoint, PointClass};

/// Star-shaped polygon around `center` with the given angles (in turns,
/// sorted by the caller) and radii, or `None` when rounding breaks simplicity.
pub fn star_polygon(center: (i64, i64), turns: &[f64], radii: &[i64], bound: i64) -> Option<IntPolygon> {
    let pts: Vec<(i64, i64)> = turns
        .iter()
        .zip(radii)
        .map(|(t, &r)| {
            let a = t * std::f64::consts::TAU;
            let x = (center.0 as f64 + r as f64 * a.cos()).round() as i64;
            let y = (center.1 as f64 + r as f64 * a.sin()).round() as i64;
            (x.clamp(-bound, bound), y.clamp(-bound, bound))
        })
        .collect();
    IntPolygon::from_coords(&pts).ok()
}

/// Interior and boundary lattice points by enumerating the bounding box.
pub fn brute_force_counts(p: &IntPolygon) -> (u64, u64) {
    let (x0, y0, x1, y1) = p.bounding_box();
    let (mut interior, mut boundary) = (0, 0);
    for x in x0..=x1 {
        for y in y0..=y1 {
            match classify_scaled_point(LatticePoint::new(x, y), 1, p) {
                PointClass::Interior => interior += 1,
                PointClass::EdgeInterior | PointClass::Vertex(_) => boundary += 1,
                PointClass::Outside => {}
            }
        }
    }
    (interior, boundary)
}

pub fn appendix_triangle() -> IntPolygon {
    IntPolygon::from_coords(&[(0, 0), (2, 1), (1, 2)]).unwrap()
}

pub fn pentagon() -> IntPolygon {
    IntPolygon::from_coords(&[(0, 0), (4, 0), (3, 3), (2, 1), (0, 2)]).unwrap()
}
