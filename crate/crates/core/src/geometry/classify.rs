use std::f64::consts::PI;

use num_traits::ToPrimitive;

use super::polygon::{cross, on_segment, IntPolygon, LatticePoint};
use crate::numerics::rational::{ratio, to_f64, ExactRational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointClass {
    Outside,
    Interior,
    EdgeInterior,
    /// Index into the polygon's (counterclockwise) vertex list.
    Vertex(usize),
}

/// The polygon `M * P` in wide integers, for exact classification of
/// `n / M` against `P`.
#[derive(Clone, Debug)]
pub struct ScaledPolygon {
    scale: i64,
    vertices: Vec<(i128, i128)>,
}

impl ScaledPolygon {
    pub fn new(p: &IntPolygon, scale: i64) -> Self {
        assert!(scale >= 1, "scale must be positive");
        ScaledPolygon { scale, vertices: p.vertices().iter().map(|v| v.scaled(scale)).collect() }
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    /// Integer bounding box `(min_x, min_y, max_x, max_y)` of the scaled polygon.
    pub fn bounding_box(&self) -> (i64, i64, i64, i64) {
        let f = |pick: fn(&(i128, i128)) -> i128, max: bool| {
            let it = self.vertices.iter().map(pick);
            let v = if max { it.max() } else { it.min() };
            v.unwrap() as i64
        };
        (f(|p| p.0, false), f(|p| p.1, false), f(|p| p.0, true), f(|p| p.1, true))
    }

    pub fn classify(&self, x: i64, y: i64) -> PointClass {
        let p = (x as i128, y as i128);
        let n = self.vertices.len();
        if let Some(i) = self.vertices.iter().position(|&v| v == p) {
            return PointClass::Vertex(i);
        }
        let mut inside = false;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            if on_segment(a, b, p) {
                return PointClass::EdgeInterior;
            }
            if (a.1 > p.1) != (b.1 > p.1) {
                // sign of the crossing abscissa minus p.0, times sign(b.1 - a.1)
                let side = cross(a, b, p);
                if (side > 0) == (b.1 > a.1) {
                    inside = !inside;
                }
            }
        }
        if inside {
            PointClass::Interior
        } else {
            PointClass::Outside
        }
    }
}

/// Class of the rational point `n / scale` with respect to `p`.
pub fn classify_scaled_point(n: LatticePoint, scale: i64, p: &IntPolygon) -> PointClass {
    ScaledPolygon::new(p, scale).classify(n.x, n.y)
}

/// Normalized angle: the fraction of a small disk covered by the polygon.
#[derive(Clone, Debug, PartialEq)]
pub struct SolidAngle {
    pub value: f64,
    /// Present when the value is a multiple of 1/8.
    pub exact: Option<ExactRational>,
}

impl SolidAngle {
    pub fn exact(r: ExactRational) -> Self {
        SolidAngle { value: to_f64(&r), exact: Some(r) }
    }
}

/// Interior angle at vertex `i`, as a fraction of the full turn.
pub fn vertex_angle(p: &IntPolygon, i: usize) -> SolidAngle {
    let v = p.vertices();
    let n = v.len();
    let cur = v[i];
    let next = v[(i + 1) % n];
    let prev = v[(i + n - 1) % n];
    let e1 = ((next.x - cur.x) as i128, (next.y - cur.y) as i128);
    let e2 = ((prev.x - cur.x) as i128, (prev.y - cur.y) as i128);
    let dot = e1.0 * e2.0 + e1.1 * e2.1;
    let crs = e1.0 * e2.1 - e1.1 * e2.0;
    if dot == 0 || crs.abs() == dot.abs() {
        // multiple of pi/4 measured counterclockwise from e1 to e2
        let eighths = match (crs.signum(), dot.signum()) {
            (1, 1) => 1,
            (1, 0) => 2,
            (1, -1) => 3,
            (0, -1) => 4,
            (-1, -1) => 5,
            (-1, 0) => 6,
            (-1, 1) => 7,
            _ => unreachable!("edge vectors of a valid polygon are not parallel"),
        };
        return SolidAngle::exact(ratio(eighths, 8));
    }
    let mut theta = (crs.to_f64().unwrap()).atan2(dot.to_f64().unwrap());
    if theta < 0.0 {
        theta += 2.0 * PI;
    }
    SolidAngle { value: theta / (2.0 * PI), exact: None }
}

pub fn class_weight(p: &IntPolygon, class: PointClass) -> SolidAngle {
    match class {
        PointClass::Outside => SolidAngle::exact(ratio(0, 1)),
        PointClass::Interior => SolidAngle::exact(ratio(1, 1)),
        PointClass::EdgeInterior => SolidAngle::exact(ratio(1, 2)),
        PointClass::Vertex(i) => vertex_angle(p, i),
    }
}

/// `omega_P(n / scale)`.
pub fn solid_angle(n: LatticePoint, scale: i64, p: &IntPolygon) -> SolidAngle {
    class_weight(p, classify_scaled_point(n, scale, p))
}
