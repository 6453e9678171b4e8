use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numerics::rational::ExactRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }

    pub fn scaled(self, n: i64) -> (i128, i128) {
        (self.x as i128 * n as i128, self.y as i128 * n as i128)
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from((x, y): (i64, i64)) -> Self {
        LatticePoint { x, y }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertices {0} and {1} coincide")]
    DuplicateConsecutive(usize, usize),
    #[error("vertices {0}, {1}, {2} are collinear")]
    CollinearTriple(usize, usize, usize),
    #[error("edge {0}-{1} intersects edge {2}-{3}")]
    SelfIntersecting(usize, usize, usize, usize),
}

#[derive(Debug, Error)]
pub enum PolygonParseError {
    #[error("invalid polygon JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] PolygonError),
}

pub(crate) fn cross(o: (i128, i128), a: (i128, i128), b: (i128, i128)) -> i128 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn as_wide(p: LatticePoint) -> (i128, i128) {
    (p.x as i128, p.y as i128)
}

pub(crate) fn on_segment(a: (i128, i128), b: (i128, i128), p: (i128, i128)) -> bool {
    cross(a, b, p) == 0
        && a.0.min(b.0) <= p.0
        && p.0 <= a.0.max(b.0)
        && a.1.min(b.1) <= p.1
        && p.1 <= a.1.max(b.1)
}

fn segments_intersect(a: (i128, i128), b: (i128, i128), c: (i128, i128), d: (i128, i128)) -> bool {
    let d1 = cross(c, d, a).signum();
    let d2 = cross(c, d, b).signum();
    let d3 = cross(a, b, c).signum();
    let d4 = cross(a, b, d).signum();
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    on_segment(c, d, a) || on_segment(c, d, b) || on_segment(a, b, c) || on_segment(a, b, d)
}

/// Simple polygon with integer vertices, stored counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IntPolygon {
    vertices: Vec<LatticePoint>,
}

#[derive(Deserialize)]
struct PolygonJson {
    vertices: Vec<[i64; 2]>,
}

impl IntPolygon {
    /// Validates the vertex list and reorients it counterclockwise. Reversal
    /// keeps the first vertex in place. Error indices refer to the input.
    pub fn new(vertices: Vec<LatticePoint>) -> Result<Self, PolygonError> {
        let n = vertices.len();
        if n < 3 {
            return Err(PolygonError::TooFewVertices(n));
        }
        let w: Vec<(i128, i128)> = vertices.iter().copied().map(as_wide).collect();
        for i in 0..n {
            let j = (i + 1) % n;
            if w[i] == w[j] {
                return Err(PolygonError::DuplicateConsecutive(i, j));
            }
        }
        for i in 0..n {
            let (h, j) = ((i + n - 1) % n, (i + 1) % n);
            if cross(w[h], w[i], w[j]) == 0 {
                return Err(PolygonError::CollinearTriple(h, i, j));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    continue;
                }
                let (i2, j2) = ((i + 1) % n, (j + 1) % n);
                if segments_intersect(w[i], w[i2], w[j], w[j2]) {
                    return Err(PolygonError::SelfIntersecting(i, i2, j, j2));
                }
            }
        }
        let mut poly = IntPolygon { vertices };
        if poly.twice_signed_area() < 0 {
            poly.vertices[1..].reverse();
        }
        Ok(poly)
    }

    pub fn from_coords(coords: &[(i64, i64)]) -> Result<Self, PolygonError> {
        Self::new(coords.iter().copied().map(LatticePoint::from).collect())
    }

    pub fn from_json(text: &str) -> Result<Self, PolygonParseError> {
        let raw: PolygonJson = serde_json::from_str(text)?;
        Ok(Self::new(raw.vertices.into_iter().map(|[x, y]| LatticePoint::new(x, y)).collect())?)
    }

    pub fn to_json(&self) -> String {
        let coords: Vec<[i64; 2]> = self.vertices.iter().map(|p| [p.x, p.y]).collect();
        serde_json::json!({ "vertices": coords }).to_string()
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges as `(start, end)` in counterclockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (LatticePoint, LatticePoint)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn twice_signed_area(&self) -> i128 {
        self.edges()
            .map(|(a, b)| a.x as i128 * b.y as i128 - b.x as i128 * a.y as i128)
            .sum()
    }

    /// Shoelace area.
    pub fn area_exact(&self) -> ExactRational {
        ExactRational::new(self.twice_signed_area().abs().into(), 2.into())
    }

    /// `(min_x, min_y, max_x, max_y)`.
    pub fn bounding_box(&self) -> (i64, i64, i64, i64) {
        self.vertices.iter().fold((i64::MAX, i64::MAX, i64::MIN, i64::MIN), |(a, b, c, d), p| {
            (a.min(p.x), b.min(p.y), c.max(p.x), d.max(p.y))
        })
    }
}

/// Shoelace area of a valid polygon.
pub fn area_exact(p: &IntPolygon) -> ExactRational {
    p.area_exact()
}
