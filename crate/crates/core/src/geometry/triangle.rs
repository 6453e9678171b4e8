use thiserror::Error;

use super::polygon::{cross, IntPolygon, LatticePoint};
use crate::numerics::rational::ExactRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("triangle vertices are collinear")]
pub struct DegenerateTriangle;

/// Integer triangle with nonzero area. The vertex order is kept as given;
/// the first vertex is the origin of the affine parametrization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Triangle {
    vertices: [LatticePoint; 3],
}

impl Triangle {
    pub fn new(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> Result<Self, DegenerateTriangle> {
        let t = Triangle { vertices: [a, b, c] };
        if t.twice_signed_area() == 0 {
            return Err(DegenerateTriangle);
        }
        Ok(t)
    }

    pub fn from_coords(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Result<Self, DegenerateTriangle> {
        Self::new(a.into(), b.into(), c.into())
    }

    pub fn standard() -> Self {
        Self::from_coords((0, 0), (1, 0), (0, 1)).unwrap()
    }

    pub fn vertices(&self) -> [LatticePoint; 3] {
        self.vertices
    }

    pub fn twice_signed_area(&self) -> i128 {
        let [a, b, c] = self.vertices.map(|p| (p.x as i128, p.y as i128));
        cross(a, b, c)
    }

    pub fn area_exact(&self) -> ExactRational {
        ExactRational::new(self.twice_signed_area().abs().into(), 2.into())
    }

    pub fn to_polygon(&self) -> IntPolygon {
        IntPolygon::new(self.vertices.to_vec()).expect("a nondegenerate triangle is a valid polygon")
    }
}

fn in_closed_triangle(a: (i128, i128), b: (i128, i128), c: (i128, i128), p: (i128, i128)) -> bool {
    cross(a, b, p) >= 0 && cross(b, c, p) >= 0 && cross(c, a, p) >= 0
}

/// Ear-clipping triangulation into `len - 2` counterclockwise triangles.
pub fn triangulate(p: &IntPolygon) -> Vec<Triangle> {
    let pts: Vec<(i128, i128)> = p.vertices().iter().map(|v| (v.x as i128, v.y as i128)).collect();
    let mut remaining: Vec<usize> = (0..pts.len()).collect();
    let mut out = Vec::with_capacity(pts.len() - 2);
    while remaining.len() > 3 {
        let m = remaining.len();
        let ear = (0..m).find(|&k| {
            let (ia, ib, ic) = (remaining[(k + m - 1) % m], remaining[k], remaining[(k + 1) % m]);
            let (a, b, c) = (pts[ia], pts[ib], pts[ic]);
            cross(a, b, c) > 0
                && remaining
                    .iter()
                    .filter(|&&j| j != ia && j != ib && j != ic)
                    .all(|&j| !in_closed_triangle(a, b, c, pts[j]))
        });
        let k = ear.expect("a simple polygon always has an ear");
        let (ia, ib, ic) = (remaining[(k + m - 1) % m], remaining[k], remaining[(k + 1) % m]);
        let v = p.vertices();
        out.push(Triangle { vertices: [v[ia], v[ib], v[ic]] });
        remaining.remove(k);
    }
    let v = p.vertices();
    out.push(Triangle { vertices: [v[remaining[0]], v[remaining[1]], v[remaining[2]]] });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::{int, ratio};

    #[test]
    fn triangle_is_itself() {
        let p = IntPolygon::from_coords(&[(0, 0), (2, 1), (1, 2)]).unwrap();
        let tris = triangulate(&p);
        assert_eq!(tris.len(), 1);
        assert_eq!(tris[0].to_polygon(), p);
    }

    #[test]
    fn square_and_nonconvex_quad() {
        let sq = IntPolygon::from_coords(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        let tris = triangulate(&sq);
        assert_eq!(tris.len(), 2);
        assert!(tris.iter().all(|t| t.area_exact() == ratio(1, 2)));

        let quad = IntPolygon::from_coords(&[(0, 0), (4, 0), (1, 1), (0, 4)]).unwrap();
        let tris = triangulate(&quad);
        assert_eq!(tris.len(), 2);
        let total = tris.iter().fold(int(0), |acc, t| acc + t.area_exact());
        assert_eq!(total, quad.area_exact());
        assert!(tris.iter().all(|t| t.twice_signed_area() > 0));
    }

    #[test]
    fn degenerate_triangle_rejected() {
        assert_eq!(Triangle::from_coords((0, 0), (1, 1), (2, 2)), Err(DegenerateTriangle));
    }
}
