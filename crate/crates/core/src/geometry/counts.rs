use num_integer::Integer;

use super::classify::{vertex_angle, PointClass, ScaledPolygon};
use super::polygon::IntPolygon;
use crate::numerics::rational::{int, ExactRational};

/// Number of integer points on the boundary.
pub fn boundary_lattice_count(p: &IntPolygon) -> u64 {
    p.edges().map(|(a, b)| (b.x - a.x).unsigned_abs().gcd(&(b.y - a.y).unsigned_abs())).sum()
}

/// Number of integer points strictly inside, by scanning the bounding box.
pub fn interior_lattice_count(p: &IntPolygon) -> u64 {
    let scaled = ScaledPolygon::new(p, 1);
    let (x0, y0, x1, y1) = p.bounding_box();
    let mut count = 0;
    for y in y0..=y1 {
        for x in x0..=x1 {
            if scaled.classify(x, y) == PointClass::Interior {
                count += 1;
            }
        }
    }
    count
}

/// `area - (I + B/2 - 1)`, which vanishes for every simple integer polygon.
pub fn pick_residual(p: &IntPolygon) -> ExactRational {
    let i = int(interior_lattice_count(p) as i64);
    let b = int(boundary_lattice_count(p) as i64);
    p.area_exact() - (i + b / int(2) - int(1))
}

#[derive(Clone, Debug, PartialEq)]
pub struct AngleSum {
    pub value: f64,
    pub exact: Option<ExactRational>,
}

/// Sum of the normalized vertex angles, `r/2 - 1` for an `r`-gon.
pub fn vertex_angle_sum(p: &IntPolygon) -> AngleSum {
    let angles: Vec<_> = (0..p.len()).map(|i| vertex_angle(p, i)).collect();
    let value = angles.iter().map(|a| a.value).sum();
    let exact = angles
        .iter()
        .map(|a| a.exact.clone())
        .try_fold(int(0), |acc, e| e.map(|e| acc + e));
    AngleSum { value, exact }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::ratio;

    #[test]
    fn counts_on_examples() {
        let tri = IntPolygon::from_coords(&[(0, 0), (2, 1), (1, 2)]).unwrap();
        assert_eq!(boundary_lattice_count(&tri), 3);
        assert_eq!(interior_lattice_count(&tri), 1);
        let big = IntPolygon::from_coords(&[(0, 0), (4, 0), (0, 4)]).unwrap();
        assert_eq!(boundary_lattice_count(&big), 12);
        assert_eq!(interior_lattice_count(&big), 3);
        let sq = IntPolygon::from_coords(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        assert_eq!(interior_lattice_count(&sq), 0);
        assert_eq!(pick_residual(&sq), int(0));
        assert_eq!(pick_residual(&tri), int(0));
    }

    #[test]
    fn angle_sums() {
        let sq = IntPolygon::from_coords(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        assert_eq!(vertex_angle_sum(&sq).exact, Some(int(1)));
        let tri = IntPolygon::from_coords(&[(0, 0), (2, 1), (1, 2)]).unwrap();
        let s = vertex_angle_sum(&tri);
        assert!(s.exact.is_none());
        assert!((s.value - 0.5).abs() < 1e-12);
        let right = IntPolygon::from_coords(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        assert_eq!(vertex_angle_sum(&right).exact, Some(ratio(1, 2)));
    }
}
