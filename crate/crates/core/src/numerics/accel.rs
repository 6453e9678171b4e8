use num_traits::One;

use super::linalg::solve_exact;
use super::rational::{ratio, ExactRational};

/// Weights `c_1..c_k` that combine `S(N), S(2N), ..., S(2^{k-1} N)` so the
/// constant term survives and the `N^{-2}, ..., N^{-2(k-1)}` terms cancel.
pub fn accel_coefficients(k: usize) -> Vec<ExactRational> {
    assert!(k >= 1, "acceleration needs at least one level");
    // Row j: sum_i c_i * (4^{-(i-1)})^j
    let nodes: Vec<ExactRational> = (0..k).map(|i| ratio(1, 4i64.pow(i as u32))).collect();
    let matrix: Vec<Vec<ExactRational>> = (0..k)
        .map(|j| nodes.iter().map(|x| num_traits::pow(x.clone(), j)).collect())
        .collect();
    let mut rhs = vec![ExactRational::from_integer(0.into()); k];
    rhs[0] = ExactRational::one();
    solve_exact(&matrix, &rhs).expect("Vandermonde with distinct nodes is invertible")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::int;

    #[test]
    fn known_combinations() {
        assert_eq!(accel_coefficients(1), vec![int(1)]);
        assert_eq!(accel_coefficients(2), vec![ratio(-1, 3), ratio(4, 3)]);
        assert_eq!(accel_coefficients(3), vec![ratio(1, 45), ratio(-20, 45), ratio(64, 45)]);
    }
}
