/// Pairwise (tree) summation in a fixed order, independent of how the input
/// was produced.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const LEAF: usize = 8;
    if values.len() <= LEAF {
        return values.iter().sum();
    }
    let (lo, hi) = values.split_at(values.len() / 2);
    pairwise_sum(lo) + pairwise_sum(hi)
}

/// Least-squares slope of `log |err|` against `log N`.
pub fn log_log_slope(ns: &[f64], errors: &[f64]) -> f64 {
    let xs: Vec<f64> = ns.iter().map(|n| n.ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.abs().ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// `log2(e_prev / e_next)`, the observed order between consecutive
/// doublings of `N`.
pub fn observed_order(prev_error: f64, next_error: f64, ratio: f64) -> f64 {
    (prev_error.abs() / next_error.abs()).ln() / ratio.ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_naive_on_integers() {
        let v: Vec<f64> = (1..=1000).map(f64::from).collect();
        assert_eq!(pairwise_sum(&v), 500500.0);
        assert_eq!(pairwise_sum(&[]), 0.0);
    }

    #[test]
    fn slope_of_power_law() {
        let ns = [4.0, 8.0, 16.0, 32.0];
        let errs: Vec<f64> = ns.iter().map(|n: &f64| 3.0 * n.powi(-4)).collect();
        assert!((log_log_slope(&ns, &errs) + 4.0).abs() < 1e-12);
        assert!((observed_order(errs[0], errs[1], 2.0) - 4.0).abs() < 1e-12);
    }
}
