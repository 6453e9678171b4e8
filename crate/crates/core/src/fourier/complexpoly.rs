use std::f64::consts::PI;

use num_complex::Complex64;

/// Polynomial with complex coefficients, lowest power first.
pub(crate) type CPoly = Vec<Complex64>;

pub(crate) fn eval(p: &[Complex64], x: f64) -> Complex64 {
    p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c)
}

pub(crate) fn derivative(p: &[Complex64]) -> CPoly {
    p.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect()
}

pub(crate) fn add_scaled(acc: &mut CPoly, p: &[Complex64], factor: Complex64) {
    if acc.len() < p.len() {
        acc.resize(p.len(), Complex64::new(0.0, 0.0));
    }
    for (a, c) in acc.iter_mut().zip(p) {
        *a += c * factor;
    }
}

/// `s^i (1 - s)^k` with real coefficients.
pub(crate) fn monomial_times_one_minus(i: usize, k: usize) -> CPoly {
    let mut p = vec![Complex64::new(0.0, 0.0); i + k + 1];
    let mut binom = 1.0f64;
    for r in 0..=k {
        let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
        p[i + r] = Complex64::new(sign * binom, 0.0);
        binom = binom * (k - r) as f64 / (r + 1) as f64;
    }
    p
}

/// `e^{-2 pi i kappa x}`.
pub(crate) fn phase(kappa: f64, x: f64) -> Complex64 {
    Complex64::from_polar(1.0, -2.0 * PI * kappa * x)
}

/// `int_a^b P(x) e^{-2 pi i kappa x} dx` in closed form.
pub(crate) fn oscillatory_integral(p: &[Complex64], a: f64, b: f64, kappa: f64) -> Complex64 {
    if kappa == 0.0 {
        let anti = |x: f64| {
            p.iter()
                .enumerate()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, (k, c)| acc + c * x.powi(k as i32 + 1) / (k + 1) as f64)
        };
        return anti(b) - anti(a);
    }
    let z = Complex64::new(0.0, 2.0 * PI * kappa);
    let (ea, eb) = (phase(kappa, a), phase(kappa, b));
    let mut total = Complex64::new(0.0, 0.0);
    let mut d = p.to_vec();
    let mut zpow = z.inv();
    while !d.is_empty() {
        total += zpow * (ea * eval(&d, a) - eb * eval(&d, b));
        d = derivative(&d);
        zpow /= z;
    }
    total
}
