use std::f64::consts::PI;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{class_weight, IntPolygon, LatticePoint, PointClass, ScaledPolygon, SolidAngle};
use crate::numerics::bernoulli::{bernoulli_at_zero, with_bernoulli};
use crate::numerics::poly1d::horner;
use crate::numerics::linalg::neville_at_zero;
use crate::numerics::rational::to_f64;
use crate::numerics::summation::pairwise_sum;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum LemmaError {
    #[error("direction vectors are degenerate: {0}")]
    DegenerateDirections(String),
    #[error("({0}, {1}) is not a primitive direction")]
    NonCoprime(i64, i64),
    #[error("cutoff {cutoff} too small for eps = {eps}; need at least {required}")]
    CutoffTooSmall { cutoff: u64, eps: f64, required: u64 },
    #[error("invalid lemma spec: {0}")]
    InvalidSpec(String),
}

/// Which Bernoulli lattice sum, with its direction data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LemmaSum {
    /// `sum over the line cm + dn = 0 of (am + bn)^{-h-1}`
    Line { a: i64, b: i64, c: i64, d: i64, h: u32 },
    /// `sum over the line em + fn = 0 of (am + bn)^{-h-1} (cm + dn)^{-k-1}`
    Line2 { a: i64, b: i64, c: i64, d: i64, e: i64, f: i64, h: u32, k: u32 },
    /// `sum over am + bn != 0, cm + dn != 0 of (am + bn)^{-h-1} (cm + dn)^{-k-1}`
    Double { a: i64, b: i64, c: i64, d: i64, h: u32, k: u32 },
}

#[derive(Serialize, Deserialize)]
struct LemmaSumJson {
    kind: String,
    dirs: Vec<i64>,
    h: u32,
    #[serde(default)]
    k: u32,
}

impl LemmaSum {
    /// Parses `{"kind": "line"|"line2"|"double", "dirs": [...], "h": int, "k": int}`.
    pub fn from_json(text: &str) -> Result<Self, LemmaError> {
        let raw: LemmaSumJson = serde_json::from_str(text).map_err(|e| LemmaError::InvalidSpec(e.to_string()))?;
        let want = match raw.kind.as_str() {
            "line" | "double" => 4,
            "line2" => 6,
            other => return Err(LemmaError::InvalidSpec(format!("unknown kind {other:?}"))),
        };
        if raw.dirs.len() != want {
            return Err(LemmaError::InvalidSpec(format!("kind {} needs {want} dirs, got {}", raw.kind, raw.dirs.len())));
        }
        let v = &raw.dirs;
        Ok(match raw.kind.as_str() {
            "line" => LemmaSum::Line { a: v[0], b: v[1], c: v[2], d: v[3], h: raw.h },
            "line2" => LemmaSum::Line2 { a: v[0], b: v[1], c: v[2], d: v[3], e: v[4], f: v[5], h: raw.h, k: raw.k },
            _ => LemmaSum::Double { a: v[0], b: v[1], c: v[2], d: v[3], h: raw.h, k: raw.k },
        })
    }

    pub fn to_json(&self) -> String {
        let (kind, dirs, h, k) = match *self {
            LemmaSum::Line { a, b, c, d, h } => ("line", vec![a, b, c, d], h, 0),
            LemmaSum::Line2 { a, b, c, d, e, f, h, k } => ("line2", vec![a, b, c, d, e, f], h, k),
            LemmaSum::Double { a, b, c, d, h, k } => ("double", vec![a, b, c, d], h, k),
        };
        serde_json::to_string(&LemmaSumJson { kind: kind.into(), dirs, h, k }).unwrap()
    }

    /// Closed-form value of the limit.
    pub fn closed_form(&self) -> Result<f64, LemmaError> {
        match *self {
            LemmaSum::Line { a, b, c, d, h } => line_sum(a, b, c, d, h),
            LemmaSum::Line2 { a, b, c, d, e, f, h, k } => line_sum_two_factor(a, b, c, d, e, f, h, k),
            LemmaSum::Double { a, b, c, d, h, k } => double_sum(a, b, c, d, h, k),
        }
    }

    /// Total homogeneity `h + k + 2` of the summand, in `-` degree.
    pub fn order(&self) -> u32 {
        match *self {
            LemmaSum::Line { h, .. } => h + 1,
            LemmaSum::Line2 { h, k, .. } | LemmaSum::Double { h, k, .. } => h + k + 2,
        }
    }

    fn validate(&self) -> Result<(), LemmaError> {
        match *self {
            LemmaSum::Line { a, b, c, d, .. } => {
                primitive(c, d)?;
                nonzero_det(a, b, c, d)
            }
            LemmaSum::Line2 { a, b, c, d, e, f, .. } => {
                primitive(e, f)?;
                nonzero_det(a, b, e, f)?;
                nonzero_det(c, d, e, f)
            }
            LemmaSum::Double { a, b, c, d, .. } => {
                primitive(a, b)?;
                primitive(c, d)?;
                nonzero_det(a, b, c, d)
            }
        }
    }
}

fn primitive(x: i64, y: i64) -> Result<(), LemmaError> {
    if x.gcd(&y) == 1 {
        Ok(())
    } else {
        Err(LemmaError::NonCoprime(x, y))
    }
}

fn nonzero_det(a: i64, b: i64, c: i64, d: i64) -> Result<(), LemmaError> {
    if a * d - b * c == 0 {
        Err(LemmaError::DegenerateDirections(format!("({a}, {b}) and ({c}, {d}) are parallel")))
    } else {
        Ok(())
    }
}

/// `(2 pi i)^p` for even `p`, as a real number.
fn two_pi_i_even_power(p: u32) -> f64 {
    let sign = if (p / 2) % 2 == 0 { 1.0 } else { -1.0 };
    sign * (2.0 * PI).powi(p as i32)
}

fn bernoulli_zero_f64(j: u32) -> f64 {
    to_f64(&bernoulli_at_zero(j as usize))
}

/// Limit of the mollified sum of `(am + bn)^{-h-1}` over the nonzero integer
/// points of the line `cm + dn = 0`.
pub fn line_sum(a: i64, b: i64, c: i64, d: i64, h: u32) -> Result<f64, LemmaError> {
    LemmaSum::Line { a, b, c, d, h }.validate()?;
    if h % 2 == 0 {
        return Ok(0.0);
    }
    let det = (a * d - b * c) as f64;
    Ok(-two_pi_i_even_power(h + 1) * bernoulli_zero_f64(h + 1) * det.powi(-(h as i32) - 1))
}

/// Two-factor version along the line `em + fn = 0`.
#[allow(clippy::too_many_arguments)]
pub fn line_sum_two_factor(a: i64, b: i64, c: i64, d: i64, e: i64, f: i64, h: u32, k: u32) -> Result<f64, LemmaError> {
    LemmaSum::Line2 { a, b, c, d, e, f, h, k }.validate()?;
    if (h + k) % 2 == 1 {
        return Ok(0.0);
    }
    let p = h + k + 2;
    let first = (a * f - b * e) as f64;
    let second = (c * f - d * e) as f64;
    Ok(-two_pi_i_even_power(p) * bernoulli_zero_f64(p) / (first.powi(h as i32 + 1) * second.powi(k as i32 + 1)))
}

/// The parallelogram spanned by `(a, b)` and `(c, d)`.
pub fn parallelogram(a: i64, b: i64, c: i64, d: i64) -> Result<IntPolygon, LemmaError> {
    nonzero_det(a, b, c, d)?;
    IntPolygon::from_coords(&[(0, 0), (a, b), (a + c, b + d), (c, d)])
        .map_err(|e| LemmaError::DegenerateDirections(e.to_string()))
}

/// Integer points of the closed parallelogram with their normalized angles.
pub fn parallelogram_lattice(a: i64, b: i64, c: i64, d: i64) -> Result<Vec<(LatticePoint, SolidAngle)>, LemmaError> {
    let r = parallelogram(a, b, c, d)?;
    let sp = ScaledPolygon::new(&r, 1);
    let (x0, y0, x1, y1) = sp.bounding_box();
    let mut out = Vec::new();
    for y in y0..=y1 {
        for x in x0..=x1 {
            let class = sp.classify(x, y);
            if class != PointClass::Outside {
                out.push((LatticePoint::new(x, y), class_weight(&r, class)));
            }
        }
    }
    Ok(out)
}

/// Limit of the mollified double sum, through the finite lattice sum over
/// the parallelogram.
pub fn double_sum(a: i64, b: i64, c: i64, d: i64, h: u32, k: u32) -> Result<f64, LemmaError> {
    LemmaSum::Double { a, b, c, d, h, k }.validate()?;
    if (h + k) % 2 == 1 {
        return Ok(0.0);
    }
    let coeffs = |j: u32| with_bernoulli(j as usize + 1, |b| b.poly.to_f64_coeffs());
    let (bh, bk) = (coeffs(h), coeffs(k));
    let det = a * d - b * c;
    let inv = 1.0 / det as f64;
    let terms: Vec<f64> = parallelogram_lattice(a, b, c, d)?
        .into_iter()
        .map(|(p, w)| {
            let u = ((d * p.x - c * p.y) as f64) * inv;
            let v = ((-b * p.x + a * p.y) as f64) * inv;
            w.value * horner(&bh, u) * horner(&bk, v)
        })
        .collect();
    Ok(two_pi_i_even_power(h + k + 2) / (det.abs() as f64) * pairwise_sum(&terms))
}

/// Smallest box half-width with `exp(-pi (eps * cutoff)^2) < 1e-12`.
pub fn required_cutoff(eps: f64) -> u64 {
    let t = (12.0 * std::f64::consts::LN_10 / PI).sqrt();
    let mut c = (t / eps).ceil() as u64;
    while (-PI * (eps * c as f64).powi(2)).exp() >= 1e-12 {
        c += 1;
    }
    c
}

fn inv_pow(x: i64, p: u32) -> f64 {
    (x as f64).powi(-(p as i32))
}

/// Terms of the truncated series over one half of the box, already doubled
/// for the mirrored half, as `(|m|, |n|, 2 * term)`.
fn half_plane_terms(spec: &LemmaSum, cutoff: u64) -> Vec<(usize, usize, f64)> {
    let cut = cutoff as i64;
    let along = |dm: i64, dn: i64, term: &dyn Fn(i64, i64) -> f64| -> Vec<(usize, usize, f64)> {
        (1..=cut)
            .map(|j| {
                let (m, n) = (j * dm, j * dn);
                (m.unsigned_abs() as usize, n.unsigned_abs() as usize, 2.0 * term(m, n))
            })
            .collect()
    };
    match *spec {
        // points j (d, -c)
        LemmaSum::Line { a, b, c, d, h } => along(d, -c, &|m, n| inv_pow(a * m + b * n, h + 1)),
        LemmaSum::Line2 { a, b, c, d, e, f, h, k } => {
            along(f, -e, &|m, n| inv_pow(a * m + b * n, h + 1) * inv_pow(c * m + d * n, k + 1))
        }
        LemmaSum::Double { a, b, c, d, h, k } => {
            // half plane: n > 0, or n = 0 and m > 0
            let mut out = Vec::with_capacity(((2 * cut + 1) * (cut + 1)) as usize);
            for n in 0..=cut {
                let start = if n == 0 { 1 } else { -cut };
                for m in start..=cut {
                    let (u, v) = (a * m + b * n, c * m + d * n);
                    if u != 0 && v != 0 {
                        out.push((m.unsigned_abs() as usize, n as usize, 2.0 * inv_pow(u, h + 1) * inv_pow(v, k + 1)));
                    }
                }
            }
            out
        }
    }
}

/// `(sum t e^{-pi eps^2 (m^2 + n^2)}, sum |t| e^{-pi eps^2 (m^2 + n^2)})`.
fn damped_total(terms: &[(usize, usize, f64)], eps: f64) -> (f64, f64) {
    let top = terms.iter().map(|t| t.0.max(t.1)).max().unwrap_or(0);
    let e2 = PI * eps * eps;
    // exp(-e2 k^2) by the recurrence g_k = g_{k-1} q^{2k-1}, q = exp(-e2)
    let q = (-e2).exp();
    let mut gauss = Vec::with_capacity(top + 1);
    let (mut g, mut step) = (1.0f64, q);
    for _ in 0..=top {
        gauss.push(g);
        g *= step;
        step *= q * q;
    }
    let weighted: Vec<f64> = terms.iter().map(|&(m, n, t)| gauss[m] * gauss[n] * t).collect();
    let mass: Vec<f64> = weighted.iter().map(|t| t.abs()).collect();
    (pairwise_sum(&weighted), pairwise_sum(&mass))
}

/// Truncated sum with the Gaussian multiplier `exp(-pi eps^2 |(m, n)|^2)`.
/// Pairs `(m, n)` and `(-m, -n)` are combined before summation, so sums of
/// odd total degree are exactly zero.
pub fn mollified_sum_oracle(spec: &LemmaSum, eps: f64, cutoff: u64) -> Result<f64, LemmaError> {
    mollified_sum_with_mass(spec, eps, cutoff).map(|(v, _)| v)
}

/// As [`mollified_sum_oracle`], also returning the sum of the absolute values
/// of the terms, a natural scale for the result.
pub fn mollified_sum_with_mass(spec: &LemmaSum, eps: f64, cutoff: u64) -> Result<(f64, f64), LemmaError> {
    assert!(eps > 0.0, "eps must be positive");
    spec.validate()?;
    let required = required_cutoff(eps);
    if cutoff < required {
        return Err(LemmaError::CutoffTooSmall { cutoff, eps, required });
    }
    let (value, mass) = damped_total(&half_plane_terms(spec, cutoff), eps);
    Ok((if spec.order() % 2 == 1 { 0.0 } else { value }, mass))
}

/// Geometric `eps` schedule used for the limit `eps -> 0+`.
pub fn default_schedule() -> Vec<f64> {
    let (hi, lo, count) = (0.06f64, 0.025f64, 8);
    (0..count).map(|i| hi * (lo / hi).powf(i as f64 / (count - 1) as f64)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MollifiedLimit {
    /// Polynomial extrapolation of the mollified sums to `eps = 0`.
    pub limit: f64,
    /// Change in the extrapolated value when the smallest `eps` is dropped.
    pub spread: f64,
    /// Largest absolute mass of the series over the schedule.
    pub scale: f64,
    pub raw: Vec<(f64, f64)>,
}

/// The mollified sum is a polynomial in `eps` of degree at most `h + k + 2`
/// up to terms of size `exp(-c / eps^2)`, so polynomial extrapolation over a
/// moderate schedule recovers the limit.
pub fn mollified_limit(spec: &LemmaSum, schedule: &[f64]) -> Result<MollifiedLimit, LemmaError> {
    assert!(schedule.len() >= 2, "schedule needs at least two values");
    assert!(schedule.iter().all(|&e| e > 0.0), "eps must be positive");
    spec.validate()?;
    // one box wide enough for the smallest eps serves the whole schedule
    let cutoff = schedule.iter().map(|&e| required_cutoff(e)).max().unwrap();
    let terms = half_plane_terms(spec, cutoff);
    let odd = spec.order() % 2 == 1;
    let evaluated: Vec<(f64, f64, f64)> = schedule
        .iter()
        .map(|&eps| {
            let (v, m) = damped_total(&terms, eps);
            (eps, if odd { 0.0 } else { v }, m)
        })
        .collect();
    let scale = evaluated.iter().map(|e| e.2).fold(0.0, f64::max);
    let raw: Vec<(f64, f64)> = evaluated.iter().map(|e| (e.0, e.1)).collect();
    let xs: Vec<f64> = raw.iter().map(|r| r.0).collect();
    let ys: Vec<f64> = raw.iter().map(|r| r.1).collect();
    let limit = neville_at_zero(&xs, &ys);
    let n = xs.len();
    let reduced = neville_at_zero(&xs[..n - 1], &ys[..n - 1]);
    Ok(MollifiedLimit { limit, spread: (limit - reduced).abs(), scale, raw })
}
