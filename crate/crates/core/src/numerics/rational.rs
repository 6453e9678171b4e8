use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

/// Arbitrary-precision fraction, always kept in lowest terms with a positive
/// denominator.
pub type ExactRational = BigRational;

/// `numer / denom` as an exact rational. Panics if `denom == 0`.
pub fn ratio(numer: i64, denom: i64) -> ExactRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Nearest `f64` to `r`.
pub fn to_f64(r: &ExactRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Renders `r` as `p/q`, or just `p` when the denominator is one.
pub fn render(r: &ExactRational) -> String {
    r.to_string()
}

/// Parses `p/q` or `p`; surrounding whitespace is ignored.
pub fn parse(text: &str) -> Option<ExactRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => text.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}
