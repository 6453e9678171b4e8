use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{to_f64, ExactRational};

/// Univariate polynomial with exact rational coefficients; `coeffs[k]` is the
/// coefficient of `x^k`. Trailing zeros are always trimmed, so the zero
/// polynomial has no coefficients at all.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly1D {
    coeffs: Vec<ExactRational>,
}

impl Poly1D {
    pub fn new(mut coeffs: Vec<ExactRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly1D { coeffs }
    }

    pub fn zero() -> Self {
        Poly1D { coeffs: Vec::new() }
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^power`.
    pub fn monomial(c: ExactRational, power: usize) -> Self {
        let mut coeffs = vec![ExactRational::zero(); power];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `offset + slope * x`.
    pub fn linear(offset: ExactRational, slope: ExactRational) -> Self {
        Self::new(vec![offset, slope])
    }

    pub fn coefficients(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn coefficient(&self, power: usize) -> ExactRational {
        self.coeffs.get(power).cloned().unwrap_or_else(Zero::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &ExactRational) -> ExactRational {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }

    pub fn derivative(&self) -> Poly1D {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * ExactRational::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, order: usize) -> Poly1D {
        (0..order).fold(self.clone(), |p, _| p.derivative())
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Poly1D {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ExactRational::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / ExactRational::from_integer((k + 1).into()));
        }
        Self::new(coeffs)
    }

    /// Exact integral over `[a, b]`.
    pub fn integrate(&self, a: &ExactRational, b: &ExactRational) -> ExactRational {
        let anti = self.antiderivative();
        anti.eval(b) - anti.eval(a)
    }

    pub fn scale(&self, c: &ExactRational) -> Poly1D {
        Self::new(self.coeffs.iter().map(|k| k * c).collect())
    }

    pub fn pow(&self, exp: u32) -> Poly1D {
        (0..exp).fold(Poly1D::constant(One::one()), |acc, _| &acc * self)
    }
}

/// Horner evaluation of `f64` coefficients, lowest power first.
pub fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

impl Add for &Poly1D {
    type Output = Poly1D;
    fn add(self, rhs: &Poly1D) -> Poly1D {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly1D::new((0..n).map(|k| self.coefficient(k) + rhs.coefficient(k)).collect())
    }
}

impl Sub for &Poly1D {
    type Output = Poly1D;
    fn sub(self, rhs: &Poly1D) -> Poly1D {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly1D::new((0..n).map(|k| self.coefficient(k) - rhs.coefficient(k)).collect())
    }
}

impl Mul for &Poly1D {
    type Output = Poly1D;
    fn mul(self, rhs: &Poly1D) -> Poly1D {
        if self.is_zero() || rhs.is_zero() {
            return Poly1D::zero();
        }
        let mut out = vec![ExactRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly1D::new(out)
    }
}

impl Neg for &Poly1D {
    type Output = Poly1D;
    fn neg(self) -> Poly1D {
        Poly1D::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Poly1D {
            type Output = Poly1D;
            fn $method(self, rhs: Poly1D) -> Poly1D {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Highest power first, e.g. `1/2*x^2 - 1/2*x + 1/12`.
impl fmt::Display for Poly1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (k, magnitude.is_one()) {
                (0, _) => write!(f, "{magnitude}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{magnitude}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{magnitude}*x^{k}")?,
            }
        }
        Ok(())
    }
}
