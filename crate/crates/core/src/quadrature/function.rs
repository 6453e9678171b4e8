use std::fmt;
use std::sync::Arc;

use serde_json::Value;
use thiserror::Error;

use crate::numerics::poly1d::Poly1D;
use crate::numerics::poly2d::Poly2D;
use crate::numerics::rational::{ratio, ExactRational};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FunctionError {
    #[error("derivative of order {requested} requested, integrand provides up to {max}")]
    DerivativeOrderExceeded { requested: u32, max: u32 },
    #[error("unknown builtin integrand {0:?}")]
    UnknownBuiltin(String),
    #[error("invalid function spec: {0}")]
    InvalidSpec(String),
}

type Eval2 = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
type Partial2 = Arc<dyn Fn(u32, u32, f64, f64) -> f64 + Send + Sync>;
type Deriv1 = Arc<dyn Fn(u32, f64) -> f64 + Send + Sync>;

/// Smooth integrand given by closures, with partial derivatives available up
/// to `max_order` (total order).
#[derive(Clone)]
pub struct AnalyticFn2D {
    pub name: String,
    pub max_order: u32,
    value: Eval2,
    partial: Partial2,
}

impl AnalyticFn2D {
    pub fn new(
        name: impl Into<String>,
        max_order: u32,
        value: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        partial: impl Fn(u32, u32, f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        AnalyticFn2D { name: name.into(), max_order, value: Arc::new(value), partial: Arc::new(partial) }
    }
}

impl fmt::Debug for AnalyticFn2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnalyticFn2D").field("name", &self.name).field("max_order", &self.max_order).finish()
    }
}

#[derive(Clone, Debug)]
pub enum Function2D {
    Polynomial(Poly2D),
    Analytic(AnalyticFn2D),
}

impl Function2D {
    pub fn zero() -> Self {
        Function2D::Polynomial(Poly2D::zero())
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            Function2D::Polynomial(p) => p.eval_f64(x, y),
            Function2D::Analytic(a) => (a.value)(x, y),
        }
    }

    pub fn partial(&self, dx: u32, dy: u32, x: f64, y: f64) -> Result<f64, FunctionError> {
        match self {
            Function2D::Polynomial(p) => Ok(p.partial(dx, dy).eval_f64(x, y)),
            Function2D::Analytic(a) => {
                if dx + dy > a.max_order {
                    return Err(FunctionError::DerivativeOrderExceeded { requested: dx + dy, max: a.max_order });
                }
                Ok((a.partial)(dx, dy, x, y))
            }
        }
    }

    pub fn as_polynomial(&self) -> Option<&Poly2D> {
        match self {
            Function2D::Polynomial(p) => Some(p),
            Function2D::Analytic(_) => None,
        }
    }

    /// A compiled evaluator, cheaper than [`Function2D::eval`] for
    /// polynomials inside hot loops.
    pub fn evaluator(&self) -> impl Fn(f64, f64) -> f64 + Send + Sync + '_ {
        let terms = self.as_polynomial().map(Poly2D::to_f64_terms);
        move |x, y| match &terms {
            Some(t) => t.iter().map(|&(c, i, j)| c * x.powi(i) * y.powi(j)).sum(),
            None => self.eval(x, y),
        }
    }

    /// Registered analytic integrands: `expxy` is `e^(x+y)`, `sinxcosy` is
    /// `sin(x) cos(y)`.
    pub fn builtin(name: &str) -> Result<Self, FunctionError> {
        let f = match name {
            "expxy" => AnalyticFn2D::new("expxy", u32::MAX, |x, y| (x + y).exp(), |_, _, x, y| (x + y).exp()),
            "sinxcosy" => AnalyticFn2D::new(
                "sinxcosy",
                u32::MAX,
                |x, y| x.sin() * y.cos(),
                |dx, dy, x, y| shifted_sin(x, dx) * shifted_cos(y, dy),
            ),
            other => return Err(FunctionError::UnknownBuiltin(other.to_string())),
        };
        Ok(Function2D::Analytic(f))
    }

    /// Parses `{"monomials": [[num, den, xpow, ypow], ...]}` or
    /// `{"builtin": name}`.
    pub fn from_json(text: &str) -> Result<Self, FunctionError> {
        let v: Value = serde_json::from_str(text).map_err(|e| FunctionError::InvalidSpec(e.to_string()))?;
        Self::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Self, FunctionError> {
        if let Some(name) = v.get("builtin") {
            let name = name.as_str().ok_or_else(|| invalid("builtin must be a string"))?;
            return Self::builtin(name);
        }
        let list = v
            .get("monomials")
            .and_then(Value::as_array)
            .ok_or_else(|| invalid("expected a \"monomials\" array or a \"builtin\" name"))?;
        let mut terms = Vec::with_capacity(list.len());
        for (idx, entry) in list.iter().enumerate() {
            let items = entry.as_array().filter(|a| a.len() == 4).ok_or_else(|| {
                invalid(&format!("monomials[{idx}] must be [num, den, xpow, ypow]"))
            })?;
            let num = items[0].as_i64().ok_or_else(|| invalid(&format!("monomials[{idx}]: num must be an integer")))?;
            let den = items[1].as_i64().filter(|&d| d != 0).ok_or_else(|| {
                invalid(&format!("monomials[{idx}]: den must be a nonzero integer"))
            })?;
            let pow = |k: usize, what: &str| -> Result<u32, FunctionError> {
                items[k]
                    .as_u64()
                    .and_then(|p| u32::try_from(p).ok())
                    .ok_or_else(|| invalid(&format!("monomials[{idx}]: {what} must be a nonnegative integer")))
            };
            terms.push((ratio(num, den), pow(2, "xpow")?, pow(3, "ypow")?));
        }
        Ok(Function2D::Polynomial(Poly2D::new(terms)))
    }
}

fn invalid(msg: &str) -> FunctionError {
    FunctionError::InvalidSpec(msg.to_string())
}

fn shifted_sin(x: f64, k: u32) -> f64 {
    match k % 4 {
        0 => x.sin(),
        1 => x.cos(),
        2 => -x.sin(),
        _ => -x.cos(),
    }
}

fn shifted_cos(x: f64, k: u32) -> f64 {
    shifted_sin(x, k + 1)
}

impl From<Poly2D> for Function2D {
    fn from(p: Poly2D) -> Self {
        Function2D::Polynomial(p)
    }
}

#[derive(Clone)]
pub struct AnalyticFn1D {
    pub name: String,
    pub max_order: u32,
    deriv: Deriv1,
}

impl AnalyticFn1D {
    /// `deriv(k, x)` must return the `k`-th derivative for `k <= max_order`.
    pub fn new(name: impl Into<String>, max_order: u32, deriv: impl Fn(u32, f64) -> f64 + Send + Sync + 'static) -> Self {
        AnalyticFn1D { name: name.into(), max_order, deriv: Arc::new(deriv) }
    }
}

impl fmt::Debug for AnalyticFn1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnalyticFn1D").field("name", &self.name).field("max_order", &self.max_order).finish()
    }
}

#[derive(Clone, Debug)]
pub enum Function1D {
    Polynomial(Poly1D),
    Analytic(AnalyticFn1D),
}

impl Function1D {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Function1D::Polynomial(p) => p.eval_f64(x),
            Function1D::Analytic(a) => (a.deriv)(0, x),
        }
    }

    pub fn derivative(&self, order: u32, x: f64) -> Result<f64, FunctionError> {
        match self {
            Function1D::Polynomial(p) => Ok(p.nth_derivative(order as usize).eval_f64(x)),
            Function1D::Analytic(a) => {
                if order > a.max_order {
                    return Err(FunctionError::DerivativeOrderExceeded { requested: order, max: a.max_order });
                }
                Ok((a.deriv)(order, x))
            }
        }
    }

    /// Fails early when derivatives up to `order` are not all available.
    pub fn require_order(&self, order: u32) -> Result<(), FunctionError> {
        match self {
            Function1D::Analytic(a) if order > a.max_order => {
                Err(FunctionError::DerivativeOrderExceeded { requested: order, max: a.max_order })
            }
            _ => Ok(()),
        }
    }

    pub fn as_polynomial(&self) -> Option<&Poly1D> {
        match self {
            Function1D::Polynomial(p) => Some(p),
            Function1D::Analytic(_) => None,
        }
    }

    /// `exp`, `sin` and `cos`.
    pub fn builtin(name: &str) -> Result<Self, FunctionError> {
        let f = match name {
            "exp" => AnalyticFn1D::new("exp", u32::MAX, |_, x| x.exp()),
            "sin" => AnalyticFn1D::new("sin", u32::MAX, |k, x| shifted_sin(x, k)),
            "cos" => AnalyticFn1D::new("cos", u32::MAX, |k, x| shifted_cos(x, k)),
            other => return Err(FunctionError::UnknownBuiltin(other.to_string())),
        };
        Ok(Function1D::Analytic(f))
    }

    pub fn polynomial(coeffs: Vec<ExactRational>) -> Self {
        Function1D::Polynomial(Poly1D::new(coeffs))
    }
}

impl From<Poly1D> for Function1D {
    fn from(p: Poly1D) -> Self {
        Function1D::Polynomial(p)
    }
}
