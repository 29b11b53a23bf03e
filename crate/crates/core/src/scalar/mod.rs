//! Exact scalars: Laurent polynomials, the rational function field Q(q),
//! and the [`Field`] abstraction that lets every downstream computation run
//! either symbolically or at a fixed rational value of `q`.

mod laurent;
mod parse;
mod qscalar;

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use laurent::LaurentPoly;
pub use parse::parse_qscalar;
pub use qscalar::QScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot evaluate at q = 0")]
    ZeroEvaluationPoint,
    #[error("pole at q = {0}")]
    Pole(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// An exact field the engine can compute over.
///
/// Implemented by [`QScalar`] (symbolic `q`) and by [`BigRational`]
/// (numeric mode, `q` fixed to a rational value).
pub trait Field:
    Clone
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    fn from_rational(r: &BigRational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(n.into()))
    }

    /// Maps a symbolic scalar into this field, given this field's value of `q`.
    fn embed(s: &QScalar, q: &Self) -> Result<Self, ScalarError>;
}

impl Field for QScalar {
    fn from_rational(r: &BigRational) -> Self {
        QScalar::from_rational(r.clone())
    }

    fn embed(s: &QScalar, _q: &Self) -> Result<Self, ScalarError> {
        Ok(s.clone())
    }
}

impl Field for BigRational {
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn embed(s: &QScalar, q: &Self) -> Result<Self, ScalarError> {
        s.eval_at(q)
    }
}

/// Computation mode: which field, and which value of `q` inside it.
#[derive(Clone, Debug)]
pub struct Deformation<F: Field> {
    q: F,
    q_inv: F,
}

impl Deformation<QScalar> {
    pub fn symbolic() -> Self {
        Self {
            q: QScalar::q(),
            q_inv: QScalar::q_pow(-1),
        }
    }
}

impl Deformation<BigRational> {
    /// Numeric mode at a fixed nonzero rational `q`.
    pub fn numeric(q: BigRational) -> Result<Self, ScalarError> {
        if q.is_zero() {
            return Err(ScalarError::ZeroEvaluationPoint);
        }
        Ok(Self {
            q_inv: q.recip(),
            q,
        })
    }

    /// The default generic value `q = 3/2`.
    pub fn default_numeric() -> Self {
        Self::numeric(BigRational::new(3.into(), 2.into())).unwrap()
    }

    /// The classical limit `q = 1`.
    pub fn classical() -> Self {
        Self::numeric(BigRational::one()).unwrap()
    }
}

impl<F: Field> Deformation<F> {
    pub fn q(&self) -> &F {
        &self.q
    }

    pub fn q_pow(&self, k: i32) -> F {
        let base = if k < 0 { &self.q_inv } else { &self.q };
        let mut acc = F::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc * base;
        }
        acc
    }

    /// The q-integer `[n] = (q^n - q^-n) / (q - q^-1)`, expanded as the
    /// Laurent sum `q^(n-1) + q^(n-3) + ... + q^(1-n)` so it is defined at `q = 1`.
    pub fn qint(&self, n: i32) -> F {
        let sign = if n < 0 { -F::one() } else { F::one() };
        let m = n.abs();
        let mut acc = F::zero();
        for k in 0..m {
            acc += &self.q_pow(m - 1 - 2 * k);
        }
        acc * &sign
    }

    /// Embeds a symbolic scalar into this mode.
    pub fn embed(&self, s: &QScalar) -> Result<F, ScalarError> {
        F::embed(s, &self.q)
    }

    pub fn from_i64(&self, n: i64) -> F {
        F::from_i64(n)
    }
}

/// The q-integer `[n]` as an element of Q(q).
pub fn qint(n: i32) -> QScalar {
    Deformation::symbolic().qint(n)
}

/// Exact value of `f` at the rational point `r`.
pub fn eval_at(f: &QScalar, r: &BigRational) -> Result<BigRational, ScalarError> {
    f.eval_at(r)
}
