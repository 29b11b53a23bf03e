//! Rational functions in `q`: the field Q(q).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::{dense, LaurentPoly};
use super::ScalarError;

/// An element of Q(q), stored as a reduced fraction of Laurent polynomials.
///
/// Canonical form: numerator and denominator share no nontrivial common
/// factor, and the denominator is monic with lowest exponent 0. Equality is
/// therefore structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl QScalar {
    /// Canonicalizes `num / den`.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return Self { num, den };
        }
        let (ln, n) = num.to_dense();
        let (ld, d) = den.to_dense();
        let (n, d) = if d.len() == 1 {
            (n, d)
        } else {
            let g = dense::gcd(&n, &d);
            if g.len() > 1 {
                (dense::divrem(&n, &g).0, dense::divrem(&d, &g).0)
            } else {
                (n, d)
            }
        };
        let lc = d.last().unwrap().clone();
        let n: Vec<BigRational> = n.iter().map(|c| c / &lc).collect();
        let d: Vec<BigRational> = d.iter().map(|c| c / &lc).collect();
        Self {
            num: LaurentPoly::from_dense(ln - ld, &n),
            den: LaurentPoly::from_dense(0, &d),
        }
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_laurent(LaurentPoly::constant(r))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn q_pow(k: i32) -> Self {
        Self::from_laurent(LaurentPoly::q_pow(k))
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    /// True when the denominator is one, i.e. the value is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// Re-canonicalizes; a no-op on values built through the public API.
    pub fn normalized(&self) -> Self {
        Self::canonical(self.num.clone(), self.den.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(self.div_ref(rhs))
    }

    pub fn inverse(&self) -> Result<Self, ScalarError> {
        Self::one().checked_div(self)
    }

    /// The substitution `q -> q^-1`.
    pub fn mirror(&self) -> Self {
        Self::canonical(self.num.mirror(), self.den.mirror())
    }

    /// Exact value at a rational point `r`.
    pub fn eval_at(&self, r: &BigRational) -> Result<BigRational, ScalarError> {
        if r.is_zero() {
            return Err(ScalarError::ZeroEvaluationPoint);
        }
        let d = self.den.eval(r).expect("nonzero point");
        if d.is_zero() {
            return Err(ScalarError::Pole(super::laurent::render_rational(r)));
        }
        Ok(self.num.eval(r).expect("nonzero point") / d)
    }

    /// Integer power, negative exponents invert.
    pub fn pow(&self, e: i32) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return Self::from_laurent(&self.num + &rhs.num);
            }
            return Self::canonical(&self.num + &rhs.num, self.den.clone());
        }
        // a/b + c/d over lcm(b, d); only gcd(num, gcd(b, d)) can cancel
        let Some(g) = common_factor(&self.den, &rhs.den) else {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            if num.is_zero() {
                return Self::zero();
            }
            return Self {
                num,
                den: &self.den * &rhs.den,
            };
        };
        let b = exact_div(&self.den, &g);
        let d = exact_div(&rhs.den, &g);
        let num = &(&self.num * &d) + &(&rhs.num * &b);
        if num.is_zero() {
            return Self::zero();
        }
        let den = &b * &rhs.den;
        match common_factor(&num, &LaurentPoly::from_dense(0, &g)) {
            Some(h) => Self {
                num: exact_div(&num, &h),
                den: exact_div(&den, &h),
            },
            None => Self { num, den },
        }
    }

    fn neg_ref(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_laurent(&self.num * &rhs.num);
        }
        // both sides are reduced, so cross-cancelling leaves a reduced product
        let cancel = |n: &LaurentPoly, d: &LaurentPoly| match common_factor(n, d) {
            Some(g) => (exact_div(n, &g), exact_div(d, &g)),
            None => (n.clone(), d.clone()),
        };
        let (n1, d2) = cancel(&self.num, &rhs.den);
        let (n2, d1) = cancel(&rhs.num, &self.den);
        Self {
            num: &n1 * &n2,
            den: &d1 * &d2,
        }
    }

    fn div_ref(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "QScalar division by zero");
        Self::canonical(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

/// Monic gcd of two Laurent polynomials up to powers of q, or `None` when
/// it is a unit.
fn common_factor(a: &LaurentPoly, b: &LaurentPoly) -> Option<Vec<BigRational>> {
    if a.terms().len() < 2 || b.terms().len() < 2 {
        return None;
    }
    let g = dense::gcd(&a.to_dense().1, &b.to_dense().1);
    (g.len() > 1).then_some(g)
}

/// `p / g` for a factor `g` of `p` with nonzero constant term.
fn exact_div(p: &LaurentPoly, g: &[BigRational]) -> LaurentPoly {
    let (low, dense) = p.to_dense();
    let (q, r) = dense::divrem(&dense, g);
    debug_assert!(r.is_empty(), "inexact division");
    LaurentPoly::from_dense(low, &q)
}

impl Zero for QScalar {
    fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for QScalar {
    fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&QScalar> for &QScalar {
            type Output = QScalar;
            fn $method(self, rhs: &QScalar) -> QScalar {
                self.$inner(rhs)
            }
        }
        impl $tr<&QScalar> for QScalar {
            type Output = QScalar;
            fn $method(self, rhs: &QScalar) -> QScalar {
                (&self).$inner(rhs)
            }
        }
        impl $tr<QScalar> for QScalar {
            type Output = QScalar;
            fn $method(self, rhs: QScalar) -> QScalar {
                (&self).$inner(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, div_ref);

impl Sub<&QScalar> for &QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        self.add_ref(&rhs.neg_ref())
    }
}

impl Sub<&QScalar> for QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        &self - rhs
    }
}

impl Sub<QScalar> for QScalar {
    type Output = QScalar;
    fn sub(self, rhs: QScalar) -> QScalar {
        &self - &rhs
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        self.neg_ref()
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        self.neg_ref()
    }
}

impl AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, rhs: &QScalar) {
        *self = self.add_ref(rhs);
    }
}

impl SubAssign<&QScalar> for QScalar {
    fn sub_assign(&mut self, rhs: &QScalar) {
        *self = &*self - rhs;
    }
}

impl fmt::Display for QScalar {
    /// `(num)` for Laurent polynomials, `(num)/(den)` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "({})", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> QScalar {
        QScalar::q()
    }

    fn qi() -> QScalar {
        QScalar::q_pow(-1)
    }

    #[test]
    fn add_q_and_inverse() {
        assert_eq!((q() + qi()).to_string(), "(q+q^-1)");
    }

    #[test]
    fn difference_times_sum() {
        let p = (q() - qi()) * (q() + qi());
        assert_eq!(p, QScalar::q_pow(2) - QScalar::q_pow(-2));
    }

    #[test]
    fn division_cancels_common_factor() {
        let num = QScalar::q_pow(2) - QScalar::q_pow(-2);
        let den = q() - qi();
        let r = num.checked_div(&den).unwrap();
        assert_eq!(r, q() + qi());
        assert!(r.is_laurent());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(q().checked_div(&QScalar::zero()), Err(ScalarError::DivisionByZero));
        assert!(QScalar::new(LaurentPoly::one(), LaurentPoly::zero()).is_err());
    }

    #[test]
    fn canonical_denominator_is_monic_with_zero_low_exponent() {
        // 1 / (2q^3 - 2q^2) = (1/2 q^-2) / (q - 1)
        let den = QScalar::from_int(2) * QScalar::q_pow(3) - QScalar::from_int(2) * QScalar::q_pow(2);
        let x = QScalar::one() / den;
        assert_eq!(x.denominator().low_exp(), Some(0));
        assert!(x.denominator().leading_coeff().unwrap().is_one());
        assert_eq!(x.to_string(), "(1/2*q^-2)/(q-1)");
        assert_eq!(x.normalized(), x);
    }

    #[test]
    fn eval_points() {
        let two = BigRational::from_integer(2.into());
        assert_eq!((q() + qi()).eval_at(&two).unwrap(), BigRational::new(5.into(), 2.into()));
        let pole = QScalar::one() / (q() - QScalar::one());
        assert!(matches!(pole.eval_at(&BigRational::one()), Err(ScalarError::Pole(_))));
        assert_eq!(q().eval_at(&BigRational::zero()), Err(ScalarError::ZeroEvaluationPoint));
    }

    #[test]
    fn mirror_is_an_involution() {
        let x = (q() + QScalar::from_int(3)) / (QScalar::q_pow(2) - QScalar::from_int(5));
        assert_eq!(x.mirror().mirror(), x);
        assert_eq!(QScalar::q_pow(3).mirror(), QScalar::q_pow(-3));
    }
}
