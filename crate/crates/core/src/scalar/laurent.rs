//! Laurent polynomials in `q` with rational coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A Laurent polynomial `sum_k c_k q^k`.
///
/// Terms are kept sorted by ascending exponent and no stored coefficient is
/// zero, so the zero polynomial is the empty term list.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i32, BigRational)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: BigRational, exp: i32) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(exp, c)] }
        }
    }

    /// `q^exp` with coefficient one.
    pub fn q_pow(exp: i32) -> Self {
        Self::monomial(BigRational::one(), exp)
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs,
    /// merging repeated exponents and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (i32, BigRational)>>(terms: I) -> Self {
        let mut v: Vec<(i32, BigRational)> = terms.into_iter().collect();
        v.sort_by_key(|(e, _)| *e);
        let mut out: Vec<(i32, BigRational)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self { terms: out }
    }

    pub fn terms(&self) -> &[(i32, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Smallest exponent carrying a nonzero coefficient.
    pub fn low_exp(&self) -> Option<i32> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn high_exp(&self) -> Option<i32> {
        self.terms.last().map(|(e, _)| *e)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.last().map(|(_, c)| c)
    }

    pub fn coeff(&self, exp: i32) -> BigRational {
        self.terms
            .binary_search_by_key(&exp, |(e, _)| *e)
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| BigRational::zero())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// The substitution `q -> q^-1`.
    pub fn mirror(&self) -> Self {
        let mut terms: Vec<_> = self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        terms.reverse();
        Self { terms }
    }

    /// Evaluates at a nonzero rational point. Returns `None` at `r = 0`
    /// when a negative exponent is present.
    pub fn eval(&self, r: &BigRational) -> Option<BigRational> {
        if r.is_zero() {
            return match self.low_exp() {
                None => Some(BigRational::zero()),
                Some(e) if e < 0 => None,
                Some(0) => Some(self.terms[0].1.clone()),
                Some(_) => Some(BigRational::zero()),
            };
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            acc += c * pow_rational(r, *e);
        }
        Some(acc)
    }

    /// Dense coefficient vector of `q^-low * self` (ascending powers).
    pub(crate) fn to_dense(&self) -> (i32, Vec<BigRational>) {
        let Some(low) = self.low_exp() else {
            return (0, Vec::new());
        };
        let high = self.high_exp().unwrap();
        let mut v = vec![BigRational::zero(); (high - low + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - low) as usize] = c.clone();
        }
        (low, v)
    }

    pub(crate) fn from_dense(low: i32, coeffs: &[BigRational]) -> Self {
        Self {
            terms: coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (low + i as i32, c.clone()))
                .collect(),
        }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some((ea, _)), Some((eb, _))) => ea.cmp(eb),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => unreachable!(),
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let (e, c) = &b[j];
                    out.push((*e, if negate_other { -c } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self { terms: out }
    }
}

pub(crate) fn pow_rational(r: &BigRational, e: i32) -> BigRational {
    let base = if e < 0 { r.recip() } else { r.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.merge(rhs, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.merge(rhs, true)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let (la, a) = self.to_dense();
        let (lb, b) = rhs.to_dense();
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        LaurentPoly::from_dense(la + lb, &out)
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending powers, e.g. `q^2+1+q^-2` or `3/2*q-1/2*q^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                write!(f, "-")?;
            } else if idx > 0 {
                write!(f, "+")?;
            }
            let var = match *e {
                0 => String::new(),
                1 => "q".to_string(),
                e => format!("q^{e}"),
            };
            if var.is_empty() {
                write!(f, "{}", render_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{}*{var}", render_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) fn render_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Dense univariate polynomial helpers over Q, ascending coefficients, trimmed.
pub(crate) mod dense {
    use super::*;

    pub fn trim(v: &mut Vec<BigRational>) {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    }

    pub fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        assert!(!b.is_empty(), "polynomial division by zero");
        let mut r: Vec<BigRational> = a.to_vec();
        trim(&mut r);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lb = b.last().unwrap();
        let mut quot = vec![BigRational::zero(); r.len() - b.len() + 1];
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let c = r.last().unwrap() / lb;
            for (i, bc) in b.iter().enumerate() {
                let t = &c * bc;
                r[shift + i] -= t;
            }
            quot[shift] = c;
            r.pop();
            trim(&mut r);
        }
        trim(&mut quot);
        (quot, r)
    }

    fn make_monic(v: &mut [BigRational]) {
        if let Some(lc) = v.last().cloned() {
            for c in v.iter_mut() {
                *c = &*c / &lc;
            }
        }
    }

    /// Monic gcd by the Euclidean algorithm. Both inputs must be trimmed.
    pub fn gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        make_monic(&mut y);
        while !y.is_empty() {
            let (_, mut r) = divrem(&x, &y);
            make_monic(&mut r);
            x = y;
            y = r;
        }
        make_monic(&mut x);
        x
    }
}
