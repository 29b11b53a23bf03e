//! Comparison of the engine at q = 1 with the classical oracle. Words map to
//! commutative monomials; the hyperboloid constant is read off the image of
//! the spin-0 relation.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{Algebra, AlgebraElement};
use crate::braided::Braided;
use crate::clebsch::Clebsch;
use crate::error::{Error, Result};
use crate::oracle::{self, ClassicalPolynomial};
use crate::rep::{Tensor, LETTERS};
use crate::scalar::Deformation;
use crate::tangent::Anchor;

/// One named comparison.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub name: String,
    pub checked: usize,
    pub mismatches: Vec<String>,
}

impl Comparison {
    fn new(name: &str) -> Self {
        Self {
            name: name.into(),
            checked: 0,
            mismatches: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.mismatches.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// The classical picture of an engine built at q = 1.
pub struct ClassicalBridge {
    pub alg: Arc<Algebra<BigRational>>,
    pub braided: Arc<Braided<BigRational>>,
    /// Constant k of `4uw + v² = k`.
    pub k: BigRational,
}

impl ClassicalBridge {
    pub fn new(c: &BigRational, max_degree: usize) -> Result<Self> {
        let cl = Arc::new(Clebsch::new(&Deformation::classical()));
        let alg = Arc::new(Algebra::new(cl.clone(), &BigRational::zero(), c, max_degree)?);
        let braided = Arc::new(Braided::new(cl)?);
        // Φ(v_0) = s·(4uw + v²) and v_0 = c in A, hence k = c/s
        let v0 = alg.relations().spin0.homogeneous_part(2);
        let image = commutative_image(&v0);
        let cas = oracle::casimir();
        let (m, x) = cas.terms().iter().next().expect("nonzero form");
        let s = image.coeff(m) / x;
        if s.is_zero() || image != cas.scale(&s) {
            return Err(Error::NoSolution("spin-0 relation is not the classical quadratic form".into()));
        }
        Ok(Self {
            k: c / &s,
            alg,
            braided,
        })
    }

    pub fn to_classical(&self, a: &AlgebraElement<BigRational>) -> ClassicalPolynomial {
        oracle::classical_normal_form(&commutative_image(&self.alg.to_tensor(a)), &self.k)
    }

    fn basis_up_to(n: usize) -> Vec<AlgebraElement<BigRational>> {
        (0..=n)
            .flat_map(|d| (0..2 * d + 1).map(move |k| AlgebraElement::basis(d, k)))
            .collect()
    }

    pub fn compare_brackets(&self) -> Comparison {
        let mut cmp = Comparison::new("bracket table");
        for x in LETTERS {
            for y in LETTERS {
                let ours = self.braided.bracket(x, y).to_vec();
                let theirs = oracle::classical_bracket(x as usize, y as usize).to_vec();
                cmp.check(ours == theirs, || format!("[{x},{y}]"));
            }
        }
        cmp
    }

    pub fn compare_adjoint_operators(&self) -> Comparison {
        let mut cmp = Comparison::new("q-adjoint operators");
        let fields = oracle::classical_fields();
        for x in LETTERS {
            let m = self.braided.adjoint_operator(x);
            for z in LETTERS {
                let image = fields[x as usize].apply(&ClassicalPolynomial::var(z as usize));
                for r in 0..3 {
                    let mut mono = [0; 3];
                    mono[r] = 1;
                    cmp.check(m[(r, z as usize)] == image.coeff(&mono), || format!("ad {x} on {z}, row {r}"));
                }
            }
        }
        cmp
    }

    /// All basis products with total degree ≤ `max`.
    pub fn compare_products(&self, max: usize) -> Result<Comparison> {
        let mut cmp = Comparison::new("products");
        let basis = Self::basis_up_to(max);
        for a in &basis {
            for b in &basis {
                if a.degree().unwrap_or(0) + b.degree().unwrap_or(0) > max {
                    continue;
                }
                let ours = self.to_classical(&self.alg.multiply(a, b)?);
                let theirs = oracle::classical_normal_form(&self.to_classical(a).mul(&self.to_classical(b)), &self.k);
                cmp.check(ours == theirs, || format!("{a:?} * {b:?}"));
            }
        }
        Ok(cmp)
    }

    /// Anchor on every basis element of degree ≤ `max` against the
    /// Leibniz-extended fields.
    pub fn compare_anchor(&self, anchor: &Anchor<BigRational>, max: usize) -> Result<Comparison> {
        let mut cmp = Comparison::new("anchor actions");
        let fields = oracle::classical_fields();
        for f in Self::basis_up_to(max) {
            for x in LETTERS {
                let ours = self.to_classical(&anchor.apply_letter(x, &f)?);
                let theirs = oracle::classical_normal_form(&fields[x as usize].apply(&self.to_classical(&f)), &self.k);
                cmp.check(ours == theirs, || format!("{x} on {f:?}"));
            }
        }
        Ok(cmp)
    }

    /// λ_n against the classical eigenvalue ratio `V(u^n) / V(u)` on
    /// highest weights.
    pub fn compare_lambdas(&self, anchor: &Anchor<BigRational>) -> Comparison {
        let mut cmp = Comparison::new("anchor scalars");
        let fv = &oracle::classical_fields()[1];
        let u = ClassicalPolynomial::var(0);
        let base = fv.apply(&u).coeff(&[1, 0, 0]);
        for d in anchor.degrees() {
            let un = u.pow(d.n as u32);
            let ratio = fv.apply(&un).coeff(&[d.n as u32, 0, 0]) / &base;
            cmp.check(ratio == d.lambda, || format!("λ_{} = {} vs {ratio}", d.n, d.lambda));
        }
        cmp
    }

    pub fn compare_enveloping_constant(&self) -> Result<Comparison> {
        let mut cmp = Comparison::new("enveloping constant");
        let ours = self.braided.enveloping_constant()?.hbar_adj;
        cmp.check(ours == oracle::classical_enveloping_constant(), || format!("{ours}"));
        Ok(cmp)
    }

    pub fn compare_dimensions(&self) -> Result<Comparison> {
        let mut cmp = Comparison::new("graded dimensions");
        for n in 0..=self.alg.max_degree() {
            let ours = self.alg.graded_dimension(n)?;
            let theirs = oracle::classical_graded_dimension(n as u32);
            cmp.check(ours == theirs, || format!("degree {n}: {ours} vs {theirs}"));
        }
        Ok(cmp)
    }

    /// The spin-0 coefficients at q = 1 against the classical (2, 1, 2).
    pub fn compare_spin0(&self) -> Result<Comparison> {
        let mut cmp = Comparison::new("spin-0 coefficients");
        let s = self.braided.spin0_coefficients()?;
        let two = BigRational::from_integer(2.into());
        cmp.check(s.alpha == two && s.beta.is_one() && s.gamma == two, || {
            format!("({}, {}, {})", s.alpha, s.beta, s.gamma)
        });
        Ok(cmp)
    }
}

/// Commutative image of a tensor.
pub fn commutative_image(t: &Tensor<BigRational>) -> ClassicalPolynomial {
    let words: Vec<(Vec<u8>, &BigRational)> = t.terms().iter().map(|(w, c)| (w.letters(), c)).collect();
    ClassicalPolynomial::from_words(words.iter().map(|(l, c)| (l.as_slice(), *c)))
}

/// Runs every comparison with algebra and anchor up to degree `max`
/// (products and anchor actions need the algebra one degree higher for the
/// anchor's own checks, which are not part of this list).
pub fn full_comparison(c: &BigRational, max: usize) -> Result<Vec<Comparison>> {
    let bridge = ClassicalBridge::new(c, max + 1)?;
    let anchor = Anchor::solve(bridge.alg.clone(), bridge.braided.clone(), max)?;
    Ok(vec![
        bridge.compare_brackets(),
        bridge.compare_adjoint_operators(),
        bridge.compare_spin0()?,
        bridge.compare_enveloping_constant()?,
        bridge.compare_dimensions()?,
        bridge.compare_products(max)?,
        bridge.compare_anchor(&anchor, max)?,
        bridge.compare_lambdas(&anchor),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_limit_agrees() {
        let k = BigRational::from_integer(1.into());
        for cmp in full_comparison(&k, 2).unwrap() {
            assert!(cmp.passed(), "{}: {:?}", cmp.name, cmp.mismatches);
            assert!(cmp.checked > 0);
        }
    }

    #[test]
    fn hyperboloid_constant() {
        let b = ClassicalBridge::new(&BigRational::one(), 2).unwrap();
        assert_eq!(b.k, BigRational::from_integer(2.into()));
    }
}
