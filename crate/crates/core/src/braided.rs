//! The braided Lie algebra sl(2)_q: the covariant bracket V⊗V → V, the
//! q-adjoint operators, the spin-0 identity and the enveloping constant.

use std::sync::Arc;

use num_rational::BigRational;

use crate::algebra::{Algebra, AlgebraElement};
use crate::clebsch::Clebsch;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rep::{letter_name, Generator, Letter, Tensor, Word, LETTERS, U, V, W};
use crate::scalar::{Deformation, Field, QScalar};

/// Raw bracket: projection onto the spin-1 summand of V⊗V followed by the
/// isomorphism with V that matches Y-strings. Entry `[x][y]` holds the
/// (u, v, w) coordinates of `[x, y]`.
fn raw_bracket<F: Field>(clebsch: &Clebsch<F>) -> Result<[[Vec<F>; 3]; 3]> {
    let d = clebsch.isotypic_decomposition(2)?;
    let v1_index = d
        .components
        .iter()
        .position(|c| c.spin == 1)
        .ok_or(Error::NoSuchComponent {
            arity: 2,
            spin: 1,
            occurrence: 0,
        })?;
    let chain = spin1_chain_images(clebsch)?;
    let mut table: [[Vec<F>; 3]; 3] = Default::default();
    for x in LETTERS {
        for y in LETTERS {
            let t = Tensor::monomial(Word::from_letters(&[x, y]), F::one());
            let coords = &d.split(&t)?[v1_index];
            let mut out = vec![F::zero(); 3];
            for (c, img) in coords.iter().zip(&chain) {
                for (o, e) in out.iter_mut().zip(img) {
                    *o += &(c.clone() * e);
                }
            }
            table[x as usize][y as usize] = out;
        }
    }
    Ok(table)
}

/// Images in V of the spin-1 basis `b_0, b_1, b_2` of V⊗V under the
/// Y-compatible isomorphism sending `b_0` to u.
fn spin1_chain_images<F: Field>(clebsch: &Clebsch<F>) -> Result<Vec<Vec<F>>> {
    let d = clebsch.isotypic_decomposition(2)?;
    let v1 = d.component(1, 0)?;
    let mut cur = Tensor::letter(U);
    let mut out = Vec::new();
    for k in 0..3 {
        if k > 0 {
            cur = clebsch.triplet().act(Generator::Y, &cur).scaled(&(F::one() / &v1.y_scale[k - 1]));
        }
        out.push(LETTERS.iter().map(|&l| cur.coeff(&Word::single(l))).collect());
    }
    Ok(out)
}

/// Coefficients of the invariant element of V ⊗ V' in the basis
/// (u⊗W', v⊗V', w⊗U'), normalized so the middle one is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spin0Coefficients<F> {
    pub alpha: F,
    pub beta: F,
    pub gamma: F,
}

impl<F: Field> Spin0Coefficients<F> {
    pub fn as_array(&self) -> [F; 3] {
        [self.alpha.clone(), self.beta.clone(), self.gamma.clone()]
    }
}

/// How a candidate coefficient triple relates to the computed one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConventionMatch {
    pub direct: bool,
    pub mirrored: bool,
}

/// The literal triple `(q³+q, 1, q+q⁻¹)`.
pub fn literal_identity6_coefficients() -> Spin0Coefficients<QScalar> {
    Spin0Coefficients {
        alpha: QScalar::q_pow(3) + QScalar::q(),
        beta: QScalar::from_int(1),
        gamma: QScalar::q() + QScalar::q_pow(-1),
    }
}

/// Compares a computed symbolic triple with a literal one directly and
/// under `q ↔ q⁻¹`.
pub fn compare_conventions(computed: &Spin0Coefficients<QScalar>, literal: &Spin0Coefficients<QScalar>) -> ConventionMatch {
    let mirror = |s: &Spin0Coefficients<QScalar>| Spin0Coefficients {
        alpha: s.alpha.mirror(),
        beta: s.beta.mirror(),
        gamma: s.gamma.mirror(),
    };
    ConventionMatch {
        direct: computed == literal,
        mirrored: &mirror(computed) == literal,
    }
}

/// Result of evaluating `α u·W + β v·V + γ w·U` on u, v, w.
#[derive(Clone, Debug)]
pub struct IdentityReport<F: Field> {
    pub coefficients: Spin0Coefficients<F>,
    /// `(z, Σ(z))` for z = u, v, w.
    pub residuals: Vec<(char, AlgebraElement<F>)>,
}

impl<F: Field> IdentityReport<F> {
    pub fn passed(&self) -> bool {
        self.residuals.iter().all(|(_, r)| r.is_zero())
    }
}

/// The scalar by which the q-adjoint operators satisfy the spin-1 relation.
#[derive(Clone, Debug)]
pub struct EnvelopingConstant<F> {
    pub hbar_adj: F,
}

impl<F: Field> EnvelopingConstant<F> {
    /// Rescaling λ of the operators that realizes the relation with a
    /// prescribed ħ instead.
    pub fn rescaling_for(&self, hbar: &F) -> F {
        hbar.clone() / &self.hbar_adj
    }
}

/// sl(2)_q with a fixed bracket normalization.
pub struct Braided<F: Field> {
    clebsch: Arc<Clebsch<F>>,
    /// Overall factor applied to the raw bracket.
    normalization: F,
    table: [[Vec<F>; 3]; 3],
}

impl<F: Field> Braided<F> {
    /// Bracket normalized so that its q = 1 limit is the classical table
    /// `[v,u] = 2u, [v,w] = -2w, [u,w] = v`.
    pub fn new(clebsch: Arc<Clebsch<F>>) -> Result<Self> {
        Self::with_scale(clebsch, F::one())
    }

    /// The classical normalization multiplied by `scale`.
    pub fn with_scale(clebsch: Arc<Clebsch<F>>, scale: F) -> Result<Self> {
        let mu = F::from_rational(&classical_normalization()?);
        let normalization = mu * &scale;
        let raw = raw_bracket(&clebsch)?;
        let table = raw.map(|row| row.map(|v| v.into_iter().map(|c| c * &normalization).collect()));
        Ok(Self {
            clebsch,
            normalization,
            table,
        })
    }

    pub fn clebsch(&self) -> &Arc<Clebsch<F>> {
        &self.clebsch
    }

    pub fn deformation(&self) -> &Deformation<F> {
        self.clebsch.deformation()
    }

    pub fn normalization(&self) -> &F {
        &self.normalization
    }

    /// Coordinates of `[x, y]_q` in (u, v, w).
    pub fn bracket(&self, x: Letter, y: Letter) -> &[F] {
        &self.table[x as usize][y as usize]
    }

    /// Bracket of arbitrary vectors given in (u, v, w) coordinates.
    pub fn bracket_vectors(&self, x: &[F], y: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); 3];
        for a in LETTERS {
            for b in LETTERS {
                let c = x[a as usize].clone() * &y[b as usize];
                if c.is_zero() {
                    continue;
                }
                for (o, e) in out.iter_mut().zip(self.bracket(a, b)) {
                    *o += &(c.clone() * e);
                }
            }
        }
        out
    }

    /// The 3×9 matrix of the bracket, columns indexed by `3x + y`.
    pub fn matrix(&self) -> Matrix<F> {
        let mut m = Matrix::zeros(3, 9);
        for x in LETTERS {
            for y in LETTERS {
                for (r, c) in self.bracket(x, y).iter().enumerate() {
                    m[(r, 3 * x as usize + y as usize)] = c.clone();
                }
            }
        }
        m
    }

    /// `ε` with `[v, u]_q = ε u`; the bracket's scale on the weight-1 line.
    pub fn epsilon(&self) -> F {
        self.bracket(V, U)[0].clone()
    }

    /// Matrix of `z ↦ [x, z]_q` on V (the unit is annihilated separately).
    pub fn adjoint_operator(&self, x: Letter) -> Matrix<F> {
        let mut m = Matrix::zeros(3, 3);
        for z in LETTERS {
            for (r, c) in self.bracket(x, z).iter().enumerate() {
                m[(r, z as usize)] = c.clone();
            }
        }
        m
    }

    /// Whether the bracket intertwines the coproduct action on V⊗V with
    /// the action on V, for X, Y, K.
    pub fn is_morphism(&self) -> bool {
        let b = self.matrix();
        let t = self.clebsch.triplet();
        [Generator::X, Generator::Y, Generator::K].into_iter().all(|g| {
            let mut delta = Matrix::zeros(9, 9);
            for w in Word::all(2) {
                for (img, c) in t.act_word(g, &w).terms() {
                    delta[(img.index(), w.index())] = c.clone();
                }
            }
            b.mul(&delta) == t.matrix(g).mul(&b)
        })
    }

    /// Coefficients of the spin-0 element of V ⊗ V' with β = 1.
    pub fn spin0_coefficients(&self) -> Result<Spin0Coefficients<F>> {
        spin0_coefficients(&self.clebsch)
    }

    /// Applies `α u·W + β v·V + γ w·U` (operators scaled by `lambda`) to
    /// each z ∈ {u, v, w}, multiplying inside `alg`.
    pub fn identity_residuals(
        &self,
        alg: &Algebra<F>,
        coeffs: &Spin0Coefficients<F>,
        lambda: &F,
    ) -> Result<IdentityReport<F>> {
        let mut residuals = Vec::new();
        for z in LETTERS {
            let mut total = AlgebraElement::zero();
            for (coef, left, op) in [(&coeffs.alpha, U, W), (&coeffs.beta, V, V), (&coeffs.gamma, W, U)] {
                let image = self.operator_image(op, z, lambda);
                let p = alg.multiply(&alg.letter(left), &image)?;
                total.add_scaled(coef, &p);
            }
            residuals.push((letter_name(z), total));
        }
        Ok(IdentityReport {
            coefficients: coeffs.clone(),
            residuals,
        })
    }

    fn operator_image(&self, op: Letter, z: Letter, lambda: &F) -> AlgebraElement<F> {
        let coords: Vec<F> = self.bracket(op, z).iter().map(|c| c.clone() * lambda).collect();
        AlgebraElement::from_components([(1, coords)].into_iter().collect())
    }

    /// Evaluates the spin-0 identity with the computed coefficients.
    pub fn verify_identity6(&self, alg: &Algebra<F>) -> Result<IdentityReport<F>> {
        self.identity_residuals(alg, &self.spin0_coefficients()?, &F::one())
    }

    /// Dimension of the space of triples (α, β, γ) for which the operator
    /// combination vanishes on V, inside `alg`.
    pub fn identity_kernel(&self, alg: &Algebra<F>) -> Result<Vec<Vec<F>>> {
        let max = alg.max_degree();
        let mut columns = Vec::new();
        for (left, op) in [(U, W), (V, V), (W, U)] {
            let mut col = Vec::new();
            for z in LETTERS {
                let p = alg.multiply(&alg.letter(left), &self.operator_image(op, z, &F::one()))?;
                col.extend(p.flat(max));
            }
            columns.push(col);
        }
        let rows = columns[0].len();
        let mut m = Matrix::zeros(rows, 3);
        for (j, col) in columns.iter().enumerate() {
            for (i, c) in col.iter().enumerate() {
                m[(i, j)] = c.clone();
            }
        }
        Ok(m.nullspace())
    }

    /// Solves `ρ(b_k) = ħ_adj · ad(e_k)` where ρ is the composition of
    /// q-adjoint operators, b_k the spin-1 basis of V⊗V and e_k its image
    /// in V.
    pub fn enveloping_constant(&self) -> Result<EnvelopingConstant<F>> {
        let d = self.clebsch.isotypic_decomposition(2)?;
        let v1 = d.component(1, 0)?;
        let chain = spin1_chain_images(&self.clebsch)?;
        let ads: Vec<Matrix<F>> = LETTERS.iter().map(|&l| self.adjoint_operator(l)).collect();
        let mut pairs = Vec::new();
        for (b, e) in v1.basis.iter().zip(&chain) {
            let mut lhs = Matrix::zeros(3, 3);
            for (w, c) in b.terms() {
                let l = w.letters();
                lhs = lhs.add(&ads[l[0] as usize].mul(&ads[l[1] as usize]).scale(c));
            }
            let mut rhs = Matrix::zeros(3, 3);
            for (l, c) in LETTERS.iter().zip(e) {
                rhs = rhs.add(&ads[*l as usize].scale(c));
            }
            pairs.push((lhs, rhs));
        }
        let (lhs0, rhs0) = &pairs[0];
        let pos = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .find(|&p| !rhs0[p].is_zero())
            .ok_or_else(|| Error::NoSolution("adjoint image of u vanishes".into()))?;
        let hbar_adj = lhs0[pos].clone() / &rhs0[pos];
        for (lhs, rhs) in &pairs {
            if lhs != &rhs.scale(&hbar_adj) {
                return Err(Error::NoSolution(
                    "spin-1 part of the operator composition is not proportional to the bracket".into(),
                ));
            }
        }
        Ok(EnvelopingConstant { hbar_adj })
    }
}

/// Coefficients of the spin-0 highest-weight vector `uw + a vv + b wu`,
/// rewritten in the basis (u⊗W', v⊗V', w⊗U') with β = 1.
pub fn spin0_coefficients<F: Field>(clebsch: &Clebsch<F>) -> Result<Spin0Coefficients<F>> {
    let d = clebsch.isotypic_decomposition(2)?;
    let v0 = d.component(0, 0)?.highest_weight();
    let c = |a, b| v0.coeff(&Word::from_letters(&[a, b]));
    let beta = c(V, V);
    if beta.is_zero() {
        return Err(Error::NoSolution("spin-0 vector has no v⊗v term".into()));
    }
    Ok(Spin0Coefficients {
        alpha: c(U, W) / &beta,
        beta: F::one(),
        gamma: c(W, U) / &beta,
    })
}

/// The factor μ making the q = 1 bracket equal the classical table; read
/// off `[v, u] = 2u` in a classical computation.
pub fn classical_normalization() -> Result<BigRational> {
    static MU: std::sync::OnceLock<std::result::Result<BigRational, Error>> = std::sync::OnceLock::new();
    MU.get_or_init(|| {
        let cl = Clebsch::with_bound(&Deformation::classical(), 2);
        let raw = raw_bracket(&cl)?;
        let vu = raw[V as usize][U as usize][0].clone();
        if num_traits::Zero::is_zero(&vu) {
            return Err(Error::NoSolution("classical bracket [v,u] vanishes".into()));
        }
        Ok(BigRational::from_integer(2.into()) / vu)
    })
    .clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qint;
    use num_traits::{One, Zero};

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn sym() -> Braided<QScalar> {
        Braided::new(Arc::new(Clebsch::new(&Deformation::symbolic()))).unwrap()
    }

    #[test]
    fn classical_table() {
        let b = Braided::new(Arc::new(Clebsch::new(&Deformation::classical()))).unwrap();
        let e = |x: Letter, y: Letter| b.bracket(x, y).to_vec();
        assert_eq!(e(V, U), vec![rat(2), rat(0), rat(0)]);
        assert_eq!(e(V, W), vec![rat(0), rat(0), rat(-2)]);
        assert_eq!(e(U, W), vec![rat(0), rat(1), rat(0)]);
        assert_eq!(e(U, V), vec![rat(-2), rat(0), rat(0)]);
        for l in LETTERS {
            assert!(e(l, l).iter().all(Zero::is_zero));
        }
        let adv = b.adjoint_operator(V);
        assert_eq!(adv, Matrix::from_rows(vec![vec![rat(2), rat(0), rat(0)], vec![rat(0); 3], vec![rat(0), rat(0), rat(-2)]]));
    }

    #[test]
    fn bracket_is_a_morphism() {
        let b = sym();
        assert!(b.is_morphism());
        assert!(b.bracket(U, U).iter().all(Zero::is_zero));
    }

    #[test]
    fn braided_self_bracket_of_v() {
        // [v,v]_q is a multiple of v that vanishes at q = 1
        let b = sym();
        let vv = b.bracket(V, V);
        assert!(vv[0].is_zero() && vv[2].is_zero());
        assert!(!vv[1].is_zero());
        assert!(vv[1].eval_at(&BigRational::one()).unwrap().is_zero());
    }

    #[test]
    fn spin0_coefficients_and_mirror() {
        let b = sym();
        let s = b.spin0_coefficients().unwrap();
        assert_eq!(s.alpha, qint(2) * &QScalar::q_pow(-2));
        assert!(s.beta.is_one());
        assert_eq!(s.gamma, qint(2));
        let m = compare_conventions(&s, &literal_identity6_coefficients());
        assert_eq!(m, ConventionMatch { direct: false, mirrored: true });
        let one = BigRational::one();
        assert_eq!(s.alpha.eval_at(&one).unwrap(), rat(2));
        assert_eq!(s.gamma.eval_at(&one).unwrap(), rat(2));
    }

    #[test]
    fn enveloping_constant_scales_with_bracket() {
        let cl = Arc::new(Clebsch::new(&Deformation::classical()));
        let e = Braided::new(cl.clone()).unwrap().enveloping_constant().unwrap();
        assert_eq!(e.hbar_adj, rat(-2));
        let e3 = Braided::with_scale(cl, rat(3)).unwrap().enveloping_constant().unwrap();
        assert_eq!(e3.hbar_adj, rat(-6));
        assert_eq!(e.rescaling_for(&rat(1)), BigRational::new((-1).into(), 2.into()));
        assert!(sym().enveloping_constant().is_ok());
    }
}
