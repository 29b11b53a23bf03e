//! Finite-dimensional U_q(sl(2)) modules with exact action matrices, and the
//! coproduct action on tensor powers of the spin-1 module V.
//!
//! Conventions (fixed here and nowhere else):
//!
//! * `K = q^H`; on the spin-j module with basis `e_m`, `m = j, j-1, ..., -j`:
//!   `X e_m = [j-m] e_{m+1}`, `Y e_m = [j+m] e_{m-1}`, `K e_m = q^{2m} e_m`.
//! * Coproduct `Δ(X) = X⊗1 + K⊗X`, `Δ(Y) = Y⊗K⁻¹ + 1⊗Y`, `Δ(K) = K⊗K`.
//! * The letters of V are `u = e_1`, `v = -[2] e_0`, `w = -e_{-1}`. With this
//!   scaling the q = 1 action is the adjoint action of sl(2) on the basis
//!   with `[v,u] = 2u`, `[v,w] = -2w`, `[u,w] = v`.

use std::collections::BTreeMap;
use std::fmt;

use crate::linalg::{axpy, Matrix};
use crate::scalar::{Deformation, Field};

/// Generators of U_q(sl(2)) acting on modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    X,
    Y,
    K,
    KInv,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::X, Generator::Y, Generator::K, Generator::KInv];
}

/// A letter of V: 0 = u, 1 = v, 2 = w.
pub type Letter = u8;

pub const U: Letter = 0;
pub const V: Letter = 1;
pub const W: Letter = 2;
pub const LETTERS: [Letter; 3] = [U, V, W];

pub fn letter_name(l: Letter) -> char {
    ['u', 'v', 'w'][l as usize]
}

/// Weight (half the H-eigenvalue) of a letter.
pub fn letter_weight(l: Letter) -> i32 {
    1 - l as i32
}

/// A tensor monomial `x_1 ⊗ ... ⊗ x_n`, encoded base 3 with the first letter
/// most significant. The derived order (length first, then lexicographic
/// with u < v < w) is the monomial order used throughout.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    len: u8,
    code: u64,
}

impl Word {
    pub const MAX_LEN: usize = 40;

    pub fn empty() -> Self {
        Self { len: 0, code: 0 }
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        assert!(letters.len() <= Self::MAX_LEN, "word too long");
        let code = letters.iter().fold(0u64, |acc, &l| {
            debug_assert!(l < 3);
            acc * 3 + l as u64
        });
        Self {
            len: letters.len() as u8,
            code,
        }
    }

    pub fn single(l: Letter) -> Self {
        Self::from_letters(&[l])
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Position in the lexicographic enumeration of words of this length.
    pub fn index(&self) -> usize {
        self.code as usize
    }

    pub fn from_index(len: usize, index: usize) -> Self {
        Self {
            len: len as u8,
            code: index as u64,
        }
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut out = vec![0; self.len as usize];
        let mut c = self.code;
        for slot in out.iter_mut().rev() {
            *slot = (c % 3) as Letter;
            c /= 3;
        }
        out
    }

    pub fn weight(&self) -> i32 {
        self.letters().iter().map(|&l| letter_weight(l)).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        assert!(self.len() + other.len() <= Self::MAX_LEN, "word too long");
        Word {
            len: self.len + other.len,
            code: self.code * 3u64.pow(other.len as u32) + other.code,
        }
    }

    /// All words of length `n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Word> {
        (0..3usize.pow(n as u32)).map(move |i| Word::from_index(n, i))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len == 0 {
            return write!(f, "1");
        }
        let s: String = self.letters().into_iter().map(letter_name).collect();
        write!(f, "{s}")
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A vector in the tensor algebra T(V): sparse coefficients on words.
/// Words of different lengths may coexist (filtered pieces T_{≤N}).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Tensor<F> {
    terms: BTreeMap<Word, F>,
}

impl<F: Field> Tensor<F> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn unit() -> Self {
        Self::monomial(Word::empty(), F::one())
    }

    pub fn monomial(w: Word, c: F) -> Self {
        let mut t = Self::zero();
        if !c.is_zero() {
            t.terms.insert(w, c);
        }
        t
    }

    pub fn letter(l: Letter) -> Self {
        Self::monomial(Word::single(l), F::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, F)>>(it: I) -> Self {
        let mut t = Self::zero();
        for (w, c) in it {
            t.add_term(w, c);
        }
        t
    }

    pub fn from_map(terms: BTreeMap<Word, F>) -> Self {
        let mut t = Self { terms };
        t.terms.retain(|_, c| !c.is_zero());
        t
    }

    pub fn terms(&self) -> &BTreeMap<Word, F> {
        &self.terms
    }

    pub fn into_map(self) -> BTreeMap<Word, F> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> F {
        self.terms.get(w).cloned().unwrap_or_else(F::zero)
    }

    pub fn add_term(&mut self, w: Word, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(e) => {
                *e += &c;
                if e.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add_scaled(&mut self, c: &F, other: &Tensor<F>) {
        axpy(&mut self.terms, c, &other.terms);
    }

    pub fn plus(&self, other: &Tensor<F>) -> Tensor<F> {
        let mut t = self.clone();
        t.add_scaled(&F::one(), other);
        t
    }

    pub fn minus(&self, other: &Tensor<F>) -> Tensor<F> {
        let mut t = self.clone();
        t.add_scaled(&-F::one(), other);
        t
    }

    pub fn scaled(&self, c: &F) -> Tensor<F> {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(w, x)| (*w, x.clone() * c))
                .collect(),
        }
    }

    /// Tensor (concatenation) product.
    pub fn concat(&self, other: &Tensor<F>) -> Tensor<F> {
        let mut out = Tensor::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.concat(b), x.clone() * y);
            }
        }
        out
    }

    /// Largest word length present.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    /// Component of exact length `n`.
    pub fn homogeneous_part(&self, n: usize) -> Tensor<F> {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == n)
                .map(|(w, c)| (*w, c.clone()))
                .collect(),
        }
    }

    /// Coefficient of the first word (in monomial order) that is present.
    pub fn first_coeff(&self) -> Option<(&Word, &F)> {
        self.terms.iter().next()
    }

    /// Divides by the first nonzero coefficient; returns the divisor.
    pub fn normalize_first(&mut self) -> Option<F> {
        let c = self.first_coeff()?.1.clone();
        let inv = F::one() / &c;
        for x in self.terms.values_mut() {
            *x = x.clone() * &inv;
        }
        Some(c)
    }
}

impl<F: Field> fmt::Display for Tensor<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("{c}*{w}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: Field> fmt::Debug for Tensor<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Spin-j module in the basis `e_j, e_{j-1}, ..., e_{-j}` (index `i` carries
/// `m = j - i`).
#[derive(Clone, Debug)]
pub struct SpinModule<F: Field> {
    spin: u32,
    x: Matrix<F>,
    y: Matrix<F>,
    k: Matrix<F>,
    k_inv: Matrix<F>,
}

impl<F: Field> SpinModule<F> {
    pub fn new(j: u32, def: &Deformation<F>) -> Self {
        let dim = 2 * j as usize + 1;
        let mut x = Matrix::zeros(dim, dim);
        let mut y = Matrix::zeros(dim, dim);
        let mut k = Matrix::zeros(dim, dim);
        let mut k_inv = Matrix::zeros(dim, dim);
        let j = j as i32;
        for i in 0..dim {
            let m = j - i as i32;
            // columns are inputs, rows outputs
            if m < j {
                x[(i - 1, i)] = def.qint(j - m);
            }
            if m > -j {
                y[(i + 1, i)] = def.qint(j + m);
            }
            k[(i, i)] = def.q_pow(2 * m);
            k_inv[(i, i)] = def.q_pow(-2 * m);
        }
        Self {
            spin: j as u32,
            x,
            y,
            k,
            k_inv,
        }
    }

    pub fn spin(&self) -> u32 {
        self.spin
    }

    pub fn dim(&self) -> usize {
        2 * self.spin as usize + 1
    }

    pub fn matrix(&self, g: Generator) -> &Matrix<F> {
        match g {
            Generator::X => &self.x,
            Generator::Y => &self.y,
            Generator::K => &self.k,
            Generator::KInv => &self.k_inv,
        }
    }

    /// Residual matrices of the three defining relations.
    pub fn relation_residuals(&self, def: &Deformation<F>) -> RelationReport<F> {
        let q2 = def.q_pow(2);
        let qm2 = def.q_pow(-2);
        let kxk = self.k.mul(&self.x).mul(&self.k_inv).sub(&self.x.scale(&q2));
        let kyk = self.k.mul(&self.y).mul(&self.k_inv).sub(&self.y.scale(&qm2));
        let comm = self.x.mul(&self.y).sub(&self.y.mul(&self.x));
        let qdiff = def.q().clone() - &def.q_pow(-1);
        let kk = self.k.sub(&self.k_inv);
        // (K - K^-1)/(q - q^-1) is computed entrywise as a q-integer so the
        // check stays meaningful at q = 1
        let mut cartan = Matrix::zeros(self.dim(), self.dim());
        for i in 0..self.dim() {
            let m = self.spin as i32 - i as i32;
            cartan[(i, i)] = def.qint(2 * m);
        }
        debug_assert!(qdiff.is_zero() || kk.sub(&cartan.scale(&qdiff)).is_zero());
        RelationReport {
            spin: self.spin,
            k_x: kxk,
            k_y: kyk,
            x_y: comm.sub(&cartan),
        }
    }
}

/// Residuals of `K X K⁻¹ - q² X`, `K Y K⁻¹ - q⁻² Y`,
/// `XY - YX - (K - K⁻¹)/(q - q⁻¹)`.
#[derive(Clone, Debug)]
pub struct RelationReport<F: Field> {
    pub spin: u32,
    pub k_x: Matrix<F>,
    pub k_y: Matrix<F>,
    pub x_y: Matrix<F>,
}

impl<F: Field> RelationReport<F> {
    pub fn passed(&self) -> bool {
        self.k_x.is_zero() && self.k_y.is_zero() && self.x_y.is_zero()
    }

    /// Nonzero residual entries as `(relation, row, col, value)`.
    pub fn nonzero_entries(&self) -> Vec<(&'static str, usize, usize, F)> {
        let mut out = Vec::new();
        for (name, m) in [("KXK^-1", &self.k_x), ("KYK^-1", &self.k_y), ("[X,Y]", &self.x_y)] {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    if !m[(i, j)].is_zero() {
                        out.push((name, i, j, m[(i, j)].clone()));
                    }
                }
            }
        }
        out
    }
}

pub fn spin_module<F: Field>(j: u32, def: &Deformation<F>) -> SpinModule<F> {
    SpinModule::new(j, def)
}

pub fn verify_module_relations<F: Field>(j: u32, def: &Deformation<F>) -> RelationReport<F> {
    spin_module(j, def).relation_residuals(def)
}

/// The spin-1 module V with letters u, v, w, and the coproduct action of
/// U_q(sl(2)) on every tensor power of V.
#[derive(Clone, Debug)]
pub struct Triplet<F: Field> {
    def: Deformation<F>,
    /// `table[g][l]` = image of letter `l` under generator `g`.
    table: [[Vec<(Letter, F)>; 3]; 4],
    /// `q^k` for k in -2*MAX_LEN..=2*MAX_LEN.
    q_powers: Vec<F>,
}

impl<F: Field> Triplet<F> {
    pub fn new(def: &Deformation<F>) -> Self {
        let spin1 = SpinModule::new(1, def);
        // letter l = scale[l] * e-basis vector l
        let scale = [F::one(), -def.qint(2), -F::one()];
        let table = Generator::ALL.map(|g| {
            let m = spin1.matrix(g);
            [U, V, W].map(|l| {
                let mut out = Vec::new();
                for r in 0..3 {
                    let c = m[(r, l as usize)].clone();
                    if !c.is_zero() {
                        // g(scale_l e_l) = scale_l c e_r = (scale_l c / scale_r) letter_r
                        out.push((r as Letter, c * &scale[l as usize] / &scale[r]));
                    }
                }
                out
            })
        });
        let max = 2 * Word::MAX_LEN as i32;
        let q_powers = (-max..=max).map(|k| def.q_pow(k)).collect();
        Self {
            def: def.clone(),
            table,
            q_powers,
        }
    }

    pub fn deformation(&self) -> &Deformation<F> {
        &self.def
    }

    fn qp(&self, k: i32) -> &F {
        &self.q_powers[(k + 2 * Word::MAX_LEN as i32) as usize]
    }

    /// Image of a single letter.
    pub fn act_letter(&self, g: Generator, l: Letter) -> &[(Letter, F)] {
        &self.table[g as usize][l as usize]
    }

    /// The 3×3 matrix of `g` on V in the basis (u, v, w).
    pub fn matrix(&self, g: Generator) -> Matrix<F> {
        let mut m = Matrix::zeros(3, 3);
        for l in LETTERS {
            for (r, c) in self.act_letter(g, l) {
                m[(*r as usize, l as usize)] = c.clone();
            }
        }
        m
    }

    /// Action of `g` on a single word via the iterated coproduct.
    pub fn act_word(&self, g: Generator, w: &Word) -> Tensor<F> {
        let letters = w.letters();
        match g {
            Generator::K | Generator::KInv => {
                let s = if g == Generator::K { 2 } else { -2 };
                Tensor::monomial(*w, self.qp(s * w.weight()).clone())
            }
            Generator::X => {
                let mut out = Tensor::zero();
                let mut prefix_weight = 0;
                for i in 0..letters.len() {
                    let factor = self.qp(2 * prefix_weight).clone();
                    for (l, c) in self.act_letter(Generator::X, letters[i]) {
                        let mut nw = letters.clone();
                        nw[i] = *l;
                        out.add_term(Word::from_letters(&nw), c.clone() * &factor);
                    }
                    prefix_weight += letter_weight(letters[i]);
                }
                out
            }
            Generator::Y => {
                let mut out = Tensor::zero();
                let mut suffix_weight = 0;
                for i in (0..letters.len()).rev() {
                    let factor = self.qp(-2 * suffix_weight).clone();
                    for (l, c) in self.act_letter(Generator::Y, letters[i]) {
                        let mut nw = letters.clone();
                        nw[i] = *l;
                        out.add_term(Word::from_letters(&nw), c.clone() * &factor);
                    }
                    suffix_weight += letter_weight(letters[i]);
                }
                out
            }
        }
    }

    /// Action on an arbitrary tensor; the empty word (unit) is annihilated
    /// by X and Y and fixed by K.
    pub fn act(&self, g: Generator, t: &Tensor<F>) -> Tensor<F> {
        let mut out = Tensor::zero();
        for (w, c) in t.terms() {
            out.add_scaled(c, &self.act_word(g, w));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qint, QScalar};
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    fn sym() -> Deformation<QScalar> {
        Deformation::symbolic()
    }

    #[test]
    fn word_encoding_round_trip() {
        let w = Word::from_letters(&[W, U, V]);
        assert_eq!(w.letters(), vec![W, U, V]);
        assert_eq!(w.to_string(), "wuv");
        assert_eq!(w.weight(), 0);
        let c = Word::single(U).concat(&w);
        assert_eq!(c.to_string(), "uwuv");
        assert!(Word::from_letters(&[U, W]) < Word::from_letters(&[V, V]));
        assert!(Word::from_letters(&[W, W]) < Word::from_letters(&[U, U, U]));
    }

    #[test]
    fn spin_one_k_on_highest_vector() {
        let d = sym();
        let m = spin_module(1, &d);
        assert_eq!(m.matrix(Generator::K)[(0, 0)], QScalar::q_pow(2));
    }

    #[test]
    fn commutator_on_weight_zero_vector_vanishes() {
        let d = sym();
        let m = spin_module(1, &d);
        let c = m.matrix(Generator::X).mul(m.matrix(Generator::Y)).sub(&m.matrix(Generator::Y).mul(m.matrix(Generator::X)));
        assert!(c[(1, 1)].is_zero());
    }

    #[test]
    fn spin_two_commutator_on_e1() {
        // (XY - YX) e_1 = ([2][2] - [1][3]) e_1 = [2] e_1
        let d = sym();
        let m = spin_module(2, &d);
        let c = m.matrix(Generator::X).mul(m.matrix(Generator::Y)).sub(&m.matrix(Generator::Y).mul(m.matrix(Generator::X)));
        assert_eq!(c[(1, 1)], qint(2));
    }

    #[test]
    fn module_relations_hold() {
        let d = sym();
        for j in 0..=4 {
            let rep = verify_module_relations(j, &d);
            assert!(rep.passed(), "spin {j}: {:?}", rep.nonzero_entries());
        }
        let m0 = spin_module(0, &d);
        assert!(m0.matrix(Generator::X).is_zero());
        assert!(m0.matrix(Generator::K)[(0, 0)].is_one());
    }

    #[test]
    fn triplet_is_adjoint_at_q_one() {
        let t = Triplet::new(&Deformation::classical());
        let r = |n: i64| BigRational::from_integer(n.into());
        let x = t.matrix(Generator::X);
        let y = t.matrix(Generator::Y);
        // X v = -2u, X w = v, Y u = -v, Y v = 2w
        assert_eq!(x[(0, 1)], r(-2));
        assert_eq!(x[(1, 2)], r(1));
        assert_eq!(y[(1, 0)], r(-1));
        assert_eq!(y[(2, 1)], r(2));
    }

    #[test]
    fn tensor_action_examples() {
        let d = sym();
        let t = Triplet::new(&d);
        let uu = Tensor::monomial(Word::from_letters(&[U, U]), QScalar::one());
        assert_eq!(t.act(Generator::K, &uu), uu.scaled(&QScalar::q_pow(4)));
        assert!(t.act(Generator::X, &uu).is_zero());
        let unit = Tensor::<QScalar>::unit();
        assert!(t.act(Generator::X, &unit).is_zero());
        assert!(t.act(Generator::Y, &unit).is_zero());
        assert_eq!(t.act(Generator::K, &unit), unit);
    }

    #[test]
    fn x_on_w_tensor_v() {
        // Δ(X)(w⊗v) = Xw⊗v + Kw⊗Xv = v⊗v - [2] q^-2 w⊗u
        let d = sym();
        let t = Triplet::new(&d);
        let wv = Tensor::monomial(Word::from_letters(&[W, V]), QScalar::one());
        let got = t.act(Generator::X, &wv);
        let expected = Tensor::from_terms([
            (Word::from_letters(&[V, V]), QScalar::one()),
            (Word::from_letters(&[W, U]), -(qint(2) * QScalar::q_pow(-2))),
        ]);
        assert_eq!(got, expected);
    }

    #[test]
    fn coproduct_respects_k_x_relation() {
        let d = sym();
        let t = Triplet::new(&d);
        for n in 0..=4 {
            for w in Word::all(n) {
                let m = Tensor::monomial(w, QScalar::one());
                let lhs = t.act(Generator::K, &t.act(Generator::X, &m));
                let rhs = t.act(Generator::X, &t.act(Generator::K, &m)).scaled(&QScalar::q_pow(2));
                assert_eq!(lhs, rhs);
                assert_eq!(t.act(Generator::K, &m), m.scaled(&QScalar::q_pow(2 * w.weight())));
            }
        }
    }

    #[test]
    fn classical_commutator_is_weight_operator() {
        let d = Deformation::classical();
        let t = Triplet::new(&d);
        for n in 0..=3 {
            for w in Word::all(n) {
                let m = Tensor::monomial(w, BigRational::one());
                let xy = t.act(Generator::X, &t.act(Generator::Y, &m));
                let yx = t.act(Generator::Y, &t.act(Generator::X, &m));
                let h = m.scaled(&BigRational::from_integer((2 * w.weight()).into()));
                assert_eq!(xy.minus(&yx), h);
            }
        }
        assert!(BigRational::zero().is_zero());
    }
}
