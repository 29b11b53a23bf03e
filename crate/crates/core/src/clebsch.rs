//! q-deformed Clebsch–Gordan machinery on tensor powers of V: highest-weight
//! vectors, isotypic decompositions, projectors and the Cartan (highest)
//! components.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::{canonical_row_basis, Matrix};
use crate::memo::Memo;
use crate::rep::{Generator, Tensor, Triplet, Word};
use crate::scalar::{Deformation, Field};

/// One irreducible summand of V^{⊗n}.
#[derive(Clone, Debug)]
pub struct IsotypicComponent<F: Field> {
    pub arity: usize,
    pub spin: u32,
    /// Index among the summands of the same spin.
    pub occurrence: usize,
    /// `basis[k]` has weight `spin - k`; `basis[0]` is the highest-weight
    /// vector and every vector has first nonzero coordinate 1.
    pub basis: Vec<Tensor<F>>,
    /// `Y basis[k] = y_scale[k] * basis[k+1]`.
    pub y_scale: Vec<F>,
}

impl<F: Field> IsotypicComponent<F> {
    /// Builds the component generated by a highest-weight vector by repeated
    /// application of Y.
    pub fn from_highest_weight(
        triplet: &Triplet<F>,
        arity: usize,
        spin: u32,
        occurrence: usize,
        hw: Tensor<F>,
    ) -> Result<Self> {
        let mut basis = vec![hw];
        let mut y_scale = Vec::new();
        loop {
            let mut next = triplet.act(Generator::Y, basis.last().unwrap());
            let Some(scale) = next.normalize_first() else {
                break;
            };
            y_scale.push(scale);
            basis.push(next);
            if basis.len() > 2 * spin as usize + 1 {
                break;
            }
        }
        if basis.len() != 2 * spin as usize + 1 {
            return Err(Error::UnexpectedDimension {
                what: format!("Y-string of a spin {spin} highest-weight vector in V^{{⊗{arity}}}"),
                found: basis.len(),
                expected: 2 * spin as usize + 1,
            });
        }
        Ok(Self {
            arity,
            spin,
            occurrence,
            basis,
            y_scale,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn highest_weight(&self) -> &Tensor<F> {
        &self.basis[0]
    }

    /// Coordinates of a vector known to lie in this component. Weight spaces
    /// of an irreducible are one-dimensional, so each coordinate is read off
    /// the pivot word of the corresponding basis vector.
    pub fn coordinates(&self, t: &Tensor<F>) -> Vec<F> {
        self.basis
            .iter()
            .map(|b| t.coeff(b.first_coeff().expect("nonzero basis vector").0))
            .collect()
    }

    pub fn combine(&self, coords: &[F]) -> Tensor<F> {
        let mut out = Tensor::zero();
        for (c, b) in coords.iter().zip(&self.basis) {
            out.add_scaled(c, b);
        }
        out
    }

    /// Whether `t` lies in the span of this component.
    pub fn contains(&self, t: &Tensor<F>) -> bool {
        self.combine(&self.coordinates(t)) == *t
    }

    /// Matrix of a generator in this component's basis.
    pub fn action_matrix(&self, triplet: &Triplet<F>, g: Generator) -> Matrix<F> {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for (j, b) in self.basis.iter().enumerate() {
            let image = triplet.act(g, b);
            for (i, c) in self.coordinates(&image).into_iter().enumerate() {
                m[(i, j)] = c;
            }
        }
        m
    }

    /// The 3ⁿ × (2k+1) embedding matrix into V^{⊗n} (rows indexed by word).
    pub fn embedding(&self) -> Matrix<F> {
        let mut m = Matrix::zeros(3usize.pow(self.arity as u32), self.dim());
        for (j, b) in self.basis.iter().enumerate() {
            for (w, c) in b.terms() {
                m[(w.index(), j)] = c.clone();
            }
        }
        m
    }
}

/// Complete decomposition of V^{⊗n} into irreducibles.
#[derive(Clone, Debug)]
pub struct Decomposition<F: Field> {
    pub arity: usize,
    /// Sorted by spin, then occurrence.
    pub components: Vec<IsotypicComponent<F>>,
    blocks: OnceLock<std::result::Result<Vec<WeightBlock<F>>, Error>>,
}

/// Change of basis between the words of one weight and the component
/// vectors of that weight.
#[derive(Clone, Debug)]
struct WeightBlock<F: Field> {
    words: Vec<Word>,
    basis: Matrix<F>,
    inverse: Matrix<F>,
    owners: Vec<usize>,
}

impl<F: Field> Decomposition<F> {
    /// `spin -> multiplicity`.
    pub fn multiplicities(&self) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for c in &self.components {
            *m.entry(c.spin).or_insert(0) += 1;
        }
        m
    }

    pub fn component(&self, spin: u32, occurrence: usize) -> Result<&IsotypicComponent<F>> {
        self.components
            .iter()
            .find(|c| c.spin == spin && c.occurrence == occurrence)
            .ok_or(Error::NoSuchComponent {
                arity: self.arity,
                spin,
                occurrence,
            })
    }

    /// Change of basis restricted to weight `m`: rows are the words of that
    /// weight, columns the component basis vectors of that weight (in
    /// component order). Returns the matrix and the component index of each
    /// column.
    fn weight_block(&self, m: i32) -> Result<WeightBlock<F>> {
        let words: Vec<Word> = Word::all(self.arity).filter(|w| w.weight() == m).collect();
        let index: BTreeMap<Word, usize> = words.iter().enumerate().map(|(i, w)| (*w, i)).collect();
        let mut cols = Vec::new();
        for (ci, c) in self.components.iter().enumerate() {
            if (m.unsigned_abs()) <= c.spin {
                let k = (c.spin as i32 - m) as usize;
                cols.push((ci, &c.basis[k]));
            }
        }
        let mut basis = Matrix::zeros(words.len(), cols.len());
        for (j, (_, v)) in cols.iter().enumerate() {
            for (w, c) in v.terms() {
                basis[(index[w], j)] = c.clone();
            }
        }
        let inverse = basis.inverse().ok_or(Error::DecompositionIncomplete {
            arity: self.arity,
            found: basis.rank(),
            expected: words.len(),
        })?;
        Ok(WeightBlock {
            words,
            basis,
            inverse,
            owners: cols.iter().map(|(ci, _)| *ci).collect(),
        })
    }

    /// Weight blocks from `-arity` to `arity`, inverted once.
    fn blocks(&self) -> Result<&[WeightBlock<F>]> {
        let top = self.arity as i32;
        self.blocks
            .get_or_init(|| (-top..=top).map(|m| self.weight_block(m)).collect())
            .as_deref()
            .map_err(Clone::clone)
    }

    /// Idempotent projector onto one component along all the others.
    pub fn projector(&self, spin: u32, occurrence: usize) -> Result<Matrix<F>> {
        let target = self
            .components
            .iter()
            .position(|c| c.spin == spin && c.occurrence == occurrence)
            .ok_or(Error::NoSuchComponent {
                arity: self.arity,
                spin,
                occurrence,
            })?;
        let n = 3usize.pow(self.arity as u32);
        let mut p = Matrix::zeros(n, n);
        for blk in self.blocks()? {
            for (j, &owner) in blk.owners.iter().enumerate() {
                if owner != target {
                    continue;
                }
                for (r, wr) in blk.words.iter().enumerate() {
                    if blk.basis[(r, j)].is_zero() {
                        continue;
                    }
                    for (c, wc) in blk.words.iter().enumerate() {
                        let t = blk.basis[(r, j)].clone() * &blk.inverse[(j, c)];
                        p[(wr.index(), wc.index())] += &t;
                    }
                }
            }
        }
        Ok(p)
    }

    /// Splits a homogeneous degree-n tensor into its components; entry `i`
    /// holds coordinates in `components[i]`.
    pub fn split(&self, t: &Tensor<F>) -> Result<Vec<Vec<F>>> {
        let mut out: Vec<Vec<F>> = self.components.iter().map(|c| vec![F::zero(); c.dim()]).collect();
        let top = self.arity as i32;
        for (blk, m) in self.blocks()?.iter().zip(-top..=top) {
            let rhs: Vec<F> = blk.words.iter().map(|w| t.coeff(w)).collect();
            if rhs.iter().all(F::is_zero) {
                continue;
            }
            let coords = blk.inverse.apply(&rhs);
            for (j, &owner) in blk.owners.iter().enumerate() {
                let k = (self.components[owner].spin as i32 - m) as usize;
                out[owner][k] = coords[j].clone();
            }
        }
        Ok(out)
    }
}

/// Memoized Clebsch–Gordan engine for one deformation.
pub struct Clebsch<F: Field> {
    triplet: Triplet<F>,
    max_arity: usize,
    decompositions: Memo<usize, std::result::Result<Arc<Decomposition<F>>, Error>>,
    cartan: Memo<usize, Arc<IsotypicComponent<F>>>,
}

impl<F: Field> Clebsch<F> {
    pub const DEFAULT_MAX_ARITY: usize = 8;

    pub fn new(def: &Deformation<F>) -> Self {
        Self::with_bound(def, Self::DEFAULT_MAX_ARITY)
    }

    pub fn with_bound(def: &Deformation<F>, max_arity: usize) -> Self {
        Self {
            triplet: Triplet::new(def),
            max_arity,
            decompositions: Memo::new(),
            cartan: Memo::new(),
        }
    }

    pub fn triplet(&self) -> &Triplet<F> {
        &self.triplet
    }

    pub fn deformation(&self) -> &Deformation<F> {
        self.triplet.deformation()
    }

    fn check_bound(&self, n: usize) -> Result<()> {
        if n > self.max_arity {
            return Err(Error::DegreeOverflow {
                requested: n,
                max: self.max_arity,
            });
        }
        Ok(())
    }

    /// For each weight `k >= 0`, the canonical basis of the X-kernel in the
    /// weight-k subspace of V^{⊗n}: reduced row echelon form with respect to
    /// the lexicographic word order, so each vector's first nonzero
    /// coordinate is 1.
    pub fn highest_weight_vectors(&self, n: usize) -> Result<Vec<(u32, Tensor<F>)>> {
        self.check_bound(n)?;
        let mut by_weight: BTreeMap<i32, Vec<Word>> = BTreeMap::new();
        for w in Word::all(n) {
            by_weight.entry(w.weight()).or_default().push(w);
        }
        let mut out = Vec::new();
        for k in 0..=n as i32 {
            let source = &by_weight[&k];
            let target = by_weight.get(&(k + 1)).cloned().unwrap_or_default();
            let tindex: BTreeMap<Word, usize> = target.iter().enumerate().map(|(i, w)| (*w, i)).collect();
            let mut x = Matrix::zeros(target.len(), source.len());
            for (j, w) in source.iter().enumerate() {
                for (img, c) in self.triplet.act_word(Generator::X, w).terms() {
                    x[(tindex[img], j)] = c.clone();
                }
            }
            let kernel = if target.is_empty() {
                (0..source.len())
                    .map(|j| {
                        let mut v = vec![F::zero(); source.len()];
                        v[j] = F::one();
                        v
                    })
                    .collect()
            } else {
                x.nullspace()
            };
            for v in canonical_row_basis(kernel) {
                let t = Tensor::from_terms(source.iter().copied().zip(v));
                out.push((k as u32, t));
            }
        }
        Ok(out)
    }

    fn build_decomposition(&self, n: usize) -> Result<Arc<Decomposition<F>>> {
        let hws = self.highest_weight_vectors(n)?;
        let mut occurrences: BTreeMap<u32, usize> = BTreeMap::new();
        let mut components = Vec::new();
        for (spin, hw) in hws {
            let occ = occurrences.entry(spin).or_insert(0);
            components.push(IsotypicComponent::from_highest_weight(&self.triplet, n, spin, *occ, hw)?);
            *occ += 1;
        }
        let found: usize = components.iter().map(IsotypicComponent::dim).sum();
        let expected = 3usize.pow(n as u32);
        if found != expected {
            return Err(Error::DecompositionIncomplete {
                arity: n,
                found,
                expected,
            });
        }
        Ok(Arc::new(Decomposition {
            arity: n,
            components,
            blocks: OnceLock::new(),
        }))
    }

    /// Complete isotypic decomposition of V^{⊗n}.
    pub fn isotypic_decomposition(&self, n: usize) -> Result<Arc<Decomposition<F>>> {
        self.check_bound(n)?;
        self.decompositions.get_or_compute(&n, || self.build_decomposition(n))
    }

    pub fn projector(&self, n: usize, spin: u32, occurrence: usize) -> Result<Matrix<F>> {
        self.isotypic_decomposition(n)?.projector(spin, occurrence)
    }

    /// The unique spin-n summand of V^{⊗n}, generated by `u⊗...⊗u`.
    pub fn cartan_component(&self, n: usize) -> Result<Arc<IsotypicComponent<F>>> {
        if n > Word::MAX_LEN {
            return Err(Error::DegreeOverflow {
                requested: n,
                max: Word::MAX_LEN,
            });
        }
        Ok(self.cartan.get_or_compute(&n, || {
            let hw = Tensor::monomial(Word::from_letters(&vec![crate::rep::U; n]), F::one());
            Arc::new(
                IsotypicComponent::from_highest_weight(&self.triplet, n, n as u32, 0, hw)
                    .expect("u^n generates a spin-n string"),
            )
        }))
    }
}

/// Iterates the classical fusion rule `V_i ⊗ V_1 = V_{|i-1|} ⊕ V_i ⊕ V_{i+1}`
/// starting from the trivial module, giving multiplicities in V^{⊗n}.
pub fn classical_fusion_multiplicities(n: usize) -> BTreeMap<u32, usize> {
    let mut mult: BTreeMap<u32, usize> = BTreeMap::from([(0, 1)]);
    for _ in 0..n {
        let mut next = BTreeMap::new();
        for (&i, &m) in &mult {
            let lo = (i as i64 - 1).unsigned_abs() as u32;
            for k in lo..=i + 1 {
                *next.entry(k).or_insert(0) += m;
            }
        }
        mult = next;
    }
    mult
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{U, V, W};
    use crate::scalar::{qint, QScalar};
    use num_rational::BigRational;
    use num_traits::One;

    fn sym() -> Clebsch<QScalar> {
        Clebsch::new(&Deformation::symbolic())
    }

    fn word(l: &[u8]) -> Word {
        Word::from_letters(l)
    }

    #[test]
    fn arity_one_is_u() {
        let c = sym();
        let hw = c.highest_weight_vectors(1).unwrap();
        assert_eq!(hw.len(), 1);
        assert_eq!(hw[0].0, 1);
        assert_eq!(hw[0].1, Tensor::letter(U));
    }

    #[test]
    fn arity_two_spin_zero_vector() {
        // solved by hand from X(uw + a vv + b wu) = 0:
        // X(uw) = q^2 uv, X(vv) = -[2](uv + vu), X(wu) = vu
        let c = sym();
        let d = c.isotypic_decomposition(2).unwrap();
        let v0 = d.component(0, 0).unwrap().highest_weight().clone();
        let q2 = QScalar::q_pow(2);
        let expected = Tensor::from_terms([
            (word(&[U, W]), QScalar::one()),
            (word(&[V, V]), q2.clone() / qint(2)),
            (word(&[W, U]), q2),
        ]);
        assert_eq!(v0, expected);
    }

    #[test]
    fn arity_two_spin_zero_classical_form() {
        // at q = 1 the invariant is proportional to 2uw + vv + 2wu
        let c = Clebsch::new(&Deformation::classical());
        let d = c.isotypic_decomposition(2).unwrap();
        let v0 = d.component(0, 0).unwrap().highest_weight().clone();
        let half = BigRational::new(1.into(), 2.into());
        let two = BigRational::from_integer(2.into());
        let form = Tensor::from_terms([
            (word(&[U, W]), two.clone()),
            (word(&[V, V]), BigRational::one()),
            (word(&[W, U]), two),
        ]);
        assert_eq!(v0, form.scaled(&half));
    }

    #[test]
    fn small_multiplicities() {
        let c = sym();
        assert_eq!(c.isotypic_decomposition(0).unwrap().multiplicities(), BTreeMap::from([(0, 1)]));
        assert_eq!(
            c.isotypic_decomposition(2).unwrap().multiplicities(),
            BTreeMap::from([(0, 1), (1, 1), (2, 1)])
        );
        assert_eq!(
            c.isotypic_decomposition(3).unwrap().multiplicities(),
            BTreeMap::from([(0, 1), (1, 3), (2, 2), (3, 1)])
        );
    }

    #[test]
    fn fusion_rule_iteration() {
        assert_eq!(classical_fusion_multiplicities(3), BTreeMap::from([(0, 1), (1, 3), (2, 2), (3, 1)]));
        for n in 0..7 {
            let total: usize = classical_fusion_multiplicities(n)
                .iter()
                .map(|(k, m)| m * (2 * *k as usize + 1))
                .sum();
            assert_eq!(total, 3usize.pow(n as u32));
        }
    }

    #[test]
    fn projector_examples_arity_two() {
        let c = sym();
        let d = c.isotypic_decomposition(2).unwrap();
        let p2 = d.projector(2, 0).unwrap();
        let uu = word(&[U, U]).index();
        let mut e = vec![QScalar::from_int(0); 9];
        e[uu] = QScalar::one();
        assert_eq!(p2.apply(&e), e);

        let p0 = d.projector(0, 0).unwrap();
        let p1 = d.projector(1, 0).unwrap();
        assert_eq!(p0.add(&p1).add(&p2), Matrix::identity(9));

        let v0 = d.component(0, 0).unwrap().embedding();
        let v0: Vec<QScalar> = (0..9).map(|i| v0[(i, 0)].clone()).collect();
        assert!(p1.apply(&v0).iter().all(|x| x == &QScalar::from_int(0)));

        assert!(matches!(d.projector(3, 0), Err(Error::NoSuchComponent { .. })));
        assert!(matches!(d.projector(1, 1), Err(Error::NoSuchComponent { .. })));
    }

    #[test]
    fn cartan_components() {
        let c = sym();
        let c1 = c.cartan_component(1).unwrap();
        assert_eq!(c1.basis, vec![Tensor::letter(U), Tensor::letter(V), Tensor::letter(W)]);
        let c2 = c.cartan_component(2).unwrap();
        assert_eq!(c2.highest_weight(), &Tensor::monomial(word(&[U, U]), QScalar::one()));
        let c4 = c.cartan_component(4).unwrap();
        assert_eq!(c4.dim(), 9);
        let d2 = c.isotypic_decomposition(2).unwrap();
        assert_eq!(d2.component(2, 0).unwrap().basis, c2.basis);
    }

    #[test]
    fn split_reassembles() {
        let c = Clebsch::new(&Deformation::default_numeric());
        let d = c.isotypic_decomposition(3).unwrap();
        let t = Tensor::from_terms(Word::all(3).map(|w| (w, BigRational::from_integer((w.index() as i64 % 5 - 2).into()))));
        let parts = d.split(&t).unwrap();
        let mut back = Tensor::zero();
        for (comp, coords) in d.components.iter().zip(&parts) {
            back = back.plus(&comp.combine(coords));
        }
        assert_eq!(back, t);
    }

    #[test]
    fn bound_is_enforced() {
        let c = Clebsch::with_bound(&Deformation::default_numeric(), 2);
        assert!(matches!(c.isotypic_decomposition(3), Err(Error::DegreeOverflow { .. })));
    }
}
