//! The quotient algebra A = T(V)/{I} cut out by the covariant relations
//! `v_0 = c` and `v_1 = ħ u` (with the Y-descendants of the latter), with
//! normal forms in the highest-component basis ⊕ \bar V_n.

use std::any::Any;
use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::clebsch::{Clebsch, IsotypicComponent};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix, SparseVec};
use crate::memo::Memo;
use crate::rep::{Generator, Tensor, Word, LETTERS};
use crate::scalar::Field;

/// The four inhomogeneous relation vectors in `V⊗V ⊕ V ⊕ span(1)`.
#[derive(Clone, Debug)]
pub struct RelationSet<F: Field> {
    pub hbar: F,
    pub c: F,
    /// `v_0 - c·1`.
    pub spin0: Tensor<F>,
    /// `Y^k (v_1 - ħ u)`, k = 0, 1, 2, each rescaled so that its degree-2
    /// part is the normalized basis vector `b_k` of the spin-1 component.
    pub spin1: Vec<Tensor<F>>,
}

impl<F: Field> RelationSet<F> {
    pub fn vectors(&self) -> Vec<Tensor<F>> {
        std::iter::once(self.spin0.clone()).chain(self.spin1.iter().cloned()).collect()
    }
}

pub fn build_relations<F: Field>(clebsch: &Clebsch<F>, hbar: &F, c: &F) -> Result<RelationSet<F>> {
    let d = clebsch.isotypic_decomposition(2)?;
    let v0 = d.component(0, 0)?;
    let v1 = d.component(1, 0)?;
    let spin0 = v0.highest_weight().minus(&Tensor::unit().scaled(c));
    let mut spin1 = Vec::with_capacity(3);
    let mut cur = v1.highest_weight().minus(&Tensor::letter(crate::rep::U).scaled(hbar));
    for k in 0..3 {
        if k > 0 {
            cur = clebsch.triplet().act(Generator::Y, &cur);
            // Y b_{k-1} = y_scale[k-1] b_k
            cur = cur.scaled(&(F::one() / &v1.y_scale[k - 1]));
        }
        spin1.push(cur.clone());
    }
    Ok(RelationSet {
        hbar: hbar.clone(),
        c: c.clone(),
        spin0,
        spin1,
    })
}

/// Canonical element of A: Cartan coordinates per degree. `components[n]`
/// has length 2n+1 and holds the coefficients on the basis of \bar V_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement<F: Field> {
    components: BTreeMap<usize, Vec<F>>,
}

impl<F: Field> AlgebraElement<F> {
    pub fn zero() -> Self {
        Self {
            components: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::scalar(F::one())
    }

    pub fn scalar(c: F) -> Self {
        Self::from_components(BTreeMap::from([(0, vec![c])]))
    }

    /// The basis vector `b_k` of \bar V_n.
    pub fn basis(n: usize, k: usize) -> Self {
        let mut v = vec![F::zero(); 2 * n + 1];
        v[k] = F::one();
        Self::from_components(BTreeMap::from([(n, v)]))
    }

    pub fn from_components(mut components: BTreeMap<usize, Vec<F>>) -> Self {
        components.retain(|n, v| {
            assert_eq!(v.len(), 2 * n + 1, "component of degree {n} has wrong length");
            v.iter().any(|x| !x.is_zero())
        });
        Self { components }
    }

    pub fn components(&self) -> &BTreeMap<usize, Vec<F>> {
        &self.components
    }

    pub fn component(&self, n: usize) -> Vec<F> {
        self.components
            .get(&n)
            .cloned()
            .unwrap_or_else(|| vec![F::zero(); 2 * n + 1])
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.components.keys().next_back().copied()
    }

    pub fn add_scaled(&mut self, c: &F, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (n, v) in &other.components {
            let e = self
                .components
                .entry(*n)
                .or_insert_with(|| vec![F::zero(); 2 * n + 1]);
            for (a, b) in e.iter_mut().zip(v) {
                *a += &(c.clone() * b);
            }
        }
        self.components.retain(|_, v| v.iter().any(|x| !x.is_zero()));
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&F::one(), other);
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&-F::one(), other);
        out
    }

    pub fn scaled(&self, c: &F) -> Self {
        let mut out = Self::zero();
        out.add_scaled(c, self);
        out
    }

    /// Flat coordinate list over the basis of ⊕_{n ≤ max} \bar V_n,
    /// ordered by degree then index.
    pub fn flat(&self, max: usize) -> Vec<F> {
        (0..=max).flat_map(|n| self.component(n)).collect()
    }
}

impl<F: Field> Default for AlgebraElement<F> {
    fn default() -> Self {
        Self::zero()
    }
}

/// Per-weight change of basis from normal words to Cartan coordinates.
struct WeightSolver<F: Field> {
    words: Vec<Word>,
    /// `(n, k)` for each column of the Cartan matrix.
    slots: Vec<(usize, usize)>,
    /// Inverse of the Cartan matrix (slots × words).
    inverse: Matrix<F>,
}

/// A = T(V)/{I} truncated at a maximal degree.
pub struct Algebra<F: Field> {
    clebsch: Arc<Clebsch<F>>,
    relations: RelationSet<F>,
    max_degree: usize,
    ideal: Echelon<Word, F>,
    /// `ranks[n]` = dim of I ∩ T_{≤n} as spanned by `x⊗r⊗y`.
    ranks: Vec<usize>,
    cartan: Vec<Arc<IsotypicComponent<F>>>,
    solvers: BTreeMap<i32, WeightSolver<F>>,
}

impl<F: Field> Algebra<F> {
    pub fn new(clebsch: Arc<Clebsch<F>>, hbar: &F, c: &F, max_degree: usize) -> Result<Self> {
        if max_degree > Word::MAX_LEN {
            return Err(Error::DegreeOverflow {
                requested: max_degree,
                max: Word::MAX_LEN,
            });
        }
        let relations = build_relations(&clebsch, hbar, c)?;
        let (ideal, ranks) = build_ideal(&relations, max_degree);
        let cartan = (0..=max_degree)
            .map(|n| clebsch.cartan_component(n))
            .collect::<Result<Vec<_>>>()?;
        let solvers = build_solvers(&ideal, &cartan, max_degree)?;
        Ok(Self {
            clebsch,
            relations,
            max_degree,
            ideal,
            ranks,
            cartan,
            solvers,
        })
    }

    /// Process-wide shared instance per (mode, q, ħ, c, N).
    pub fn shared(clebsch: Arc<Clebsch<F>>, hbar: &F, c: &F, max_degree: usize) -> Result<Arc<Self>> {
        static CACHE: OnceLock<Memo<String, std::result::Result<Arc<dyn Any + Send + Sync>, Error>>> = OnceLock::new();
        let key = format!(
            "{}|q={}|hbar={hbar}|c={c}|N={max_degree}",
            std::any::type_name::<F>(),
            clebsch.deformation().q()
        );
        let entry = CACHE.get_or_init(Memo::new).get_or_compute(&key, || {
            Self::new(clebsch.clone(), hbar, c, max_degree).map(|a| Arc::new(a) as Arc<dyn Any + Send + Sync>)
        })?;
        Ok(entry.downcast::<Self>().expect("cache key includes the field type"))
    }

    pub fn clebsch(&self) -> &Arc<Clebsch<F>> {
        &self.clebsch
    }

    pub fn relations(&self) -> &RelationSet<F> {
        &self.relations
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn cartan(&self, n: usize) -> &IsotypicComponent<F> {
        &self.cartan[n]
    }

    /// Rank of the ideal inside T_{≤n}.
    pub fn ideal_rank(&self, n: usize) -> Result<usize> {
        self.check_degree(n)?;
        Ok(self.ranks[n])
    }

    /// Per-degree ranks of the ideal's filtered pieces, n = 0..=N.
    pub fn ideal_ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// dim T_{≤n}/(I ∩ T_{≤n}).
    pub fn filtered_dimension(&self, n: usize) -> Result<usize> {
        self.check_degree(n)?;
        let total: usize = (0..=n).map(|k| 3usize.pow(k as u32)).sum();
        Ok(total - self.ranks[n])
    }

    /// Dimension of the degree-n piece of the associated graded algebra.
    pub fn graded_dimension(&self, n: usize) -> Result<usize> {
        let hi = self.filtered_dimension(n)?;
        let lo = if n == 0 { 0 } else { self.filtered_dimension(n - 1)? };
        Ok(hi - lo)
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.max_degree {
            return Err(Error::DegreeOverflow {
                requested: n,
                max: self.max_degree,
            });
        }
        Ok(())
    }

    /// Reduction modulo the ideal onto the non-pivot ("normal") words.
    pub fn reduce(&self, t: &Tensor<F>) -> Result<Tensor<F>> {
        if let Some(d) = t.degree() {
            self.check_degree(d)?;
        }
        Ok(Tensor::from_map(self.ideal.reduce(t.terms().clone())))
    }

    /// The unique representative of `t + I` in ⊕_n \bar V_n.
    pub fn normal_form(&self, t: &Tensor<F>) -> Result<AlgebraElement<F>> {
        let reduced = self.reduce(t)?;
        let mut by_weight: BTreeMap<i32, Vec<(Word, F)>> = BTreeMap::new();
        for (w, c) in reduced.terms() {
            by_weight.entry(w.weight()).or_default().push((*w, c.clone()));
        }
        let mut components: BTreeMap<usize, Vec<F>> = BTreeMap::new();
        for (m, terms) in by_weight {
            let solver = &self.solvers[&m];
            let mut rhs = vec![F::zero(); solver.words.len()];
            for (w, c) in terms {
                let i = solver.words.binary_search(&w).expect("normal word has a solver slot");
                rhs[i] = c;
            }
            for ((n, k), x) in solver.slots.iter().zip(solver.inverse.apply(&rhs)) {
                components
                    .entry(*n)
                    .or_insert_with(|| vec![F::zero(); 2 * n + 1])[*k] = x;
            }
        }
        Ok(AlgebraElement::from_components(components))
    }

    /// Tensor representative in ⊕ \bar V_n.
    pub fn to_tensor(&self, a: &AlgebraElement<F>) -> Tensor<F> {
        let mut out = Tensor::zero();
        for (n, coords) in a.components() {
            for (c, b) in coords.iter().zip(&self.cartan[*n].basis) {
                out.add_scaled(c, b);
            }
        }
        out
    }

    pub fn multiply(&self, a: &AlgebraElement<F>, b: &AlgebraElement<F>) -> Result<AlgebraElement<F>> {
        let da = a.degree().unwrap_or(0);
        let db = b.degree().unwrap_or(0);
        if da + db > self.max_degree {
            return Err(Error::DegreeOverflow {
                requested: da + db,
                max: self.max_degree,
            });
        }
        self.normal_form(&self.to_tensor(a).concat(&self.to_tensor(b)))
    }

    /// Product of several elements, left to right.
    pub fn product(&self, factors: &[&AlgebraElement<F>]) -> Result<AlgebraElement<F>> {
        let mut acc = AlgebraElement::one();
        for f in factors {
            acc = self.multiply(&acc, f)?;
        }
        Ok(acc)
    }

    /// The generator `x` of V as an element of A.
    pub fn letter(&self, l: crate::rep::Letter) -> AlgebraElement<F> {
        // degree-1 Cartan coordinates coincide with (u, v, w)
        AlgebraElement::basis(1, l as usize)
    }

    pub fn act_on_algebra(&self, g: Generator, a: &AlgebraElement<F>) -> Result<AlgebraElement<F>> {
        self.normal_form(&self.clebsch.triplet().act(g, &self.to_tensor(a)))
    }

    /// Structure constants for `x · b_k` with x a letter and b_k a basis
    /// vector of \bar V_n: rows indexed by (x, k).
    pub fn structure_constants(&self, n: usize) -> Result<Vec<((char, usize), AlgebraElement<F>)>> {
        let mut out = Vec::new();
        for l in LETTERS {
            for k in 0..2 * n + 1 {
                let p = self.multiply(&self.letter(l), &AlgebraElement::basis(n, k))?;
                out.push(((crate::rep::letter_name(l), k), p));
            }
        }
        Ok(out)
    }
}

fn build_ideal<F: Field>(relations: &RelationSet<F>, max_degree: usize) -> (Echelon<Word, F>, Vec<usize>) {
    let mut ideal: Echelon<Word, F> = Echelon::new();
    let mut ranks = vec![0; max_degree + 1];
    let rels = relations.vectors();
    // rows of the previous batch whose pivot has the batch degree
    let mut frontier: Vec<SparseVec<Word, F>> = Vec::new();
    for d in 2..=max_degree {
        let mut batch: Vec<SparseVec<Word, F>> = Vec::new();
        // l ⊗ (x ⊗ r ⊗ y) for the previous degree
        for g in &frontier {
            for l in LETTERS {
                let lw = Word::single(l);
                batch.push(g.iter().map(|(w, c)| (lw.concat(w), c.clone())).collect());
            }
        }
        // r ⊗ y
        for y in Word::all(d - 2) {
            for r in &rels {
                batch.push(r.terms().iter().map(|(w, c)| (w.concat(&y), c.clone())).collect());
            }
        }
        let start = ideal.rank();
        for row in batch {
            ideal.insert(row);
        }
        ideal.interreduce();
        frontier = ideal.rows()[start..].to_vec();
        ranks[d] = ideal.rank();
    }
    (ideal, ranks)
}

fn build_solvers<F: Field>(
    ideal: &Echelon<Word, F>,
    cartan: &[Arc<IsotypicComponent<F>>],
    max_degree: usize,
) -> Result<BTreeMap<i32, WeightSolver<F>>> {
    let top = max_degree as i32;
    let mut solvers = BTreeMap::new();
    for m in -top..=top {
        let words: Vec<Word> = (0..=max_degree)
            .flat_map(Word::all)
            .filter(|w| w.weight() == m && !ideal.is_pivot(w))
            .collect();
        let slots: Vec<(usize, usize)> = (m.unsigned_abs() as usize..=max_degree)
            .map(|n| (n, (n as i32 - m) as usize))
            .collect();
        if words.len() != slots.len() {
            return Err(Error::BasisDeficiency {
                weight: m,
                detail: format!("{} normal words for {} highest-component vectors", words.len(), slots.len()),
            });
        }
        let mut mat = Matrix::zeros(words.len(), slots.len());
        for (j, (n, k)) in slots.iter().enumerate() {
            let reduced = ideal.reduce(cartan[*n].basis[*k].terms().clone());
            for (w, c) in reduced {
                let i = words.binary_search(&w).expect("reduced words are normal and weight-homogeneous");
                mat[(i, j)] = c;
            }
        }
        let inverse = mat.inverse().ok_or_else(|| Error::BasisDeficiency {
            weight: m,
            detail: "highest components are linearly dependent modulo the ideal".into(),
        })?;
        solvers.insert(m, WeightSolver { words, slots, inverse });
    }
    Ok(solvers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{U, V, W};
    use crate::scalar::{Deformation, QScalar};
    use num_rational::BigRational;
    use num_traits::One;

    fn sym_alg(hbar: i64, c: i64, n: usize) -> Algebra<QScalar> {
        let cl = Arc::new(Clebsch::new(&Deformation::symbolic()));
        Algebra::new(cl, &QScalar::from_int(hbar), &QScalar::from_int(c), n).unwrap()
    }

    fn num_alg(def: Deformation<BigRational>, hbar: i64, c: i64, n: usize) -> Algebra<BigRational> {
        let cl = Arc::new(Clebsch::new(&def));
        Algebra::new(cl, &BigRational::from_integer(hbar.into()), &BigRational::from_integer(c.into()), n).unwrap()
    }

    #[test]
    fn small_ideal_ranks() {
        let a = sym_alg(0, 1, 3);
        assert_eq!(a.ideal_rank(0).unwrap(), 0);
        assert_eq!(a.ideal_rank(1).unwrap(), 0);
        assert_eq!(a.ideal_rank(2).unwrap(), 4);
        assert_eq!(a.filtered_dimension(3).unwrap(), 16);
        assert_eq!((0..=3).map(|n| a.graded_dimension(n).unwrap()).collect::<Vec<_>>(), vec![1, 3, 5, 7]);
    }

    #[test]
    fn cone_relations_are_homogeneous() {
        let a = sym_alg(0, 0, 2);
        for r in a.relations().vectors() {
            assert_eq!(r.homogeneous_part(2), r);
        }
    }

    #[test]
    fn normal_form_examples() {
        let a = sym_alg(0, 1, 3);
        let v0 = a.clebsch().isotypic_decomposition(2).unwrap().component(0, 0).unwrap().highest_weight().clone();
        assert_eq!(a.normal_form(&v0).unwrap(), AlgebraElement::one());
        let uu = Tensor::monomial(Word::from_letters(&[U, U]), QScalar::one());
        assert_eq!(a.normal_form(&uu).unwrap(), AlgebraElement::basis(2, 0));
        let u = a.letter(U);
        assert_eq!(a.multiply(&u, &u).unwrap(), AlgebraElement::basis(2, 0));
        assert_eq!(a.multiply(&AlgebraElement::one(), &u).unwrap(), u);
        assert!(matches!(
            a.multiply(&AlgebraElement::basis(2, 0), &AlgebraElement::basis(2, 1)),
            Err(Error::DegreeOverflow { .. })
        ));
    }

    #[test]
    fn vv_splits_into_unit_and_spin_two() {
        let a = num_alg(Deformation::classical(), 0, 1, 2);
        let v = a.letter(V);
        let vv = a.multiply(&v, &v).unwrap();
        // classically v² = (v² - k/3) + k/3 with k = 2c
        assert_eq!(vv.component(0), vec![BigRational::new(2.into(), 3.into())]);
        assert_eq!(vv.degree(), Some(2));
    }

    #[test]
    fn action_descends() {
        let a = sym_alg(0, 1, 3);
        let u = a.letter(U);
        let uu = a.multiply(&u, &u).unwrap();
        let q4 = QScalar::q_pow(4);
        assert_eq!(a.act_on_algebra(Generator::K, &uu).unwrap(), uu.scaled(&q4));
        assert!(a.act_on_algebra(Generator::X, &AlgebraElement::basis(3, 0)).unwrap().is_zero());
        assert!(a.act_on_algebra(Generator::Y, &AlgebraElement::one()).unwrap().is_zero());
        let w = a.letter(W);
        let uw = a.multiply(&u, &w).unwrap();
        let lhs = a.act_on_algebra(Generator::X, &uw).unwrap();
        // X(ab) = X(a) b + K(a) X(b)
        let xa = a.act_on_algebra(Generator::X, &u).unwrap();
        let ka = a.act_on_algebra(Generator::K, &u).unwrap();
        let xb = a.act_on_algebra(Generator::X, &w).unwrap();
        let rhs = a.multiply(&xa, &w).unwrap().plus(&a.multiply(&ka, &xb).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn degenerate_relations_report_deficiency() {
        let cl = Arc::new(Clebsch::new(&Deformation::classical()));
        let cartan: Vec<_> = (0..=2).map(|n| cl.cartan_component(n).unwrap()).collect();
        let empty: Echelon<Word, BigRational> = Echelon::new();
        assert!(matches!(build_solvers(&empty, &cartan, 2), Err(Error::BasisDeficiency { .. })));
    }
}
