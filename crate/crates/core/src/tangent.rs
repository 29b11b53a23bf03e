//! The left tangent module `(A ⊗ V')/{(V⊗V')_0}` and the quantum anchor:
//! the covariant extension of the q-adjoint operators to all of A.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraElement};
use crate::braided::{Braided, Spin0Coefficients};
use crate::clebsch::IsotypicComponent;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix, SparseVec};
use crate::rep::{letter_weight, Generator, Letter, Triplet, LETTERS, U, V, W};
use crate::scalar::Field;

/// Slot of a free generator: 0 = U', 1 = V', 2 = W'.
pub type Slot = u8;

/// The V'-generator paired with the operator of letter `l`.
pub fn slot_name(s: Slot) -> &'static str {
    ["U'", "V'", "W'"][s as usize]
}

/// Column key of the free module A ⊗ V': (degree, slot, Cartan index).
/// The derived order puts higher degrees last, so echelon pivots sit in the
/// top degree.
pub type TangentKey = (usize, Slot, usize);

/// An element of A ⊗ V': one algebra coefficient per generator.
pub type FreeElement<F> = [AlgebraElement<F>; 3];

/// Canonical form of an element of the tangent module: the free-module
/// coordinates left after reduction by the relation submodule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentElement<F: Field> {
    pub coords: SparseVec<TangentKey, F>,
}

impl<F: Field> TangentElement<F> {
    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn to_free(&self) -> FreeElement<F> {
        let mut comps: [BTreeMap<usize, Vec<F>>; 3] = Default::default();
        for ((n, s, k), c) in &self.coords {
            comps[*s as usize]
                .entry(*n)
                .or_insert_with(|| vec![F::zero(); 2 * n + 1])[*k] = c.clone();
        }
        comps.map(AlgebraElement::from_components)
    }
}

fn to_sparse<F: Field>(x: &FreeElement<F>) -> SparseVec<TangentKey, F> {
    let mut out = SparseVec::new();
    for (s, a) in x.iter().enumerate() {
        for (n, coords) in a.components() {
            for (k, c) in coords.iter().enumerate() {
                if !c.is_zero() {
                    out.insert((*n, s as Slot, k), c.clone());
                }
            }
        }
    }
    out
}

/// The relation generator `α u⊗W' + β v⊗V' + γ w⊗U'` as a free element.
pub fn relation_generator<F: Field>(alg: &Algebra<F>, s: &Spin0Coefficients<F>) -> FreeElement<F> {
    [
        alg.letter(W).scaled(&s.gamma),
        alg.letter(V).scaled(&s.beta),
        alg.letter(U).scaled(&s.alpha),
    ]
}

/// Left tangent module truncated at a maximal degree.
pub struct TangentModule<F: Field> {
    alg: Arc<Algebra<F>>,
    coefficients: Spin0Coefficients<F>,
    max_degree: usize,
    submodule: Echelon<TangentKey, F>,
    /// `ranks[n]` = rank of `{a·ρ : deg a ≤ n-1}`.
    ranks: Vec<usize>,
}

impl<F: Field> TangentModule<F> {
    pub fn new(alg: Arc<Algebra<F>>, coefficients: Spin0Coefficients<F>, max_degree: usize) -> Result<Self> {
        if max_degree > alg.max_degree() {
            return Err(Error::DegreeOverflow {
                requested: max_degree,
                max: alg.max_degree(),
            });
        }
        let rho = relation_generator(&alg, &coefficients);
        let mut submodule = Echelon::new();
        let mut ranks = vec![0; max_degree + 1];
        for n in 1..=max_degree {
            let m = n - 1;
            for k in 0..2 * m + 1 {
                let a = AlgebraElement::basis(m, k);
                let row = Self::left_mul(&alg, &a, &rho)?;
                submodule.insert(to_sparse(&row));
            }
            ranks[n] = submodule.rank();
        }
        Ok(Self {
            alg,
            coefficients,
            max_degree,
            submodule,
            ranks,
        })
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.alg
    }

    pub fn coefficients(&self) -> &Spin0Coefficients<F> {
        &self.coefficients
    }

    fn left_mul(alg: &Algebra<F>, a: &AlgebraElement<F>, x: &FreeElement<F>) -> Result<FreeElement<F>> {
        Ok([alg.multiply(a, &x[0])?, alg.multiply(a, &x[1])?, alg.multiply(a, &x[2])?])
    }

    /// Module action `a · x`.
    pub fn act(&self, a: &AlgebraElement<F>, x: &FreeElement<F>) -> Result<FreeElement<F>> {
        Self::left_mul(&self.alg, a, x)
    }

    /// The generator `1 ⊗ S'`.
    pub fn generator(s: Slot) -> FreeElement<F> {
        let mut out: FreeElement<F> = Default::default();
        out[s as usize] = AlgebraElement::one();
        out
    }

    pub fn canonical(&self, x: &FreeElement<F>) -> Result<TangentElement<F>> {
        if let Some(d) = x.iter().filter_map(AlgebraElement::degree).max() {
            if d > self.max_degree {
                return Err(Error::DegreeOverflow {
                    requested: d,
                    max: self.max_degree,
                });
            }
        }
        Ok(TangentElement {
            coords: self.submodule.reduce(to_sparse(x)),
        })
    }

    /// dim of the filtered piece of degree ≤ n.
    pub fn filtered_dimension(&self, n: usize) -> Result<usize> {
        if n > self.max_degree {
            return Err(Error::DegreeOverflow {
                requested: n,
                max: self.max_degree,
            });
        }
        Ok(3 * (n + 1) * (n + 1) - self.ranks[n])
    }

    pub fn graded_dimension(&self, n: usize) -> Result<usize> {
        let hi = self.filtered_dimension(n)?;
        let lo = if n == 0 { 0 } else { self.filtered_dimension(n - 1)? };
        Ok(hi - lo)
    }
}

/// Basis of U_q-intertwiners V ⊗ \bar V_n → \bar V_n as (2n+1)×3(2n+1)
/// matrices; source index `3`-major: column `i·(2n+1) + k` is `x_i ⊗ b_k`.
pub fn morphism_space<F: Field>(triplet: &Triplet<F>, comp: &IsotypicComponent<F>) -> Vec<Matrix<F>> {
    let d = comp.dim();
    let n = comp.spin as i32;
    // unknown positions allowed by weight: x_i ⊗ b_k ↦ b_{k - wt(x_i)}
    let mut unknowns = Vec::new();
    for i in LETTERS {
        for k in 0..d as i32 {
            let target = k - letter_weight(i);
            if (0..=2 * n).contains(&target) {
                unknowns.push((target as usize, i as usize * d + k as usize));
            }
        }
    }
    let vx = triplet.matrix(Generator::X);
    let vy = triplet.matrix(Generator::Y);
    let vk = triplet.matrix(Generator::K);
    let nx = comp.action_matrix(triplet, Generator::X);
    let ny = comp.action_matrix(triplet, Generator::Y);
    let nkinv = comp.action_matrix(triplet, Generator::KInv);
    let id3 = Matrix::identity(3);
    let idn = Matrix::identity(d);
    let delta_x = kron(&vx, &idn).add(&kron(&vk, &nx));
    let delta_y = kron(&vy, &nkinv).add(&kron(&id3, &ny));
    // φ Δ(g) - ρ(g) φ = 0, one row per (g, r, c)
    let mut eqs: Vec<Vec<F>> = Vec::new();
    for (delta, rho) in [(&delta_x, &nx), (&delta_y, &ny)] {
        for r in 0..d {
            for c in 0..3 * d {
                let mut row = vec![F::zero(); unknowns.len()];
                for (u, &(ur, uc)) in unknowns.iter().enumerate() {
                    let mut coef = F::zero();
                    if ur == r {
                        coef += &delta[(uc, c)];
                    }
                    if uc == c {
                        coef -= &rho[(r, ur)];
                    }
                    row[u] = coef;
                }
                if row.iter().any(|x| !x.is_zero()) {
                    eqs.push(row);
                }
            }
        }
    }
    let kernel = if eqs.is_empty() {
        (0..unknowns.len())
            .map(|j| {
                let mut v = vec![F::zero(); unknowns.len()];
                v[j] = F::one();
                v
            })
            .collect()
    } else {
        Matrix::from_rows(eqs).nullspace()
    };
    kernel
        .into_iter()
        .map(|v| {
            let mut m = Matrix::zeros(d, 3 * d);
            for (x, &(r, c)) in v.into_iter().zip(&unknowns) {
                m[(r, c)] = x;
            }
            m
        })
        .collect()
}

fn kron<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let mut m = Matrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if a[(i, j)].is_zero() {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    m[(i * b.rows() + k, j * b.cols() + l)] = a[(i, j)].clone() * &b[(k, l)];
                }
            }
        }
    }
    m
}

/// Anchor data in one degree.
#[derive(Clone, Debug)]
pub struct AnchorDegree<F: Field> {
    pub n: usize,
    /// Intertwiner normalized by `φ_n(v ⊗ b_0) = ε b_0`.
    pub phi: Matrix<F>,
    pub lambda: F,
    /// Roots of the determining equation `λ² a = λ ħ_adj b`.
    pub roots: Vec<F>,
    /// `λ_n φ_n(x ⊗ -)` on \bar V_n for x = u, v, w.
    pub operators: [Matrix<F>; 3],
}

/// The quantum anchor up to a maximal degree.
pub struct Anchor<F: Field> {
    alg: Arc<Algebra<F>>,
    braided: Arc<Braided<F>>,
    hbar_adj: F,
    degrees: Vec<AnchorDegree<F>>,
}

/// Report of one family of checks.
#[derive(Clone, Debug)]
pub struct CheckReport<F: Field> {
    pub checked: usize,
    /// Descriptions and values of nonzero residuals.
    pub failures: Vec<(String, AlgebraElement<F>)>,
}

impl<F: Field> CheckReport<F> {
    fn new() -> Self {
        Self {
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, label: impl FnOnce() -> String, residual: AlgebraElement<F>) {
        self.checked += 1;
        if !residual.is_zero() {
            self.failures.push((label(), residual));
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl<F: Field> Anchor<F> {
    /// Solves for λ_1, ..., λ_N.
    pub fn solve(alg: Arc<Algebra<F>>, braided: Arc<Braided<F>>, max_degree: usize) -> Result<Self> {
        let hbar_adj = braided.enveloping_constant()?.hbar_adj;
        let eps = braided.epsilon();
        let triplet = braided.clebsch().triplet().clone();
        let v1 = braided.clebsch().isotypic_decomposition(2)?.component(1, 0)?.clone();
        let mut degrees = Vec::new();
        for n in 1..=max_degree {
            let comp = braided.clebsch().cartan_component(n)?;
            let d = comp.dim();
            let space = morphism_space(&triplet, &comp);
            if space.len() != 1 {
                return Err(Error::UnexpectedDimension {
                    what: format!("intertwiners V ⊗ V_{n} → V_{n}"),
                    found: space.len(),
                    expected: 1,
                });
            }
            let raw = &space[0];
            let pivot = raw[(0, V as usize * d)].clone();
            if pivot.is_zero() {
                return Err(Error::NoSolution(format!("intertwiner of degree {n} kills v ⊗ b_0")));
            }
            let phi = raw.scale(&(eps.clone() / &pivot));
            let blocks: Vec<Matrix<F>> = LETTERS.iter().map(|&l| block(&phi, l, d)).collect();
            // representation condition on b_1: b_0-coefficient of ρ(v_1) b_1
            let two_step = compose(&v1.basis[0], &blocks);
            let a = two_step[(0, 1)].clone();
            let b = blocks[U as usize][(0, 1)].clone();
            if a.is_zero() || b.is_zero() {
                return Err(Error::NoSolution(format!(
                    "determining equation of degree {n} is degenerate"
                )));
            }
            let lambda = hbar_adj.clone() * &b / &a;
            let roots = vec![F::zero(), lambda.clone()];
            // full relation, all three spin-1 descendants, on every basis vector
            let chain = chain_letters(&braided)?;
            for (bk, ek) in v1.basis.iter().zip(&chain) {
                let lhs = compose(bk, &blocks).scale(&(lambda.clone() * &lambda));
                let mut rhs = Matrix::zeros(d, d);
                for (l, c) in LETTERS.iter().zip(ek) {
                    rhs = rhs.add(&blocks[*l as usize].scale(c));
                }
                if lhs != rhs.scale(&(hbar_adj.clone() * &lambda)) {
                    return Err(Error::NoSolution(format!(
                        "representation condition fails off the highest weight in degree {n}"
                    )));
                }
            }
            let operators = [0, 1, 2].map(|i| blocks[i].scale(&lambda));
            degrees.push(AnchorDegree {
                n,
                phi,
                lambda,
                roots,
                operators,
            });
        }
        Ok(Self {
            alg,
            braided,
            hbar_adj,
            degrees,
        })
    }

    pub fn hbar_adj(&self) -> &F {
        &self.hbar_adj
    }

    pub fn degrees(&self) -> &[AnchorDegree<F>] {
        &self.degrees
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.len()
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.alg
    }

    pub fn braided(&self) -> &Arc<Braided<F>> {
        &self.braided
    }

    /// `λ_n` for n ≥ 1.
    pub fn lambda(&self, n: usize) -> Option<&F> {
        self.degrees.get(n.checked_sub(1)?).map(|d| &d.lambda)
    }

    /// β(x, f) for x in (u, v, w) coordinates.
    pub fn apply(&self, x: &[F], f: &AlgebraElement<F>) -> Result<AlgebraElement<F>> {
        let mut out = BTreeMap::new();
        for (n, coords) in f.components() {
            if *n == 0 {
                continue;
            }
            let deg = self.degrees.get(n - 1).ok_or(Error::DegreeOverflow {
                requested: *n,
                max: self.max_degree(),
            })?;
            let mut acc = vec![F::zero(); 2 * n + 1];
            for (i, xi) in x.iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                for (a, b) in acc.iter_mut().zip(deg.operators[i].apply(coords)) {
                    *a += &(xi.clone() * &b);
                }
            }
            out.insert(*n, acc);
        }
        Ok(AlgebraElement::from_components(out))
    }

    pub fn apply_letter(&self, l: Letter, f: &AlgebraElement<F>) -> Result<AlgebraElement<F>> {
        let mut x = vec![F::zero(); 3];
        x[l as usize] = F::one();
        self.apply(&x, f)
    }

    /// β on a tangent-module element: `β(Σ a_S ⊗ S', f) = Σ a_S · X_S(f)`.
    pub fn apply_tangent(&self, t: &TangentElement<F>, f: &AlgebraElement<F>) -> Result<AlgebraElement<F>> {
        let free = t.to_free();
        let mut out = AlgebraElement::zero();
        for (s, a) in free.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let image = self.apply_letter(s as Letter, f)?;
            out = out.plus(&self.alg.multiply(a, &image)?);
        }
        Ok(out)
    }

    /// `α u·X_w + β v·X_v + γ w·X_u` on every basis vector of \bar V_n,
    /// n ≤ max.
    pub fn verify_relation_vanishing(&self, max: usize) -> Result<CheckReport<F>> {
        let s = self.braided.spin0_coefficients()?;
        let mut report = CheckReport::new();
        for n in 0..=max {
            for k in 0..2 * n + 1 {
                let f = AlgebraElement::basis(n, k);
                let mut total = AlgebraElement::zero();
                for (coef, left, op) in [(&s.alpha, U, W), (&s.beta, V, V), (&s.gamma, W, U)] {
                    let image = self.apply_letter(op, &f)?;
                    total.add_scaled(coef, &self.alg.multiply(&self.alg.letter(left), &image)?);
                }
                report.record(|| format!("n={n} b_{k}"), total);
            }
        }
        Ok(report)
    }

    /// Two-path check `β(a·ξ, f) = a·β(ξ, f)` with a·ξ reduced to canonical
    /// tangent form, for basis a of degree ≤ `a_max`, all generators ξ, and
    /// basis f of degree ≤ `f_max`.
    pub fn verify_diagram(&self, tangent: &TangentModule<F>, a_max: usize, f_max: usize) -> Result<CheckReport<F>> {
        self.verify_diagram_range(tangent, a_max, 0..=f_max)
    }

    /// As [`Anchor::verify_diagram`] with f restricted to the given degrees.
    pub fn verify_diagram_range(
        &self,
        tangent: &TangentModule<F>,
        a_max: usize,
        f_degrees: std::ops::RangeInclusive<usize>,
    ) -> Result<CheckReport<F>> {
        let mut report = CheckReport::new();
        for m in 0..=a_max {
            for i in 0..2 * m + 1 {
                let a = AlgebraElement::basis(m, i);
                for s in 0..3u8 {
                    let xi = TangentModule::generator(s);
                    let reduced = tangent.canonical(&tangent.act(&a, &xi)?)?;
                    for n in f_degrees.clone() {
                        for k in 0..2 * n + 1 {
                            let f = AlgebraElement::basis(n, k);
                            let lhs = self.apply_tangent(&reduced, &f)?;
                            let rhs = self.alg.multiply(&a, &self.apply_letter(s, &f)?)?;
                            report.record(|| format!("a=b{m}_{i} xi={} f=b{n}_{k}", slot_name(s)), lhs.minus(&rhs));
                        }
                    }
                }
            }
        }
        Ok(report)
    }

    /// `g·β(x, f) = Σ β(g_(1) x, g_(2) f)` for g ∈ {X, Y, K}, letters x and
    /// basis f of degree ≤ max.
    pub fn verify_equivariance(&self, max: usize) -> Result<CheckReport<F>> {
        let mut report = CheckReport::new();
        for n in 1..=max {
            let r = self.verify_equivariance_degree(n)?;
            report.checked += r.checked;
            report.failures.extend(r.failures);
        }
        Ok(report)
    }

    /// Equivariance on \bar V_n alone.
    pub fn verify_equivariance_degree(&self, n: usize) -> Result<CheckReport<F>> {
        let t = self.braided.clebsch().triplet();
        let act_x = |g: Generator, l: Letter| {
            let mut v = vec![F::zero(); 3];
            for (r, c) in t.act_letter(g, l) {
                v[*r as usize] = c.clone();
            }
            v
        };
        let unit = |l: Letter| {
            let mut v = vec![F::zero(); 3];
            v[l as usize] = F::one();
            v
        };
        let act_f = |g: Generator, f: &AlgebraElement<F>| self.alg.act_on_algebra(g, f);
        let mut report = CheckReport::new();
        {
            for k in 0..2 * n + 1 {
                let f = AlgebraElement::basis(n, k);
                for x in LETTERS {
                    let base = self.apply(&unit(x), &f)?;
                    for g in [Generator::X, Generator::Y, Generator::K] {
                        let lhs = act_f(g, &base)?;
                        let rhs = match g {
                            Generator::X => self
                                .apply(&act_x(Generator::X, x), &f)?
                                .plus(&self.apply(&act_x(Generator::K, x), &act_f(Generator::X, &f)?)?),
                            Generator::Y => self
                                .apply(&act_x(Generator::Y, x), &act_f(Generator::KInv, &f)?)?
                                .plus(&self.apply(&unit(x), &act_f(Generator::Y, &f)?)?),
                            _ => self.apply(&act_x(Generator::K, x), &act_f(Generator::K, &f)?)?,
                        };
                        report.record(|| format!("g={g:?} x={x} f=b{n}_{k}"), lhs.minus(&rhs));
                    }
                }
            }
        }
        Ok(report)
    }
}

/// The (2n+1)² block `φ(x ⊗ -)`.
fn block<F: Field>(phi: &Matrix<F>, l: Letter, d: usize) -> Matrix<F> {
    let mut m = Matrix::zeros(d, d);
    for r in 0..d {
        for c in 0..d {
            m[(r, c)] = phi[(r, l as usize * d + c)].clone();
        }
    }
    m
}

/// `Σ c_{ij} B_i B_j` for a degree-2 tensor `Σ c_{ij} x_i⊗x_j`.
fn compose<F: Field>(t: &crate::rep::Tensor<F>, blocks: &[Matrix<F>]) -> Matrix<F> {
    let d = blocks[0].rows();
    let mut out = Matrix::zeros(d, d);
    for (w, c) in t.terms() {
        let l = w.letters();
        out = out.add(&blocks[l[0] as usize].mul(&blocks[l[1] as usize]).scale(c));
    }
    out
}

/// Images in V of the spin-1 basis of V⊗V, as coordinate triples.
fn chain_letters<F: Field>(braided: &Braided<F>) -> Result<Vec<Vec<F>>> {
    let cl = braided.clebsch();
    let v1 = cl.isotypic_decomposition(2)?.component(1, 0)?.clone();
    let mut cur = vec![F::one(), F::zero(), F::zero()];
    let y = cl.triplet().matrix(Generator::Y);
    let mut out = vec![cur.clone()];
    for s in &v1.y_scale {
        cur = y.apply(&cur).into_iter().map(|c| c / s).collect();
        out.push(cur.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clebsch::Clebsch;
    use crate::scalar::{Deformation, QScalar};
    use num_rational::BigRational;
    use num_traits::One;

    fn setup_num(def: Deformation<BigRational>, n: usize) -> (Arc<Algebra<BigRational>>, Arc<Braided<BigRational>>) {
        let cl = Arc::new(Clebsch::new(&def));
        let alg = Arc::new(Algebra::new(cl.clone(), &BigRational::from_integer(0.into()), &BigRational::one(), n).unwrap());
        (alg, Arc::new(Braided::new(cl).unwrap()))
    }

    #[test]
    fn morphism_space_dimensions() {
        let cl = Clebsch::new(&Deformation::symbolic());
        assert!(morphism_space(cl.triplet(), &cl.cartan_component(0).unwrap()).is_empty());
        for n in 1..=3 {
            assert_eq!(morphism_space(cl.triplet(), &cl.cartan_component(n).unwrap()).len(), 1, "n = {n}");
        }
    }

    #[test]
    fn degree_one_anchor_is_the_bracket() {
        let (alg, br) = setup_num(Deformation::default_numeric(), 3);
        let anchor = Anchor::solve(alg, br.clone(), 2).unwrap();
        assert!(anchor.lambda(1).unwrap().is_one());
        for x in LETTERS {
            for z in LETTERS {
                let img = anchor.apply_letter(x, &AlgebraElement::basis(1, z as usize)).unwrap();
                assert_eq!(img.component(1), br.bracket(x, z).to_vec());
            }
        }
        assert!(anchor.apply_letter(U, &AlgebraElement::one()).unwrap().is_zero());
    }

    #[test]
    fn classical_lambdas_are_degrees() {
        let (alg, br) = setup_num(Deformation::classical(), 4);
        let anchor = Anchor::solve(alg, br, 3).unwrap();
        for n in 1..=3 {
            assert_eq!(anchor.lambda(n).unwrap(), &BigRational::from_integer((n as i64).into()));
        }
    }

    #[test]
    fn tangent_dimensions_symbolic() {
        let cl = Arc::new(Clebsch::new(&Deformation::symbolic()));
        let alg = Arc::new(Algebra::new(cl.clone(), &QScalar::from_int(0), &QScalar::from_int(1), 3).unwrap());
        let s = Braided::new(cl).unwrap().spin0_coefficients().unwrap();
        let t = TangentModule::new(alg, s, 3).unwrap();
        let dims: Vec<_> = (0..=3).map(|n| t.graded_dimension(n).unwrap()).collect();
        assert_eq!(dims, vec![3, 8, 12, 16]);
    }

    #[test]
    fn checks_pass_numerically() {
        let (alg, br) = setup_num(Deformation::default_numeric(), 4);
        let anchor = Anchor::solve(alg.clone(), br.clone(), 3).unwrap();
        assert!(anchor.verify_relation_vanishing(3).unwrap().passed());
        assert!(anchor.verify_equivariance(2).unwrap().passed());
        let t = TangentModule::new(alg, br.spin0_coefficients().unwrap(), 2).unwrap();
        let d = anchor.verify_diagram(&t, 2, 2).unwrap();
        assert!(d.passed() && d.checked > 0);
    }

    #[test]
    fn lambdas_are_independent_of_bracket_scale() {
        let def = Deformation::default_numeric();
        let cl = Arc::new(Clebsch::new(&def));
        let alg = Arc::new(Algebra::new(cl.clone(), &BigRational::from_integer(0.into()), &BigRational::one(), 3).unwrap());
        let a1 = Anchor::solve(alg.clone(), Arc::new(Braided::new(cl.clone()).unwrap()), 2).unwrap();
        let s = BigRational::new(5.into(), 7.into());
        let a2 = Anchor::solve(alg, Arc::new(Braided::with_scale(cl, s.clone()).unwrap()), 2).unwrap();
        for n in 1..=2 {
            assert_eq!(a1.lambda(n), a2.lambda(n));
        }
        assert_eq!(a2.hbar_adj(), &(a1.hbar_adj().clone() * &s));
    }
}
