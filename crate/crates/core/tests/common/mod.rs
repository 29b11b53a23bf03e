//! Helpers shared by the property suite and the acceptance runner.
#![allow(dead_code)]

use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use qhyper::algebra::{Algebra, AlgebraElement};
use qhyper::clebsch::Clebsch;
use qhyper::linalg::Matrix;
use qhyper::rep::{Generator, Tensor, Triplet, Word};
use qhyper::scalar::{Deformation, Field, LaurentPoly, QScalar};

pub fn random_laurent(rng: &mut ChaCha8Rng) -> LaurentPoly {
    let n = rng.gen_range(0..4);
    LaurentPoly::from_terms((0..n).map(|_| {
        let c = BigRational::new(rng.gen_range(-4..=4).into(), rng.gen_range(1..=3).into());
        (rng.gen_range(-3..=3), c)
    }))
}

pub fn random_qscalar(rng: &mut ChaCha8Rng) -> QScalar {
    loop {
        let den = random_laurent(rng);
        if !den.is_zero() {
            return QScalar::new(random_laurent(rng), den).unwrap();
        }
    }
}

pub fn random_tensor<F: Field>(rng: &mut ChaCha8Rng, n: usize, terms: usize) -> Tensor<F> {
    Tensor::from_terms((0..terms).map(|_| {
        let w = Word::from_index(n, rng.gen_range(0..3usize.pow(n as u32)));
        (w, F::from_i64(rng.gen_range(-3..=3)))
    }))
}

pub fn random_element<F: Field>(rng: &mut ChaCha8Rng, max: usize) -> AlgebraElement<F> {
    let d = rng.gen_range(0..=max);
    let mut out = AlgebraElement::zero();
    for n in 0..=d {
        for k in 0..2 * n + 1 {
            if rng.gen_bool(0.4) {
                out.add_scaled(&F::from_i64(rng.gen_range(-3..=3)), &AlgebraElement::basis(n, k));
            }
        }
    }
    out
}

pub fn tensor_power_matrix<F: Field>(t: &Triplet<F>, g: Generator, n: usize) -> Matrix<F> {
    let d = 3usize.pow(n as u32);
    let mut m = Matrix::zeros(d, d);
    for w in Word::all(n) {
        for (img, c) in t.act_word(g, &w).terms() {
            m[(img.index(), w.index())] = c.clone();
        }
    }
    m
}

/// Exact test of `P² = P`.
pub trait Idempotence: Field {
    fn is_idempotent(p: &Matrix<Self>) -> bool {
        p.mul(p) == *p
    }
}

impl Idempotence for BigRational {}

impl Idempotence for QScalar {
    /// Clears denominators, `P = N / L`, and checks `N·N = L·N` over
    /// Laurent polynomials, which avoids a gcd per addition.
    fn is_idempotent(p: &Matrix<Self>) -> bool {
        let (rows, cols) = (p.rows(), p.cols());
        let mut l = LaurentPoly::one();
        for i in 0..rows {
            for j in 0..cols {
                let d = p[(i, j)].denominator();
                if !d.is_one() {
                    // lcm(l, d) = l · numerator(d / l)
                    let extra = QScalar::new(d.clone(), l.clone()).unwrap();
                    l = &l * extra.numerator();
                }
            }
        }
        let scale = QScalar::from_laurent(l.clone());
        let n: Vec<Vec<LaurentPoly>> = (0..rows)
            .map(|i| {
                (0..cols)
                    .map(|j| {
                        let x = scale.clone() * &p[(i, j)];
                        assert!(x.is_laurent());
                        x.numerator().clone()
                    })
                    .collect()
            })
            .collect();
        (0..rows).all(|i| {
            let mut row = vec![LaurentPoly::zero(); cols];
            for (k, a) in n[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in n[k].iter().enumerate() {
                    if !b.is_zero() {
                        row[j] = &row[j] + &(a * b);
                    }
                }
            }
            row.iter().zip(&n[i]).all(|(lhs, x)| *lhs == &l * x)
        })
    }
}

/// Idempotence and completeness of every projector of V^{⊗n}, plus
/// commutation with X, Y, K when `commutation` is set. Returns the number
/// of projectors checked.
pub fn check_projectors<F: Idempotence>(def: &Deformation<F>, n: usize, commutation: bool) -> usize {
    let cl = Clebsch::new(def);
    let d = cl.isotypic_decomposition(n).unwrap();
    let dim = 3usize.pow(n as u32);
    let gens: Vec<Matrix<F>> = if commutation {
        [Generator::X, Generator::Y, Generator::K]
            .into_iter()
            .map(|g| tensor_power_matrix(cl.triplet(), g, n))
            .collect()
    } else {
        Vec::new()
    };
    let mut sum = Matrix::zeros(dim, dim);
    for c in &d.components {
        let p = d.projector(c.spin, c.occurrence).unwrap();
        assert!(F::is_idempotent(&p), "n = {n}, spin {} #{}: P² ≠ P", c.spin, c.occurrence);
        for g in &gens {
            assert_eq!(p.mul(g), g.mul(&p), "n = {n}, spin {} #{}", c.spin, c.occurrence);
        }
        sum = sum.add(&p);
    }
    assert_eq!(sum, Matrix::identity(dim), "n = {n}: projectors do not sum to 1");
    d.components.len()
}

/// `cases` random associativity triples and `cases` random covariance pairs.
pub fn associativity_and_covariance<F: Field>(alg: &Algebra<F>, cases: usize, rng: &mut ChaCha8Rng) {
    let max = alg.max_degree();
    let act = |g, x: &AlgebraElement<F>| alg.act_on_algebra(g, x).unwrap();
    let mul = |x: &AlgebraElement<F>, y: &AlgebraElement<F>| alg.multiply(x, y).unwrap();
    for _ in 0..cases {
        let a = random_element::<F>(rng, max / 3);
        let b = random_element::<F>(rng, max / 3);
        let c = random_element::<F>(rng, max - 2 * (max / 3));
        assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
    }
    for _ in 0..cases {
        let a = random_element::<F>(rng, max / 2);
        let b = random_element::<F>(rng, max - max / 2);
        let ab = mul(&a, &b);
        // Δ(X) = X⊗1 + K⊗X, Δ(Y) = Y⊗K⁻¹ + 1⊗Y, Δ(K) = K⊗K
        let x_side = mul(&act(Generator::X, &a), &b).plus(&mul(&act(Generator::K, &a), &act(Generator::X, &b)));
        assert_eq!(act(Generator::X, &ab), x_side);
        let y_side = mul(&act(Generator::Y, &a), &act(Generator::KInv, &b)).plus(&mul(&a, &act(Generator::Y, &b)));
        assert_eq!(act(Generator::Y, &ab), y_side);
        assert_eq!(act(Generator::K, &ab), mul(&act(Generator::K, &a), &act(Generator::K, &b)));
    }
}

/// Random tensors up to degree `max_degree` have stable normal forms.
pub fn normal_form_idempotence<F: Field>(alg: &Algebra<F>, cases: usize, rng: &mut ChaCha8Rng) {
    for _ in 0..cases {
        let n = rng.gen_range(0..=alg.max_degree());
        let t: Tensor<F> = random_tensor(rng, n, 6);
        let nf = alg.normal_form(&t).unwrap();
        assert_eq!(alg.normal_form(&alg.to_tensor(&nf)).unwrap(), nf);
    }
}
