//! Independent classical (q = 1) model: commutative polynomials in u, v, w
//! modulo `4uw + v² = k`, the rotation fields U, V, W, and the classical
//! tangent module. Nothing here touches the q-deformed machinery; the only
//! shared vocabulary is plain rationals and letter indices 0, 1, 2.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exponents of (u, v, w).
pub type Monomial = [u32; 3];

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// A polynomial in commuting variables u, v, w.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassicalPolynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl ClassicalPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term([0, 0, 0], c)
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    /// The variable with index 0 (u), 1 (v) or 2 (w).
    pub fn var(i: usize) -> Self {
        let mut m = [0; 3];
        m[i] = 1;
        Self::term(m, BigRational::one())
    }

    /// Commutative image of noncommutative words given as letter indices.
    pub fn from_words<'a, I>(words: I) -> Self
    where
        I: IntoIterator<Item = (&'a [u8], &'a BigRational)>,
    {
        let mut p = Self::zero();
        for (letters, c) in words {
            let mut m = [0; 3];
            for &l in letters {
                m[l as usize] += 1;
            }
            p.add_term(m, c.clone());
        }
        p
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(*m, c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        let mut p = Self::zero();
        for (m, c) in &self.terms {
            p.add_term(*m, c * s);
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                p.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], x * y);
            }
        }
        p
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(BigRational::one()), |acc, _| acc.mul(self))
    }

    fn partial(&self, i: usize) -> Self {
        let mut p = Self::zero();
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut d = *m;
            d[i] -= 1;
            p.add_term(d, c * rat(m[i] as i64));
        }
        p
    }
}

impl fmt::Display for ClassicalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| format!("{c}*u^{}v^{}w^{}", m[0], m[1], m[2]))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Canonical representative modulo `4uw + v² - k`: every `uw` is rewritten
/// to `(k - v²)/4` until no monomial contains both u and w.
pub fn classical_normal_form(p: &ClassicalPolynomial, k: &BigRational) -> ClassicalPolynomial {
    let quarter = BigRational::new(1.into(), 4.into());
    let mut work = p.clone();
    let mut out = ClassicalPolynomial::zero();
    while let Some((m, c)) = work.terms.iter().next_back().map(|(m, c)| (*m, c.clone())) {
        work.terms.remove(&m);
        if m[0] == 0 || m[2] == 0 {
            out.add_term(m, c);
            continue;
        }
        let base = [m[0] - 1, m[1], m[2] - 1];
        let c4 = c * &quarter;
        work.add_term(base, c4.clone() * k);
        work.add_term([base[0], base[1] + 2, base[2]], -c4);
    }
    out
}

/// A derivation of the polynomial ring, given by its values on u, v, w.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub images: [ClassicalPolynomial; 3],
}

impl Derivation {
    /// Leibniz extension: `D(p) = Σ ∂p/∂x_i · D(x_i)`.
    pub fn apply(&self, p: &ClassicalPolynomial) -> ClassicalPolynomial {
        let mut out = ClassicalPolynomial::zero();
        for i in 0..3 {
            out = out.add(&p.partial(i).mul(&self.images[i]));
        }
        out
    }

    pub fn scaled(&self, s: &BigRational) -> Self {
        Self {
            images: self.images.clone().map(|p| p.scale(s)),
        }
    }
}

/// The infinitesimal rotations U = ad u, V = ad v, W = ad w for the table
/// `[v,u] = 2u, [v,w] = -2w, [u,w] = v`.
pub fn classical_fields() -> [Derivation; 3] {
    let u = ClassicalPolynomial::var(0);
    let v = ClassicalPolynomial::var(1);
    let w = ClassicalPolynomial::var(2);
    let z = ClassicalPolynomial::zero;
    let two = rat(2);
    let neg2 = rat(-2);
    [
        Derivation {
            images: [z(), u.scale(&neg2), v.clone()],
        },
        Derivation {
            images: [u.scale(&two), z(), w.scale(&neg2)],
        },
        Derivation {
            images: [v.scale(&rat(-1)), w.scale(&two), z()],
        },
    ]
}

/// The invariant quadratic form `4uw + v²`.
pub fn casimir() -> ClassicalPolynomial {
    let mut p = ClassicalPolynomial::term([1, 0, 1], rat(4));
    p.add_term([0, 2, 0], BigRational::one());
    p
}

/// Classical bracket `[x, y] = D_x(y)` as (u, v, w) coordinates.
pub fn classical_bracket(x: usize, y: usize) -> [BigRational; 3] {
    let image = classical_fields()[x].apply(&ClassicalPolynomial::var(y));
    [0, 1, 2].map(|i| {
        let mut m = [0; 3];
        m[i] = 1;
        image.coeff(&m)
    })
}

/// `(2uW + vV + 2wU)(p)` reduced modulo the hyperboloid relation.
pub fn identity1(p: &ClassicalPolynomial, k: &BigRational) -> ClassicalPolynomial {
    let [fu, fv, fw] = classical_fields();
    let u = ClassicalPolynomial::var(0);
    let v = ClassicalPolynomial::var(1);
    let w = ClassicalPolynomial::var(2);
    let total = u
        .scale(&rat(2))
        .mul(&fw.apply(p))
        .add(&v.mul(&fv.apply(p)))
        .add(&w.scale(&rat(2)).mul(&fu.apply(p)));
    classical_normal_form(&total, k)
}

/// The constant s with `U∘V - V∘U = s·U` on linear functions, i.e. the image
/// of the classical spin-1 element `u⊗v - v⊗u` under composition of fields.
pub fn classical_enveloping_constant() -> BigRational {
    let [fu, fv, _] = classical_fields();
    for i in 0..3 {
        let x = ClassicalPolynomial::var(i);
        let lhs = fu.apply(&fv.apply(&x)).sub(&fv.apply(&fu.apply(&x)));
        let rhs = fu.apply(&x);
        if let Some((m, c)) = rhs.terms().iter().next() {
            return lhs.coeff(m) / c;
        }
    }
    unreachable!("U is nonzero on linear functions")
}

/// Normal monomials (no `uw`) of degree exactly n.
pub fn normal_monomials(n: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in 0..=n {
        for c in 0..=n - a {
            if a > 0 && c > 0 {
                continue;
            }
            out.push([a, n - a - c, c]);
        }
    }
    out.sort();
    out
}

pub fn classical_graded_dimension(n: u32) -> usize {
    normal_monomials(n).len()
}

/// Exact rank of a list of sparse rows over the rationals.
fn rank(mut rows: Vec<BTreeMap<usize, BigRational>>) -> usize {
    let mut r = 0;
    let mut pivots: Vec<(usize, BTreeMap<usize, BigRational>)> = Vec::new();
    for row in rows.drain(..) {
        let mut row = row;
        for (p, prow) in &pivots {
            if let Some(c) = row.get(p).cloned() {
                for (k, x) in prow {
                    let e = row.entry(*k).or_insert_with(BigRational::zero);
                    *e -= &c * x;
                }
                row.retain(|_, x| !x.is_zero());
            }
        }
        if let Some((&p, lead)) = row.iter().next() {
            let lead = lead.clone();
            for x in row.values_mut() {
                *x /= &lead;
            }
            pivots.push((p, row));
            r += 1;
        }
    }
    r
}

/// Filtered dimension of the classical tangent module in degrees ≤ n:
/// `3·dim Fun_{≤n}` minus the rank of `{f·(2uW' + vV' + 2wU')}`.
pub fn classical_tangent_filtered_dimension(n: u32, k: &BigRational) -> usize {
    let basis: Vec<Monomial> = (0..=n).flat_map(normal_monomials).collect();
    let index: BTreeMap<Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let size = basis.len();
    let u = ClassicalPolynomial::var(0);
    let v = ClassicalPolynomial::var(1);
    let w = ClassicalPolynomial::var(2);
    // slots: 0 = U', 1 = V', 2 = W'
    let generator = [w.scale(&rat(2)), v, u.scale(&rat(2))];
    let mut rows = Vec::new();
    if n > 0 {
        for m in (0..n).flat_map(normal_monomials) {
            let f = ClassicalPolynomial::term(m, BigRational::one());
            let mut row = BTreeMap::new();
            for (slot, g) in generator.iter().enumerate() {
                for (mono, c) in classical_normal_form(&f.mul(g), k).terms() {
                    row.insert(slot * size + index[mono], c.clone());
                }
            }
            rows.push(row);
        }
    }
    3 * size - rank(rows)
}

pub fn classical_tangent_dimension(n: u32, k: &BigRational) -> usize {
    let hi = classical_tangent_filtered_dimension(n, k);
    if n == 0 {
        hi
    } else {
        hi - classical_tangent_filtered_dimension(n - 1, k)
    }
}

/// Weight multiset of V^{⊗n}, keyed by weight.
pub fn tensor_power_character(n: usize) -> BTreeMap<i32, usize> {
    let mut ch = BTreeMap::from([(0, 1)]);
    for _ in 0..n {
        let mut next = BTreeMap::new();
        for (&wt, &m) in &ch {
            for d in [-1, 0, 1] {
                *next.entry(wt + d).or_insert(0) += m;
            }
        }
        ch = next;
    }
    ch
}

/// Spin multiplicities from a character by peeling off highest weights.
pub fn classical_multiplicities(n: usize) -> BTreeMap<u32, usize> {
    let mut ch = tensor_power_character(n);
    let mut out = BTreeMap::new();
    while let Some((&top, &m)) = ch.iter().next_back() {
        if m == 0 {
            ch.remove(&top);
            continue;
        }
        out.insert(top as u32, m);
        for wt in -top..=top {
            let e = ch.get_mut(&wt).expect("characters are symmetric and unimodal");
            *e -= m;
        }
        ch.retain(|_, m| *m > 0);
    }
    out
}
