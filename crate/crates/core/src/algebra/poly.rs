//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};

use super::index::MultiIndex;
use super::matrix::RatMatrix;
use super::rat::{factorial, format_rat, Rat};
use crate::error::{Error, Result};

/// Polynomial in a fixed number of variables. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<MultiIndex, Rat>,
}

/// An affine function `Σ coeffs[j]·w_j + constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    pub coeffs: Vec<Rat>,
    pub constant: Rat,
}

impl Affine {
    pub fn var(nvars: usize, j: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); nvars];
        coeffs[j] = Rat::one();
        Affine { coeffs, constant: Rat::zero() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Affine { coeffs: vec![Rat::zero(); nvars], constant: c }
    }

    pub fn to_poly(&self) -> Poly {
        let n = self.coeffs.len();
        let mut p = Poly::constant(n, self.constant.clone());
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.add_term(MultiIndex::unit(n, j), c.clone());
            }
        }
        p
    }
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(MultiIndex::zeros(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(MultiIndex::unit(nvars, i), Rat::one())
    }

    pub fn monomial(exp: MultiIndex, c: Rat) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MultiIndex, &Rat)> {
        self.terms.iter()
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.is_zero().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn coefficient(&self, exp: &MultiIndex) -> Rat {
        self.terms.get(exp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.order()).max()
    }

    pub fn add_term(&mut self, exp: MultiIndex, c: Rat) {
        debug_assert_eq!(exp.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e.get(i);
            if k > 0 {
                out.add_term(e.with_set(i, k - 1), c * Rat::from_integer(k.into()));
            }
        }
        out
    }

    /// Antiderivative in variable `i` with base point `z_i = 0`.
    pub fn antiderivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e.get(i);
            out.add_term(e.with_set(i, k + 1), c / Rat::from_integer((k + 1).into()));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes each variable `i` by the affine function `subs[i]` of
    /// `new_nvars` new variables.
    pub fn compose_affine(&self, new_nvars: usize, subs: &[Affine]) -> Poly {
        assert_eq!(subs.len(), self.nvars, "one substitution per variable");
        let bases: Vec<Poly> = subs
            .iter()
            .map(|s| {
                assert_eq!(s.coeffs.len(), new_nvars);
                s.to_poly()
            })
            .collect();
        let mut powers: Vec<Vec<Poly>> = bases.iter().map(|b| vec![Poly::one(new_nvars), b.clone()]).collect();
        let mut out = Poly::zero(new_nvars);
        for (e, c) in &self.terms {
            let mut prod = Poly::constant(new_nvars, c.clone());
            for (i, &k) in e.entries().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap() * &bases[i];
                    powers[i].push(next);
                }
                prod = &prod * &powers[i][k as usize];
            }
            out = &out + &prod;
        }
        out
    }

    /// Sets variable `i` to the constant `value`, keeping the variable count.
    pub fn evaluate_var(&self, i: usize, value: &Rat) -> Poly {
        let subs: Vec<Affine> = (0..self.nvars)
            .map(|j| if j == i { Affine::constant(self.nvars, value.clone()) } else { Affine::var(self.nvars, j) })
            .collect();
        self.compose_affine(self.nvars, &subs)
    }

    pub fn evaluate(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars);
        let mut total = Rat::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (x, &k) in point.iter().zip(e.entries()) {
                for _ in 0..k {
                    v *= x;
                }
            }
            total += v;
        }
        total
    }

    /// Exact integral over the standard simplex `{z ≥ 0, Σz ≤ 1}`.
    pub fn integrate_simplex(&self) -> Rat {
        self.terms
            .iter()
            .map(|(e, c)| c * monomial_simplex_integral(e, self.nvars).expect("length matches"))
            .fold(Rat::zero(), |a, b| a + b)
    }

    /// Exact integral over the box `Π [0, lengths_i]`.
    pub fn integrate_box(&self, lengths: &[Rat]) -> Rat {
        assert_eq!(lengths.len(), self.nvars);
        let mut total = Rat::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (l, &k) in lengths.iter().zip(e.entries()) {
                let mut lp = Rat::one();
                for _ in 0..=k {
                    lp *= l;
                }
                v *= lp / Rat::from_integer((k + 1).into());
            }
            total += v;
        }
        total
    }

    /// Renders with the given variable names, highest graded-lex monomial first.
    pub fn format_with(&self, names: &dyn Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c < &Rat::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || e.is_zero() {
                factors.push(format_rat(&mag));
            }
            for (i, &k) in e.entries().iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(names(i)),
                    _ => factors.push(format!("{}^{}", names(i), k)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

/// `∫_{Δ_p} z^β dz = β_1!···β_p! / (|β| + p)!` over `Δ_p = {z ≥ 0, Σz ≤ 1}`.
pub fn monomial_simplex_integral(beta: &MultiIndex, p: usize) -> Result<Rat> {
    if beta.len() != p {
        return Err(Error::DimensionMismatch(format!("exponent of length {} on a {}-simplex", beta.len(), p)));
    }
    let num = beta.entries().iter().fold(num::BigInt::one(), |acc, &b| acc * factorial(b));
    let den = factorial(beta.order() + p as u32);
    Ok(Rat::new(num, den))
}

/// `result(w) = q(A·w + b)` for square invertible `A`.
pub fn poly_affine_substitute(q: &Poly, a: &RatMatrix, b: &[Rat]) -> Result<Poly> {
    let n = q.nvars();
    if a.rows() != n || a.cols() != n || b.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "substitution of a {}x{} map into a polynomial in {} variables",
            a.rows(),
            a.cols(),
            n
        )));
    }
    if a.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    let subs: Vec<Affine> = (0..n).map(|i| Affine { coeffs: a.row(i).to_vec(), constant: b[i].clone() }).collect();
    Ok(q.compose_affine(n, &subs))
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut acc: BTreeMap<MultiIndex, Rat> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                *acc.entry(e1.add(e2)).or_insert_with(Rat::zero) += c1 * c2;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Poly { nvars: self.nvars, terms: acc }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{rat, ratio};
    use proptest::prelude::*;

    fn z(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn antiderivative_examples() {
        let q = z(1, 0).pow(2);
        assert_eq!(q.antiderivative(0), z(1, 0).pow(3).scale(&ratio(1, 3)));
        let c = Poly::constant(2, ratio(3, 2));
        assert_eq!(c.antiderivative(1), z(2, 1).scale(&ratio(3, 2)));
        let q = &z(2, 0) * &z(2, 1);
        assert_eq!(q.antiderivative(0), (&z(2, 0).pow(2) * &z(2, 1)).scale(&ratio(1, 2)));
    }

    #[test]
    fn affine_substitute_examples() {
        let id = RatMatrix::identity(1);
        assert_eq!(poly_affine_substitute(&z(1, 0), &id, &[rat(0)]).unwrap(), z(1, 0));
        let id2 = RatMatrix::identity(2);
        assert_eq!(
            poly_affine_substitute(&z(2, 0), &id2, &[rat(1), rat(0)]).unwrap(),
            &z(2, 0) + &Poly::one(2)
        );
        // (2w)^2 expanded by hand: 4 w^2
        let two = RatMatrix::from_rows(vec![vec![rat(2)]]);
        assert_eq!(poly_affine_substitute(&z(1, 0).pow(2), &two, &[rat(0)]).unwrap(), z(1, 0).pow(2).scale(&rat(4)));
    }

    #[test]
    fn affine_substitute_rejects_singular() {
        let a = RatMatrix::from_rows(vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]]);
        assert!(matches!(poly_affine_substitute(&z(2, 0), &a, &[rat(0), rat(0)]), Err(Error::SingularMatrix)));
    }

    #[test]
    fn simplex_integral_examples() {
        assert_eq!(monomial_simplex_integral(&MultiIndex::new(vec![0]), 1).unwrap(), rat(1));
        assert_eq!(monomial_simplex_integral(&MultiIndex::new(vec![2]), 1).unwrap(), ratio(1, 3));
        assert_eq!(monomial_simplex_integral(&MultiIndex::new(vec![1, 1]), 2).unwrap(), ratio(1, 24));
        assert!(monomial_simplex_integral(&MultiIndex::new(vec![1]), 2).is_err());
    }

    #[test]
    fn formatting() {
        let q = &(&z(2, 0).pow(2).scale(&ratio(3, 2)) - &z(2, 1)) + &Poly::constant(2, rat(-1));
        assert_eq!(q.format_with(&|i| format!("z{}", i + 1)), "3/2*z1^2 - z2 - 1");
    }

    fn small_poly(nvars: usize) -> impl Strategy<Value = Poly> {
        proptest::collection::vec((proptest::collection::vec(0u32..4, nvars), -5i64..6, 1i64..4), 0..5).prop_map(
            move |ts| {
                let mut p = Poly::zero(nvars);
                for (e, n, d) in ts {
                    p.add_term(MultiIndex::new(e), ratio(n, d));
                }
                p
            },
        )
    }

    proptest! {
        #[test]
        fn antiderivative_inverts_partial(q in small_poly(3), i in 0usize..3) {
            prop_assert_eq!(q.antiderivative(i).partial(i), q);
        }

        #[test]
        fn substitution_is_functorial(q in small_poly(2),
            a in proptest::collection::vec(-3i64..4, 4), b in proptest::collection::vec(-3i64..4, 2),
            a2 in proptest::collection::vec(-3i64..4, 4), b2 in proptest::collection::vec(-3i64..4, 2)) {
            let m1 = RatMatrix::from_rows(vec![vec![rat(a[0]), rat(a[1])], vec![rat(a[2]), rat(a[3])]]);
            let m2 = RatMatrix::from_rows(vec![vec![rat(a2[0]), rat(a2[1])], vec![rat(a2[2]), rat(a2[3])]]);
            prop_assume!(!m1.det().is_zero() && !m2.det().is_zero());
            let v1 = vec![rat(b[0]), rat(b[1])];
            let v2 = vec![rat(b2[0]), rat(b2[1])];
            // q(A1 (A2 w + b2) + b1)
            let stepwise = poly_affine_substitute(&poly_affine_substitute(&q, &m1, &v1).unwrap(), &m2, &v2).unwrap();
            let composed_a = m1.mul(&m2);
            let shifted = m1.mul_vec(&v2);
            let composed_b: Vec<Rat> = shifted.iter().zip(&v1).map(|(x, y)| x + y).collect();
            prop_assert_eq!(stepwise, poly_affine_substitute(&q, &composed_a, &composed_b).unwrap());
        }
    }
}
