//! Seeded generators of random terms, currents and test forms.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{FormIndex, MultiIndex, Poly, Rat, RatMatrix};
use crate::current::{Current, CurrentTerm, Frame, SupportKind};
use crate::pairing::PolyForm;

pub fn small_rat<R: Rng>(rng: &mut R) -> Rat {
    let num: i64 = rng.gen_range(-4..=4);
    let den: i64 = rng.gen_range(1..=3);
    Rat::new(num.into(), den.into())
}

fn nonzero_rat<R: Rng>(rng: &mut R) -> Rat {
    loop {
        let r = small_rat(rng);
        if r != Rat::from_integer(0.into()) {
            return r;
        }
    }
}

pub fn random_poly<R: Rng>(rng: &mut R, nvars: usize, max_degree: u32, terms: usize) -> Poly {
    let mut q = Poly::zero(nvars);
    for _ in 0..terms {
        let mut exp = vec![0u32; nvars];
        let mut budget = rng.gen_range(0..=max_degree);
        while budget > 0 && nvars > 0 {
            exp[rng.gen_range(0..nvars)] += 1;
            budget -= 1;
        }
        q.add_term(MultiIndex::new(exp), small_rat(rng));
    }
    q
}

pub fn random_form_index<R: Rng>(rng: &mut R, n: usize, k: usize) -> FormIndex {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    idx.truncate(k);
    FormIndex::new(n, idx).expect("distinct indices")
}

/// An invertible integer matrix with small entries.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> RatMatrix {
    loop {
        let rows: Vec<Vec<Rat>> = (0..n)
            .map(|_| (0..n).map(|_| Rat::from_integer(rng.gen_range(-2i64..=2).into())).collect())
            .collect();
        let a = RatMatrix::from_rows(rows);
        if a.rank() == n {
            return a;
        }
    }
}

pub fn random_frame<R: Rng>(rng: &mut R, n: usize, m: usize) -> Frame {
    let a = random_invertible(rng, n);
    let b = (0..n).map(|_| small_rat(rng)).collect();
    Frame::new(a, b, m).expect("invertible")
}

/// A random term of form degree `k` on a simplex or point support, total δ-order at most `max_alpha`.
pub fn random_term<R: Rng>(rng: &mut R, n: usize, k: usize, max_alpha: u32) -> CurrentTerm {
    let m = rng.gen_range(0..=n);
    let frame = random_frame(rng, n, m);
    let p = n - m;
    let mut alpha = vec![0u32; m];
    if m > 0 {
        for _ in 0..rng.gen_range(0..=max_alpha) {
            alpha[rng.gen_range(0..m)] += 1;
        }
    }
    let alpha = MultiIndex::new(alpha);
    let kind = if p == 0 { SupportKind::Point } else { SupportKind::Simplex };
    let mut q = random_poly(rng, p, 3, 2);
    if q.is_zero() {
        q = Poly::constant(p, nonzero_rat(rng));
    }
    CurrentTerm::new(frame, kind, alpha, random_form_index(rng, n, k), q)
}

pub fn random_current<R: Rng>(rng: &mut R, n: usize, k: usize, terms: usize, max_alpha: u32) -> Current {
    let terms = (0..terms).map(|_| random_term(rng, n, k, max_alpha)).collect();
    Current::from_terms(n, terms, None)
}

pub fn random_form<R: Rng>(rng: &mut R, n: usize, k: usize, max_degree: u32) -> PolyForm {
    let mut f = PolyForm::zero(n, k);
    for _ in 0..2 {
        f.add_component(random_form_index(rng, n, k), random_poly(rng, n, max_degree, 3));
    }
    f
}
