//! The symbolic current calculus.
//!
//! A [`Current`] is a finite sum of [`CurrentTerm`]s, each of the form
//! `q(z) · ∂^α δ(y) · χ(Δ_p)(z) · dy^I ∧ dz^J` in the model coordinates of an
//! affine [`Frame`]. Normalization moves every point- and simplex-supported
//! term into the canonical frame of its support, so two currents are equal
//! exactly when their normalized term lists coincide.

pub mod calculus;
pub mod frame;
pub mod term;

use std::collections::BTreeMap;

use num::{One, Signed, Zero};

pub use calculus::{canonicalize, partial_ambient, reframe};
pub use frame::Frame;
pub use term::{CurrentTerm, SupportKind};

use crate::algebra::{FormIndex, MultiIndex, Poly, Rat, RatMatrix};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Current {
    n: usize,
    terms: Vec<CurrentTerm>,
    period: Option<Vec<Rat>>,
}

impl Current {
    pub fn zero(n: usize) -> Self {
        Current { n, terms: Vec::new(), period: None }
    }

    pub fn zero_periodic(n: usize, period: Option<Vec<Rat>>) -> Self {
        Current { n, terms: Vec::new(), period }
    }

    /// Builds and normalizes.
    pub fn from_terms(n: usize, terms: Vec<CurrentTerm>, period: Option<Vec<Rat>>) -> Self {
        assert!(terms.iter().all(|t| t.n() == n), "terms over a different ambient dimension");
        if let Some(p) = &period {
            assert_eq!(p.len(), n);
        }
        normalize(&Current { n, terms, period })
    }

    pub fn from_term(term: CurrentTerm) -> Self {
        let n = term.n();
        Self::from_terms(n, vec![term], None)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[CurrentTerm] {
        &self.terms
    }

    pub fn period(&self) -> Option<&[Rat]> {
        self.period.as_deref()
    }

    pub fn with_period(&self, period: Option<Vec<Rat>>) -> Current {
        Current::from_terms(self.n, self.terms.clone(), period)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Form degree, if all terms share it (`None` for the zero current or mixed degrees).
    pub fn degree(&self) -> Option<usize> {
        let first = self.terms.first()?.degree();
        self.terms.iter().all(|t| t.degree() == first).then_some(first)
    }

    pub fn add(&self, other: &Current) -> Current {
        self.check_compatible(other);
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        merge(self.n, terms, self.period.clone().or_else(|| other.period.clone()))
    }

    pub fn sub(&self, other: &Current) -> Current {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Current {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, c: &Rat) -> Current {
        if c.is_zero() {
            return Current::zero_periodic(self.n, self.period.clone());
        }
        Current { n: self.n, terms: self.terms.iter().map(|t| t.scaled(c)).collect(), period: self.period.clone() }
    }

    fn check_compatible(&self, other: &Current) {
        assert_eq!(self.n, other.n, "currents over different ambient dimensions");
        if let (Some(a), Some(b)) = (&self.period, &other.period) {
            assert_eq!(a, b, "currents with different periods");
        }
    }

    /// Terms whose support is exactly the simplex (or point) with canonical frame `frame`.
    pub fn on_frame(&self, frame: &Frame) -> Current {
        Current {
            n: self.n,
            terms: self.terms.iter().filter(|t| &t.frame == frame).cloned().collect(),
            period: self.period.clone(),
        }
    }

    pub fn max_support_dim(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.support_dim()).max()
    }
}

/// Merges like terms of already-canonical pieces.
fn merge(n: usize, terms: Vec<CurrentTerm>, period: Option<Vec<Rat>>) -> Current {
    let mut acc: BTreeMap<term::TermKey, Poly> = BTreeMap::new();
    for t in terms {
        let key = t.key();
        match acc.get_mut(&key) {
            Some(q) => *q = &*q + &t.q,
            None => {
                acc.insert(key, t.q);
            }
        }
    }
    let terms = acc
        .into_iter()
        .filter(|(_, q)| !q.is_zero())
        .map(|((frame, kind, alpha, form), q)| CurrentTerm { frame, kind, alpha, form, q })
        .collect();
    Current { n, terms, period }
}

/// Canonical form: canonical frames, like terms merged, zeros dropped, sorted.
pub fn normalize(u: &Current) -> Current {
    let mut pieces = Vec::with_capacity(u.terms.len());
    for t in &u.terms {
        if t.q.is_zero() {
            continue;
        }
        canonicalize(t, u.period(), &mut pieces);
    }
    merge(u.n, pieces, u.period.clone())
}

/// Distributional exterior derivative, normalized.
pub fn d(u: &Current) -> Current {
    let terms: Vec<CurrentTerm> = u.terms.iter().flat_map(calculus::d_term).collect();
    normalize(&Current { n: u.n, terms, period: u.period.clone() })
}

/// Interior product with the radial field `x_i ∂_{x_i}` of ambient coordinate `i`.
pub fn contract_radial(u: &Current, i: usize) -> Result<Current> {
    contract_radial_in(u, &Frame::identity(u.n, 0), i)
}

/// Interior product with the radial field of model coordinate `i` of `frame`.
pub fn contract_radial_in(u: &Current, frame: &Frame, i: usize) -> Result<Current> {
    if i >= u.n || frame.n() != u.n {
        return Err(Error::DimensionMismatch(format!("coordinate {i} in dimension {}", u.n)));
    }
    let ainv = frame.inverse_matrix();
    let g = ainv.row(i).to_vec();
    let g0 = -g.iter().zip(frame.offset()).fold(Rat::zero(), |acc, (x, y)| acc + x * y);
    let w = frame.matrix().column(i);
    let terms = u.terms.iter().flat_map(|t| calculus::contract_affine_field(t, &g, &g0, &w)).collect();
    Ok(normalize(&Current { n: u.n, terms, period: u.period.clone() }))
}

/// Multi-homogeneity degree of a term with coefficient monomial `beta`, in the
/// term's model coordinates: `[i∈I] − 1 − α_i` transversally, `β_j + [j∈J]` tangentially.
pub fn term_degree(term: &CurrentTerm, beta: &MultiIndex) -> Vec<i64> {
    let m = term.m();
    let mut a = Vec::with_capacity(term.n());
    for i in 0..m {
        a.push(i64::from(term.form.contains(i)) - 1 - i64::from(term.alpha.get(i)));
    }
    for j in 0..term.p() {
        a.push(i64::from(beta.get(j)) + i64::from(term.form.contains(m + j)));
    }
    a
}

/// Groups `u` by multi-homogeneity degree.
pub fn homogeneity_decompose(u: &Current) -> BTreeMap<Vec<i64>, Current> {
    let mut groups: BTreeMap<Vec<i64>, Vec<CurrentTerm>> = BTreeMap::new();
    for t in &u.terms {
        for (beta, c) in t.q.terms() {
            let piece = t.with_q(Poly::monomial(beta.clone(), c.clone()));
            groups.entry(term_degree(t, beta)).or_default().push(piece);
        }
    }
    groups.into_iter().map(|(a, terms)| (a, merge(u.n, terms, u.period.clone()))).collect()
}

/// Pushforward by the ambient affine map `X ↦ M·X + c`, defined by
/// `⟨Φ_* u, ω⟩ = ⟨u, Φ^* ω⟩`.
pub fn affine_transform(u: &Current, m: &RatMatrix, c: &[Rat]) -> Result<Current> {
    if m.rows() != u.n || m.cols() != u.n || c.len() != u.n {
        return Err(Error::DimensionMismatch("affine map does not match the ambient dimension".into()));
    }
    let det = m.det();
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let sign = if det.is_positive() { Rat::one() } else { -Rat::one() };
    let mut terms = Vec::with_capacity(u.terms.len());
    for t in &u.terms {
        if t.kind == SupportKind::Plane && u.period.is_some() {
            return Err(Error::IncompatibleFrame("plane terms on a periodic chart cannot be moved".into()));
        }
        terms.push(CurrentTerm { frame: t.frame.push(m, c), ..t.scaled(&sign) });
    }
    Ok(normalize(&Current { n: u.n, terms, period: None }))
}

/// `χ(S_p) δ(x_1)···δ(x_{n−p}) dx_1 ∧ … ∧ dx_{n−p}` on the standard `p`-simplex in `ℝ^n`.
#[allow(non_snake_case)]
pub fn make_D(p: usize, n: usize) -> Result<Current> {
    if p > n {
        return Err(Error::InvalidInput(format!("simplex dimension {p} exceeds ambient dimension {n}")));
    }
    Ok(Current::from_term(dual_term(&Frame::identity(n, n - p))))
}

/// The dual current term `χ δ(y) dy_1∧…∧dy_m` in an arbitrary frame.
pub fn dual_term(frame: &Frame) -> CurrentTerm {
    let (n, m, p) = (frame.n(), frame.m(), frame.p());
    CurrentTerm::new(
        frame.clone(),
        SupportKind::Simplex,
        MultiIndex::zeros(m),
        FormIndex::range(n, 0..m),
        Poly::one(p),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    fn simplex_term(n: usize, m: usize, alpha: Vec<u32>, form: Vec<usize>, q: Poly) -> CurrentTerm {
        CurrentTerm::new(
            Frame::identity(n, m),
            SupportKind::Simplex,
            MultiIndex::new(alpha),
            FormIndex::new(n, form).unwrap(),
            q,
        )
    }

    #[test]
    fn normalize_examples() {
        assert!(normalize(&Current::zero(2)).is_zero());
        // y1 · δ(y1) χ = 0
        let t = simplex_term(2, 1, vec![0], vec![], Poly::one(1));
        assert!(t.times_transverse(0).is_none());
        // y1 · δ'(y1) χ = −δ(y1) χ
        let t = simplex_term(2, 1, vec![1], vec![], Poly::one(1));
        let r = Current::from_term(t.times_transverse(0).unwrap());
        let expected = Current::from_term(simplex_term(2, 1, vec![0], vec![], Poly::one(1))).neg();
        assert_eq!(r, expected);
    }

    #[test]
    fn normalize_is_idempotent_and_merges() {
        let t = simplex_term(2, 1, vec![1], vec![0], Poly::var(1, 0));
        let u = Current::from_terms(2, vec![t.clone(), t.clone()], None);
        assert_eq!(u.terms().len(), 1);
        assert_eq!(u.terms()[0].q, Poly::var(1, 0).scale(&rat(2)));
        assert_eq!(normalize(&u), u);
    }

    #[test]
    fn d_top_degree_point_is_zero() {
        for n in 1..=3 {
            assert!(d(&make_D(0, n).unwrap()).is_zero());
        }
    }

    #[test]
    fn d_of_unit_interval() {
        // dχ_[0,1] = δ(z)dz − δ(z−1)dz
        let du = d(&make_D(1, 1).unwrap());
        let at = |x: i64, c: i64| {
            Current::from_term(CurrentTerm::new(
                Frame::translation(vec![rat(x)], 1),
                SupportKind::Point,
                MultiIndex::zeros(1),
                FormIndex::full(1),
                Poly::constant(0, rat(c)),
            ))
        };
        assert_eq!(du, at(0, 1).add(&at(1, -1)));
    }

    #[test]
    fn make_d_examples() {
        let top = make_D(2, 2).unwrap();
        assert_eq!(top.degree(), Some(0));
        assert_eq!(top.terms()[0].kind, SupportKind::Simplex);
        let pt = make_D(0, 2).unwrap();
        assert_eq!(pt.terms()[0].kind, SupportKind::Point);
        assert_eq!(pt.terms()[0].form, FormIndex::full(2));
        let seg = make_D(1, 2).unwrap();
        assert_eq!(seg.terms()[0].form, FormIndex::single(2, 0));
        assert!(make_D(3, 2).is_err());
    }

    #[test]
    fn contraction_examples() {
        // ι_1(δ(x)dx) = 0 ; ι_1(δ'(x)dx) = −δ(x)
        let pt = |a: u32, form: Vec<usize>| {
            Current::from_term(CurrentTerm::new(
                Frame::identity(1, 1),
                SupportKind::Point,
                MultiIndex::new(vec![a]),
                FormIndex::new(1, form).unwrap(),
                Poly::one(0),
            ))
        };
        assert!(contract_radial(&pt(0, vec![0]), 0).unwrap().is_zero());
        assert_eq!(contract_radial(&pt(1, vec![0]), 0).unwrap(), pt(0, vec![]).neg());
        // ι_1(z1 χ dz1) = z1² χ
        let u = Current::from_term(simplex_term(1, 0, vec![], vec![0], Poly::var(1, 0)));
        let expected = Current::from_term(simplex_term(1, 0, vec![], vec![], Poly::var(1, 0).pow(2)));
        assert_eq!(contract_radial(&u, 0).unwrap(), expected);
    }

    #[test]
    fn homogeneity_examples() {
        let top = make_D(0, 3).unwrap();
        let parts = homogeneity_decompose(&top);
        assert_eq!(parts.keys().cloned().collect::<Vec<_>>(), vec![vec![0, 0, 0]]);
        let dprime = Current::from_term(CurrentTerm::new(
            Frame::identity(1, 1),
            SupportKind::Point,
            MultiIndex::new(vec![1]),
            FormIndex::full(1),
            Poly::one(0),
        ));
        assert_eq!(homogeneity_decompose(&dprime).keys().cloned().collect::<Vec<_>>(), vec![vec![-1]]);
        let chart = Current::from_term(CurrentTerm::new(
            Frame::identity(1, 0),
            SupportKind::Plane,
            MultiIndex::zeros(0),
            FormIndex::full(1),
            Poly::var(1, 0),
        ));
        assert_eq!(homogeneity_decompose(&chart).keys().cloned().collect::<Vec<_>>(), vec![vec![2]]);
    }

    #[test]
    fn affine_identity_and_unimodular_image() {
        let u = make_D(1, 2).unwrap();
        let id = RatMatrix::identity(2);
        assert_eq!(affine_transform(&u, &id, &[rat(0), rat(0)]).unwrap(), u);
        // Rotation by 90° (orientation preserving, unimodular) sends S_1 = {0}×[0,1]
        // to [−1,0]×{0} traversed from 0 to (−1,0).
        let rot = RatMatrix::from_rows(vec![vec![rat(0), rat(-1)], vec![rat(1), rat(0)]]);
        let image = affine_transform(&u, &rot, &[rat(0), rat(0)]).unwrap();
        let frame = Frame::new(rot.clone(), vec![rat(0), rat(0)], 1).unwrap();
        assert_eq!(image, Current::from_term(dual_term(&frame)));
    }
}
