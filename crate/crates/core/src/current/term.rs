//! Single symbolic current terms.

use num::{One, Zero};

use super::frame::Frame;
use crate::algebra::{FormIndex, MultiIndex, Poly, Rat, RatMatrix};

/// Shape of the support in model coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SupportKind {
    /// The origin of the model; no tangential coordinates.
    Point,
    /// The whole plane `{y = 0}` (no characteristic function).
    Plane,
    /// `{y = 0, z ∈ Δ_p}` with the factor `χ(Δ_p)`.
    Simplex,
}

/// `q(z) · ∂^α δ(y) · χ · dx^K` in the model coordinates of `frame`.
///
/// The form index runs over all `n` model coordinates, transverse ones
/// first, so `dx^K = dy^I ∧ dz^J`. The coefficient is folded into `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurrentTerm {
    pub frame: Frame,
    pub kind: SupportKind,
    pub alpha: MultiIndex,
    pub form: FormIndex,
    pub q: Poly,
}

/// Merge key: everything except the polynomial coefficient.
pub type TermKey = (Frame, SupportKind, MultiIndex, FormIndex);

impl CurrentTerm {
    pub fn new(frame: Frame, kind: SupportKind, alpha: MultiIndex, form: FormIndex, q: Poly) -> Self {
        let kind = if frame.p() == 0 { SupportKind::Point } else { kind };
        assert!(kind != SupportKind::Point || frame.p() == 0, "point support with tangential coordinates");
        assert_eq!(alpha.len(), frame.m(), "δ-order length must equal the transverse dimension");
        assert_eq!(form.dim(), frame.n(), "form index over the ambient dimension");
        assert_eq!(q.nvars(), frame.p(), "coefficient polynomial in the tangential variables");
        CurrentTerm { frame, kind, alpha, form, q }
    }

    pub fn n(&self) -> usize {
        self.frame.n()
    }

    pub fn m(&self) -> usize {
        self.frame.m()
    }

    pub fn p(&self) -> usize {
        self.frame.p()
    }

    pub fn degree(&self) -> usize {
        self.form.degree()
    }

    pub fn key(&self) -> TermKey {
        (self.frame.clone(), self.kind, self.alpha.clone(), self.form.clone())
    }

    pub fn with_q(&self, q: Poly) -> Self {
        CurrentTerm { q, ..self.clone() }
    }

    pub fn with_form(&self, form: FormIndex, q: Poly) -> Self {
        CurrentTerm { form, q, ..self.clone() }
    }

    pub fn scaled(&self, c: &Rat) -> Self {
        self.with_q(self.q.scale(c))
    }

    /// Dimension of the support (0 for points, `p` otherwise).
    pub fn support_dim(&self) -> usize {
        self.p()
    }

    /// Transverse form indices `I` (model coordinates `0..m`).
    pub fn transverse_form(&self) -> Vec<usize> {
        self.form.indices().iter().copied().filter(|&i| i < self.m()).collect()
    }

    /// Tangential form indices `J` (relative to `z`, `0..p`).
    pub fn tangential_form(&self) -> Vec<usize> {
        let m = self.m();
        self.form.indices().iter().copied().filter(|&i| i >= m).map(|i| i - m).collect()
    }

    /// Multiplies by the transverse coordinate `y_i` using
    /// `y_i · ∂^α δ = −α_i · ∂^{α − e_i} δ`.
    pub fn times_transverse(&self, i: usize) -> Option<CurrentTerm> {
        let a = self.alpha.get(i);
        let lowered = self.alpha.decremented(i)?;
        Some(CurrentTerm { alpha: lowered, q: self.q.scale(&-Rat::from_integer(a.into())), ..self.clone() })
    }

    /// Multiplies by model coordinate `l` (transverse or tangential).
    pub fn times_coordinate(&self, l: usize) -> Option<CurrentTerm> {
        let m = self.m();
        if l < m {
            self.times_transverse(l)
        } else {
            Some(self.with_q(&self.q * &Poly::var(self.p(), l - m)))
        }
    }

    /// Interior product with the constant model vector `∂_l`.
    pub fn interior(&self, l: usize) -> Option<CurrentTerm> {
        let pos = self.form.position(l)?;
        let q = if pos % 2 == 0 { self.q.clone() } else { -&self.q };
        Some(self.with_form(self.form.removed(l), q))
    }
}

/// Pulls back the constant form `dx^K` along a linear change `x_old = T·x_new`:
/// `dx_old_k = Σ_l T_{kl} dx_new_l`.
pub fn pullback_form(form: &FormIndex, t: &RatMatrix) -> Vec<(FormIndex, Rat)> {
    let n = t.cols();
    let mut acc: Vec<(Vec<usize>, Rat)> = vec![(Vec::new(), Rat::one())];
    for &k in form.indices() {
        let mut next: Vec<(Vec<usize>, Rat)> = Vec::new();
        for (idx, c) in &acc {
            for l in 0..n {
                let tk = t.get(k, l);
                if tk.is_zero() || idx.contains(&l) {
                    continue;
                }
                let mut v = idx.clone();
                v.push(l);
                next.push((v, c * tk));
            }
        }
        acc = next;
    }
    let mut merged: std::collections::BTreeMap<FormIndex, Rat> = std::collections::BTreeMap::new();
    for (idx, c) in acc {
        // Sign of the permutation that sorts idx.
        let mut inversions = 0;
        for a in 0..idx.len() {
            for b in a + 1..idx.len() {
                if idx[a] > idx[b] {
                    inversions += 1;
                }
            }
        }
        let c = if inversions % 2 == 0 { c } else { -c };
        let key = FormIndex::new(n, idx).expect("distinct indices");
        *merged.entry(key).or_insert_with(Rat::zero) += c;
    }
    merged.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    #[test]
    fn pullback_of_area_form_is_determinant() {
        let t = RatMatrix::from_rows(vec![vec![rat(2), rat(1)], vec![rat(3), rat(5)]]);
        let pb = pullback_form(&FormIndex::full(2), &t);
        assert_eq!(pb, vec![(FormIndex::full(2), rat(7))]);
    }

    #[test]
    fn transverse_multiplication_rule() {
        let f = Frame::identity(1, 1);
        let t = CurrentTerm::new(f.clone(), SupportKind::Point, MultiIndex::new(vec![1]), FormIndex::empty(1), Poly::one(0));
        let r = t.times_transverse(0).unwrap();
        assert_eq!(r.alpha, MultiIndex::new(vec![0]));
        assert_eq!(r.q, Poly::constant(0, rat(-1)));
        let t0 = CurrentTerm::new(f, SupportKind::Point, MultiIndex::new(vec![0]), FormIndex::empty(1), Poly::one(0));
        assert!(t0.times_transverse(0).is_none());
    }
}
