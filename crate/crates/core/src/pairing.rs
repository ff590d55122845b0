//! Exact pairing of currents with polynomial test forms, `⟨T, ω⟩ = ∫ T ∧ ω`.
//!
//! This is the independent check for every sign in the current calculus:
//! Stokes duality `⟨dT, ω⟩ = (−1)^{k+1} ⟨T, dω⟩` must hold exactly.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::algebra::{wedge, Affine, FormIndex, MultiIndex, Poly, Rat, RatMatrix};
use crate::current::term::pullback_form;
use crate::current::{d, Current, CurrentTerm, Frame, SupportKind};
use crate::error::{Error, Result};

/// A differential form with polynomial coefficients on an `n`-dimensional chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyForm {
    n: usize,
    degree: usize,
    components: BTreeMap<FormIndex, Poly>,
}

impl PolyForm {
    pub fn zero(n: usize, degree: usize) -> Self {
        PolyForm { n, degree, components: BTreeMap::new() }
    }

    pub fn from_components(n: usize, degree: usize, comps: Vec<(FormIndex, Poly)>) -> Result<Self> {
        let mut f = Self::zero(n, degree);
        for (k, q) in comps {
            if k.degree() != degree || k.dim() != n || q.nvars() != n {
                return Err(Error::DegreeMismatch(format!("component {k} does not fit a {degree}-form on R^{n}")));
            }
            f.add_component(k, q);
        }
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &BTreeMap<FormIndex, Poly> {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn add_component(&mut self, k: FormIndex, q: Poly) {
        let slot = self.components.entry(k.clone()).or_insert_with(|| Poly::zero(self.n));
        *slot = &*slot + &q;
        if slot.is_zero() {
            self.components.remove(&k);
        }
    }

    pub fn add(&self, other: &PolyForm) -> PolyForm {
        assert_eq!((self.n, self.degree), (other.n, other.degree));
        let mut out = self.clone();
        for (k, q) in &other.components {
            out.add_component(k.clone(), q.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> PolyForm {
        let mut out = PolyForm::zero(self.n, self.degree);
        for (k, q) in &self.components {
            out.add_component(k.clone(), q.scale(c));
        }
        out
    }

    pub fn d(&self) -> PolyForm {
        let mut out = PolyForm::zero(self.n, self.degree + 1);
        if self.degree >= self.n {
            return out;
        }
        for (k, q) in &self.components {
            for i in 0..self.n {
                let dq = q.partial(i);
                if dq.is_zero() {
                    continue;
                }
                let (s, kk) = wedge(&FormIndex::single(self.n, i), k).expect("same dimension");
                if s != 0 {
                    out.add_component(kk, if s > 0 { dq } else { -&dq });
                }
            }
        }
        out
    }

    /// Pullback along `x ↦ A·x + b`.
    pub fn pullback(&self, a: &RatMatrix, b: &[Rat]) -> PolyForm {
        let subs: Vec<Affine> = (0..self.n).map(|i| Affine { coeffs: a.row(i).to_vec(), constant: b[i].clone() }).collect();
        let mut out = PolyForm::zero(self.n, self.degree);
        for (k, q) in &self.components {
            let qq = q.compose_affine(self.n, &subs);
            for (kk, c) in pullback_form(k, a) {
                out.add_component(kk, qq.scale(&c));
            }
        }
        out
    }

    /// Interior product with a constant vector field.
    pub fn interior(&self, v: &[Rat]) -> PolyForm {
        let mut out = PolyForm::zero(self.n, self.degree.saturating_sub(1));
        for (k, q) in &self.components {
            for (pos, &i) in k.indices().iter().enumerate() {
                if v[i].is_zero() {
                    continue;
                }
                let c = if pos % 2 == 0 { v[i].clone() } else { -v[i].clone() };
                out.add_component(k.removed(i), q.scale(&c));
            }
        }
        out
    }
}

/// Value of a single term against `ω`.
fn pair_term(t: &CurrentTerm, omega: &PolyForm, period: Option<&[Rat]>) -> Result<Rat> {
    let (m, p, n) = (t.m(), t.p(), t.n());
    let pb = omega.pullback(t.frame.matrix(), t.frame.offset());
    // Restriction to the support: y = 0, z ↦ z.
    let restrict: Vec<Affine> = (0..n)
        .map(|i| if i < m { Affine::constant(p, Rat::zero()) } else { Affine::var(p, i - m) })
        .collect();
    let mut total = Rat::zero();
    for (l, g) in pb.components() {
        let (s, _) = wedge(&t.form, l)?;
        if s == 0 {
            continue;
        }
        let mut h = g.clone();
        for i in 0..m {
            for _ in 0..t.alpha.get(i) {
                h = h.partial(i);
            }
        }
        let h = h.compose_affine(p, &restrict);
        let integrand = &t.q * &h;
        let value = match t.kind {
            SupportKind::Point => integrand.as_constant().expect("no tangential variables"),
            SupportKind::Simplex => integrand.integrate_simplex(),
            SupportKind::Plane => match period {
                Some(period) if m == 0 && t.frame == Frame::identity(n, 0) => integrand.integrate_box(period),
                _ => return Err(Error::NonCompact("plane-supported term".into())),
            },
        };
        let value = if s > 0 { value } else { -value };
        total += value;
    }
    let mut total = if t.alpha.order() % 2 == 0 { total } else { -total };
    if t.frame.det_sign() < 0 {
        total = -total;
    }
    Ok(total)
}

/// `⟨T, ω⟩ = ∫ T ∧ ω`. On periodic charts, simplex terms are paired as their
/// compactly supported representatives and chart terms over one fundamental domain.
pub fn pair(t: &Current, omega: &PolyForm) -> Result<Rat> {
    if t.n() != omega.n() {
        return Err(Error::DegreeMismatch(format!("current on R^{} against form on R^{}", t.n(), omega.n())));
    }
    let mut total = Rat::zero();
    for term in t.terms() {
        if term.degree() + omega.degree() != t.n() {
            return Err(Error::DegreeMismatch(format!(
                "{}-current against {}-form in dimension {}",
                term.degree(),
                omega.degree(),
                t.n()
            )));
        }
        total += pair_term(term, omega, t.period())?;
    }
    Ok(total)
}

/// Checks `⟨dT, ω⟩ = (−1)^{k+1} ⟨T, dω⟩` exactly for a `k`-current `T` and an `(n−k−1)`-form `ω`.
pub fn stokes_check(t: &Current, omega: &PolyForm) -> Result<bool> {
    let n = t.n();
    let k = match t.degree() {
        Some(k) => k,
        None if t.is_zero() => return Ok(true),
        None => return Err(Error::DegreeMismatch("current of mixed degree".into())),
    };
    if k + omega.degree() + 1 != n {
        return Err(Error::DegreeMismatch(format!("{k}-current against {}-form in dimension {n}", omega.degree())));
    }
    let lifted = if t.period().is_some() { t.with_period(None) } else { t.clone() };
    let lhs = pair(&d(&lifted), omega)?;
    let rhs = pair(&lifted, &omega.d())?;
    let rhs = if k % 2 == 0 { -rhs } else { rhs };
    Ok(lhs == rhs)
}

/// Convenience: a single-component form `c · x^e dx^K`.
pub fn monomial_form(n: usize, form: FormIndex, exp: Vec<u32>, c: Rat) -> PolyForm {
    let degree = form.degree();
    let mut f = PolyForm::zero(n, degree);
    f.add_component(form, Poly::monomial(MultiIndex::new(exp), c));
    f
}

/// The constant form `dx^K`.
pub fn constant_form(n: usize, form: FormIndex) -> PolyForm {
    let degree = form.degree();
    monomial_form(n, form, vec![0; n], Rat::one())
        .components
        .into_iter()
        .fold(PolyForm::zero(n, degree), |mut acc, (k, q)| {
            acc.add_component(k, q);
            acc
        })
}
