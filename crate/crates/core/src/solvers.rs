//! Constructive exactness solvers: point-supported currents, polynomial forms
//! on a simplex interior, and retraction of currents supported on a simplex.

use num::{One, Signed, Zero};

use crate::algebra::{FormIndex, MultiIndex, Poly, Rat};
use crate::current::frame::canonical_simplex_frame;
use crate::current::{contract_radial_in, d, dual_term, Current, CurrentTerm, Frame, SupportKind};
use crate::error::{Error, Result};
use crate::pairing::PolyForm;

/// `u = c·δ(x)dx_1∧…∧dx_n + dv`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSolution {
    pub c: Rat,
    pub v: Current,
}

/// `u = dv + remainder + c·D(S)`, `v` supported in `S`, `remainder` in `∂S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetractionStep {
    pub c: Rat,
    pub v: Current,
    pub remainder: Current,
}

/// Result of the interior Poincaré lemma.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InteriorSolution {
    /// A closed 0-form is a constant.
    Constant(Rat),
    Primitive(PolyForm),
}

/// Kills every multi-homogeneous component of nonzero degree by the radial
/// homotopy in the first `transverse` model coordinates of `frame`.
/// Returns the primitive and the degree-zero part.
fn homotopy(u: &Current, frame: &Frame, transverse: usize) -> Result<(Current, Current)> {
    let mut v = Current::zero_periodic(u.n(), u.period().map(<[Rat]>::to_vec));
    let mut rest = v.clone();
    let mut groups: std::collections::BTreeMap<Vec<i64>, Current> = std::collections::BTreeMap::new();
    for t in u.terms() {
        for (beta, c) in t.q.terms() {
            let piece = t.with_q(Poly::monomial(beta.clone(), c.clone()));
            let a = crate::current::term_degree(t, beta)[..transverse].to_vec();
            let entry = groups.entry(a).or_insert_with(|| Current::zero_periodic(u.n(), u.period().map(<[Rat]>::to_vec)));
            *entry = entry.add(&Current::from_terms(u.n(), vec![piece], u.period().map(<[Rat]>::to_vec)));
        }
    }
    for (a, part) in groups {
        match a.iter().position(|&x| x != 0) {
            Some(i) => {
                let iota = contract_radial_in(&part, frame, i)?;
                v = v.add(&iota.scale(&(Rat::one() / Rat::from_integer(a[i].into()))));
            }
            None => rest = rest.add(&part),
        }
    }
    Ok((v, rest))
}

/// Point-supported Poincaré lemma.
pub fn solve_point(u: &Current) -> Result<PointSolution> {
    let n = u.n();
    let Some(first) = u.terms().first() else {
        return Ok(PointSolution { c: Rat::zero(), v: u.clone() });
    };
    let frame = first.frame.clone();
    if u.terms().iter().any(|t| t.kind != SupportKind::Point || t.frame != frame) {
        return Err(Error::NotPointSupported("terms are not all supported at one point".into()));
    }
    if !d(u).is_zero() {
        return Err(Error::NotClosed("du ≠ 0".into()));
    }
    let (v, rest) = homotopy(u, &frame, n)?;
    let generator = Current::from_terms(n, vec![dual_term(&frame)], u.period().map(<[Rat]>::to_vec));
    let c = match rest.terms() {
        [] => Rat::zero(),
        [t] if t.key() == generator.terms()[0].key() => t.q.as_constant().expect("no tangential variables"),
        _ => return Err(Error::Verification("degree-zero part is not a multiple of the generator".into())),
    };
    if !u.sub(&generator.scale(&c)).sub(&d(&v)).is_zero() {
        return Err(Error::Verification("u ≠ c·δ dx + dv".into()));
    }
    Ok(PointSolution { c, v })
}

/// Splits `u = dz_j ∧ a + b` and returns `a`.
fn split_off(u: &PolyForm, j: usize) -> PolyForm {
    let mut a = PolyForm::zero(u.n(), u.degree() - 1);
    for (k, q) in u.components() {
        if let Some(pos) = k.position(j) {
            a.add_component(k.removed(j), if pos % 2 == 0 { q.clone() } else { -q });
        }
    }
    a
}

/// Poincaré lemma for closed polynomial forms on `ℝ^p` (in particular on the
/// interior of `Δ_p`), integrating variable by variable from base point 0.
pub fn solve_interior(u: &PolyForm) -> Result<InteriorSolution> {
    if !u.d().is_zero() {
        return Err(Error::NotClosedInInterior);
    }
    if u.degree() == 0 {
        let q = u.components().values().next().cloned().unwrap_or_else(|| Poly::zero(u.n()));
        return match q.as_constant() {
            Some(c) => Ok(InteriorSolution::Constant(c)),
            None if q.is_zero() => Ok(InteriorSolution::Constant(Rat::zero())),
            None => Err(Error::NonconstantZeroForm),
        };
    }
    let mut v = PolyForm::zero(u.n(), u.degree() - 1);
    let mut rest = u.clone();
    for j in 0..u.n() {
        let a = split_off(&rest, j);
        let mut step = PolyForm::zero(u.n(), u.degree() - 1);
        for (k, q) in a.components() {
            step.add_component(k.clone(), q.antiderivative(j));
        }
        rest = rest.add(&step.d().scale(&-Rat::one()));
        v = v.add(&step);
    }
    if !rest.is_zero() || v.d() != *u {
        return Err(Error::Verification("interior primitive does not reproduce u".into()));
    }
    Ok(InteriorSolution::Primitive(v))
}

/// Reads a current on the model simplex `Δ_p ⊂ ℝ^p` (no transverse directions)
/// as a polynomial form on its interior.
pub fn interior_form(u: &Current) -> Result<PolyForm> {
    let p = u.n();
    let model = Frame::identity(p, 0);
    let k = u.degree().unwrap_or(0);
    let mut f = PolyForm::zero(p, k);
    for t in u.terms() {
        if t.frame != model || t.kind == SupportKind::Point || t.degree() != k {
            return Err(Error::SupportViolation("term is not a polynomial form on the model simplex".into()));
        }
        f.add_component(t.form.clone(), t.q.clone());
    }
    Ok(f)
}

/// The current `χ(Δ_p)·f` on the model simplex.
pub fn extend_by_chi(f: &PolyForm) -> Current {
    let frame = Frame::identity(f.n(), 0);
    let terms = f
        .components()
        .iter()
        .map(|(k, q)| CurrentTerm::new(frame.clone(), SupportKind::Simplex, MultiIndex::zeros(0), k.clone(), q.clone()))
        .collect();
    Current::from_terms(f.n(), terms, None)
}

/// Whether the support of `term` lies in the closed simplex of `frame`,
/// up to a lattice translation when `period` is given.
pub fn supported_in_simplex(term: &CurrentTerm, frame: &Frame, period: Option<&[Rat]>) -> bool {
    if term.kind == SupportKind::Plane {
        return false;
    }
    let vertices = term.frame.simplex_vertices();
    let simplex = frame.simplex_vertices();
    let n = frame.n();
    let ainv = frame.inverse_matrix();
    let inside = |shift: &[Rat]| {
        vertices.iter().all(|v| {
            let rel: Vec<Rat> = (0..n).map(|i| &v[i] + &shift[i] - &frame.offset()[i]).collect();
            let x = ainv.mul_vec(&rel);
            let (y, z) = x.split_at(frame.m());
            y.iter().all(Zero::is_zero)
                && z.iter().all(|t| !t.is_negative())
                && z.iter().fold(Rat::zero(), |acc, t| acc + t) <= Rat::one()
        })
    };
    let Some(period) = period else {
        return inside(&vec![Rat::zero(); n]);
    };
    // Candidate lattice shifts move the first vertex into the bounding box of the simplex.
    let mut ranges = Vec::with_capacity(n);
    for i in 0..n {
        let lo = simplex.iter().map(|v| v[i].clone()).min().expect("vertex");
        let hi = simplex.iter().map(|v| v[i].clone()).max().expect("vertex");
        let from = ((lo - &vertices[0][i]) / &period[i]).ceil().to_integer();
        let to = ((hi - &vertices[0][i]) / &period[i]).floor().to_integer();
        ranges.push((from, to));
    }
    let mut shift = vec![Rat::zero(); n];
    fn search(i: usize, ranges: &[(num::BigInt, num::BigInt)], period: &[Rat], shift: &mut Vec<Rat>, f: &dyn Fn(&[Rat]) -> bool) -> bool {
        if i == ranges.len() {
            return f(shift);
        }
        let mut j = ranges[i].0.clone();
        while j <= ranges[i].1 {
            shift[i] = Rat::from_integer(j.clone()) * &period[i];
            if search(i + 1, ranges, period, shift, f) {
                return true;
            }
            j += 1;
        }
        false
    }
    search(0, &ranges, period, &mut shift, &inside)
}

/// Retracts a current supported in the closed simplex of `frame` onto its
/// boundary: `u = dv + remainder + c·D(S)`, `c` measured against the dual
/// current of the canonical frame of `S`.
pub fn retract_on_simplex(u: &Current, frame: &Frame) -> Result<RetractionStep> {
    let n = u.n();
    let period = u.period().map(<[Rat]>::to_vec);
    let (canonical, _) = canonical_simplex_frame(&frame.simplex_vertices(), period.as_deref());
    let (m, p) = (canonical.m(), canonical.p());
    let interior_kind = if p == 0 { SupportKind::Point } else { SupportKind::Simplex };
    let is_interior = |t: &CurrentTerm| t.frame == canonical && t.kind == interior_kind;
    for t in u.terms() {
        if !supported_in_simplex(t, &canonical, period.as_deref()) {
            return Err(Error::SupportViolation(format!("term outside the simplex with vertices {:?}", frame.simplex_vertices())));
        }
    }
    if d(u).terms().iter().any(is_interior) {
        return Err(Error::NotClosedOffBoundary);
    }
    let interior = Current::from_terms(n, u.terms().iter().filter(|t| is_interior(t)).cloned().collect(), period.clone());
    let k = match interior.degree() {
        Some(k) => k,
        None if interior.is_zero() => m,
        None => return Err(Error::DegreeMismatch("current of mixed degree".into())),
    };
    let (mut v, survivors) = homotopy(&interior, &canonical, m)?;
    let mut c = Rat::zero();
    if !survivors.is_zero() {
        let mut tangential = PolyForm::zero(p, k - m);
        for t in survivors.terms() {
            let j = FormIndex::new(p, t.tangential_form()).expect("tangential part");
            tangential.add_component(j, t.q.clone());
        }
        match solve_interior(&tangential).map_err(|_| Error::NotClosedOffBoundary)? {
            InteriorSolution::Constant(value) => c = value,
            InteriorSolution::Primitive(w) => {
                let sign = if m % 2 == 0 { Rat::one() } else { -Rat::one() };
                let terms = w
                    .components()
                    .iter()
                    .map(|(j, q)| {
                        let mut form: Vec<usize> = (0..m).collect();
                        form.extend(j.indices().iter().map(|&i| i + m));
                        let form = FormIndex::new(n, form).expect("distinct");
                        CurrentTerm::new(canonical.clone(), interior_kind, MultiIndex::zeros(m), form, q.scale(&sign))
                    })
                    .collect();
                v = v.add(&Current::from_terms(n, terms, period.clone()));
            }
        }
    }
    let generator = Current::from_terms(n, vec![dual_term(&canonical)], period.clone());
    let remainder = u.sub(&d(&v)).sub(&generator.scale(&c));
    if remainder.terms().iter().any(|t| is_interior(t) || !supported_in_simplex(t, &canonical, period.as_deref())) {
        return Err(Error::Verification("remainder is not supported on the boundary".into()));
    }
    Ok(RetractionStep { c, v, remainder })
}

/// [`retract_on_simplex`] on the model simplex `S_p ⊂ ℝ^n`.
pub fn retract_on_model(u: &Current, p: usize) -> Result<RetractionStep> {
    if p > u.n() {
        return Err(Error::InvalidInput(format!("simplex dimension {p} exceeds ambient dimension {}", u.n())));
    }
    retract_on_simplex(u, &Frame::identity(u.n(), u.n() - p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;
    use crate::current::make_D;

    fn point_term(n: usize, alpha: Vec<u32>, form: Vec<usize>, c: i64) -> Current {
        Current::from_term(CurrentTerm::new(
            Frame::identity(n, n),
            SupportKind::Point,
            MultiIndex::new(alpha),
            FormIndex::new(n, form).unwrap(),
            Poly::constant(0, rat(c)),
        ))
    }

    fn form(p: usize, comps: Vec<(Vec<usize>, Poly)>) -> PolyForm {
        let k = comps.first().map_or(0, |c| c.0.len());
        PolyForm::from_components(p, k, comps.into_iter().map(|(i, q)| (FormIndex::new(p, i).unwrap(), q)).collect()).unwrap()
    }

    #[test]
    fn point_examples() {
        let s = solve_point(&point_term(1, vec![0], vec![0], 1)).unwrap();
        assert_eq!((s.c, s.v.is_zero()), (rat(1), true));
        let s = solve_point(&point_term(1, vec![1], vec![0], 1)).unwrap();
        assert_eq!(s.c, rat(0));
        assert_eq!(s.v, point_term(1, vec![0], vec![], 1));
        let s = solve_point(&Current::zero(2)).unwrap();
        assert!(s.c.is_zero() && s.v.is_zero());
    }

    #[test]
    fn point_errors() {
        assert!(matches!(solve_point(&point_term(2, vec![0, 0], vec![0], 1)), Err(Error::NotClosed(_))));
        assert!(matches!(solve_point(&make_D(1, 1).unwrap()), Err(Error::NotPointSupported(_))));
    }

    #[test]
    fn interior_examples() {
        let v = solve_interior(&form(1, vec![(vec![0], Poly::one(1))])).unwrap();
        assert_eq!(v, InteriorSolution::Primitive(form(1, vec![(vec![], Poly::var(1, 0))])));
        let u = form(2, vec![(vec![0], Poly::var(2, 1)), (vec![1], Poly::var(2, 0))]);
        let v = solve_interior(&u).unwrap();
        assert_eq!(v, InteriorSolution::Primitive(form(2, vec![(vec![], &Poly::var(2, 0) * &Poly::var(2, 1))])));
        let five = form(2, vec![(vec![], Poly::constant(2, rat(5)))]);
        assert_eq!(solve_interior(&five).unwrap(), InteriorSolution::Constant(rat(5)));
    }

    #[test]
    fn interior_errors() {
        let u = form(2, vec![(vec![0], Poly::var(2, 1))]);
        assert_eq!(solve_interior(&u), Err(Error::NotClosedInInterior));
        let u = form(1, vec![(vec![], Poly::var(1, 0))]);
        assert_eq!(solve_interior(&u), Err(Error::NotClosedInInterior));
    }

    #[test]
    fn retraction_examples() {
        for (p, n) in [(0, 1), (1, 1), (1, 2), (2, 3)] {
            let step = retract_on_model(&make_D(p, n).unwrap(), p).unwrap();
            assert_eq!(step.c, rat(1));
            assert!(step.v.is_zero() && step.remainder.is_zero());
        }
        let u = Current::from_term(CurrentTerm::new(
            Frame::identity(2, 1),
            SupportKind::Simplex,
            MultiIndex::new(vec![1]),
            FormIndex::single(2, 0),
            Poly::one(1),
        ));
        let step = retract_on_model(&u, 1).unwrap();
        assert!(step.c.is_zero());
        let chi = Current::from_term(CurrentTerm::new(
            Frame::identity(2, 1),
            SupportKind::Simplex,
            MultiIndex::zeros(1),
            FormIndex::empty(2),
            Poly::one(1),
        ));
        assert_eq!(step.v, chi);
        assert_eq!(step.remainder.max_support_dim(), Some(0));
        assert_eq!(step.remainder.terms().len(), 2);
        assert!(u.sub(&d(&step.v)).sub(&step.remainder).is_zero());
        let zero = retract_on_model(&Current::zero(2), 1).unwrap();
        assert!(zero.c.is_zero() && zero.v.is_zero() && zero.remainder.is_zero());
    }

    #[test]
    fn retraction_errors() {
        // δ(y)dz χ on the model segment is not closed in the interior.
        let u = Current::from_term(CurrentTerm::new(
            Frame::identity(2, 1),
            SupportKind::Simplex,
            MultiIndex::zeros(1),
            FormIndex::single(2, 1),
            Poly::var(1, 0),
        ));
        assert_eq!(retract_on_model(&u, 1).unwrap_err(), Error::NotClosedOffBoundary);
        let far = Current::from_term(CurrentTerm::new(
            Frame::translation(vec![rat(5), rat(0)], 2),
            SupportKind::Point,
            MultiIndex::zeros(2),
            FormIndex::full(2),
            Poly::one(0),
        ));
        assert!(matches!(retract_on_model(&far, 1), Err(Error::SupportViolation(_))));
    }
}
