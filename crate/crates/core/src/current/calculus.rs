//! Term-level calculus: directional derivatives (with boundary terms from
//! the characteristic function), exterior derivative, contraction, and
//! re-expression in a different frame of the same support.

use num::{One, Signed, Zero};

use super::frame::{canonical_point_frame, canonical_simplex_frame, Frame};
use super::term::{pullback_form, CurrentTerm, SupportKind};
use crate::algebra::{wedge, Affine, FormIndex, MultiIndex, Rat, RatMatrix};
use crate::error::{Error, Result};

/// Which codimension-one face of `Δ_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Face {
    /// `{z_j = 0}`.
    Coordinate(usize),
    /// `{Σ z = 1}`.
    Diagonal,
}

/// Change of model coordinates onto a face: returns `(T, t)` with
/// `x_old = T·x_new + t`, where the new coordinates are
/// `(y, normal, remaining tangential)`.
pub fn face_map(m: usize, p: usize, face: Face) -> (RatMatrix, Vec<Rat>) {
    let n = m + p;
    let mut t = RatMatrix::zeros(n, n);
    let mut t0 = vec![Rat::zero(); n];
    for i in 0..m {
        t.set(i, i, Rat::one());
    }
    match face {
        Face::Coordinate(j) => {
            t.set(m + j, m, Rat::one());
            let rest = (0..p).filter(|&r| r != j);
            for (r, old) in rest.enumerate() {
                t.set(m + old, m + 1 + r, Rat::one());
            }
        }
        Face::Diagonal => {
            // z_i = w_i (i < p−1), z_{p−1} = 1 − w_normal − Σ w_i
            for i in 0..p - 1 {
                t.set(m + i, m + 1 + i, Rat::one());
                t.set(m + p - 1, m + 1 + i, -Rat::one());
            }
            t.set(m + p - 1, m, -Rat::one());
            t0[m + p - 1] = Rat::one();
        }
    }
    (t, t0)
}

/// Restriction of `coef · q · δ(normal) · χ_face · (∂^α δ(y)) dx^K` to a face,
/// expressed in the face frame.
fn face_terms(term: &CurrentTerm, face: Face, coef: &Rat) -> Vec<CurrentTerm> {
    let (m, p) = (term.m(), term.p());
    let (t, t0) = face_map(m, p, face);
    let frame = term.frame.compose(&t, &t0, m + 1);
    // Old tangential variables as affine functions of the new tangential ones
    // (the new normal coordinate is set to zero).
    let subs: Vec<Affine> = (0..p)
        .map(|i| Affine {
            coeffs: (0..p - 1).map(|r| t.get(m + i, m + 1 + r).clone()).collect(),
            constant: t0[m + i].clone(),
        })
        .collect();
    let q = term.q.compose_affine(p - 1, &subs).scale(coef);
    if q.is_zero() {
        return Vec::new();
    }
    let alpha = term.alpha.pushed(0);
    let kind = if p == 1 { SupportKind::Point } else { SupportKind::Simplex };
    pullback_form(&term.form, &t)
        .into_iter()
        .map(|(form, c)| CurrentTerm::new(frame.clone(), kind, alpha.clone(), form, q.scale(&c)))
        .collect()
}

/// Directional derivative `∂_v` of the scalar part along a model-coordinate vector `v`.
pub fn partial_model(term: &CurrentTerm, v: &[Rat]) -> Vec<CurrentTerm> {
    let (m, p) = (term.m(), term.p());
    assert_eq!(v.len(), m + p);
    let mut out = Vec::new();
    for (i, vi) in v.iter().enumerate().take(m) {
        if !vi.is_zero() {
            out.push(CurrentTerm { alpha: term.alpha.incremented(i), q: term.q.scale(vi), ..term.clone() });
        }
    }
    if p > 0 {
        let mut dq = crate::algebra::Poly::zero(p);
        for j in 0..p {
            if !v[m + j].is_zero() {
                dq = &dq + &term.q.partial(j).scale(&v[m + j]);
            }
        }
        if !dq.is_zero() {
            out.push(term.with_q(dq));
        }
        if term.kind == SupportKind::Simplex {
            // ∂_j χ(Δ_p) = δ(z_j) χ_face_j − δ(1 − Σz) χ_diag
            let mut diag = Rat::zero();
            for j in 0..p {
                let vj = &v[m + j];
                if !vj.is_zero() {
                    out.extend(face_terms(term, Face::Coordinate(j), vj));
                    diag -= vj;
                }
            }
            if !diag.is_zero() {
                out.extend(face_terms(term, Face::Diagonal, &diag));
            }
        }
    }
    out
}

/// Directional derivative along an ambient vector.
pub fn partial_ambient(term: &CurrentTerm, w: &[Rat]) -> Vec<CurrentTerm> {
    let v = term.frame.inverse_matrix().mul_vec(w);
    partial_model(term, &v)
}

/// `c ∧ term` for an ambient covector `c`.
pub fn wedge_left_ambient(term: &CurrentTerm, c: &[Rat]) -> Vec<CurrentTerm> {
    let gamma = term.frame.matrix().transpose().mul_vec(c);
    let n = term.n();
    let mut out = Vec::new();
    for (l, g) in gamma.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let (s, k) = wedge(&FormIndex::single(n, l), &term.form).expect("same dimension");
        if s == 0 {
            continue;
        }
        let c = if s > 0 { g.clone() } else { -g.clone() };
        out.push(term.with_form(k, term.q.scale(&c)));
    }
    out
}

/// Distributional exterior derivative of one term (not normalized).
pub fn d_term(term: &CurrentTerm) -> Vec<CurrentTerm> {
    let n = term.n();
    let ainv = term.frame.inverse_matrix();
    let mut out = Vec::new();
    for k in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[k] = Rat::one();
        let covector = ainv.row(k).to_vec();
        for t in partial_model(term, &e) {
            if t.frame == term.frame {
                // Same frame: the covector is just dx_k.
                let (s, form) = wedge(&FormIndex::single(n, k), &t.form).expect("same dimension");
                if s != 0 {
                    let q = if s > 0 { t.q.clone() } else { -&t.q };
                    out.push(t.with_form(form, q));
                }
            } else {
                out.extend(wedge_left_ambient(&t, &covector));
            }
        }
    }
    out
}

/// Contraction with the affine vector field `V(X) = (g·X + g0) · w` (ambient data).
pub fn contract_affine_field(term: &CurrentTerm, g: &[Rat], g0: &Rat, w: &[Rat]) -> Vec<CurrentTerm> {
    let a = term.frame.matrix();
    let u = term.frame.inverse_matrix().mul_vec(w);
    let lin = a.transpose().mul_vec(g);
    let constant = g.iter().zip(term.frame.offset()).fold(g0.clone(), |acc, (x, y)| acc + x * y);
    let mut out = Vec::new();
    for (l, ul) in u.iter().enumerate() {
        if ul.is_zero() {
            continue;
        }
        let Some(contracted) = term.interior(l) else { continue };
        let contracted = contracted.scaled(ul);
        if !constant.is_zero() {
            out.push(contracted.scaled(&constant));
        }
        for (r, lr) in lin.iter().enumerate() {
            if lr.is_zero() {
                continue;
            }
            if let Some(t) = contracted.times_coordinate(r) {
                out.push(t.scaled(lr));
            }
        }
    }
    out
}

/// Sums terms with equal keys and drops zeros.
pub fn merge_terms(terms: Vec<CurrentTerm>) -> Vec<CurrentTerm> {
    let mut acc: std::collections::HashMap<super::term::TermKey, crate::algebra::Poly> = std::collections::HashMap::new();
    let mut order = Vec::new();
    for t in terms {
        let key = t.key();
        match acc.get_mut(&key) {
            Some(q) => *q = &*q + &t.q,
            None => {
                order.push(key.clone());
                acc.insert(key, t.q);
            }
        }
    }
    order
        .into_iter()
        .filter_map(|key| {
            let q = acc.remove(&key)?;
            if q.is_zero() {
                return None;
            }
            let (frame, kind, alpha, form) = key;
            Some(CurrentTerm { frame, kind, alpha, form, q })
        })
        .collect()
}

/// Re-expresses `term` in `target`, a frame of the same support.
///
/// Uses `F = Φ_old⁻¹ ∘ Φ_target`, `y_old = M·y_new`,
/// `z_old = Q·y_new + P·z_new + c`: the result is
/// `|det M|⁻¹ · Π_i ∂_{u_i}^{α_i} [q(Pz + c) χ δ(y)] · F^*(dx^K)` where `u_i`
/// is the old transverse direction `i`. Tangential components of `u_i`
/// produce boundary terms on faces of the target, in derived frames.
pub fn reframe(term: &CurrentTerm, target: &Frame) -> Result<Vec<CurrentTerm>> {
    let (m, p, n) = (term.m(), term.p(), term.n());
    if target.m() != m {
        return Err(Error::IncompatibleFrame(format!("transverse dimension {} vs {}", m, target.m())));
    }
    let ainv = term.frame.inverse_matrix();
    let t = ainv.mul(target.matrix());
    let diff: Vec<Rat> = target.offset().iter().zip(term.frame.offset()).map(|(x, y)| x - y).collect();
    let t0 = ainv.mul_vec(&diff);
    if !t.block(0, m, m, n).is_zero() || t0[..m].iter().any(|x| !x.is_zero()) {
        return Err(Error::IncompatibleFrame("frames describe different planes".into()));
    }
    let det_m = t.block(0, m, 0, m).det().abs();
    let subs: Vec<Affine> = (0..p)
        .map(|i| Affine { coeffs: (0..p).map(|j| t.get(m + i, m + j).clone()).collect(), constant: t0[m + i].clone() })
        .collect();
    let r = term.q.compose_affine(p, &subs).scale(&(Rat::one() / det_m));
    let mut terms: Vec<CurrentTerm> = pullback_form(&term.form, &t)
        .into_iter()
        .map(|(form, c)| CurrentTerm::new(target.clone(), term.kind, MultiIndex::zeros(m), form, r.scale(&c)))
        .collect();
    for i in 0..m {
        let direction = term.frame.matrix().column(i);
        for _ in 0..term.alpha.get(i) {
            terms = merge_terms(terms.iter().flat_map(|t| partial_ambient(t, &direction)).collect());
        }
    }
    Ok(terms)
}

/// Canonical frame for the support of `term` (see [`canonical_simplex_frame`]),
/// together with the lattice shift to apply to `term`'s frame first.
pub fn canonical_target(term: &CurrentTerm, period: Option<&[Rat]>) -> Option<(Frame, Vec<Rat>)> {
    match term.kind {
        SupportKind::Plane => None,
        SupportKind::Point => Some(canonical_point_frame(term.frame.offset(), period)),
        SupportKind::Simplex => Some(canonical_simplex_frame(&term.frame.simplex_vertices(), period)),
    }
}

/// Rewrites a term as a sum of terms in canonical frames (recursively
/// canonicalizing boundary terms created by the frame change).
pub fn canonicalize(term: &CurrentTerm, period: Option<&[Rat]>, out: &mut Vec<CurrentTerm>) {
    let Some((target, shift)) = canonical_target(term, period) else {
        out.push(term.clone());
        return;
    };
    let shifted = CurrentTerm { frame: term.frame.translated(&shift), ..term.clone() };
    if shifted.frame == target {
        out.push(shifted);
        return;
    }
    let pieces = reframe(&shifted, &target).expect("canonical frame shares the support plane");
    for piece in pieces {
        if piece.frame == target {
            out.push(piece);
        } else {
            canonicalize(&piece, period, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn face_maps_are_unimodular() {
        for p in 1..=4 {
            for m in 0..=2 {
                for j in 0..p {
                    assert_eq!(face_map(m, p, Face::Coordinate(j)).0.det().abs(), Rat::one());
                }
                assert_eq!(face_map(m, p, Face::Diagonal).0.det().abs(), Rat::one());
            }
        }
    }
}
