//! The chain map `E` from simplicial chains to currents, the skeleton-by-skeleton
//! retraction of closed currents onto its image, and de Rham cohomology ranks.

use std::collections::{BTreeMap, HashMap};

use num::{One, Zero};

use crate::algebra::{FormIndex, MultiIndex, Poly, Rat, RatMatrix};
use crate::current::frame::canonical_simplex_frame;
use crate::current::term::pullback_form;
use crate::current::{d, dual_term, Current, CurrentTerm, Frame, SupportKind};
use crate::error::{Error, Result};
use crate::simplicial::{frame_through, Chain, SimplicialComplex};
use crate::solvers::retract_on_simplex;

/// `ε(k) = (−1)^{k(k+1)/2}`: the sign relating an oriented simplex of
/// codimension `k` to the dual current of an orientation-consistent frame.
pub fn codimension_sign(k: usize) -> Rat {
    if (k * (k + 1) / 2) % 2 == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// `E` of a single oriented simplex realized by `frame` (vertex order = orientation).
pub fn simplex_current(frame: &Frame, period: Option<&[Rat]>) -> Current {
    let mut sign = codimension_sign(frame.m());
    if frame.det_sign() < 0 {
        sign = -sign;
    }
    Current::from_terms(frame.n(), vec![dual_term(frame).scaled(&sign)], period.map(<[Rat]>::to_vec))
}

fn ambient_dim(x: &SimplicialComplex) -> Result<usize> {
    x.ambient_dim().ok_or(Error::Unrealized(x.simplices().next().map_or(0, |s| s.id)))
}

/// `E(Σ c_j S_j) = Σ c_j E(S_j)`.
#[allow(non_snake_case)]
pub fn E(c: &Chain, x: &SimplicialComplex) -> Result<Current> {
    let n = ambient_dim(x)?;
    let mut out = Current::zero_periodic(n, x.period().map(<[Rat]>::to_vec));
    for (id, coeff) in &c.coeffs {
        let s = x.simplex(*id)?;
        let frame = s.frame.as_ref().ok_or(Error::Unrealized(*id))?;
        if s.dim != c.dim {
            return Err(Error::InvalidInput(format!("simplex {id} is not of dimension {}", c.dim)));
        }
        out = out.add(&simplex_current(frame, x.period()).scale(coeff));
    }
    Ok(out)
}

/// `d(D(S_p)) = E(∂S_p)` on the model simplex of `ℝ^n`, faces with induced orientations.
pub fn verify_boundary_identity(p: usize, n: usize) -> bool {
    if p == 0 || p > n {
        return false;
    }
    let model = Frame::identity(n, n - p);
    let vertices = model.simplex_vertices();
    let mut rhs = Current::zero(n);
    for r in 0..=p {
        let mut face = vertices.clone();
        face.remove(r);
        let e = simplex_current(&frame_through(&face), None);
        rhs = if r % 2 == 0 { rhs.add(&e) } else { rhs.sub(&e) };
    }
    d(&simplex_current(&model, None)) == rhs
}

/// `d(E(c)) = E(∂c)`.
pub fn chain_map_check(c: &Chain, x: &SimplicialComplex) -> Result<bool> {
    Ok(d(&E(c, x)?) == E(&x.boundary(c)?, x)?)
}

/// Index from the canonical frame of each realized simplex to its id.
pub struct SupportIndex {
    by_frame: HashMap<Frame, usize>,
    period: Option<Vec<Rat>>,
}

impl SupportIndex {
    pub fn new(x: &SimplicialComplex) -> Result<Self> {
        let mut by_frame = HashMap::new();
        for s in x.simplices() {
            let frame = s.frame.as_ref().ok_or(Error::Unrealized(s.id))?;
            let (canonical, _) = canonical_simplex_frame(&frame.simplex_vertices(), x.period());
            if by_frame.insert(canonical, s.id).is_some() {
                return Err(Error::InvalidInput(format!("simplex {} duplicates the support of another simplex", s.id)));
            }
        }
        Ok(SupportIndex { by_frame, period: x.period().map(<[Rat]>::to_vec) })
    }

    /// The simplex whose interior carries `term`.
    pub fn simplex_of(&self, term: &CurrentTerm) -> Result<usize> {
        if term.kind == SupportKind::Plane {
            return Err(Error::NotAttributable("plane-supported term".into()));
        }
        let (canonical, _) = canonical_simplex_frame(&term.frame.simplex_vertices(), self.period.as_deref());
        self.by_frame
            .get(&canonical)
            .copied()
            .ok_or_else(|| Error::NotAttributable(format!("support with vertices {:?}", term.frame.simplex_vertices())))
    }
}

/// Splits the terms of `u` supported on `j`-dimensional simplices by simplex;
/// lower-dimensional terms are returned separately.
pub fn split_by_support(u: &Current, index: &SupportIndex, j: usize) -> Result<(BTreeMap<usize, Current>, Current)> {
    let mut groups: BTreeMap<usize, Vec<CurrentTerm>> = BTreeMap::new();
    let mut lower = Vec::new();
    for t in u.terms() {
        let dim = t.p();
        if dim > j {
            return Err(Error::SupportViolation(format!("term of support dimension {dim} above the {j}-skeleton")));
        }
        if dim == j {
            groups.entry(index.simplex_of(t)?).or_default().push(t.clone());
        } else {
            lower.push(t.clone());
        }
    }
    let period = u.period().map(<[Rat]>::to_vec);
    let groups = groups.into_iter().map(|(id, ts)| (id, Current::from_terms(u.n(), ts, period.clone()))).collect();
    Ok((groups, Current::from_terms(u.n(), lower, period)))
}

/// One local retraction performed by [`global_retract`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub level: usize,
    pub simplex: usize,
    pub coefficient: Rat,
    pub v_terms: usize,
}

/// `u = E(c) + dv` with `∂c = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetractionCertificate {
    pub c: Chain,
    pub v: Current,
    pub stages: Vec<Stage>,
}

/// Sign `e` with `E(S) = e · D(canonical frame of S)`.
fn orientation_of(frame: &Frame, period: Option<&[Rat]>) -> Rat {
    let e = simplex_current(frame, period);
    e.terms()[0].q.as_constant().expect("constant coefficient")
}

/// Retracts a closed `k`-current supported on the simplices of `x` onto
/// `E(c)` skeleton by skeleton, from the top dimension down.
pub fn global_retract(u: &Current, x: &SimplicialComplex, k: usize) -> Result<RetractionCertificate> {
    let n = ambient_dim(x)?;
    if u.n() != n {
        return Err(Error::DimensionMismatch(format!("current on R^{} for a complex in R^{n}", u.n())));
    }
    if let Some(deg) = u.degree() {
        if deg != k {
            return Err(Error::DegreeMismatch(format!("expected a {k}-current, got degree {deg}")));
        }
    }
    if k > n || n - k > x.dim() {
        return Err(Error::DegreeMismatch(format!("no {}-chains for {k}-currents", n.saturating_sub(k))));
    }
    let period = x.period().map(<[Rat]>::to_vec);
    let u = u.with_period(period.clone());
    if !d(&u).is_zero() {
        return Err(Error::NotClosed("du ≠ 0".into()));
    }
    let index = SupportIndex::new(x)?;
    let dual = n - k;
    let mut rest = u.clone();
    let mut v = Current::zero_periodic(n, period.clone());
    let mut c = Chain::zero(dual);
    let mut stages = Vec::new();
    for level in (0..=x.dim()).rev() {
        let (groups, lower) = split_by_support(&rest, &index, level)?;
        rest = lower;
        for (id, piece) in groups {
            let frame = x.simplex(id)?.frame.clone().ok_or(Error::Unrealized(id))?;
            let step = retract_on_simplex(&piece, &frame)?;
            if !step.c.is_zero() {
                if level != dual {
                    return Err(Error::CoefficientBelowDualDimension(id));
                }
                c.add_to(id, &(&step.c / orientation_of(&frame, x.period())));
            }
            stages.push(Stage { level, simplex: id, coefficient: step.c.clone(), v_terms: step.v.terms().len() });
            v = v.add(&step.v);
            rest = rest.add(&step.remainder);
        }
    }
    if !rest.is_zero() {
        return Err(Error::Verification("retraction left a nonzero remainder".into()));
    }
    if !x.boundary(&c)?.is_zero() {
        return Err(Error::Verification("extracted chain is not a cycle".into()));
    }
    if E(&c, x)?.add(&d(&v)) != u {
        return Err(Error::Verification("u ≠ E(c) + dv".into()));
    }
    Ok(RetractionCertificate { c, v, stages })
}

/// A chain `c′` with `∂c′ = c`, if `c` bounds (over ℚ).
pub fn exactness_witness(c: &Chain, x: &SimplicialComplex) -> Result<Option<Chain>> {
    if !x.boundary(c)?.is_zero() {
        return Err(Error::NotACycle);
    }
    let p = c.dim;
    if c.is_zero() {
        return Ok(Some(Chain::zero(p + 1)));
    }
    if p + 1 > x.dim() {
        return Ok(None);
    }
    let rows = x.ids_of_dim(p);
    let cols = x.ids_of_dim(p + 1);
    let b: Vec<Rat> = rows.iter().map(|id| c.coeffs.get(id).cloned().unwrap_or_else(Rat::zero)).collect();
    Ok(x.boundary_matrix(p + 1).solve(&b).map(|sol| Chain::from_pairs(p + 1, cols.into_iter().zip(sol))))
}

/// The constant form `dx^K` as a sum of `χ(σ) dx^K` over the top simplices of a torus.
pub fn constant_form_current(x: &SimplicialComplex, form: &FormIndex) -> Result<Current> {
    let n = ambient_dim(x)?;
    let mut terms = Vec::new();
    for id in x.ids_of_dim(n) {
        let frame = x.simplex(id)?.frame.clone().ok_or(Error::Unrealized(id))?;
        for (k, coeff) in pullback_form(form, frame.matrix()) {
            terms.push(CurrentTerm::new(frame.clone(), SupportKind::Simplex, MultiIndex::zeros(0), k, Poly::constant(n, coeff)));
        }
    }
    Ok(Current::from_terms(n, terms, x.period().map(<[Rat]>::to_vec)))
}

fn chain_vector(c: &Chain, ids: &[usize]) -> Vec<Rat> {
    ids.iter().map(|id| c.coeffs.get(id).cloned().unwrap_or_else(Rat::zero)).collect()
}

/// Rank of degree-`k` distributional de Rham cohomology of a realized closed
/// complex: closed currents `E(z)` for a cycle basis and the constant forms are
/// retracted, and the resulting chains are counted modulo boundaries.
pub fn derham_cohomology(x: &SimplicialComplex, k: usize) -> Result<usize> {
    let n = ambient_dim(x)?;
    if k > n || n - k > x.dim() {
        return Ok(0);
    }
    let p = n - k;
    let ids = x.ids_of_dim(p);
    let mut spanning: Vec<Current> = x
        .boundary_matrix(p)
        .nullspace()
        .into_iter()
        .map(|z| E(&Chain::from_pairs(p, ids.iter().copied().zip(z)), x))
        .collect::<Result<_>>()?;
    if n == x.dim() && x.period().is_some() {
        for mask in 0u32..(1 << n) {
            let indices: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            if indices.len() == k {
                spanning.push(constant_form_current(x, &FormIndex::new(n, indices)?)?);
            }
        }
    }
    let mut columns: Vec<Vec<Rat>> = Vec::new();
    for u in &spanning {
        columns.push(chain_vector(&global_retract(u, x, k)?.c, &ids));
    }
    let boundaries = if p < x.dim() { x.boundary_matrix(p + 1) } else { RatMatrix::zeros(ids.len(), 0) };
    let rank_b = boundaries.rank();
    let mut all = boundaries.transpose().to_rows();
    all.extend(columns);
    if all.is_empty() {
        return Ok(0);
    }
    Ok(RatMatrix::from_rows(all).rank() - rank_b)
}
