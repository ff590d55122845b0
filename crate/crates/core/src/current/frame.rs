//! Rational affine frames identifying a realized support with its standard model.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num::{One, Signed, Zero};

use crate::algebra::{Rat, RatMatrix};
use crate::error::{Error, Result};

/// Affine map `x ↦ A·x + b` from model coordinates `x = (y, z)` to the
/// ambient chart. The first `split` model coordinates are transverse (`y`),
/// the remaining `n − split` are tangential (`z`).
///
/// Frames are shared handles: cloning is cheap and the inverse matrix is cached.
#[derive(Clone)]
pub struct Frame(Arc<FrameData>);

#[derive(PartialEq, Eq, Hash, PartialOrd, Ord)]
struct FrameData {
    a: RatMatrix,
    b: Vec<Rat>,
    split: usize,
    ainv: RatMatrix,
    det_sign: i32,
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Frame {}

impl Hash for Frame {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.a.hash(state);
        self.0.b.hash(state);
        self.0.split.hash(state);
    }
}

impl PartialOrd for Frame {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Frame {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        (&self.0.split, &self.0.a, &self.0.b).cmp(&(&other.0.split, &other.0.a, &other.0.b))
    }
}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Frame").field("a", &self.0.a).field("b", &self.0.b).field("split", &self.0.split).finish()
    }
}

impl Frame {
    /// Builds a frame from an invertible matrix (not checked).
    fn build(a: RatMatrix, b: Vec<Rat>, split: usize) -> Self {
        let ainv = a.inverse().expect("frame matrices are invertible");
        let det_sign = if a.det().is_positive() { 1 } else { -1 };
        Frame(Arc::new(FrameData { a, b, split, ainv, det_sign }))
    }

    pub fn new(a: RatMatrix, b: Vec<Rat>, split: usize) -> Result<Self> {
        let n = b.len();
        if a.rows() != n || a.cols() != n {
            return Err(Error::DimensionMismatch(format!("frame matrix {}x{} with offset of length {n}", a.rows(), a.cols())));
        }
        if split > n {
            return Err(Error::DimensionMismatch(format!("split {split} exceeds dimension {n}")));
        }
        if a.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(Frame::build(a, b, split))
    }

    pub fn identity(n: usize, split: usize) -> Self {
        Frame::build(RatMatrix::identity(n), vec![Rat::zero(); n], split)
    }

    pub fn translation(b: Vec<Rat>, split: usize) -> Self {
        Frame::build(RatMatrix::identity(b.len()), b, split)
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.0.a
    }

    pub fn offset(&self) -> &[Rat] {
        &self.0.b
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.0.b.len()
    }

    /// Number of transverse coordinates.
    pub fn m(&self) -> usize {
        self.0.split
    }

    /// Number of tangential coordinates.
    pub fn p(&self) -> usize {
        self.n() - self.0.split
    }

    pub fn with_split(&self, split: usize) -> Frame {
        assert!(split <= self.n());
        Frame(Arc::new(FrameData {
            a: self.0.a.clone(),
            b: self.0.b.clone(),
            split,
            ainv: self.0.ainv.clone(),
            det_sign: self.0.det_sign,
        }))
    }

    pub fn det_sign(&self) -> i32 {
        self.0.det_sign
    }

    pub fn inverse_matrix(&self) -> &RatMatrix {
        &self.0.ainv
    }

    /// `self ∘ F` where `F(x') = T·x' + t`.
    pub fn compose(&self, t: &RatMatrix, t0: &[Rat], split: usize) -> Frame {
        let a = self.0.a.mul(t);
        let shift = self.0.a.mul_vec(t0);
        let b = self.0.b.iter().zip(&shift).map(|(x, y)| x + y).collect();
        Frame::build(a, b, split)
    }

    /// Pushforward by an ambient affine map `X ↦ M·X + c`.
    pub fn push(&self, m: &RatMatrix, c: &[Rat]) -> Frame {
        let a = m.mul(&self.0.a);
        let mb = m.mul_vec(&self.0.b);
        let b = mb.iter().zip(c).map(|(x, y)| x + y).collect();
        Frame::build(a, b, self.0.split)
    }

    pub fn translated(&self, shift: &[Rat]) -> Frame {
        Frame(Arc::new(FrameData {
            a: self.0.a.clone(),
            b: self.0.b.iter().zip(shift).map(|(x, s)| x + s).collect(),
            split: self.0.split,
            ainv: self.0.ainv.clone(),
            det_sign: self.0.det_sign,
        }))
    }

    /// Ambient image of a model point.
    pub fn apply(&self, x: &[Rat]) -> Vec<Rat> {
        self.0.a.mul_vec(x).iter().zip(&self.0.b).map(|(u, v)| u + v).collect()
    }

    /// Ambient vertices of the model simplex `{y = 0, z ∈ Δ_p}`, in parameter order.
    pub fn simplex_vertices(&self) -> Vec<Vec<Rat>> {
        let n = self.n();
        let mut out = vec![self.0.b.clone()];
        for j in self.0.split..n {
            let mut x = vec![Rat::zero(); n];
            x[j] = Rat::one();
            out.push(self.apply(&x));
        }
        out
    }

    /// Ambient image of model direction `v` (linear part only).
    pub fn push_vector(&self, v: &[Rat]) -> Vec<Rat> {
        self.0.a.mul_vec(v)
    }
}

/// Reduces the lexicographically smallest vertex into the fundamental domain
/// `Π [0, L_i)` and returns the lattice shift that was applied.
pub fn lattice_shift(vertices: &[Vec<Rat>], period: Option<&[Rat]>) -> Vec<Rat> {
    let n = vertices[0].len();
    let Some(period) = period else {
        return vec![Rat::zero(); n];
    };
    let min = vertices.iter().min().expect("at least one vertex");
    min.iter().zip(period).map(|(x, l)| -((x / l).floor() * l)).collect()
}

/// Canonical frame of a geometric simplex: origin at the lexicographically
/// smallest vertex, remaining vertices in decreasing lexicographic order,
/// transverse directions the first standard basis vectors completing the
/// tangent space. Returns the frame and the lattice shift applied to the vertices.
pub fn canonical_simplex_frame(vertices: &[Vec<Rat>], period: Option<&[Rat]>) -> (Frame, Vec<Rat>) {
    let n = vertices[0].len();
    let p = vertices.len() - 1;
    let shift = lattice_shift(vertices, period);
    let mut vs: Vec<Vec<Rat>> =
        vertices.iter().map(|v| v.iter().zip(&shift).map(|(x, s)| x + s).collect()).collect();
    vs.sort();
    let origin = vs[0].clone();
    let mut rest: Vec<Vec<Rat>> = vs[1..].to_vec();
    rest.sort_by(|a, b| b.cmp(a));
    let edges: Vec<Vec<Rat>> = rest.iter().map(|v| v.iter().zip(&origin).map(|(x, o)| x - o).collect()).collect();
    let transverse = complete_with_standard_basis(&edges, n);
    debug_assert_eq!(transverse.len(), n - p);
    let mut cols: Vec<Vec<Rat>> = transverse
        .iter()
        .map(|&i| {
            let mut e = vec![Rat::zero(); n];
            e[i] = Rat::one();
            e
        })
        .collect();
    cols.extend(edges);
    let a = RatMatrix::from_columns(&cols);
    (Frame::build(a, origin, n - p), shift)
}

/// Indices of the first standard basis vectors that, together with `vectors`,
/// span the ambient space.
pub fn complete_with_standard_basis(vectors: &[Vec<Rat>], n: usize) -> Vec<usize> {
    let mut current: Vec<Vec<Rat>> = vectors.to_vec();
    let mut rank = if current.is_empty() { 0 } else { RatMatrix::from_rows(current.clone()).rank() };
    let mut chosen = Vec::new();
    for i in 0..n {
        if rank == n {
            break;
        }
        let mut e = vec![Rat::zero(); n];
        e[i] = Rat::one();
        current.push(e);
        let r = RatMatrix::from_rows(current.clone()).rank();
        if r > rank {
            rank = r;
            chosen.push(i);
        } else {
            current.pop();
        }
    }
    chosen
}

/// Canonical frame of a point: identity matrix, origin reduced into the fundamental domain.
pub fn canonical_point_frame(point: &[Rat], period: Option<&[Rat]>) -> (Frame, Vec<Rat>) {
    let shift = lattice_shift(&[point.to_vec()], period);
    let b = point.iter().zip(&shift).map(|(x, s)| x + s).collect();
    let n = point.len();
    (Frame::build(RatMatrix::identity(n), b, n), shift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn model_simplex_is_canonical() {
        for n in 1..=4 {
            for p in 0..=n {
                let f = Frame::identity(n, n - p);
                let (c, shift) = canonical_simplex_frame(&f.simplex_vertices(), None);
                assert_eq!(c, f, "n={n} p={p}");
                assert!(shift.iter().all(|s| s.is_zero()));
            }
        }
    }

    #[test]
    fn periodic_reduction() {
        let period = v(&[3, 3]);
        let (c, shift) = canonical_simplex_frame(&[v(&[3, 1]), v(&[4, 1])], Some(&period));
        assert_eq!(shift, v(&[-3, 0]));
        assert_eq!(c.offset(), &v(&[0, 1])[..]);
    }

    #[test]
    fn rejects_singular() {
        let a = RatMatrix::from_rows(vec![v(&[1, 1]), v(&[1, 1])]);
        assert_eq!(Frame::new(a, v(&[0, 0]), 1), Err(Error::SingularMatrix));
    }
}
