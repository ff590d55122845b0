//! Oriented Δ-complexes with affine realizations, chains, boundary and homology.

mod generators;
mod io;
mod snf;

use std::collections::BTreeMap;

use num::{BigInt, Zero};

use crate::algebra::{Rat, RatMatrix};
use crate::current::Frame;
use crate::error::{Error, Result};

pub use generators::{frame_through, from_facets, make_projective_plane, make_sphere, make_torus};
pub use io::{complex_from_json, complex_to_json};
pub use snf::{smith_normal_form, HomologyGroup, HomologyResult};

/// A cell with ordered, signed faces and an optional affine realization whose
/// parameter order of vertices agrees with the orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    pub id: usize,
    pub dim: usize,
    pub faces: Vec<(usize, i32)>,
    pub frame: Option<Frame>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    dim: usize,
    period: Option<Vec<Rat>>,
    simplices: BTreeMap<usize, Simplex>,
}

/// A finite formal sum of `p`-simplices with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub dim: usize,
    pub coeffs: BTreeMap<usize, Rat>,
}

impl Chain {
    pub fn zero(dim: usize) -> Self {
        Chain { dim, coeffs: BTreeMap::new() }
    }

    pub fn from_pairs(dim: usize, pairs: impl IntoIterator<Item = (usize, Rat)>) -> Self {
        let mut c = Chain::zero(dim);
        for (id, x) in pairs {
            c.add_to(id, &x);
        }
        c
    }

    pub fn add_to(&mut self, id: usize, x: &Rat) {
        let slot = self.coeffs.entry(id).or_insert_with(Rat::zero);
        *slot += x;
        if slot.is_zero() {
            self.coeffs.remove(&id);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Chain) -> Chain {
        let mut out = self.clone();
        for (id, x) in &other.coeffs {
            out.add_to(*id, x);
        }
        out
    }

    pub fn scale(&self, x: &Rat) -> Chain {
        Chain::from_pairs(self.dim, self.coeffs.iter().map(|(id, c)| (*id, c * x)))
    }
}

impl SimplicialComplex {
    /// Builds a complex, checking face references, dimensions and `∂∘∂ = 0`.
    pub fn new(dim: usize, period: Option<Vec<Rat>>, simplices: Vec<Simplex>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for s in simplices {
            if s.dim > dim {
                return Err(Error::InvalidInput(format!("simplex {} of dimension {} exceeds {dim}", s.id, s.dim)));
            }
            if map.insert(s.id, s).is_some() {
                return Err(Error::InvalidInput("duplicate simplex id".into()));
            }
        }
        for s in map.values() {
            if s.dim == 0 && !s.faces.is_empty() {
                return Err(Error::InvalidInput(format!("vertex {} has faces", s.id)));
            }
            for &(f, sign) in &s.faces {
                match map.get(&f) {
                    Some(face) if face.dim + 1 == s.dim && sign.abs() == 1 => {}
                    Some(_) => return Err(Error::InvalidInput(format!("bad face {f} of simplex {}", s.id))),
                    None => return Err(Error::DanglingSimplex(f)),
                }
            }
        }
        let x = SimplicialComplex { dim, period, simplices: map };
        for p in 2..=dim {
            let dd = x.boundary_matrix(p - 1).mul(&x.boundary_matrix(p));
            if !dd.is_zero() {
                return Err(Error::InvalidInput(format!("∂∘∂ ≠ 0 in dimension {p}")));
            }
        }
        Ok(x)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn period(&self) -> Option<&[Rat]> {
        self.period.as_deref()
    }

    /// Ambient dimension of the realization, if any simplex is realized.
    pub fn ambient_dim(&self) -> Option<usize> {
        self.simplices.values().find_map(|s| s.frame.as_ref().map(Frame::n))
    }

    pub fn simplex(&self, id: usize) -> Result<&Simplex> {
        self.simplices.get(&id).ok_or(Error::DanglingSimplex(id))
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.values()
    }

    /// Ids of the `p`-simplices in increasing order.
    pub fn ids_of_dim(&self, p: usize) -> Vec<usize> {
        self.simplices.values().filter(|s| s.dim == p).map(|s| s.id).collect()
    }

    pub fn count(&self, p: usize) -> usize {
        self.simplices.values().filter(|s| s.dim == p).count()
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.dim).map(|p| if p % 2 == 0 { self.count(p) as i64 } else { -(self.count(p) as i64) }).sum()
    }

    /// All simplices of dimension at most `j`.
    pub fn skeleton(&self, j: usize) -> Result<Vec<usize>> {
        if j > self.dim {
            return Err(Error::InvalidInput(format!("skeleton {j} of a {}-complex", self.dim)));
        }
        Ok(self.simplices.values().filter(|s| s.dim <= j).map(|s| s.id).collect())
    }

    /// Simplicial boundary from the stored incidence signs.
    pub fn boundary(&self, c: &Chain) -> Result<Chain> {
        let mut out = Chain::zero(c.dim.saturating_sub(1));
        for (id, x) in &c.coeffs {
            let s = self.simplex(*id)?;
            if s.dim != c.dim {
                return Err(Error::InvalidInput(format!("simplex {id} is not of dimension {}", c.dim)));
            }
            for &(f, sign) in &s.faces {
                out.add_to(f, &(x * Rat::from_integer(sign.into())));
            }
        }
        Ok(out)
    }

    /// Matrix of `∂_p` with rows indexed by `(p−1)`-simplices and columns by `p`-simplices.
    pub fn boundary_matrix(&self, p: usize) -> RatMatrix {
        let cols = self.ids_of_dim(p);
        if p == 0 {
            return RatMatrix::zeros(0, cols.len());
        }
        let rows = self.ids_of_dim(p - 1);
        let index: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(i, id)| (*id, i)).collect();
        let mut m = RatMatrix::zeros(rows.len(), cols.len());
        for (j, id) in cols.iter().enumerate() {
            for &(f, sign) in &self.simplices[id].faces {
                let i = index[&f];
                let v = m.get(i, j) + Rat::from_integer(sign.into());
                m.set(i, j, v);
            }
        }
        m
    }

    /// Integer version of [`boundary_matrix`](Self::boundary_matrix).
    pub fn integer_boundary_matrix(&self, p: usize) -> Vec<Vec<BigInt>> {
        let m = self.boundary_matrix(p);
        (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_integer()).collect()).collect()
    }

    /// True iff every `(n−1)`-simplex is a face of exactly two `n`-simplices
    /// with opposite incidence signs.
    pub fn validate_oriented(&self) -> bool {
        if self.dim == 0 {
            return false;
        }
        let mut incidences: BTreeMap<usize, Vec<i32>> =
            self.ids_of_dim(self.dim - 1).into_iter().map(|id| (id, Vec::new())).collect();
        for s in self.simplices.values().filter(|s| s.dim == self.dim) {
            for &(f, sign) in &s.faces {
                incidences.entry(f).or_default().push(sign);
            }
        }
        incidences.values().all(|signs| signs.len() == 2 && signs[0] + signs[1] == 0)
    }

    /// The fundamental cycle: all top simplices with coefficient one.
    pub fn fundamental_chain(&self) -> Chain {
        Chain::from_pairs(self.dim, self.ids_of_dim(self.dim).into_iter().map(|id| (id, Rat::from_integer(1.into()))))
    }

    pub fn homology(&self) -> HomologyResult {
        snf::homology(self)
    }

    /// Betti numbers from ranks over ℚ.
    pub fn rational_betti(&self) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=self.dim + 1)
            .map(|p| if p == 0 || p > self.dim { 0 } else { self.boundary_matrix(p).rank() })
            .collect();
        (0..=self.dim).map(|p| self.count(p) - ranks[p] - ranks[p + 1]).collect()
    }
}
