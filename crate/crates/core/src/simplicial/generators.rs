//! Test manifolds: flat tori, boundaries of simplices, the projective plane,
//! and complexes assembled from lists of facets.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num::{One, Zero};

use super::{Simplex, SimplicialComplex};
use crate::algebra::{Rat, RatMatrix};
use crate::current::frame::complete_with_standard_basis;
use crate::current::Frame;
use crate::error::{Error, Result};

/// Frame whose parameter order of vertices is `vertices` (first vertex at the origin).
pub fn frame_through(vertices: &[Vec<Rat>]) -> Frame {
    let n = vertices[0].len();
    let origin = &vertices[0];
    let edges: Vec<Vec<Rat>> = vertices[1..].iter().map(|v| v.iter().zip(origin).map(|(x, o)| x - o).collect()).collect();
    let mut cols: Vec<Vec<Rat>> = complete_with_standard_basis(&edges, n)
        .into_iter()
        .map(|i| {
            let mut e = vec![Rat::zero(); n];
            e[i] = Rat::one();
            e
        })
        .collect();
    let m = cols.len();
    cols.extend(edges);
    Frame::new(RatMatrix::from_columns(&cols), origin.clone(), m).expect("affinely independent vertices")
}

/// Reverses the orientation of a top simplex: negated incidences, first two vertices swapped.
fn flip(s: &mut Simplex, vertices: &mut [Vec<Rat>]) {
    for f in &mut s.faces {
        f.1 = -f.1;
    }
    if vertices.len() >= 2 {
        vertices.swap(0, 1);
    }
}

/// Freudenthal triangulation of `(ℝ/kℤ)^n`: the cube at base point `b` is cut
/// into the `n!` simplices `b < b + e_{π(1)} < … < b + 1`. A cell is keyed by its
/// base point modulo `k` and its strictly nested chain of nonempty coordinate sets.
pub fn make_torus(n: usize, k: usize) -> Result<SimplicialComplex> {
    if !(1..=3).contains(&n) || k == 0 {
        return Err(Error::InvalidInput(format!("torus of dimension {n} with grid size {k} is not supported")));
    }
    type Key = (Vec<usize>, Vec<Vec<usize>>);
    fn chains(n: usize, last: &[usize], len: usize, out: &mut Vec<Vec<Vec<usize>>>, acc: &mut Vec<Vec<usize>>) {
        if acc.len() == len {
            out.push(acc.clone());
            return;
        }
        for mask in 1u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            if set.len() > last.len() && last.iter().all(|x| set.contains(x)) {
                acc.push(set.clone());
                chains(n, &set, len, out, acc);
                acc.pop();
            }
        }
    }
    let bases: Vec<Vec<usize>> = (0..k.pow(n as u32))
        .map(|mut idx| {
            (0..n)
                .map(|_| {
                    let c = idx % k;
                    idx /= k;
                    c
                })
                .collect::<Vec<_>>()
                .into_iter()
                .rev()
                .collect()
        })
        .collect();
    let mut ids: BTreeMap<Key, usize> = BTreeMap::new();
    let mut cells: Vec<Vec<Key>> = vec![Vec::new(); n + 1];
    for p in 0..=n {
        let mut subsets = Vec::new();
        chains(n, &[], p, &mut subsets, &mut Vec::new());
        for b in &bases {
            for s in &subsets {
                cells[p].push((b.clone(), s.clone()));
            }
        }
        cells[p].sort();
        for key in &cells[p] {
            let next = ids.len();
            ids.insert(key.clone(), next);
        }
    }
    let kk = Rat::from_integer(k.into());
    let vertex_coords = |key: &Key| -> Vec<Vec<Rat>> {
        let mut out = vec![key.0.iter().map(|&x| Rat::from_integer(x.into())).collect::<Vec<_>>()];
        for s in &key.1 {
            out.push((0..n).map(|i| Rat::from_integer((key.0[i] + usize::from(s.contains(&i))).into())).collect());
        }
        out
    };
    let mut simplices = Vec::new();
    for (p, level) in cells.iter().enumerate() {
        for key in level {
            let (b, s) = key;
            let mut faces = Vec::new();
            for i in 0..=p {
                if p == 0 {
                    break;
                }
                let face: Key = if i == 0 {
                    let first = &s[0];
                    let nb = (0..n).map(|c| (b[c] + usize::from(first.contains(&c))) % k).collect();
                    let rest = s[1..].iter().map(|t| t.iter().copied().filter(|x| !first.contains(x)).collect()).collect();
                    (nb, rest)
                } else {
                    let mut rest = s.clone();
                    rest.remove(i - 1);
                    (b.clone(), rest)
                };
                faces.push((ids[&face], if i % 2 == 0 { 1 } else { -1 }));
            }
            let mut simplex = Simplex { id: ids[key], dim: p, faces, frame: None };
            let mut vertices = vertex_coords(key);
            if p == n && n > 0 {
                let edges: Vec<Vec<Rat>> =
                    vertices[1..].iter().map(|v| v.iter().zip(&vertices[0]).map(|(x, o)| x - o).collect()).collect();
                if RatMatrix::from_columns(&edges).det() < Rat::zero() {
                    flip(&mut simplex, &mut vertices);
                }
            }
            simplex.frame = Some(frame_through(&vertices));
            simplices.push(simplex);
        }
    }
    SimplicialComplex::new(n, Some(vec![kk; n]), simplices)
}

/// Assembles a complex from facets given as vertex lists; every face is the
/// sorted vertex subset with incidence sign `(−1)^i`. Facets are reoriented
/// coherently by breadth-first search when the complex is orientable.
/// `coords` optionally realizes vertex `v` at `coords[v]`.
pub fn from_facets(facets: &[Vec<usize>], coords: Option<&[Vec<Rat>]>) -> Result<SimplicialComplex> {
    let dim = facets.first().map(|f| f.len() - 1).ok_or_else(|| Error::InvalidInput("no facets".into()))?;
    let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in facets {
        if f.len() != dim + 1 {
            return Err(Error::InvalidInput("facets of different dimensions".into()));
        }
        let mut f = f.clone();
        f.sort_unstable();
        let len = f.len();
        for mask in 1u64..(1 << len) {
            all.insert((0..len).filter(|i| mask & (1 << i) != 0).map(|i| f[i]).collect());
        }
    }
    let mut ordered: Vec<Vec<usize>> = all.into_iter().collect();
    ordered.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    let ids: BTreeMap<Vec<usize>, usize> = ordered.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let mut simplices: Vec<Simplex> = ordered
        .iter()
        .map(|s| {
            let faces = if s.len() == 1 {
                Vec::new()
            } else {
                (0..s.len())
                    .map(|i| {
                        let mut f = s.clone();
                        f.remove(i);
                        (ids[&f], if i % 2 == 0 { 1 } else { -1 })
                    })
                    .collect()
            };
            Simplex { id: ids[s], dim: s.len() - 1, faces, frame: None }
        })
        .collect();
    let flips = coherent_flips(&simplices, dim);
    for s in &mut simplices {
        let mut vertices: Vec<Vec<Rat>> = match coords {
            Some(c) => ordered[s.id].iter().map(|&v| c[v].clone()).collect(),
            None => Vec::new(),
        };
        if flips.contains(&s.id) {
            flip(s, &mut vertices);
        }
        if coords.is_some() {
            s.frame = Some(frame_through(&vertices));
        }
    }
    SimplicialComplex::new(dim, None, simplices)
}

/// Top simplices to flip so that shared codimension-one faces receive opposite
/// signs; empty when no coherent choice exists.
fn coherent_flips(simplices: &[Simplex], dim: usize) -> BTreeSet<usize> {
    let tops: Vec<&Simplex> = simplices.iter().filter(|s| s.dim == dim).collect();
    let mut by_face: BTreeMap<usize, Vec<(usize, i32)>> = BTreeMap::new();
    for s in &tops {
        for &(f, sign) in &s.faces {
            by_face.entry(f).or_default().push((s.id, sign));
        }
    }
    let mut orientation: BTreeMap<usize, i32> = BTreeMap::new();
    for start in &tops {
        if orientation.contains_key(&start.id) {
            continue;
        }
        orientation.insert(start.id, 1);
        let mut queue = VecDeque::from([start.id]);
        while let Some(id) = queue.pop_front() {
            let o = orientation[&id];
            let s = simplices.iter().find(|s| s.id == id).expect("top simplex");
            for &(f, sign) in &s.faces {
                for &(other, other_sign) in &by_face[&f] {
                    if other == id {
                        continue;
                    }
                    let wanted = -o * sign * other_sign;
                    match orientation.get(&other) {
                        Some(&existing) if existing != wanted => return BTreeSet::new(),
                        Some(_) => {}
                        None => {
                            orientation.insert(other, wanted);
                            queue.push_back(other);
                        }
                    }
                }
            }
        }
    }
    orientation.into_iter().filter(|&(_, o)| o < 0).map(|(id, _)| id).collect()
}

/// `∂Δ_{n+1}` realized in `ℝ^{n+1}` on the vertices `0, e_1, …, e_{n+1}`.
pub fn make_sphere(n: usize) -> Result<SimplicialComplex> {
    if n == 0 {
        return Err(Error::InvalidInput("sphere dimension must be positive".into()));
    }
    let coords: Vec<Vec<Rat>> = (0..=n + 1)
        .map(|v| (0..=n).map(|i| if v == i + 1 { Rat::one() } else { Rat::zero() }).collect())
        .collect();
    let facets: Vec<Vec<usize>> = (0..=n + 1).map(|j| (0..=n + 1).filter(|&v| v != j).collect()).collect();
    from_facets(&facets, Some(&coords))
}

/// The minimal 6-vertex triangulation of `ℝP²` (not realized).
pub fn make_projective_plane() -> SimplicialComplex {
    let facets = [
        [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6],
        [2, 3, 5], [2, 4, 5], [2, 4, 6], [3, 4, 6], [3, 5, 6],
    ];
    let facets: Vec<Vec<usize>> = facets.iter().map(|f| f.iter().map(|v| v - 1).collect()).collect();
    from_facets(&facets, None).expect("valid facets")
}
