//! Multi-indices (derivative orders, monomial exponents) and form indices.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A fixed-length vector of non-negative integers.
///
/// Ordered graded-lexicographically: total order first, then entries from
/// the first coordinate on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn zeros(len: usize) -> Self {
        MultiIndex(vec![0; len])
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut e = vec![0; len];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// |α|
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn incremented(&self, i: usize) -> MultiIndex {
        let mut e = self.0.clone();
        e[i] += 1;
        MultiIndex(e)
    }

    /// `None` when entry `i` is already zero.
    pub fn decremented(&self, i: usize) -> Option<MultiIndex> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(MultiIndex(e))
    }

    pub fn with_set(&self, i: usize, v: u32) -> MultiIndex {
        let mut e = self.0.clone();
        e[i] = v;
        MultiIndex(e)
    }

    pub fn removed(&self, i: usize) -> MultiIndex {
        let mut e = self.0.clone();
        e.remove(i);
        MultiIndex(e)
    }

    pub fn pushed(&self, v: u32) -> MultiIndex {
        let mut e = self.0.clone();
        e.push(v);
        MultiIndex(e)
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.order().cmp(&other.order()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A strictly increasing set of coordinate indices in `0..dim`, i.e. the
/// basis form `dx^I`. Displayed 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormIndex {
    dim: usize,
    indices: Vec<usize>,
}

impl FormIndex {
    pub fn new(dim: usize, mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(format!("repeated form index in {indices:?}")));
        }
        if indices.iter().any(|&i| i >= dim) {
            return Err(Error::DimensionMismatch(format!(
                "form index {indices:?} out of range for dimension {dim}"
            )));
        }
        Ok(FormIndex { dim, indices })
    }

    pub fn empty(dim: usize) -> Self {
        FormIndex { dim, indices: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        FormIndex { dim, indices: (0..dim).collect() }
    }

    pub fn single(dim: usize, i: usize) -> Self {
        assert!(i < dim);
        FormIndex { dim, indices: vec![i] }
    }

    pub fn range(dim: usize, r: std::ops::Range<usize>) -> Self {
        FormIndex { dim, indices: r.collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    /// Position of `i` within the index list, if present.
    pub fn position(&self, i: usize) -> Option<usize> {
        self.indices.binary_search(&i).ok()
    }

    pub fn removed(&self, i: usize) -> FormIndex {
        FormIndex { dim: self.dim, indices: self.indices.iter().copied().filter(|&j| j != i).collect() }
    }

    /// The complementary index set.
    pub fn complement(&self) -> FormIndex {
        FormIndex { dim: self.dim, indices: (0..self.dim).filter(|i| !self.contains(*i)).collect() }
    }

    /// Re-embeds into a larger or smaller coordinate set via `map` (old index → new index).
    pub fn remap(&self, dim: usize, map: impl Fn(usize) -> usize) -> Result<FormIndex> {
        FormIndex::new(dim, self.indices.iter().map(|&i| map(i)).collect())
    }
}

/// Exterior product of basis forms: `dx^I ∧ dx^J = sign · dx^K`.
///
/// Returns sign 0 and the empty index when the factors share an index.
pub fn wedge(i: &FormIndex, j: &FormIndex) -> Result<(i32, FormIndex)> {
    if i.dim != j.dim {
        return Err(Error::DimensionMismatch(format!("wedge of forms over {} and {} coordinates", i.dim, j.dim)));
    }
    if i.indices.iter().any(|a| j.contains(*a)) {
        return Ok((0, FormIndex::empty(i.dim)));
    }
    // Count inversions of the concatenation.
    let mut inversions = 0usize;
    for a in &i.indices {
        inversions += j.indices.iter().filter(|b| *b < a).count();
    }
    let mut k: Vec<usize> = i.indices.iter().chain(&j.indices).copied().collect();
    k.sort_unstable();
    let sign = if inversions % 2 == 0 { 1 } else { -1 };
    Ok((sign, FormIndex { dim: i.dim, indices: k }))
}

impl fmt::Display for FormIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fi(dim: usize, v: &[usize]) -> FormIndex {
        FormIndex::new(dim, v.to_vec()).unwrap()
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(wedge(&fi(2, &[0]), &fi(2, &[1])).unwrap(), (1, fi(2, &[0, 1])));
        assert_eq!(wedge(&fi(2, &[1]), &fi(2, &[0])).unwrap(), (-1, fi(2, &[0, 1])));
        assert_eq!(wedge(&fi(2, &[0]), &fi(2, &[0])).unwrap(), (0, FormIndex::empty(2)));
    }

    #[test]
    fn wedge_dimension_mismatch() {
        assert!(wedge(&fi(2, &[0]), &fi(3, &[1])).is_err());
    }

    #[test]
    fn graded_lex_order() {
        let a = MultiIndex::new(vec![2, 0]);
        let b = MultiIndex::new(vec![0, 3]);
        let c = MultiIndex::new(vec![1, 1]);
        assert!(a < b);
        assert!(c < a);
    }

    fn subset(dim: usize) -> impl Strategy<Value = FormIndex> {
        proptest::collection::vec(any::<bool>(), dim)
            .prop_map(move |bits| FormIndex::new(dim, (0..dim).filter(|i| bits[*i]).collect()).unwrap())
    }

    proptest! {
        #[test]
        fn wedge_graded_anticommutative(i in subset(5), j in subset(5)) {
            let (s1, k1) = wedge(&i, &j).unwrap();
            let (s2, k2) = wedge(&j, &i).unwrap();
            prop_assert_eq!(&k1, &k2);
            let twist = if (i.degree() * j.degree()) % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(s1, twist * s2);
        }

        #[test]
        fn wedge_associative(i in subset(5), j in subset(5), k in subset(5)) {
            let (s_ij, ij) = wedge(&i, &j).unwrap();
            let (s_l, left) = wedge(&ij, &k).unwrap();
            let (s_jk, jk) = wedge(&j, &k).unwrap();
            let (s_r, right) = wedge(&i, &jk).unwrap();
            prop_assert_eq!(s_ij * s_l, s_jk * s_r);
            if s_ij * s_l != 0 {
                prop_assert_eq!(left, right);
            }
        }
    }
}
