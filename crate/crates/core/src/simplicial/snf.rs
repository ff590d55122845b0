//! Smith normal form over ℤ and integral homology.

use num::{BigInt, Integer, One, Signed, Zero};

use super::SimplicialComplex;

/// `H_p ≅ ℤ^betti ⊕ ⊕ ℤ/t_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub groups: Vec<HomologyGroup>,
}

impl HomologyResult {
    pub fn betti(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }
}

/// Nonzero diagonal entries of the Smith normal form, each dividing the next.
/// Pivot: smallest absolute value among the remaining entries, ties broken
/// by the smallest (row, column) index.
pub fn smith_normal_form(matrix: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && pivot.map_or(true, |(pi, pj)| a[i][j].abs() < a[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            if a[i][t].is_zero() {
                continue;
            }
            let q = a[i][t].div_floor(&a[t][t]);
            for j in t..cols {
                let v = &a[t][j] * &q;
                a[i][j] -= v;
            }
            clean &= a[i][t].is_zero();
        }
        for j in t + 1..cols {
            if a[t][j].is_zero() {
                continue;
            }
            let q = a[t][j].div_floor(&a[t][t]);
            for i in t..rows {
                let v = &a[i][t] * &q;
                a[i][j] -= v;
            }
            clean &= a[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // Divisibility: fold a row with an entry not divisible by the pivot into row t.
        let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
        if let Some(i) = bad {
            for j in t..cols {
                let v = a[i][j].clone();
                a[t][j] += v;
            }
            continue;
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

pub(super) fn homology(x: &SimplicialComplex) -> HomologyResult {
    let n = x.dim();
    let factors: Vec<Vec<BigInt>> = (0..=n + 1)
        .map(|p| if p == 0 || p > n { Vec::new() } else { smith_normal_form(&x.integer_boundary_matrix(p)) })
        .collect();
    let groups = (0..=n)
        .map(|p| HomologyGroup {
            betti: x.count(p) - factors[p].len() - factors[p + 1].len(),
            torsion: factors[p + 1].iter().filter(|f| !f.is_one()).cloned().collect(),
        })
        .collect();
    HomologyResult { groups }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn known_normal_forms() {
        let b = |xs: &[i64]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(smith_normal_form(&m(&[&[2, 0], &[0, 3]])), b(&[1, 6]));
        assert_eq!(smith_normal_form(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])), b(&[2, 6, 12]));
        assert_eq!(smith_normal_form(&m(&[&[0, 0], &[0, 0]])), b(&[]));
        assert_eq!(smith_normal_form(&[]), b(&[]));
    }
}
