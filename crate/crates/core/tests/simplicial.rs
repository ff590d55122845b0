use derham::simplicial::{make_projective_plane, make_sphere, make_torus, Chain, SimplicialComplex};
use num::BigRational;

fn binomial(n: usize, p: usize) -> usize {
    (0..p).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn complexes() -> Vec<(String, SimplicialComplex)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for k in 1..=3 {
            out.push((format!("T^{n} k={k}"), make_torus(n, k).unwrap()));
        }
    }
    for n in 1..=3 {
        out.push((format!("S^{n}"), make_sphere(n).unwrap()));
    }
    out.push(("RP2".into(), make_projective_plane()));
    out
}

#[test]
fn torus_homology_is_independent_of_grid() {
    for n in 1..=3 {
        for k in 1..=3 {
            let h = make_torus(n, k).unwrap().homology();
            let expected: Vec<usize> = (0..=n).map(|p| binomial(n, p)).collect();
            assert_eq!(h.betti(), expected, "n={n} k={k}");
            assert!(h.groups.iter().all(|g| g.torsion.is_empty()));
        }
    }
}

#[test]
fn boundary_squares_to_zero_and_euler_matches() {
    for (name, x) in complexes() {
        for p in 2..=x.dim() {
            assert!(x.boundary_matrix(p - 1).mul(&x.boundary_matrix(p)).is_zero(), "{name}");
        }
        let betti = x.homology().betti();
        let alt: i64 = betti.iter().enumerate().map(|(p, &b)| if p % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        assert_eq!(alt, x.euler_characteristic(), "{name}");
        assert_eq!(betti, x.rational_betti(), "{name}");
    }
}

#[test]
fn orientable_closed_manifolds_have_a_fundamental_cycle() {
    for (name, x) in complexes() {
        let fundamental = x.fundamental_chain();
        let closed = x.boundary(&fundamental).unwrap().is_zero();
        assert_eq!(closed, x.validate_oriented(), "{name}");
    }
}

#[test]
fn triangle_boundaries_are_cycles() {
    let x = make_sphere(2).unwrap();
    let one = BigRational::from_integer(1.into());
    for id in x.ids_of_dim(2) {
        let b = x.boundary(&Chain::from_pairs(2, [(id, one.clone())])).unwrap();
        assert_eq!(b.coeffs.len(), 3);
        assert!(x.boundary(&b).unwrap().is_zero());
    }
}
