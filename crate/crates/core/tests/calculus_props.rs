use derham::current::{d, Current};
use derham::pairing::{pair, stokes_check};
use derham::random::{random_current, random_form};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn d_squared_vanishes_on_random_currents() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..60 {
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(0..=n);
        let u = random_current(&mut rng, n, k, 2, 1);
        assert!(d(&d(&u)).is_zero(), "d∘d ≠ 0 for {u:?}");
    }
}

#[test]
fn stokes_duality_on_random_pairs() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..80 {
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(0..n);
        let u = random_current(&mut rng, n, k, 2, 1);
        let w = random_form(&mut rng, n, n - k - 1, 3);
        assert!(stokes_check(&u, &w).unwrap(), "Stokes fails for {u:?} against {w:?}");
    }
}

#[test]
fn normalization_preserves_pairings() {
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..60 {
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(0..=n);
        let u = random_current(&mut rng, n, k, 3, 1);
        let w = random_form(&mut rng, n, n - k, 3);
        let direct: num::BigRational = u.terms().iter().map(|t| pair(&Current::from_term(t.clone()), &w).unwrap()).sum();
        assert_eq!(pair(&u, &w).unwrap(), direct);
    }
}

fn homogeneous_term<R: Rng>(rng: &mut R, n: usize, frame: derham::current::Frame) -> derham::current::CurrentTerm {
    use derham::algebra::{MultiIndex, Poly};
    use derham::current::{CurrentTerm, SupportKind};
    use derham::random::{random_form_index, small_rat};
    let (m, p) = (frame.m(), frame.p());
    let alpha = MultiIndex::new((0..m).map(|_| rng.gen_range(0..=2)).collect());
    let beta = MultiIndex::new((0..p).map(|_| rng.gen_range(0..=2)).collect());
    let mut c = small_rat(rng);
    if c == num::BigRational::from_integer(0.into()) {
        c = num::BigRational::from_integer(1.into());
    }
    let k = rng.gen_range(0..=n);
    CurrentTerm::new(frame, SupportKind::Plane, alpha, random_form_index(rng, n, k), Poly::monomial(beta, c))
}

#[test]
fn cartan_identity_on_homogeneous_terms() {
    use derham::current::{contract_radial_in, homogeneity_decompose, Frame};
    use derham::random::random_frame;
    let mut rng = StdRng::seed_from_u64(17);
    for round in 0..100 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(0..=n);
        // Point terms are stored with an identity matrix, so only their offset is random.
        let frame = if round % 2 == 0 {
            Frame::identity(n, m)
        } else if m == n {
            Frame::translation(random_frame(&mut rng, n, m).offset().to_vec(), m)
        } else {
            random_frame(&mut rng, n, m)
        };
        let u = Current::from_term(homogeneous_term(&mut rng, n, frame.clone()));
        let parts = homogeneity_decompose(&u);
        assert_eq!(parts.len(), 1);
        let a = parts.keys().next().unwrap().clone();
        for (i, ai) in a.iter().enumerate() {
            let lhs = d(&contract_radial_in(&u, &frame, i).unwrap()).add(&contract_radial_in(&d(&u), &frame, i).unwrap());
            assert_eq!(lhs, u.scale(&num::BigRational::from_integer((*ai).into())), "i={i} u={u:?}");
        }
    }
}
