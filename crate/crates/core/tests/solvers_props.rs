use derham::algebra::{MultiIndex, Rat};
use derham::current::frame::canonical_simplex_frame;
use derham::current::{d, dual_term, Current, CurrentTerm, Frame, SupportKind};
use derham::random::{random_form, random_form_index, random_frame, random_poly, small_rat};
use derham::solvers::{retract_on_simplex, solve_interior, solve_point, InteriorSolution};
use num::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn term_on<R: Rng>(rng: &mut R, frame: &Frame, k: usize) -> CurrentTerm {
    let kind = if frame.p() == 0 { SupportKind::Point } else { SupportKind::Simplex };
    let alpha = MultiIndex::new((0..frame.m()).map(|_| rng.gen_range(0..=2)).collect());
    let q = random_poly(rng, frame.p(), 2, 2);
    CurrentTerm::new(frame.clone(), kind, alpha, random_form_index(rng, frame.n(), k), q)
}

#[test]
fn point_solver_recovers_generator_coefficient() {
    let mut rng = StdRng::seed_from_u64(21);
    for _ in 0..100 {
        let n = rng.gen_range(1..=3);
        let frame = Frame::translation((0..n).map(|_| small_rat(&mut rng)).collect(), n);
        let c = small_rat(&mut rng);
        let w: Vec<CurrentTerm> = (0..3).map(|_| term_on(&mut rng, &frame, n - 1)).collect();
        let u = Current::from_term(dual_term(&frame)).scale(&c).add(&d(&Current::from_terms(n, w, None)));
        let s = solve_point(&u).unwrap();
        assert_eq!(s.c, c);
        assert_eq!(u, Current::from_term(dual_term(&frame)).scale(&s.c).add(&d(&s.v)));
    }
}

#[test]
fn interior_solver_inverts_d() {
    let mut rng = StdRng::seed_from_u64(22);
    for _ in 0..100 {
        let p = rng.gen_range(1..=4);
        let k = rng.gen_range(0..p);
        let u = random_form(&mut rng, p, k, 3).d();
        match solve_interior(&u).unwrap() {
            InteriorSolution::Primitive(v) => assert_eq!(v.d(), u),
            InteriorSolution::Constant(_) => unreachable!("exact forms have positive degree"),
        }
    }
}

#[test]
fn retraction_identity_on_random_simplices() {
    let mut rng = StdRng::seed_from_u64(23);
    for _ in 0..100 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(0..=n);
        let frame = random_frame(&mut rng, n, m);
        let k = rng.gen_range(m.max(1)..=n);
        let c = if k == m { small_rat(&mut rng) } else { Rat::zero() };
        let generator = Current::from_term(dual_term(&frame));
        let w: Vec<CurrentTerm> = (0..2).map(|_| term_on(&mut rng, &frame, k - 1)).collect();
        let u = generator.scale(&c).add(&d(&Current::from_terms(n, w, None)));
        let step = retract_on_simplex(&u, &frame).unwrap();
        let (canonical, _) = canonical_simplex_frame(&frame.simplex_vertices(), None);
        let canonical_generator = Current::from_term(dual_term(&canonical));
        let orientation = if generator == canonical_generator { Rat::from_integer(1.into()) } else { -Rat::from_integer(1.into()) };
        assert_eq!(generator, canonical_generator.scale(&orientation));
        assert_eq!(step.c, &c * &orientation);
        let rebuilt = d(&step.v).add(&step.remainder).add(&canonical_generator.scale(&step.c));
        assert_eq!(rebuilt, u);
        if k != m {
            assert!(step.c.is_zero());
        }
        assert!(step.remainder.max_support_dim().map_or(true, |dim| dim < n - m));
    }
}
