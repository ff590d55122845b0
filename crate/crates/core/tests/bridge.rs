use derham::algebra::{FormIndex, MultiIndex, Poly, Rat};
use derham::bridge::{chain_map_check, derham_cohomology, exactness_witness, global_retract, verify_boundary_identity, E};
use derham::current::{d, make_D, Current, CurrentTerm, Frame, SupportKind};
use derham::simplicial::{make_sphere, make_torus, Chain, SimplicialComplex};
use num::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn int(x: i64) -> Rat {
    Rat::from_integer(x.into())
}

fn random_chain<R: Rng>(rng: &mut R, x: &SimplicialComplex, p: usize) -> Chain {
    Chain::from_pairs(p, x.ids_of_dim(p).into_iter().map(|id| (id, int(rng.gen_range(-2..=2)))))
}

#[test]
fn boundary_identity_on_model_simplices() {
    for n in 1..=4 {
        for p in 1..=n {
            assert!(verify_boundary_identity(p, n), "p={p} n={n}");
        }
    }
}

#[test]
fn chain_map_on_generated_complexes() {
    let mut rng = StdRng::seed_from_u64(31);
    let complexes = [make_sphere(2).unwrap(), make_sphere(3).unwrap(), make_torus(2, 3).unwrap(), make_torus(3, 2).unwrap()];
    for x in &complexes {
        for _ in 0..10 {
            let p = rng.gen_range(0..=x.dim());
            let c = random_chain(&mut rng, x, p);
            assert!(chain_map_check(&c, x).unwrap());
        }
        assert!(d(&E(&x.fundamental_chain(), x).unwrap()).is_zero());
    }
}

#[test]
fn e_examples() {
    let x = make_torus(2, 3).unwrap();
    assert!(E(&Chain::zero(1), &x).unwrap().is_zero());
    let mut rng = StdRng::seed_from_u64(32);
    for _ in 0..20 {
        let c = random_chain(&mut rng, &x, 1);
        assert_eq!(E(&c, &x).unwrap().is_zero(), c.is_zero());
        assert!(E(&c.add(&c.scale(&int(-1))), &x).unwrap().is_zero());
    }
    // The top simplices of the torus map to their characteristic functions, which
    // add up to the constant function 1 on the fundamental domain.
    let chi = E(&x.fundamental_chain(), &x).unwrap();
    let one = derham::pairing::PolyForm::from_components(2, 2, vec![(FormIndex::full(2), Poly::one(2))]).unwrap();
    assert_eq!(derham::pairing::pair(&chi, &one).unwrap(), int(9));
}

fn coordinate_cycle(x: &SimplicialComplex, axis: usize) -> Chain {
    // Edges from (i, 0) to (i+1, 0) along the first axis, or the analogue along the second.
    let mut c = Chain::zero(1);
    for s in x.simplices().filter(|s| s.dim == 1) {
        let vs = s.frame.as_ref().unwrap().simplex_vertices();
        let dir: Vec<Rat> = vs[1].iter().zip(&vs[0]).map(|(a, b)| a - b).collect();
        let mut unit = vec![int(0); 2];
        unit[axis] = int(1);
        if dir == unit && vs[0][1 - axis].is_zero() {
            c.add_to(s.id, &int(1));
        }
    }
    c
}

#[test]
fn global_retract_round_trips_on_torus() {
    let x = make_torus(2, 3).unwrap();
    for axis in 0..2 {
        let c = coordinate_cycle(&x, axis);
        assert_eq!(c.coeffs.len(), 3);
        assert!(x.boundary(&c).unwrap().is_zero());
        let u = E(&c, &x).unwrap();
        let cert = global_retract(&u, &x, 1).unwrap();
        let diff = c.add(&cert.c.scale(&int(-1)));
        assert!(exactness_witness(&diff, &x).unwrap().is_some());
        assert!(exactness_witness(&c, &x).unwrap().is_none());
    }
    let zero = global_retract(&Current::zero(2), &x, 1).unwrap();
    assert!(zero.c.is_zero() && zero.v.is_zero());
}

#[test]
fn exact_currents_retract_to_boundaries() {
    let x = make_torus(2, 3).unwrap();
    let mut rng = StdRng::seed_from_u64(33);
    for _ in 0..5 {
        // w: a polynomial 0-form on one triangle plus a δ-type 0-current on an edge.
        let tri = x.simplex(x.ids_of_dim(2)[rng.gen_range(0..18)]).unwrap().frame.clone().unwrap();
        let edge = x.simplex(x.ids_of_dim(1)[rng.gen_range(0..27)]).unwrap().frame.clone().unwrap();
        let w = Current::from_terms(
            2,
            vec![
                CurrentTerm::new(tri, SupportKind::Simplex, MultiIndex::zeros(0), FormIndex::empty(2), derham::random::random_poly(&mut rng, 2, 2, 3)),
                CurrentTerm::new(edge, SupportKind::Simplex, MultiIndex::new(vec![1]), FormIndex::empty(2), derham::random::random_poly(&mut rng, 1, 2, 2)),
            ],
            x.period().map(<[Rat]>::to_vec),
        );
        let cert = global_retract(&d(&w), &x, 1).unwrap();
        assert!(exactness_witness(&cert.c, &x).unwrap().is_some());
    }
}

#[test]
fn retract_rejects_bad_inputs() {
    let x = make_torus(2, 3).unwrap();
    let far = Current::from_term(CurrentTerm::new(
        Frame::translation(vec![Rat::new(1.into(), 2.into()), Rat::new(1.into(), 3.into())], 2),
        SupportKind::Point,
        MultiIndex::zeros(2),
        FormIndex::full(2),
        Poly::one(0),
    ));
    assert!(matches!(global_retract(&far, &x, 2), Err(derham::Error::NotAttributable(_))));
    let open = make_D(1, 2).unwrap();
    assert!(matches!(global_retract(&open, &x, 1), Err(derham::Error::NotClosed(_))));
}

#[test]
fn torus_cohomology_ranks() {
    for (n, k, expected) in [(1, 0, 1), (1, 1, 1), (2, 0, 1), (2, 1, 2), (2, 2, 1)] {
        let x = make_torus(n, 3).unwrap();
        assert_eq!(derham_cohomology(&x, k).unwrap(), expected, "n={n} k={k}");
    }
}

#[test]
fn edge_pairings_match_line_integrals_up_to_codimension_sign() {
    use derham::bridge::codimension_sign;
    use derham::pairing::constant_form;
    let x = make_sphere(2).unwrap();
    for id in x.ids_of_dim(1) {
        let edge = x.simplex(id).unwrap();
        let mut displacement = vec![int(0); 3];
        for &(v, sign) in &edge.faces {
            let at = x.simplex(v).unwrap().frame.as_ref().unwrap().offset().to_vec();
            for (d, a) in displacement.iter_mut().zip(at) {
                *d += a * int(sign.into());
            }
        }
        let u = E(&Chain::from_pairs(1, [(id, int(1))]), &x).unwrap();
        for (i, di) in displacement.iter().enumerate() {
            let w = constant_form(3, FormIndex::single(3, i));
            assert_eq!(derham::pairing::pair(&u, &w).unwrap(), di * codimension_sign(2));
        }
    }
}
