//! A quick battery of worked examples with known answers.

use derham::bridge::{derham_cohomology, verify_boundary_identity};
use derham::current::{d, make_D};
use derham::pairing::{pair, PolyForm};
use derham::simplicial::{make_projective_plane, make_sphere, make_torus};
use derham::solvers::{retract_on_model, solve_point};
use derham::text::{parse_current, parse_form, ParseContext};
use derham::Result;
use serde_json::{json, Value};

use crate::report::Outcome;

fn current(text: &str) -> Result<derham::current::Current> {
    parse_current(text, &ParseContext::default())
}

fn cases() -> Vec<(&'static str, Box<dyn Fn() -> Result<bool>>)> {
    vec![
        ("d of the unit interval", Box::new(|| Ok(d(&make_D(1, 1)?) == current("1 * dy{1} @ point(0)\n-1 * dy{1} @ point(1)")?))),
        ("dd = 0 on a derivative of delta", Box::new(|| Ok(d(&d(&current("2 * d[2](y1) (z1^2) dz{1} @ simplex(S1)\nn = 2")?)).is_zero()))),
        ("point generator", Box::new(|| {
            let s = solve_point(&current("1 * d[0](y1) dy{1} @ point")?)?;
            Ok(s.c == derham::algebra::Rat::from_integer(1.into()) && s.v.is_zero())
        })),
        ("delta prime is exact", Box::new(|| {
            let s = solve_point(&current("1 * d[1](y1) dy{1} @ point")?)?;
            Ok(s.c == derham::algebra::Rat::from_integer(0.into()) && s.v == current("1 * d[0](y1) @ point")?)
        })),
        ("retract D(S_1) in R^2", Box::new(|| {
            let s = retract_on_model(&make_D(1, 2)?, 1)?;
            Ok(s.c == derham::algebra::Rat::from_integer(1.into()) && s.v.is_zero() && s.remainder.is_zero())
        })),
        ("boundary identity p=2 n=3", Box::new(|| Ok(verify_boundary_identity(2, 3)))),
        ("pairing <chi, z dz> on the unit interval", Box::new(|| {
            let w: PolyForm = parse_form("(x1) dx{1}", 1)?;
            Ok(pair(&make_D(1, 1)?, &w)? == derham::algebra::Rat::new(1.into(), 2.into()))
        })),
        ("homology of the 2-sphere", Box::new(|| Ok(make_sphere(2)?.homology().betti() == vec![1, 0, 1]))),
        ("torsion of the projective plane", Box::new(|| {
            let x = make_projective_plane();
            Ok(x.homology().groups[1].torsion == vec![2.into()] && !x.validate_oriented())
        })),
        ("de Rham rank of T^2 in degree 1", Box::new(|| Ok(derham_cohomology(&make_torus(2, 3)?, 1)? == 2))),
    ]
}

pub fn selftest() -> Outcome {
    let mut out = Outcome::default();
    let mut rows = Vec::new();
    for (name, case) in cases() {
        let ok = matches!(case(), Ok(true));
        rows.push(json!({"case": name, "pass": ok}));
        out.check(name, ok);
    }
    out.output("cases", Value::Array(rows));
    out
}
