//! Subcommand implementations. Every reported claim is re-checked before it is printed.

use std::io::Read;
use std::path::{Path, PathBuf};

use derham::algebra::rat::format_rat;
use derham::algebra::Rat;
use derham::bridge::{derham_cohomology, global_retract, verify_boundary_identity, E};
use derham::current::{contract_radial, d, make_D, Current};
use derham::pairing::{pair, stokes_check};
use derham::random::random_form;
use derham::simplicial::{
    complex_from_json, complex_to_json, make_projective_plane, make_sphere, make_torus, Chain, SimplicialComplex,
};
use derham::solvers::{extend_by_chi, interior_form, retract_on_model, solve_interior, solve_point, InteriorSolution};
use derham::text::{parse_current, parse_form, render_current, ParseContext};
use rand::SeedableRng;
use serde_json::{json, Value};

use crate::report::{Inputs, Outcome};
use crate::{Command, ComplexSource, CurrentSource, Failure};

type Run = Result<Outcome, Failure>;

fn read(path: &Path, inputs: &mut Inputs) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(|e| Failure::Io(format!("standard input: {e}")))?;
        return Ok(text);
    }
    inputs.read(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_complex_file(path: &Path, inputs: &mut Inputs) -> Result<SimplicialComplex, Failure> {
    Ok(complex_from_json(&read(path, inputs)?)?)
}

fn load_complex(src: &ComplexSource, fallback: Option<&PathBuf>, inputs: &mut Inputs) -> Result<SimplicialComplex, Failure> {
    if let Some(path) = src.complex_file.as_ref().or(fallback) {
        return load_complex_file(path, inputs);
    }
    if let (Some(n), Some(k)) = (src.torus, src.grid) {
        return Ok(make_torus(n, k)?);
    }
    if let Some(n) = src.sphere {
        return Ok(make_sphere(n)?);
    }
    if src.projective_plane {
        return Ok(make_projective_plane());
    }
    Err(Failure::Usage("no complex given: use a file, --torus/--grid, --sphere or --projective-plane".into()))
}

fn load_current(src: &CurrentSource, complex: Option<&SimplicialComplex>, inputs: &mut Inputs) -> Result<Current, Failure> {
    let text = match (&src.file, &src.expr) {
        (_, Some(expr)) => expr.replace(';', "\n"),
        (Some(path), None) => read(path, inputs)?,
        (None, None) => return Err(Failure::Usage("no current given".into())),
    };
    let owned;
    let complex = match (complex, &src.complex) {
        (Some(x), _) => Some(x),
        (None, Some(path)) => {
            owned = load_complex_file(path, inputs)?;
            Some(&owned)
        }
        (None, None) => None,
    };
    Ok(parse_current(&text, &ParseContext { n: src.n, complex })?)
}

fn chain_json(c: &Chain) -> Value {
    Value::Object(c.coeffs.iter().map(|(id, x)| (id.to_string(), Value::String(format_rat(x)))).collect())
}

fn chain_text(c: &Chain) -> String {
    if c.is_zero() {
        return "0".into();
    }
    c.coeffs.iter().map(|(id, x)| format!("{}·[{id}]", format_rat(x))).collect::<Vec<_>>().join(" + ")
}

fn show_current(out: &mut Outcome, label: &str, u: &Current) {
    let text = render_current(u);
    out.line(format!("{label}:"));
    for line in text.lines() {
        out.line(format!("  {line}"));
    }
    out.output(label, Value::String(text));
}

pub fn run(command: &Command, inputs: &mut Inputs) -> Run {
    match command {
        Command::Homology { file, complex } => homology(&load_complex(complex, file.as_ref(), inputs)?),
        Command::D(src) => {
            let u = load_current(src, None, inputs)?;
            let du = d(&u);
            let mut out = Outcome::default();
            show_current(&mut out, "d", &du);
            out.check("d_squared_zero", d(&du).is_zero());
            Ok(out)
        }
        Command::Contract { source, coord } => {
            let u = load_current(source, None, inputs)?;
            if *coord == 0 || *coord > u.n() {
                return Err(Failure::Usage(format!("coordinate {coord} outside 1..={}", u.n())));
            }
            let iota = contract_radial(&u, coord - 1)?;
            let mut out = Outcome::default();
            show_current(&mut out, "contraction", &iota);
            out.check("contraction_squared_zero", contract_radial(&iota, coord - 1)?.is_zero());
            Ok(out)
        }
        Command::VerifyDd { p, n, forms, seed } => verify_dd(*p, *n, *forms, *seed),
        Command::SolvePoint(src) => {
            let u = load_current(src, None, inputs)?;
            let s = solve_point(&u)?;
            let mut out = Outcome::default();
            out.line(format!("c = {}", format_rat(&s.c)));
            out.output("c", Value::String(format_rat(&s.c)));
            show_current(&mut out, "v", &s.v);
            let generator = match u.terms().first() {
                Some(t) => Current::from_term(derham::current::dual_term(&t.frame)),
                None => Current::zero(u.n()),
            };
            out.check("identity", u == generator.scale(&s.c).add(&d(&s.v)));
            Ok(out)
        }
        Command::SolveInterior(src) => {
            let u = load_current(src, None, inputs)?;
            let f = interior_form(&u)?;
            let mut out = Outcome::default();
            match solve_interior(&f)? {
                InteriorSolution::Constant(c) => {
                    out.line(format!("constant {}", format_rat(&c)));
                    out.output("constant", Value::String(format_rat(&c)));
                    out.check("constant", f.components().values().all(|q| q.as_constant().is_some()));
                }
                InteriorSolution::Primitive(v) => {
                    show_current(&mut out, "v", &extend_by_chi(&v));
                    out.check("dv_equals_u_in_interior", v.d() == f);
                }
            }
            Ok(out)
        }
        Command::RetractSimplex { source, p } => {
            let u = load_current(source, None, inputs)?;
            let step = retract_on_model(&u, *p)?;
            let mut out = Outcome::default();
            out.line(format!("c = {}", format_rat(&step.c)));
            out.output("c", Value::String(format_rat(&step.c)));
            show_current(&mut out, "v", &step.v);
            show_current(&mut out, "remainder", &step.remainder);
            let generator = make_D(*p, u.n())?;
            out.check("identity", d(&step.v).add(&step.remainder).add(&generator.scale(&step.c)) == u);
            out.check("remainder_on_boundary", step.remainder.max_support_dim().map_or(true, |k| k < *p));
            Ok(out)
        }
        Command::GlobalRetract { source, complex } => {
            let x = load_complex(complex, source.complex.as_ref(), inputs)?;
            let u = load_current(source, Some(&x), inputs)?;
            let n = u.n();
            let k = u.degree().unwrap_or(n.saturating_sub(x.dim()));
            let cert = global_retract(&u, &x, k)?;
            let mut out = Outcome::default();
            out.line(format!("c = {}", chain_text(&cert.c)));
            out.output("c", chain_json(&cert.c));
            show_current(&mut out, "v", &cert.v);
            let stages: Vec<Value> = cert
                .stages
                .iter()
                .map(|s| json!({"level": s.level, "simplex": s.simplex, "coefficient": format_rat(&s.coefficient), "v_terms": s.v_terms}))
                .collect();
            out.line(format!("{} local retractions", stages.len()));
            out.output("stages", Value::Array(stages));
            let u = u.with_period(x.period().map(<[Rat]>::to_vec));
            out.check("certificate", E(&cert.c, &x)?.add(&d(&cert.v)) == u);
            out.check("cycle", x.boundary(&cert.c)?.is_zero());
            Ok(out)
        }
        Command::DerhamBetti { torus, grid } => derham_betti(*torus, *grid),
        Command::Pair { source, form } => {
            let u = load_current(source, None, inputs)?;
            let w = parse_form(&form.replace('\n', ";"), u.n())?;
            let value = pair(&u, &w)?;
            let mut out = Outcome::default();
            out.line(format!("<T, w> = {}", format_rat(&value)));
            out.output("value", Value::String(format_rat(&value)));
            let mut termwise = Rat::from_integer(0.into());
            for t in u.terms() {
                termwise += pair(&Current::from_term(t.clone()).with_period(u.period().map(<[Rat]>::to_vec)), &w)?;
            }
            out.check("termwise_sum", termwise == value);
            Ok(out)
        }
        Command::Selftest => Ok(crate::selftest::selftest()),
        Command::Generate { complex } => {
            let x = load_complex(complex, None, inputs)?;
            let mut out = Outcome::default();
            out.line(complex_to_json(&x));
            out.output("simplices", json!(x.simplices().count()));
            Ok(out)
        }
    }
}

fn homology(x: &SimplicialComplex) -> Run {
    let h = x.homology();
    let mut out = Outcome::default();
    for (p, g) in h.groups.iter().enumerate() {
        let torsion: Vec<String> = g.torsion.iter().map(ToString::to_string).collect();
        out.line(format!("H_{p}: betti {}, torsion [{}]", g.betti, torsion.join(", ")));
    }
    out.output("betti", json!(h.betti()));
    out.output(
        "torsion",
        json!(h.groups.iter().map(|g| g.torsion.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>()),
    );
    out.output("oriented", json!(x.validate_oriented()));
    out.line(format!("oriented: {}", x.validate_oriented()));
    let alternating: i64 = h.betti().iter().enumerate().map(|(p, &b)| if p % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
    out.check("euler_characteristic", alternating == x.euler_characteristic());
    out.check("rational_rank_agrees", h.betti() == x.rational_betti());
    Ok(out)
}

fn verify_dd(p: usize, n: usize, forms: usize, seed: u64) -> Run {
    if p == 0 || p > n {
        return Err(Failure::Usage(format!("need 0 < p ≤ n, got p = {p}, n = {n}")));
    }
    let mut out = Outcome::default();
    let ok = verify_boundary_identity(p, n);
    out.line(format!("d(D(S_{p})) = E(∂S_{p}) in R^{n}: {}", if ok { "yes" } else { "no" }));
    out.check("boundary_identity", ok);
    let dd = make_D(p, n)?;
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let mut passed = 0;
    for _ in 0..forms {
        if stokes_check(&dd, &random_form(&mut rng, n, p - 1, 3))? {
            passed += 1;
        }
    }
    out.line(format!("Stokes cross-check: {passed}/{forms} random test forms"));
    out.output("stokes_passed", json!(passed));
    out.check("stokes", passed == forms);
    Ok(out)
}

fn derham_betti(n: usize, grid: usize) -> Run {
    let x = make_torus(n, grid)?;
    let betti = x.homology().betti();
    let mut out = Outcome::default();
    out.line("k  de Rham  betti_{n-k}");
    let mut rows = Vec::new();
    for k in 0..=n {
        let rank = derham_cohomology(&x, k)?;
        let b = betti[n - k];
        out.line(format!("{k}  {rank}  {b}"));
        rows.push(json!({"k": k, "derham": rank, "betti": b}));
        out.check(&format!("rank_{k}"), rank == b);
    }
    out.output("table", Value::Array(rows));
    Ok(out)
}
