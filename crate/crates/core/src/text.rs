//! Text format for currents and polynomial test forms.
//!
//! A current is a newline-separated sum of terms
//!
//! ```text
//! n = 2
//! period = 3,3
//! -3/2 * d[1](y1) (z1^2 + z1) dy{1} dz{1} @ simplex[(0,0),(1,1),(2,1)] :: chi
//! ```
//!
//! with sites `simplex(S)`, `simplex(S<p>)`, `simplex(<id>)`, `simplex[(v0),…]`,
//! `point`, `point(x…)`, `chart(n)` and `frame((a11,…;…),(b…))`. `#` starts a comment.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::algebra::rat::{format_rat, parse_rat};
use crate::algebra::{wedge, FormIndex, MultiIndex, Poly, Rat, RatMatrix};
use crate::current::{Current, CurrentTerm, Frame, SupportKind};
use crate::error::{Error, Result};
use crate::pairing::PolyForm;
use crate::simplicial::{frame_through, SimplicialComplex};

/// Parsing context: ambient dimension and complex for `simplex(<id>)` sites.
#[derive(Clone, Copy, Default)]
pub struct ParseContext<'a> {
    pub n: Option<usize>,
    pub complex: Option<&'a SimplicialComplex>,
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
}

/// A monomial list `c · Π var_i^e_i` with 0-based variable indices.
type RawPoly = Vec<(Rat, Vec<(usize, u32)>)>;

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        Cursor { text, pos: 0, line }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { line: self.line, column: self.text[..self.pos].chars().count() + 1, message: message.into() })
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.rest().is_empty()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            self.error(format!("expected `{token}`"))
        }
    }

    fn uint(&mut self) -> Result<usize> {
        self.skip_ws();
        let len = self.rest().chars().take_while(char::is_ascii_digit).count();
        if len == 0 {
            return self.error("expected an integer");
        }
        let value = self.rest()[..len].parse().or_else(|_| self.error("integer too large"))?;
        self.pos += len;
        Ok(value)
    }

    fn uint_list(&mut self, close: &str) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(self.uint()?);
            if self.eat(close) {
                return Ok(out);
            }
            if !self.eat(",") {
                return self.error(format!("expected `,` or `{close}`"));
            }
        }
    }

    /// An optionally signed rational `p` or `p/q`.
    fn rational(&mut self) -> Result<Rat> {
        self.skip_ws();
        let start = self.pos;
        let negative = self.eat("-");
        if !negative {
            self.eat("+");
        }
        self.skip_ws();
        let digits = |s: &str| s.chars().take_while(char::is_ascii_digit).count();
        let n = digits(self.rest());
        if n == 0 {
            self.pos = start;
            return self.error("expected a rational number");
        }
        let mut literal = self.rest()[..n].to_string();
        self.pos += n;
        if self.rest().starts_with('/') {
            let d = digits(&self.rest()[1..]);
            if d == 0 {
                return self.error("expected a denominator");
            }
            literal.push_str(&self.rest()[..d + 1]);
            self.pos += d + 1;
        }
        match parse_rat(&literal) {
            Some(x) => Ok(if negative { -x } else { x }),
            None => {
                self.pos = start;
                self.error("zero denominator")
            }
        }
    }

    fn rational_list(&mut self, close: &str) -> Result<Vec<Rat>> {
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(self.rational()?);
            if self.eat(close) {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    /// `prefix<index>` with a 1-based index, returned 0-based.
    fn variable(&mut self, prefix: char) -> Result<usize> {
        self.skip_ws();
        if !self.rest().starts_with(prefix) {
            return self.error(format!("expected a variable {prefix}1, {prefix}2, …"));
        }
        self.pos += 1;
        let i = self.uint()?;
        if i == 0 {
            return self.error("variables are numbered from 1");
        }
        Ok(i - 1)
    }

    /// Sum of monomials in the variables `prefix1, prefix2, …`, up to the closing `)`.
    fn polynomial(&mut self, prefix: char) -> Result<RawPoly> {
        let mut out = Vec::new();
        let mut first = true;
        loop {
            let sign = if self.eat("-") {
                -Rat::one()
            } else if self.eat("+") || first {
                Rat::one()
            } else {
                return self.error("expected `+`, `-` or `)`");
            };
            first = false;
            let mut coeff = sign;
            let mut vars = Vec::new();
            loop {
                match self.peek() {
                    Some(c) if c.is_ascii_digit() => coeff *= self.rational()?,
                    Some(c) if c == prefix => {
                        let v = self.variable(prefix)?;
                        let e = if self.eat("^") { self.uint()? as u32 } else { 1 };
                        vars.push((v, e));
                    }
                    _ => return self.error("expected a number or a variable"),
                }
                if !self.eat("*") {
                    break;
                }
            }
            out.push((coeff, vars));
            if self.eat(")") {
                return Ok(out);
            }
        }
    }
}

fn build_poly(raw: &RawPoly, nvars: usize, c: &Cursor, prefix: char) -> Result<Poly> {
    let mut q = Poly::zero(nvars);
    for (coeff, vars) in raw {
        let mut e = vec![0u32; nvars];
        for &(v, k) in vars {
            if v >= nvars {
                return c.error(format!("variable {prefix}{} out of range (only {nvars} available)", v + 1));
            }
            e[v] += k;
        }
        q.add_term(MultiIndex::new(e), coeff.clone());
    }
    Ok(q)
}

/// Wedge product of index lists, returning the sign and the sorted index.
fn wedge_all(dim: usize, factors: &[Vec<usize>]) -> Option<(i32, FormIndex)> {
    let mut acc = (1, FormIndex::empty(dim));
    for f in factors {
        let mut sorted = f.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != f.len() || f.iter().any(|&i| i >= dim) {
            return None;
        }
        // Sign of the permutation sorting `f`.
        let mut sign = 1;
        for i in 0..f.len() {
            for j in i + 1..f.len() {
                if f[i] > f[j] {
                    sign = -sign;
                }
            }
        }
        let (s, k) = wedge(&acc.1, &FormIndex::new(dim, sorted).ok()?).ok()?;
        if s == 0 {
            return Some((0, k));
        }
        acc = (acc.0 * s * sign, k);
    }
    Some(acc)
}

enum Site {
    Model(Option<usize>),
    Id(usize),
    Vertices(Vec<Vec<Rat>>),
    Point(Option<Vec<Rat>>),
    Chart(usize),
    Frame(RatMatrix, Vec<Rat>),
}

fn parse_site(c: &mut Cursor) -> Result<Site> {
    if c.eat("simplex[") {
        let mut vertices = Vec::new();
        loop {
            c.expect("(")?;
            vertices.push(c.rational_list(")")?);
            if c.eat("]") {
                return Ok(Site::Vertices(vertices));
            }
            c.expect(",")?;
        }
    }
    if c.eat("simplex(") {
        let site = if c.eat("S") {
            if c.peek().is_some_and(|ch| ch.is_ascii_digit()) {
                Site::Model(Some(c.uint()?))
            } else {
                Site::Model(None)
            }
        } else {
            Site::Id(c.uint()?)
        };
        c.expect(")")?;
        return Ok(site);
    }
    if c.eat("point") {
        return Ok(if c.eat("(") { Site::Point(Some(c.rational_list(")")?)) } else { Site::Point(None) });
    }
    if c.eat("chart(") {
        let n = c.uint()?;
        c.expect(")")?;
        return Ok(Site::Chart(n));
    }
    if c.eat("frame(") {
        c.expect("(")?;
        let mut rows = vec![Vec::new()];
        loop {
            rows.last_mut().expect("row").push(c.rational()?);
            if c.eat(";") {
                rows.push(Vec::new());
            } else if c.eat(")") {
                break;
            } else {
                c.expect(",")?;
            }
        }
        c.expect(",")?;
        c.expect("(")?;
        let b = c.rational_list(")")?;
        c.expect(")")?;
        if rows.iter().any(|r| r.len() != b.len()) || rows.len() != b.len() {
            return c.error("frame matrix must be square and match the offset");
        }
        return Ok(Site::Frame(RatMatrix::from_rows(rows), b));
    }
    c.error("expected a site: simplex(…), simplex[…], point, chart(n) or frame(…)")
}

fn parse_term(c: &mut Cursor, ctx: &ParseContext, n_hint: Option<usize>) -> Result<CurrentTerm> {
    let coeff = c.rational()?;
    c.expect("*")?;
    let mut deltas: BTreeMap<usize, u32> = BTreeMap::new();
    let mut poly: Option<RawPoly> = None;
    let mut forms: Vec<(bool, Vec<usize>)> = Vec::new();
    loop {
        if c.eat("d[") {
            let orders = c.uint_list("]")?;
            c.expect("(")?;
            c.skip_ws();
            if c.rest().starts_with("y") && !c.rest()[1..].starts_with(|ch: char| ch.is_ascii_digit()) {
                c.pos += 1;
                for (i, a) in orders.into_iter().enumerate() {
                    deltas.insert(i, a as u32);
                }
            } else {
                let y = c.variable('y')?;
                if orders.len() != 1 {
                    return c.error("a single coordinate takes a single order");
                }
                if deltas.insert(y, orders[0] as u32).is_some() {
                    return c.error(format!("repeated delta in y{}", y + 1));
                }
            }
            c.expect(")")?;
        } else if c.eat("(") {
            if poly.is_some() {
                return c.error("only one polynomial coefficient per term");
            }
            poly = Some(c.polynomial('z')?);
        } else if c.eat("dy{") {
            forms.push((true, c.uint_list("}")?));
        } else if c.eat("dz{") {
            forms.push((false, c.uint_list("}")?));
        } else if c.eat("@") {
            break;
        } else {
            return c.error("expected d[…](…), (polynomial), dy{…}, dz{…} or `@`");
        }
    }
    let site_pos = c.pos;
    let site = parse_site(c)?;
    let mut kind = None;
    if c.eat("::") {
        kind = Some(if c.eat("chi") {
            SupportKind::Simplex
        } else if c.eat("plane") {
            SupportKind::Plane
        } else {
            return c.error("expected `chi` or `plane`");
        });
    }
    if !c.at_end() {
        return c.error("unexpected trailing input");
    }
    let explicit_m = deltas.keys().next_back().map_or(0, |&i| i + 1);
    let known_n = ctx.n.or(n_hint);
    let site_error = |c: &mut Cursor, msg: String| -> Result<CurrentTerm> {
        c.pos = site_pos;
        c.error(msg)
    };
    let (frame, default_kind) = match site {
        Site::Model(p) => {
            let n = match (p, known_n) {
                (Some(p), Some(n)) if n != explicit_m + p => {
                    return Err(Error::DimensionMismatch(format!("S{p} with {explicit_m} deltas in dimension {n}")))
                }
                (Some(p), _) => explicit_m + p,
                (None, Some(n)) => n,
                (None, None) => return site_error(c, "ambient dimension unknown; add a line `n = …`".into()),
            };
            if explicit_m > n {
                return site_error(c, "more deltas than dimensions".into());
            }
            (Frame::identity(n, explicit_m), SupportKind::Simplex)
        }
        Site::Id(id) => {
            let Some(x) = ctx.complex else { return site_error(c, "simplex ids need a complex".into()) };
            let frame = x.simplex(id)?.frame.clone().ok_or(Error::Unrealized(id))?;
            (frame, SupportKind::Simplex)
        }
        Site::Vertices(vs) => {
            let n = vs[0].len();
            if vs.iter().any(|v| v.len() != n) || vs.len() > n + 1 {
                return site_error(c, "vertices must share one dimension and be at most n+1".into());
            }
            let edges: Vec<Vec<Rat>> = vs[1..].iter().map(|v| v.iter().zip(&vs[0]).map(|(a, b)| a - b).collect()).collect();
            if !edges.is_empty() && RatMatrix::from_rows(edges).rank() != vs.len() - 1 {
                return site_error(c, "vertices are affinely dependent".into());
            }
            (frame_through(&vs), SupportKind::Simplex)
        }
        Site::Point(coords) => {
            let coords = match (coords, known_n) {
                (Some(x), _) => x,
                (None, Some(n)) => vec![Rat::zero(); n],
                (None, None) => vec![Rat::zero(); explicit_m.max(1)],
            };
            let n = coords.len();
            (Frame::translation(coords, n), SupportKind::Point)
        }
        Site::Chart(n) => {
            if explicit_m > n {
                return site_error(c, "more deltas than dimensions".into());
            }
            (Frame::identity(n, explicit_m), SupportKind::Plane)
        }
        Site::Frame(a, b) => {
            if a.rank() != b.len() {
                return site_error(c, "singular frame matrix".into());
            }
            if explicit_m > b.len() {
                return site_error(c, "more deltas than dimensions".into());
            }
            (Frame::new(a, b, explicit_m)?, SupportKind::Simplex)
        }
    };
    let (n, m, p) = (frame.n(), frame.m(), frame.p());
    if let Some(k) = known_n {
        if k != n {
            return Err(Error::DimensionMismatch(format!("term in dimension {n}, expected {k}")));
        }
    }
    if explicit_m > m {
        return site_error(c, format!("{explicit_m} deltas on a support of codimension {m}"));
    }
    let kind = match (kind, default_kind) {
        (_, SupportKind::Point) => SupportKind::Point,
        (Some(k), _) => k,
        (None, k) => k,
    };
    let alpha = MultiIndex::new((0..m).map(|i| deltas.get(&i).copied().unwrap_or(0)).collect());
    let factors: Vec<Vec<usize>> = forms
        .iter()
        .map(|(transverse, idx)| {
            let bound = if *transverse { m } else { p };
            idx.iter()
                .map(|&i| if i == 0 || i > bound { usize::MAX } else if *transverse { i - 1 } else { m + i - 1 })
                .collect()
        })
        .collect();
    let Some((sign, form)) = wedge_all(n, &factors) else {
        return c.error("form index out of range or repeated");
    };
    let q = match &poly {
        Some(raw) => build_poly(raw, p, c, 'z')?,
        None => Poly::one(p),
    };
    let q = q.scale(&(coeff * Rat::from_integer(sign.into())));
    Ok(CurrentTerm::new(frame, kind, alpha, form, q))
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(before, _)| before)
}

/// Parses a current; the result is normalized.
pub fn parse_current(text: &str, ctx: &ParseContext) -> Result<Current> {
    let mut n = ctx.n;
    let mut period: Option<Vec<Rat>> = None;
    let mut terms = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        let mut c = Cursor::new(line, idx + 1);
        if c.at_end() {
            continue;
        }
        if c.eat("n") && c.eat("=") {
            let value = c.uint()?;
            if !c.at_end() {
                return c.error("unexpected trailing input");
            }
            if n.is_some_and(|k| k != value) {
                return Err(Error::DimensionMismatch(format!("n = {value} conflicts with dimension {}", n.unwrap_or(0))));
            }
            n = Some(value);
            continue;
        }
        c.pos = 0;
        if c.eat("period") {
            c.expect("=")?;
            let mut values = vec![c.rational()?];
            while c.eat(",") {
                values.push(c.rational()?);
            }
            if !c.at_end() {
                return c.error("unexpected trailing input");
            }
            if values.iter().any(|l| l <= &Rat::zero()) {
                return c.error("periods must be positive");
            }
            period = Some(values);
            continue;
        }
        c.pos = 0;
        let term = parse_term(&mut c, ctx, n)?;
        n = Some(term.n());
        terms.push(term);
    }
    let n = n.or(period.as_ref().map(Vec::len)).ok_or_else(|| Error::InvalidInput("empty current without `n = …`".into()))?;
    if let Some(period) = &period {
        if period.len() != n {
            return Err(Error::DimensionMismatch(format!("period of length {} in dimension {n}", period.len())));
        }
    }
    Ok(Current::from_terms(n, terms, period))
}

fn join_rats(xs: &[Rat]) -> String {
    xs.iter().map(format_rat).collect::<Vec<_>>().join(",")
}

fn render_site(t: &CurrentTerm) -> String {
    let f = &t.frame;
    match t.kind {
        SupportKind::Point => format!("point({})", join_rats(f.offset())),
        SupportKind::Simplex if frame_through(&f.simplex_vertices()) == *f => {
            let vs: Vec<String> = f.simplex_vertices().iter().map(|v| format!("({})", join_rats(v))).collect();
            format!("simplex[{}] :: chi", vs.join(","))
        }
        SupportKind::Plane if *f == Frame::identity(f.n(), f.m()) => format!("chart({})", f.n()),
        kind => {
            let rows: Vec<String> = (0..f.n()).map(|i| join_rats(f.matrix().row(i))).collect();
            let suffix = if kind == SupportKind::Plane { "plane" } else { "chi" };
            format!("frame(({}),({})) :: {suffix}", rows.join(";"), join_rats(f.offset()))
        }
    }
}

/// One line per term, in the format accepted by [`parse_current`].
pub fn render_term(t: &CurrentTerm) -> String {
    let (m, p) = (t.m(), t.p());
    let mut parts = Vec::new();
    let single = t.q.terms().count() == 1;
    let (coeff, poly) = if single {
        let (e, c) = t.q.terms().next().expect("one term");
        (c.clone(), if e.is_zero() { None } else { Some(Poly::monomial(e.clone(), Rat::one())) })
    } else {
        (Rat::one(), Some(t.q.clone()))
    };
    parts.push(format!("{} *", format_rat(&coeff)));
    for i in 0..m {
        parts.push(format!("d[{}](y{})", t.alpha.get(i), i + 1));
    }
    if let Some(q) = poly {
        parts.push(format!("({})", q.format_with(&|j| format!("z{}", j + 1))));
    }
    let ys: Vec<String> = t.transverse_form().iter().map(|i| (i + 1).to_string()).collect();
    let zs: Vec<String> = t.tangential_form().iter().map(|j| (j + 1).to_string()).collect();
    if !ys.is_empty() {
        parts.push(format!("dy{{{}}}", ys.join(",")));
    }
    if !zs.is_empty() {
        parts.push(format!("dz{{{}}}", zs.join(",")));
    }
    if p == 0 && t.kind != SupportKind::Point {
        unreachable!("zero-dimensional supports are points");
    }
    parts.push(format!("@ {}", render_site(t)));
    parts.join(" ")
}

pub fn render_current(u: &Current) -> String {
    let mut out = format!("n = {}\n", u.n());
    if let Some(period) = u.period() {
        out.push_str(&format!("period = {}\n", join_rats(period)));
    }
    for t in u.terms() {
        out.push_str(&render_term(t));
        out.push('\n');
    }
    out
}

/// Parses a polynomial test form: lines (or `;`-separated items) `c * (poly) dx{…}`
/// in the variables `x1, …, xn`; coefficient and polynomial are optional.
pub fn parse_form(text: &str, n: usize) -> Result<PolyForm> {
    let mut degree = None;
    let mut comps = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        for item in strip_comment(raw).split(';') {
            let mut c = Cursor::new(item, idx + 1);
            if c.at_end() {
                continue;
            }
            let mut coeff = Rat::one();
            if c.peek().is_some_and(|ch| ch.is_ascii_digit() || ch == '-' || ch == '+') {
                coeff = c.rational()?;
                c.eat("*");
            }
            let mut q = Poly::one(n);
            if c.eat("(") {
                q = build_poly(&c.polynomial('x')?, n, &c, 'x')?;
            }
            let mut factors = Vec::new();
            while c.eat("dx{") {
                factors.push(c.uint_list("}")?.into_iter().map(|i| if i == 0 { usize::MAX } else { i - 1 }).collect());
            }
            if !c.at_end() {
                return c.error("expected dx{…} or end of item");
            }
            let Some((sign, form)) = wedge_all(n, &factors) else {
                return c.error("form index out of range or repeated");
            };
            if degree.is_some_and(|k| k != form.degree()) {
                return c.error("all components must have the same degree");
            }
            degree = Some(form.degree());
            comps.push((form, q.scale(&(coeff * Rat::from_integer(sign.into())))));
        }
    }
    let mut f = PolyForm::zero(n, degree.unwrap_or(0));
    for (k, q) in comps {
        f.add_component(k, q);
    }
    Ok(f)
}

pub fn render_form(f: &PolyForm) -> String {
    if f.is_zero() {
        return "0".into();
    }
    f.components()
        .iter()
        .map(|(k, q)| {
            let idx: Vec<String> = k.indices().iter().map(|i| (i + 1).to_string()).collect();
            let poly = format!("({})", q.format_with(&|j| format!("x{}", j + 1)));
            if idx.is_empty() {
                poly
            } else {
                format!("{poly} dx{{{}}}", idx.join(","))
            }
        })
        .collect::<Vec<_>>()
        .join("; ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{rat, ratio};
    use crate::random::random_current;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn ctx(n: usize) -> ParseContext<'static> {
        ParseContext { n: Some(n), complex: None }
    }

    #[test]
    fn spec_examples() {
        let u = parse_current("1 * d[1](y1) dy{1} @ simplex(S) :: chi", &ctx(2)).unwrap();
        let expected = CurrentTerm::new(
            Frame::identity(2, 1),
            SupportKind::Simplex,
            MultiIndex::new(vec![1]),
            FormIndex::single(2, 0),
            Poly::one(1),
        );
        assert_eq!(u, Current::from_term(expected));
        let u = parse_current("3/2 * (z1^2) dz{1} @ chart(2)", &ParseContext::default()).unwrap();
        let t = &u.terms()[0];
        assert_eq!((t.kind, t.m(), t.form.indices()), (SupportKind::Plane, 0, &[0][..]));
        assert_eq!(t.q, Poly::monomial(MultiIndex::new(vec![2, 0]), ratio(3, 2)));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_current("n = 2\n1 * d[1(y1) dy{1} @ simplex(S)", &ParseContext::default()).unwrap_err();
        assert_eq!(err, Error::Syntax { line: 2, column: 8, message: "expected `,` or `]`".into() });
        let err = parse_current("2 * dz{1} @ nowhere", &ctx(1)).unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, column: 13, .. }), "{err:?}");
        let err = parse_current("1 * @ point(0)\n1 * dx{1} @ point(0,0)", &ParseContext::default()).unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, .. }), "{err:?}");
        assert!(matches!(parse_current("1 * @ point(0)\n1 * @ point(0,0)", &ParseContext::default()), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn forms_wedge_in_order() {
        let a = parse_current("1 * dz{2} dz{1} @ chart(2)", &ParseContext::default()).unwrap();
        let b = parse_current("-1 * dz{1,2} @ chart(2)", &ParseContext::default()).unwrap();
        assert_eq!(a, b);
        let f = parse_form("2 * (x1*x2) dx{2,1}; x", 2);
        assert!(f.is_err());
        let f = parse_form("2 * (x1*x2) dx{2,1}", 2).unwrap();
        assert_eq!(f.components()[&FormIndex::full(2)], Poly::monomial(MultiIndex::new(vec![1, 1]), rat(-2)));
        assert_eq!(parse_form(&render_form(&f), 2).unwrap(), f);
    }

    #[test]
    fn sites() {
        let u = parse_current("1 * @ point(1/2,1)", &ParseContext::default()).unwrap();
        assert_eq!(u.terms()[0].frame.offset(), &[ratio(1, 2), rat(1)]);
        let v = parse_current("1 * @ simplex[(1/2,1)]", &ParseContext::default()).unwrap();
        assert_eq!(u, v);
        let w = parse_current("1 * dz{1} @ simplex[(0,0),(1,0)]", &ParseContext::default()).unwrap();
        assert_eq!(w.terms()[0].m(), 1);
        let f = parse_current("1 * d[0](y1) @ frame((1,1;0,1),(0,0)) :: plane", &ParseContext::default()).unwrap();
        assert_eq!(f.terms()[0].kind, SupportKind::Plane);
        assert_eq!(parse_current(&render_current(&f), &ParseContext::default()).unwrap(), f);
    }

    #[test]
    fn render_round_trip() {
        let mut rng = StdRng::seed_from_u64(5);
        for i in 0..200 {
            let n = rng.gen_range(1..=4);
            let k = rng.gen_range(0..=n);
            let mut u = random_current(&mut rng, n, k, 3, 2);
            if i % 3 == 0 {
                u = u.with_period(Some(vec![rat(3); n]));
            }
            let text = render_current(&u);
            assert_eq!(parse_current(&text, &ParseContext::default()).unwrap(), u, "{text}");
        }
    }
}
