//! The `.dgc` text container for finite dg coalgebras.
//!
//! ```text
//! # H_*(CP²)
//! field Q
//! basis
//!   1 0
//!   y2 2
//!   y4 4
//! differential
//! comultiplication
//!   y4 -> 1*(y2,y2)
//! ```
//!
//! `comultiplication` lists the reduced coproduct: every `x ≠ 1` also gets
//! `x⊗1 + 1⊗x`. Writing `comultiplication full` switches to complete
//! coproducts. An optional `braiding` section describes `T: C⊗X → X⊗C` by
//! lines `x name degree`, `dx src -> terms` and `t (c,x) -> terms` with pair
//! terms `(x',c')`.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::coefficients::{FieldSpec, Scalar};
use crate::error::{Error, Result};
use crate::gradedlin::{GradedMap, GradedSpace};

use super::coalgebra::DgCoalgebra;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Target {
    One(String),
    Pair(String, String),
}

type Terms = Vec<(String, Target)>;

#[derive(Clone, Debug, Default)]
pub struct BraidingDoc {
    pub x: Vec<(String, i32)>,
    dx: Vec<(usize, String, Terms)>,
    t: Vec<(usize, (String, String), Terms)>,
}

/// A parsed `.dgc` document; coefficients stay literal until a field is
/// chosen.
#[derive(Clone, Debug, Default)]
pub struct DgcDocument {
    pub field: Option<FieldSpec>,
    pub basis: Vec<(String, i32)>,
    full: bool,
    differential: Vec<(usize, String, Terms)>,
    comult: Vec<(usize, String, Terms)>,
    pub braiding: Option<BraidingDoc>,
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    None,
    Basis,
    Differential,
    Comult,
    Braiding,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && !s.contains(|c: char| c.is_whitespace() || "+-*(),#>".contains(c))
}

fn parse_basis_line(line: usize, text: &str) -> Result<(String, i32)> {
    let parts: Vec<&str> = text.split_whitespace().collect();
    match parts.as_slice() {
        [n, d] if valid_name(n) => {
            let d = d.parse().map_err(|_| perr(line, format!("bad degree `{d}`")))?;
            Ok((n.to_string(), d))
        }
        _ => Err(perr(line, format!("expected `name degree`, got `{text}`"))),
    }
}

fn parse_target(line: usize, s: &str) -> Result<Target> {
    if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        let (l, r) = inner.split_once(',').ok_or_else(|| perr(line, format!("bad pair `{s}`")))?;
        if !valid_name(l) || !valid_name(r) {
            return Err(perr(line, format!("bad pair `{s}`")));
        }
        return Ok(Target::Pair(l.into(), r.into()));
    }
    if !valid_name(s) {
        return Err(perr(line, format!("bad basis name `{s}`")));
    }
    Ok(Target::One(s.into()))
}

/// `c1*t1 + c2*t2 - t3`, whitespace already removed. `0` is the empty sum.
fn parse_terms(line: usize, s: &str) -> Result<Terms> {
    if s.is_empty() || s == "0" {
        return Ok(Vec::new());
    }
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    let mut neg = false;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        // a sign splits terms unless it follows `*` or `/` inside a coefficient
        let prev = s[..i].chars().last();
        if depth == 0 && (ch == '+' || ch == '-') && !matches!(prev, Some('*') | Some('/')) {
            if i > 0 {
                pieces.push((neg, std::mem::take(&mut cur)));
            }
            neg = ch == '-';
            continue;
        }
        cur.push(ch);
    }
    pieces.push((neg, cur));
    let mut out = Vec::new();
    for (neg, p) in pieces {
        if p.is_empty() {
            return Err(perr(line, format!("empty term in `{s}`")));
        }
        let (coef, tgt) = match p.split_once('*') {
            Some((c, t)) => (c.to_string(), t),
            None => ("1".to_string(), p.as_str()),
        };
        let coef = if neg { format!("-{coef}") } else { coef };
        out.push((coef, parse_target(line, tgt)?));
    }
    Ok(out)
}

fn parse_rule(line: usize, text: &str) -> Result<(String, Terms)> {
    let (l, r) = text.split_once("->").ok_or_else(|| perr(line, format!("expected `source -> terms`, got `{text}`")))?;
    let squash = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
    Ok((squash(l), parse_terms(line, &squash(r))?))
}

impl DgcDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let mut doc = DgcDocument::default();
        let mut section = Section::None;
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let t = raw.split('#').next().unwrap_or("").trim();
            if t.is_empty() {
                continue;
            }
            let mut words = t.split_whitespace();
            let head = words.next().unwrap_or("").trim_end_matches(':');
            let rest: Vec<&str> = words.collect();
            match head {
                "field" => {
                    let f = rest.first().ok_or_else(|| perr(line, "field needs a value"))?;
                    doc.field = Some(f.parse().map_err(|e| perr(line, format!("{e}")))?);
                    section = Section::None;
                    continue;
                }
                "basis" | "differential" | "comultiplication" | "braiding" if !t.contains("->") => {
                    section = match head {
                        "basis" => Section::Basis,
                        "differential" => Section::Differential,
                        "braiding" => {
                            doc.braiding.get_or_insert_with(BraidingDoc::default);
                            Section::Braiding
                        }
                        _ => {
                            doc.full = match rest.as_slice() {
                                [] | ["reduced"] => false,
                                ["full"] => true,
                                _ => return Err(perr(line, format!("unknown comultiplication mode `{}`", rest.join(" ")))),
                            };
                            Section::Comult
                        }
                    };
                    if section != Section::Comult && !rest.is_empty() {
                        return Err(perr(line, format!("unexpected text after `{head}`")));
                    }
                    continue;
                }
                _ => {}
            }
            match section {
                Section::None => return Err(perr(line, format!("`{t}` outside any section"))),
                Section::Basis => doc.basis.push(parse_basis_line(line, t)?),
                Section::Differential => {
                    let (s, terms) = parse_rule(line, t)?;
                    doc.differential.push((line, s, terms));
                }
                Section::Comult => {
                    let (s, terms) = parse_rule(line, t)?;
                    doc.comult.push((line, s, terms));
                }
                Section::Braiding => {
                    let b = doc.braiding.as_mut().expect("opened");
                    match head {
                        "x" => b.x.push(parse_basis_line(line, &rest.join(" "))?),
                        "dx" => {
                            let (s, terms) = parse_rule(line, &rest.join(" "))?;
                            b.dx.push((line, s, terms));
                        }
                        "t" => {
                            let (s, terms) = parse_rule(line, &rest.join(" "))?;
                            match parse_target(line, &s)? {
                                Target::Pair(c, x) => b.t.push((line, (c, x), terms)),
                                Target::One(_) => return Err(perr(line, "t expects a pair `(c,x)`")),
                            }
                        }
                        _ => return Err(perr(line, format!("expected `x`, `dx` or `t`, got `{head}`"))),
                    }
                }
            }
        }
        if doc.basis.is_empty() {
            return Err(perr(0, "no basis section"));
        }
        Ok(doc)
    }

    /// Builds the coalgebra over `S`; coefficient literals are read in `S`.
    pub fn coalgebra<S: Scalar>(&self, name: &str) -> Result<DgCoalgebra<S>> {
        let space = GradedSpace::new(self.basis.iter().cloned())?;
        let one = space.index_of("1").ok_or_else(|| perr(0, "basis must contain the coaugmentation `1`"))?;
        let cc = GradedSpace::tensor(&[&space, &space], None);
        let d = single_map(&space, &space, -1, &self.differential)?;
        let mut cols: Vec<Vec<(usize, S)>> = vec![Vec::new(); space.dim()];
        let pair = |a: usize, b: usize| cc.index_of_tuple(&[a as u32, b as u32]).expect("full square");
        if !self.full {
            for (i, col) in cols.iter_mut().enumerate() {
                if i == one {
                    col.push((pair(one, one), S::one()));
                } else {
                    col.push((pair(i, one), S::one()));
                    col.push((pair(one, i), S::one()));
                }
            }
        }
        for (line, src, terms) in &self.comult {
            let i = lookup(&space, src, *line)?;
            for (c, t) in terms {
                let Target::Pair(l, r) = t else {
                    return Err(perr(*line, "comultiplication terms are pairs `(left,right)`"));
                };
                let (l, r) = (lookup(&space, l, *line)?, lookup(&space, r, *line)?);
                if space.degree(l) + space.degree(r) != space.degree(i) {
                    return Err(perr(*line, format!("term ({},{}) has the wrong degree", space.name(l), space.name(r))));
                }
                cols[i].push((pair(l, r), literal(c, *line)?));
            }
        }
        let comult = GradedMap::from_fn(&space, &cc, 0, |i| std::mem::take(&mut cols[i]))?;
        DgCoalgebra::new(name, space, d, comult)
    }

    /// The `(C, C)`-braiding data `(d_X, T)` if a `braiding` section exists.
    pub fn braiding<S: Scalar>(&self, c: &Arc<DgCoalgebra<S>>) -> Result<Option<(GradedMap<S>, GradedMap<S>)>> {
        let Some(b) = &self.braiding else { return Ok(None) };
        let x = if b.x.is_empty() { GradedSpace::ground() } else { GradedSpace::new(b.x.iter().cloned())? };
        let dx = single_map(&x, &x, -1, &b.dx)?;
        let cx = GradedSpace::tensor(&[c.space(), &x], None);
        let xc = GradedSpace::tensor(&[&x, c.space()], None);
        let find_x = |n: &str, line: usize| if x.is_ground() && n == "1" { Ok(0) } else { lookup(&x, n, line) };
        let mut cols: Vec<Vec<(usize, S)>> = vec![Vec::new(); cx.dim()];
        for (line, (cn, xn), terms) in &b.t {
            let s = [lookup(c.space(), cn, *line)? as u32, find_x(xn, *line)? as u32];
            let i = tuple_index(&cx, &s);
            for (coef, t) in terms {
                let Target::Pair(l, r) = t else {
                    return Err(perr(*line, "braiding terms are pairs `(x,c)`"));
                };
                let tt = [find_x(l, *line)? as u32, lookup(c.space(), r, *line)? as u32];
                cols[i].push((tuple_index(&xc, &tt), literal(coef, *line)?));
            }
        }
        let t = GradedMap::from_fn(&cx, &xc, 0, |i| std::mem::take(&mut cols[i]))?;
        Ok(Some((dx, t)))
    }
}

fn tuple_index(space: &GradedSpace, t: &[u32]) -> usize {
    // tensors with the ground flatten it away
    let t: Vec<u32> = if space.atom_count() < t.len() { t[..space.atom_count()].to_vec() } else { t.to_vec() };
    space.index_of_tuple(&t).expect("full tensor")
}

fn lookup(space: &GradedSpace, name: &str, line: usize) -> Result<usize> {
    space.index_of(name).ok_or_else(|| perr(line, format!("unknown basis element `{name}`")))
}

fn literal<S: Scalar>(c: &str, line: usize) -> Result<S> {
    S::parse_literal(c).map_err(|e| perr(line, format!("coefficient `{c}`: {e}")))
}

fn single_map<S: Scalar>(
    source: &Arc<GradedSpace>,
    target: &Arc<GradedSpace>,
    degree: i32,
    rules: &[(usize, String, Terms)],
) -> Result<GradedMap<S>> {
    let mut cols: Vec<Vec<(usize, S)>> = vec![Vec::new(); source.dim()];
    for (line, src, terms) in rules {
        let i = lookup(source, src, *line)?;
        for (c, t) in terms {
            let Target::One(n) = t else {
                return Err(perr(*line, "differential terms are single basis elements"));
            };
            let j = lookup(target, n, *line)?;
            if target.degree(j) != source.degree(i) + degree {
                return Err(perr(*line, format!("{src} -> {n} has the wrong degree")));
            }
            cols[i].push((j, literal(c, *line)?));
        }
    }
    GradedMap::from_fn(source, target, degree, |i| std::mem::take(&mut cols[i]))
}

/// Writes `c` as a `.dgc` document with the reduced comultiplication.
pub fn write_dgc<S: Scalar>(c: &DgCoalgebra<S>) -> String {
    let space = c.space();
    let cc = c.cc();
    let mut out = String::new();
    let _ = writeln!(out, "# {}", c.name());
    let _ = writeln!(out, "field {}", S::field());
    out.push_str("basis\n");
    for i in 0..space.dim() {
        let _ = writeln!(out, "  {} {}", space.name(i), space.degree(i));
    }
    let coef = |v: &S| format!("{v}");
    out.push_str("differential\n");
    for i in 0..space.dim() {
        let col = c.d().column(i);
        if !col.is_empty() {
            let terms: Vec<String> = col.iter().map(|(j, v)| format!("{}*{}", coef(v), space.name(*j))).collect();
            let _ = writeln!(out, "  {} -> {}", space.name(i), terms.join(" + "));
        }
    }
    let one = c.one_index();
    out.push_str(if one.is_some() { "comultiplication\n" } else { "comultiplication full\n" });
    for i in 0..space.dim() {
        let terms: Vec<String> = c
            .comult()
            .column(i)
            .iter()
            .filter(|(t, v)| {
                let tu = cc.tuple(*t);
                let trivial = one.is_some_and(|o| {
                    let o = o as u32;
                    if i as u32 == o {
                        tu == [o, o]
                    } else {
                        tu == [i as u32, o] || tu == [o, i as u32]
                    }
                });
                !(trivial && v.is_one())
            })
            .map(|(t, v)| {
                let tu = cc.tuple(*t);
                format!("{}*({},{})", coef(v), space.name(tu[0] as usize), space.name(tu[1] as usize))
            })
            .collect();
        if !terms.is_empty() {
            let _ = writeln!(out, "  {} -> {}", space.name(i), terms.join(" + "));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgcore::cp2;
    use crate::{F2, Q};

    const BROKEN: &str = "
        field Q
        basis
          1 0
          a 2
          b 4
          c 6
        differential
        comultiplication
          b -> (a,a)
          c -> 1*(a, b)   # no (b,a): not coassociative
    ";

    #[test]
    fn parses_and_validates() {
        let doc = DgcDocument::parse("field F3\nbasis:\n 1 0\n a 2\n b 3 # comment\ndifferential\n a -> b\n").unwrap();
        assert_eq!(doc.field, Some(FieldSpec::Prime(3)));
        assert!(matches!(doc.coalgebra::<F2>("t"), Err(Error::Parse { line: 7, .. })));
        let doc = DgcDocument::parse("basis\n 1 0\n a 2\n b 3\ndifferential\n b -> -1 * a\n").unwrap();
        assert_eq!(doc.field, None);
        let c = doc.coalgebra::<Q>("t").unwrap();
        assert!(c.validate().passed());
        assert_eq!(c.d().render(c.d().column(2)), "-1*a");
    }

    #[test]
    fn broken_names_the_axiom() {
        let c = DgcDocument::parse(BROKEN).unwrap().coalgebra::<Q>("broken").unwrap();
        let r = c.validate();
        assert!(r.failed("coassociativity") && !r.failed("counit"), "{r}");
    }

    #[test]
    fn writer_reads_back() {
        let c = cp2::<Q>();
        let text = write_dgc(&c);
        assert!(text.contains("y4 -> 1*(y2,y2)"), "{text}");
        let back = DgcDocument::parse(&text).unwrap().coalgebra::<Q>("cp2").unwrap();
        assert!(back.comult().agrees_by_name(c.comult()).is_ok());
    }

    #[test]
    fn parse_errors_carry_lines() {
        for (text, line) in [
            ("basis\n 1 0\n a x\n", 3),
            ("basis\n 1 0\ndifferential\n a -> 1*1\n", 4),
            ("junk\n", 1),
            ("basis\n 1 0\n a 1\ncomultiplication\n a -> (a,1,1)\n", 5),
            ("field F4\n", 1),
        ] {
            let e = DgcDocument::parse(text).and_then(|d| d.coalgebra::<Q>("e"));
            match e {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn braiding_section() {
        let text = "basis\n 1 0\n z 3\nbraiding\n x x 0\n t (1,x) -> (x,1)\n t (z,x) -> -1*(x,z)\n";
        let doc = DgcDocument::parse(text).unwrap();
        let c = Arc::new(doc.coalgebra::<Q>("s3").unwrap());
        let (dx, t) = doc.braiding(&c).unwrap().unwrap();
        assert_eq!(dx.source().dim(), 1);
        assert_eq!(t.nnz(), 2);
    }
}
