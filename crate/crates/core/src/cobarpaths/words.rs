//! Tensor words on the desuspended coideal and the direct sums of tensor
//! products built from them. Every structure map is assembled from
//! elementary maps through the Koszul tensor calculus.

use std::collections::HashMap;
use std::sync::Arc;

use crate::coefficients::Scalar;
use crate::dgcore::{Bicomodule, DgCoalgebra, LeftComodule, RightComodule};
use crate::error::{Error, Result};
use crate::gradedlin::{DirectSum, GradedMap, GradedSpace};

/// Sign of the coaction term `e_j⊗σe^j|w` on the left-coaction side.
pub(crate) const LEFT_TWIST: i64 = -1;
/// Sign of the coaction term `w|σe_j⊗e^j` on the right-coaction side.
pub(crate) const RIGHT_TWIST: i64 = 1;
/// Overall signs of the contracting homotopies.
pub(crate) const LEFT_CONTRACTION: i64 = -1;
pub(crate) const RIGHT_CONTRACTION: i64 = 1;
pub(crate) const MODULE_CONTRACTION: i64 = -1;

/// Construction bounds: words are kept through total degree
/// `max_degree + 1`, and through length `word_bound` when given.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_degree: i32,
    pub word_bound: Option<usize>,
}

impl Bounds {
    pub fn new(max_degree: i32) -> Self {
        Bounds {
            max_degree,
            word_bound: None,
        }
    }

    pub fn with_word_bound(max_degree: i32, word_bound: Option<usize>) -> Self {
        Bounds {
            max_degree,
            word_bound,
        }
    }
}

/// A tensor slot of a word complex: a coefficient complex or `T_n = (σC̄)^{⊗n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    Coef(usize),
    Word(usize),
}

/// A coefficient complex with its coactions composed with `σ`.
#[derive(Clone, Debug)]
pub struct Coef<S: Scalar> {
    pub space: Arc<GradedSpace>,
    pub d: GradedMap<S>,
    pub id: GradedMap<S>,
    /// `(1⊗σ)ρ : M → M⊗σC̄`
    pub right: Option<GradedMap<S>>,
    /// `(σ⊗1)λ : M → σC̄⊗M`
    pub left: Option<GradedMap<S>>,
    /// `λ : M → C⊗M`
    pub lambda: Option<GradedMap<S>>,
}

/// Letters `σC̄`, the word spaces `T_n` and the cobar differential pieces.
#[derive(Debug)]
pub struct WordEngine<S: Scalar> {
    pub coalgebra: Arc<DgCoalgebra<S>>,
    pub bounds: Bounds,
    pub top: i32,
    pub max_len: usize,
    pub approximate: bool,
    pub letters: Arc<GradedSpace>,
    /// `σ: C → σC̄`, zero on `1`.
    pub sigma: GradedMap<S>,
    /// `σ^{-1}: σC̄ → C`.
    pub unsigma: GradedMap<S>,
    pub words: Vec<Arc<GradedSpace>>,
    pub ids: Vec<GradedMap<S>>,
    /// `d_Ω` restricted to `T_n → T_n` (from `-σdσ^{-1}`).
    pub dlin: Vec<GradedMap<S>>,
    /// `d_Ω` restricted to `T_n → T_{n+1}` (from `(σ⊗σ)Δσ^{-1}`).
    pub dquad: Vec<Option<GradedMap<S>>>,
}

fn letter_name(c: &str) -> String {
    if c.chars().all(|ch| ch.is_alphanumeric() || ch == '_') {
        format!("σ{c}")
    } else {
        format!("σ({c})")
    }
}

impl<S: Scalar> WordEngine<S> {
    pub fn new(coalgebra: Arc<DgCoalgebra<S>>, bounds: Bounds) -> Result<Self> {
        coalgebra.require_connected()?;
        if bounds.max_degree < 0 {
            return Err(Error::Invalid("degree bound must be nonnegative".into()));
        }
        let simply = coalgebra.is_simply_connected();
        if !simply && bounds.word_bound.is_none() {
            return Err(Error::NotSimplyConnected(format!(
                "{} has C_1 ≠ 0; a word-length bound is required",
                coalgebra.name()
            )));
        }
        let top = bounds.max_degree + 1;
        let max_len = match (simply, bounds.word_bound) {
            (true, w) => w.map_or(top as usize, |w| w.min(top as usize)),
            (false, w) => w.expect("checked above"),
        };
        let c = coalgebra.space();
        let reduced = coalgebra.reduced_indices();
        let letters = GradedSpace::new(
            reduced
                .iter()
                .map(|&i| (letter_name(c.name(i)), c.degree(i) - 1)),
        )?;
        let letter_of: HashMap<usize, usize> = reduced
            .iter()
            .map(|&i| (i, letters.require(&letter_name(c.name(i))).expect("letter")))
            .collect();
        let sigma = GradedMap::from_fn(c, &letters, -1, |i| {
            letter_of
                .get(&i)
                .map(|&l| vec![(l, S::one())])
                .unwrap_or_default()
        })?;
        let unletter: HashMap<usize, usize> = letter_of.iter().map(|(&i, &l)| (l, i)).collect();
        let unsigma = GradedMap::from_fn(&letters, c, 1, |l| vec![(unletter[&l], S::one())])?;

        let d1 = sigma.compose(&coalgebra.d().compose(&unsigma)?)?.neg();
        let ll = GradedSpace::tensor(&[&letters, &letters], None);
        let d2 = GradedMap::tensor(&[&sigma, &sigma], coalgebra.cc(), &ll)?
            .compose(&coalgebra.comult().compose(&unsigma)?)?;

        let mut words = Vec::with_capacity(max_len + 1);
        for n in 0..=max_len {
            let factors: Vec<&Arc<GradedSpace>> = std::iter::repeat(&letters).take(n).collect();
            words.push(if n == 0 {
                GradedSpace::ground()
            } else {
                GradedSpace::tensor(&factors, Some(top))
            });
        }
        let ids: Vec<GradedMap<S>> = words.iter().map(GradedMap::identity).collect();
        let id_letter = GradedMap::identity(&letters);
        let positional = |n: usize,
                          i: usize,
                          f: &GradedMap<S>,
                          target: &Arc<GradedSpace>|
         -> Result<GradedMap<S>> {
            let factors: Vec<&GradedMap<S>> = (0..n)
                .map(|j| if j == i { f } else { &id_letter })
                .collect();
            GradedMap::tensor(&factors, &words[n], target)
        };
        let mut dlin = Vec::with_capacity(max_len + 1);
        let mut dquad = Vec::with_capacity(max_len + 1);
        for n in 0..=max_len {
            let mut lin = GradedMap::zero(&words[n], &words[n], -1);
            for i in 0..n {
                lin = lin.add(&positional(n, i, &d1, &words[n])?)?;
            }
            dlin.push(lin);
            if n < max_len {
                let mut quad = GradedMap::zero(&words[n], &words[n + 1], -1);
                for i in 0..n {
                    quad = quad.add(&positional(n, i, &d2, &words[n + 1])?)?;
                }
                dquad.push(Some(quad));
            } else {
                dquad.push(None);
            }
        }
        Ok(WordEngine {
            coalgebra,
            bounds,
            top,
            max_len,
            approximate: !simply,
            letters,
            sigma,
            unsigma,
            words,
            ids,
            dlin,
            dquad,
        })
    }

    /// `C` as a coefficient, with `ρ = λ = Δ`.
    pub fn regular_coef(&self) -> Result<Coef<S>> {
        let c = &self.coalgebra;
        self.coef(c.d(), Some(c.comult()), Some(c.comult()))
    }

    pub fn bicomodule_coef(&self, m: &Bicomodule<S>) -> Result<Coef<S>> {
        self.coef(&m.left.d, Some(&m.right.coaction), Some(&m.left.coaction))
    }

    pub fn right_comodule_coef(&self, m: &RightComodule<S>) -> Result<Coef<S>> {
        self.coef(&m.d, Some(&m.coaction), None)
    }

    pub fn left_comodule_coef(&self, m: &LeftComodule<S>) -> Result<Coef<S>> {
        self.coef(&m.d, None, Some(&m.coaction))
    }

    /// A coefficient complex with optional right coaction `ρ: M → M⊗C` and
    /// left coaction `λ: M → C⊗M`.
    pub fn coef(
        &self,
        d: &GradedMap<S>,
        rho: Option<&GradedMap<S>>,
        lambda: Option<&GradedMap<S>>,
    ) -> Result<Coef<S>> {
        let m = d.source().clone();
        let id = GradedMap::identity(&m);
        let right = rho
            .map(|rho| {
                let ml = GradedSpace::tensor(&[&m, &self.letters], None);
                GradedMap::tensor(&[&id, &self.sigma], rho.target(), &ml)?.compose(rho)
            })
            .transpose()?;
        let left = lambda
            .map(|lam| {
                let lm = GradedSpace::tensor(&[&self.letters, &m], None);
                GradedMap::tensor(&[&self.sigma, &id], lam.target(), &lm)?.compose(lam)
            })
            .transpose()?;
        Ok(Coef {
            space: m,
            d: d.clone(),
            id,
            right,
            left,
            lambda: lambda.cloned(),
        })
    }

    /// `σ^{-1}` applied to letter `i` of `T_n`: `T_n → T_{i}⊗C⊗T_{n-i-1}`
    /// (zero-based `i`), truncated at the top degree.
    pub fn split_word(&self, n: usize, i: usize) -> Result<GradedMap<S>> {
        let c = self.coalgebra.space();
        let target =
            GradedSpace::tensor(&[&self.words[i], c, &self.words[n - i - 1]], Some(self.top));
        let id_letter = GradedMap::identity(&self.letters);
        let factors: Vec<&GradedMap<S>> = (0..n)
            .map(|j| if j == i { &self.unsigma } else { &id_letter })
            .collect();
        GradedMap::tensor(&factors, &self.words[n], &target)
    }

    /// The direct sum of the tensor products described by `shapes`; shapes
    /// beyond the word bound and empty products are left out.
    pub fn word_space(
        &self,
        coefs: Vec<Coef<S>>,
        shapes: impl IntoIterator<Item = Vec<Slot>>,
    ) -> Result<WordSpace<S>> {
        let mut kept = Vec::new();
        let mut parts = Vec::new();
        for shape in shapes {
            if shape
                .iter()
                .any(|s| matches!(s, Slot::Word(n) if *n > self.max_len))
            {
                continue;
            }
            let factors: Vec<&Arc<GradedSpace>> = shape
                .iter()
                .map(|s| match s {
                    Slot::Coef(k) => &coefs[*k].space,
                    Slot::Word(n) => &self.words[*n],
                })
                .collect();
            let part = GradedSpace::tensor(&factors, Some(self.top));
            if part.is_empty() {
                continue;
            }
            kept.push(shape);
            parts.push(part);
        }
        let sum = DirectSum::new(parts.clone(), |p, i| {
            self.render(&coefs, &kept[p], &parts[p], i)
        })?;
        let index = kept
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Ok(WordSpace {
            shapes: kept,
            index,
            sum,
            coefs,
        })
    }

    /// Name of element `i` of a part: slots joined by `⊗`, letters by `|`.
    fn render(
        &self,
        coefs: &[Coef<S>],
        shape: &[Slot],
        part: &Arc<GradedSpace>,
        i: usize,
    ) -> String {
        let t = part.tuple(i);
        let mut at = 0;
        let mut pieces = Vec::with_capacity(shape.len());
        for s in shape {
            match s {
                Slot::Coef(k) => {
                    let sp = &coefs[*k].space;
                    let w = sp.atom_count();
                    let idx = sp
                        .index_of_tuple(&t[at..at + w])
                        .expect("coefficient chunk");
                    at += w;
                    let n = sp.name(idx);
                    pieces.push(if n.contains('⊗') {
                        format!("({n})")
                    } else {
                        n.to_string()
                    });
                }
                Slot::Word(n) => {
                    if *n == 0 {
                        pieces.push("1".to_string());
                    } else {
                        let w: Vec<&str> = t[at..at + n]
                            .iter()
                            .map(|&l| self.letters.name(l as usize))
                            .collect();
                        pieces.push(w.join("|"));
                    }
                    at += n;
                }
            }
        }
        pieces.join("⊗")
    }

    pub fn slot_id<'a>(&'a self, ws: &'a WordSpace<S>, s: Slot) -> &'a GradedMap<S> {
        match s {
            Slot::Coef(k) => &ws.coefs[k].id,
            Slot::Word(n) => &self.ids[n],
        }
    }

    /// The tensor product of `factors` from part `p` of `src` into the part of
    /// `tgt` with shape `target`; `None` when that part is absent.
    pub fn block(
        &self,
        src: &WordSpace<S>,
        p: usize,
        factors: &[&GradedMap<S>],
        tgt: &WordSpace<S>,
        target: &[Slot],
    ) -> Result<Option<(usize, usize, GradedMap<S>)>> {
        let Some(q) = tgt.part_of(target) else {
            return Ok(None);
        };
        let m = GradedMap::tensor(factors, src.sum.part(p), tgt.sum.part(q))?;
        Ok(Some((p, q, m)))
    }

    /// Applies `f` in slot `k` of part `p` (identities elsewhere), landing in
    /// the part with shape `target`.
    pub fn term(
        &self,
        ws: &WordSpace<S>,
        p: usize,
        k: usize,
        f: &GradedMap<S>,
        target: &[Slot],
    ) -> Result<Option<(usize, usize, GradedMap<S>)>> {
        self.replace(ws, p, &[(k, f)], ws, target)
    }

    /// Identities on every slot of part `p` except the replaced ones.
    pub fn replace(
        &self,
        src: &WordSpace<S>,
        p: usize,
        replaced: &[(usize, &GradedMap<S>)],
        tgt: &WordSpace<S>,
        target: &[Slot],
    ) -> Result<Option<(usize, usize, GradedMap<S>)>> {
        let shape = &src.shapes[p];
        let factors: Vec<&GradedMap<S>> = shape
            .iter()
            .enumerate()
            .map(|(j, s)| match replaced.iter().find(|(k, _)| *k == j) {
                Some((_, f)) => *f,
                None => self.slot_id(src, *s),
            })
            .collect();
        self.block(src, p, &factors, tgt, target)
    }

    /// The internal differential of part `p`: coefficient differentials and
    /// both pieces of `d_Ω` in each word slot.
    pub fn internal_terms(
        &self,
        ws: &WordSpace<S>,
        p: usize,
    ) -> Result<Vec<(usize, usize, GradedMap<S>)>> {
        let shape = ws.shapes[p].clone();
        let mut out = Vec::new();
        for (k, s) in shape.iter().enumerate() {
            match *s {
                Slot::Coef(c) => out.extend(self.term(ws, p, k, &ws.coefs[c].d, &shape)?),
                Slot::Word(n) => {
                    out.extend(self.term(ws, p, k, &self.dlin[n], &shape)?);
                    if let Some(q) = &self.dquad[n] {
                        let mut t = shape.clone();
                        t[k] = Slot::Word(n + 1);
                        out.extend(self.term(ws, p, k, q, &t)?);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `±(1⊗σ)ρ` on coefficient slot `k`, absorbed into the word slot after it.
    pub fn right_coaction_term(
        &self,
        ws: &WordSpace<S>,
        p: usize,
        k: usize,
    ) -> Result<Option<(usize, usize, GradedMap<S>)>> {
        let shape = &ws.shapes[p];
        let Slot::Coef(c) = shape[k] else {
            return Err(Error::Invalid("not a coefficient slot".into()));
        };
        let Some(Slot::Word(n)) = shape.get(k + 1).copied() else {
            return Err(Error::Invalid(
                "right coaction needs a following word slot".into(),
            ));
        };
        let f = ws.coefs[c]
            .right
            .as_ref()
            .ok_or_else(|| Error::Invalid("coefficient has no right coaction".into()))?;
        let mut t = shape.clone();
        t[k + 1] = Slot::Word(n + 1);
        self.term(ws, p, k, &f.scale(&S::from_i64(LEFT_TWIST)), &t)
    }

    /// `±(σ⊗1)λ` on coefficient slot `k`, absorbed into the word slot before it.
    pub fn left_coaction_term(
        &self,
        ws: &WordSpace<S>,
        p: usize,
        k: usize,
    ) -> Result<Option<(usize, usize, GradedMap<S>)>> {
        let shape = &ws.shapes[p];
        let Slot::Coef(c) = shape[k] else {
            return Err(Error::Invalid("not a coefficient slot".into()));
        };
        let Some(Slot::Word(n)) = k.checked_sub(1).map(|j| shape[j]) else {
            return Err(Error::Invalid(
                "left coaction needs a preceding word slot".into(),
            ));
        };
        let f = ws.coefs[c]
            .left
            .as_ref()
            .ok_or_else(|| Error::Invalid("coefficient has no left coaction".into()))?;
        let mut t = shape.clone();
        t[k - 1] = Slot::Word(n + 1);
        self.term(ws, p, k, &f.scale(&S::from_i64(RIGHT_TWIST)), &t)
    }
}

/// A direct sum of tensor products of coefficient complexes and word spaces.
#[derive(Clone, Debug)]
pub struct WordSpace<S: Scalar> {
    pub shapes: Vec<Vec<Slot>>,
    pub index: HashMap<Vec<Slot>, usize>,
    pub sum: DirectSum,
    pub coefs: Vec<Coef<S>>,
}

impl<S: Scalar> WordSpace<S> {
    pub fn space(&self) -> &Arc<GradedSpace> {
        self.sum.space()
    }

    /// Global index of the element of part `shape` with factor tuple `t`.
    pub fn global_of(&self, shape: &[Slot], t: &[u32]) -> Option<usize> {
        let p = self.part_of(shape)?;
        let local = self.sum.part(p).index_of_tuple(t)?;
        Some(self.sum.global(p, local))
    }

    /// Part shape and factor tuple of a global basis element.
    pub fn unpack(&self, g: usize) -> (&[Slot], Vec<u32>) {
        let (p, i) = self.sum.locate(g);
        (&self.shapes[p], self.sum.part(p).tuple(i))
    }

    pub fn part_of(&self, shape: &[Slot]) -> Option<usize> {
        self.index.get(shape).copied()
    }

    /// Assembles an endomorphism or map to another word space from blocks.
    pub fn assemble(
        &self,
        target: &WordSpace<S>,
        degree: i32,
        blocks: impl IntoIterator<Item = (usize, usize, GradedMap<S>)>,
    ) -> Result<GradedMap<S>> {
        DirectSum::assemble(&self.sum, &target.sum, degree, blocks)
    }
}

impl<S: Scalar> WordSpace<S> {
    /// A map out of the sum given by one map per part (parts not listed go to zero).
    pub fn outgoing(
        &self,
        target: &Arc<GradedSpace>,
        degree: i32,
        blocks: &[(usize, GradedMap<S>)],
    ) -> Result<GradedMap<S>> {
        let mut by_part: Vec<Option<&GradedMap<S>>> = vec![None; self.shapes.len()];
        for (p, f) in blocks {
            if !f.source().same_as(self.sum.part(*p)) || !f.target().same_as(target) {
                return Err(Error::Mismatch("outgoing block does not fit".into()));
            }
            by_part[*p] = Some(f);
        }
        GradedMap::from_fn(self.space(), target, degree, |g| {
            let (p, i) = self.sum.locate(g);
            by_part[p].map(|f| f.column(i).to_vec()).unwrap_or_default()
        })
    }

    /// A map into the sum given by one map into each listed part.
    pub fn incoming(
        &self,
        source: &Arc<GradedSpace>,
        degree: i32,
        blocks: &[(usize, GradedMap<S>)],
    ) -> Result<GradedMap<S>> {
        for (q, f) in blocks {
            if !f.source().same_as(source) || !f.target().same_as(self.sum.part(*q)) {
                return Err(Error::Mismatch("incoming block does not fit".into()));
            }
        }
        GradedMap::from_fn(source, self.space(), degree, |i| {
            let mut out = Vec::new();
            for (q, f) in blocks {
                out.extend(
                    f.column(i)
                        .iter()
                        .map(|(j, x)| (self.sum.global(*q, *j), x.clone())),
                );
            }
            out
        })
    }
}
