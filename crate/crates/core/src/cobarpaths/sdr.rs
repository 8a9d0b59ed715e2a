use std::sync::Arc;

use crate::coefficients::Scalar;
use crate::dgcore::{attempt, DgCoalgebra, Report};
use crate::error::Result;
use crate::gradedlin::{GradedMap, GradedSpace, TruncatedComplex};

use super::cobar::CobarAlgebra;
use super::words::{Bounds, Slot, WordEngine, WordSpace, MODULE_CONTRACTION, RIGHT_CONTRACTION};

/// A strong deformation retract `small ⇄ big` with homotopy `h`:
/// `retract ∘ section = id` and `Dh + hD = id − section ∘ retract`.
#[derive(Debug)]
pub struct SdrWitness<S: Scalar> {
    pub name: String,
    pub words: WordSpace<S>,
    pub big: TruncatedComplex<S>,
    pub small_d: GradedMap<S>,
    /// `π` or `ρ`.
    pub retract: GradedMap<S>,
    /// `σ` or `ι`.
    pub section: GradedMap<S>,
    pub homotopy: GradedMap<S>,
}

impl<S: Scalar> SdrWitness<S> {
    pub fn space(&self) -> &Arc<GradedSpace> {
        self.words.space()
    }

    pub fn d(&self) -> &GradedMap<S> {
        self.big.differential()
    }

    /// `D h + h D` as a map.
    pub fn homotopy_boundary(&self) -> Result<GradedMap<S>> {
        let d = self.d();
        d.compose(&self.homotopy)?.add(&self.homotopy.compose(d)?)
    }

    /// Checks every identity on basis elements of degree `<= horizon`.
    pub fn check(&self) -> Report {
        let n = self.big.horizon();
        let mut r = Report::new(self.name.clone());
        let small = self.section.source();
        r.record(
            "retract ∘ section = id",
            attempt(|| {
                Ok(self
                    .retract
                    .compose(&self.section)?
                    .agrees_with(&GradedMap::identity(small), Some(n)))
            }),
        );
        r.record(
            "section is a chain map",
            attempt(|| {
                Ok(self
                    .d()
                    .compose(&self.section)?
                    .agrees_with(&self.section.compose(&self.small_d)?, Some(n)))
            }),
        );
        r.record(
            "retract is a chain map",
            attempt(|| {
                Ok(self
                    .small_d
                    .compose(&self.retract)?
                    .agrees_with(&self.retract.compose(self.d())?, Some(n)))
            }),
        );
        r.record(
            "Dh + hD = id − section ∘ retract",
            attempt(|| {
                let rhs =
                    GradedMap::identity(self.space()).sub(&self.section.compose(&self.retract)?)?;
                Ok(self.homotopy_boundary()?.agrees_with(&rhs, Some(n)))
            }),
        );
        r
    }
}

/// `ΩC ⇄ P_R C □_C P_L C` on `T(σC̄)⊗C⊗T(σC̄)`.
pub fn sdr_module_side<S: Scalar>(
    c: &Arc<DgCoalgebra<S>>,
    bounds: Bounds,
) -> Result<SdrWitness<S>> {
    let e = Arc::new(WordEngine::new(c.clone(), bounds)?);
    let omega = CobarAlgebra::from_engine(e.clone())?;
    let l = e.max_len;
    let shapes = (0..=l)
        .flat_map(|m| (0..=l - m).map(move |n| vec![Slot::Word(m), Slot::Coef(0), Slot::Word(n)]));
    let words = e.word_space(vec![e.regular_coef()?], shapes)?;
    let mut blocks = Vec::new();
    for p in 0..words.shapes.len() {
        blocks.extend(e.internal_terms(&words, p)?);
        blocks.extend(e.left_coaction_term(&words, p, 1)?);
        blocks.extend(e.right_coaction_term(&words, p, 1)?);
    }
    let d = words.assemble(&words, -1, blocks)?;
    let label = format!("P_R□P_L({})", c.name());
    let big =
        TruncatedComplex::new(d, bounds.max_degree, label.clone())?.approximate(e.approximate);

    let eta = c.coaug().expect("connected").clone();
    let eps = c.counit();
    let mut pi = Vec::new();
    let mut h = Vec::new();
    for (p, sh) in words.shapes.iter().enumerate() {
        let [Slot::Word(m), _, Slot::Word(n)] = sh[..] else {
            unreachable!()
        };
        if let Some(q) = omega.words.part_of(&[Slot::Word(m + n)]) {
            let f = GradedMap::tensor(
                &[&e.ids[m], eps, &e.ids[n]],
                words.sum.part(p),
                omega.words.sum.part(q),
            )?;
            pi.push((p, omega.words.sum.inclusion(q).compose(&f)?));
        }
        for i in 0..n {
            let split = e.split_word(n, i)?;
            let target = [Slot::Word(m + i), Slot::Coef(0), Slot::Word(n - i - 1)];
            if let Some((p, q, f)) =
                e.block(&words, p, &[&e.ids[m], eps, &split], &words, &target)?
            {
                h.push((p, q, f.scale(&S::from_i64(MODULE_CONTRACTION))));
            }
        }
    }
    let retract = words.outgoing(omega.space(), 0, &pi)?;
    let homotopy = words.assemble(&words, 1, h)?;
    let mut sections = Vec::new();
    for (q, sh) in omega.words.shapes.iter().enumerate() {
        let Slot::Word(n) = sh[0] else { unreachable!() };
        if let Some(p) = words.part_of(&[Slot::Word(n), Slot::Coef(0), Slot::Word(0)]) {
            let f = GradedMap::tensor(
                &[&e.ids[n], &eta],
                omega.words.sum.part(q),
                words.sum.part(p),
            )?;
            sections.push((p, f.compose(&proj(&omega.words, q)?)?));
        }
    }
    let section = sum_into(&words, omega.space(), &sections)?;
    Ok(SdrWitness {
        name: label,
        words,
        big,
        small_d: omega.d().clone(),
        retract,
        section,
        homotopy,
    })
}

/// `C ⇄ P_L C ⊗_{ΩC} P_R C` on `C⊗T(σC̄)⊗C`, with homotopy `id ⊗ h_R`.
pub fn sdr_comodule_side<S: Scalar>(
    c: &Arc<DgCoalgebra<S>>,
    bounds: Bounds,
) -> Result<SdrWitness<S>> {
    let e = Arc::new(WordEngine::new(c.clone(), bounds)?);
    let coef = e.regular_coef()?;
    let shapes = (0..=e.max_len).map(|n| vec![Slot::Coef(0), Slot::Word(n), Slot::Coef(0)]);
    let words = e.word_space(vec![coef], shapes)?;
    let mut blocks = Vec::new();
    for p in 0..words.shapes.len() {
        blocks.extend(e.internal_terms(&words, p)?);
        blocks.extend(e.right_coaction_term(&words, p, 0)?);
        blocks.extend(e.left_coaction_term(&words, p, 2)?);
    }
    let d = words.assemble(&words, -1, blocks)?;
    let label = format!("P_L⊗P_R({})", c.name());
    let big =
        TruncatedComplex::new(d, bounds.max_degree, label.clone())?.approximate(e.approximate);

    let cs = c.space();
    let id_c = c.identity();
    let eps = c.counit();
    let base = words
        .part_of(&[Slot::Coef(0), Slot::Word(0), Slot::Coef(0)])
        .expect("C⊗1⊗C");
    let iota = GradedMap::tensor(&[c.comult()], cs, words.sum.part(base))?;
    let section = words.incoming(cs, 0, &[(base, iota)])?;
    let rho = GradedMap::tensor(&[&id_c, eps], words.sum.part(base), cs)?;
    let retract = words.outgoing(cs, 0, &[(base, rho)])?;
    let mut h = Vec::new();
    for (p, sh) in words.shapes.iter().enumerate() {
        let Slot::Word(n) = sh[1] else { unreachable!() };
        if n == 0 {
            continue;
        }
        let split = e.split_word(n, n - 1)?;
        let target = [Slot::Coef(0), Slot::Word(n - 1), Slot::Coef(0)];
        if let Some((p, q, f)) = e.block(&words, p, &[&id_c, &split, eps], &words, &target)? {
            h.push((p, q, f.scale(&S::from_i64(RIGHT_CONTRACTION))));
        }
    }
    let homotopy = words.assemble(&words, 1, h)?;
    Ok(SdrWitness {
        name: label,
        words,
        big,
        small_d: c.d().clone(),
        retract,
        section,
        homotopy,
    })
}

fn proj<S: Scalar>(ws: &WordSpace<S>, q: usize) -> Result<GradedMap<S>> {
    let part = ws.sum.part(q);
    ws.outgoing(part, 0, &[(q, GradedMap::identity(part))])
}

/// A map into `ws` from a space mapping through several parts.
fn sum_into<S: Scalar>(
    ws: &WordSpace<S>,
    source: &Arc<GradedSpace>,
    blocks: &[(usize, GradedMap<S>)],
) -> Result<GradedMap<S>> {
    ws.incoming(source, 0, blocks)
}
