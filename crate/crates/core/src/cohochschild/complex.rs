use std::sync::Arc;

use crate::cobarpaths::{Bounds, CobarAlgebra, Slot, WordEngine, WordSpace};
use crate::coefficients::Scalar;
use crate::dgcore::{attempt, Bicomodule, DgCoalgebra, Report};
use crate::error::{Error, Result};
use crate::gradedlin::{rotate, GradedMap, GradedSpace, TruncatedComplex};

/// Overall sign of the group `e^i⊗w|σe_i` coming from the left coaction.
pub(crate) const CYCLIC_TWIST: i64 = 1;

/// `Ĥ(M, C) = (M⊗T(σC̄), d_Ĥ)` through degree `N + 1`.
#[derive(Debug)]
pub struct CoHochschildComplex<S: Scalar> {
    pub cobar: Arc<CobarAlgebra<S>>,
    pub coefficients: Bicomodule<S>,
    pub words: WordSpace<S>,
    pub complex: TruncatedComplex<S>,
    /// `1⊗ε: Ĥ(M, C) → M`.
    pub base_projection: GradedMap<S>,
}

/// `Ĥ(C)`, with `M = C` and `λ = ρ = Δ`.
pub fn cohochschild_complex<S: Scalar>(
    c: &Arc<DgCoalgebra<S>>,
    bounds: Bounds,
) -> Result<CoHochschildComplex<S>> {
    cohochschild_with(c, bounds, Bicomodule::regular(c))
}

pub fn cohochschild_with<S: Scalar>(
    c: &Arc<DgCoalgebra<S>>,
    bounds: Bounds,
    m: Bicomodule<S>,
) -> Result<CoHochschildComplex<S>> {
    if !Arc::ptr_eq(m.coalgebra(), c) && !m.coalgebra().space().same_as(c.space()) {
        return Err(Error::Mismatch(
            "coefficients are over a different coalgebra".into(),
        ));
    }
    let report = m.validate();
    if !report.passed() {
        return Err(Error::Invalid(format!(
            "coefficients are not a bicomodule: {report}"
        )));
    }
    let e = Arc::new(WordEngine::new(c.clone(), bounds)?);
    let cobar = Arc::new(CobarAlgebra::from_engine(e.clone())?);
    let words = e.word_space(
        vec![e.bicomodule_coef(&m)?],
        (0..=e.max_len).map(|n| vec![Slot::Coef(0), Slot::Word(n)]),
    )?;
    let coef = &words.coefs[0];
    let lambda = coef
        .lambda
        .as_ref()
        .expect("bicomodule has a left coaction");
    let mut blocks = Vec::new();
    for p in 0..words.shapes.len() {
        blocks.extend(e.internal_terms(&words, p)?);
        blocks.extend(e.right_coaction_term(&words, p, 0)?);
        let [_, Slot::Word(n)] = words.shapes[p][..] else {
            unreachable!()
        };
        let Some(q) = words.part_of(&[Slot::Coef(0), Slot::Word(n + 1)]) else {
            continue;
        };
        // λ⊗1, then move the C factor to the end and desuspend it there
        let part = words.sum.part(p);
        let cs = c.space();
        let cmt = GradedSpace::tensor(&[cs, &coef.space, &e.words[n]], Some(e.top));
        let mtc = GradedSpace::tensor(&[&coef.space, &e.words[n], cs], Some(e.top));
        let f = GradedMap::tensor(&[lambda, &e.ids[n]], part, &cmt)?;
        let r = rotate(&cmt, &mtc, 1)?;
        let g = GradedMap::tensor(&[&coef.id, &e.ids[n], &e.sigma], &mtc, words.sum.part(q))?;
        blocks.push((
            p,
            q,
            g.compose(&r.compose(&f)?)?
                .scale(&S::from_i64(CYCLIC_TWIST)),
        ));
    }
    let d = words.assemble(&words, -1, blocks)?;
    let label = if m.space().same_as(c.space()) {
        format!("Ĥ({})", c.name())
    } else {
        format!("Ĥ({}, {})", m.name(), c.name())
    };
    let complex = TruncatedComplex::new(d, bounds.max_degree, label)?.approximate(e.approximate);
    let mspace = m.space().clone();
    let base_projection = GradedMap::from_fn(words.space(), &mspace, 0, |g| {
        let (sh, t) = words.unpack(g);
        match sh[1] {
            Slot::Word(0) => vec![(mspace.index_of_tuple(&t).expect("coefficient"), S::one())],
            _ => Vec::new(),
        }
    })?;
    Ok(CoHochschildComplex {
        cobar,
        coefficients: m,
        words,
        complex,
        base_projection,
    })
}

impl<S: Scalar> CoHochschildComplex<S> {
    pub fn space(&self) -> &Arc<GradedSpace> {
        self.words.space()
    }

    pub fn d(&self) -> &GradedMap<S> {
        self.complex.differential()
    }

    pub fn coalgebra(&self) -> &Arc<DgCoalgebra<S>> {
        &self.cobar.engine.coalgebra
    }

    /// `η⊗1: ΩC → Ĥ(C)`; only defined for the regular coefficients.
    pub fn fiber_inclusion(&self) -> Result<GradedMap<S>> {
        let c = self.coalgebra();
        if !self.coefficients.space().same_as(c.space()) {
            return Err(Error::Invalid("η⊗1 needs M = C".into()));
        }
        let one = c.one_index().expect("connected") as u32;
        GradedMap::from_fn(self.cobar.space(), self.space(), 0, |g| {
            let (sh, w) = self.cobar.words.unpack(g);
            let Slot::Word(n) = sh[0] else { unreachable!() };
            let mut t = vec![one];
            t.extend(w);
            self.words
                .global_of(&[Slot::Coef(0), Slot::Word(n)], &t)
                .map(|h| vec![(h, S::one())])
                .unwrap_or_default()
        })
    }

    /// The twisted extension `ΩC → Ĥ(C) → C`: both maps are chain maps, the
    /// composite is `ηε`, and the image of `η⊗1` is the kernel of the
    /// projection onto `C̄⊗T(σC̄)`.
    pub fn extension_check(&self) -> Report {
        let mut r = Report::new(format!("twisted extension of {}", self.complex.label()));
        let c = self.coalgebra();
        let inc = self.fiber_inclusion();
        r.record(
            "η⊗1 is a chain map",
            attempt(|| {
                let i = inc.clone()?;
                Ok(self
                    .d()
                    .compose(&i)?
                    .agrees_with(&i.compose(self.cobar.d())?, None))
            }),
        );
        r.record(
            "1⊗ε is a chain map",
            attempt(|| {
                let p = &self.base_projection;
                Ok(c.d().compose(p)?.agrees_with(&p.compose(self.d())?, None))
            }),
        );
        r.record(
            "(1⊗ε)(η⊗1) = ηε",
            attempt(|| {
                let i = inc.clone()?;
                let unit = self.cobar.algebra.unit();
                let eta = c.coaug().expect("connected");
                let want = GradedMap::from_fn(self.cobar.space(), c.space(), 0, |g| {
                    if g == unit {
                        eta.column(0).to_vec()
                    } else {
                        Vec::new()
                    }
                })?;
                Ok(self.base_projection.compose(&i)?.agrees_with(&want, None))
            }),
        );
        r.record(
            "image of η⊗1 = kernel of π̄⊗1",
            attempt(|| {
                let i = inc.clone()?;
                let one = c.one_index().expect("connected") as u32;
                let s = self.space();
                for deg in s.degrees() {
                    let image = crate::gradedlin::rank(
                        self.cobar.space().range(deg).map(|g| i.column(g).to_vec()),
                    );
                    let kernel = s
                        .range(deg)
                        .filter(|&g| self.words.unpack(g).1[0] == one)
                        .count();
                    let in_kernel = self.cobar.space().range(deg).all(|g| {
                        i.column(g)
                            .iter()
                            .all(|(h, _)| self.words.unpack(*h).1[0] == one)
                    });
                    if image != kernel || !in_kernel {
                        return Ok(Err(format!("degree {deg}: image {image}, kernel {kernel}")));
                    }
                }
                Ok(Ok(()))
            }),
        );
        r
    }
}
