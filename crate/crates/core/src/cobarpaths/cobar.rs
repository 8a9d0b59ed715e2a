use std::sync::Arc;

use crate::coefficients::Scalar;
use crate::dgcore::{DgAlgebra, DgCoalgebra, ProductRule};
use crate::error::Result;
use crate::gradedlin::{GradedMap, GradedSpace, TruncatedComplex};

use super::words::{Bounds, Slot, WordEngine, WordSpace};

/// `ΩC = (T(σC̄), d_Ω)` through degree `N + 1`.
#[derive(Debug)]
pub struct CobarAlgebra<S: Scalar> {
    pub engine: Arc<WordEngine<S>>,
    pub words: WordSpace<S>,
    pub algebra: Arc<DgAlgebra<S>>,
    pub complex: TruncatedComplex<S>,
}

/// Builds `ΩC`. A coalgebra with `C_1 ≠ 0` needs `bounds.word_bound`, and the
/// result is then flagged approximate.
pub fn cobar<S: Scalar>(c: &Arc<DgCoalgebra<S>>, bounds: Bounds) -> Result<CobarAlgebra<S>> {
    let engine = Arc::new(WordEngine::new(c.clone(), bounds)?);
    CobarAlgebra::from_engine(engine)
}

impl<S: Scalar> CobarAlgebra<S> {
    pub fn from_engine(engine: Arc<WordEngine<S>>) -> Result<Self> {
        let e = &engine;
        let words = e.word_space(vec![], (0..=e.max_len).map(|n| vec![Slot::Word(n)]))?;
        let mut blocks = Vec::new();
        for p in 0..words.shapes.len() {
            blocks.extend(e.internal_terms(&words, p)?);
        }
        let d = words.assemble(&words, -1, blocks)?;
        let space = words.space().clone();
        let w = words.clone();
        let top = e.top;
        let rule = ProductRule(Arc::new(move |a: usize, b: usize| {
            let sp = w.space();
            if sp.degree(a) + sp.degree(b) > top {
                return Vec::new();
            }
            let (sa, ta) = w.unpack(a);
            let (sb, tb) = w.unpack(b);
            let (Slot::Word(n), Slot::Word(m)) = (sa[0], sb[0]) else {
                unreachable!("cobar parts are words")
            };
            let mut t = ta;
            t.extend(tb);
            w.global_of(&[Slot::Word(n + m)], &t)
                .map(|g| vec![(g, S::one())])
                .unwrap_or_default()
        }));
        let unit = words.global_of(&[Slot::Word(0)], &[]).expect("empty word");
        let name = format!("Ω({})", e.coalgebra.name());
        let algebra = Arc::new(DgAlgebra::lazy(
            name.clone(),
            space,
            (None, Some(e.top)),
            d.clone(),
            rule,
            unit,
        )?);
        let complex =
            TruncatedComplex::new(d, e.bounds.max_degree, name)?.approximate(e.approximate);
        Ok(CobarAlgebra {
            engine,
            words,
            algebra,
            complex,
        })
    }

    pub fn coalgebra(&self) -> &Arc<DgCoalgebra<S>> {
        &self.engine.coalgebra
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        self.words.space()
    }

    pub fn d(&self) -> &GradedMap<S> {
        self.algebra.d()
    }

    /// The twisting cochain `t: C → ΩC`, `t(c) = σc`, `t(1) = 0`.
    pub fn twisting_cochain(&self) -> Result<GradedMap<S>> {
        let c = self.engine.coalgebra.space();
        GradedMap::from_fn(c, self.space(), -1, |i| {
            self.engine
                .sigma
                .column(i)
                .iter()
                .filter_map(|(l, x)| {
                    self.words
                        .global_of(&[Slot::Word(1)], &[*l as u32])
                        .map(|g| (g, x.clone()))
                })
                .collect()
        })
    }

    /// Index of a word given by letter indices.
    pub fn word(&self, letters: &[u32]) -> Option<usize> {
        self.words.global_of(&[Slot::Word(letters.len())], letters)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgcore::builtin;
    use crate::{F2, F3, Q};

    fn build<S: Scalar>(name: &str, n: i32) -> CobarAlgebra<S> {
        cobar(&builtin::<S>(name).unwrap(), Bounds::new(n)).unwrap()
    }

    #[test]
    fn point_gives_ground_field() {
        let o = build::<Q>("point", 5);
        assert_eq!(o.space().dim(), 1);
        assert!(o.d().is_zero());
    }

    #[test]
    fn sphere_three_words() {
        let o = build::<Q>("sphere(3)", 6);
        assert_eq!(o.space().names(), ["1", "σz", "σz|σz", "σz|σz|σz"]);
        assert_eq!(o.space().degrees().collect::<Vec<_>>(), vec![0, 2, 4, 6]);
        assert!(o.d().is_zero());
    }

    #[test]
    fn cp2_quadratic_term() {
        let o = build::<Q>("cp2", 4);
        let w = o.space().require("σy4").unwrap();
        assert_eq!(o.space().degree(w), 3);
        assert_eq!(o.d().render(o.d().column(w)), "1*σy2|σy2");
    }

    #[test]
    fn cobar_is_a_dg_algebra() {
        for name in ["sphere(2)", "sphere(3)", "cp2"] {
            let o = build::<F3>(name, 6);
            let r = o.algebra.validate();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn disk_cobar_is_acyclic() {
        let c = Arc::new(
            DgCoalgebra::<F2>::from_named(
                "disk",
                &[("1", 0), ("a", 2), ("b", 3)],
                &[("b", vec![("a", F2::from_i64(1))])],
                &[],
            )
            .unwrap(),
        );
        let o = cobar(&c, Bounds::new(8)).unwrap();
        let b = o.complex.betti();
        assert_eq!(b.get(0), 1);
        assert!((1..=8).all(|n| b.get(n) == 0), "{b}");
    }

    #[test]
    fn truncation_is_stable() {
        let small = build::<Q>("cp2", 6);
        let large = build::<Q>("cp2", 9);
        for d in 0..=7 {
            assert_eq!(small.space().dim_in(d), large.space().dim_in(d));
        }
    }

    #[test]
    fn missing_word_bound_is_refused() {
        let c = Arc::new(
            DgCoalgebra::<Q>::from_named("circle", &[("1", 0), ("e", 1)], &[], &[]).unwrap(),
        );
        assert!(cobar(&c, Bounds::new(4)).is_err());
        let o = cobar(&c, Bounds::with_word_bound(4, Some(3))).unwrap();
        assert!(o.complex.is_approximate());
        assert_eq!(o.space().dim_in(0), 4);
    }
}
