use std::sync::Arc;

use crate::coefficients::Scalar;
use crate::dgcore::{
    DgCoalgebra, LeftComodule, LeftModule, MixedModule, Report, RightComodule, RightModule,
};
use crate::error::Result;
use crate::gradedlin::{GradedMap, GradedSpace, TruncatedComplex};

use super::cobar::CobarAlgebra;
use super::words::{Bounds, Slot, WordEngine, WordSpace, LEFT_CONTRACTION, RIGHT_CONTRACTION};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `C⊗T(σC̄)`, coaction on the left.
    Left,
    /// `T(σC̄)⊗C`, coaction on the right.
    Right,
}

/// A based path construction with its mixed structure and twisted extension.
#[derive(Debug)]
pub struct PathConstruction<S: Scalar> {
    pub side: Side,
    pub cobar: Arc<CobarAlgebra<S>>,
    pub words: WordSpace<S>,
    pub complex: TruncatedComplex<S>,
    pub mixed: MixedModule<S>,
    /// `η⊗1` (left) or `1⊗η` (right): `ΩC → P`.
    pub fiber_inclusion: GradedMap<S>,
    /// `1⊗ε` (left) or `ε⊗1` (right): `P → C`.
    pub base_projection: GradedMap<S>,
}

fn shape(side: Side, n: usize) -> Vec<Slot> {
    match side {
        Side::Left => vec![Slot::Coef(0), Slot::Word(n)],
        Side::Right => vec![Slot::Word(n), Slot::Coef(0)],
    }
}

pub fn path_left<S: Scalar>(
    c: &Arc<DgCoalgebra<S>>,
    bounds: Bounds,
) -> Result<PathConstruction<S>> {
    let engine = Arc::new(WordEngine::new(c.clone(), bounds)?);
    PathConstruction::build(Side::Left, Arc::new(CobarAlgebra::from_engine(engine)?))
}

pub fn path_right<S: Scalar>(
    c: &Arc<DgCoalgebra<S>>,
    bounds: Bounds,
) -> Result<PathConstruction<S>> {
    let engine = Arc::new(WordEngine::new(c.clone(), bounds)?);
    PathConstruction::build(Side::Right, Arc::new(CobarAlgebra::from_engine(engine)?))
}

impl<S: Scalar> PathConstruction<S> {
    pub fn build(side: Side, cobar: Arc<CobarAlgebra<S>>) -> Result<Self> {
        let e = cobar.engine.clone();
        let c = e.coalgebra.clone();
        let words = e.word_space(
            vec![e.regular_coef()?],
            (0..=e.max_len).map(|n| shape(side, n)),
        )?;
        let mut blocks = Vec::new();
        for p in 0..words.shapes.len() {
            blocks.extend(e.internal_terms(&words, p)?);
            blocks.extend(match side {
                Side::Left => e.right_coaction_term(&words, p, 0)?,
                Side::Right => e.left_coaction_term(&words, p, 1)?,
            });
        }
        let d = words.assemble(&words, -1, blocks)?;
        let label = match side {
            Side::Left => format!("P_L({})", c.name()),
            Side::Right => format!("P_R({})", c.name()),
        };
        let complex = TruncatedComplex::new(d.clone(), e.bounds.max_degree, label.clone())?
            .approximate(e.approximate);
        let p = words.space();
        let omega = cobar.space();
        let algebra = cobar.algebra.clone();
        let (_, hi) = algebra.window();

        // the coaction is Δ on the C factor, the action concatenation on the word
        let split = |g: usize| -> (usize, Vec<u32>) {
            let (sh, t) = words.unpack(g);
            let n = match sh[if side == Side::Left { 1 } else { 0 }] {
                Slot::Word(n) => n,
                Slot::Coef(_) => unreachable!(),
            };
            match side {
                Side::Left => (t[0] as usize, t[1..].to_vec()),
                Side::Right => (t[n] as usize, t[..n].to_vec()),
            }
        };
        let join = |ce: usize, w: &[u32]| -> Option<usize> {
            let mut t = Vec::with_capacity(w.len() + 1);
            match side {
                Side::Left => {
                    t.push(ce as u32);
                    t.extend_from_slice(w);
                }
                Side::Right => {
                    t.extend_from_slice(w);
                    t.push(ce as u32);
                }
            }
            words.global_of(&shape(side, w.len()), &t)
        };
        let cc = c.space();
        let mixed = match side {
            Side::Left => {
                let cp = GradedSpace::tensor(&[cc, p], None);
                let coaction = GradedMap::from_fn(p, &cp, 0, |g| {
                    let (ce, w) = split(g);
                    let mut out = Vec::new();
                    for (k, x) in c.comult().column(ce) {
                        let ab = c.cc().tuple(*k);
                        if let Some(h) = join(ab[1] as usize, &w) {
                            out.push((
                                cp.index_of_tuple(&[ab[0], h as u32])
                                    .expect("coaction term"),
                                x.clone(),
                            ));
                        }
                    }
                    out
                })?;
                let pa = GradedSpace::tensor_window(&[p, omega], None, hi);
                let action = GradedMap::from_fn(&pa, p, 0, |k| {
                    let t = pa.tuple(k);
                    let (ce, mut w) = split(t[0] as usize);
                    let (_, v) = cobar.words.unpack(t[1] as usize);
                    w.extend(v);
                    join(ce, &w)
                        .map(|h| vec![(h, S::one())])
                        .unwrap_or_default()
                })?;
                MixedModule::LeftRight {
                    comodule: LeftComodule::new(label.clone(), c.clone(), d.clone(), coaction)?,
                    module: RightModule::new(label.clone(), algebra, d.clone(), action)?,
                }
            }
            Side::Right => {
                let pc = GradedSpace::tensor(&[p, cc], None);
                let coaction = GradedMap::from_fn(p, &pc, 0, |g| {
                    let (ce, w) = split(g);
                    let mut out = Vec::new();
                    for (k, x) in c.comult().column(ce) {
                        let ab = c.cc().tuple(*k);
                        if let Some(h) = join(ab[0] as usize, &w) {
                            out.push((
                                pc.index_of_tuple(&[h as u32, ab[1]])
                                    .expect("coaction term"),
                                x.clone(),
                            ));
                        }
                    }
                    out
                })?;
                let ap = GradedSpace::tensor_window(&[omega, p], None, hi);
                let action = GradedMap::from_fn(&ap, p, 0, |k| {
                    let t = ap.tuple(k);
                    let (_, mut v) = cobar.words.unpack(t[0] as usize);
                    let (ce, w) = split(t[1] as usize);
                    v.extend(w);
                    join(ce, &v)
                        .map(|h| vec![(h, S::one())])
                        .unwrap_or_default()
                })?;
                MixedModule::RightLeft {
                    module: LeftModule::new(label.clone(), algebra, d.clone(), action)?,
                    comodule: RightComodule::new(label.clone(), c.clone(), d.clone(), coaction)?,
                }
            }
        };

        let one = c.one_index().expect("connected");
        let fiber_inclusion = GradedMap::from_fn(omega, p, 0, |g| {
            let (_, w) = cobar.words.unpack(g);
            join(one, &w)
                .map(|h| vec![(h, S::one())])
                .unwrap_or_default()
        })?;
        let base_projection = GradedMap::from_fn(p, cc, 0, |g| {
            let (ce, w) = split(g);
            if w.is_empty() {
                vec![(ce, S::one())]
            } else {
                Vec::new()
            }
        })?;
        Ok(PathConstruction {
            side,
            cobar,
            words,
            complex,
            mixed,
            fiber_inclusion,
            base_projection,
        })
    }

    pub fn engine(&self) -> &Arc<WordEngine<S>> {
        &self.cobar.engine
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        self.words.space()
    }

    pub fn d(&self) -> &GradedMap<S> {
        self.complex.differential()
    }

    /// `h_R` or `h_L`: removes the last (first) letter when the coefficient
    /// is `1`, moving it into the coefficient slot.
    pub fn contraction_homotopy(&self) -> Result<GradedMap<S>> {
        let e = self.engine();
        let c = e.coalgebra.counit();
        let mut blocks = Vec::new();
        for (p, sh) in self.words.shapes.iter().enumerate() {
            let (factors, target, sign) = match (self.side, sh.as_slice()) {
                (Side::Right, [Slot::Word(n), _]) if *n > 0 => (
                    vec![e.split_word(*n, n - 1)?, c.clone()],
                    shape(self.side, n - 1),
                    RIGHT_CONTRACTION,
                ),
                (Side::Left, [_, Slot::Word(n)]) if *n > 0 => (
                    vec![c.clone(), e.split_word(*n, 0)?],
                    shape(self.side, n - 1),
                    LEFT_CONTRACTION,
                ),
                _ => continue,
            };
            let refs: Vec<&GradedMap<S>> = factors.iter().collect();
            if let Some((p, q, m)) = e.block(&self.words, p, &refs, &self.words, &target)? {
                blocks.push((p, q, m.scale(&S::from_i64(sign))));
            }
        }
        self.words.assemble(&self.words, 1, blocks)
    }

    /// `η ε`-type projection onto `1⊗1`.
    pub fn unit_projection(&self) -> Result<GradedMap<S>> {
        let one = self.engine().coalgebra.one_index().expect("connected");
        let base = self
            .words
            .global_of(&shape(self.side, 0), &[one as u32])
            .expect("1⊗1 is present");
        GradedMap::from_fn(self.space(), self.space(), 0, |g| {
            if g == base {
                vec![(base, S::one())]
            } else {
                Vec::new()
            }
        })
    }

    /// Mixed-module axioms, chain-map property of the twisted extension and
    /// the contraction identity `Dh + hD = id − ηε` through the horizon.
    pub fn validate(&self) -> Report {
        let mut r = Report::new(self.complex.label().to_string());
        let n = self.complex.horizon();
        r.merge(self.mixed.validate());
        let c = &self.engine().coalgebra;
        r.record(
            "fiber inclusion is a chain map",
            crate::dgcore::attempt(|| {
                Ok(self
                    .d()
                    .compose(&self.fiber_inclusion)?
                    .agrees_with(&self.fiber_inclusion.compose(self.cobar.d())?, None))
            }),
        );
        r.record(
            "base projection is a chain map",
            crate::dgcore::attempt(|| {
                Ok(c.d()
                    .compose(&self.base_projection)?
                    .agrees_with(&self.base_projection.compose(self.d())?, None))
            }),
        );
        r.record(
            "Dh + hD = id − ηε",
            crate::dgcore::attempt(|| {
                let h = self.contraction_homotopy()?;
                let lhs = self.d().compose(&h)?.add(&h.compose(self.d())?)?;
                let rhs = GradedMap::identity(self.space()).sub(&self.unit_projection()?)?;
                Ok(lhs.agrees_with(&rhs, Some(n)))
            }),
        );
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgcore::builtin;
    use crate::{One, F2, F3, Q};

    fn disk() -> Arc<DgCoalgebra<Q>> {
        Arc::new(
            DgCoalgebra::from_named(
                "disk",
                &[("1", 0), ("a", 2), ("b", 3)],
                &[("b", vec![("a", Q::one())])],
                &[],
            )
            .unwrap(),
        )
    }

    #[test]
    fn point_path_is_ground() {
        let p = path_right(&builtin::<Q>("point").unwrap(), Bounds::new(4)).unwrap();
        assert_eq!(p.space().dim(), 1);
        assert_eq!(p.space().names(), ["1⊗1"]);
    }

    #[test]
    fn sphere_three_right_differential() {
        let p = path_right(&builtin::<Q>("sphere(3)").unwrap(), Bounds::new(6)).unwrap();
        let d = p.d();
        let x = p.space().require("σz|σz⊗z").unwrap();
        assert_eq!(d.render(d.column(x)), "1*σz|σz|σz⊗1");
        let top = p.space().require("σz|σz|σz⊗1").unwrap();
        assert_eq!(p.space().degree(top), 6);
        assert!(d.column(top).is_empty());
        assert!(p.space().index_of("σz|σz|σz⊗z").is_none());
    }

    #[test]
    fn paths_are_contractible() {
        for name in ["sphere(2)", "sphere(3)", "cp2"] {
            let c = builtin::<F3>(name).unwrap();
            for p in [
                path_left(&c, Bounds::new(8)).unwrap(),
                path_right(&c, Bounds::new(8)).unwrap(),
            ] {
                let b = p.complex.betti();
                assert_eq!(b.get(0), 1, "{b}");
                assert!((1..=8).all(|k| b.get(k) == 0), "{b}");
            }
        }
        let c = disk();
        let p = path_left(&c, Bounds::new(7)).unwrap();
        assert!((1..=7).all(|k| p.complex.betti().get(k) == 0));
    }

    #[test]
    fn paths_validate() {
        for name in ["sphere(2)", "sphere(3)", "cp2"] {
            let c = builtin::<Q>(name).unwrap();
            for p in [
                path_left(&c, Bounds::new(6)).unwrap(),
                path_right(&c, Bounds::new(6)).unwrap(),
            ] {
                let r = p.validate();
                assert!(r.passed(), "{r}");
            }
        }
        let c = builtin::<F2>("cp2").unwrap();
        let r = path_right(&c, Bounds::new(7)).unwrap().validate();
        assert!(r.passed(), "{r}");
        for p in [
            path_left(&disk(), Bounds::new(6)).unwrap(),
            path_right(&disk(), Bounds::new(6)).unwrap(),
        ] {
            let r = p.validate();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn right_contraction_cases() {
        let p = path_right(&builtin::<Q>("cp2").unwrap(), Bounds::new(6)).unwrap();
        let h = p.contraction_homotopy().unwrap();
        let at = |s: &str| h.render(h.column(p.space().require(s).unwrap()));
        assert_eq!(at("σy2|σy4⊗y2"), "0");
        assert_eq!(at("1⊗1"), "0");
        // the Koszul sign of passing σy2 (degree 1)
        assert_eq!(at("σy2|σy4⊗1"), "-1*σy2⊗y4");
        assert_eq!(at("σy4⊗1"), "1*1⊗y4");
    }
}
