use std::sync::Arc;

use crate::coefficients::Scalar;
use crate::error::{Error, Result};
use crate::gradedlin::{GradedMap, GradedSpace};

use super::algebra::DgAlgebra;
use super::coalgebra::{zero_check, DgCoalgebra};
use super::report::{attempt, Report};

fn check_shape<S: Scalar>(
    m: &GradedMap<S>,
    s: &Arc<GradedSpace>,
    t: &Arc<GradedSpace>,
    deg: i32,
    what: &str,
) -> Result<()> {
    if m.source().same_as(s) && m.target().same_as(t) && m.degree() == deg {
        Ok(())
    } else {
        Err(Error::Mismatch(format!(
            "{what} has the wrong source, target or degree"
        )))
    }
}

/// `d_A⊗1 + 1⊗d_B` on `A⊗B` (restricted to `space`).
fn sum_differential<S: Scalar>(
    da: &GradedMap<S>,
    db: &GradedMap<S>,
    space: &Arc<GradedSpace>,
) -> Result<GradedMap<S>> {
    let ia = GradedMap::identity(da.source());
    let ib = GradedMap::identity(db.source());
    GradedMap::tensor(&[da, &ib], space, space)?.add(&GradedMap::tensor(&[&ia, db], space, space)?)
}

/// A right comodule `ρ: N → N⊗C`.
#[derive(Clone, Debug)]
pub struct RightComodule<S: Scalar> {
    pub name: String,
    pub coalgebra: Arc<DgCoalgebra<S>>,
    pub space: Arc<GradedSpace>,
    pub d: GradedMap<S>,
    pub coaction: GradedMap<S>,
}

impl<S: Scalar> RightComodule<S> {
    pub fn new(
        name: impl Into<String>,
        coalgebra: Arc<DgCoalgebra<S>>,
        d: GradedMap<S>,
        coaction: GradedMap<S>,
    ) -> Result<Self> {
        let space = d.source().clone();
        let nc = GradedSpace::tensor(&[&space, coalgebra.space()], space.max_degree());
        check_shape(&d, &space, &space, -1, "differential")?;
        check_shape(&coaction, &space, &nc, 0, "coaction")?;
        let coaction = coaction.with_target(&nc)?;
        Ok(RightComodule {
            name: name.into(),
            coalgebra,
            space,
            d,
            coaction,
        })
    }

    /// `C` over itself via `Δ`.
    pub fn regular(c: &Arc<DgCoalgebra<S>>) -> Self {
        Self::new(c.name(), c.clone(), c.d().clone(), c.comult().clone()).expect("Δ is a coaction")
    }

    /// `𝕜` with coaction `η`.
    pub fn trivial(c: &Arc<DgCoalgebra<S>>) -> Result<Self> {
        let k = GradedSpace::ground();
        let eta = c
            .coaug()
            .ok_or_else(|| Error::NotConnected(c.name().into()))?
            .clone();
        Self::new("𝕜", c.clone(), GradedMap::zero(&k, &k, -1), eta)
    }

    pub fn target(&self) -> &Arc<GradedSpace> {
        self.coaction.target()
    }

    pub fn validate(&self) -> Report {
        let c = &self.coalgebra;
        let mut r = Report::new(format!("right comodule {}", self.name));
        let id_n = GradedMap::identity(&self.space);
        let id_c = c.identity();
        let nc = self.coaction.target();
        let ncc = GradedSpace::tensor(
            &[&self.space, c.space(), c.space()],
            self.space.max_degree(),
        );
        r.record("d² = 0", zero_check(&self.d.compose(&self.d)));
        r.record(
            "coassociativity",
            attempt(|| {
                let left = GradedMap::tensor(&[&self.coaction, &id_c], nc, &ncc)?
                    .compose(&self.coaction)?;
                let right =
                    GradedMap::tensor(&[&id_n, c.comult()], nc, &ncc)?.compose(&self.coaction)?;
                Ok(left.agrees_with(&right, None))
            }),
        );
        r.record(
            "counit",
            attempt(|| {
                let e = GradedMap::tensor(&[&id_n, c.counit()], nc, &self.space)?
                    .compose(&self.coaction)?;
                Ok(e.agrees_with(&id_n, None))
            }),
        );
        r.record(
            "ρ is a chain map",
            attempt(|| {
                let dn = sum_differential(&self.d, c.d(), nc)?;
                Ok(self
                    .coaction
                    .compose(&self.d)?
                    .agrees_with(&dn.compose(&self.coaction)?, None))
            }),
        );
        r
    }
}

/// A left comodule `λ: N → C⊗N`.
#[derive(Clone, Debug)]
pub struct LeftComodule<S: Scalar> {
    pub name: String,
    pub coalgebra: Arc<DgCoalgebra<S>>,
    pub space: Arc<GradedSpace>,
    pub d: GradedMap<S>,
    pub coaction: GradedMap<S>,
}

impl<S: Scalar> LeftComodule<S> {
    pub fn new(
        name: impl Into<String>,
        coalgebra: Arc<DgCoalgebra<S>>,
        d: GradedMap<S>,
        coaction: GradedMap<S>,
    ) -> Result<Self> {
        let space = d.source().clone();
        let cn = GradedSpace::tensor(&[coalgebra.space(), &space], space.max_degree());
        check_shape(&d, &space, &space, -1, "differential")?;
        check_shape(&coaction, &space, &cn, 0, "coaction")?;
        let coaction = coaction.with_target(&cn)?;
        Ok(LeftComodule {
            name: name.into(),
            coalgebra,
            space,
            d,
            coaction,
        })
    }

    pub fn regular(c: &Arc<DgCoalgebra<S>>) -> Self {
        Self::new(c.name(), c.clone(), c.d().clone(), c.comult().clone()).expect("Δ is a coaction")
    }

    pub fn trivial(c: &Arc<DgCoalgebra<S>>) -> Result<Self> {
        let k = GradedSpace::ground();
        let eta = c
            .coaug()
            .ok_or_else(|| Error::NotConnected(c.name().into()))?
            .clone();
        Self::new("𝕜", c.clone(), GradedMap::zero(&k, &k, -1), eta)
    }

    pub fn target(&self) -> &Arc<GradedSpace> {
        self.coaction.target()
    }

    pub fn validate(&self) -> Report {
        let c = &self.coalgebra;
        let mut r = Report::new(format!("left comodule {}", self.name));
        let id_n = GradedMap::identity(&self.space);
        let id_c = c.identity();
        let cn = self.coaction.target();
        let ccn = GradedSpace::tensor(
            &[c.space(), c.space(), &self.space],
            self.space.max_degree(),
        );
        r.record("d² = 0", zero_check(&self.d.compose(&self.d)));
        r.record(
            "coassociativity",
            attempt(|| {
                let left =
                    GradedMap::tensor(&[c.comult(), &id_n], cn, &ccn)?.compose(&self.coaction)?;
                let right = GradedMap::tensor(&[&id_c, &self.coaction], cn, &ccn)?
                    .compose(&self.coaction)?;
                Ok(left.agrees_with(&right, None))
            }),
        );
        r.record(
            "counit",
            attempt(|| {
                let e = GradedMap::tensor(&[c.counit(), &id_n], cn, &self.space)?
                    .compose(&self.coaction)?;
                Ok(e.agrees_with(&id_n, None))
            }),
        );
        r.record(
            "λ is a chain map",
            attempt(|| {
                let dn = sum_differential(c.d(), &self.d, cn)?;
                Ok(self
                    .coaction
                    .compose(&self.d)?
                    .agrees_with(&dn.compose(&self.coaction)?, None))
            }),
        );
        r
    }
}

/// A bicomodule: commuting left and right coactions on one complex.
#[derive(Clone, Debug)]
pub struct Bicomodule<S: Scalar> {
    pub left: LeftComodule<S>,
    pub right: RightComodule<S>,
}

impl<S: Scalar> Bicomodule<S> {
    pub fn new(left: LeftComodule<S>, right: RightComodule<S>) -> Result<Self> {
        if !left.space.same_as(&right.space) || left.d != right.d {
            return Err(Error::Mismatch(
                "bicomodule sides have different underlying complexes".into(),
            ));
        }
        Ok(Bicomodule { left, right })
    }

    /// `C` with `λ = ρ = Δ`.
    pub fn regular(c: &Arc<DgCoalgebra<S>>) -> Self {
        Bicomodule {
            left: LeftComodule::regular(c),
            right: RightComodule::regular(c),
        }
    }

    /// `𝕜` with `λ = ρ = η`.
    pub fn trivial(c: &Arc<DgCoalgebra<S>>) -> Result<Self> {
        Ok(Bicomodule {
            left: LeftComodule::trivial(c)?,
            right: RightComodule::trivial(c)?,
        })
    }

    pub fn name(&self) -> &str {
        &self.left.name
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.left.space
    }

    pub fn coalgebra(&self) -> &Arc<DgCoalgebra<S>> {
        &self.left.coalgebra
    }

    pub fn validate(&self) -> Report {
        let mut r = Report::new(format!("bicomodule {}", self.name()));
        r.merge(self.left.validate());
        r.merge(self.right.validate());
        let c = self.coalgebra();
        let n = self.space();
        r.record(
            "coactions commute",
            attempt(|| {
                let cnc = GradedSpace::tensor(&[c.space(), n, c.space()], None);
                let l1 = GradedMap::tensor(
                    &[&self.left.coaction, &c.identity()],
                    self.right.target(),
                    &cnc,
                )?;
                let r1 = GradedMap::tensor(
                    &[&c.identity(), &self.right.coaction],
                    self.left.target(),
                    &cnc,
                )?;
                Ok(l1
                    .compose(&self.right.coaction)?
                    .agrees_with(&r1.compose(&self.left.coaction)?, None))
            }),
        );
        r
    }
}

/// A right module `α: M⊗A → M`, known on the degree window of `A`.
#[derive(Clone, Debug)]
pub struct RightModule<S: Scalar> {
    pub name: String,
    pub algebra: Arc<DgAlgebra<S>>,
    pub space: Arc<GradedSpace>,
    pub d: GradedMap<S>,
    pub action: GradedMap<S>,
}

impl<S: Scalar> RightModule<S> {
    /// `action` is defined on `M⊗A` restricted to the algebra's window.
    pub fn new(
        name: impl Into<String>,
        algebra: Arc<DgAlgebra<S>>,
        d: GradedMap<S>,
        action: GradedMap<S>,
    ) -> Result<Self> {
        let space = d.source().clone();
        let (lo, hi) = algebra.window();
        let ma = GradedSpace::tensor_window(&[&space, algebra.space()], lo, hi);
        check_shape(&d, &space, &space, -1, "differential")?;
        check_shape(&action, &ma, &space, 0, "action")?;
        let action = action.with_source(&ma)?;
        Ok(RightModule {
            name: name.into(),
            algebra,
            space,
            d,
            action,
        })
    }

    /// `A` over itself.
    pub fn free(a: &Arc<DgAlgebra<S>>) -> Self {
        Self::new(a.name(), a.clone(), a.d().clone(), a.mult().clone()).expect("μ is an action")
    }

    /// `G⊗A` with `(g⊗a)·b = g⊗ab`, for a graded space of generators `G`
    /// with zero differential.
    pub fn free_on(gens: &Arc<GradedSpace>, a: &Arc<DgAlgebra<S>>) -> Result<Self> {
        let (lo, hi) = a.window();
        let m = GradedSpace::tensor_window(&[gens, a.space()], lo, hi);
        let id_g = GradedMap::identity(gens);
        let d = GradedMap::tensor(
            &[
                &GradedMap::zero(gens, gens, -1),
                &GradedMap::identity(a.space()),
            ],
            &m,
            &m,
        )?
        .add(&GradedMap::tensor(&[&id_g, a.d()], &m, &m)?)?;
        let ma = GradedSpace::tensor_window(&[&m, a.space()], lo, hi);
        let action = GradedMap::tensor(&[&id_g, a.mult()], &ma, &m)?;
        Self::new(
            format!("free({})", gens.names().join(",")),
            a.clone(),
            d,
            action,
        )
    }

    /// `𝕜` with `1·a = ε(a)`.
    pub fn trivial(a: &Arc<DgAlgebra<S>>) -> Result<Self> {
        let k = GradedSpace::ground();
        let (lo, hi) = a.window();
        let ka = GradedSpace::tensor_window(&[&k, a.space()], lo, hi);
        let action = a.augmentation().clone().with_source(&ka).or_else(|_| {
            GradedMap::from_fn(&ka, &k, 0, |i| {
                let t = ka.tuple(i);
                a.augmentation().column(t[0] as usize).to_vec()
            })
        })?;
        Self::new("𝕜", a.clone(), GradedMap::zero(&k, &k, -1), action)
    }

    pub fn validate(&self) -> Report {
        let a = &self.algebra;
        let (lo, hi) = a.window();
        let mut r = Report::new(format!("right module {}", self.name));
        let ma = self.action.source();
        let id_m = GradedMap::identity(&self.space);
        let id_a = GradedMap::identity(a.space());
        r.record("d² = 0", zero_check(&self.d.compose(&self.d)));
        r.record(
            "associativity",
            attempt(|| {
                let maa = GradedSpace::tensor_window(&[&self.space, a.space(), a.space()], lo, hi);
                let left =
                    self.action
                        .compose(&GradedMap::tensor(&[&self.action, &id_a], &maa, ma)?)?;
                let right =
                    self.action
                        .compose(&GradedMap::tensor(&[&id_m, a.mult()], &maa, ma)?)?;
                Ok(left.agrees_with(&right, None))
            }),
        );
        r.record(
            "unit",
            attempt(|| {
                let unit = GradedMap::from_fn(&GradedSpace::ground(), a.space(), 0, |_| {
                    vec![(a.unit(), S::one())]
                })?;
                let m1 = GradedMap::tensor(&[&id_m, &unit], &self.space, ma)?;
                Ok(self.action.compose(&m1)?.agrees_with(&id_m, None))
            }),
        );
        r.record(
            "α is a chain map",
            attempt(|| {
                let dma = sum_differential(&self.d, a.d(), ma)?;
                Ok(self
                    .d
                    .compose(&self.action)?
                    .agrees_with(&self.action.compose(&dma)?, None))
            }),
        );
        r
    }
}

/// A left module `α: A⊗M → M`.
#[derive(Clone, Debug)]
pub struct LeftModule<S: Scalar> {
    pub name: String,
    pub algebra: Arc<DgAlgebra<S>>,
    pub space: Arc<GradedSpace>,
    pub d: GradedMap<S>,
    pub action: GradedMap<S>,
}

impl<S: Scalar> LeftModule<S> {
    pub fn new(
        name: impl Into<String>,
        algebra: Arc<DgAlgebra<S>>,
        d: GradedMap<S>,
        action: GradedMap<S>,
    ) -> Result<Self> {
        let space = d.source().clone();
        let (lo, hi) = algebra.window();
        let am = GradedSpace::tensor_window(&[algebra.space(), &space], lo, hi);
        check_shape(&d, &space, &space, -1, "differential")?;
        check_shape(&action, &am, &space, 0, "action")?;
        let action = action.with_source(&am)?;
        Ok(LeftModule {
            name: name.into(),
            algebra,
            space,
            d,
            action,
        })
    }

    pub fn free(a: &Arc<DgAlgebra<S>>) -> Self {
        Self::new(a.name(), a.clone(), a.d().clone(), a.mult().clone()).expect("μ is an action")
    }

    pub fn validate(&self) -> Report {
        let a = &self.algebra;
        let (lo, hi) = a.window();
        let mut r = Report::new(format!("left module {}", self.name));
        let am = self.action.source();
        let id_m = GradedMap::identity(&self.space);
        let id_a = GradedMap::identity(a.space());
        r.record("d² = 0", zero_check(&self.d.compose(&self.d)));
        r.record(
            "associativity",
            attempt(|| {
                let aam = GradedSpace::tensor_window(&[a.space(), a.space(), &self.space], lo, hi);
                let left =
                    self.action
                        .compose(&GradedMap::tensor(&[a.mult(), &id_m], &aam, am)?)?;
                let right =
                    self.action
                        .compose(&GradedMap::tensor(&[&id_a, &self.action], &aam, am)?)?;
                Ok(left.agrees_with(&right, None))
            }),
        );
        r.record(
            "unit",
            attempt(|| {
                let unit = GradedMap::from_fn(&GradedSpace::ground(), a.space(), 0, |_| {
                    vec![(a.unit(), S::one())]
                })?;
                let m1 = GradedMap::tensor(&[&unit, &id_m], &self.space, am)?;
                Ok(self.action.compose(&m1)?.agrees_with(&id_m, None))
            }),
        );
        r.record(
            "α is a chain map",
            attempt(|| {
                let dam = sum_differential(a.d(), &self.d, am)?;
                Ok(self
                    .d
                    .compose(&self.action)?
                    .agrees_with(&self.action.compose(&dam)?, None))
            }),
        );
        r
    }
}

/// A complex that is simultaneously a comodule over `C` and a module over
/// an algebra (typically `ΩC`), on opposite sides.
#[derive(Clone, Debug)]
pub enum MixedModule<S: Scalar> {
    /// Left `C`-comodule, right module.
    LeftRight {
        comodule: LeftComodule<S>,
        module: RightModule<S>,
    },
    /// Left module, right `C`-comodule.
    RightLeft {
        module: LeftModule<S>,
        comodule: RightComodule<S>,
    },
}

impl<S: Scalar> MixedModule<S> {
    pub fn space(&self) -> &Arc<GradedSpace> {
        match self {
            MixedModule::LeftRight { comodule, .. } => &comodule.space,
            MixedModule::RightLeft { comodule, .. } => &comodule.space,
        }
    }

    pub fn d(&self) -> &GradedMap<S> {
        match self {
            MixedModule::LeftRight { comodule, .. } => &comodule.d,
            MixedModule::RightLeft { comodule, .. } => &comodule.d,
        }
    }

    pub fn validate(&self) -> Report {
        let mut r = Report::new("mixed module");
        match self {
            MixedModule::LeftRight { comodule, module } => {
                r.record(
                    "same complex",
                    (comodule.space.same_as(&module.space) && comodule.d == module.d)
                        .then_some(())
                        .ok_or_else(|| "comodule and module differ".to_string()),
                );
                r.merge(comodule.validate());
                r.merge(module.validate());
            }
            MixedModule::RightLeft { module, comodule } => {
                r.record(
                    "same complex",
                    (comodule.space.same_as(&module.space) && comodule.d == module.d)
                        .then_some(())
                        .ok_or_else(|| "comodule and module differ".to_string()),
                );
                r.merge(module.validate());
                r.merge(comodule.validate());
            }
        }
        r
    }
}
