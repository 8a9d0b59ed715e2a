use std::sync::Arc;

use crate::coefficients::Scalar;
use crate::error::{Error, Result};
use crate::gradedlin::{GradedMap, GradedSpace};

use super::report::Report;

/// A dg coalgebra `(C, d, Δ, ε, η)`. The coaugmentation, when present, is the
/// basis element named `1`.
#[derive(Clone, Debug)]
pub struct DgCoalgebra<S: Scalar> {
    name: String,
    space: Arc<GradedSpace>,
    cc: Arc<GradedSpace>,
    d: GradedMap<S>,
    comult: GradedMap<S>,
    counit: GradedMap<S>,
    coaug: Option<GradedMap<S>>,
}

impl<S: Scalar> DgCoalgebra<S> {
    /// Coaugmented coalgebra with `ε(1) = 1`, `ε = 0` on every other basis
    /// element and `η(1) = 1`.
    pub fn new(
        name: impl Into<String>,
        space: Arc<GradedSpace>,
        d: GradedMap<S>,
        comult: GradedMap<S>,
    ) -> Result<Self> {
        let one = space.require("1")?;
        let k = GradedSpace::ground();
        let counit = GradedMap::from_fn(&space, &k, 0, |i| {
            if i == one {
                vec![(0, S::one())]
            } else {
                vec![]
            }
        })?;
        let coaug = GradedMap::from_fn(&k, &space, 0, |_| vec![(one, S::one())])?;
        Self::with_structure(name, space, d, comult, counit, Some(coaug))
    }

    pub fn with_structure(
        name: impl Into<String>,
        space: Arc<GradedSpace>,
        d: GradedMap<S>,
        comult: GradedMap<S>,
        counit: GradedMap<S>,
        coaug: Option<GradedMap<S>>,
    ) -> Result<Self> {
        let cc = GradedSpace::tensor(&[&space, &space], None);
        let k = GradedSpace::ground();
        let fits = |m: &GradedMap<S>, s: &Arc<GradedSpace>, t: &Arc<GradedSpace>, deg: i32| {
            m.source().same_as(s) && m.target().same_as(t) && m.degree() == deg
        };
        if !fits(&d, &space, &space, -1) {
            return Err(Error::Mismatch(
                "differential must be C -> C of degree -1".into(),
            ));
        }
        if !fits(&comult, &space, &cc, 0) {
            return Err(Error::Mismatch(
                "comultiplication must be C -> C⊗C of degree 0".into(),
            ));
        }
        if !fits(&counit, &space, &k, 0) {
            return Err(Error::Mismatch("counit must be C -> k of degree 0".into()));
        }
        if let Some(h) = &coaug {
            if !fits(h, &k, &space, 0) {
                return Err(Error::Mismatch(
                    "coaugmentation must be k -> C of degree 0".into(),
                ));
            }
        }
        let comult = comult.with_target(&cc)?;
        Ok(DgCoalgebra {
            name: name.into(),
            space,
            cc,
            d,
            comult,
            counit,
            coaug,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    /// `C⊗C`, the target of `Δ`.
    pub fn cc(&self) -> &Arc<GradedSpace> {
        &self.cc
    }

    pub fn d(&self) -> &GradedMap<S> {
        &self.d
    }

    pub fn comult(&self) -> &GradedMap<S> {
        &self.comult
    }

    pub fn counit(&self) -> &GradedMap<S> {
        &self.counit
    }

    pub fn coaug(&self) -> Option<&GradedMap<S>> {
        self.coaug.as_ref()
    }

    pub fn one_index(&self) -> Option<usize> {
        self.space.index_of("1")
    }

    pub fn identity(&self) -> GradedMap<S> {
        GradedMap::identity(&self.space)
    }

    /// `C_0` is spanned by the coaugmentation `1` and all degrees are `>= 0`.
    pub fn is_connected(&self) -> bool {
        self.coaug.is_some()
            && self.space.min_degree().map_or(false, |m| m >= 0)
            && self.space.dim_in(0) == 1
            && self.one_index().is_some_and(|i| self.space.degree(i) == 0)
    }

    /// Connected with `C_1 = 0`.
    pub fn is_simply_connected(&self) -> bool {
        self.is_connected() && self.space.dim_in(1) == 0
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::NotConnected(self.name.clone()))
        }
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Basis indices of the coaugmentation coideal `C̄` (everything but `1`).
    pub fn reduced_indices(&self) -> Vec<usize> {
        let one = self.one_index();
        (0..self.space.dim()).filter(|&i| Some(i) != one).collect()
    }

    /// Checks every axiom on every basis element.
    pub fn validate(&self) -> Report {
        self.check(true)
    }

    /// The coalgebra axioms alone, without the connectivity requirements.
    pub fn validate_axioms(&self) -> Report {
        self.check(false)
    }

    fn check(&self, shape: bool) -> Report {
        let mut r = Report::new(format!("coalgebra {}", self.name));
        let id = self.identity();
        let k = GradedSpace::ground();
        let ccc = GradedSpace::tensor(&[&self.space, &self.space, &self.space], None);

        r.record("d² = 0", zero_check(&self.d.compose(&self.d)));
        if shape {
            r.record(
                "nonnegative degrees",
                match self.space.min_degree() {
                    Some(m) if m < 0 => Err(format!("degree {m}")),
                    _ => Ok(()),
                },
            );
            r.record(
                "connected",
                if self.is_connected() {
                    Ok(())
                } else if self.coaug.is_none() {
                    Err("no coaugmentation".into())
                } else {
                    Err(format!("dim C_0 = {}", self.space.dim_in(0)))
                },
            );
        }
        r.record(
            "coassociativity",
            (|| {
                let left = GradedMap::tensor(&[&self.comult, &id], &self.cc, &ccc)?
                    .compose(&self.comult)?;
                let right = GradedMap::tensor(&[&id, &self.comult], &self.cc, &ccc)?
                    .compose(&self.comult)?;
                Ok::<_, Error>(left.agrees_with(&right, None))
            })()
            .unwrap_or_else(|e| Err(e.to_string())),
        );
        r.record(
            "counit",
            (|| {
                let left = GradedMap::tensor(&[&self.counit, &id], &self.cc, &self.space)?
                    .compose(&self.comult)?;
                let right = GradedMap::tensor(&[&id, &self.counit], &self.cc, &self.space)?
                    .compose(&self.comult)?;
                Ok::<_, Error>(
                    left.agrees_with(&id, None)
                        .and_then(|_| right.agrees_with(&id, None)),
                )
            })()
            .unwrap_or_else(|e| Err(e.to_string())),
        );
        r.record(
            "Δ is a chain map",
            (|| {
                let dcc = tensor_differential(&self.d, &self.d, &self.cc)?;
                let left = self.comult.compose(&self.d)?;
                let right = dcc.compose(&self.comult)?;
                Ok::<_, Error>(left.agrees_with(&right, None))
            })()
            .unwrap_or_else(|e| Err(e.to_string())),
        );
        r.record(
            "ε is a chain map",
            self.counit
                .compose(&self.d)
                .map_or_else(|e| Err(e.to_string()), |m| zero_check(&Ok(m))),
        );
        if let Some(eta) = &self.coaug {
            r.record(
                "η is a coalgebra map",
                (|| {
                    let kk = GradedSpace::tensor(&[&k, &k], None);
                    let eta2 = GradedMap::tensor(&[eta, eta], &kk, &self.cc)?;
                    let left = self.comult.compose(eta)?;
                    if let Err(e) = left.agrees_with(&eta2.with_source(&k)?, None) {
                        return Ok(Err(format!("Δη ≠ η⊗η: {e}")));
                    }
                    let ee = self.counit.compose(eta)?;
                    if ee != GradedMap::identity(&k) {
                        return Ok(Err("εη ≠ id".into()));
                    }
                    Ok::<_, Error>(
                        zero_check(&self.d.compose(eta)).map_err(|e| format!("dη ≠ 0: {e}")),
                    )
                })()
                .unwrap_or_else(|e| Err(e.to_string())),
            );
        }
        r
    }
}

/// `d⊗1 + 1⊗d` on a tensor square.
pub(crate) fn tensor_differential<S: Scalar>(
    d1: &GradedMap<S>,
    d2: &GradedMap<S>,
    space: &Arc<GradedSpace>,
) -> Result<GradedMap<S>> {
    let id1 = GradedMap::identity(d1.source());
    let id2 = GradedMap::identity(d2.source());
    GradedMap::tensor(&[d1, &id2], space, space)?.add(&GradedMap::tensor(
        &[&id1, d2],
        space,
        space,
    )?)
}

/// Reports the first basis element with a nonzero image.
pub(crate) fn zero_check<S: Scalar>(m: &Result<GradedMap<S>>) -> Result<(), String> {
    match m {
        Err(e) => Err(e.to_string()),
        Ok(m) => match (0..m.source().dim()).find(|&i| !m.column(i).is_empty()) {
            None => Ok(()),
            Some(i) => Err(format!(
                "{} ↦ {}",
                m.source().name(i),
                m.render(m.column(i))
            )),
        },
    }
}

/// A morphism of dg coalgebras.
#[derive(Clone, Debug)]
pub struct CoalgebraMap<S: Scalar> {
    pub source: Arc<DgCoalgebra<S>>,
    pub target: Arc<DgCoalgebra<S>>,
    pub map: GradedMap<S>,
}

impl<S: Scalar> CoalgebraMap<S> {
    pub fn new(
        source: Arc<DgCoalgebra<S>>,
        target: Arc<DgCoalgebra<S>>,
        map: GradedMap<S>,
    ) -> Result<Self> {
        if !map.source().same_as(source.space())
            || !map.target().same_as(target.space())
            || map.degree() != 0
        {
            return Err(Error::Mismatch(
                "coalgebra map must be C -> D of degree 0".into(),
            ));
        }
        Ok(CoalgebraMap {
            source,
            target,
            map,
        })
    }

    pub fn identity(c: &Arc<DgCoalgebra<S>>) -> Self {
        CoalgebraMap {
            source: c.clone(),
            target: c.clone(),
            map: c.identity(),
        }
    }

    /// `f(c) = ε(c)·1`, the unique map to or from the point when one side is
    /// the point.
    pub fn through_unit(
        source: &Arc<DgCoalgebra<S>>,
        target: &Arc<DgCoalgebra<S>>,
    ) -> Result<Self> {
        let one = target
            .one_index()
            .ok_or_else(|| Error::NotConnected(target.name().into()))?;
        let map = GradedMap::from_fn(source.space(), target.space(), 0, |i| {
            source
                .counit()
                .column(i)
                .iter()
                .map(|(_, c)| (one, c.clone()))
                .collect()
        })?;
        Self::new(source.clone(), target.clone(), map)
    }

    pub fn validate(&self) -> Report {
        let f = &self.map;
        let (c, d) = (&self.source, &self.target);
        let mut r = Report::new(format!("coalgebra map {} -> {}", c.name(), d.name()));
        r.record(
            "chain map",
            (|| Ok::<_, Error>(d.d().compose(f)?.agrees_with(&f.compose(c.d())?, None)))()
                .unwrap_or_else(|e| Err(e.to_string())),
        );
        r.record(
            "comultiplicative",
            (|| {
                let ff = GradedMap::tensor(&[f, f], c.cc(), d.cc())?;
                Ok::<_, Error>(
                    d.comult()
                        .compose(f)?
                        .agrees_with(&ff.compose(c.comult())?, None),
                )
            })()
            .unwrap_or_else(|e| Err(e.to_string())),
        );
        r.record(
            "counital",
            (|| Ok::<_, Error>(d.counit().compose(f)?.agrees_with(c.counit(), None)))()
                .unwrap_or_else(|e| Err(e.to_string())),
        );
        if let (Some(ec), Some(ed)) = (c.coaug(), d.coaug()) {
            r.record(
                "coaugmented",
                (|| Ok::<_, Error>(f.compose(ec)?.agrees_with(ed, None)))()
                    .unwrap_or_else(|e| Err(e.to_string())),
            );
        }
        r
    }
}
