use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::coefficients::Scalar;
use crate::error::{Error, Result};
use crate::gradedlin::{koszul_sign, GradedMap, GradedSpace, SparseVec};

use super::coalgebra::{tensor_differential, zero_check, DgCoalgebra};
use super::report::Report;

/// An augmented dg algebra, possibly known only on a degree window
/// `[lo, hi]`; products leaving the window are discarded.
#[derive(Clone, Debug)]
pub struct DgAlgebra<S: Scalar> {
    name: String,
    space: Arc<GradedSpace>,
    window: (Option<i32>, Option<i32>),
    d: GradedMap<S>,
    /// `A⊗A` and `μ`, built on first use when only a product rule is given.
    mult: OnceLock<(Arc<GradedSpace>, GradedMap<S>)>,
    rule: Option<ProductRule<S>>,
    unit: usize,
    aug: GradedMap<S>,
}

type RuleFn<S> = dyn Fn(usize, usize) -> SparseVec<S> + Send + Sync;

/// Product of two basis elements, empty outside the window.
#[derive(Clone)]
pub struct ProductRule<S>(pub Arc<RuleFn<S>>);

impl<S> fmt::Debug for ProductRule<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ProductRule")
    }
}

impl<S: Scalar> DgAlgebra<S> {
    /// `mult` must be defined on `A⊗A` restricted to `window`. The
    /// augmentation sends the unit to 1 and every other basis element to 0.
    pub fn new(
        name: impl Into<String>,
        space: Arc<GradedSpace>,
        window: (Option<i32>, Option<i32>),
        d: GradedMap<S>,
        mult: GradedMap<S>,
        unit: usize,
    ) -> Result<Self> {
        let aa = GradedSpace::tensor_window(&[&space, &space], window.0, window.1);
        if !mult.source().same_as(&aa) || !mult.target().same_as(&space) || mult.degree() != 0 {
            return Err(Error::Mismatch(
                "multiplication must be A⊗A -> A of degree 0".into(),
            ));
        }
        let mult = mult.with_source(&aa)?;
        let mut a = Self::lazy(name, space, window, d, ProductRule(Arc::new(|_, _| Vec::new())), unit)?;
        a.rule = None;
        a.mult = OnceLock::from((aa, mult));
        Ok(a)
    }

    /// Like `new`, with `μ` given by a rule on basis pairs; the map on
    /// `A⊗A` is only built if asked for.
    pub fn lazy(
        name: impl Into<String>,
        space: Arc<GradedSpace>,
        window: (Option<i32>, Option<i32>),
        d: GradedMap<S>,
        rule: ProductRule<S>,
        unit: usize,
    ) -> Result<Self> {
        if !d.source().same_as(&space) || !d.target().same_as(&space) || d.degree() != -1 {
            return Err(Error::Mismatch(
                "differential must be A -> A of degree -1".into(),
            ));
        }
        if space.degree(unit) != 0 {
            return Err(Error::Degree("unit must have degree 0".into()));
        }
        let k = GradedSpace::ground();
        let aug = GradedMap::from_fn(&space, &k, 0, |i| {
            if i == unit {
                vec![(0, S::one())]
            } else {
                vec![]
            }
        })?;
        Ok(DgAlgebra {
            name: name.into(),
            space,
            window,
            d,
            mult: OnceLock::new(),
            rule: Some(rule),
            unit,
            aug,
        })
    }

    fn materialized(&self) -> &(Arc<GradedSpace>, GradedMap<S>) {
        self.mult.get_or_init(|| {
            let rule = self.rule.as_ref().expect("either μ or a rule is present");
            let aa = GradedSpace::tensor_window(&[&self.space, &self.space], self.window.0, self.window.1);
            let mult = GradedMap::from_fn(&aa, &self.space, 0, |k| {
                let t = aa.tuple(k);
                (rule.0)(t[0] as usize, t[1] as usize)
            })
            .expect("rule products have degree 0");
            (aa, mult)
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn window(&self) -> (Option<i32>, Option<i32>) {
        self.window
    }

    /// `A⊗A` restricted to the window.
    pub fn aa(&self) -> &Arc<GradedSpace> {
        &self.materialized().0
    }

    pub fn d(&self) -> &GradedMap<S> {
        &self.d
    }

    pub fn mult(&self) -> &GradedMap<S> {
        &self.materialized().1
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn augmentation(&self) -> &GradedMap<S> {
        &self.aug
    }

    /// Basis indices of the augmentation ideal.
    pub fn reduced_indices(&self) -> Vec<usize> {
        (0..self.space.dim()).filter(|&i| i != self.unit).collect()
    }

    /// `a·b` for basis elements, empty when the product leaves the window.
    pub fn product(&self, a: usize, b: usize) -> SparseVec<S> {
        if let (Some(rule), None) = (&self.rule, self.mult.get()) {
            return (rule.0)(a, b);
        }
        match self.aa().index_of_tuple(&[a as u32, b as u32]) {
            Some(k) => self.mult().column(k).to_vec(),
            None => Vec::new(),
        }
    }

    fn outside(&self, deg: i32) -> bool {
        self.window.1.is_some_and(|h| deg > h) || self.window.0.is_some_and(|l| deg < l)
    }

    pub fn validate(&self) -> Report {
        let mut r = Report::new(format!("algebra {}", self.name));
        let id = GradedMap::identity(&self.space);
        let (lo, hi) = self.window;
        r.record("d² = 0", zero_check(&self.d.compose(&self.d)));
        r.record(
            "associativity",
            (|| {
                let aaa =
                    GradedSpace::tensor_window(&[&self.space, &self.space, &self.space], lo, hi);
                let left =
                    self.mult()
                        .compose(&GradedMap::tensor(&[self.mult(), &id], &aaa, self.aa())?)?;
                let right =
                    self.mult()
                        .compose(&GradedMap::tensor(&[&id, self.mult()], &aaa, self.aa())?)?;
                Ok::<_, Error>(left.agrees_with(&right, None))
            })()
            .unwrap_or_else(|e| Err(e.to_string())),
        );
        r.record(
            "unit",
            (0..self.space.dim())
                .filter(|&a| !self.outside(self.space.degree(a)))
                .find_map(|a| {
                    let me = vec![(a, S::one())];
                    (self.product(self.unit, a) != me || self.product(a, self.unit) != me)
                        .then(|| format!("1·{0} or {0}·1 ≠ {0}", self.space.name(a)))
                })
                .map_or(Ok(()), Err),
        );
        r.record(
            "μ is a chain map",
            (|| {
                let daa = tensor_differential(&self.d, &self.d, self.aa())?;
                Ok::<_, Error>(
                    self.d
                        .compose(self.mult())?
                        .agrees_with(&self.mult().compose(&daa)?, None),
                )
            })()
            .unwrap_or_else(|e| Err(e.to_string())),
        );
        r.record(
            "augmentation is an algebra map",
            (|| {
                let k = GradedSpace::ground();
                let kk = GradedSpace::tensor(&[&k, &k], None);
                let ee =
                    GradedMap::tensor(&[&self.aug, &self.aug], self.aa(), &kk)?.with_target(&k)?;
                if let Err(e) = self.aug.compose(self.mult())?.agrees_with(&ee, None) {
                    return Ok(Err(e));
                }
                Ok::<_, Error>(zero_check(&self.aug.compose(&self.d)))
            })()
            .unwrap_or_else(|e| Err(e.to_string())),
        );
        r
    }
}

/// `C^∨` with `μ = Δ^∨`: `μ(v*⊗w*) = (-1)^{|v||w|} Σ_c ⟨Δc, v⊗w⟩ c*` and
/// `d(φ) = (-1)^{|φ|} φ∘d`. Degrees are negated.
pub fn dual_coalgebra_to_algebra<S: Scalar>(c: &DgCoalgebra<S>) -> Result<DgAlgebra<S>> {
    let cs = c.space();
    let a = cs.dual();
    let to_dual: Vec<usize> = (0..cs.dim())
        .map(|i| a.require(&cs.dual_name_of(i)))
        .collect::<Result<_>>()?;
    let d = c.d().dual_between(&a, &a)?;
    let aa = GradedSpace::tensor(&[&a, &a], None);
    let mut cols: Vec<Vec<(usize, S)>> = vec![Vec::new(); aa.dim()];
    for (ci, col) in c.comult().columns().iter().enumerate() {
        for (t, coeff) in col {
            let pair = c.cc().tuple(*t);
            let (v, w) = (pair[0] as usize, pair[1] as usize);
            let sign: S = koszul_sign(cs.degree(v), cs.degree(w));
            let src = aa
                .index_of_tuple(&[to_dual[v] as u32, to_dual[w] as u32])
                .expect("full tensor square");
            cols[src].push((to_dual[ci], sign * coeff.clone()));
        }
    }
    let mult = GradedMap::from_fn(&aa, &a, 0, |k| std::mem::take(&mut cols[k]))?;
    let unit = c
        .one_index()
        .map(|i| to_dual[i])
        .ok_or_else(|| Error::NotConnected(c.name().into()))?;
    DgAlgebra::new(format!("{}^∨", c.name()), a, (None, None), d, mult, unit)
}
