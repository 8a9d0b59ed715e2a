//! The transfer functors `L_C = −□_C P_L C` and `R_C = −⊗_{ΩC} P_R C` in
//! their explicit twisted forms, unit/counit comparisons, and primitive
//! filtrations of comodules.

use std::sync::Arc;

use crate::cobarpaths::{Bounds, CobarAlgebra};
use crate::coefficients::Scalar;
use crate::dgcore::{attempt, DgCoalgebra, Report, RightComodule, RightModule};
use crate::error::{Error, Result};
use crate::gradedlin::{kernel, GradedMap, GradedSpace, Subspace, TruncatedComplex};

/// Sign of the twisting term in `D_L`.
const TWIST_L: i64 = -1;
/// Sign of the twisting term in `D_R`.
const TWIST_R: i64 = 1;

/// `L_C(N) = (N⊗ΩC, D_L)` as a right `ΩC`-module.
#[derive(Debug)]
pub struct TransferL<S: Scalar> {
    pub cobar: Arc<CobarAlgebra<S>>,
    pub module: RightModule<S>,
    pub complex: TruncatedComplex<S>,
}

/// `R_C(M) = (M⊗C, D_R)` as a right `C`-comodule.
#[derive(Debug)]
pub struct TransferR<S: Scalar> {
    pub cobar: Arc<CobarAlgebra<S>>,
    pub comodule: RightComodule<S>,
    pub complex: TruncatedComplex<S>,
}

fn sum_d<S: Scalar>(
    da: &GradedMap<S>,
    db: &GradedMap<S>,
    space: &Arc<GradedSpace>,
) -> Result<GradedMap<S>> {
    let ia = GradedMap::identity(da.source());
    let ib = GradedMap::identity(db.source());
    GradedMap::tensor(&[da, &ib], space, space)?.add(&GradedMap::tensor(&[&ia, db], space, space)?)
}

/// `D_L(y⊗w) = dy⊗w ± y⊗d_Ω w ± y_j⊗(σc^j·w)`.
pub fn transfer_l<S: Scalar>(
    n: &RightComodule<S>,
    cobar: &Arc<CobarAlgebra<S>>,
) -> Result<TransferL<S>> {
    let c = cobar.coalgebra();
    let top = cobar.engine.top;
    let omega = cobar.space();
    let a = &cobar.algebra;
    let nw = GradedSpace::tensor(&[&n.space, omega], Some(top));
    let id_n = GradedMap::identity(&n.space);
    let id_w = GradedMap::identity(omega);
    let t = cobar.twisting_cochain()?;
    // ρ⊗1, then 1⊗t⊗1, then 1⊗μ
    let ncw = GradedSpace::tensor(&[&n.space, c.space(), omega], Some(top));
    let nww = GradedSpace::tensor_window(&[&n.space, omega, omega], None, Some(top));
    let step1 = GradedMap::tensor(&[&n.coaction, &id_w], &nw, &ncw)?;
    let step2 = GradedMap::tensor(&[&id_n, &t, &id_w], &ncw, &nww)?;
    let step3 = GradedMap::tensor(&[&id_n, a.mult()], &nww, &nw)?;
    let twist = step3
        .compose(&step2.compose(&step1)?)?
        .scale(&S::from_i64(TWIST_L));
    let d = sum_d(&n.d, a.d(), &nw)?.add(&twist)?;
    let (lo, hi) = a.window();
    let nw_w = GradedSpace::tensor_window(&[&nw, omega], lo, hi);
    let action = GradedMap::tensor(&[&id_n, a.mult()], &nw_w, &nw)?;
    let label = format!("L_C({})", n.name);
    let complex = TruncatedComplex::new(d.clone(), cobar.engine.bounds.max_degree, label.clone())?
        .approximate(cobar.engine.approximate);
    let module = RightModule::new(label, a.clone(), d, action)?;
    Ok(TransferL {
        cobar: cobar.clone(),
        module,
        complex,
    })
}

/// `D_R(x⊗c) = dx⊗c ± x⊗dc ± (x·σc_i)⊗c^i`.
pub fn transfer_r<S: Scalar>(
    m: &RightModule<S>,
    cobar: &Arc<CobarAlgebra<S>>,
) -> Result<TransferR<S>> {
    if !m.algebra.space().same_as(cobar.space()) {
        return Err(Error::Mismatch(format!(
            "{} is not a module over {}",
            m.name,
            cobar.algebra.name()
        )));
    }
    let c = cobar.coalgebra();
    let top = cobar.engine.top;
    let mc = GradedSpace::tensor(&[&m.space, c.space()], Some(top));
    let id_m = GradedMap::identity(&m.space);
    let id_c = c.identity();
    let t = cobar.twisting_cochain()?;
    let mcc = GradedSpace::tensor(&[&m.space, c.space(), c.space()], Some(top));
    let mwc = GradedSpace::tensor(&[m.action.source(), c.space()], Some(top));
    let step1 = GradedMap::tensor(&[&id_m, c.comult()], &mc, &mcc)?;
    let step2 = GradedMap::tensor(&[&id_m, &t, &id_c], &mcc, &mwc)?;
    let step3 = GradedMap::tensor(&[&m.action, &id_c], &mwc, &mc)?;
    let twist = step3
        .compose(&step2.compose(&step1)?)?
        .scale(&S::from_i64(TWIST_R));
    let d = sum_d(&m.d, c.d(), &mc)?.add(&twist)?;
    let coaction = GradedMap::tensor(
        &[&id_m, c.comult()],
        &mc,
        &GradedSpace::tensor(&[&mc, c.space()], mc.max_degree()),
    )?;
    let label = format!("R_C({})", m.name);
    let complex = TruncatedComplex::new(d.clone(), cobar.engine.bounds.max_degree, label.clone())?
        .approximate(cobar.engine.approximate);
    let comodule = RightComodule::new(label, c.clone(), d, coaction)?;
    Ok(TransferR {
        cobar: cobar.clone(),
        comodule,
        complex,
    })
}

/// A sample for the unit/counit comparison.
pub enum Sample<'a, S: Scalar> {
    Comodule(&'a RightComodule<S>),
    Module(&'a RightModule<S>),
}

/// `R_C L_C N ≃ N` or `L_C R_C M ≃ M`, compared by Betti numbers through
/// the horizon.
pub fn unit_counit_check<S: Scalar>(cobar: &Arc<CobarAlgebra<S>>, sample: Sample<'_, S>) -> Report {
    let n = cobar.engine.bounds.max_degree;
    let (name, outcome) = match sample {
        Sample::Comodule(x) => (
            format!("R_C L_C {}", x.name),
            attempt(|| {
                let l = transfer_l(x, cobar)?;
                let rl = transfer_r(&l.module, cobar)?;
                let own = TruncatedComplex::new(x.d.clone(), n, x.name.clone())?;
                Ok(compare(&rl.complex, &own, n))
            }),
        ),
        Sample::Module(x) => (
            format!("L_C R_C {}", x.name),
            attempt(|| {
                let r = transfer_r(x, cobar)?;
                let lr = transfer_l(&r.comodule, cobar)?;
                let own = TruncatedComplex::new(x.d.clone(), n, x.name.clone())?;
                Ok(compare(&lr.complex, &own, n))
            }),
        ),
    };
    let mut r = Report::new(name);
    r.record("Betti numbers agree through the horizon", outcome);
    r
}

fn compare<S: Scalar>(
    a: &TruncatedComplex<S>,
    b: &TruncatedComplex<S>,
    n: i32,
) -> Result<(), String> {
    let (ba, bb) = (a.betti(), b.betti());
    match ba.first_difference(&bb, n) {
        None => Ok(()),
        Some(d) => Err(format!("degree {d}: {} vs {}", ba.get(d), bb.get(d))),
    }
}

/// `F_0 N ⊆ F_1 N ⊆ …` with `F_m N = ker ρ̄^{(m+1)}`, `ρ̄ = ρ − 1⊗η`.
#[derive(Debug)]
pub struct PrimitiveFiltration<S: Scalar> {
    pub name: String,
    pub space: Arc<GradedSpace>,
    pub steps: Vec<Subspace<S>>,
    /// First `m` with `F_m N = N`, if reached within `dim N` steps.
    pub exhaustive_at: Option<usize>,
}

pub fn primitive_filtration<S: Scalar>(n: &RightComodule<S>) -> Result<PrimitiveFiltration<S>> {
    let c = &n.coalgebra;
    let eta = c
        .coaug()
        .ok_or_else(|| Error::NotConnected(c.name().into()))?;
    let id_n = GradedMap::identity(&n.space);
    let nc = n.coaction.target().clone();
    let rho_bar = n
        .coaction
        .sub(&GradedMap::tensor(&[&id_n, eta], &n.space, &nc)?)?;
    let dim = n.space.dim();
    let mut steps = Vec::new();
    let mut power = rho_bar.clone();
    let mut exhaustive_at = None;
    for m in 0..=dim {
        let k = kernel(power.columns());
        let full = k.dim() == dim;
        steps.push(k);
        if full {
            exhaustive_at = Some(m);
            break;
        }
        let mut f = vec![n.space.clone()];
        f.extend(std::iter::repeat(c.space().clone()).take(m + 1));
        let refs: Vec<&Arc<GradedSpace>> = f.iter().collect();
        let src = GradedSpace::tensor(&refs, None);
        f.push(c.space().clone());
        let refs: Vec<&Arc<GradedSpace>> = f.iter().collect();
        let tgt = GradedSpace::tensor(&refs, None);
        let mut maps = vec![rho_bar.clone()];
        maps.extend(std::iter::repeat(c.identity()).take(m + 1));
        let mrefs: Vec<&GradedMap<S>> = maps.iter().collect();
        power = GradedMap::tensor(&mrefs, &src, &tgt)?.compose(&power)?;
    }
    Ok(PrimitiveFiltration {
        name: n.name.clone(),
        space: n.space.clone(),
        steps,
        exhaustive_at,
    })
}

impl<S: Scalar> PrimitiveFiltration<S> {
    /// Exhaustiveness, `d(F_m) ⊆ F_m`, and `ρ̄(F_m) ⊆ F_{m−1}⊗C`.
    pub fn check(&self, n: &RightComodule<S>) -> Report {
        let mut r = Report::new(format!("primitive filtration of {}", self.name));
        r.record(
            "exhaustive within dim N steps",
            self.exhaustive_at
                .map(|_| ())
                .ok_or_else(|| format!("not exhaustive after {} steps", self.steps.len())),
        );
        let c = &n.coalgebra;
        let eta = c.coaug().expect("connected");
        let nc = n.coaction.target();
        let id_n = GradedMap::identity(&n.space);
        let rho_bar =
            GradedMap::tensor(&[&id_n, eta], &n.space, nc).and_then(|e| n.coaction.sub(&e));
        for (m, f) in self.steps.iter().enumerate() {
            r.record(
                format!("F_{m} is a subcomplex"),
                f.basis()
                    .iter()
                    .all(|v| f.contains(&n.d.apply(v)))
                    .then_some(())
                    .ok_or_else(|| "d leaves F".to_string()),
            );
            r.record(
                format!("ρ̄(F_{m}) ⊆ F_{}⊗C", m as i64 - 1),
                attempt(|| {
                    let rb = rho_bar.clone()?;
                    for v in f.basis() {
                        let image = rb.apply(v);
                        let mut by_c: std::collections::BTreeMap<u32, Vec<(usize, S)>> =
                            Default::default();
                        for (k, x) in image {
                            let t = nc.tuple(k);
                            by_c.entry(t[1]).or_default().push((t[0] as usize, x));
                        }
                        for (_, w) in by_c {
                            let w = crate::gradedlin::normalize(w);
                            let inside = m > 0 && self.steps[m - 1].contains(&w);
                            if !w.is_empty() && !inside {
                                return Ok(Err(format!(
                                    "ρ̄ leaves the previous step on {}",
                                    crate::gradedlin::render_vector(&n.space, v)
                                )));
                            }
                        }
                    }
                    Ok(Ok(()))
                }),
            );
        }
        r
    }

    pub fn dims(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.dim()).collect()
    }
}

/// Convenience: transfer over a freshly built cobar construction.
pub fn cobar_for<S: Scalar>(
    c: &Arc<DgCoalgebra<S>>,
    bounds: Bounds,
) -> Result<Arc<CobarAlgebra<S>>> {
    Ok(Arc::new(crate::cobarpaths::cobar(c, bounds)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cobarpaths::{path_left, path_right};
    use crate::dgcore::builtin;
    use crate::{F2, F3, Q};

    #[test]
    fn ground_comodule_gives_cobar() {
        let c = builtin::<Q>("cp2").unwrap();
        let o = cobar_for(&c, Bounds::new(6)).unwrap();
        let l = transfer_l(&RightComodule::trivial(&c).unwrap(), &o).unwrap();
        assert_eq!(l.complex.space().dim(), o.space().dim());
        assert!(l.complex.betti().equal_through(&o.complex.betti(), 6));
        let d = l.complex.differential();
        let w = l.complex.space().require("σy4").unwrap();
        assert_eq!(d.render(d.column(w)), "1*σy2|σy2");
    }

    #[test]
    fn transfer_of_regular_is_left_path() {
        for name in ["sphere(2)", "sphere(3)", "cp2"] {
            let c = builtin::<Q>(name).unwrap();
            let o = cobar_for(&c, Bounds::new(7)).unwrap();
            let l = transfer_l(&RightComodule::regular(&c), &o).unwrap();
            let p = path_left(&c, Bounds::new(7)).unwrap();
            l.complex.differential().agrees_by_name(p.d()).unwrap();
            let r = transfer_r(&RightModule::free(&o.algebra), &o).unwrap();
            let p = path_right(&c, Bounds::new(7)).unwrap();
            r.complex.differential().agrees_by_name(p.d()).unwrap();
            let b = r.complex.betti();
            assert!((1..=7).all(|k| b.get(k) == 0) && b.get(0) == 1);
        }
    }

    #[test]
    fn trivial_module_gives_coalgebra() {
        let c = builtin::<Q>("cp2").unwrap();
        let o = cobar_for(&c, Bounds::new(6)).unwrap();
        let r = transfer_r(&RightModule::trivial(&o.algebra).unwrap(), &o).unwrap();
        assert_eq!(r.complex.space().dim(), 3);
        assert!(r.complex.differential().is_zero());
    }

    #[test]
    fn transfers_square_to_zero_and_validate() {
        let c = builtin::<F3>("cp2").unwrap();
        let o = cobar_for(&c, Bounds::new(8)).unwrap();
        let l = transfer_l(&RightComodule::regular(&c), &o).unwrap();
        assert!(l.module.validate().passed());
        let c2 = builtin::<Q>("sphere(2)").unwrap();
        let o2 = cobar_for(&c2, Bounds::new(8)).unwrap();
        let gens = GradedSpace::new([("g", 0), ("h", 3)]).unwrap();
        let m = RightModule::free_on(&gens, &o2.algebra).unwrap();
        let r = transfer_r(&m, &o2).unwrap();
        let rep = r.comodule.validate();
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn unit_and_counit() {
        for name in ["sphere(2)", "sphere(3)", "cp2"] {
            let c = builtin::<Q>(name).unwrap();
            let o = cobar_for(&c, Bounds::new(6)).unwrap();
            let k = RightComodule::trivial(&c).unwrap();
            assert!(unit_counit_check(&o, Sample::Comodule(&k)).passed());
            assert!(unit_counit_check(&o, Sample::Comodule(&RightComodule::regular(&c))).passed());
            let r = unit_counit_check(&o, Sample::Module(&RightModule::free(&o.algebra)));
            assert!(r.passed(), "{r}");
        }
        let c = builtin::<F2>("cp2").unwrap();
        let o = cobar_for(&c, Bounds::new(6)).unwrap();
        assert!(unit_counit_check(
            &o,
            Sample::Module(&RightModule::trivial(&o.algebra).unwrap())
        )
        .passed());
    }

    #[test]
    fn filtrations() {
        let c = builtin::<Q>("sphere(3)").unwrap();
        let k = RightComodule::trivial(&c).unwrap();
        let f = primitive_filtration(&k).unwrap();
        assert_eq!(f.dims(), vec![1]);
        let reg = RightComodule::regular(&c);
        let f = primitive_filtration(&reg).unwrap();
        assert_eq!(f.dims(), vec![1, 2]);
        assert!(f.check(&reg).passed());
        let cp = builtin::<Q>("cp2").unwrap();
        let reg = RightComodule::regular(&cp);
        let f = primitive_filtration(&reg).unwrap();
        assert_eq!(f.dims(), vec![1, 2, 3]);
        let r = f.check(&reg);
        assert!(r.passed(), "{r}");
    }
}
