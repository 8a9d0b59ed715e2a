//! Braidings between dg coalgebras, the canonical coalgebra `X_*(C)`, the
//! factorization map `g_T`, and the comodule functors a braiding induces.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cobarpaths::{cobar, Bounds};
use crate::coefficients::Scalar;
use crate::comodfun::transfer_l;
use crate::dgcore::{attempt, zero_check, CoalgebraMap, DgCoalgebra, Report, RightComodule};
use crate::error::{Error, Result};
use crate::gradedlin::{axpy, kernel, GradedMap, GradedSpace, SparseVec, Subspace};

/// `Σ_k 1⊗…⊗d_k⊗…⊗1` on `space`.
fn tensor_d<S: Scalar>(ds: &[&GradedMap<S>], space: &Arc<GradedSpace>) -> Result<GradedMap<S>> {
    let ids: Vec<GradedMap<S>> = ds.iter().map(|d| GradedMap::identity(d.source())).collect();
    let mut total = GradedMap::zero(space, space, -1);
    for k in 0..ds.len() {
        let maps: Vec<&GradedMap<S>> = (0..ds.len())
            .map(|j| if j == k { ds[j] } else { &ids[j] })
            .collect();
        total = total.add(&GradedMap::tensor(&maps, space, space)?)?;
    }
    Ok(total)
}

/// A finite chain complex `X` with its dual, coevaluation and evaluation.
#[derive(Clone, Debug)]
pub struct Duality<S: Scalar> {
    pub x: Arc<GradedSpace>,
    pub dx: GradedMap<S>,
    pub dual: Arc<GradedSpace>,
    /// `d(φ) = -(-1)^{|φ|} φ∘d`, the sign that makes `u` and `ev` chain maps.
    pub d_dual: GradedMap<S>,
    /// `u: 𝕜 → X⊗X^∨`, `1 ↦ Σ x_i⊗x_i^∨`.
    pub u: GradedMap<S>,
    /// `ev: X^∨⊗X → 𝕜`.
    pub ev: GradedMap<S>,
}

impl<S: Scalar> Duality<S> {
    pub fn new(x: &Arc<GradedSpace>, dx: &GradedMap<S>) -> Result<Self> {
        if x.max_degree().is_some() {
            return Err(Error::Invalid(
                "X is only known through a truncation and is not dualizable".into(),
            ));
        }
        if !dx.source().same_as(x) || !dx.target().same_as(x) || dx.degree() != -1 {
            return Err(Error::Mismatch("dX must be X -> X of degree -1".into()));
        }
        let k = GradedSpace::ground();
        if x.is_ground() {
            let id = GradedMap::identity(&k);
            return Ok(Duality {
                x: k.clone(),
                dx: dx.clone(),
                dual: k.clone(),
                d_dual: dx.clone(),
                u: id.clone(),
                ev: id,
            });
        }
        let dual = x.dual();
        let d_dual = dx.dual_between(&dual, &dual)?.neg();
        let star: Vec<usize> = (0..x.dim())
            .map(|i| dual.require(&x.dual_name_of(i)))
            .collect::<Result<_>>()?;
        let xx = GradedSpace::tensor(&[x, &dual], None);
        let u = GradedMap::from_fn(&k, &xx, 0, |_| {
            (0..x.dim())
                .map(|i| {
                    (
                        xx.index_of_tuple(&[i as u32, star[i] as u32])
                            .expect("full tensor"),
                        S::one(),
                    )
                })
                .collect()
        })?;
        let back: BTreeMap<usize, usize> = star.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let xdx = GradedSpace::tensor(&[&dual, x], None);
        let ev = GradedMap::from_fn(&xdx, &k, 0, |j| {
            let t = xdx.tuple(j);
            if back[&(t[0] as usize)] == t[1] as usize {
                vec![(0, S::one())]
            } else {
                vec![]
            }
        })?;
        Ok(Duality {
            x: x.clone(),
            dx: dx.clone(),
            dual,
            d_dual,
            u,
            ev,
        })
    }

    /// Triangle identities and the chain-map property of `u` and `ev`.
    pub fn check(&self) -> Report {
        let mut r = Report::new("duality data");
        let (x, xd) = (&self.x, &self.dual);
        let idx = GradedMap::identity(x);
        let idd = GradedMap::identity(xd);
        r.record(
            "(1⊗ev)(u⊗1) = 1",
            attempt(|| {
                let xxx = GradedSpace::tensor(&[x, xd, x], None);
                let a = GradedMap::tensor(&[&self.u, &idx], x, &xxx)?;
                let b = GradedMap::tensor(&[&idx, &self.ev], &xxx, x)?;
                Ok(b.compose(&a)?.agrees_with(&idx, None))
            }),
        );
        r.record(
            "(ev⊗1)(1⊗u) = 1",
            attempt(|| {
                let ddd = GradedSpace::tensor(&[xd, x, xd], None);
                let a = GradedMap::tensor(&[&idd, &self.u], xd, &ddd)?;
                let b = GradedMap::tensor(&[&self.ev, &idd], &ddd, xd)?;
                Ok(b.compose(&a)?.agrees_with(&idd, None))
            }),
        );
        r.record(
            "ev is a chain map",
            attempt(|| {
                let dx = self.ev.source().clone();
                let d = tensor_d(&[&self.d_dual, &self.dx], &dx)?;
                Ok(zero_check(&self.ev.compose(&d)))
            }),
        );
        r
    }
}

/// A braiding `(X, T): C → D`.
#[derive(Clone, Debug)]
pub struct Braiding<S: Scalar> {
    pub name: String,
    pub source: Arc<DgCoalgebra<S>>,
    pub target: Arc<DgCoalgebra<S>>,
    pub x: Arc<GradedSpace>,
    pub dx: GradedMap<S>,
    pub t: GradedMap<S>,
}

impl<S: Scalar> Braiding<S> {
    pub fn new(
        name: impl Into<String>,
        source: Arc<DgCoalgebra<S>>,
        target: Arc<DgCoalgebra<S>>,
        dx: GradedMap<S>,
        t: GradedMap<S>,
    ) -> Result<Self> {
        let x = dx.source().clone();
        let cx = GradedSpace::tensor(&[source.space(), &x], None);
        let xd = GradedSpace::tensor(&[&x, target.space()], None);
        if !t.source().same_as(&cx) || !t.target().same_as(&xd) || t.degree() != 0 {
            return Err(Error::Mismatch("T must be C⊗X -> X⊗D of degree 0".into()));
        }
        let t = t.with_source(&cx)?.with_target(&xd)?;
        Ok(Braiding {
            name: name.into(),
            source,
            target,
            x,
            dx,
            t,
        })
    }

    /// `(𝕜, f)` for a coalgebra map `f`.
    pub fn from_map(f: &CoalgebraMap<S>) -> Self {
        let k = GradedSpace::ground();
        Braiding {
            name: format!("(𝕜, {} -> {})", f.source.name(), f.target.name()),
            source: f.source.clone(),
            target: f.target.clone(),
            x: k.clone(),
            dx: GradedMap::zero(&k, &k, -1),
            t: f.map.clone(),
        }
    }

    pub fn identity(c: &Arc<DgCoalgebra<S>>) -> Self {
        Self::from_map(&CoalgebraMap::identity(c))
    }

    pub fn is_change_of_coalgebras(&self) -> bool {
        self.x.is_ground()
    }

    /// Pentagon and counit diagrams as exact equalities, plus `T` being a
    /// chain map.
    pub fn validate(&self) -> Report {
        let (c, d, x) = (&self.source, &self.target, &self.x);
        let mut r = Report::new(format!("braiding {}", self.name));
        let idx = GradedMap::identity(x);
        let cx = self.t.source();
        let xd = self.t.target();
        r.record("d_X² = 0", zero_check(&self.dx.compose(&self.dx)));
        r.record(
            "T is a chain map",
            attempt(|| {
                let d1 = tensor_d(&[c.d(), &self.dx], cx)?;
                let d2 = tensor_d(&[&self.dx, d.d()], xd)?;
                Ok(d2
                    .compose(&self.t)?
                    .agrees_with(&self.t.compose(&d1)?, None))
            }),
        );
        r.record(
            "pentagon",
            attempt(|| {
                let ccx = GradedSpace::tensor(&[c.space(), c.space(), x], None);
                let cxd = GradedSpace::tensor(&[c.space(), x, d.space()], None);
                let xdd = GradedSpace::tensor(&[x, d.space(), d.space()], None);
                let lhs = GradedMap::tensor(&[&idx, d.comult()], xd, &xdd)?.compose(&self.t)?;
                let rhs = GradedMap::tensor(&[&self.t, &d.identity()], &cxd, &xdd)?
                    .compose(&GradedMap::tensor(&[&c.identity(), &self.t], &ccx, &cxd)?)?
                    .compose(&GradedMap::tensor(&[c.comult(), &idx], cx, &ccx)?)?;
                Ok(lhs.agrees_with(&rhs, None))
            }),
        );
        r.record(
            "counit",
            attempt(|| {
                let lhs = GradedMap::tensor(&[&idx, d.counit()], xd, x)?.compose(&self.t)?;
                let rhs = GradedMap::tensor(&[c.counit(), &idx], cx, x)?;
                Ok(lhs.agrees_with(&rhs, None))
            }),
        );
        r
    }
}

/// `X_*(C) = X^∨⊗C⊗X`.
#[derive(Clone, Debug)]
pub struct CanonicalCoalgebra<S: Scalar> {
    pub duality: Duality<S>,
    pub base: Arc<DgCoalgebra<S>>,
    pub coalgebra: Arc<DgCoalgebra<S>>,
    /// Set unless `X` is one-dimensional and `C` is connected.
    pub non_connected: bool,
}

pub fn canonical_coalgebra<S: Scalar>(
    x: &Arc<GradedSpace>,
    dx: &GradedMap<S>,
    c: &Arc<DgCoalgebra<S>>,
) -> Result<CanonicalCoalgebra<S>> {
    let du = Duality::new(x, dx)?;
    let (x, xd) = (&du.x, &du.dual);
    let space = GradedSpace::tensor(&[xd, c.space(), x], None);
    let (idd, idc, idx) = (
        GradedMap::identity(xd),
        c.identity(),
        GradedMap::identity(x),
    );
    let d = tensor_d(&[&du.d_dual, c.d(), &du.dx], &space)?;
    let dccx = GradedSpace::tensor(&[xd, c.space(), c.space(), x], None);
    let ss = GradedSpace::tensor(&[&space, &space], None);
    let comult = GradedMap::tensor(&[&idd, &idc, &du.u, &idc, &idx], &dccx, &ss)?.compose(
        &GradedMap::tensor(&[&idd, c.comult(), &idx], &space, &dccx)?,
    )?;
    let dx_ = GradedSpace::tensor(&[xd, x], None);
    let counit = du
        .ev
        .compose(&GradedMap::tensor(&[&idd, c.counit(), &idx], &space, &dx_)?)?;
    let one_dim = x.dim() == 1;
    let coaug = match (one_dim && !x.is_ground(), c.one_index()) {
        (true, Some(one)) => {
            let i = space.index_of_tuple(&[0, one as u32, 0]).expect("x^∨⊗1⊗x");
            Some(GradedMap::from_fn(
                &GradedSpace::ground(),
                &space,
                0,
                |_| vec![(i, S::one())],
            )?)
        }
        _ => None,
    };
    let coalgebra = if x.is_ground() {
        c.clone()
    } else {
        let name = format!("X_*({})", c.name());
        Arc::new(DgCoalgebra::with_structure(
            name, space, d, comult, counit, coaug,
        )?)
    };
    Ok(CanonicalCoalgebra {
        duality: du,
        base: c.clone(),
        coalgebra,
        non_connected: !(one_dim && c.is_connected()),
    })
}

impl<S: Scalar> CanonicalCoalgebra<S> {
    /// `T^univ = u⊗1: C⊗X → X⊗X_*(C)`.
    pub fn braiding(&self) -> Result<Braiding<S>> {
        let (x, c) = (&self.duality.x, &self.base);
        let cx = GradedSpace::tensor(&[c.space(), x], None);
        let target = GradedSpace::tensor(&[x, self.coalgebra.space()], None);
        let t = GradedMap::tensor(
            &[&self.duality.u, &c.identity(), &GradedMap::identity(x)],
            &cx,
            &target,
        )?;
        Braiding::new(
            format!("T^univ({})", c.name()),
            c.clone(),
            self.coalgebra.clone(),
            self.duality.dx.clone(),
            t,
        )
    }

    /// For one-dimensional `X`, the same coalgebra on an atomic basis named
    /// after `C` (so `x^∨⊗1⊗x` becomes `1`); connected when `C` is.
    pub fn connected_model(&self) -> Result<Arc<DgCoalgebra<S>>> {
        if self.duality.x.dim() != 1 {
            return Err(Error::NotConnected(format!(
                "{}: X has dimension {}",
                self.coalgebra.name(),
                self.duality.x.dim()
            )));
        }
        if self.duality.x.is_ground() {
            return Ok(self.base.clone());
        }
        let k = &self.coalgebra;
        let c = self.base.space();
        let space = GradedSpace::new((0..c.dim()).map(|i| (c.name(i).to_string(), c.degree(i))))?;
        // position of the C factor in X^∨⊗C⊗X
        let mid = |i: usize| {
            space
                .require(c.name(k.space().tuple(i)[1] as usize))
                .expect("same names")
        };
        let from =
            |m: &GradedMap<S>, tgt: &Arc<GradedSpace>, deg: i32, re: &dyn Fn(usize) -> usize| {
                let mut cols: Vec<SparseVec<S>> = vec![Vec::new(); space.dim()];
                for i in 0..m.source().dim() {
                    cols[mid(i)] = m
                        .column(i)
                        .iter()
                        .map(|(j, a)| (re(*j), a.clone()))
                        .collect();
                }
                GradedMap::from_fn(&space, tgt, deg, |i| std::mem::take(&mut cols[i]))
            };
        let d = from(k.d(), &space, -1, &mid)?;
        let cc = GradedSpace::tensor(&[&space, &space], None);
        let pair = |j: usize| {
            let t = k.cc().tuple(j);
            let a = space.require(c.name(t[1] as usize)).expect("same names");
            let b = space.require(c.name(t[4] as usize)).expect("same names");
            cc.index_of_tuple(&[a as u32, b as u32])
                .expect("full square")
        };
        let comult = from(k.comult(), &cc, 0, &pair)?;
        let name = format!("X_*({}) model", self.base.name());
        Ok(Arc::new(DgCoalgebra::new(name, space, d, comult)?))
    }
}

pub fn canonical_braiding<S: Scalar>(
    x: &Arc<GradedSpace>,
    dx: &GradedMap<S>,
    c: &Arc<DgCoalgebra<S>>,
) -> Result<Braiding<S>> {
    canonical_coalgebra(x, dx, c)?.braiding()
}

/// `g_T: X_*(C) → D` with its checks.
#[derive(Debug)]
pub struct Factorization<S: Scalar> {
    pub canonical: CanonicalCoalgebra<S>,
    pub g: CoalgebraMap<S>,
    pub report: Report,
}

/// `g_T = (ev⊗1)(1⊗T)`, and the identity `T = (1⊗g_T)T^univ`.
pub fn factorization_gt<S: Scalar>(b: &Braiding<S>) -> Result<Factorization<S>> {
    let canonical = canonical_coalgebra(&b.x, &b.dx, &b.source)?;
    let du = &canonical.duality;
    let (x, xd, d) = (&du.x, &du.dual, &b.target);
    let k = canonical.coalgebra.space();
    let dxd = GradedSpace::tensor(&[xd, x, d.space()], None);
    let g = GradedMap::tensor(&[&du.ev, &d.identity()], &dxd, d.space())?.compose(
        &GradedMap::tensor(&[&GradedMap::identity(xd), &b.t], k, &dxd)?,
    )?;
    let g = CoalgebraMap::new(canonical.coalgebra.clone(), d.clone(), g)?;
    let mut report = g.validate();
    report.record(
        "T = (1⊗g_T)∘T^univ",
        attempt(|| {
            let univ = canonical.braiding()?;
            let lift = GradedMap::tensor(
                &[&GradedMap::identity(x), &g.map],
                univ.t.target(),
                b.t.target(),
            )?;
            Ok(lift.compose(&univ.t)?.agrees_with(&b.t, None))
        }),
    );
    Ok(Factorization {
        canonical,
        g,
        report,
    })
}

/// `f_*(M, δ) = (M, (1⊗f)δ)`.
pub fn change_of_coalgebras<S: Scalar>(
    f: &CoalgebraMap<S>,
    m: &RightComodule<S>,
) -> Result<RightComodule<S>> {
    let r = f.validate();
    if !r.passed() {
        return Err(Error::Invalid(format!("{r}")));
    }
    if !Arc::ptr_eq(&m.coalgebra, &f.source) && !m.coalgebra.space().same_as(f.source.space()) {
        return Err(Error::Mismatch(format!(
            "{} is not a comodule over {}",
            m.name,
            f.source.name()
        )));
    }
    let md = GradedSpace::tensor(&[&m.space, f.target.space()], m.space.max_degree());
    let co = GradedMap::tensor(&[&GradedMap::identity(&m.space), &f.map], m.target(), &md)?
        .compose(&m.coaction)?;
    RightComodule::new(format!("f_*{}", m.name), f.target.clone(), m.d.clone(), co)
}

/// `T_*(N) = N⊗X` with coaction `(1⊗T)(ρ⊗1)`.
pub fn push_forward<S: Scalar>(b: &Braiding<S>, n: &RightComodule<S>) -> Result<RightComodule<S>> {
    let (c, d, x) = (&b.source, &b.target, &b.x);
    let nx = GradedSpace::tensor(&[&n.space, x], None);
    let ncx = GradedSpace::tensor(&[&n.space, c.space(), x], None);
    let nxd = GradedSpace::tensor(&[&n.space, x, d.space()], None);
    let idn = GradedMap::identity(&n.space);
    let co = GradedMap::tensor(&[&idn, &b.t], &ncx, &nxd)?.compose(&GradedMap::tensor(
        &[&n.coaction, &GradedMap::identity(x)],
        &nx,
        &ncx,
    )?)?;
    let dd = tensor_d(&[&n.d, &b.dx], &nx)?;
    RightComodule::new(format!("T_*{}", n.name), d.clone(), dd, co)
}

/// `T^*(M) = M □_D (X^∨⊗C)`, computed as an exact kernel inside `M⊗X^∨⊗C`.
pub fn pull_back<S: Scalar>(b: &Braiding<S>, m: &RightComodule<S>) -> Result<RightComodule<S>> {
    let fac = factorization_gt(b)?;
    let du = &fac.canonical.duality;
    let (c, d, xd) = (&b.source, &b.target, &du.dual);
    let (idd, idc, idm) = (
        GradedMap::identity(xd),
        c.identity(),
        GradedMap::identity(&m.space),
    );
    // λ: X^∨⊗C → D⊗X^∨⊗C, (g_T⊗1⊗1)(1⊗1⊗u⊗1)(1⊗Δ)
    let dc = GradedSpace::tensor(&[xd, c.space()], None);
    let dcc = GradedSpace::tensor(&[xd, c.space(), c.space()], None);
    let kdc = GradedSpace::tensor(&[fac.canonical.coalgebra.space(), xd, c.space()], None);
    let ddc = GradedSpace::tensor(&[d.space(), xd, c.space()], None);
    let lambda = GradedMap::tensor(&[&fac.g.map, &idd, &idc], &kdc, &ddc)?
        .compose(&GradedMap::tensor(&[&idd, &idc, &du.u, &idc], &dcc, &kdc)?)?
        .compose(&GradedMap::tensor(&[&idd, c.comult()], &dc, &dcc)?)?;
    let big = GradedSpace::tensor(&[&m.space, xd, c.space()], None);
    let mddc = GradedSpace::tensor(&[&m.space, d.space(), xd, c.space()], None);
    let diff = GradedMap::tensor(&[&m.coaction, &idd, &idc], &big, &mddc)?
        .sub(&GradedMap::tensor(&[&idm, &lambda], &big, &mddc)?)?;
    let dbig = tensor_d(&[&m.d, &du.d_dual, c.d()], &big)?;
    let bigc = GradedSpace::tensor(&[&big, c.space()], None);
    let cobig = GradedMap::tensor(&[&idm, &idd, c.comult()], &big, &bigc)?;
    restrict(format!("T^*{}", m.name), c, &big, &diff, &dbig, &cobig)
}

/// The subcomodule `ker f` of the cofree-shaped comodule `(big, d, ρ)`.
fn restrict<S: Scalar>(
    name: String,
    c: &Arc<DgCoalgebra<S>>,
    big: &Arc<GradedSpace>,
    f: &GradedMap<S>,
    d: &GradedMap<S>,
    rho: &GradedMap<S>,
) -> Result<RightComodule<S>> {
    let mut blocks: BTreeMap<i32, Subspace<S>> = BTreeMap::new();
    for deg in big.degrees() {
        let r = big.range(deg);
        let cols: Vec<SparseVec<S>> = r.clone().map(|i| f.column(i).to_vec()).collect();
        let shifted = kernel(&cols)
            .basis()
            .iter()
            .map(|v| v.iter().map(|(i, a)| (r.start + i, a.clone())).collect())
            .collect();
        blocks.insert(deg, Subspace::from_vectors(shifted));
    }
    let mut elems = Vec::new();
    let mut keys = Vec::new();
    for (deg, sub) in &blocks {
        for (k, v) in sub.basis().iter().enumerate() {
            let label = match v.as_slice() {
                [(i, _)] => big.name(*i).to_string(),
                _ => format!("κ{deg}.{k}"),
            };
            elems.push((label, *deg));
            keys.push((*deg, k));
        }
    }
    let space = GradedSpace::new(elems.iter().cloned())?;
    let mut at = BTreeMap::new();
    let mut back = vec![(0, 0); space.dim()];
    for (e, (label, _)) in elems.iter().enumerate() {
        let g = space.require(label)?;
        at.insert(keys[e], g);
        back[g] = keys[e];
    }
    let vector = |g: usize| -> &SparseVec<S> {
        let (deg, k) = back[g];
        &blocks[&deg].basis()[k]
    };
    let coords = |v: &SparseVec<S>, deg: i32| -> Result<SparseVec<S>> {
        if v.is_empty() {
            return Ok(Vec::new());
        }
        let sub = blocks
            .get(&deg)
            .ok_or_else(|| Error::Invalid("kernel is not a subcomplex".into()))?;
        let c = sub.coords(v).ok_or_else(|| {
            Error::Invalid("kernel is not closed under the structure maps".into())
        })?;
        Ok(c.into_iter().map(|(k, a)| (at[&(deg, k)], a)).collect())
    };
    let mut dcols = Vec::with_capacity(space.dim());
    for g in 0..space.dim() {
        dcols.push(coords(&d.apply(vector(g)), space.degree(g) - 1)?);
    }
    let dd = GradedMap::from_fn(&space, &space, -1, |g| std::mem::take(&mut dcols[g]))?;
    let kc = GradedSpace::tensor(&[&space, c.space()], None);
    let bigc = rho.target();
    let mut ccols = Vec::with_capacity(space.dim());
    for g in 0..space.dim() {
        let mut by_c: BTreeMap<u32, SparseVec<S>> = BTreeMap::new();
        for (j, a) in rho.apply(vector(g)) {
            let t = bigc.tuple(j);
            let (last, rest) = t.split_last().expect("nonempty tuple");
            let i = big
                .index_of_tuple(rest)
                .expect("prefix lies in the big space");
            let e = by_c.entry(*last).or_default();
            *e = axpy(e, &a, &[(i, S::one())]);
        }
        let mut col = Vec::new();
        for (ci, v) in by_c {
            let deg = space.degree(g) - c.space().degree(ci as usize);
            for (k, a) in coords(&v, deg)? {
                let tuple: Vec<u32> = space.tuple(k).into_iter().chain([ci]).collect();
                col.push((kc.index_of_tuple(&tuple).expect("full tensor"), a));
            }
        }
        ccols.push(col);
    }
    let co = GradedMap::from_fn(&space, &kc, 0, |g| std::mem::take(&mut ccols[g]))?;
    RightComodule::new(name, c.clone(), dd, co)
}

/// Builds `L_C(M)⊗_{ΩC}(X⊗ΩD)` directly from the left `ΩC`-action
/// `σc·(x⊗w) = x_i⊗σd^i·w` and compares it entrywise with `L_D(T_*M)`.
pub fn module_compatibility_check<S: Scalar>(
    b: &Braiding<S>,
    m: &RightComodule<S>,
    n: i32,
) -> Result<Report> {
    b.source.require_connected()?;
    b.target.require_connected()?;
    let oc = Arc::new(cobar(&b.source, Bounds::new(n))?);
    let od = Arc::new(cobar(&b.target, Bounds::new(n))?);
    let lc = transfer_l(m, &oc)?;
    let rhs = transfer_l(&push_forward(b, m)?, &od)?;
    let space = rhs.complex.space().clone();
    let x = &b.x;
    let (na, xa) = (m.space.atom_count(), x.atom_count());
    let ce = &oc.engine;
    let de = &od.engine;
    let xd = b.t.target();
    // σc·(x⊗w) on tuples (x, w)
    let act_letter = |l: u32, xt: &[u32], w: usize| -> Vec<(Vec<u32>, usize, S)> {
        let (_, wl) = od.words.unpack(w);
        let mut out = Vec::new();
        for (ci, a) in ce.unsigma.column(l as usize) {
            let src: Vec<u32> = std::iter::once(*ci as u32)
                .chain(xt.iter().copied())
                .collect();
            let Some(j) = b.t.source().index_of_tuple(&src) else {
                continue;
            };
            for (k, tcoef) in b.t.column(j) {
                let tt = xd.tuple(*k);
                let (xi, di) = tt.split_at(xa);
                for (dl, s) in de.sigma.column(di[0] as usize) {
                    let word: Vec<u32> = std::iter::once(*dl as u32)
                        .chain(wl.iter().copied())
                        .collect();
                    if let Some(w2) = od.word(&word) {
                        out.push((xi.to_vec(), w2, a.clone() * tcoef.clone() * s.clone()));
                    }
                }
            }
        }
        out
    };
    let index = |mt: &[u32], xt: &[u32], w: usize| -> Option<usize> {
        let t: Vec<u32> = mt.iter().chain(xt).copied().chain([w as u32]).collect();
        space.index_of_tuple(&t)
    };
    let lspace = lc.complex.space();
    let unit_c = oc.word(&[]).expect("empty word") as u32;
    let dy = tensor_d(
        &[&b.dx, od.d()],
        &GradedSpace::tensor(&[x, od.space()], Some(od.engine.top)),
    )?;
    let ytuple = dy.source().clone();
    let mut cols = Vec::with_capacity(space.dim());
    for g in 0..space.dim() {
        let t = space.tuple(g);
        let (mt, rest) = t.split_at(na);
        let (xt, wt) = rest.split_at(xa);
        let w = wt[0] as usize;
        let mut col: Vec<(usize, S)> = Vec::new();
        let m1: Vec<u32> = mt.iter().copied().chain([unit_c]).collect();
        let j = lspace
            .index_of_tuple(&m1)
            .ok_or_else(|| Error::Invalid("m⊗1 outside L_C(M)".into()))?;
        for (k, a) in lc.complex.differential().column(j) {
            let lt = lspace.tuple(*k);
            let (mt2, wc) = lt.split_at(na);
            let (_, letters) = oc.words.unpack(wc[0] as usize);
            let mut terms = vec![(xt.to_vec(), w, a.clone())];
            for l in letters.iter().rev() {
                terms = terms
                    .into_iter()
                    .flat_map(|(xt, w, s)| {
                        act_letter(*l, &xt, w)
                            .into_iter()
                            .map(move |(x2, w2, s2)| (x2, w2, s.clone() * s2))
                    })
                    .collect();
            }
            col.extend(
                terms
                    .into_iter()
                    .filter_map(|(x2, w2, s)| index(mt2, &x2, w2).map(|i| (i, s))),
            );
        }
        let sign = S::sign(m.space.index_of_tuple(mt).map_or(0, |i| m.space.degree(i)) as i64);
        if let Some(y) = ytuple.index_of_tuple(rest) {
            for (k, a) in dy.column(y) {
                let yt = ytuple.tuple(*k);
                let (x2, w2) = yt.split_at(xa);
                if let Some(i) = index(mt, x2, w2[0] as usize) {
                    col.push((i, sign.clone() * a.clone()));
                }
            }
        }
        cols.push(col);
    }
    let lhs = GradedMap::from_fn(&space, &space, -1, |g| std::mem::take(&mut cols[g]))?;
    let mut r = Report::new(format!(
        "L_C({})⊗(X⊗ΩD) vs L_D(T_*{}) for {}",
        m.name, m.name, b.name
    ));
    r.record(
        "underlying spaces agree",
        (lhs.source().dim() == rhs.complex.space().dim())
            .then_some(())
            .ok_or_else(|| "dimensions differ".to_string()),
    );
    r.record(
        "differentials agree entrywise",
        lhs.agrees_by_name(rhs.complex.differential()),
    );
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohochschild::cohochschild_complex;
    use crate::dgcore::builtin;
    use crate::{One, F3, Q};

    fn complex<S: Scalar>(
        basis: &[(&str, i32)],
        d: &[(&str, &str)],
    ) -> (Arc<GradedSpace>, GradedMap<S>) {
        let x = GradedSpace::new(basis.iter().map(|(n, k)| (n.to_string(), *k))).unwrap();
        let dx = GradedMap::from_named(
            &x,
            &x,
            -1,
            d.iter().map(|(a, b)| (*a, vec![(*b, S::one())])),
        )
        .unwrap();
        (x, dx)
    }

    fn x_corpus<S: Scalar>() -> Vec<(Arc<GradedSpace>, GradedMap<S>)> {
        vec![
            complex(&[("x", 0)], &[]),
            complex(&[("x", 1)], &[]),
            complex(&[("x", 3)], &[]),
            complex(&[("x", 0), ("y", 0)], &[]),
            complex(&[("x", 0), ("y", 2)], &[]),
            complex(&[("a", 0), ("b", 1)], &[("b", "a")]),
        ]
    }

    const CORPUS: [&str; 4] = ["point", "sphere(2)", "sphere(3)", "cp2"];

    #[test]
    fn change_of_coalgebra_braidings() {
        for name in CORPUS {
            let c = builtin::<Q>(name).unwrap();
            assert!(Braiding::identity(&c).validate().passed());
        }
        let f = CoalgebraMap::through_unit(
            &builtin::<Q>("sphere(3)").unwrap(),
            &builtin::<Q>("point").unwrap(),
        )
        .unwrap();
        let r = Braiding::from_map(&f).validate();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn canonical_braidings_validate() {
        for name in CORPUS {
            let c = builtin::<F3>(name).unwrap();
            for (x, dx) in x_corpus::<F3>() {
                let k = canonical_coalgebra(&x, &dx, &c).unwrap();
                assert!(k.duality.check().passed(), "{}", k.duality.check());
                let r = if k.non_connected {
                    k.coalgebra.validate_axioms()
                } else {
                    k.connected_model().unwrap().validate()
                };
                assert!(r.passed(), "{r}");
                let r = k.braiding().unwrap().validate();
                assert!(r.passed(), "{r}");
                let f = factorization_gt(&k.braiding().unwrap()).unwrap();
                assert!(f.report.passed(), "{}", f.report);
                f.g.map.agrees_with(&k.coalgebra.identity(), None).unwrap();
            }
        }
    }

    #[test]
    fn matrix_coalgebra_over_point() {
        let (x, dx) = complex::<Q>(&[("x", 0), ("y", 0)], &[]);
        let k = canonical_coalgebra(&x, &dx, &builtin::<Q>("point").unwrap()).unwrap();
        assert_eq!(k.coalgebra.space().dim(), 4);
        assert!(k.non_connected);
        assert!(!k.coalgebra.is_connected());
        assert!(k.coalgebra.validate_axioms().passed());
        let e = k.coalgebra.space().require("x*⊗1⊗x").unwrap();
        assert_eq!(
            k.coalgebra.comult().render(k.coalgebra.comult().column(e)),
            "1*x*⊗1⊗x⊗x*⊗1⊗x + 1*x*⊗1⊗y⊗y*⊗1⊗x"
        );
    }

    fn corrupt(b: &Braiding<Q>, source: &str) -> Braiding<Q> {
        let mut t = b.t.clone();
        let i = t.source().require(source).unwrap();
        let cols: Vec<SparseVec<Q>> = (0..t.source().dim())
            .map(|j| {
                if j == i {
                    t.column(j).iter().map(|(k, a)| (*k, -a.clone())).collect()
                } else {
                    t.column(j).to_vec()
                }
            })
            .collect();
        t = GradedMap::from_fn(t.source(), t.target(), 0, |j| cols[j].clone()).unwrap();
        Braiding { t, ..b.clone() }
    }

    #[test]
    fn corrupted_signs_are_caught() {
        let c = builtin::<Q>("cp2").unwrap();
        let (x, dx) = complex::<Q>(&[("x", 0)], &[]);
        let bad = corrupt(&canonical_braiding(&x, &dx, &c).unwrap(), "y4⊗x");
        let r = bad.validate();
        assert!(r.failed("pentagon"), "{r}");
        let f = factorization_gt(&bad).unwrap();
        assert!(f.report.failed("T = (1⊗g_T)∘T^univ") || !f.report.passed());
    }

    #[test]
    fn one_dimensional_x_keeps_cohochschild_homology() {
        for name in ["sphere(2)", "sphere(3)", "cp2"] {
            let c = builtin::<Q>(name).unwrap();
            let ref_betti = cohochschild_complex(&c, Bounds::new(7))
                .unwrap()
                .complex
                .betti();
            for deg in [0, 1, 3] {
                let (x, dx) = complex::<Q>(&[("x", deg)], &[]);
                let k = canonical_coalgebra(&x, &dx, &c).unwrap();
                assert!(!k.non_connected);
                let model = k.connected_model().unwrap();
                assert!(model.validate().passed() && model.is_connected());
                let b = cohochschild_complex(&model, Bounds::new(7))
                    .unwrap()
                    .complex
                    .betti();
                assert!(
                    b.equal_through(&ref_betti, 7),
                    "{name} X=k[{deg}]: {b} vs {ref_betti}"
                );
            }
        }
    }

    #[test]
    fn g_t_of_a_map_is_the_map() {
        let s3 = builtin::<Q>("sphere(3)").unwrap();
        let f = CoalgebraMap::through_unit(&s3, &builtin::<Q>("point").unwrap()).unwrap();
        let fac = factorization_gt(&Braiding::from_map(&f)).unwrap();
        assert!(fac.report.passed());
        fac.g.map.agrees_with(&f.map, None).unwrap();
    }

    #[test]
    fn change_of_coalgebras_examples() {
        let s3 = builtin::<Q>("sphere(3)").unwrap();
        let pt = builtin::<Q>("point").unwrap();
        let reg = RightComodule::regular(&s3);
        let same = change_of_coalgebras(&CoalgebraMap::identity(&s3), &reg).unwrap();
        same.coaction.agrees_with(&reg.coaction, None).unwrap();
        let f = CoalgebraMap::through_unit(&s3, &pt).unwrap();
        let pushed = change_of_coalgebras(&f, &reg).unwrap();
        assert!(pushed.validate().passed());
        let z = pushed.space.require("z").unwrap();
        assert_eq!(pushed.coaction.render(pushed.coaction.column(z)), "1*z⊗1");
        // the counit of f_* ⊣ f^* at D is f: a comodule map f_*(C) → D
        let s2 = builtin::<Q>("sphere(2)").unwrap();
        let cp = builtin::<Q>("cp2").unwrap();
        let inc = GradedMap::from_named(
            s2.space(),
            cp.space(),
            0,
            [("1", vec![("1", Q::one())]), ("z", vec![("y2", Q::one())])],
        )
        .unwrap();
        let g = CoalgebraMap::new(s2.clone(), cp.clone(), inc).unwrap();
        assert!(g.validate().passed());
        let fc = change_of_coalgebras(&g, &RightComodule::regular(&s2)).unwrap();
        let lhs = cp.comult().compose(&g.map).unwrap();
        let rhs = GradedMap::tensor(&[&g.map, &cp.identity()], fc.target(), cp.cc())
            .unwrap()
            .compose(&fc.coaction)
            .unwrap();
        lhs.agrees_with(&rhs, None).unwrap();
    }

    #[test]
    fn push_forward_and_pull_back() {
        let s3 = builtin::<Q>("sphere(3)").unwrap();
        let pt = builtin::<Q>("point").unwrap();
        let id = Braiding::identity(&s3);
        let reg = RightComodule::regular(&s3);
        push_forward(&id, &reg)
            .unwrap()
            .coaction
            .agrees_with(&reg.coaction, None)
            .unwrap();
        let f = CoalgebraMap::through_unit(&s3, &pt).unwrap();
        let a = push_forward(&Braiding::from_map(&f), &reg).unwrap();
        let b = change_of_coalgebras(&f, &reg).unwrap();
        a.coaction.agrees_with(&b.coaction, None).unwrap();
        for name in ["sphere(3)", "cp2"] {
            let c = builtin::<Q>(name).unwrap();
            let (x, dx) = complex::<Q>(&[("x", 3)], &[]);
            let b = canonical_braiding(&x, &dx, &c).unwrap();
            let back = pull_back(&b, &RightComodule::regular(&b.target)).unwrap();
            assert!(back.validate().passed(), "{}", back.validate());
            let dims: Vec<_> = back.space.dims().into_iter().collect();
            let expect: Vec<_> = GradedSpace::tensor(&[&x.dual(), c.space()], None)
                .dims()
                .into_iter()
                .collect();
            assert_eq!(dims, expect);
            let pushed = push_forward(&b, &RightComodule::regular(&c)).unwrap();
            assert!(pushed.validate().passed());
        }
    }

    #[test]
    fn module_compatibility() {
        let s3 = builtin::<Q>("sphere(3)").unwrap();
        let pt = builtin::<Q>("point").unwrap();
        let r = module_compatibility_check(
            &Braiding::identity(&s3),
            &RightComodule::trivial(&s3).unwrap(),
            6,
        )
        .unwrap();
        assert!(r.passed(), "{r}");
        let f = CoalgebraMap::through_unit(&s3, &pt).unwrap();
        let r =
            module_compatibility_check(&Braiding::from_map(&f), &RightComodule::regular(&s3), 6)
                .unwrap();
        assert!(r.passed(), "{r}");
        let s2 = builtin::<Q>("sphere(2)").unwrap();
        let cp = builtin::<Q>("cp2").unwrap();
        let inc = GradedMap::from_named(
            s2.space(),
            cp.space(),
            0,
            [("1", vec![("1", Q::one())]), ("z", vec![("y2", Q::one())])],
        )
        .unwrap();
        let g = CoalgebraMap::new(s2.clone(), cp.clone(), inc).unwrap();
        for m in [
            RightComodule::regular(&s2),
            RightComodule::trivial(&s2).unwrap(),
        ] {
            let r = module_compatibility_check(&Braiding::from_map(&g), &m, 6).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
}
