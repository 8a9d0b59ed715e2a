use std::sync::Arc;

use cohh_core::cobarpaths::{cobar, path_left, path_right, sdr_comodule_side, sdr_module_side, Bounds};
use cohh_core::cohochschild::{conormalized_tot, cosimplicial_cobar, cosimplicial_cohochschild, cohochschild_complex, tot_bounds};
use cohh_core::comodfun::{cobar_for, transfer_l, transfer_r, unit_counit_check, Sample};
use cohh_core::dgcore::{Bicomodule, DgCoalgebra, LeftComodule, Report as Checks, RightComodule, RightModule};
use cohh_core::hochschild::{dual_comparison, hochschild_cochain_of_dual, hochschild_complex};
use cohh_core::morita::{canonical_coalgebra, factorization_gt, module_compatibility_check, Braiding};
use cohh_core::simplicial::normalized_chains;
use cohh_core::{BettiTable, GradedMap, GradedSpace, Scalar, TruncatedComplex};

use crate::input::Source;
use crate::{Failure, Outcome, Report, Request, Status, Table, Task};

struct Run<'a, S: Scalar> {
    req: &'a Request,
    c: Arc<DgCoalgebra<S>>,
    n: i32,
    approximate: bool,
    tables: Vec<Table>,
}

impl<S: Scalar> Run<'_, S> {
    fn bounds(&self) -> Bounds {
        Bounds::with_word_bound(self.n, self.req.word_bound)
    }

    fn table(&mut self, label: impl Into<String>, cx: &TruncatedComplex<S>) -> BettiTable {
        let b = cx.betti();
        self.approximate |= cx.is_approximate();
        self.tables.push(Table::from_betti(label, &b, 0, self.n));
        b
    }

    fn finish(self, status: Status, verdict: String) -> Outcome {
        Outcome {
            status,
            report: Report {
                task: self.req.task.name(),
                field: S::field().to_string(),
                horizon: self.n,
                approximate: self.approximate,
                tables: self.tables,
                verdict,
            },
        }
    }

    fn checks(self, r: &Checks, mismatch: Status) -> Outcome {
        if r.passed() {
            let v = format!("PASS: {} checks through degree {}", r.checks.len(), self.n);
            self.finish(Status::Ok, v)
        } else {
            let fails: Vec<String> = r.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
            self.finish(mismatch, format!("FAIL: {}", fails.join("; ")))
        }
    }

    fn equality(self, a: &BettiTable, b: &BettiTable) -> Outcome {
        let n = self.n;
        match a.first_difference(b, n) {
            None => self.finish(Status::Ok, format!("EQUAL through degree {n}")),
            Some(k) => self.finish(Status::Mismatch, format!("DIFFER at degree {k}")),
        }
    }
}

pub fn run<S: Scalar>(req: &Request, source: &Source) -> Result<Outcome, Failure> {
    let c = source.coalgebra::<S>()?;
    let mut run = Run { req, c: c.clone(), n: req.max_degree, approximate: false, tables: Vec::new() };
    let unreduced = source.simplicial_set().is_some_and(|k| k.vertices().len() > 1);
    let mut checks = if unreduced { c.validate_axioms() } else { c.validate() };
    if let Some((dx, t)) = source.braiding(&c)? {
        let b = Braiding::new("braiding", c.clone(), c.clone(), dx, t)?;
        checks.merge(b.validate());
    }
    if req.task == Task::Validate {
        let cx = TruncatedComplex::exact(c.d().clone(), format!("H({})", c.name()))?;
        let b = cx.betti();
        let hi = run.n.min(c.space().top_degree().unwrap_or(0));
        run.tables.push(Table::from_betti(cx.label(), &b, 0, hi));
        return Ok(if checks.passed() {
            let v = format!("VALID: {} axioms hold", checks.checks.len());
            run.finish(Status::Ok, v)
        } else {
            run.checks(&checks, Status::Invalid)
        });
    }
    if !checks.passed() || unreduced {
        if unreduced {
            checks.record("connected", Err(format!("{} vertices", c.space().dim_in(0))));
        }
        return Ok(run.checks(&checks, Status::Invalid));
    }
    let name = c.name().to_string();
    let n = run.n;
    Ok(match req.task {
        Task::Validate => unreachable!(),
        Task::Cobar => {
            let o = cobar(&c, run.bounds())?;
            run.table(format!("H(Ω {name})"), &o.complex);
            run.finish(Status::Ok, format!("COMPUTED through degree {n}"))
        }
        Task::Cohh => {
            let h = cohochschild_complex(&c, run.bounds())?;
            run.table(format!("Ĥ({name})"), &h.complex);
            run.finish(Status::Ok, format!("COMPUTED through degree {n}"))
        }
        Task::Hh => {
            let h = hochschild_cochain_of_dual(&c, n)?;
            let b = h.complex.betti();
            run.approximate |= h.complex.is_approximate();
            run.tables.push(Table::from_betti(format!("HH({name}^∨)"), &b, -n, 0));
            run.finish(Status::Ok, format!("COMPUTED through degree {}", -n))
        }
        Task::Compare => {
            let h = cohochschild_complex(&c, run.bounds())?;
            let o = cobar(&c, run.bounds())?;
            let hh = hochschild_complex(&o.algebra, n, run.req.word_bound)?;
            let a = run.table(format!("Ĥ({name})"), &h.complex);
            let b = run.table(format!("HH(Ω {name})"), &hh.complex);
            run.equality(&a, &b)
        }
        Task::DualCheck => {
            let h = cohochschild_complex(&c, Bounds::new(n))?;
            run.table(format!("Ĥ({name})"), &h.complex);
            let hh = hochschild_cochain_of_dual(&c, n)?;
            let b = hh.complex.betti();
            run.tables.push(Table::from_betti(format!("HH({name}^∨)"), &b, -n, 0));
            let r = dual_comparison(&c, n)?;
            run.checks(&r, Status::Mismatch)
        }
        Task::TotCheck => {
            let (levels, internal) = tot_bounds(n);
            let k = RightComodule::trivial(&c)?;
            let kl = LeftComodule::trivial(&c)?;
            let tc = conormalized_tot(&cosimplicial_cobar(&k, &kl, levels, internal)?, n)?;
            let th = conormalized_tot(&cosimplicial_cohochschild(&Bicomodule::regular(&c), levels, internal)?, n)?;
            let a = run.table(format!("Tot cobar({name})"), &tc);
            let b = run.table(format!("H(Ω {name})"), &cobar(&c, Bounds::new(n))?.complex);
            let x = run.table(format!("Tot coHochschild({name})"), &th);
            let y = run.table(format!("Ĥ({name})"), &cohochschild_complex(&c, Bounds::new(n))?.complex);
            let mut r = Checks::new("totalizations");
            r.record("Tot cobar = Ω", first_diff(&a, &b, n));
            r.record("Tot coHochschild = Ĥ", first_diff(&x, &y, n));
            run.checks(&r, Status::Mismatch)
        }
        Task::Loopspace => {
            let Some(k) = source.simplicial_set() else {
                return Err(Failure::Invalid("loopspace needs a simplicial set input (.sset or sset:NAME)".into()));
            };
            let chains = normalized_chains::<S>(k)?;
            let hi = n.min(chains.horizon());
            let b = chains.betti();
            run.tables.push(Table::from_betti(format!("H({})", k.name), &b, 0, hi));
            let h = cohochschild_complex(&c, run.bounds())?;
            run.table(format!("Ĥ(C_*({}))", k.name), &h.complex);
            run.finish(Status::Ok, format!("COMPUTED through degree {n}"))
        }
        Task::SdrCheck => {
            let mut r = Checks::new("strong deformation retracts");
            r.merge(sdr_module_side(&c, run.bounds())?.check());
            r.merge(sdr_comodule_side(&c, run.bounds())?.check());
            for (label, p) in [("P_L", path_left(&c, run.bounds())?), ("P_R", path_right(&c, run.bounds())?)] {
                let b = run.table(format!("H({label} {name})"), &p.complex);
                let bad = (0..=n).find(|&d| b.get(d) != usize::from(d == 0));
                r.record(format!("{label} contractible"), bad.map_or(Ok(()), |d| Err(format!("b_{d} = {}", b.get(d)))));
            }
            run.checks(&r, Status::Mismatch)
        }
        Task::MoritaCheck => morita(run)?,
        Task::TransferCheck => transfer(run)?,
    })
}

fn first_diff(a: &BettiTable, b: &BettiTable, n: i32) -> Result<(), String> {
    a.first_difference(b, n).map_or(Ok(()), |k| Err(format!("degree {k}: {} vs {}", a.get(k), b.get(k))))
}

fn one_dim<S: Scalar>(deg: i32) -> Result<(Arc<GradedSpace>, GradedMap<S>), Failure> {
    let x = GradedSpace::new([("x".to_string(), deg)])?;
    let dx = GradedMap::zero(&x, &x, -1);
    Ok((x, dx))
}

fn morita<S: Scalar>(mut run: Run<'_, S>) -> Result<Outcome, Failure> {
    let (c, n) = (run.c.clone(), run.n);
    let name = c.name().to_string();
    let mut r = Checks::new("braidings");
    let base = run.table(format!("Ĥ({name})"), &cohochschild_complex(&c, run.bounds())?.complex);
    for deg in [0, 3] {
        let (x, dx) = one_dim::<S>(deg)?;
        let k = canonical_coalgebra(&x, &dx, &c)?;
        let b = k.braiding()?;
        let mut v = b.validate();
        v.subject = format!("canonical braiding, |x| = {deg}");
        r.merge(v);
        let f = factorization_gt(&b)?;
        r.merge(f.report);
        r.record(format!("g_T = id, |x| = {deg}"), f.g.map.agrees_with(&k.coalgebra.identity(), None));
        let model = k.connected_model()?;
        let h = run.table(format!("Ĥ(X_*({name})), |x| = {deg}"), &cohochschild_complex(&model, run.bounds())?.complex);
        r.record(format!("Ĥ preserved, |x| = {deg}"), first_diff(&h, &base, n));
    }
    let id = Braiding::identity(&c);
    for m in [RightComodule::trivial(&c)?, RightComodule::regular(&c)] {
        let mut v = module_compatibility_check(&id, &m, n)?;
        v.subject = format!("identity braiding on {}", m.name);
        r.merge(v);
    }
    let source = crate::input::load(&run.req.input)?;
    if let Some((dx, t)) = source.braiding(&c)? {
        let b = Braiding::new("input braiding", c.clone(), c.clone(), dx, t)?;
        r.merge(factorization_gt(&b)?.report);
    }
    Ok(run.checks(&r, Status::Mismatch))
}

fn transfer<S: Scalar>(mut run: Run<'_, S>) -> Result<Outcome, Failure> {
    let c = run.c.clone();
    let name = c.name().to_string();
    let o = cobar_for(&c, run.bounds())?;
    let mut r = Checks::new("transfer functors");
    let l = transfer_l(&RightComodule::regular(&c), &o)?;
    let pl = path_left(&c, run.bounds())?;
    r.record("transfer_L(C) = P_L", l.complex.differential().agrees_by_name(pl.d()));
    let rr = transfer_r(&RightModule::free(&o.algebra), &o)?;
    let pr = path_right(&c, run.bounds())?;
    r.record("transfer_R(ΩC) = P_R", rr.complex.differential().agrees_by_name(pr.d()));
    run.table(format!("H(transfer_L({name}))"), &l.complex);
    run.table(format!("H(transfer_R(Ω {name}))"), &rr.complex);
    let gens = GradedSpace::new([("g".to_string(), 3)])?;
    r.merge(unit_counit_check(&o, Sample::Comodule(&RightComodule::trivial(&c)?)));
    r.merge(unit_counit_check(&o, Sample::Comodule(&RightComodule::regular(&c))));
    r.merge(unit_counit_check(&o, Sample::Module(&RightModule::free(&o.algebra))));
    r.merge(unit_counit_check(&o, Sample::Module(&RightModule::free_on(&gens, &o.algebra)?)));
    Ok(run.checks(&r, Status::Mismatch))
}
