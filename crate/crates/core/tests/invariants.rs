use std::sync::Arc;

use cohh_core::cobarpaths::{cobar, path_left, Bounds};
use cohh_core::cohochschild::cohochschild_complex;
use cohh_core::dgcore::{trivial, write_dgc, DgCoalgebra, DgcDocument};
use cohh_core::gradedlin::koszul_sign;
use cohh_core::hochschild::hochschild_complex;
use cohh_core::{GradedMap, GradedSpace, One, Scalar, TruncatedComplex, F2, F3, Q};
use proptest::prelude::*;

/// `H_*(S^a × S^b)` with `Δ(xy) ∋ x⊗y + (-1)^{ab} y⊗x`.
fn sphere_product<S: Scalar>(a: i32, b: i32) -> DgCoalgebra<S> {
    DgCoalgebra::from_named(
        &format!("S{a}xS{b}"),
        &[("1", 0), ("x", a), ("y", b), ("xy", a + b)],
        &[],
        &[("xy", vec![(("x", "y"), S::one()), (("y", "x"), koszul_sign::<S>(a, b))])],
    )
    .unwrap()
}

/// Coefficients of `Π 1/(1 - t^{e})` through `n`.
fn product_series(exps: &[i32], n: i32) -> Vec<usize> {
    let mut out = vec![0usize; n as usize + 1];
    out[0] = 1;
    for &e in exps {
        for k in e as usize..=n as usize {
            out[k] += out[k - e as usize];
        }
    }
    out
}

/// Coefficients of `1/(1 - Σ t^{e})` through `n`.
fn tensor_series(exps: &[i32], n: i32) -> Vec<usize> {
    let mut out = vec![0usize; n as usize + 1];
    out[0] = 1;
    for k in 1..=n as usize {
        out[k] = exps.iter().filter(|&&e| e as usize <= k).map(|&e| out[k - e as usize]).sum();
    }
    out
}

fn betti_vec<S: Scalar>(cx: &TruncatedComplex<S>, n: i32) -> Vec<usize> {
    let b = cx.betti();
    (0..=n).map(|d| b.get(d)).collect()
}

fn rank_identity<S: Scalar>(cx: &TruncatedComplex<S>) -> Result<(), TestCaseError> {
    let (dims, ranks, b) = (cx.dims(), cx.ranks(), cx.betti());
    for d in cx.lo()..=cx.horizon() - 1 {
        let r = |k: i32| ranks.get(&k).copied().unwrap_or(0);
        let dim = dims.get(&d).copied().unwrap_or(0);
        prop_assert_eq!(dim, b.get(d) + r(d) + r(d + 1), "degree {}", d);
    }
    Ok(())
}

fn random_map<S: Scalar>(v: &Arc<GradedSpace>, w: &Arc<GradedSpace>, deg: i32, seed: &[i64]) -> GradedMap<S> {
    let mut k = 0;
    GradedMap::from_fn(v, w, deg, |i| {
        (0..w.dim())
            .filter(|&j| w.degree(j) == v.degree(i) + deg)
            .map(|j| {
                k += 1;
                (j, S::from_i64(seed[(i * 7 + j + k) % seed.len()]))
            })
            .collect()
    })
    .unwrap()
}

fn space(degs: &[i32], prefix: &str) -> Arc<GradedSpace> {
    GradedSpace::new(degs.iter().enumerate().map(|(i, &d)| (format!("{prefix}{i}"), d))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn koszul_signs_vanish_in_characteristic_two(a in -20i32..20, b in -20i32..20) {
        prop_assert_eq!(koszul_sign::<F2>(a, b), F2::one());
        let q = koszul_sign::<Q>(a, b);
        prop_assert_eq!(q == Q::one(), (a * b) % 2 == 0);
    }

    #[test]
    fn composition_and_tensor_respect_degree(
        dv in proptest::collection::vec(0i32..5, 1..5),
        dw in proptest::collection::vec(0i32..5, 1..5),
        du in proptest::collection::vec(0i32..5, 1..5),
        f in -2i32..3, g in -2i32..3,
        seed in proptest::collection::vec(-3i64..4, 1..12),
    ) {
        let (v, w, u) = (space(&dv, "v"), space(&dw, "w"), space(&du, "u"));
        let a = random_map::<F3>(&v, &w, f, &seed);
        let b = random_map::<F3>(&w, &u, g, &seed);
        let ba = b.compose(&a).unwrap();
        prop_assert_eq!(ba.degree(), f + g);
        let t = GradedMap::tensor_full(&[&a, &b]).unwrap();
        for m in [&ba, &t] {
            for i in 0..m.source().dim() {
                for (j, _) in m.column(i) {
                    prop_assert_eq!(m.target().degree(*j), m.source().degree(i) + m.degree());
                }
            }
        }
    }

    #[test]
    fn dualizing_twice_restores_dimensions(
        dv in proptest::collection::vec(-4i32..5, 1..6),
        dw in proptest::collection::vec(-4i32..5, 1..6),
        f in -2i32..3,
        seed in proptest::collection::vec(-3i64..4, 1..12),
    ) {
        let (v, w) = (space(&dv, "v"), space(&dw, "w"));
        let a = random_map::<Q>(&v, &w, f, &seed);
        let dd = a.dual().unwrap().dual().unwrap();
        prop_assert_eq!(dd.source().dim(), v.dim());
        prop_assert_eq!(dd.target().dim(), w.dim());
        prop_assert_eq!(dd.degree(), f);
        prop_assert_eq!(dd.nnz(), a.nnz());
        for d in -4..5 {
            prop_assert_eq!(dd.rank_in_degree(d), a.rank_in_degree(d));
        }
    }

    #[test]
    fn trivial_coalgebras_split_and_have_tensor_cobar(degs in proptest::collection::vec(2i32..6, 1..4)) {
        let names: Vec<String> = (0..degs.len()).map(|i| format!("v{i}")).collect();
        let gens: Vec<(&str, i32)> = names.iter().map(|s| s.as_str()).zip(degs.iter().copied()).collect();
        let c = Arc::new(trivial::<F2>(&gens).unwrap());
        prop_assert!(c.validate().passed());
        prop_assert_eq!(c.reduced_indices().len() + 1, c.space().dim());
        let n = 8;
        let o = cobar(&c, Bounds::new(n)).unwrap();
        let shifted: Vec<i32> = degs.iter().map(|d| d - 1).collect();
        prop_assert_eq!(betti_vec(&o.complex, n), tensor_series(&shifted, n));
        rank_identity(&o.complex)?;
    }

    #[test]
    fn cobar_of_sphere_products(a in 2i32..6, b in 2i32..6) {
        let n = 8;
        let c = Arc::new(sphere_product::<F3>(a, b));
        prop_assert!(c.validate().passed());
        let o = cobar(&c, Bounds::new(n)).unwrap();
        prop_assert_eq!(betti_vec(&o.complex, n), product_series(&[a - 1, b - 1], n));
        rank_identity(&o.complex)?;
        // truncation at a larger horizon does not change low degrees
        let wide = cobar(&c, Bounds::new(n + 2)).unwrap();
        prop_assert_eq!(betti_vec(&wide.complex, n), betti_vec(&o.complex, n));
        let p = path_left(&c, Bounds::new(n)).unwrap();
        let contractible: Vec<usize> = (0..=n).map(|d| usize::from(d == 0)).collect();
        prop_assert_eq!(betti_vec(&p.complex, n), contractible);
    }

    #[test]
    fn cohochschild_matches_hochschild_of_cobar(a in 2i32..5, b in 2i32..5) {
        let n = 6;
        let c = Arc::new(sphere_product::<Q>(a, b));
        let h = cohochschild_complex(&c, Bounds::new(n)).unwrap();
        let sq = h.d().compose(h.d()).unwrap();
        prop_assert!(sq.is_zero());
        rank_identity(&h.complex)?;
        let o = cobar(&c, Bounds::new(n)).unwrap();
        let hh = hochschild_complex(&o.algebra, n, None).unwrap();
        prop_assert_eq!(betti_vec(&h.complex, n), betti_vec(&hh.complex, n));
    }

    #[test]
    fn dgc_text_reads_back(a in 2i32..7, b in 2i32..7) {
        let c = sphere_product::<F3>(a, b);
        let text = write_dgc(&c);
        let back = DgcDocument::parse(&text).unwrap().coalgebra::<F3>("back").unwrap();
        prop_assert!(back.validate().passed());
        prop_assert!(back.comult().agrees_by_name(c.comult()).is_ok());
        prop_assert!(back.d().agrees_by_name(c.d()).is_ok());
    }
}
