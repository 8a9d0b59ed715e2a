//! The normalized Hochschild complex `A⊗T(sĀ)` of an augmented dg algebra,
//! and the Hochschild cochain complex of a dual algebra.

use std::sync::Arc;

use crate::cobarpaths::Bounds;
use crate::coefficients::Scalar;
use crate::cohochschild::cohochschild_complex;
use crate::dgcore::{dual_coalgebra_to_algebra, DgAlgebra, DgCoalgebra, Report};
use crate::error::{Error, Result};
use crate::gradedlin::{rotate, DirectSum, GradedMap, GradedSpace, TruncatedComplex};

/// Overall signs of the term `a·a_1` and of the cyclic term `±a_n·a`.
const LEFT_SIGN: i64 = 1;
const CYCLIC_SIGN: i64 = -1;

#[derive(Debug)]
pub struct HochschildComplex<S: Scalar> {
    pub algebra: Arc<DgAlgebra<S>>,
    pub letters: Arc<GradedSpace>,
    pub sum: DirectSum,
    pub complex: TruncatedComplex<S>,
}

impl<S: Scalar> HochschildComplex<S> {
    pub fn space(&self) -> &Arc<GradedSpace> {
        self.sum.space()
    }

    pub fn d(&self) -> &GradedMap<S> {
        self.complex.differential()
    }
}

fn shifted(name: &str) -> String {
    if name
        .chars()
        .all(|ch| ch.is_alphanumeric() || ch == '_' || ch == '*')
    {
        format!("s{name}")
    } else {
        format!("s[{name}]")
    }
}

/// `H(A)` through degree `n + 1`. When `Ā` has elements of degree 0 a word
/// bound is required and the result is approximate.
pub fn hochschild_complex<S: Scalar>(
    a: &Arc<DgAlgebra<S>>,
    n: i32,
    word_bound: Option<usize>,
) -> Result<HochschildComplex<S>> {
    let reduced = a.reduced_indices();
    let min = reduced.iter().map(|&i| a.space().degree(i)).min();
    if min.is_some_and(|m| m < 0) {
        return Err(Error::Invalid(format!(
            "{}: augmentation ideal has negative degrees",
            a.name()
        )));
    }
    let positive = min.map_or(true, |m| m > 0);
    let top = n + 1;
    let max_len = match (positive, word_bound) {
        (true, w) => w.map_or(top as usize, |w| w.min(top as usize)),
        (false, Some(w)) => w,
        (false, None) => {
            return Err(Error::NotSimplyConnected(format!(
                "{}: Ā has degree 0; a word bound is required",
                a.name()
            )))
        }
    };
    if a.window().1.is_some_and(|hi| hi < top) {
        return Err(Error::Invalid(format!(
            "{} is only known through degree {:?}",
            a.name(),
            a.window().1
        )));
    }
    let (sum, letters, d) = build(a, None, Some(top), max_len, (LEFT_SIGN, CYCLIC_SIGN))?;
    let complex = TruncatedComplex::new(d, n, format!("H({})", a.name()))?.approximate(!positive);
    Ok(HochschildComplex {
        algebra: a.clone(),
        letters,
        sum,
        complex,
    })
}

/// `H(C^∨)` in homological degrees `-(n+1)..=0`; homology is exact in
/// degrees `-n..=0`, i.e. cochain degrees `0..=n`.
pub fn hochschild_cochain_of_dual<S: Scalar>(
    c: &Arc<DgCoalgebra<S>>,
    n: i32,
) -> Result<HochschildComplex<S>> {
    c.require_connected()?;
    if !c.is_simply_connected() {
        return Err(Error::NotSimplyConnected(format!(
            "{}: the dual has letters of degree 0",
            c.name()
        )));
    }
    let a = Arc::new(dual_coalgebra_to_algebra(c)?);
    let lo = -(n + 1);
    let (sum, letters, d) = build(
        &a,
        Some(lo),
        Some(0),
        (n + 1) as usize,
        (LEFT_SIGN, CYCLIC_SIGN),
    )?;
    let complex = TruncatedComplex::new(d, 0, format!("H({}^∨)", c.name()))?.with_valid_lo(-n);
    Ok(HochschildComplex {
        algebra: a,
        letters,
        sum,
        complex,
    })
}

/// Degreewise dimensions and differential ranks of `H(C^∨)` against the
/// linear dual of `Ĥ(C)`, in degrees `-(n+1)..=0`.
pub fn dual_comparison<S: Scalar>(c: &Arc<DgCoalgebra<S>>, n: i32) -> Result<Report> {
    let coh = cohochschild_complex(c, Bounds::new(n))?;
    let dual = coh.d().dual()?;
    let h = hochschild_cochain_of_dual(c, n)?;
    let mut r = Report::new(format!("Ĥ({0})^∨ vs H({0}^∨)", c.name()));
    for k in -(n + 1)..=0 {
        let a = (dual.source().dim_in(k), dual.rank_in_degree(k));
        let b = (h.space().dim_in(k), h.d().rank_in_degree(k));
        r.record(
            format!("degree {k}"),
            if a == b {
                Ok(())
            } else {
                Err(format!("dim/rank {a:?} vs {b:?}"))
            },
        );
    }
    Ok(r)
}

fn build<S: Scalar>(
    a: &Arc<DgAlgebra<S>>,
    lo: Option<i32>,
    hi: Option<i32>,
    max_len: usize,
    (left_sign, cyclic_sign): (i64, i64),
) -> Result<(DirectSum, Arc<GradedSpace>, GradedMap<S>)> {
    let sp = a.space();
    let reduced = a.reduced_indices();
    let letters = GradedSpace::new(
        reduced
            .iter()
            .map(|&i| (shifted(sp.name(i)), sp.degree(i) + 1)),
    )?;
    let letter_of: Vec<Option<usize>> = {
        let mut v = vec![None; sp.dim()];
        for &i in &reduced {
            v[i] = Some(letters.require(&shifted(sp.name(i))).expect("letter"));
        }
        v
    };
    let s = GradedMap::from_fn(sp, &letters, 1, |i| {
        letter_of[i]
            .map(|l| vec![(l, S::one())])
            .unwrap_or_default()
    })?;
    let back: Vec<usize> = {
        let mut v = vec![0; letters.dim()];
        for (i, l) in letter_of.iter().enumerate() {
            if let Some(l) = l {
                v[*l] = i;
            }
        }
        v
    };
    let unshift = GradedMap::from_fn(&letters, sp, -1, |l| vec![(back[l], S::one())])?;
    let id_a = GradedMap::identity(sp);
    let id_l = GradedMap::identity(&letters);
    let aa = a.aa();

    let dl = s.compose(&a.d().compose(&unshift)?)?.neg();
    // a pair inside a word is bounded by the word's degree on one side only
    let degs = (0..sp.dim()).map(|i| sp.degree(i));
    let (plo, phi) = match (degs.clone().min(), degs.max()) {
        (Some(m), _) if m >= 0 => (None, hi),
        (_, Some(m)) if m <= 0 => (lo, None),
        _ => (None, None),
    };
    let ll = GradedSpace::tensor_window(&[&letters, &letters], plo, phi);
    let m2 = s.compose(&a.mult().compose(&GradedMap::tensor(
        &[&unshift, &unshift],
        &ll,
        aa,
    )?)?)?;
    let al = GradedSpace::tensor_window(&[sp, &letters], plo, phi);
    let ml = a
        .mult()
        .compose(&GradedMap::tensor(&[&id_a, &unshift], &al, aa)?)?;
    let la = GradedSpace::tensor_window(&[&letters, sp], plo, phi);
    let mr = a
        .mult()
        .compose(&GradedMap::tensor(&[&unshift, &id_a], &la, aa)?)?;

    let mut parts = Vec::new();
    for n in 0..=max_len {
        let mut f: Vec<&Arc<GradedSpace>> = vec![sp];
        f.extend(std::iter::repeat(&letters).take(n));
        let part = GradedSpace::tensor_window(&f, lo, hi);
        if part.is_empty() && n > 0 {
            break;
        }
        parts.push(part);
    }
    let sum = DirectSum::new(parts.clone(), |p, i| {
        let t = parts[p].tuple(i);
        let head = sp.name(t[0] as usize);
        if p == 0 {
            return head.to_string();
        }
        let w: Vec<&str> = t[1..].iter().map(|&l| letters.name(l as usize)).collect();
        let head = if head.contains('⊗') {
            format!("({head})")
        } else {
            head.to_string()
        };
        format!("{head}⊗[{}]", w.join("|"))
    })?;

    let with = |n: usize, at: usize, f: &GradedMap<S>, width: usize| -> Vec<GradedMap<S>> {
        let mut v = Vec::new();
        let mut k = 0;
        while k < n + 1 {
            if k == at {
                v.push(f.clone());
                k += width;
            } else {
                v.push(if k == 0 { id_a.clone() } else { id_l.clone() });
                k += 1;
            }
        }
        v
    };
    let tensor = |maps: Vec<GradedMap<S>>, src: &Arc<GradedSpace>, tgt: &Arc<GradedSpace>| {
        let refs: Vec<&GradedMap<S>> = maps.iter().collect();
        GradedMap::tensor(&refs, src, tgt)
    };
    let mut blocks = Vec::new();
    for (n, part) in parts.iter().enumerate() {
        blocks.push((n, n, tensor(with(n, 0, a.d(), 1), part, part)?));
        for i in 1..=n {
            blocks.push((n, n, tensor(with(n, i, &dl, 1), part, part)?));
        }
        if n == 0 {
            continue;
        }
        let down = &parts[n - 1];
        for i in 1..n {
            blocks.push((n, n - 1, tensor(with(n, i, &m2, 2), part, down)?));
        }
        blocks.push((
            n,
            n - 1,
            tensor(with(n, 0, &ml, 2), part, down)?.scale(&S::from_i64(left_sign)),
        ));
        let mut f: Vec<&Arc<GradedSpace>> = vec![&letters, sp];
        f.extend(std::iter::repeat(&letters).take(n - 1));
        let rotated = GradedSpace::tensor_window(&f, lo, hi);
        let r = rotate(part, &rotated, n)?;
        let mut maps = vec![mr.clone()];
        maps.extend(std::iter::repeat(id_l.clone()).take(n - 1));
        blocks.push((
            n,
            n - 1,
            tensor(maps, &rotated, down)?
                .compose(&r)?
                .scale(&S::from_i64(cyclic_sign)),
        ));
    }
    let d = DirectSum::assemble(&sum, &sum, -1, blocks)?;
    Ok((sum, letters, d))
}
