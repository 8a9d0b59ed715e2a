use std::sync::Arc;

use crate::coefficients::Scalar;
use crate::error::{Error, Result};
use crate::gradedlin::{GradedMap, GradedSpace};

use super::coalgebra::DgCoalgebra;

type Terms<'a, S> = Vec<(&'a str, S)>;
type PairTerms<'a, S> = Vec<((&'a str, &'a str), S)>;

impl<S: Scalar> DgCoalgebra<S> {
    /// Builds a coaugmented coalgebra from named data. Every element other
    /// than `1` automatically receives `x⊗1 + 1⊗x` in its coproduct, and
    /// `Δ(1) = 1⊗1`; `comult` lists only the remaining terms.
    pub fn from_named<'a>(
        name: &str,
        basis: &[(&'a str, i32)],
        d: &[(&'a str, Terms<'a, S>)],
        comult: &[(&'a str, PairTerms<'a, S>)],
    ) -> Result<Self> {
        let space = GradedSpace::new(basis.iter().map(|(n, k)| (n.to_string(), *k)))?;
        let cc = GradedSpace::tensor(&[&space, &space], None);
        let one = space.require("1")?;
        let dmap =
            GradedMap::from_named(&space, &space, -1, d.iter().map(|(s, t)| (*s, t.clone())))?;
        let mut cols: Vec<Vec<(usize, S)>> = vec![Vec::new(); space.dim()];
        for (i, col) in cols.iter_mut().enumerate() {
            let pair = |a: usize, b: usize| {
                cc.index_of_tuple(&[a as u32, b as u32])
                    .expect("full square")
            };
            if i == one {
                col.push((pair(one, one), S::one()));
            } else {
                col.push((pair(i, one), S::one()));
                col.push((pair(one, i), S::one()));
            }
        }
        for (src, terms) in comult {
            let i = space.require(src)?;
            for ((l, r), c) in terms {
                let t = cc
                    .index_of_tuple(&[space.require(l)? as u32, space.require(r)? as u32])
                    .expect("full square");
                cols[i].push((t, c.clone()));
            }
        }
        let comult = GradedMap::from_fn(&space, &cc, 0, |i| std::mem::take(&mut cols[i]))?;
        DgCoalgebra::new(name, space, dmap, comult)
    }
}

/// `𝕜` in degree 0.
pub fn point<S: Scalar>() -> DgCoalgebra<S> {
    DgCoalgebra::from_named("point", &[("1", 0)], &[], &[]).expect("point")
}

/// `H_*(S^n)`: basis `{1, z}` with `|z| = n`, `z` primitive.
pub fn sphere<S: Scalar>(n: i32) -> Result<DgCoalgebra<S>> {
    if n < 1 {
        return Err(Error::UnknownBuiltin(format!("sphere({n})")));
    }
    DgCoalgebra::from_named(&format!("sphere({n})"), &[("1", 0), ("z", n)], &[], &[])
}

/// `H_*(CP²)`: `Δ(y4) = y4⊗1 + 1⊗y4 + y2⊗y2`.
pub fn cp2<S: Scalar>() -> DgCoalgebra<S> {
    DgCoalgebra::from_named(
        "cp2",
        &[("1", 0), ("y2", 2), ("y4", 4)],
        &[],
        &[("y4", vec![(("y2", "y2"), S::one())])],
    )
    .expect("cp2")
}

/// `𝕜 ⊕ V` with `V` primitive and zero differential.
pub fn trivial<S: Scalar>(v: &[(&str, i32)]) -> Result<DgCoalgebra<S>> {
    if let Some((n, d)) = v.iter().find(|(n, d)| *d <= 0 || *n == "1") {
        return Err(Error::Invalid(format!(
            "trivial coalgebra generator {n} in degree {d}"
        )));
    }
    let mut basis = vec![("1", 0)];
    basis.extend_from_slice(v);
    let label = v
        .iter()
        .map(|(n, d)| format!("{n}:{d}"))
        .collect::<Vec<_>>()
        .join(",");
    DgCoalgebra::from_named(&format!("trivial({label})"), &basis, &[], &[])
}

/// Looks up `point`, `sphere(n)`, `cp2` or `trivial(name:deg,...)`.
pub fn builtin<S: Scalar>(name: &str) -> Result<Arc<DgCoalgebra<S>>> {
    let name = name.trim();
    let unknown = || Error::UnknownBuiltin(name.to_string());
    let arg = |prefix: &str| {
        name.strip_prefix(prefix)
            .and_then(|r| r.strip_prefix('('))
            .and_then(|r| r.strip_suffix(')'))
    };
    let c = if name == "point" {
        point()
    } else if name == "cp2" {
        cp2()
    } else if let Some(n) = arg("sphere") {
        let n: i32 = n.trim().parse().map_err(|_| unknown())?;
        if n < 2 {
            return Err(unknown());
        }
        sphere(n)?
    } else if let Some(list) = arg("trivial") {
        let mut v: Vec<(&str, i32)> = Vec::new();
        for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (n, d) = item.split_once(':').ok_or_else(unknown)?;
            v.push((n.trim(), d.trim().parse().map_err(|_| unknown())?));
        }
        trivial(&v)?
    } else {
        return Err(unknown());
    };
    Ok(Arc::new(c))
}
