use std::sync::Arc;

use rayon::prelude::*;

use crate::coefficients::Scalar;
use crate::dgcore::{attempt, Bicomodule, DgCoalgebra, LeftComodule, Report, RightComodule};
use crate::error::{Error, Result};
use crate::gradedlin::{kernel, rotate, GradedMap, GradedSpace, SparseVec, TruncatedComplex};

/// A cosimplicial chain complex through a finite level, each level truncated
/// at internal degree `max_internal`.
#[derive(Debug)]
pub struct CosimplicialChain<S: Scalar> {
    pub name: String,
    pub levels: Vec<Arc<GradedSpace>>,
    pub d: Vec<GradedMap<S>>,
    /// `cofaces[n][i] = d^i: X^n → X^{n+1}`, `0 <= i <= n + 1`.
    pub cofaces: Vec<Vec<GradedMap<S>>>,
    /// `codegeneracies[n][j] = s^j: X^n → X^{n-1}`, `0 <= j < n`.
    pub codegeneracies: Vec<Vec<GradedMap<S>>>,
    pub max_internal: i32,
    pub simply_connected: bool,
}

/// Levels and bounds for a tot through total degree `n`. Level `n + 1` is
/// still built, as the target of the last cofaces.
pub fn tot_bounds(n: i32) -> (usize, i32) {
    (n.max(0) as usize, 2 * (n + 1))
}

/// Level `n` is `M⊗C^{⊗n}⊗N` with each factor given; ground factors vanish.
struct Levels<'a, S: Scalar> {
    c: &'a Arc<DgCoalgebra<S>>,
    left: Arc<GradedSpace>,
    right: Arc<GradedSpace>,
    bound: i32,
}

impl<S: Scalar> Levels<'_, S> {
    fn factors(&self, n: usize) -> Vec<&Arc<GradedSpace>> {
        let mut f = vec![&self.left];
        f.extend(std::iter::repeat(self.c.space()).take(n));
        f.push(&self.right);
        f
    }

    fn level(&self, n: usize) -> Arc<GradedSpace> {
        GradedSpace::tensor(&self.factors(n), Some(self.bound))
    }
}

fn tensor_of<S: Scalar>(
    maps: &[GradedMap<S>],
    src: &Arc<GradedSpace>,
    tgt: &Arc<GradedSpace>,
) -> Result<GradedMap<S>> {
    let refs: Vec<&GradedMap<S>> = maps.iter().collect();
    GradedMap::tensor(&refs, src, tgt)
}

impl<S: Scalar> CosimplicialChain<S> {
    fn assemble(
        name: String,
        lv: &Levels<'_, S>,
        max_level: usize,
        dm: &GradedMap<S>,
        dn: &GradedMap<S>,
        coface: impl Fn(usize, usize, &Arc<GradedSpace>, &Arc<GradedSpace>) -> Result<GradedMap<S>>,
    ) -> Result<Self> {
        let c = lv.c;
        let levels: Vec<Arc<GradedSpace>> = (0..=max_level + 1).map(|n| lv.level(n)).collect();
        let id_c = c.identity();
        let mut d = Vec::new();
        for (n, x) in levels.iter().enumerate() {
            let mut total = GradedMap::zero(x, x, -1);
            let k = n + 2;
            for slot in 0..k {
                let mut maps: Vec<GradedMap<S>> = Vec::with_capacity(k);
                for j in 0..k {
                    maps.push(match (j == slot, j) {
                        (true, 0) => dm.clone(),
                        (true, j) if j == k - 1 => dn.clone(),
                        (true, _) => c.d().clone(),
                        (false, 0) => GradedMap::identity(dm.source()),
                        (false, j) if j == k - 1 => GradedMap::identity(dn.source()),
                        (false, _) => id_c.clone(),
                    });
                }
                total = total.add(&tensor_of(&maps, x, x)?)?;
            }
            d.push(total);
        }
        let mut cofaces = Vec::new();
        let mut codegeneracies = vec![Vec::new()];
        for n in 0..=max_level {
            cofaces.push(
                (0..=n + 1)
                    .map(|i| coface(n, i, &levels[n], &levels[n + 1]))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        for n in 1..=max_level + 1 {
            let mut row = Vec::new();
            for j in 0..n {
                let mut maps = vec![GradedMap::identity(dm.source())];
                for k in 0..n {
                    maps.push(if k == j {
                        c.counit().clone()
                    } else {
                        id_c.clone()
                    });
                }
                maps.push(GradedMap::identity(dn.source()));
                row.push(tensor_of(&maps, &levels[n], &levels[n - 1])?);
            }
            codegeneracies.push(row);
        }
        Ok(CosimplicialChain {
            name,
            levels,
            d,
            cofaces,
            codegeneracies,
            max_internal: lv.bound,
            simply_connected: c.is_simply_connected(),
        })
    }

    pub fn max_level(&self) -> usize {
        self.cofaces.len() - 1
    }

    /// Cosimplicial identities and chain-map conditions through level `through`.
    pub fn check_identities(&self, through: usize) -> Report {
        let top = through.min(self.max_level());
        let mut r = Report::new(format!("cosimplicial {}", self.name));
        let eq = |a: Result<GradedMap<S>>, b: Result<GradedMap<S>>| {
            attempt(|| Ok(a?.agrees_with(&b?, None)))
        };
        for n in 0..=top {
            for (i, f) in self.cofaces[n].iter().enumerate() {
                r.record(
                    format!("d^{i} chain map at level {n}"),
                    eq(f.compose(&self.d[n]), self.d[n + 1].compose(f)),
                );
            }
            if n + 1 <= top {
                for j in 0..=n + 2 {
                    for i in 0..j {
                        r.record(
                            format!("d^{j}d^{i} = d^{i}d^{} at level {n}", j - 1),
                            eq(
                                self.cofaces[n + 1][j].compose(&self.cofaces[n][i]),
                                self.cofaces[n + 1][i].compose(&self.cofaces[n][j - 1]),
                            ),
                        );
                    }
                }
            }
        }
        for n in 2..=top + 1 {
            for j in 0..n - 1 {
                for i in 0..=j {
                    r.record(
                        format!("s^{j}s^{i} = s^{i}s^{} at level {n}", j + 1),
                        eq(
                            self.codegeneracies[n - 1][j].compose(&self.codegeneracies[n][i]),
                            self.codegeneracies[n - 1][i].compose(&self.codegeneracies[n][j + 1]),
                        ),
                    );
                }
            }
        }
        for n in 0..=top {
            // s^j d^i on X^n, with j <= n
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = self.codegeneracies[n + 1][j].compose(&self.cofaces[n][i]);
                    let rhs = if i < j {
                        self.cofaces[n - 1][i].compose(&self.codegeneracies[n][j - 1])
                    } else if i == j || i == j + 1 {
                        Ok(GradedMap::identity(&self.levels[n]))
                    } else {
                        self.cofaces[n - 1][i - 1].compose(&self.codegeneracies[n][j])
                    };
                    r.record(format!("s^{j}d^{i} at level {n}"), eq(lhs, rhs));
                }
            }
        }
        r
    }
}

/// `Ĥ(M, C)^n = M⊗C^{⊗n}` with `d^0 = ρ⊗1`, inner `Δ`, and
/// `d^{n+1} = τ(λ⊗1)`.
pub fn cosimplicial_cohochschild<S: Scalar>(
    m: &Bicomodule<S>,
    max_level: usize,
    max_internal: i32,
) -> Result<CosimplicialChain<S>> {
    let c = m.coalgebra();
    let k = GradedSpace::ground();
    let lv = Levels {
        c,
        left: m.space().clone(),
        right: k.clone(),
        bound: max_internal,
    };
    let id_c = c.identity();
    let id_m = GradedMap::identity(m.space());
    let zero = GradedMap::zero(&k, &k, -1);
    CosimplicialChain::assemble(
        format!("Ĥ({}, {})", m.name(), c.name()),
        &lv,
        max_level,
        &m.left.d,
        &zero,
        |n, i, src, tgt| {
            let rest = |count: usize| std::iter::repeat(id_c.clone()).take(count);
            if i == 0 {
                let mut maps = vec![m.right.coaction.clone()];
                maps.extend(rest(n));
                tensor_of(&maps, src, tgt)
            } else if i <= n {
                let mut maps = vec![id_m.clone()];
                maps.extend(rest(i - 1));
                maps.push(c.comult().clone());
                maps.extend(rest(n - i));
                tensor_of(&maps, src, tgt)
            } else {
                let mut f = vec![c.space(), m.space()];
                f.extend(std::iter::repeat(c.space()).take(n));
                let mid = GradedSpace::tensor(&f, Some(lv.bound));
                let mut maps = vec![m.left.coaction.clone()];
                maps.extend(rest(n));
                rotate(&mid, tgt, 1)?.compose(&tensor_of(&maps, src, &mid)?)
            }
        },
    )
}

/// `Ω•(M, C, N)^n = M⊗C^{⊗n}⊗N` with `d^0 = ρ⊗1`, inner `Δ`, `d^{n+1} = 1⊗λ`.
pub fn cosimplicial_cobar<S: Scalar>(
    m: &RightComodule<S>,
    nn: &LeftComodule<S>,
    max_level: usize,
    max_internal: i32,
) -> Result<CosimplicialChain<S>> {
    let c = &m.coalgebra;
    let lv = Levels {
        c,
        left: m.space.clone(),
        right: nn.space.clone(),
        bound: max_internal,
    };
    let id_c = c.identity();
    let id_m = GradedMap::identity(&m.space);
    let id_n = GradedMap::identity(&nn.space);
    CosimplicialChain::assemble(
        format!("Ω•({}, {}, {})", m.name, c.name(), nn.name),
        &lv,
        max_level,
        &m.d,
        &nn.d,
        |n, i, src, tgt| {
            let mut maps = Vec::with_capacity(n + 3);
            if i == 0 {
                maps.push(m.coaction.clone());
            } else {
                maps.push(id_m.clone());
            }
            for k in 1..=n {
                maps.push(if k == i {
                    c.comult().clone()
                } else {
                    id_c.clone()
                });
            }
            maps.push(if i == n + 1 {
                nn.coaction.clone()
            } else {
                id_n.clone()
            });
            tensor_of(&maps, src, tgt)
        },
    )
}

/// The total complex of the conormalization `∩ ker s^j`, with total degree
/// `internal − level` and `D = d + (−1)^{internal} Σ (−1)^i d^i`, through
/// total degree `n + 1`.
pub fn conormalized_tot<S: Scalar>(
    x: &CosimplicialChain<S>,
    n: i32,
) -> Result<TruncatedComplex<S>> {
    if !x.simply_connected {
        return Err(Error::NotSimplyConnected(format!(
            "{}: the conormalization is not finite per total degree without 1-connectedness",
            x.name
        )));
    }
    let top = n + 1;
    if x.max_level() + 1 < top as usize || x.max_internal < 2 * top {
        return Err(Error::Invalid(format!(
            "{}: built too small for total degree {top}",
            x.name
        )));
    }
    // per level and internal degree: a reduced basis of the conormalized part
    let levels = top as usize + 1;
    let blocks: Vec<Vec<(i32, crate::gradedlin::Subspace<S>)>> = (0..levels)
        .into_par_iter()
        .map(|l| {
            let sp = &x.levels[l];
            (0..=(top + l as i32))
                .map(|deg| {
                    let range = sp.range(deg);
                    let cols: Vec<SparseVec<S>> = range
                        .clone()
                        .map(|i| {
                            let mut v = Vec::new();
                            if l > 0 {
                                for (j, s) in x.codegeneracies[l].iter().enumerate() {
                                    let off = j * x.levels[l - 1].dim();
                                    v.extend(s.column(i).iter().map(|(r, c)| (off + r, c.clone())));
                                }
                            }
                            v.sort_by_key(|e| e.0);
                            v
                        })
                        .collect();
                    let k = kernel(&cols);
                    let basis: Vec<SparseVec<S>> = k
                        .basis()
                        .iter()
                        .map(|v| {
                            v.iter()
                                .map(|(i, c)| (range.start + i, c.clone()))
                                .collect()
                        })
                        .collect();
                    (deg, crate::gradedlin::Subspace::from_vectors(basis))
                })
                .collect()
        })
        .collect();
    let mut elems = Vec::new();
    let mut index = Vec::new();
    for (l, per) in blocks.iter().enumerate() {
        for (deg, sub) in per {
            let total = deg - l as i32;
            if total > top {
                continue;
            }
            for (k, v) in sub.basis().iter().enumerate() {
                let name = match v.as_slice() {
                    [(i, _)] => format!("⟨{l}⟩{}", x.levels[l].name(*i)),
                    _ => format!("⟨{l}⟩v{deg}.{k}"),
                };
                elems.push((name, total));
                index.push((l, *deg, k));
            }
        }
    }
    let space = GradedSpace::new(elems.iter().cloned())?;
    let mut position = std::collections::HashMap::new();
    let mut back = vec![0; elems.len()];
    for (e, (name, _)) in elems.iter().enumerate() {
        let g = space.require(name)?;
        position.insert(index[e], g);
        back[g] = e;
    }
    let sub = |l: usize, deg: i32| {
        blocks
            .get(l)
            .and_then(|per| per.iter().find(|(d, _)| *d == deg))
            .map(|(_, s)| s)
    };
    let d = GradedMap::from_fn(&space, &space, -1, |g| {
        let (l, deg, k) = index[back[g]];
        let v = &sub(l, deg).expect("block").basis()[k];
        let mut out = Vec::new();
        let internal = x.d[l].apply(v);
        if let Some(s) = sub(l, deg - 1) {
            let c = s
                .coords(&internal)
                .expect("conormalized part is a subcomplex");
            out.extend(c.into_iter().map(|(j, a)| (position[&(l, deg - 1, j)], a)));
        }
        if l + 1 < levels && deg - (l as i32 + 1) <= top {
            let mut delta: SparseVec<S> = Vec::new();
            for (i, f) in x.cofaces[l].iter().enumerate() {
                delta =
                    crate::gradedlin::axpy(&delta, &S::sign(i as i64 + deg as i64), &f.apply(v));
            }
            if let Some(s) = sub(l + 1, deg) {
                let c = s.coords(&delta).expect("conormalized part is a subcomplex");
                out.extend(c.into_iter().map(|(j, a)| (position[&(l + 1, deg, j)], a)));
            }
        }
        out
    })?;
    TruncatedComplex::new(d, n, format!("Tot N {}", x.name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cobarpaths::{cobar, Bounds};
    use crate::cohochschild::cohochschild_complex;
    use crate::dgcore::builtin;
    use crate::{F3, Q};

    #[test]
    fn level_dimensions() {
        let c = builtin::<Q>("sphere(3)").unwrap();
        let x = cosimplicial_cohochschild(&Bicomodule::regular(&c), 4, 20).unwrap();
        for n in 0..=4 {
            assert_eq!(x.levels[n].dim(), 1 << (n + 1));
        }
    }

    #[test]
    fn inner_coface_is_comultiplication() {
        let c = builtin::<Q>("sphere(3)").unwrap();
        let x = cosimplicial_cohochschild(&Bicomodule::regular(&c), 2, 8).unwrap();
        let d1 = &x.cofaces[1][1];
        let e = x.levels[1].require("1⊗z").unwrap();
        assert_eq!(d1.render(d1.column(e)), "1*1⊗1⊗z + 1*1⊗z⊗1");
    }

    #[test]
    fn last_coface_carries_koszul_sign() {
        let c = builtin::<Q>("sphere(3)").unwrap();
        let x = cosimplicial_cohochschild(&Bicomodule::regular(&c), 2, 10).unwrap();
        let d2 = &x.cofaces[1][2];
        let e = x.levels[1].require("z⊗z").unwrap();
        // λ(z)⊗z = 1⊗z⊗z + z⊗1⊗z; cycling z past 1⊗z costs a sign
        assert_eq!(d2.render(d2.column(e)), "-1*1⊗z⊗z + 1*z⊗z⊗1");
    }

    #[test]
    fn identities_hold() {
        for name in ["sphere(2)", "cp2"] {
            let c = builtin::<F3>(name).unwrap();
            let x = cosimplicial_cohochschild(&Bicomodule::regular(&c), 3, 6).unwrap();
            let r = x.check_identities(3);
            assert!(r.passed(), "{r}");
            let k = cosimplicial_cobar(
                &RightComodule::trivial(&c).unwrap(),
                &LeftComodule::trivial(&c).unwrap(),
                3,
                6,
            )
            .unwrap();
            let r = k.check_identities(3);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn cobar_levels_on_ground() {
        let c = builtin::<Q>("cp2").unwrap();
        let k = cosimplicial_cobar(
            &RightComodule::trivial(&c).unwrap(),
            &LeftComodule::trivial(&c).unwrap(),
            3,
            4,
        )
        .unwrap();
        assert!(k.levels[2].same_as(&GradedSpace::tensor(
            &[c.space(), c.space()],
            Some(k.max_internal)
        )));
        let d0 = &k.cofaces[0][0];
        assert_eq!(d0.render(d0.column(0)), "1*1");
    }

    #[test]
    fn tot_of_cobar() {
        let c = builtin::<Q>("sphere(3)").unwrap();
        let n = 6;
        let k = {
            let (l, b) = tot_bounds(n);
            cosimplicial_cobar(
                &RightComodule::trivial(&c).unwrap(),
                &LeftComodule::trivial(&c).unwrap(),
                l,
                b,
            )
            .unwrap()
        };
        let t = conormalized_tot(&k, n).unwrap();
        let b = t.betti();
        assert_eq!(
            (0..=n).map(|d| b.get(d)).collect::<Vec<_>>(),
            vec![1, 0, 1, 0, 1, 0, 1]
        );
        assert!(b.equal_through(&cobar(&c, Bounds::new(n)).unwrap().complex.betti(), n));
    }

    #[test]
    fn tot_of_cohochschild() {
        for name in ["sphere(2)", "cp2"] {
            let c = builtin::<Q>(name).unwrap();
            let n = 6;
            let x = {
                let (l, b) = tot_bounds(n);
                cosimplicial_cohochschild(&Bicomodule::regular(&c), l, b).unwrap()
            };
            let t = conormalized_tot(&x, n).unwrap();
            let h = cohochschild_complex(&c, Bounds::new(n)).unwrap();
            assert!(
                t.betti().equal_through(&h.complex.betti(), n),
                "{name}: {} vs {}",
                t.betti(),
                h.complex.betti()
            );
        }
    }

    #[test]
    fn constant_ground_object() {
        let c = builtin::<Q>("point").unwrap();
        let x = cosimplicial_cohochschild(&Bicomodule::trivial(&c).unwrap(), 5, 10).unwrap();
        let t = conormalized_tot(&x, 4).unwrap();
        assert_eq!(t.space().dim(), 1);
    }
}
