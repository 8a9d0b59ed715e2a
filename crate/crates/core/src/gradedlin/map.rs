use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::coefficients::Scalar;
use crate::error::{Error, Result};

use super::space::GradedSpace;

/// Sparse vector: `(basis index, coefficient)` pairs, strictly increasing in
/// index, with no zero coefficients.
pub type SparseVec<S> = Vec<(usize, S)>;

/// `(-1)^{a·b}` in the field.
pub fn koszul_sign<S: Scalar>(deg_a: i32, deg_b: i32) -> S {
    S::sign((deg_a as i64) * (deg_b as i64))
}

/// Collects terms and normalizes them into a [`SparseVec`].
pub fn normalize<S: Scalar>(terms: impl IntoIterator<Item = (usize, S)>) -> SparseVec<S> {
    let mut acc: BTreeMap<usize, S> = BTreeMap::new();
    for (i, c) in terms {
        if c.is_zero() {
            continue;
        }
        match acc.entry(i) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }
    acc.into_iter().collect()
}

/// `a + factor·b` for sparse vectors.
pub fn axpy<S: Scalar>(a: &[(usize, S)], factor: &S, b: &[(usize, S)]) -> SparseVec<S> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = factor.clone() * b[j].1.clone();
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = a[i].1.clone() + factor.clone() * b[j].1.clone();
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// A degree-homogeneous linear map between graded spaces, stored by columns.
#[derive(Clone)]
pub struct GradedMap<S> {
    source: Arc<GradedSpace>,
    target: Arc<GradedSpace>,
    degree: i32,
    columns: Vec<SparseVec<S>>,
}

impl<S: Scalar> fmt::Debug for GradedMap<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GradedMap(degree {})", self.degree)?;
        for (i, col) in self.columns.iter().enumerate() {
            if col.is_empty() {
                continue;
            }
            writeln!(f, "  {} -> {}", self.source.name(i), self.render(col))?;
        }
        Ok(())
    }
}

impl<S: Scalar> PartialEq for GradedMap<S> {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.source.same_as(&other.source)
            && self.target.same_as(&other.target)
            && self.columns == other.columns
    }
}

impl<S: Scalar> GradedMap<S> {
    /// Builds a map from arbitrary (unsorted, possibly repeated) column terms.
    /// A term of the wrong degree is an error.
    pub fn from_fn(
        source: &Arc<GradedSpace>,
        target: &Arc<GradedSpace>,
        degree: i32,
        mut column: impl FnMut(usize) -> Vec<(usize, S)>,
    ) -> Result<Self> {
        let mut columns = Vec::with_capacity(source.dim());
        for i in 0..source.dim() {
            let col = normalize(column(i));
            for (j, _) in &col {
                if target.degree(*j) != source.degree(i) + degree {
                    return Err(Error::Degree(format!(
                        "{} (degree {}) -> {} (degree {}) in a map of degree {}",
                        source.name(i),
                        source.degree(i),
                        target.name(*j),
                        target.degree(*j),
                        degree
                    )));
                }
            }
            columns.push(col);
        }
        Ok(GradedMap {
            source: source.clone(),
            target: target.clone(),
            degree,
            columns,
        })
    }

    /// Builds a map from named entries: `(source, [(target, coeff)])`.
    pub fn from_named<'a>(
        source: &Arc<GradedSpace>,
        target: &Arc<GradedSpace>,
        degree: i32,
        entries: impl IntoIterator<Item = (&'a str, Vec<(&'a str, S)>)>,
    ) -> Result<Self> {
        let mut cols: Vec<Vec<(usize, S)>> = vec![Vec::new(); source.dim()];
        for (s, terms) in entries {
            let i = source.require(s)?;
            for (t, c) in terms {
                cols[i].push((target.require(t)?, c));
            }
        }
        Self::from_fn(source, target, degree, |i| std::mem::take(&mut cols[i]))
    }

    pub fn zero(source: &Arc<GradedSpace>, target: &Arc<GradedSpace>, degree: i32) -> Self {
        GradedMap {
            source: source.clone(),
            target: target.clone(),
            degree,
            columns: vec![Vec::new(); source.dim()],
        }
    }

    pub fn identity(space: &Arc<GradedSpace>) -> Self {
        GradedMap {
            source: space.clone(),
            target: space.clone(),
            degree: 0,
            columns: (0..space.dim()).map(|i| vec![(i, S::one())]).collect(),
        }
    }

    pub fn source(&self) -> &Arc<GradedSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedSpace> {
        &self.target
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn column(&self, i: usize) -> &[(usize, S)] {
        &self.columns[i]
    }

    pub fn columns(&self) -> &[SparseVec<S>] {
        &self.columns
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn render(&self, v: &[(usize, S)]) -> String {
        render_vector(&self.target, v)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree
            || !self.source.same_as(&other.source)
            || !self.target.same_as(&other.target)
        {
            return Err(Error::Mismatch("maps are not parallel".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.zip_with(other, S::one()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.zip_with(other, -S::one()))
    }

    fn zip_with(&self, other: &Self, factor: S) -> Self {
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| axpy(a, &factor, b))
            .collect();
        GradedMap {
            columns,
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let columns = self
            .columns
            .iter()
            .map(|col| {
                col.iter()
                    .map(|(i, v)| (*i, c.clone() * v.clone()))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        GradedMap {
            columns,
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    /// Replaces the target by an equal (same basis) space.
    pub fn with_target(mut self, target: &Arc<GradedSpace>) -> Result<Self> {
        if !self.target.same_as(target) {
            return Err(Error::Mismatch(
                "with_target: different target basis".into(),
            ));
        }
        self.target = target.clone();
        Ok(self)
    }

    pub fn with_source(mut self, source: &Arc<GradedSpace>) -> Result<Self> {
        if !self.source.same_as(source) {
            return Err(Error::Mismatch(
                "with_source: different source basis".into(),
            ));
        }
        self.source = source.clone();
        Ok(self)
    }

    pub fn apply(&self, v: &[(usize, S)]) -> SparseVec<S> {
        let mut acc = Vec::new();
        for (i, c) in v {
            acc = axpy(&acc, c, &self.columns[*i]);
        }
        acc
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GradedMap<S>) -> Result<Self> {
        if !inner.target.same_as(&self.source) {
            return Err(Error::Mismatch(format!(
                "compose: inner target {:?} differs from outer source {:?}",
                inner.target, self.source
            )));
        }
        let columns = inner.columns.iter().map(|col| self.apply(col)).collect();
        Ok(GradedMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            degree: self.degree + inner.degree,
            columns,
        })
    }

    /// Equality of two maps whose bases carry the same names, possibly
    /// ordered differently.
    pub fn agrees_by_name(&self, other: &Self) -> Result<(), String> {
        if self.degree != other.degree {
            return Err(format!("degrees {} and {}", self.degree, other.degree));
        }
        let rename = |sp: &GradedSpace, to: &GradedSpace| -> Result<Vec<usize>, String> {
            if sp.dim() != to.dim() {
                return Err(format!("dimensions {} and {}", sp.dim(), to.dim()));
            }
            (0..sp.dim())
                .map(|i| {
                    to.index_of(sp.name(i))
                        .ok_or_else(|| format!("no basis element {}", sp.name(i)))
                })
                .collect()
        };
        let src = rename(&self.source, &other.source)?;
        let tgt = rename(&self.target, &other.target)?;
        for (i, col) in self.columns.iter().enumerate() {
            let moved = normalize(col.iter().map(|(j, c)| (tgt[*j], c.clone())));
            if moved != other.columns[src[i]] {
                return Err(format!(
                    "differ on {}: {} vs {}",
                    self.source.name(i),
                    self.render(col),
                    other.render(other.column(src[i]))
                ));
            }
        }
        Ok(())
    }

    /// Index of the first source basis element (of degree `<= max_source_degree`
    /// when given) on which the two maps differ.
    pub fn first_difference(&self, other: &Self, max_source_degree: Option<i32>) -> Option<usize> {
        (0..self.source.dim())
            .filter(|&i| max_source_degree.map_or(true, |m| self.source.degree(i) <= m))
            .find(|&i| self.columns[i] != other.columns[i])
    }

    /// Equality on all source elements of degree `<= max_source_degree`,
    /// reported as the name of the first offending basis element.
    pub fn agrees_with(&self, other: &Self, max_source_degree: Option<i32>) -> Result<(), String> {
        if self.check_same(other).is_err() {
            return Err("maps have different source, target or degree".into());
        }
        match self.first_difference(other, max_source_degree) {
            None => Ok(()),
            Some(i) => Err(format!(
                "{}: {} vs {}",
                self.source.name(i),
                self.render(&self.columns[i]),
                other.render(&other.columns[i])
            )),
        }
    }

    /// Tensor product of maps with the Koszul rule
    /// `(f⊗g)(v⊗w) = (-1)^{|g||v|} f(v)⊗g(w)`, between the given tensor spaces.
    ///
    /// `source` must be the tensor of the maps' sources and `target` contain
    /// the tensor of their targets up to its truncation bound.
    pub fn tensor(
        maps: &[&GradedMap<S>],
        source: &Arc<GradedSpace>,
        target: &Arc<GradedSpace>,
    ) -> Result<Self> {
        let src_atoms: Vec<Arc<GradedSpace>> = maps.iter().flat_map(|m| m.source.atoms()).collect();
        let tgt_atoms: Vec<Arc<GradedSpace>> = maps.iter().flat_map(|m| m.target.atoms()).collect();
        let check =
            |atoms: &[Arc<GradedSpace>], space: &Arc<GradedSpace>, what: &str| -> Result<()> {
                let have = space.atoms();
                if have.len() != atoms.len() || !have.iter().zip(atoms).all(|(a, b)| a.same_as(b)) {
                    return Err(Error::Mismatch(format!(
                        "tensor map: {what} factors do not match"
                    )));
                }
                Ok(())
            };
        check(&src_atoms, source, "source")?;
        check(&tgt_atoms, target, "target")?;
        let degree: i32 = maps.iter().map(|m| m.degree).sum();
        let map_degrees: Vec<i32> = maps.iter().map(|m| m.degree).collect();
        let widths: Vec<usize> = maps.iter().map(|m| m.source.atom_count()).collect();

        let mut columns = Vec::with_capacity(source.dim());
        for b in 0..source.dim() {
            let tuple = source.tuple(b);
            // per-factor source index and sign contribution
            let mut offset = 0;
            let mut sign_exp: i64 = 0;
            let mut prefix_deg: i64 = 0;
            let mut factor_cols: Vec<&[(usize, S)]> = Vec::with_capacity(maps.len());
            for (k, m) in maps.iter().enumerate() {
                let chunk = &tuple[offset..offset + widths[k]];
                offset += widths[k];
                let idx = m
                    .source
                    .index_of_tuple(chunk)
                    .ok_or_else(|| Error::Mismatch("tensor map: source chunk missing".into()))?;
                sign_exp += map_degrees[k] as i64 * prefix_deg;
                prefix_deg += m.source.degree(idx) as i64;
                factor_cols.push(m.column(idx));
            }
            let base_sign = S::sign(sign_exp);
            let mut out: Vec<(usize, S)> = Vec::new();
            // iterate over the cartesian product of the factor columns
            if factor_cols.iter().all(|c| !c.is_empty()) {
                let mut pos = vec![0usize; factor_cols.len()];
                let mut tgt_tuple: Vec<u32> = Vec::with_capacity(tgt_atoms.len());
                loop {
                    tgt_tuple.clear();
                    let mut coeff = base_sign.clone();
                    let mut deg = 0;
                    for (k, m) in maps.iter().enumerate() {
                        let (j, c) = &factor_cols[k][pos[k]];
                        coeff = coeff * c.clone();
                        deg += m.target.degree(*j);
                        tgt_tuple.extend(m.target.tuple(*j));
                    }
                    match target.index_of_tuple(&tgt_tuple) {
                        Some(t) => out.push((t, coeff)),
                        None if target.truncates(deg) => {}
                        None => {
                            return Err(Error::Mismatch(format!(
                                "tensor map: image of {} not in target",
                                source.name(b)
                            )))
                        }
                    }
                    // advance odometer
                    let mut k = factor_cols.len();
                    let done = loop {
                        if k == 0 {
                            break true;
                        }
                        k -= 1;
                        pos[k] += 1;
                        if pos[k] < factor_cols[k].len() {
                            break false;
                        }
                        pos[k] = 0;
                    };
                    if done {
                        break;
                    }
                }
            }
            columns.push(normalize(out));
        }
        Ok(GradedMap {
            source: source.clone(),
            target: target.clone(),
            degree,
            columns,
        })
    }

    /// Convenience: tensor of maps on the untruncated tensor of their sources
    /// and targets.
    pub fn tensor_full(maps: &[&GradedMap<S>]) -> Result<Self> {
        let srcs: Vec<&Arc<GradedSpace>> = maps.iter().map(|m| &m.source).collect();
        let tgts: Vec<&Arc<GradedSpace>> = maps.iter().map(|m| &m.target).collect();
        let source = GradedSpace::tensor(&srcs, None);
        let target = GradedSpace::tensor(&tgts, None);
        Self::tensor(maps, &source, &target)
    }

    /// Transpose `f^∨ : W^∨ → V^∨`, `f^∨(φ) = (-1)^{|f||φ|} φ∘f`, between the
    /// given dual spaces (whose bases must be the duals of target and source).
    pub fn dual_between(
        &self,
        target_dual: &Arc<GradedSpace>,
        source_dual: &Arc<GradedSpace>,
    ) -> Result<Self> {
        if target_dual.dim() != self.target.dim() || source_dual.dim() != self.source.dim() {
            return Err(Error::Mismatch(
                "dual_map: dual spaces have wrong dimension".into(),
            ));
        }
        // duals of sorted spaces are re-sorted; map through names
        let tmap: Vec<usize> = (0..self.target.dim())
            .map(|j| {
                target_dual
                    .require(&self.target.dual_name_of(j))
                    .expect("dual basis of target")
            })
            .collect();
        let smap: Vec<usize> = (0..self.source.dim())
            .map(|i| {
                source_dual
                    .require(&self.source.dual_name_of(i))
                    .expect("dual basis of source")
            })
            .collect();
        let mut cols: Vec<Vec<(usize, S)>> = vec![Vec::new(); target_dual.dim()];
        for (i, col) in self.columns.iter().enumerate() {
            for (j, c) in col {
                let phi_deg = -self.target.degree(*j);
                let sign: S = koszul_sign(self.degree, phi_deg);
                cols[tmap[*j]].push((smap[i], sign * c.clone()));
            }
        }
        GradedMap::from_fn(target_dual, source_dual, self.degree, |k| {
            std::mem::take(&mut cols[k])
        })
    }

    pub fn dual(&self) -> Result<Self> {
        self.dual_between(&self.target.dual(), &self.source.dual())
    }

    /// Rank of the block of columns in source degree `d`.
    pub fn rank_in_degree(&self, d: i32) -> usize {
        let cols: Vec<SparseVec<S>> = self
            .source
            .range(d)
            .map(|i| self.columns[i].clone())
            .collect();
        super::rank::rank(cols)
    }

    pub fn rank(&self) -> usize {
        self.source.degrees().map(|d| self.rank_in_degree(d)).sum()
    }
}

pub fn render_vector<S: Scalar>(space: &GradedSpace, v: &[(usize, S)]) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter()
        .map(|(i, c)| format!("{c}*{}", space.name(*i)))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// The symmetry `τ(a⊗b) = (-1)^{|a||b|} b⊗a : V⊗W → W⊗V`.
pub fn twist<S: Scalar>(v: &Arc<GradedSpace>, w: &Arc<GradedSpace>) -> Result<GradedMap<S>> {
    let source = GradedSpace::tensor(&[v, w], None);
    let target = GradedSpace::tensor(&[w, v], None);
    let nv = v.atom_count();
    let nw = w.atom_count();
    GradedMap::from_fn(&source, &target, 0, |i| {
        let t = source.tuple(i);
        let (a, b) = t.split_at(nv);
        debug_assert_eq!(b.len(), nw);
        let ia = v.index_of_tuple(a).expect("left factor");
        let ib = w.index_of_tuple(b).expect("right factor");
        let mut swapped = b.to_vec();
        swapped.extend_from_slice(a);
        let j = target.index_of_tuple(&swapped).expect("swapped tuple");
        vec![(j, koszul_sign::<S>(v.degree(ia), w.degree(ib)))]
    })
}

/// The cyclic symmetry `V_1⊗…⊗V_k → V_{s+1}⊗…⊗V_k⊗V_1⊗…⊗V_s` moving the
/// first `split` atoms to the end, with sign `(-1)^{|front||back|}`. Elements
/// whose image falls outside a truncated target are sent to zero.
pub fn rotate<S: Scalar>(
    source: &Arc<GradedSpace>,
    target: &Arc<GradedSpace>,
    split: usize,
) -> Result<GradedMap<S>> {
    let atoms = source.atoms();
    if split > atoms.len() {
        return Err(Error::Mismatch(
            "rotate: split beyond the number of factors".into(),
        ));
    }
    let mut rotated = atoms[split..].to_vec();
    rotated.extend_from_slice(&atoms[..split]);
    let have = target.atoms();
    if have.len() != rotated.len() || !have.iter().zip(&rotated).all(|(a, b)| a.same_as(b)) {
        return Err(Error::Mismatch(
            "rotate: target factors do not match".into(),
        ));
    }
    GradedMap::from_fn(source, target, 0, |i| {
        let t = source.tuple(i);
        let deg = |range: std::ops::Range<usize>| -> i32 {
            range.map(|k| atoms[k].degree(t[k] as usize)).sum()
        };
        let front = deg(0..split);
        let back = deg(split..t.len());
        let mut r = t[split..].to_vec();
        r.extend_from_slice(&t[..split]);
        match target.index_of_tuple(&r) {
            Some(j) => vec![(j, koszul_sign::<S>(front, back))],
            None => vec![],
        }
    })
}
