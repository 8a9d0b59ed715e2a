use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Range;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
enum Structure {
    Atomic,
    /// The one-dimensional ground field in degree 0. Tensor factors equal to
    /// the ground space are dropped (implicit unitors).
    Ground,
    Tensor {
        atoms: Vec<Arc<GradedSpace>>,
        tuples: Vec<Box<[u32]>>,
        index: HashMap<Box<[u32]>, usize>,
    },
}

/// A graded vector space with a finite, named, totally ordered basis.
///
/// Basis elements are sorted by degree and then lexicographically by name,
/// so the global index of an element is deterministic.
#[derive(Clone)]
pub struct GradedSpace {
    names: Vec<String>,
    degrees: Vec<i32>,
    lookup: HashMap<String, usize>,
    ranges: BTreeMap<i32, Range<usize>>,
    max_degree: Option<i32>,
    min_degree_bound: Option<i32>,
    fingerprint: u64,
    structure: Structure,
}

impl fmt::Debug for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedSpace")
            .field("dims", &self.dims())
            .field("max_degree", &self.max_degree)
            .finish()
    }
}

fn sorted(mut elems: Vec<(String, i32)>) -> Vec<(String, i32)> {
    elems.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    elems
}

impl GradedSpace {
    fn assemble(
        elems: Vec<(String, i32)>,
        max_degree: Option<i32>,
        structure: Structure,
    ) -> Result<Self> {
        let mut names = Vec::with_capacity(elems.len());
        let mut degrees = Vec::with_capacity(elems.len());
        let mut lookup = HashMap::with_capacity(elems.len());
        let mut ranges: BTreeMap<i32, Range<usize>> = BTreeMap::new();
        let mut hasher = std::collections::hash_map::DefaultHasher::new();
        for (i, (name, deg)) in elems.into_iter().enumerate() {
            if lookup.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateBasis(name));
            }
            name.hash(&mut hasher);
            deg.hash(&mut hasher);
            ranges
                .entry(deg)
                .and_modify(|r| r.end = i + 1)
                .or_insert(i..i + 1);
            names.push(name);
            degrees.push(deg);
        }
        Ok(GradedSpace {
            names,
            degrees,
            lookup,
            ranges,
            max_degree,
            min_degree_bound: None,
            fingerprint: hasher.finish(),
            structure,
        })
    }

    /// An atomic space from `(name, degree)` pairs.
    pub fn new<I, N>(elems: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = (N, i32)>,
        N: Into<String>,
    {
        Self::new_truncated(elems, None)
    }

    /// An atomic space that is known only through `max_degree`; maps into it
    /// silently drop terms of higher degree.
    pub fn new_truncated<I, N>(elems: I, max_degree: Option<i32>) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = (N, i32)>,
        N: Into<String>,
    {
        let elems = sorted(elems.into_iter().map(|(n, d)| (n.into(), d)).collect());
        if let Some((name, _)) = elems.iter().find(|(n, _)| n.is_empty()) {
            return Err(Error::Invalid(format!("empty basis name `{name}`")));
        }
        Ok(Arc::new(Self::assemble(
            elems,
            max_degree,
            Structure::Atomic,
        )?))
    }

    pub fn ground() -> Arc<Self> {
        Arc::new(
            Self::assemble(vec![("1".to_string(), 0)], None, Structure::Ground)
                .expect("ground space is well formed"),
        )
    }

    pub fn zero() -> Arc<Self> {
        Arc::new(Self::assemble(Vec::new(), None, Structure::Atomic).expect("empty space"))
    }

    pub fn is_ground(&self) -> bool {
        matches!(self.structure, Structure::Ground)
    }

    pub fn is_tensor(&self) -> bool {
        matches!(self.structure, Structure::Tensor { .. })
    }

    /// The atomic tensor factors (empty for the ground space, `[self]` for an
    /// atomic space).
    pub fn atoms(self: &Arc<Self>) -> Vec<Arc<GradedSpace>> {
        match &self.structure {
            Structure::Atomic => vec![self.clone()],
            Structure::Ground => Vec::new(),
            Structure::Tensor { atoms, .. } => atoms.clone(),
        }
    }

    pub fn atom_count(&self) -> usize {
        match &self.structure {
            Structure::Atomic => 1,
            Structure::Ground => 0,
            Structure::Tensor { atoms, .. } => atoms.len(),
        }
    }

    /// Factor indices of basis element `i`.
    pub fn tuple(&self, i: usize) -> Vec<u32> {
        match &self.structure {
            Structure::Atomic => vec![i as u32],
            Structure::Ground => Vec::new(),
            Structure::Tensor { tuples, .. } => tuples[i].to_vec(),
        }
    }

    pub fn index_of_tuple(&self, t: &[u32]) -> Option<usize> {
        match &self.structure {
            Structure::Atomic => match t {
                [i] if (*i as usize) < self.dim() => Some(*i as usize),
                _ => None,
            },
            Structure::Ground => t.is_empty().then_some(0),
            Structure::Tensor { index, .. } => index.get(t).copied(),
        }
    }

    /// Tensor product of the given spaces, flattened into atoms, keeping only
    /// basis words of degree `<= max_degree` when a bound is given. Ground
    /// factors are dropped; a product with a single atom is that atom.
    pub fn tensor(factors: &[&Arc<GradedSpace>], max_degree: Option<i32>) -> Arc<Self> {
        Self::tensor_window(factors, None, max_degree)
    }

    /// Tensor product keeping only words with degree in `[lo, hi]` (each end
    /// optional).
    pub fn tensor_window(
        factors: &[&Arc<GradedSpace>],
        lo: Option<i32>,
        hi: Option<i32>,
    ) -> Arc<Self> {
        let atoms: Vec<Arc<GradedSpace>> = factors.iter().flat_map(|f| f.atoms()).collect();
        match atoms.len() {
            0 => return Self::ground(),
            1 if hi.is_none() && lo.is_none() => return atoms[0].clone(),
            _ => {}
        }
        // extreme degrees achievable by the suffix starting at each atom
        let mut suffix_min = vec![0i32; atoms.len() + 1];
        let mut suffix_max = vec![0i32; atoms.len() + 1];
        for k in (0..atoms.len()).rev() {
            let m = atoms[k].degrees.iter().copied().min();
            suffix_min[k] = suffix_min[k + 1].saturating_add(m.unwrap_or(i32::MAX / 4));
            let m = atoms[k].degrees.iter().copied().max();
            suffix_max[k] = suffix_max[k + 1].saturating_add(m.unwrap_or(i32::MIN / 4));
        }
        let mut tuples: Vec<(Box<[u32]>, i32)> = Vec::new();
        let mut current = Vec::with_capacity(atoms.len());
        struct Walk<'a> {
            atoms: &'a [Arc<GradedSpace>],
            suffix_min: &'a [i32],
            suffix_max: &'a [i32],
            lo: Option<i32>,
            hi: Option<i32>,
        }
        fn rec(
            w: &Walk,
            k: usize,
            deg: i32,
            current: &mut Vec<u32>,
            out: &mut Vec<(Box<[u32]>, i32)>,
        ) {
            if k == w.atoms.len() {
                out.push((current.clone().into_boxed_slice(), deg));
                return;
            }
            for (i, &d) in w.atoms[k].degrees.iter().enumerate() {
                if w.hi.is_some_and(|b| deg + d + w.suffix_min[k + 1] > b)
                    || w.lo.is_some_and(|b| deg + d + w.suffix_max[k + 1] < b)
                {
                    continue;
                }
                current.push(i as u32);
                rec(w, k + 1, deg + d, current, out);
                current.pop();
            }
        }
        let walk = Walk {
            atoms: &atoms,
            suffix_min: &suffix_min,
            suffix_max: &suffix_max,
            lo,
            hi,
        };
        rec(&walk, 0, 0, &mut current, &mut tuples);
        let render = |t: &[u32]| -> String {
            t.iter()
                .zip(&atoms)
                .map(|(&i, a)| {
                    let n = &a.names[i as usize];
                    if n.contains('⊗') {
                        format!("({n})")
                    } else {
                        n.clone()
                    }
                })
                .collect::<Vec<_>>()
                .join("⊗")
        };
        let mut named: Vec<(String, i32, Box<[u32]>)> = tuples
            .into_iter()
            .map(|(t, d)| (render(&t), d, t))
            .collect();
        named.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        let mut order = Vec::with_capacity(named.len());
        let mut elems = Vec::with_capacity(named.len());
        for (n, d, t) in named {
            elems.push((n, d));
            order.push(t);
        }
        let index = order
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        let mut space = Self::assemble(
            elems,
            hi,
            Structure::Tensor {
                atoms,
                tuples: order,
                index,
            },
        )
        .expect("tensor names are unique");
        space.min_degree_bound = lo;
        Arc::new(space)
    }

    /// The degreewise linear dual: basis `x*` in degree `-|x|`.
    pub fn dual(&self) -> Arc<Self> {
        let elems = self
            .names
            .iter()
            .zip(&self.degrees)
            .map(|(n, &d)| (dual_name(n), -d))
            .collect::<Vec<_>>();
        GradedSpace::new(elems).expect("dual names are unique")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.lookup.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownBasis(name.to_string()))
    }

    /// Indices of the basis elements in degree `d`.
    pub fn range(&self, d: i32) -> Range<usize> {
        self.ranges.get(&d).cloned().unwrap_or(0..0)
    }

    pub fn dim_in(&self, d: i32) -> usize {
        self.range(d).len()
    }

    /// Degrees with at least one basis element, ascending.
    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.ranges.keys().copied()
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.ranges.iter().map(|(d, r)| (*d, r.len())).collect()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.ranges.keys().next().copied()
    }

    pub fn top_degree(&self) -> Option<i32> {
        self.ranges.keys().next_back().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.max_degree
    }

    /// True when the space is truncated and degree `d` lies outside its window,
    /// so that terms of that degree are known to be discarded.
    pub fn truncates(&self, d: i32) -> bool {
        self.max_degree.is_some_and(|b| d > b) || self.min_degree_bound.is_some_and(|b| d < b)
    }

    /// Structural equality: same names in the same degrees.
    pub fn same_as(&self, other: &GradedSpace) -> bool {
        std::ptr::eq(self, other)
            || (self.fingerprint == other.fingerprint
                && self.degrees == other.degrees
                && self.names == other.names)
    }
}

impl GradedSpace {
    pub(crate) fn dual_name_of(&self, i: usize) -> String {
        dual_name(&self.names[i])
    }
}

fn dual_name(n: &str) -> String {
    if n.chars().all(|c| c.is_alphanumeric() || c == '_') {
        format!("{n}*")
    } else {
        format!("({n})*")
    }
}
