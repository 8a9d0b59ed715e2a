//! Finite simplicial sets given by their nondegenerate simplices and face
//! tables, normalized chains, and the Alexander–Whitney coalgebra.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::coefficients::Scalar;
use crate::dgcore::{DgCoalgebra, Report};
use crate::error::{Error, Result};
use crate::gradedlin::{GradedMap, GradedSpace, TruncatedComplex};

/// `τ∘η` for a nondegenerate `τ` and a monotone surjection `η: [n] → [dim τ]`
/// listed by its values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem {
    pub simplex: usize,
    pub surjection: Vec<usize>,
}

impl Elem {
    pub fn dim(&self) -> usize {
        self.surjection.len() - 1
    }

    pub fn is_degenerate(&self) -> bool {
        self.surjection.windows(2).any(|w| w[0] == w[1])
    }

    /// Degeneracy indices `i_k > … > i_1` of `s_{i_k}…s_{i_1}τ`.
    pub fn degeneracies(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.dim()).filter(|&j| self.surjection[j] == self.surjection[j + 1]).collect();
        v.reverse();
        v
    }

    fn nondegenerate(simplex: usize, dim: usize) -> Self {
        Elem { simplex, surjection: (0..=dim).collect() }
    }

    /// Parses `s_{i_k}…s_{i_1}` (outermost first) over a simplex of `dim`.
    fn from_degeneracies(simplex: usize, dim: usize, ops: &[usize]) -> Self {
        let n = dim + ops.len();
        // η = σ_{i_1}∘…∘σ_{i_k}: apply the outermost codegeneracy first
        let surjection = (0..=n)
            .map(|mut a| {
                for &i in ops {
                    if a > i {
                        a -= 1;
                    }
                }
                a
            })
            .collect();
        Elem { simplex, surjection }
    }
}

#[derive(Clone, Debug)]
pub struct FiniteSimplicialSet {
    pub name: String,
    pub simplices: Vec<(String, usize)>,
    /// `faces[σ][i] = d_i σ`, empty for vertices.
    pub faces: Vec<Vec<Elem>>,
    pub basepoint: usize,
}

impl FiniteSimplicialSet {
    /// Builds from `(name, dim)` pairs and face expressions
    /// `(name, [(degeneracies outermost first, base name)])`.
    pub fn new(
        name: impl Into<String>,
        simplices: &[(&str, usize)],
        faces: &[(&str, Vec<(Vec<usize>, &str)>)],
        basepoint: Option<&str>,
    ) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (i, (n, _)) in simplices.iter().enumerate() {
            if index.insert(n.to_string(), i).is_some() {
                return Err(Error::DuplicateBasis(n.to_string()));
            }
        }
        let find = |n: &str| index.get(n).copied().ok_or_else(|| Error::UnknownBasis(n.to_string()));
        let mut table: Vec<Option<Vec<Elem>>> = vec![None; simplices.len()];
        for (s, exprs) in faces {
            let i = find(s)?;
            let dim = simplices[i].1;
            if exprs.len() != dim + 1 {
                return Err(Error::Invalid(format!("{s} has dimension {dim} but {} faces", exprs.len())));
            }
            let mut row = Vec::new();
            for (ops, base) in exprs {
                if ops.windows(2).any(|w| w[0] <= w[1]) {
                    return Err(Error::Invalid(format!("face of {s}: degeneracy indices {ops:?} are not strictly decreasing")));
                }
                let b = find(base)?;
                let bd = simplices[b].1;
                if bd + ops.len() + 1 != dim {
                    return Err(Error::Invalid(format!("face of {s}: {base} with {} degeneracies has the wrong dimension", ops.len())));
                }
                if let Some(&top) = ops.first() {
                    if top > dim - 2 {
                        return Err(Error::Invalid(format!("face of {s}: degeneracy s{top} out of range")));
                    }
                }
                row.push(Elem::from_degeneracies(b, bd, ops));
            }
            if table[i].replace(row).is_some() {
                return Err(Error::Invalid(format!("faces of {s} given twice")));
            }
        }
        let mut faces = Vec::new();
        for (i, (n, d)) in simplices.iter().enumerate() {
            match (table[i].take(), d) {
                (Some(row), _) => faces.push(row),
                (None, 0) => faces.push(Vec::new()),
                (None, _) => return Err(Error::Invalid(format!("missing faces of {n}"))),
            }
        }
        let basepoint = match basepoint {
            Some(b) => find(b)?,
            None => simplices.iter().position(|(_, d)| *d == 0).ok_or_else(|| Error::Invalid("no vertices".into()))?,
        };
        if simplices[basepoint].1 != 0 {
            return Err(Error::Invalid("basepoint must be a vertex".into()));
        }
        Ok(FiniteSimplicialSet {
            name: name.into(),
            simplices: simplices.iter().map(|(n, d)| (n.to_string(), *d)).collect(),
            faces,
            basepoint,
        })
    }

    pub fn dim_of(&self, s: usize) -> usize {
        self.simplices[s].1
    }

    pub fn vertices(&self) -> Vec<usize> {
        (0..self.simplices.len()).filter(|&s| self.simplices[s].1 == 0).collect()
    }

    /// `x∘θ` for a monotone `θ: [p] → [dim x]`, in normal form.
    pub fn apply(&self, x: &Elem, theta: &[usize]) -> Elem {
        let comp: Vec<usize> = theta.iter().map(|&a| x.surjection[a]).collect();
        // epi-mono factorization of the composite
        let mut image: Vec<usize> = comp.clone();
        image.dedup();
        let epi: Vec<usize> = comp.iter().map(|v| image.binary_search(v).expect("in image")).collect();
        let base = self.restrict(x.simplex, &image);
        let surjection = epi.iter().map(|&a| base.surjection[a]).collect();
        Elem { simplex: base.simplex, surjection }
    }

    /// `τ∘ι` for a nondegenerate `τ` and an injection `ι` given by its image.
    fn restrict(&self, tau: usize, image: &[usize]) -> Elem {
        let dim = self.dim_of(tau);
        if image.len() == dim + 1 {
            return Elem::nondegenerate(tau, dim);
        }
        let j = (0..=dim).find(|v| image.binary_search(v).is_err()).expect("a missed vertex");
        let rest: Vec<usize> = image.iter().map(|&a| if a > j { a - 1 } else { a }).collect();
        self.apply(&self.faces[tau][j], &rest)
    }

    /// `d_i x`.
    pub fn face(&self, x: &Elem, i: usize) -> Elem {
        if !x.is_degenerate() {
            return self.faces[x.simplex][i].clone();
        }
        let theta: Vec<usize> = (0..=x.dim()).filter(|&a| a != i).collect();
        self.apply(x, &theta)
    }

    pub fn render(&self, x: &Elem) -> String {
        let ops: Vec<String> = x.degeneracies().iter().map(|i| format!("s{i}")).collect();
        let name = &self.simplices[x.simplex].0;
        if ops.is_empty() {
            name.clone()
        } else {
            format!("{} {name}", ops.join(""))
        }
    }

    /// `d_i d_j = d_{j−1} d_i` for `i < j` on every stored simplex, with the
    /// inner face read from the table.
    pub fn validate(&self) -> Report {
        let mut r = Report::new(format!("simplicial set {}", self.name));
        let mut failure = Ok(());
        'outer: for (s, (name, n)) in self.simplices.iter().enumerate() {
            if *n < 2 {
                continue;
            }
            for j in 1..=*n {
                for i in 0..j {
                    let a = self.face(&self.faces[s][j], i);
                    let b = self.face(&self.faces[s][i], j - 1);
                    if a != b {
                        failure = Err(format!(
                            "{name}: d{i} d{j} = {} but d{} d{i} = {}",
                            self.render(&a),
                            j - 1,
                            self.render(&b)
                        ));
                        break 'outer;
                    }
                }
            }
        }
        r.record("simplicial identities", failure);
        r
    }

    fn ordered_space(&self, rename_base: bool) -> Result<Arc<GradedSpace>> {
        GradedSpace::new(self.simplices.iter().enumerate().map(|(i, (n, d))| {
            let n = if rename_base && i == self.basepoint { "1".to_string() } else { n.clone() };
            (n, *d as i32)
        }))
    }

    fn chain_map<S: Scalar>(&self, space: &Arc<GradedSpace>, rename_base: bool) -> Result<GradedMap<S>> {
        let idx = |s: usize| {
            let n = if rename_base && s == self.basepoint { "1" } else { self.simplices[s].0.as_str() };
            space.require(n).expect("simplex in space")
        };
        let mut cols: Vec<Vec<(usize, S)>> = vec![Vec::new(); space.dim()];
        for (s, (_, n)) in self.simplices.iter().enumerate() {
            if *n == 0 {
                continue;
            }
            for (i, f) in self.faces[s].iter().enumerate() {
                if !f.is_degenerate() {
                    cols[idx(s)].push((idx(f.simplex), S::sign(i as i64)));
                }
            }
        }
        GradedMap::from_fn(space, space, -1, |i| std::mem::take(&mut cols[i]))
    }
}

impl fmt::Display for FiniteSimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, (n, d)) in self.simplices.iter().enumerate() {
            writeln!(f, "{n}: {d}")?;
            if *d > 0 {
                let faces: Vec<String> = self.faces[s].iter().map(|e| self.render(e)).collect();
                writeln!(f, "faces({n}) = [{}]", faces.join(", "))?;
            }
        }
        Ok(())
    }
}

/// `N_*(K)`: nondegenerate simplices, alternating faces with degenerate
/// faces dropped.
pub fn normalized_chains<S: Scalar>(k: &FiniteSimplicialSet) -> Result<TruncatedComplex<S>> {
    let space = k.ordered_space(false)?;
    let d = k.chain_map(&space, false)?;
    TruncatedComplex::exact(d, format!("N_*({})", k.name))
}

/// `C_*(K)` with `Δσ = Σ_i σ|[0..i] ⊗ σ|[i..n]`; the unique vertex is `1`.
pub fn aw_coalgebra<S: Scalar>(k: &FiniteSimplicialSet) -> Result<DgCoalgebra<S>> {
    let v = k.vertices();
    if v.len() != 1 {
        return Err(Error::NotConnected(format!("{} has {} vertices; reduce it to one", k.name, v.len())));
    }
    let space = k.ordered_space(true)?;
    let d = k.chain_map(&space, true)?;
    let idx = |s: usize| {
        let n = if s == k.basepoint { "1" } else { k.simplices[s].0.as_str() };
        space.require(n).expect("simplex in space")
    };
    let cc = GradedSpace::tensor(&[&space, &space], None);
    let comult = aw_comult(k, &space, &cc, &idx)?;
    DgCoalgebra::new(format!("C_*({})", k.name), space, d, comult)
}

/// The Alexander–Whitney coalgebra of any `K`, with `ε` equal to 1 on every
/// vertex and no coaugmentation. Connected only when `K` has one vertex.
pub fn aw_coalgebra_unreduced<S: Scalar>(k: &FiniteSimplicialSet) -> Result<DgCoalgebra<S>> {
    let space = k.ordered_space(false)?;
    let d = k.chain_map(&space, false)?;
    let idx = |s: usize| space.require(&k.simplices[s].0).expect("simplex in space");
    let cc = GradedSpace::tensor(&[&space, &space], None);
    let comult = aw_comult(k, &space, &cc, &idx)?;
    let ground = GradedSpace::ground();
    let counit = GradedMap::from_fn(&space, &ground, 0, |i| if space.degree(i) == 0 { vec![(0, S::one())] } else { vec![] })?;
    DgCoalgebra::with_structure(format!("C_*({})", k.name), space, d, comult, counit, None)
}

fn aw_comult<S: Scalar>(
    k: &FiniteSimplicialSet,
    space: &Arc<GradedSpace>,
    cc: &Arc<GradedSpace>,
    idx: &dyn Fn(usize) -> usize,
) -> Result<GradedMap<S>> {
    let mut cols: Vec<Vec<(usize, S)>> = vec![Vec::new(); space.dim()];
    for (s, (_, n)) in k.simplices.iter().enumerate() {
        let x = Elem::nondegenerate(s, *n);
        for i in 0..=*n {
            let front = k.apply(&x, &(0..=i).collect::<Vec<_>>());
            let back = k.apply(&x, &(i..=*n).collect::<Vec<_>>());
            if front.is_degenerate() || back.is_degenerate() {
                continue;
            }
            let t = cc.index_of_tuple(&[idx(front.simplex) as u32, idx(back.simplex) as u32]).expect("full square");
            cols[idx(s)].push((t, S::one()));
        }
    }
    GradedMap::from_fn(space, cc, 0, |i| std::mem::take(&mut cols[i]))
}

/// Parses the `.sset` text format:
///
/// ```text
/// # comment
/// v: 0
/// e: 1
/// faces(e) = [v, v]
/// t: 2
/// faces(t) = [e, s0 v, e]
/// basepoint: v
/// ```
pub fn parse_sset(name: &str, text: &str) -> Result<FiniteSimplicialSet> {
    let mut simplices: Vec<(String, usize)> = Vec::new();
    let mut faces: Vec<(String, Vec<(Vec<usize>, String)>)> = Vec::new();
    let mut basepoint = None;
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| Error::Parse { line: no + 1, msg: msg.to_string() };
        if let Some(rest) = line.strip_prefix("faces(") {
            let (s, rest) = rest.split_once(')').ok_or_else(|| err("expected `)`"))?;
            let list = rest.trim().strip_prefix('=').ok_or_else(|| err("expected `=`"))?.trim();
            let list = list.strip_prefix('[').and_then(|l| l.strip_suffix(']')).ok_or_else(|| err("expected `[...]`"))?;
            let mut exprs = Vec::new();
            for e in list.split(',') {
                let toks: Vec<&str> = e.split_whitespace().collect();
                let (base, ops) = toks.split_last().ok_or_else(|| err("empty face expression"))?;
                let mut idx = Vec::new();
                for op in ops {
                    // `s2s0` and `s2 s0` are both accepted
                    for part in op.split('s').skip(1) {
                        idx.push(part.parse::<usize>().map_err(|_| err(&format!("bad degeneracy `{op}`")))?);
                    }
                    if !op.starts_with('s') {
                        return Err(err(&format!("bad degeneracy `{op}`")));
                    }
                }
                exprs.push((idx, base.to_string()));
            }
            faces.push((s.trim().to_string(), exprs));
        } else if let Some((key, value)) = line.split_once(':') {
            let (key, value) = (key.trim(), value.trim());
            if key == "basepoint" {
                basepoint = Some(value.to_string());
            } else {
                let d = value.parse::<usize>().map_err(|_| err(&format!("bad dimension `{value}`")))?;
                if key.is_empty() || key.contains(char::is_whitespace) {
                    return Err(err(&format!("bad simplex name `{key}`")));
                }
                simplices.push((key.to_string(), d));
            }
        } else {
            return Err(err(&format!("cannot read `{line}`")));
        }
    }
    let s: Vec<(&str, usize)> = simplices.iter().map(|(n, d)| (n.as_str(), *d)).collect();
    let f: Vec<(&str, Vec<(Vec<usize>, &str)>)> =
        faces.iter().map(|(n, e)| (n.as_str(), e.iter().map(|(o, b)| (o.clone(), b.as_str())).collect())).collect();
    FiniteSimplicialSet::new(name, &s, &f, basepoint.as_deref())
}

fn vertex_name(vs: &[usize]) -> String {
    format!("x{}", vs.iter().map(|v| v.to_string()).collect::<String>())
}

fn subsets(n: usize, skip_full: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << (n + 1)) {
        let vs: Vec<usize> = (0..=n).filter(|i| mask & (1 << i) != 0).collect();
        if skip_full && vs.len() == n + 1 {
            continue;
        }
        out.push(vs);
    }
    out.sort_by_key(|v| (v.len(), v.clone()));
    out
}

fn from_subsets(name: String, sets: &[Vec<usize>]) -> Result<FiniteSimplicialSet> {
    let names: Vec<String> = sets.iter().map(|v| vertex_name(v)).collect();
    let simplices: Vec<(&str, usize)> = names.iter().zip(sets).map(|(n, v)| (n.as_str(), v.len() - 1)).collect();
    let face_names: Vec<(usize, Vec<String>)> = sets
        .iter()
        .enumerate()
        .filter(|(_, v)| v.len() > 1)
        .map(|(i, v)| {
            let fs = (0..v.len())
                .map(|j| {
                    let mut w = v.clone();
                    w.remove(j);
                    vertex_name(&w)
                })
                .collect();
            (i, fs)
        })
        .collect();
    let faces: Vec<(&str, Vec<(Vec<usize>, &str)>)> = face_names
        .iter()
        .map(|(i, fs)| (names[*i].as_str(), fs.iter().map(|f| (vec![], f.as_str())).collect()))
        .collect();
    FiniteSimplicialSet::new(name, &simplices, &faces, None)
}

/// `Δ[n]`, simplices named by their vertices (`x0`, `x01`, …).
pub fn standard_simplex(n: usize) -> Result<FiniteSimplicialSet> {
    from_subsets(format!("Δ[{n}]"), &subsets(n, false))
}

/// `∂Δ[n]`.
pub fn boundary_simplex(n: usize) -> Result<FiniteSimplicialSet> {
    from_subsets(format!("∂Δ[{n}]"), &subsets(n, true))
}

/// `Δ[n]/∂Δ[n]`: one vertex `v`, one nondegenerate `n`-simplex `z`.
pub fn sphere_sset(n: usize) -> Result<FiniteSimplicialSet> {
    if n == 0 {
        return Err(Error::Invalid("sphere(0) has two vertices".into()));
    }
    let ops: Vec<usize> = (0..n - 1).rev().collect();
    let faces = vec![("z", vec![(ops, "v"); n + 1])];
    FiniteSimplicialSet::new(format!("S^{n}"), &[("v", 0), ("z", n)], &faces, Some("v"))
}

/// `∂Δ[3]/sk_1`: one vertex and the four triangles, every face degenerate.
/// This is 1-reduced, so its chain coalgebra is 1-connected.
pub fn reduced_boundary_tetrahedron() -> Result<FiniteSimplicialSet> {
    let names = ["x012", "x013", "x023", "x123"];
    let mut simplices = vec![("v", 0)];
    simplices.extend(names.iter().map(|n| (*n, 2)));
    let faces: Vec<(&str, Vec<(Vec<usize>, &str)>)> = names.iter().map(|n| (*n, vec![(vec![0], "v"); 3])).collect();
    FiniteSimplicialSet::new("∂Δ[3]/sk1", &simplices, &faces, Some("v"))
}

/// `∂Δ[3]` with the tree of edges at vertex 0 collapsed: one vertex, the
/// edges `x12, x13, x23`, all four triangles. Weakly equivalent to `S²` but
/// with nondegenerate 1-simplices.
pub fn tree_reduced_boundary_tetrahedron() -> Result<FiniteSimplicialSet> {
    let v = |_: ()| (vec![0], "v");
    FiniteSimplicialSet::new(
        "∂Δ[3]/T",
        &[("v", 0), ("x12", 1), ("x13", 1), ("x23", 1), ("x012", 2), ("x013", 2), ("x023", 2), ("x123", 2)],
        &[
            ("x12", vec![(vec![], "v"), (vec![], "v")]),
            ("x13", vec![(vec![], "v"), (vec![], "v")]),
            ("x23", vec![(vec![], "v"), (vec![], "v")]),
            ("x012", vec![(vec![], "x12"), v(()), v(())]),
            ("x013", vec![(vec![], "x13"), v(()), v(())]),
            ("x023", vec![(vec![], "x23"), v(()), v(())]),
            ("x123", vec![(vec![], "x23"), (vec![], "x13"), (vec![], "x12")]),
        ],
        Some("v"),
    )
}

/// Builtin simplicial sets by name: `delta(n)`, `boundary(n)`, `sphere(n)`,
/// `tetra-reduced`, `tetra-tree`.
pub fn builtin_sset(name: &str) -> Result<FiniteSimplicialSet> {
    let arg = |prefix: &str| -> Option<usize> { name.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?.parse().ok() };
    if name == "tetra-reduced" {
        reduced_boundary_tetrahedron()
    } else if name == "tetra-tree" {
        tree_reduced_boundary_tetrahedron()
    } else if let Some(n) = arg("delta") {
        standard_simplex(n)
    } else if let Some(n) = arg("boundary") {
        boundary_simplex(n)
    } else if let Some(n) = arg("sphere") {
        sphere_sset(n)
    } else {
        Err(Error::UnknownBuiltin(name.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{F2, F3, Q};

    #[test]
    fn simplices_validate() {
        for k in [standard_simplex(2), standard_simplex(3), boundary_simplex(2), sphere_sset(2), sphere_sset(3), reduced_boundary_tetrahedron(), tree_reduced_boundary_tetrahedron()] {
            let k = k.unwrap();
            assert!(k.validate().passed(), "{}", k.validate());
        }
    }

    #[test]
    fn corrupted_faces_fail() {
        let mut k = standard_simplex(2).unwrap();
        k.faces[6].swap(0, 1);
        let r = k.validate();
        assert!(r.failed("simplicial identities"), "{r}");
    }

    #[test]
    fn normal_forms() {
        let s2 = sphere_sset(2).unwrap();
        assert_eq!(s2.render(&s2.faces[1][1]), "s0 v");
        let s4 = sphere_sset(4).unwrap();
        assert_eq!(s4.render(&s4.faces[1][0]), "s2s1s0 v");
        let x = Elem::from_degeneracies(1, 2, &[3, 1]);
        assert_eq!(x.surjection, vec![0, 1, 1, 2, 2]);
        assert_eq!(x.degeneracies(), vec![3, 1]);
        // d_2 s_1 = id, d_0 s_1 = s_0 d_0
        let t = Elem::from_degeneracies(6, 2, &[1]);
        let d3 = standard_simplex(2).unwrap();
        assert_eq!(d3.face(&t, 2), Elem::nondegenerate(6, 2));
        assert_eq!(d3.render(&d3.face(&t, 0)), "s0 x12");
    }

    #[test]
    fn betti_of_chains() {
        let b = normalized_chains::<Q>(&sphere_sset(3).unwrap()).unwrap();
        assert!(b.differential().is_zero());
        assert_eq!(b.space().degrees().collect::<Vec<_>>(), vec![0, 3]);
        let b = normalized_chains::<F2>(&boundary_simplex(2).unwrap()).unwrap().betti();
        assert_eq!((b.get(0), b.get(1), b.get(2)), (1, 1, 0));
        let b = normalized_chains::<Q>(&standard_simplex(2).unwrap()).unwrap().betti();
        assert_eq!((b.get(0), b.get(1), b.get(2)), (1, 0, 0));
        let b = normalized_chains::<Q>(&tree_reduced_boundary_tetrahedron().unwrap()).unwrap().betti();
        assert_eq!((b.get(0), b.get(1), b.get(2)), (1, 0, 1));
        let b = normalized_chains::<Q>(&reduced_boundary_tetrahedron().unwrap()).unwrap().betti();
        assert_eq!((b.get(0), b.get(1), b.get(2)), (1, 0, 4));
        for n in 2..6 {
            let b = normalized_chains::<F3>(&sphere_sset(n).unwrap()).unwrap().betti();
            assert!((0..=6).all(|k| b.get(k) == usize::from(k == 0 || k == n as i32)));
        }
    }

    #[test]
    fn alexander_whitney() {
        let c = aw_coalgebra::<Q>(&sphere_sset(2).unwrap()).unwrap();
        assert!(c.validate().passed());
        assert!(c.is_simply_connected());
        let z = c.space().require("z").unwrap();
        assert_eq!(c.comult().render(c.comult().column(z)), "1*1⊗z + 1*z⊗1");
        let k = FiniteSimplicialSet::new("circle", &[("v", 0), ("e", 1)], &[("e", vec![(vec![], "v"), (vec![], "v")])], None).unwrap();
        let c = aw_coalgebra::<F3>(&k).unwrap();
        let e = c.space().require("e").unwrap();
        assert_eq!(c.comult().render(c.comult().column(e)), "1*1⊗e + 1*e⊗1");
        let t = aw_coalgebra::<Q>(&tree_reduced_boundary_tetrahedron().unwrap()).unwrap();
        let r = t.validate();
        assert!(r.passed(), "{r}");
        assert!(!t.is_simply_connected());
        let x = t.space().require("x123").unwrap();
        assert_eq!(t.comult().render(t.comult().column(x)), "1*1⊗x123 + 1*x123⊗1 + 1*x12⊗x23");
        let t = aw_coalgebra::<Q>(&reduced_boundary_tetrahedron().unwrap()).unwrap();
        assert!(t.validate().passed() && t.is_simply_connected());
        let u = aw_coalgebra_unreduced::<Q>(&boundary_simplex(2).unwrap()).unwrap();
        assert!(u.validate_axioms().passed(), "{}", u.validate_axioms());
        assert!(u.validate().failed("connected"));
        for n in 2..5 {
            let c = aw_coalgebra::<F2>(&sphere_sset(n).unwrap()).unwrap();
            assert!(c.validate().passed() && c.is_simply_connected());
        }
        assert!(aw_coalgebra::<Q>(&standard_simplex(1).unwrap()).is_err());
    }

    #[test]
    fn parse_round_trip() {
        let text = "# S^2\nv: 0\nz: 2\nfaces(z) = [s0 v, s0 v, s0 v]\n";
        let k = parse_sset("s2", text).unwrap();
        assert!(k.validate().passed());
        let again = parse_sset("s2", &k.to_string()).unwrap();
        assert_eq!(again.faces, k.faces);
        assert!(parse_sset("bad", "z: 2\nfaces(z) = [s0s1 v, v, v]\nv: 0").is_err());
        assert!(matches!(parse_sset("bad", "z 2"), Err(Error::Parse { line: 1, .. })));
    }
}
