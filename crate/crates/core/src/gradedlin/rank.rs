//! Exact Gaussian elimination on sparse column vectors.

use std::collections::HashMap;

use crate::coefficients::Scalar;

use super::map::{axpy, SparseVec};

/// Incremental column echelon form: each stored pivot column has leading
/// entry (smallest row index) equal to one, and pivots are keyed by that row.
pub struct Echelon<S> {
    pivots: HashMap<usize, SparseVec<S>>,
}

impl<S: Scalar> Default for Echelon<S> {
    fn default() -> Self {
        Echelon {
            pivots: HashMap::new(),
        }
    }
}

impl<S: Scalar> Echelon<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the stored pivots, returning the remainder.
    pub fn reduce(&self, mut v: SparseVec<S>) -> SparseVec<S> {
        // leading entries only ever move to larger rows, so a forward scan
        // over the entries is enough
        let mut pos = 0;
        while pos < v.len() {
            let (row, coeff) = v[pos].clone();
            match self.pivots.get(&row) {
                Some(p) => {
                    v = axpy(&v, &-coeff, p);
                    // entries before `pos` are untouched; re-scan from there
                }
                None => pos += 1,
            }
        }
        v
    }

    /// Inserts `v`; returns true when it was independent of the span so far.
    pub fn insert(&mut self, v: SparseVec<S>) -> bool {
        let r = self.reduce(v);
        match r.first() {
            None => false,
            Some((row, lead)) => {
                let inv = lead.inv().expect("nonzero leading entry");
                let scaled: SparseVec<S> = r
                    .iter()
                    .map(|(i, c)| (*i, c.clone() * inv.clone()))
                    .collect();
                self.pivots.insert(*row, scaled);
                true
            }
        }
    }

    pub fn contains(&self, v: SparseVec<S>) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Rank of the span of the given columns.
pub fn rank<S: Scalar>(columns: impl IntoIterator<Item = SparseVec<S>>) -> usize {
    let mut e = Echelon::new();
    for c in columns {
        e.insert(c);
    }
    e.rank()
}

/// Basis of the kernel of the linear map whose columns are given, as vectors
/// in column coordinates, in reduced form: every basis vector has a distinct
/// pivot coordinate on which all other basis vectors vanish.
pub fn kernel<S: Scalar>(columns: &[SparseVec<S>]) -> Subspace<S> {
    let mut pivots: HashMap<usize, (SparseVec<S>, SparseVec<S>)> = HashMap::new();
    let mut kernel = Vec::new();
    for (k, col) in columns.iter().enumerate() {
        let mut v = col.clone();
        let mut combo: SparseVec<S> = vec![(k, S::one())];
        let mut pos = 0;
        while pos < v.len() {
            let (row, coeff) = v[pos].clone();
            match pivots.get(&row) {
                Some((p, pc)) => {
                    v = axpy(&v, &-coeff.clone(), p);
                    combo = axpy(&combo, &-coeff, pc);
                }
                None => pos += 1,
            }
        }
        match v.first() {
            None => kernel.push(combo),
            Some((row, lead)) => {
                let inv = lead.inv().expect("nonzero leading entry");
                let scale = |x: &SparseVec<S>| {
                    x.iter()
                        .map(|(i, c)| (*i, c.clone() * inv.clone()))
                        .collect()
                };
                pivots.insert(*row, (scale(&v), scale(&combo)));
            }
        }
    }
    Subspace::from_vectors(kernel)
}

/// A subspace given by a reduced basis.
#[derive(Clone, Debug)]
pub struct Subspace<S> {
    basis: Vec<SparseVec<S>>,
    pivots: Vec<usize>,
}

impl<S: Scalar> Subspace<S> {
    /// Row-reduces the spanning vectors; the result has one basis vector per
    /// pivot coordinate, normalized to 1 there and 0 at the other pivots.
    pub fn from_vectors(vectors: Vec<SparseVec<S>>) -> Self {
        let mut rows: Vec<SparseVec<S>> = Vec::new();
        for v in vectors {
            let mut r = v;
            for p in &rows {
                let lead = p[0].0;
                if let Some((_, c)) = r.iter().find(|(i, _)| *i == lead) {
                    let c = c.clone();
                    r = axpy(&r, &-c, p);
                }
            }
            if let Some((_, lead)) = r.first() {
                let inv = lead.inv().expect("nonzero");
                let r: SparseVec<S> = r
                    .iter()
                    .map(|(i, c)| (*i, c.clone() * inv.clone()))
                    .collect();
                let lead = r[0].0;
                for p in rows.iter_mut() {
                    if let Some((_, c)) = p.iter().find(|(i, _)| *i == lead) {
                        let c = c.clone();
                        *p = axpy(p, &-c, &r);
                    }
                }
                rows.push(r);
            }
        }
        rows.sort_by_key(|r| r[0].0);
        let pivots = rows.iter().map(|r| r[0].0).collect();
        Subspace {
            basis: rows,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec<S>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in this basis, or `None` when `v` is not in the subspace.
    pub fn coords(&self, v: &[(usize, S)]) -> Option<SparseVec<S>> {
        let mut rest = v.to_vec();
        let mut coords = Vec::new();
        for (k, (p, b)) in self.pivots.iter().zip(&self.basis).enumerate() {
            if let Some((_, c)) = rest.iter().find(|(i, _)| i == p) {
                let c = c.clone();
                rest = axpy(&rest, &-c.clone(), b);
                coords.push((k, c));
            }
        }
        rest.is_empty().then_some(coords)
    }

    pub fn contains(&self, v: &[(usize, S)]) -> bool {
        self.coords(v).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{F2, Q};
    use proptest::prelude::*;

    fn q(n: i64) -> Q {
        Q::from_i64(n)
    }

    #[test]
    fn boundary_of_triangle_has_rank_two() {
        // edges 01, 02, 12 -> vertices 0, 1, 2
        let cols = vec![
            vec![(0, q(-1)), (1, q(1))],
            vec![(0, q(-1)), (2, q(1))],
            vec![(1, q(-1)), (2, q(1))],
        ];
        assert_eq!(rank(cols.clone()), 2);
        let k = kernel(&cols);
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&[(0, q(1)), (1, q(-1)), (2, q(1))]));
    }

    #[test]
    fn rank_depends_on_characteristic() {
        let cols_q = vec![vec![(0, q(1)), (1, q(1))], vec![(0, q(1)), (1, q(-1))]];
        assert_eq!(rank(cols_q), 2);
        let cols_2 = vec![
            vec![(0, F2::from_i64(1)), (1, F2::from_i64(1))],
            vec![(0, F2::from_i64(1)), (1, F2::from_i64(-1))],
        ];
        assert_eq!(rank(cols_2), 1);
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in proptest::collection::vec((0usize..6, 0usize..5, -3i64..4), 0..25)) {
            let mut cols: Vec<Vec<(usize, Q)>> = vec![Vec::new(); 6];
            for (c, r, v) in entries {
                cols[c].push((r, q(v)));
            }
            let cols: Vec<SparseVec<Q>> = cols.into_iter().map(crate::gradedlin::normalize).collect();
            let r = rank(cols.clone());
            let k = kernel(&cols);
            prop_assert_eq!(r + k.dim(), 6);
            for v in k.basis() {
                // kernel vectors really are in the kernel
                let mut acc: SparseVec<Q> = Vec::new();
                for (i, c) in v {
                    acc = axpy(&acc, c, &cols[*i]);
                }
                prop_assert!(acc.is_empty());
            }
        }
    }
}
