//! Finite direct sums of graded spaces with block-assembled maps.

use std::sync::Arc;

use crate::coefficients::Scalar;
use crate::error::{Error, Result};

use super::map::GradedMap;
use super::space::GradedSpace;

/// `⊕ parts`, realized as one atomic space whose basis names are chosen by
/// the caller. Each global basis element remembers its part and local index.
#[derive(Clone, Debug)]
pub struct DirectSum {
    space: Arc<GradedSpace>,
    parts: Vec<Arc<GradedSpace>>,
    to_global: Vec<Vec<usize>>,
    to_local: Vec<(usize, usize)>,
}

impl DirectSum {
    pub fn new(
        parts: Vec<Arc<GradedSpace>>,
        mut name: impl FnMut(usize, usize) -> String,
    ) -> Result<Self> {
        let mut elems = Vec::new();
        for (p, part) in parts.iter().enumerate() {
            for i in 0..part.dim() {
                elems.push((name(p, i), part.degree(i)));
            }
        }
        let space = GradedSpace::new(elems.iter().cloned())?;
        let mut to_global = Vec::with_capacity(parts.len());
        let mut to_local = vec![(0, 0); space.dim()];
        let mut names = elems.into_iter();
        for (p, part) in parts.iter().enumerate() {
            let mut g = Vec::with_capacity(part.dim());
            for i in 0..part.dim() {
                let (n, _) = names.next().expect("one name per element");
                let k = space.index_of(&n).expect("own name");
                to_local[k] = (p, i);
                g.push(k);
            }
            to_global.push(g);
        }
        Ok(DirectSum {
            space,
            parts,
            to_global,
            to_local,
        })
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn parts(&self) -> &[Arc<GradedSpace>] {
        &self.parts
    }

    pub fn part(&self, p: usize) -> &Arc<GradedSpace> {
        &self.parts[p]
    }

    pub fn global(&self, part: usize, local: usize) -> usize {
        self.to_global[part][local]
    }

    pub fn locate(&self, global: usize) -> (usize, usize) {
        self.to_local[global]
    }

    /// Injection of a part.
    pub fn inclusion<S: Scalar>(&self, part: usize) -> GradedMap<S> {
        GradedMap::from_fn(&self.parts[part], &self.space, 0, |i| {
            vec![(self.global(part, i), S::one())]
        })
        .expect("degree preserving")
    }

    /// Assembles `Σ blocks` where a block `(p, q, f)` maps part `p` of
    /// `source` to part `q` of `target`.
    pub fn assemble<S: Scalar>(
        source: &DirectSum,
        target: &DirectSum,
        degree: i32,
        blocks: impl IntoIterator<Item = (usize, usize, GradedMap<S>)>,
    ) -> Result<GradedMap<S>> {
        let mut cols: Vec<Vec<(usize, S)>> = vec![Vec::new(); source.space.dim()];
        for (p, q, f) in blocks {
            if !f.source().same_as(&source.parts[p]) || !f.target().same_as(&target.parts[q]) {
                return Err(Error::Mismatch(format!(
                    "block ({p},{q}) does not fit its parts"
                )));
            }
            if f.degree() != degree {
                return Err(Error::Degree(format!(
                    "block ({p},{q}) has degree {}",
                    f.degree()
                )));
            }
            for (i, col) in f.columns().iter().enumerate() {
                let dst = &mut cols[source.global(p, i)];
                dst.extend(col.iter().map(|(j, c)| (target.global(q, *j), c.clone())));
            }
        }
        GradedMap::from_fn(&source.space, &target.space, degree, |i| {
            std::mem::take(&mut cols[i])
        })
    }
}
