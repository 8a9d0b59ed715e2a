//! Chain complexes known through a degree bound, and their Betti tables.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::coefficients::{FieldSpec, Scalar};
use crate::error::{Error, Result};

use super::map::GradedMap;
use super::rank::rank;
use super::space::GradedSpace;

/// A chain complex (differential of degree -1) whose homology is trusted only
/// in degrees `valid_lo..=horizon`.
#[derive(Clone, Debug)]
pub struct TruncatedComplex<S: Scalar> {
    d: GradedMap<S>,
    valid_lo: Option<i32>,
    horizon: i32,
    approximate: bool,
    label: String,
}

impl<S: Scalar> TruncatedComplex<S> {
    /// Checks that `d` is an endomorphism of degree -1 squaring to zero.
    pub fn new(d: GradedMap<S>, horizon: i32, label: impl Into<String>) -> Result<Self> {
        if d.degree() != -1 {
            return Err(Error::Degree(format!(
                "differential has degree {}",
                d.degree()
            )));
        }
        if !d.source().same_as(d.target()) {
            return Err(Error::Mismatch(
                "differential is not an endomorphism".into(),
            ));
        }
        if d.source().max_degree().is_some_and(|b| horizon >= b) {
            return Err(Error::Invalid(format!(
                "horizon {horizon} reaches the truncation bound"
            )));
        }
        let cx = TruncatedComplex {
            d,
            valid_lo: None,
            horizon,
            approximate: false,
            label: label.into(),
        };
        cx.check_square_zero()?;
        Ok(cx)
    }

    /// A complex with all degrees exact.
    pub fn exact(d: GradedMap<S>, label: impl Into<String>) -> Result<Self> {
        let top = d.source().top_degree().unwrap_or(0);
        Self::new(d, top, label)
    }

    pub fn with_valid_lo(mut self, lo: i32) -> Self {
        self.valid_lo = Some(lo);
        self
    }

    pub fn approximate(mut self, flag: bool) -> Self {
        self.approximate = flag;
        self
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    fn check_square_zero(&self) -> Result<()> {
        let d = &self.d;
        let bad = (0..d.source().dim())
            .into_par_iter()
            .find_first(|&i| !d.apply(d.column(i)).is_empty());
        match bad {
            None => Ok(()),
            Some(i) => Err(Error::NotAComplex(format!(
                "{}: d²({}) = {}",
                self.label,
                d.source().name(i),
                d.render(&d.apply(d.column(i)))
            ))),
        }
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        self.d.source()
    }

    pub fn differential(&self) -> &GradedMap<S> {
        &self.d
    }

    pub fn horizon(&self) -> i32 {
        self.horizon
    }

    pub fn is_approximate(&self) -> bool {
        self.approximate
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Lowest degree reported.
    pub fn lo(&self) -> i32 {
        self.valid_lo
            .unwrap_or_else(|| self.space().min_degree().unwrap_or(0).min(self.horizon))
    }

    /// Rank of `d` out of each degree in `lo..=horizon + 1`.
    pub fn ranks(&self) -> BTreeMap<i32, usize> {
        let degrees: Vec<i32> = (self.lo()..=self.horizon + 1).collect();
        degrees
            .par_iter()
            .map(|&n| {
                let cols = self.space().range(n).map(|i| self.d.column(i).to_vec());
                (n, rank(cols))
            })
            .collect()
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        (self.lo()..=self.horizon)
            .map(|n| (n, self.space().dim_in(n)))
            .collect()
    }

    /// `Betti_n = dim V_n - rank d_n - rank d_{n+1}` for `lo <= n <= horizon`.
    pub fn betti(&self) -> BettiTable {
        let ranks = self.ranks();
        let entries = (self.lo()..=self.horizon)
            .map(|n| {
                let out = ranks.get(&n).copied().unwrap_or(0);
                let inc = ranks.get(&(n + 1)).copied().unwrap_or(0);
                (n, self.space().dim_in(n) - out - inc)
            })
            .collect();
        BettiTable {
            field: S::field(),
            entries,
            horizon: self.horizon,
            label: self.label.clone(),
            approximate: self.approximate,
        }
    }
}

/// Homology dimensions per degree, defined exactly for degrees up to `horizon`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub field: FieldSpec,
    pub entries: BTreeMap<i32, usize>,
    pub horizon: i32,
    pub label: String,
    pub approximate: bool,
}

impl BettiTable {
    pub fn get(&self, n: i32) -> usize {
        self.entries.get(&n).copied().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.entries.keys().copied().collect()
    }

    pub fn values(&self) -> Vec<usize> {
        self.entries.values().copied().collect()
    }

    /// Restricts to degrees `<= n`.
    pub fn through(&self, n: i32) -> BettiTable {
        BettiTable {
            entries: self.entries.range(..=n).map(|(k, v)| (*k, *v)).collect(),
            horizon: self.horizon.min(n),
            ..self.clone()
        }
    }

    /// First degree `<= n` where the tables differ.
    pub fn first_difference(&self, other: &BettiTable, n: i32) -> Option<i32> {
        let lo = self
            .entries
            .keys()
            .next()
            .copied()
            .unwrap_or(0)
            .min(other.entries.keys().next().copied().unwrap_or(0));
        (lo..=n).find(|&k| self.get(k) != other.get(k))
    }

    pub fn equal_through(&self, other: &BettiTable, n: i32) -> bool {
        self.first_difference(other, n).is_none()
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}:", self.label, self.field)?;
        for (d, b) in &self.entries {
            write!(f, " {d}:{b}")?;
        }
        if self.approximate {
            write!(f, " (approximate)")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{F2, Q};
    use num_traits::One;

    #[test]
    fn single_class_in_degree_zero() {
        let v = GradedSpace::new([("a", 0)]).unwrap();
        let cx = TruncatedComplex::<Q>::exact(GradedMap::zero(&v, &v, -1), "k").unwrap();
        assert_eq!(cx.betti().values(), vec![1]);
    }

    #[test]
    fn identity_is_acyclic() {
        let v = GradedSpace::new([("a", 1), ("b", 0)]).unwrap();
        let d = GradedMap::<Q>::from_named(&v, &v, -1, [("a", vec![("b", Q::one())])]).unwrap();
        let cx = TruncatedComplex::exact(d, "k->k").unwrap();
        assert_eq!(cx.betti().values(), vec![0, 0]);
    }

    #[test]
    fn boundary_of_triangle() {
        let v = GradedSpace::new([
            ("0", 0),
            ("1", 0),
            ("2", 0),
            ("01", 1),
            ("02", 1),
            ("12", 1),
        ])
        .unwrap();
        let one = F2::one();
        let d = GradedMap::<F2>::from_named(
            &v,
            &v,
            -1,
            [
                ("01", vec![("1", one), ("0", one)]),
                ("02", vec![("2", one), ("0", one)]),
                ("12", vec![("2", one), ("1", one)]),
            ],
        )
        .unwrap();
        let cx = TruncatedComplex::exact(d, "∂Δ[2]").unwrap();
        let b = cx.betti();
        assert_eq!(b.values(), vec![1, 1]);
        let ranks = cx.ranks();
        for (n, dim) in cx.dims() {
            assert_eq!(
                dim,
                b.get(n) + ranks[&n] + ranks.get(&(n + 1)).copied().unwrap_or(0)
            );
        }
    }

    #[test]
    fn rejects_nonzero_square() {
        let v = GradedSpace::new([("a", 2), ("b", 1), ("c", 0)]).unwrap();
        let d = GradedMap::<Q>::from_named(
            &v,
            &v,
            -1,
            [("a", vec![("b", Q::one())]), ("b", vec![("c", Q::one())])],
        )
        .unwrap();
        let err = TruncatedComplex::exact(d, "bad").unwrap_err();
        assert!(err.to_string().contains('a'));
    }
}
