//! Pullback squares of finite sets.
//!
//! Sets are `0..n` and maps are lookup tables. Every "cartesian" statement in
//! the crate is eventually reduced to [`pullback_failure`].

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};

/// A commutative square
///
/// ```text
///   P --pa--> A
///   |         |
///   pb        ac
///   v         v
///   B --bc--> C
/// ```
#[derive(Clone, Copy, Debug)]
pub struct Square<'a> {
    pub pa: &'a [usize],
    pub pb: &'a [usize],
    pub ac: &'a [usize],
    pub bc: &'a [usize],
}

/// Why a square fails to be a pullback.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PullbackFailure {
    /// Two elements of `P` with the same image in `A ×_C B`.
    NotInjective { p1: usize, p2: usize },
    /// An element `(a, b)` of `A ×_C B` not hit by `P`.
    NotSurjective { a: usize, b: usize },
}

impl Square<'_> {
    fn check_commutes(&self) -> Result<()> {
        if self.pa.len() != self.pb.len() {
            return Err(Error::invalid("square legs have different domains"));
        }
        for p in 0..self.pa.len() {
            let a = self.pa[p];
            let b = self.pb[p];
            if a >= self.ac.len() || b >= self.bc.len() {
                return Err(Error::invalid("square map out of range"));
            }
            if self.ac[a] != self.bc[b] {
                return Err(Error::NonCommutingSquare(format!("element {p}")));
            }
        }
        Ok(())
    }

    /// Size of the fiber product `A ×_C B`.
    pub fn fiber_product_size(&self) -> usize {
        let mut over: HashMap<usize, usize> = HashMap::new();
        for &c in self.bc {
            *over.entry(c).or_default() += 1;
        }
        self.ac
            .iter()
            .map(|c| over.get(c).copied().unwrap_or(0))
            .sum()
    }
}

/// `None` when the comparison map `P → A ×_C B` is a bijection.
pub fn pullback_failure(sq: &Square<'_>) -> Result<Option<PullbackFailure>> {
    sq.check_commutes()?;
    let mut seen: HashMap<(usize, usize), usize> = HashMap::with_capacity(sq.pa.len());
    for p in 0..sq.pa.len() {
        if let Some(&q) = seen.get(&(sq.pa[p], sq.pb[p])) {
            return Ok(Some(PullbackFailure::NotInjective { p1: q, p2: p }));
        }
        seen.insert((sq.pa[p], sq.pb[p]), p);
    }
    if seen.len() == sq.fiber_product_size() {
        return Ok(None);
    }
    let hit: HashSet<(usize, usize)> = seen.into_keys().collect();
    let mut by_c: HashMap<usize, Vec<usize>> = HashMap::new();
    for (b, &c) in sq.bc.iter().enumerate() {
        by_c.entry(c).or_default().push(b);
    }
    for (a, c) in sq.ac.iter().enumerate() {
        for &b in by_c.get(c).map(Vec::as_slice).unwrap_or(&[]) {
            if !hit.contains(&(a, b)) {
                return Ok(Some(PullbackFailure::NotSurjective { a, b }));
            }
        }
    }
    unreachable!("fiber product size disagrees with enumeration")
}

pub fn is_pullback(sq: &Square<'_>) -> Result<bool> {
    Ok(pullback_failure(sq)?.is_none())
}

/// The fiber product `A ×_C B` with its projections, pairs in lexicographic order.
pub fn fiber_product(ac: &[usize], bc: &[usize]) -> Vec<(usize, usize)> {
    let mut by_c: HashMap<usize, Vec<usize>> = HashMap::new();
    for (b, &c) in bc.iter().enumerate() {
        by_c.entry(c).or_default().push(b);
    }
    let mut out = Vec::new();
    for (a, c) in ac.iter().enumerate() {
        if let Some(bs) = by_c.get(c) {
            out.extend(bs.iter().map(|&b| (a, b)));
        }
    }
    out
}
