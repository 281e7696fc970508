//! Rational simplicial cohomology of a poset's order complex (unreduced).

use std::collections::HashMap;

use thiserror::Error;

use crate::exactla::{int, rank, SparseMat};
use crate::poset::{Poset, SimplicialComplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NerveError {
    #[error("degree {0} is out of range (0, 1 or 2)")]
    DegreeOutOfRange(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialCochainComplex {
    pub complex: SimplicialComplex,
    /// `coboundaries[k]` maps k-cochains to (k+1)-cochains.
    pub coboundaries: Vec<SparseMat>,
}

impl SimplicialCochainComplex {
    pub fn new(p: &Poset) -> Self {
        let complex = p.nerve();
        let top = complex.dimension();
        let coboundaries = (0..=top).map(|k| coboundary(&complex, k)).collect();
        Self {
            complex,
            coboundaries,
        }
    }

    fn rank_of(&self, k: usize) -> usize {
        self.coboundaries.get(k).map_or(0, rank)
    }

    /// `dim H^k`, zero above the top dimension.
    pub fn cohomology_dim(&self, k: usize) -> usize {
        let n = self.complex.count(k);
        let below = if k == 0 { 0 } else { self.rank_of(k - 1) };
        n - self.rank_of(k) - below
    }
}

/// `(d phi)(s) = sum_i (-1)^i phi(s \ s_i)`.
fn coboundary(c: &SimplicialComplex, k: usize) -> SparseMat {
    let lower = c.simplices(k);
    let upper = c.simplices(k + 1);
    let pos: HashMap<&Vec<i32>, usize> = lower.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut m = SparseMat::zeros(upper.len(), lower.len());
    for (r, s) in upper.iter().enumerate() {
        for i in 0..s.len() {
            let mut face = s.clone();
            face.remove(i);
            let col = pos[&face];
            m.set(r, col, int(if i % 2 == 0 { 1 } else { -1 }));
        }
    }
    m
}

pub fn simplicial_cohomology_dim(p: &Poset, k: usize) -> Result<usize, NerveError> {
    if k > 2 {
        return Err(NerveError::DegreeOutOfRange(k));
    }
    Ok(SimplicialCochainComplex::new(p).cohomology_dim(k))
}

pub fn euler_characteristic(p: &Poset) -> i64 {
    let c = p.nerve();
    (0..=c.dimension())
        .map(|k| if k % 2 == 0 { c.count(k) as i64 } else { -(c.count(k) as i64) })
        .sum()
}
