//! Chevalley–Eilenberg cohomology `H^n(g, g)` with adjoint coefficients.
//!
//! An `n`-cochain is stored by its values on strictly increasing index
//! tuples. Coordinates of `C^n` are ordered lexicographically by tuple and
//! then by target index, so coordinate `r * dim + t` is the `x_t` component
//! of `F(x_{s_0}, ..., x_{s_{n-1}})` for the `r`-th tuple.
//!
//! The coboundary is
//! `dF(s) = sum_i (-1)^i [x_{s_i}, F(s \ s_i)] + sum_{i<j} (-1)^{i+j} F([x_{s_i}, x_{s_j}], s \ {s_i, s_j})`,
//! so `dx(g) = [g, x]` in degree zero and `H^0` is the center.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactla::{self, rank, Rat, SparseMat};
use crate::liealg::{LieAlg, LieError, Variant};
use crate::nerve;
use crate::poset::Poset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("degree {degree} out of range for an algebra of dimension {dim}")]
    DegreeOutOfRange { degree: usize, dim: usize },
    #[error("degree {degree} exceeds the guard {max}")]
    DegreeGuard { degree: usize, max: usize },
    #[error("dimension {dim} exceeds the guard {max}")]
    DimensionGuard { dim: usize, max: usize },
    #[error(transparent)]
    Lie(#[from] LieError),
}

impl CohomologyError {
    pub fn is_guard(&self) -> bool {
        matches!(self, Self::DegreeGuard { .. } | Self::DimensionGuard { .. })
    }
}

/// Size limits for [`cohomology_dim`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guards {
    pub max_degree: usize,
    pub max_dim: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Self {
            max_degree: 3,
            max_dim: 12,
        }
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Strictly increasing `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, k));
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Coordinate layout of `C^n(g, g)`.
#[derive(Clone, Debug)]
pub struct CochainIndex {
    pub dim: usize,
    pub degree: usize,
    pub tuples: Vec<Vec<usize>>,
    position: HashMap<Vec<usize>, usize>,
}

impl CochainIndex {
    pub fn new(dim: usize, degree: usize) -> Self {
        let tuples = subsets(dim, degree);
        let position = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Self {
            dim,
            degree,
            tuples,
            position,
        }
    }

    pub fn len(&self) -> usize {
        self.tuples.len() * self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn coord(&self, tuple: &[usize], target: usize) -> Option<usize> {
        self.position.get(tuple).map(|r| r * self.dim + target)
    }
}

pub fn cochain_dim(g: &LieAlg, n: usize) -> Result<usize, CohomologyError> {
    let dim = g.dim();
    if n > dim {
        return Err(CohomologyError::DegreeOutOfRange { degree: n, dim });
    }
    Ok(binomial(dim, n) * dim)
}

/// A cochain as a map `(tuple, target) -> coefficient`, zeros omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub coords: BTreeMap<(Vec<usize>, usize), Rat>,
}

impl Cochain {
    pub fn from_vector(index: &CochainIndex, v: &[Rat]) -> Self {
        let coords = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(c, x)| ((index.tuples[c / index.dim].clone(), c % index.dim), x.clone()))
            .collect();
        Self {
            degree: index.degree,
            coords,
        }
    }

    pub fn to_vector(&self, index: &CochainIndex) -> Vec<Rat> {
        let mut v = exactla::zero_vec(index.len());
        for ((tuple, t), x) in &self.coords {
            v[index.coord(tuple, *t).expect("tuple in range")] = x.clone();
        }
        v
    }

    /// Value of the alternating form on an arbitrary argument list, as the
    /// coefficient of `x_target`.
    pub fn value(&self, args: &[usize], target: usize) -> Rat {
        let mut sorted = args.to_vec();
        let sign = sort_sign(&mut sorted);
        if sign == 0 {
            return Rat::zero();
        }
        let x = self.coords.get(&(sorted, target)).cloned().unwrap_or_else(Rat::zero);
        if sign < 0 {
            -x
        } else {
            x
        }
    }
}

impl Serialize for Cochain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<(&Vec<usize>, usize, String)> = self
            .coords
            .iter()
            .map(|((t, k), x)| (t, *k, exactla::fmt_rat(x)))
            .collect();
        entries.serialize(s)
    }
}

/// Sorts in place and returns the permutation sign, or 0 on a repeat.
fn sort_sign(v: &mut [usize]) -> i32 {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        0
    } else {
        sign
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoboundaryMap {
    pub degree: usize,
    /// `C^{degree+1}` coordinates by `C^degree` coordinates.
    pub matrix: SparseMat,
}

fn sign_of(i: usize) -> Rat {
    if i % 2 == 0 {
        exactla::int(1)
    } else {
        exactla::int(-1)
    }
}

pub fn coboundary_matrix(g: &LieAlg, n: usize) -> Result<CoboundaryMap, CohomologyError> {
    let dim = g.dim();
    if n > dim {
        return Err(CohomologyError::DegreeOutOfRange { degree: n, dim });
    }
    let src = CochainIndex::new(dim, n);
    let dst = CochainIndex::new(dim, n + 1);
    // pairs (a, b), a < b, whose bracket has a nonzero x_k component
    let mut producing: Vec<Vec<(usize, usize, Rat)>> = vec![Vec::new(); dim];
    for a in 0..dim {
        for b in a + 1..dim {
            for (&k, c) in g.basis_bracket(a, b) {
                producing[k].push((a, b, c.clone()));
            }
        }
    }
    let columns: Vec<Vec<(usize, Rat)>> = (0..src.len())
        .into_par_iter()
        .map(|col| {
            let tau = &src.tuples[col / dim];
            let t = col % dim;
            let mut out: BTreeMap<usize, Rat> = BTreeMap::new();
            let mut push = |row: usize, v: Rat| {
                let e = out.entry(row).or_insert_with(Rat::zero);
                *e += v;
            };
            // [x_s, F(sigma \ s)] with sigma = tau + {s}
            for s in (0..dim).filter(|s| !tau.contains(s)) {
                let pos = tau.iter().filter(|&&x| x < s).count();
                let mut sigma = tau.clone();
                sigma.insert(pos, s);
                let base = dst.coord(&sigma, 0).expect("subset");
                for (&k, c) in g.basis_bracket(s, t) {
                    push(base + k, sign_of(pos) * c);
                }
            }
            // F([x_a, x_b], rest) with rest = tau \ {tau_p} and x_{tau_p} in [x_a, x_b]
            for (p, &k) in tau.iter().enumerate() {
                let rest: Vec<usize> = tau.iter().copied().filter(|&x| x != k).collect();
                for (a, b, c) in &producing[k] {
                    if rest.contains(a) || rest.contains(b) {
                        continue;
                    }
                    let mut sigma = rest.clone();
                    sigma.push(*a);
                    sigma.push(*b);
                    sigma.sort_unstable();
                    let i = sigma.iter().position(|x| x == a).expect("member");
                    let j = sigma.iter().position(|x| x == b).expect("member");
                    let row = dst.coord(&sigma, t).expect("subset");
                    push(row, sign_of(i + j + p) * c);
                }
            }
            out.into_iter().filter(|(_, v)| !v.is_zero()).collect()
        })
        .collect();
    let triplets = columns
        .into_iter()
        .enumerate()
        .flat_map(|(c, entries)| entries.into_iter().map(move |(r, v)| (r, c, v)));
    Ok(CoboundaryMap {
        degree: n,
        matrix: SparseMat::from_triplets(dst.len(), src.len(), triplets),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyDims {
    pub degree: usize,
    pub cochain: usize,
    pub cocycle: usize,
    pub coboundary: usize,
    pub cohomology: usize,
}

fn coboundary_rank(g: &LieAlg, n: usize) -> Result<usize, CohomologyError> {
    Ok(rank(&coboundary_matrix(g, n)?.matrix))
}

pub fn cohomology_dim(g: &LieAlg, n: usize) -> Result<CohomologyDims, CohomologyError> {
    cohomology_dim_guarded(g, n, &Guards::default())
}

pub fn cohomology_dim_guarded(
    g: &LieAlg,
    n: usize,
    guards: &Guards,
) -> Result<CohomologyDims, CohomologyError> {
    if n > guards.max_degree {
        return Err(CohomologyError::DegreeGuard {
            degree: n,
            max: guards.max_degree,
        });
    }
    if g.dim() > guards.max_dim {
        return Err(CohomologyError::DimensionGuard {
            dim: g.dim(),
            max: guards.max_dim,
        });
    }
    let cochain = cochain_dim(g, n)?;
    let cocycle = cochain - coboundary_rank(g, n)?;
    let coboundary = if n == 0 { 0 } else { coboundary_rank(g, n - 1)? };
    Ok(CohomologyDims {
        degree: n,
        cochain,
        cocycle,
        coboundary,
        cohomology: cocycle - coboundary,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeCheck {
    pub n: usize,
    pub holds: bool,
    pub cocycle_dim: usize,
    /// The first kernel element that violates the expected shape or is not
    /// hit by the explicit primitive.
    pub counterexample: Option<Cochain>,
    pub reason: Option<String>,
}

/// Checks the shape of every 2-cocycle of `Phi_n` and that each one is the
/// coboundary of an explicitly constructed 1-cochain.
///
/// Basis: `d_i = i`, `e_i = n + i` for `i < n`. For `i != j` a cocycle
/// satisfies
/// `F(e_i,e_j), F(d_i,d_j), F(d_i,e_j)` in `span(e_i, e_j)` and
/// `F(d_i,e_i) = a e_i + b d_i - sum_{k != i} (F(d_k,e_i)[e_k] e_k + F(e_i,e_k)[e_k] d_k)`.
pub fn z2_shape_check_phi(n: usize) -> Result<ShapeCheck, CohomologyError> {
    let g = LieAlg::phi(n)?;
    let dim = 2 * n;
    let d = |i: usize| i;
    let e = |i: usize| n + i;
    let idx2 = CochainIndex::new(dim, 2);
    let idx1 = CochainIndex::new(dim, 1);
    let delta2 = coboundary_matrix(&g, 2)?.matrix;
    let delta1 = coboundary_matrix(&g, 1)?.matrix;
    let kernel = exactla::kernel_basis(&delta2);
    let report = |holds: bool, f: Option<Cochain>, reason: Option<String>| ShapeCheck {
        n,
        holds,
        cocycle_dim: kernel.len(),
        counterexample: f,
        reason,
    };
    for v in &kernel {
        let f = Cochain::from_vector(&idx2, v);
        if let Some(reason) = shape_violation(&f, n) {
            return Ok(report(false, Some(f), Some(reason)));
        }
        let mut prim = Cochain {
            degree: 1,
            coords: BTreeMap::new(),
        };
        let mut put = |arg: usize, target: usize, x: Rat| {
            if !x.is_zero() {
                prim.coords.insert((vec![arg], target), x);
            }
        };
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    put(e(i), d(j), f.value(&[e(i), e(j)], e(j)));
                    put(d(j), e(i), f.value(&[d(i), d(j)], e(i)));
                    put(e(j), e(i), f.value(&[d(i), e(j)], e(i)));
                }
                put(d(i), d(j), f.value(&[d(i), e(j)], e(j)));
            }
            put(e(i), d(i), -f.value(&[d(i), e(i)], d(i)));
        }
        let image = delta1.mul_vec(&prim.to_vector(&idx1)).expect("shape");
        if image != *v {
            return Ok(report(false, Some(f), Some("explicit primitive misses the cocycle".into())));
        }
    }
    Ok(report(true, None, None))
}

fn shape_violation(f: &Cochain, n: usize) -> Option<String> {
    let d = |i: usize| i;
    let e = |i: usize| n + i;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for (name, args) in [
                ("F(e_i,e_j)", [e(i), e(j)]),
                ("F(d_i,d_j)", [d(i), d(j)]),
                ("F(d_i,e_j)", [d(i), e(j)]),
            ] {
                for t in 0..2 * n {
                    if t != e(i) && t != e(j) && !f.value(&args, t).is_zero() {
                        return Some(format!("{name} has a component off span(e_i, e_j) at i={i}, j={j}"));
                    }
                }
            }
        }
        for k in (0..n).filter(|&k| k != i) {
            let want_e = -f.value(&[d(k), e(i)], e(k));
            let want_d = -f.value(&[e(i), e(k)], e(k));
            if f.value(&[d(i), e(i)], e(k)) != want_e || f.value(&[d(i), e(i)], d(k)) != want_d {
                return Some(format!("F(d_i,e_i) coupling fails at i={i}, k={k}"));
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Eq1Report {
    pub variant: Variant,
    pub lhs: usize,
    pub rhs: usize,
    /// `(C(dim h, 2) * dim c, dim h * dim H^1, dim H^2)`.
    pub pieces: (usize, usize, usize),
    pub matched: bool,
}

/// Compares `dim H^2(g, g)` with the prediction from the center, the Cartan
/// rank and the cohomology of the nerve.
pub fn verify_eq1(p: &Poset, variant: Variant) -> Result<Eq1Report, CohomologyError> {
    let g = LieAlg::build(p, variant)?;
    let lhs = cohomology_dim_guarded(
        &g,
        2,
        &Guards {
            max_degree: 2,
            max_dim: usize::MAX,
        },
    )?
    .cohomology;
    let h = g.cartan_count();
    let c = g.center().dim();
    let h1 = nerve::simplicial_cohomology_dim(p, 1).expect("degree in range");
    let h2 = nerve::simplicial_cohomology_dim(p, 2).expect("degree in range");
    let pieces = (binomial(h, 2) * c, h * h1, h2);
    let rhs = pieces.0 + pieces.1 + pieces.2;
    Ok(Eq1Report {
        variant,
        lhs,
        rhs,
        pieces,
        matched: lhs == rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{example_tree_poset, example_type_c_poset};

    fn gl(p: &Poset) -> LieAlg {
        LieAlg::build(p, Variant::Gl).unwrap()
    }

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(subsets(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn cochain_dims() {
        let phi1 = LieAlg::phi(1).unwrap();
        let phi2 = LieAlg::phi(2).unwrap();
        assert_eq!(cochain_dim(&phi1, 2).unwrap(), 2);
        assert_eq!(cochain_dim(&phi2, 2).unwrap(), 24);
        assert_eq!(cochain_dim(&phi2, 0).unwrap(), 4);
        assert!(cochain_dim(&phi1, 3).is_err());
    }

    #[test]
    fn degree_zero_coboundary_is_bracket() {
        // dx(g) = [g, x] on Phi_1: d(e)(d) = [d, e] = e
        let m = coboundary_matrix(&LieAlg::phi(1).unwrap(), 0).unwrap().matrix;
        let expect = SparseMat::from_i64(&[&[0, 0], &[0, 1], &[0, 0], &[-1, 0]]);
        assert_eq!(m, expect);
    }

    #[test]
    fn phi1_degree_one_by_hand() {
        // dF(d, e) = [d, F(e)] - [e, F(d)] - F(e)
        let m = coboundary_matrix(&LieAlg::phi(1).unwrap(), 1).unwrap().matrix;
        let expect = SparseMat::from_i64(&[&[0, 0, -1, 0], &[1, 0, 0, 0]]);
        assert_eq!(m, expect);
    }

    #[test]
    fn rigidity_small() {
        for n in 1..=3 {
            let dims = cohomology_dim(&LieAlg::phi(n).unwrap(), 2).unwrap();
            assert_eq!(dims.cohomology, 0, "n = {n}");
        }
    }

    #[test]
    fn chain_two_gl_has_one_deformation() {
        let g = gl(&Poset::chain(2).unwrap());
        assert_eq!(cohomology_dim(&g, 2).unwrap().cohomology, 1);
        assert_eq!(cohomology_dim(&g, 0).unwrap().cohomology, 1);
    }

    #[test]
    fn abelian_closed_form() {
        let g = gl(&Poset::antichain(3).unwrap());
        for n in 0..=3 {
            assert_eq!(cohomology_dim(&g, n).unwrap().cohomology, 3 * binomial(3, n));
        }
    }

    #[test]
    fn guards() {
        let g = LieAlg::phi(1).unwrap();
        assert!(cohomology_dim(&g, 4).unwrap_err().is_guard());
        let big = gl(&Poset::chain(5).unwrap());
        assert_eq!(
            cohomology_dim(&big, 1).unwrap_err(),
            CohomologyError::DimensionGuard { dim: 15, max: 12 }
        );
        let loose = Guards { max_degree: 3, max_dim: 20 };
        assert!(cohomology_dim_guarded(&big, 0, &loose).is_ok());
    }

    #[test]
    fn shape_check() {
        for n in 1..=3 {
            let r = z2_shape_check_phi(n).unwrap();
            assert!(r.holds, "n = {n}: {:?}", r.reason);
        }
    }

    #[test]
    fn eq1_examples() {
        let r = verify_eq1(&Poset::chain(2).unwrap(), Variant::Gl).unwrap();
        assert_eq!((r.lhs, r.rhs), (1, 1));
        let r = verify_eq1(&example_tree_poset(), Variant::Gl).unwrap();
        assert_eq!((r.lhs, r.rhs, r.pieces), (6, 6, (6, 0, 0)));
        let r = verify_eq1(&example_type_c_poset(), Variant::Gl).unwrap();
        assert_eq!((r.lhs, r.rhs, r.pieces, r.matched), (0, 3, (0, 3, 0), false));
    }
}
