//! Index, Frobenius functionals, principal elements and spectra, and the
//! normal form `Phi_n` for Frobenius two-step solvable algebras.
//!
//! The index is computed from evaluations of the commutator matrix: for a
//! functional `f`, `M_f[i][j] = f([x_i, x_j])` and `ind g = dim g - max_f rank M_f`.
//! A nonsingular `M_f` is an exact proof that `g` is Frobenius. A rank
//! deficiency seen on random samples is only probabilistic evidence, and the
//! certificate carries a Schwartz-Zippel bound on the chance that it is wrong.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactla::{self, int, rank, serde_rat, Poly, Rat, SparseMat, SparseVec};
use crate::liealg::{is_isomorphism, LieAlg, LieError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IndexError {
    #[error("functional of length {found} on an algebra of dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("at least one trial is required")]
    NoTrials,
    #[error("the functional is not Frobenius (its Kirillov form is degenerate)")]
    SingularFunctional,
    #[error("the algebra is not Frobenius")]
    NotFrobenius,
    #[error("the algebra is not two-step solvable (it is {0}-step solvable)")]
    NotTwoStep(usize),
    #[error("root vectors {0} and {1} do not commute")]
    RootBracketNonzero(usize, usize),
    #[error("odd dimension {0}")]
    OddDimension(usize),
    #[error("root-value matrix is singular")]
    SingularRootMatrix,
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// `entries[i][j]` is `[x_i, x_j]` in basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorTensor {
    pub n: usize,
    pub entries: Vec<Vec<SparseVec>>,
}

pub fn commutator_matrix(g: &LieAlg) -> CommutatorTensor {
    let n = g.dim();
    let entries = (0..n)
        .map(|i| (0..n).map(|j| g.basis_bracket(i, j).clone()).collect())
        .collect();
    CommutatorTensor { n, entries }
}

impl CommutatorTensor {
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.iter().all(SparseVec::is_empty))
    }
}

/// A linear functional, given by its values on the basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Functional {
    #[serde(serialize_with = "serde_rat::vec")]
    pub coords: Vec<Rat>,
}

impl Functional {
    pub fn new(coords: Vec<Rat>) -> Self {
        Self { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(exactla::zero_vec(dim))
    }

    /// Sum of the coordinate functionals of all root vectors.
    pub fn root_sum(g: &LieAlg) -> Self {
        let coords = (0..g.dim())
            .map(|i| if i >= g.cartan_count() { Rat::one() } else { Rat::zero() })
            .collect();
        Self::new(coords)
    }

    pub fn scaled(&self, c: &Rat) -> Self {
        Self::new(self.coords.iter().map(|x| x * c).collect())
    }

    pub fn apply(&self, v: &[Rat]) -> Rat {
        exactla::dot(&self.coords, v)
    }

    fn apply_sparse(&self, v: &SparseVec) -> Rat {
        v.iter()
            .filter(|(k, _)| !self.coords[**k].is_zero())
            .fold(Rat::zero(), |acc, (&k, x)| acc + x * &self.coords[k])
    }
}

/// The Kirillov matrix `M_f[i][j] = f([x_i, x_j])`.
pub fn eval_kirillov(t: &CommutatorTensor, f: &Functional) -> Result<SparseMat, IndexError> {
    if f.coords.len() != t.n {
        return Err(IndexError::DimensionMismatch {
            expected: t.n,
            found: f.coords.len(),
        });
    }
    let mut m = SparseMat::zeros(t.n, t.n);
    for i in 0..t.n {
        for j in i + 1..t.n {
            let v = f.apply_sparse(&t.entries[i][j]);
            if !v.is_zero() {
                m.set(j, i, -v.clone());
                m.set(i, j, v);
            }
        }
    }
    Ok(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IndexOptions {
    pub trials: usize,
    /// Random coordinates are drawn uniformly from `[-entry_bound, entry_bound]`.
    pub entry_bound: i64,
    pub seed: u64,
}

impl Default for IndexOptions {
    fn default() -> Self {
        Self {
            trials: 3,
            entry_bound: 1_000_000,
            seed: 0,
        }
    }
}

impl IndexOptions {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndexCertificate {
    pub index: usize,
    /// Functional attaining the reported rank; absent when that rank is zero.
    pub witness: Option<Functional>,
    pub trials: usize,
    pub entry_bound: i64,
    pub seed: u64,
    /// True iff `index == 0`, proven by the nonsingular `M_witness`.
    pub certified_frobenius: bool,
    /// Upper bound on the probability that the true index is smaller than
    /// reported. Zero when the index is certified or the algebra is abelian.
    pub failure_bound: f64,
}

/// Functional for trial `trial`. Each trial has its own ChaCha stream so the
/// result does not depend on evaluation order.
fn random_functional(dim: usize, opts: &IndexOptions, trial: usize) -> Functional {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(trial as u64);
    let b = opts.entry_bound.max(1);
    Functional::new((0..dim).map(|_| int(rng.random_range(-b..=b))).collect())
}

pub fn index(g: &LieAlg, opts: &IndexOptions) -> Result<IndexCertificate, IndexError> {
    if opts.trials == 0 {
        return Err(IndexError::NoTrials);
    }
    let t = commutator_matrix(g);
    let dim = g.dim();
    let (best_rank, _, witness) = (0..opts.trials)
        .into_par_iter()
        .map(|trial| {
            let f = random_functional(dim, opts, trial);
            let r = rank(&eval_kirillov(&t, &f).expect("length matches"));
            (r, trial, f)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
        .expect("trials >= 1");
    let idx = dim - best_rank;
    let failure_bound = if idx == 0 || t.is_zero() {
        0.0
    } else {
        // A nonvanishing minor has degree <= dim in the functional's
        // coordinates; each trial misses it with probability <= dim / (2B + 1).
        let per_trial = dim as f64 / (2.0 * opts.entry_bound.max(1) as f64 + 1.0);
        per_trial.min(1.0).powi(opts.trials as i32)
    };
    Ok(IndexCertificate {
        index: idx,
        witness: (best_rank > 0).then_some(witness),
        trials: opts.trials,
        entry_bound: opts.entry_bound,
        seed: opts.seed,
        certified_frobenius: idx == 0,
        failure_bound,
    })
}

/// Whether `M_f` is nonsingular.
pub fn is_frobenius_functional(g: &LieAlg, f: &Functional) -> Result<bool, IndexError> {
    let m = eval_kirillov(&commutator_matrix(g), f)?;
    Ok(rank(&m) == g.dim())
}

/// A Frobenius functional, trying the root-vector sum first and then the
/// randomized witnesses of [`index`].
pub fn frobenius_functional(
    g: &LieAlg,
    opts: &IndexOptions,
) -> Result<Option<Functional>, IndexError> {
    let structured = Functional::root_sum(g);
    if is_frobenius_functional(g, &structured)? {
        return Ok(Some(structured));
    }
    let cert = index(g, opts)?;
    Ok(cert.witness.filter(|_| cert.certified_frobenius))
}

/// The unique `p` with `f([p, x]) = f(x)` for all `x`.
pub fn principal_element(g: &LieAlg, f: &Functional) -> Result<Vec<Rat>, IndexError> {
    let m = eval_kirillov(&commutator_matrix(g), f)?;
    if rank(&m) != g.dim() {
        return Err(IndexError::SingularFunctional);
    }
    // sum_i p_i f([x_i, x_j]) = f(x_j), i.e. M^T p = f.
    Ok(exactla::solve(&m.transpose(), &f.coords)
        .expect("square system")
        .expect("nonsingular"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Spectrum {
    #[serde(serialize_with = "serde_rat::vec")]
    pub principal_element: Vec<Rat>,
    pub char_poly: Poly,
    pub multiplicity_of_0: usize,
    pub multiplicity_of_1: usize,
    pub binary: bool,
    pub residual_factor: Poly,
}

/// Characteristic polynomial of `ad(p)` for the principal element `p` of `f`.
pub fn spectrum(g: &LieAlg, f: &Functional) -> Result<Spectrum, IndexError> {
    let p = principal_element(g, f)?;
    let ad = g.ad(&p)?;
    let cp = exactla::char_poly(&ad).expect("ad is square");
    let (a, b, rest) = cp.split_binary();
    Ok(Spectrum {
        principal_element: p,
        binary: rest == Poly::one(),
        char_poly: cp,
        multiplicity_of_0: a,
        multiplicity_of_1: b,
        residual_factor: rest,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockForm {
    pub is_block: bool,
    /// `b[k][t] = alpha_t(h_k)`: rows are Cartan elements, columns root vectors.
    #[serde(serialize_with = "serde_rat::matrix")]
    pub b: Vec<Vec<Rat>>,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
}

impl BlockForm {
    pub fn matrix(&self) -> SparseMat {
        if self.b.is_empty() {
            SparseMat::zeros(0, self.col_labels.len())
        } else {
            SparseMat::from_dense(&self.b)
        }
    }
}

/// Confirms the commutator matrix is `[[0, B], [-B^T, 0]]` in the
/// Cartan-first basis and returns `B`.
pub fn block_form(g: &LieAlg) -> Result<BlockForm, IndexError> {
    let series = g.derived_series();
    if !series.is_two_step() {
        return Err(IndexError::NotTwoStep(series.k_step));
    }
    let c = g.cartan_count();
    for a in c..g.dim() {
        for b in a + 1..g.dim() {
            if !g.basis_bracket(a, b).is_empty() {
                return Err(IndexError::RootBracketNonzero(a, b));
            }
        }
    }
    let roots = g.cartan_weyl_extract()?;
    let b = (0..c)
        .map(|k| roots.iter().map(|alpha| alpha[k].clone()).collect())
        .collect();
    Ok(BlockForm {
        is_block: true,
        b,
        row_labels: g.labels()[..c].to_vec(),
        col_labels: g.labels()[c..].to_vec(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiNormalization {
    pub n: usize,
    /// Column `j` is the image of the `j`-th basis element of `Phi_n`
    /// (`d_1..d_n, e_1..e_n`) in the coordinates of `g`.
    pub change_of_basis: SparseMat,
    pub verified: bool,
}

/// Explicit isomorphism `Phi_n -> g` for a Frobenius, two-step solvable `g`:
/// `e_i` are the root vectors and `d_i` the Cartan combinations dual to
/// their roots.
pub fn normalize_to_phi(g: &LieAlg, opts: &IndexOptions) -> Result<PhiNormalization, IndexError> {
    let series = g.derived_series();
    if !series.is_two_step() {
        return Err(IndexError::NotTwoStep(series.k_step));
    }
    if frobenius_functional(g, opts)?.is_none() {
        return Err(IndexError::NotFrobenius);
    }
    let dim = g.dim();
    if dim % 2 == 1 {
        return Err(IndexError::OddDimension(dim));
    }
    let block = block_form(g)?;
    let n = dim / 2;
    if g.cartan_count() != n {
        return Err(IndexError::NotFrobenius);
    }
    let a = block.matrix();
    // rows of C = A^{-1} give d_i = sum_k C[i][k] h_k with alpha_t(d_i) = delta_it
    let c_mat = exactla::inverse(&a)
        .expect("square")
        .ok_or(IndexError::SingularRootMatrix)?;
    let mut columns: Vec<Vec<Rat>> = Vec::with_capacity(dim);
    for i in 0..n {
        let mut d = exactla::zero_vec(dim);
        for (k, slot) in d.iter_mut().enumerate().take(n) {
            *slot = c_mat.get(i, k);
        }
        columns.push(d);
    }
    for t in 0..n {
        columns.push(exactla::unit_vec(dim, n + t));
    }
    let change_of_basis = SparseMat::from_columns(dim, &columns);
    let phi = LieAlg::phi(n)?;
    let verified = is_isomorphism(&phi, g, &change_of_basis);
    Ok(PhiNormalization {
        n,
        change_of_basis,
        verified,
    })
}

/// Isomorphism `g -> h` between two algebras normalized to the same `Phi_n`.
pub fn compose_normalizations(
    from: &PhiNormalization,
    to: &PhiNormalization,
) -> Option<SparseMat> {
    if from.n != to.n {
        return None;
    }
    let inv = exactla::inverse(&from.change_of_basis).ok()??;
    to.change_of_basis.mul(&inv).ok()
}
