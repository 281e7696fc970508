//! Lie poset algebras as structure-constant algebras with an optional sparse
//! matrix realization.
//!
//! Bases are always Cartan-first: the first `cartan_count` elements span the
//! diagonal part, the rest are root vectors. With this order the commutator
//! matrix of a two-step solvable algebra has the off-diagonal block shape
//! used by [`crate::indexfrob::block_form`].

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactla::{
    self, fmt_rat, int, is_zero_vec, rref, Rat, Rref, SparseMat, SparseVec,
};
use crate::poset::{Family, FamilyReport, Poset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Full diagonal Cartan, ambient `gl(N)`.
    #[default]
    Gl,
    /// Trace-zero Cartan, ambient `sl(N)`.
    Sl,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Gl => "gl",
            Variant::Sl => "sl",
        })
    }
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gl" => Ok(Variant::Gl),
            "sl" => Ok(Variant::Sl),
            other => Err(format!("unknown variant {other:?} (expected gl or sl)")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("poset violates the family axioms: {0:?}")]
    FamilyAxioms(FamilyReport),
    #[error("commutator of basis elements {0} and {1} leaves the span of the basis")]
    NotClosed(usize, usize),
    #[error("basis matrices are linearly dependent")]
    DependentBasis,
    #[error("basis element {0} is not a simultaneous eigenvector of the Cartan elements")]
    NotCartanWeyl(usize),
    #[error("Cartan elements {0} and {1} do not commute")]
    CartanNotAbelian(usize, usize),
    #[error("structure constants are not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("vector of length {found} where {expected} was expected")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("Phi_n needs n >= 1")]
    ZeroRank,
    #[error("change of basis is singular")]
    SingularChange,
}

/// A finite-dimensional Lie algebra in a fixed ordered basis.
#[derive(Clone, Debug)]
pub struct LieAlg {
    labels: Vec<String>,
    /// `brackets[i][j]` holds the coordinates of `[x_i, x_j]`.
    brackets: Vec<Vec<SparseVec>>,
    realization: Option<Realization>,
    cartan_count: usize,
    /// `roots[t]` is `(alpha_t(h_1), ..., alpha_t(h_c))` for the `t`-th root
    /// vector, i.e. basis element `cartan_count + t`.
    roots: Vec<Vec<Rat>>,
}

/// Matrices realizing the basis, with row/column labels.
#[derive(Clone, Debug)]
pub struct Realization {
    pub index_labels: Vec<i32>,
    pub matrices: Vec<SparseMat>,
    /// The bilinear form `S` with `X^T S + S X = 0` for families B, C, D.
    pub form: Option<SparseMat>,
}

/// A subspace of coordinate space, stored as reduced echelon rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient_dim: usize,
    pub basis: Vec<Vec<Rat>>,
}

impl Subspace {
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rat>]) -> Self {
        let m = SparseMat::from_dense_or_empty(ambient_dim, vectors);
        Self {
            ambient_dim,
            basis: rref(&m).rows_dense(),
        }
    }

    pub fn whole(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: (0..ambient_dim).map(|i| exactla::unit_vec(ambient_dim, i)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        let m = SparseMat::from_dense_or_empty(self.ambient_dim, &self.basis);
        rref(&m).coordinates(v).is_some()
    }
}

impl SparseMat {
    fn from_dense_or_empty(n_cols: usize, rows: &[Vec<Rat>]) -> SparseMat {
        if rows.is_empty() {
            SparseMat::zeros(0, n_cols)
        } else {
            SparseMat::from_dense(rows)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedSeries {
    /// `g^0 = g, g^1 = [g, g], ...` ending with the zero subspace.
    #[serde(skip)]
    pub terms: Vec<Subspace>,
    pub dims: Vec<usize>,
    /// Least `k` with `g^k != 0` and `g^{k+1} = 0` (0 for abelian algebras).
    pub derived_length: usize,
    /// `derived_length + 1`.
    pub k_step: usize,
}

impl DerivedSeries {
    pub fn is_two_step(&self) -> bool {
        self.k_step == 2
    }
}

/// Coordinates of vectors with respect to a fixed independent family,
/// computed from one elimination of `[B | I]`.
struct SpanCoords {
    ambient: usize,
    count: usize,
    rref: Rref,
}

impl SpanCoords {
    fn new(ambient: usize, vectors: &[SparseVec]) -> Result<Self, LieError> {
        let count = vectors.len();
        let mut m = SparseMat::zeros(count, ambient + count);
        for (i, v) in vectors.iter().enumerate() {
            for (&k, x) in v {
                m.set(i, k, x.clone());
            }
            m.set(i, ambient + i, Rat::one());
        }
        let rref = rref(&m);
        if rref.pivots.iter().any(|(c, _)| *c >= ambient) {
            return Err(LieError::DependentBasis);
        }
        Ok(Self {
            ambient,
            count,
            rref,
        })
    }

    fn coords(&self, v: &SparseVec) -> Option<SparseVec> {
        let mut dense = exactla::zero_vec(self.ambient + self.count);
        for (&k, x) in v {
            dense[k] = x.clone();
        }
        let reduced = self.rref.reduce(&dense);
        if !reduced[..self.ambient].iter().all(Zero::is_zero) {
            return None;
        }
        // v = sum_k v[p_k] r_k and r_k = sum_i T[k][i] b_i, so the
        // coordinates are -(reduced tail), as reduce() subtracted them.
        let mut out = SparseVec::new();
        for (i, x) in reduced[self.ambient..].iter().enumerate() {
            if !x.is_zero() {
                out.insert(i, -x.clone());
            }
        }
        Some(out)
    }
}

fn flatten(m: &SparseMat) -> SparseVec {
    let n = m.n_cols();
    m.triplets().map(|(r, c, v)| (r * n + c, v.clone())).collect()
}

fn unit_matrix(n: usize, r: usize, c: usize) -> SparseMat {
    SparseMat::from_triplets(n, n, [(r, c, Rat::one())])
}

impl LieAlg {
    /// The Lie poset algebra generated by `poset`. `variant` only matters for
    /// family A.
    pub fn build(poset: &Poset, variant: Variant) -> Result<Self, LieError> {
        let report = poset.validate_family();
        if !report.is_ok() {
            return Err(LieError::FamilyAxioms(report));
        }
        match poset.family() {
            Family::A => Self::build_type_a(poset, variant),
            _ => Self::build_classical(poset),
        }
    }

    fn build_type_a(poset: &Poset, variant: Variant) -> Result<Self, LieError> {
        let n = poset.len();
        let mut labels = Vec::new();
        let mut mats = Vec::new();
        match variant {
            Variant::Gl => {
                for i in 0..n {
                    labels.push(format!("e{},{}", i + 1, i + 1));
                    mats.push(unit_matrix(n, i, i));
                }
            }
            Variant::Sl => {
                for i in 0..n.saturating_sub(1) {
                    labels.push(format!("h{}", i + 1));
                    let mut m = unit_matrix(n, i, i);
                    m.set(i + 1, i + 1, -Rat::one());
                    mats.push(m);
                }
            }
        }
        let cartan_count = mats.len();
        for &(i, j) in poset.relation() {
            labels.push(format!("e{i},{j}"));
            mats.push(unit_matrix(n, i as usize - 1, j as usize - 1));
        }
        let realization = Realization {
            index_labels: poset.elements().to_vec(),
            matrices: mats,
            form: None,
        };
        Self::from_realization(labels, realization, cartan_count)
    }

    fn build_classical(poset: &Poset) -> Result<Self, LieError> {
        let family = poset.family();
        let elems = poset.elements().to_vec();
        let size = elems.len();
        let idx: BTreeMap<i32, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let rank = elems.iter().filter(|&&e| e > 0).count() as i32;

        let mut form = SparseMat::zeros(size, size);
        for &e in &elems {
            let v = match (family, e) {
                (Family::C, e) => int(e.signum() as i64),
                _ => Rat::one(),
            };
            form.set(idx[&e], idx[&-e], v);
        }

        let in_ambient = |x: &SparseMat| -> bool {
            let lhs = x.transpose().mul(&form).expect("square");
            let rhs = form.mul(x).expect("square");
            lhs.add(&rhs).expect("same shape").is_zero()
        };

        let mut labels = Vec::new();
        let mut mats = Vec::new();
        for i in 1..=rank {
            labels.push(format!("h{i}"));
            let mut m = unit_matrix(size, idx[&i], idx[&-i]);
            m.set(idx[&i], idx[&-i], Rat::zero());
            m.set(idx[&i], idx[&i], Rat::one());
            m.set(idx[&-i], idx[&-i], -Rat::one());
            mats.push(m);
        }
        let cartan_count = mats.len();

        let mut reps: Vec<(i32, i32)> = poset
            .relation()
            .iter()
            .map(|&(i, j)| if i <= -j { (i, j) } else { (-j, -i) })
            .collect();
        reps.sort();
        reps.dedup();
        for (i, j) in reps {
            let base = unit_matrix(size, idx[&i], idx[&j]);
            let m = if i == -j {
                base
            } else {
                let mirror = unit_matrix(size, idx[&-j], idx[&-i]);
                let minus = base.sub(&mirror).expect("same shape");
                let plus = base.add(&mirror).expect("same shape");
                if in_ambient(&minus) {
                    minus
                } else {
                    plus
                }
            };
            if !in_ambient(&m) {
                return Err(LieError::NotClosed(mats.len(), mats.len()));
            }
            labels.push(if i == -j {
                format!("E[{i},{j}]")
            } else {
                format!("E[{i},{j}|{},{}]", -j, -i)
            });
            mats.push(m);
        }
        let realization = Realization {
            index_labels: elems,
            matrices: mats,
            form: Some(form),
        };
        Self::from_realization(labels, realization, cartan_count)
    }

    /// Builds structure constants from a matrix realization. Fails if the
    /// span is not closed under commutators.
    pub fn from_realization(
        labels: Vec<String>,
        realization: Realization,
        cartan_count: usize,
    ) -> Result<Self, LieError> {
        let mats = &realization.matrices;
        let dim = mats.len();
        let ambient = realization.index_labels.len().pow(2);
        let flat: Vec<SparseVec> = mats.iter().map(flatten).collect();
        let coords = SpanCoords::new(ambient, &flat)?;
        let mut brackets = vec![vec![SparseVec::new(); dim]; dim];
        for i in 0..dim {
            for j in i + 1..dim {
                let c = mats[i].commutator(&mats[j]).expect("same shape");
                let v = coords
                    .coords(&flatten(&c))
                    .ok_or(LieError::NotClosed(i, j))?;
                brackets[j][i] = negate(&v);
                brackets[i][j] = v;
            }
        }
        let mut g = Self {
            labels,
            brackets,
            realization: Some(realization),
            cartan_count,
            roots: Vec::new(),
        };
        g.roots = g.cartan_weyl_extract()?;
        Ok(g)
    }

    /// Builds an algebra from structure constants `brackets[i][j] = [x_i, x_j]`.
    pub fn from_structure(
        labels: Vec<String>,
        brackets: Vec<Vec<SparseVec>>,
        cartan_count: usize,
    ) -> Result<Self, LieError> {
        let dim = labels.len();
        if brackets.len() != dim || brackets.iter().any(|r| r.len() != dim) {
            return Err(LieError::DimensionMismatch {
                expected: dim,
                found: brackets.len(),
            });
        }
        for i in 0..dim {
            for j in 0..dim {
                if brackets[i][j] != negate(&brackets[j][i]) {
                    return Err(LieError::NotAntisymmetric(i, j));
                }
            }
        }
        let mut g = Self {
            labels,
            brackets,
            realization: None,
            cartan_count,
            roots: Vec::new(),
        };
        g.roots = g.cartan_weyl_extract()?;
        Ok(g)
    }

    /// `Phi_n`: basis `d_1..d_n, e_1..e_n` with `[d_i, e_i] = e_i` the only
    /// nonzero brackets.
    pub fn phi(n: usize) -> Result<Self, LieError> {
        if n == 0 {
            return Err(LieError::ZeroRank);
        }
        let dim = 2 * n;
        let mut labels: Vec<String> = (1..=n).map(|i| format!("d{i}")).collect();
        labels.extend((1..=n).map(|i| format!("e{i}")));
        let mut brackets = vec![vec![SparseVec::new(); dim]; dim];
        for i in 0..n {
            brackets[i][n + i].insert(n + i, Rat::one());
            brackets[n + i][i].insert(n + i, -Rat::one());
        }
        Self::from_structure(labels, brackets, n)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn cartan_count(&self) -> usize {
        self.cartan_count
    }

    pub fn root_count(&self) -> usize {
        self.dim() - self.cartan_count
    }

    pub fn roots(&self) -> &[Vec<Rat>] {
        &self.roots
    }

    pub fn realization(&self) -> Option<&Realization> {
        self.realization.as_ref()
    }

    /// Coordinates of `[x_i, x_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &SparseVec {
        &self.brackets[i][j]
    }

    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Result<Vec<Rat>, LieError> {
        let dim = self.dim();
        for v in [x, y] {
            if v.len() != dim {
                return Err(LieError::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
        }
        let mut out = exactla::zero_vec(dim);
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let coef = xi * yj;
                for (&k, c) in &self.brackets[i][j] {
                    out[k] += &coef * c;
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `ad(x)`: column `j` holds `[x, x_j]`.
    pub fn ad(&self, x: &[Rat]) -> Result<SparseMat, LieError> {
        let dim = self.dim();
        let mut m = SparseMat::zeros(dim, dim);
        for j in 0..dim {
            let col = self.bracket(x, &exactla::unit_vec(dim, j))?;
            for (k, v) in col.into_iter().enumerate() {
                m.set(k, j, v);
            }
        }
        Ok(m)
    }

    /// Checks the Jacobi identity on all basis triples; returns the first
    /// failing triple.
    pub fn check_jacobi(&self) -> Result<(), (usize, usize, usize)> {
        let dim = self.dim();
        let br = |i: usize, v: &SparseVec| -> SparseVec {
            let mut out = SparseVec::new();
            for (&k, c) in v {
                exactla_axpy(&mut out, c, &self.brackets[i][k]);
            }
            out
        };
        for i in 0..dim {
            for j in i + 1..dim {
                for k in j + 1..dim {
                    let mut total = br(i, &self.brackets[j][k]);
                    exactla_axpy(&mut total, &Rat::one(), &br(j, &self.brackets[k][i]));
                    exactla_axpy(&mut total, &Rat::one(), &br(k, &self.brackets[i][j]));
                    if !total.is_empty() {
                        return Err((i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// Re-checks that the realization's commutators agree with the structure
    /// constants.
    pub fn check_realization(&self) -> bool {
        let Some(r) = &self.realization else {
            return true;
        };
        let mats = &r.matrices;
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                let c = mats[i].commutator(&mats[j]).expect("same shape");
                let n = c.n_rows();
                let mut expect = SparseMat::zeros(n, n);
                for (&k, v) in &self.brackets[i][j] {
                    expect = expect.add(&mats[k].scale(v)).expect("same shape");
                }
                if c != expect {
                    return false;
                }
            }
        }
        true
    }

    /// Whether every basis matrix satisfies `X^T S + S X = 0`.
    pub fn realization_in_ambient(&self) -> bool {
        let Some(r) = &self.realization else {
            return true;
        };
        let Some(s) = &r.form else {
            return true;
        };
        r.matrices.iter().all(|x| {
            let lhs = x.transpose().mul(s).expect("square");
            lhs.add(&s.mul(x).expect("square")).expect("same shape").is_zero()
        })
    }

    /// Union of the supports of the basis matrices, as a `*`/`0` grid in the
    /// realization's index order.
    pub fn sparsity_pattern(&self) -> Option<Vec<Vec<bool>>> {
        let r = self.realization.as_ref()?;
        let n = r.index_labels.len();
        let mut grid = vec![vec![false; n]; n];
        for m in &r.matrices {
            for (a, b) in m.support() {
                grid[a][b] = true;
            }
        }
        Some(grid)
    }

    /// For each root vector, the eigenvalues of `ad(h_k)`; fails if some
    /// root vector is not a simultaneous eigenvector.
    pub fn cartan_weyl_extract(&self) -> Result<Vec<Vec<Rat>>, LieError> {
        let c = self.cartan_count;
        for a in 0..c {
            for b in a + 1..c {
                if !self.brackets[a][b].is_empty() {
                    return Err(LieError::CartanNotAbelian(a, b));
                }
            }
        }
        (c..self.dim())
            .map(|t| {
                (0..c)
                    .map(|k| {
                        let v = &self.brackets[k][t];
                        match v.len() {
                            0 => Ok(Rat::zero()),
                            1 if v.contains_key(&t) => Ok(v[&t].clone()),
                            _ => Err(LieError::NotCartanWeyl(t)),
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn derived_series(&self) -> DerivedSeries {
        let dim = self.dim();
        let mut terms = vec![Subspace::whole(dim)];
        loop {
            let last = terms.last().expect("series starts non-empty");
            if last.is_zero() {
                break;
            }
            let b = &last.basis;
            let mut gens = Vec::new();
            for i in 0..b.len() {
                for j in i + 1..b.len() {
                    let v = self.bracket(&b[i], &b[j]).expect("basis vectors have length dim");
                    if !is_zero_vec(&v) {
                        gens.push(v);
                    }
                }
            }
            let next = Subspace::span(dim, &gens);
            if next.dim() == last.dim() {
                // perfect algebra; cannot happen for solvable input
                break;
            }
            terms.push(next);
        }
        let dims: Vec<usize> = terms.iter().map(Subspace::dim).collect();
        let nonzero = dims.iter().filter(|&&d| d > 0).count();
        let derived_length = nonzero.saturating_sub(1);
        DerivedSeries {
            terms,
            dims,
            derived_length,
            k_step: derived_length + 1,
        }
    }

    /// `{x : [x, b] = 0 for every basis element b}`.
    pub fn center(&self) -> Subspace {
        let dim = self.dim();
        let mut m = SparseMat::zeros(dim * dim, dim);
        for i in 0..dim {
            for b in 0..dim {
                for (&k, c) in &self.brackets[i][b] {
                    m.set(b * dim + k, i, c.clone());
                }
            }
        }
        Subspace::span(dim, &exactla::kernel_basis(&m))
    }

    /// The same algebra in the basis `y_j = sum_i basis[j][i] x_i`.
    pub fn change_basis(
        &self,
        basis: &[Vec<Rat>],
        labels: Vec<String>,
        cartan_count: usize,
    ) -> Result<Self, LieError> {
        let dim = self.dim();
        if basis.len() != dim || labels.len() != dim {
            return Err(LieError::DimensionMismatch {
                expected: dim,
                found: basis.len(),
            });
        }
        let p = SparseMat::from_columns(dim, basis);
        let p_inv = exactla::inverse(&p)
            .expect("square")
            .ok_or(LieError::SingularChange)?;
        let mut brackets = vec![vec![SparseVec::new(); dim]; dim];
        for i in 0..dim {
            for j in i + 1..dim {
                let v = self.bracket(&basis[i], &basis[j])?;
                let w = p_inv.mul_vec(&v).expect("square");
                let sv: SparseVec = w
                    .into_iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .collect();
                brackets[j][i] = negate(&sv);
                brackets[i][j] = sv;
            }
        }
        Self::from_structure(labels, brackets, cartan_count)
    }

    /// Same algebra, basis reordered so that new element `k` is old element
    /// `perm[k]`. The result carries no Cartan data.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, LieError> {
        let dim = self.dim();
        let basis: Vec<Vec<Rat>> = perm.iter().map(|&p| exactla::unit_vec(dim, p)).collect();
        let labels = perm.iter().map(|&p| self.labels[p].clone()).collect();
        self.change_basis(&basis, labels, 0)
    }

    /// Whether two algebras have literally the same structure constants.
    pub fn same_structure(&self, other: &Self) -> bool {
        self.brackets == other.brackets
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.iter().all(|row| row.iter().all(BTreeMap::is_empty))
    }

    /// Serializable form for `--dump-algebra`.
    pub fn dump(&self) -> AlgebraDump {
        let mut structure = Vec::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                for (&k, c) in &self.brackets[i][j] {
                    structure.push((i, j, k, fmt_rat(c)));
                }
            }
        }
        AlgebraDump {
            labels: self.labels.clone(),
            cartan_count: self.cartan_count,
            structure,
            roots: self
                .roots
                .iter()
                .map(|r| r.iter().map(fmt_rat).collect())
                .collect(),
        }
    }
}

/// Basis labels and nonzero structure constants `[x_i, x_j] = c x_k` for
/// `i < j`, with rationals written as `p` or `p/q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraDump {
    pub labels: Vec<String>,
    pub cartan_count: usize,
    pub structure: Vec<(usize, usize, usize, String)>,
    pub roots: Vec<Vec<String>>,
}

/// Whether `map` (columns = images of the source basis in target
/// coordinates) is a Lie algebra homomorphism.
pub fn is_homomorphism(src: &LieAlg, dst: &LieAlg, map: &SparseMat) -> bool {
    if map.shape() != (dst.dim(), src.dim()) {
        return false;
    }
    let images: Vec<Vec<Rat>> = (0..src.dim()).map(|j| map.column(j)).collect();
    for i in 0..src.dim() {
        for j in i + 1..src.dim() {
            let mut lhs_src = exactla::zero_vec(src.dim());
            for (&k, c) in src.basis_bracket(i, j) {
                lhs_src[k] = c.clone();
            }
            let lhs = map.mul_vec(&lhs_src).expect("shape checked");
            let rhs = dst.bracket(&images[i], &images[j]).expect("shape checked");
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Homomorphism with an invertible matrix.
pub fn is_isomorphism(src: &LieAlg, dst: &LieAlg, map: &SparseMat) -> bool {
    src.dim() == dst.dim()
        && exactla::rank(map) == src.dim()
        && is_homomorphism(src, dst, map)
}

fn negate(v: &SparseVec) -> SparseVec {
    v.iter().map(|(&k, x)| (k, -x.clone())).collect()
}

fn exactla_axpy(dst: &mut SparseVec, coef: &Rat, src: &SparseVec) {
    for (&k, v) in src {
        let e = dst.entry(k).or_insert_with(Rat::zero);
        *e += coef * v;
        if e.is_zero() {
            dst.remove(&k);
        }
    }
}
