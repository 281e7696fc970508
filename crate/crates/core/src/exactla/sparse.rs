use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::Zero;

use super::{fmt_rat, LinAlgError, Rat};

/// Sparse vector: index -> nonzero value.
pub type SparseVec = BTreeMap<usize, Rat>;

/// Adds `coef * src` into `dst`, dropping entries that cancel.
pub(crate) fn axpy(dst: &mut SparseVec, coef: &Rat, src: &SparseVec) {
    if coef.is_zero() {
        return;
    }
    for (&k, v) in src {
        let delta = coef * v;
        match dst.get_mut(&k) {
            Some(e) => {
                *e += delta;
                if e.is_zero() {
                    dst.remove(&k);
                }
            }
            None => {
                dst.insert(k, delta);
            }
        }
    }
}

/// Row-major sparse matrix over the rationals. No stored entry is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat {
    n_rows: usize,
    n_cols: usize,
    rows: Vec<SparseVec>,
}

impl SparseMat {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_rows,
            n_cols,
            rows: vec![SparseVec::new(); n_rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::from_integer(1.into()));
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triplets; repeated positions
    /// are summed.
    pub fn from_triplets(
        n_rows: usize,
        n_cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Rat)>,
    ) -> Self {
        let mut m = Self::zeros(n_rows, n_cols);
        for (r, c, v) in triplets {
            assert!(r < n_rows && c < n_cols, "triplet ({r}, {c}) out of range");
            m.add_to(r, c, &v);
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Rat>]) -> Self {
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), n_cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n_cols, "ragged dense matrix");
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    /// Integer convenience constructor, mostly for tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Rat>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| super::int(x)).collect())
            .collect();
        Self::from_dense(&dense)
    }

    /// Matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(n_rows: usize, cols: &[Vec<Rat>]) -> Self {
        let mut m = Self::zeros(n_rows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), n_rows);
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n_rows, self.n_cols)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        self.rows[r].get(&c).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        assert!(r < self.n_rows && c < self.n_cols, "index ({r}, {c}) out of range");
        if v.is_zero() {
            self.rows[r].remove(&c);
        } else {
            self.rows[r].insert(c, v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Rat) {
        if v.is_zero() {
            return;
        }
        let row = &mut self.rows[r];
        match row.get_mut(&c) {
            Some(e) => {
                *e += v;
                if e.is_zero() {
                    row.remove(&c);
                }
            }
            None => {
                row.insert(c, v.clone());
            }
        }
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.rows[r]
    }

    pub(crate) fn into_rows(self) -> Vec<SparseVec> {
        self.rows
    }

    /// Iterates nonzero entries in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Rat)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(&c, v)| (r, c, v)))
    }

    pub fn column(&self, c: usize) -> Vec<Rat> {
        (0..self.n_rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rat>> {
        (0..self.n_rows)
            .map(|r| (0..self.n_cols).map(|c| self.get(r, c)).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n_cols, self.n_rows);
        for (r, c, v) in self.triplets() {
            t.rows[c].insert(r, v.clone());
        }
        t
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::zeros(self.n_rows, self.n_cols);
        }
        let mut m = self.clone();
        for row in &mut m.rows {
            for v in row.values_mut() {
                *v *= k;
            }
        }
        m
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinAlgError> {
        self.check_same_shape(other)?;
        let mut m = self.clone();
        for (r, row) in other.rows.iter().enumerate() {
            axpy(&mut m.rows[r], &Rat::from_integer(1.into()), row);
        }
        Ok(m)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinAlgError> {
        self.check_same_shape(other)?;
        let mut m = self.clone();
        for (r, row) in other.rows.iter().enumerate() {
            axpy(&mut m.rows[r], &Rat::from_integer((-1).into()), row);
        }
        Ok(m)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinAlgError> {
        if self.n_cols != other.n_rows {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.n_cols,
                found: other.n_rows,
            });
        }
        let mut out = Self::zeros(self.n_rows, other.n_cols);
        for (r, row) in self.rows.iter().enumerate() {
            let mut acc = SparseVec::new();
            for (&k, v) in row {
                axpy(&mut acc, v, &other.rows[k]);
            }
            out.rows[r] = acc;
        }
        Ok(out)
    }

    /// Commutator `AB - BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self, LinAlgError> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn mul_vec(&self, x: &[Rat]) -> Result<Vec<Rat>, LinAlgError> {
        if x.len() != self.n_cols {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.n_cols,
                found: x.len(),
            });
        }
        Ok(self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|(&c, _)| !x[c].is_zero())
                    .fold(Rat::zero(), |acc, (&c, v)| acc + v * &x[c])
            })
            .collect())
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square() && self.triplets().all(|(r, c, v)| self.get(c, r) == -v)
    }

    /// Positions holding a nonzero entry.
    pub fn support(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.triplets().map(|(r, c, _)| (r, c))
    }

    /// One `row col value` line per nonzero entry (0-based indices), preceded
    /// by a `rows cols nnz` header line.
    pub fn to_triplet_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.n_rows, self.n_cols, self.nnz());
        for (r, c, v) in self.triplets() {
            let _ = writeln!(s, "{r} {c} {}", fmt_rat(v));
        }
        s
    }

    pub fn from_triplet_text(text: &str) -> Result<Self, LinAlgError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let bad = |l: &str| LinAlgError::ParseRational(l.to_string());
        let header = lines.next().ok_or_else(|| bad(""))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad(header)))
            .collect::<Result<_, _>>()?;
        if dims.len() != 3 {
            return Err(bad(header));
        }
        let mut m = Self::zeros(dims[0], dims[1]);
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(bad(line));
            }
            let r: usize = parts[0].parse().map_err(|_| bad(line))?;
            let c: usize = parts[1].parse().map_err(|_| bad(line))?;
            if r >= m.n_rows || c >= m.n_cols {
                return Err(bad(line));
            }
            m.set(r, c, super::parse_rat(parts[2])?);
        }
        Ok(m)
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), LinAlgError> {
        if self.shape() != other.shape() {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.n_rows * self.n_cols,
                found: other.n_rows * other.n_cols,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int;

    #[test]
    fn set_zero_removes_entry() {
        let mut m = SparseMat::zeros(2, 2);
        m.set(0, 1, int(3));
        assert_eq!(m.nnz(), 1);
        m.add_to(0, 1, &int(-3));
        assert_eq!(m.nnz(), 0);
        m.set(1, 1, int(2));
        m.set(1, 1, int(0));
        assert!(m.is_zero());
    }

    #[test]
    fn product_and_commutator() {
        let a = SparseMat::from_i64(&[&[0, 1], &[0, 0]]);
        let b = SparseMat::from_i64(&[&[0, 0], &[1, 0]]);
        let c = a.commutator(&b).unwrap();
        assert_eq!(c, SparseMat::from_i64(&[&[1, 0], &[0, -1]]));
        assert!(a.mul(&SparseMat::zeros(3, 3)).is_err());
    }

    #[test]
    fn triplet_text_round_trip() {
        let m = SparseMat::from_dense(&[
            vec![int(0), crate::exactla::ratio(-1, 2)],
            vec![int(4), int(0)],
        ]);
        let text = m.to_triplet_text();
        assert_eq!(text, "2 2 2\n0 1 -1/2\n1 0 4\n");
        assert_eq!(SparseMat::from_triplet_text(&text).unwrap(), m);
    }
}
