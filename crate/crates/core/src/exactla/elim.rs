//! Sparse Gaussian elimination over the rationals.
//!
//! Columns are eliminated left to right; within a column the pivot is the
//! candidate row with the fewest nonzeros (ties broken by entry height, then
//! row id). Coboundary matrices are very sparse, and this row choice keeps
//! fill-in low without the bookkeeping of a full Markowitz search.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::sparse::axpy;
use super::{bit_size, LinAlgError, Poly, Rat, SparseMat, SparseVec};

struct Echelon {
    /// `(pivot column, row)`; rows are normalized so the pivot entry is 1.
    pivots: Vec<(usize, SparseVec)>,
    /// Product of the pivot entries before normalization.
    pivot_product: Rat,
    /// Sign of the row permutation that orders the pivot rows.
    sign: i8,
}

fn echelon(rows: Vec<SparseVec>, n_cols: usize, reduce: bool) -> Echelon {
    let n_rows = rows.len();
    let mut rows = rows;
    let mut col_index: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n_cols];
    for (r, row) in rows.iter().enumerate() {
        for &c in row.keys() {
            col_index[c].insert(r);
        }
    }

    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut pivot_product = Rat::one();
    for c in 0..n_cols {
        let Some(p) = col_index[c]
            .iter()
            .copied()
            .min_by_key(|&r| (rows[r].len(), bit_size(&rows[r][&c]), r))
        else {
            continue;
        };
        let others: Vec<usize> = col_index[c].iter().copied().filter(|&r| r != p).collect();
        let mut prow = std::mem::take(&mut rows[p]);
        for &k in prow.keys() {
            col_index[k].remove(&p);
        }
        let pv = prow[&c].clone();
        let inv = pv.recip();
        for v in prow.values_mut() {
            *v *= &inv;
        }
        pivot_product *= pv;

        for r in others {
            let coef = -rows[r][&c].clone();
            let row = &mut rows[r];
            for (&k, v) in &prow {
                let delta = &coef * v;
                match row.get_mut(&k) {
                    Some(e) => {
                        *e += delta;
                        if e.is_zero() {
                            row.remove(&k);
                            col_index[k].remove(&r);
                        }
                    }
                    None => {
                        row.insert(k, delta);
                        col_index[k].insert(r);
                    }
                }
            }
        }
        rows[p] = prow;
        pivots.push((c, p));
    }

    // Sign of the permutation sending pivot slot i to row pivots[i].1, with
    // zero rows (if any) appended in their original order.
    let mut order: Vec<usize> = pivots.iter().map(|&(_, r)| r).collect();
    let used: BTreeSet<usize> = order.iter().copied().collect();
    order.extend((0..n_rows).filter(|r| !used.contains(r)));
    let sign = permutation_sign(&order);

    let mut out: Vec<(usize, SparseVec)> = pivots
        .into_iter()
        .map(|(c, r)| (c, std::mem::take(&mut rows[r])))
        .collect();

    if reduce {
        for i in (0..out.len()).rev() {
            let (ci, ri) = {
                let (c, r) = &out[i];
                (*c, r.clone())
            };
            for (_, row) in out.iter_mut().take(i) {
                if let Some(v) = row.get(&ci).cloned() {
                    axpy(row, &-v, &ri);
                }
            }
        }
    }

    Echelon {
        pivots: out,
        pivot_product,
        sign,
    }
}

fn permutation_sign(order: &[usize]) -> i8 {
    let mut seen = vec![false; order.len()];
    let mut sign = 1i8;
    for start in 0..order.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = order[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Reduced row echelon form of a matrix: the nonzero rows only.
#[derive(Clone, Debug)]
pub struct Rref {
    pub n_cols: usize,
    /// `(pivot column, row)` sorted by pivot column; each row has a 1 in its
    /// pivot column and zeros in every other pivot column.
    pub pivots: Vec<(usize, SparseVec)>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_cols(&self) -> Vec<usize> {
        self.pivots.iter().map(|(c, _)| *c).collect()
    }

    pub fn free_cols(&self) -> Vec<usize> {
        let piv: BTreeSet<usize> = self.pivots.iter().map(|(c, _)| *c).collect();
        (0..self.n_cols).filter(|c| !piv.contains(c)).collect()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        self.free_cols()
            .into_iter()
            .map(|f| {
                let mut v = vec![Rat::zero(); self.n_cols];
                v[f] = Rat::one();
                for (c, row) in &self.pivots {
                    if let Some(x) = row.get(&f) {
                        v[*c] = -x.clone();
                    }
                }
                v
            })
            .collect()
    }

    /// Dense copies of the nonzero rows.
    pub fn rows_dense(&self) -> Vec<Vec<Rat>> {
        self.pivots
            .iter()
            .map(|(_, row)| {
                let mut v = vec![Rat::zero(); self.n_cols];
                for (&k, x) in row {
                    v[k] = x.clone();
                }
                v
            })
            .collect()
    }

    /// Reduces `v` against the rows; the result is zero iff `v` lies in the
    /// row space.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut out = v.to_vec();
        for (c, row) in &self.pivots {
            let coef = out[*c].clone();
            if coef.is_zero() {
                continue;
            }
            for (&k, x) in row {
                out[k] -= &coef * x;
            }
        }
        out
    }

    /// Coordinates of `v` with respect to the rows, if `v` is in their span.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let coords: Vec<Rat> = self.pivots.iter().map(|(c, _)| v[*c].clone()).collect();
        self.reduce(v).iter().all(Zero::is_zero).then_some(coords)
    }
}

pub fn rref(m: &SparseMat) -> Rref {
    let n_cols = m.n_cols();
    let e = echelon(m.clone().into_rows(), n_cols, true);
    Rref {
        n_cols,
        pivots: e.pivots,
    }
}

/// Exact rank over the rationals.
pub fn rank(m: &SparseMat) -> usize {
    // Eliminating along the shorter dimension keeps the pivot search small.
    let src = if m.n_rows() > m.n_cols() {
        m.transpose()
    } else {
        m.clone()
    };
    let n_cols = src.n_cols();
    echelon(src.into_rows(), n_cols, false).pivots.len()
}

/// Basis of the right null space `{v : Mv = 0}`.
pub fn kernel_basis(m: &SparseMat) -> Vec<Vec<Rat>> {
    rref(m).kernel_basis()
}

/// Some `x` with `Ax = b`, or `None` if the system is inconsistent.
pub fn solve(a: &SparseMat, b: &[Rat]) -> Result<Option<Vec<Rat>>, LinAlgError> {
    if b.len() != a.n_rows() {
        return Err(LinAlgError::DimensionMismatch {
            expected: a.n_rows(),
            found: b.len(),
        });
    }
    let n = a.n_cols();
    let rows: Vec<SparseVec> = (0..a.n_rows())
        .map(|r| {
            let mut row = a.row(r).clone();
            if !b[r].is_zero() {
                row.insert(n, b[r].clone());
            }
            row
        })
        .collect();
    let e = echelon(rows, n + 1, true);
    if e.pivots.iter().any(|(c, _)| *c == n) {
        return Ok(None);
    }
    let mut x = vec![Rat::zero(); n];
    for (c, row) in &e.pivots {
        if let Some(v) = row.get(&n) {
            x[*c] = v.clone();
        }
    }
    Ok(Some(x))
}

pub fn determinant(m: &SparseMat) -> Result<Rat, LinAlgError> {
    if !m.is_square() {
        return Err(LinAlgError::NotSquare {
            rows: m.n_rows(),
            cols: m.n_cols(),
        });
    }
    let n = m.n_cols();
    let e = echelon(m.clone().into_rows(), n, false);
    if e.pivots.len() < n {
        return Ok(Rat::zero());
    }
    let det = e.pivot_product;
    Ok(if e.sign < 0 { -det } else { det })
}

/// Inverse of a square matrix, or `None` if it is singular.
pub fn inverse(m: &SparseMat) -> Result<Option<SparseMat>, LinAlgError> {
    if !m.is_square() {
        return Err(LinAlgError::NotSquare {
            rows: m.n_rows(),
            cols: m.n_cols(),
        });
    }
    let n = m.n_cols();
    if n == 0 {
        return Ok(Some(SparseMat::zeros(0, 0)));
    }
    let rows: Vec<SparseVec> = (0..n)
        .map(|r| {
            let mut row = m.row(r).clone();
            row.insert(n + r, Rat::one());
            row
        })
        .collect();
    let e = echelon(rows, 2 * n, true);
    if e.pivots.len() < n || e.pivots[n - 1].0 >= n {
        return Ok(None);
    }
    let mut inv = SparseMat::zeros(n, n);
    for (c, row) in &e.pivots {
        for (&k, v) in row.range(n..) {
            inv.set(*c, k - n, v.clone());
        }
    }
    Ok(Some(inv))
}

/// `det(xI - M)`, via similarity reduction to upper Hessenberg form followed
/// by the standard three-term recurrence on leading principal minors.
pub fn char_poly(m: &SparseMat) -> Result<Poly, LinAlgError> {
    if !m.is_square() {
        return Err(LinAlgError::NotSquare {
            rows: m.n_rows(),
            cols: m.n_cols(),
        });
    }
    let n = m.n_rows();
    let mut h = m.to_dense();

    for col in 0..n.saturating_sub(2) {
        let Some(piv) = (col + 1..n).find(|&i| !h[i][col].is_zero()) else {
            continue;
        };
        if piv != col + 1 {
            h.swap(piv, col + 1);
            for row in h.iter_mut() {
                row.swap(piv, col + 1);
            }
        }
        let t = h[col + 1][col].clone();
        for i in col + 2..n {
            if h[i][col].is_zero() {
                continue;
            }
            let u = &h[i][col] / &t;
            for j in 0..n {
                let d = &u * &h[col + 1][j];
                h[i][j] -= d;
            }
            for row in h.iter_mut() {
                let d = &u * &row[i];
                row[col + 1] += d;
            }
        }
    }

    // p[k] = characteristic polynomial of the leading k x k block.
    let mut p: Vec<Poly> = vec![Poly::one()];
    for k in 1..=n {
        let mut next = p[k - 1].mul(&Poly::x()).sub(&p[k - 1].scale(&h[k - 1][k - 1]));
        let mut t = Rat::one();
        for i in (1..k).rev() {
            t *= &h[i][i - 1];
            if t.is_zero() {
                break;
            }
            let coef = &h[i - 1][k - 1] * &t;
            next = next.sub(&p[i - 1].scale(&coef));
        }
        p.push(next);
    }
    Ok(p.pop().expect("p is never empty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{int, ratio};

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMat::identity(3)), 3);
        let m = SparseMat::from_i64(&[
            &[0, 1, 0, 0],
            &[-1, 0, 0, 0],
            &[0, 0, 0, 1],
            &[0, 0, -1, 0],
        ]);
        assert_eq!(rank(&m), 4);
        assert_eq!(rank(&SparseMat::zeros(3, 5)), 0);
        assert_eq!(rank(&SparseMat::from_i64(&[&[1, 2], &[2, 4], &[3, 6]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&SparseMat::zeros(2, 3)).len(), 3);
        assert!(kernel_basis(&SparseMat::identity(3)).is_empty());
        let m = SparseMat::from_i64(&[&[1, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let k = kernel_basis(&m);
        assert_eq!(k, vec![vec![int(-1), int(1), int(0)], vec![int(0), int(0), int(1)]]);
    }

    #[test]
    fn solve_examples() {
        let b = vec![int(3), ratio(1, 2)];
        assert_eq!(solve(&SparseMat::identity(2), &b).unwrap(), Some(b.clone()));
        let nil = SparseMat::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(solve(&nil, &[int(0), int(1)]).unwrap(), None);
        let diag = SparseMat::from_i64(&[&[2, 0], &[0, 3]]);
        assert_eq!(
            solve(&diag, &[int(1), int(1)]).unwrap(),
            Some(vec![ratio(1, 2), ratio(1, 3)])
        );
        assert!(solve(&diag, &[int(1)]).is_err());
    }

    #[test]
    fn determinant_tracks_row_swaps() {
        let m = SparseMat::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(&m).unwrap(), int(-1));
        let m = SparseMat::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(determinant(&m).unwrap(), int(18));
        assert!(determinant(&SparseMat::zeros(2, 3)).is_err());
    }

    #[test]
    fn inverse_of_small_matrix() {
        let m = SparseMat::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&m).unwrap().unwrap();
        assert_eq!(inv, SparseMat::from_i64(&[&[1, -1], &[-1, 2]]));
        assert_eq!(inverse(&SparseMat::from_i64(&[&[1, 2], &[2, 4]])).unwrap(), None);
    }

    #[test]
    fn char_poly_examples() {
        let p = char_poly(&SparseMat::zeros(3, 3)).unwrap();
        assert_eq!(p, Poly::monomial(3));
        let p = char_poly(&SparseMat::from_i64(&[&[0, 1], &[0, 0]])).unwrap();
        assert_eq!(p, Poly::monomial(2));
        assert!(char_poly(&SparseMat::zeros(2, 3)).is_err());
    }

    #[test]
    fn rref_coordinates() {
        let m = SparseMat::from_i64(&[&[1, 0, 1], &[0, 1, 1]]);
        let r = rref(&m);
        assert_eq!(r.coordinates(&[int(2), int(3), int(5)]), Some(vec![int(2), int(3)]));
        assert_eq!(r.coordinates(&[int(2), int(3), int(4)]), None);
    }
}
