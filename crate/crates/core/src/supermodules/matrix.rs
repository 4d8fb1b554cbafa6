//! Sparse column-major matrices over a [`Field`] and exact rank computation.

use std::collections::BTreeMap;

use crate::scalars::Field;

/// A sparse matrix stored by columns; each column is sorted by row with no
/// explicit zeros, so `==` is value equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, F)>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, F::one())
    }

    pub fn scalar(n: usize, v: F) -> Self {
        Self::diagonal((0..n).map(|_| v.clone()).collect())
    }

    pub fn diagonal(d: Vec<F>) -> Self {
        let n = d.len();
        let data = d.into_iter().enumerate().map(|(i, v)| if v.is_zero() { vec![] } else { vec![(i, v)] }).collect();
        SparseMatrix { rows: n, cols: n, data }
    }

    /// Build from `(row, col, value)` triples; repeated positions are summed.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, F)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, F>> = vec![BTreeMap::new(); cols];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            let slot = acc[c].entry(r).or_insert_with(F::zero);
            *slot = slot.clone() + v;
        }
        let data = acc.into_iter().map(|col| col.into_iter().filter(|(_, v)| !v.is_zero()).collect()).collect();
        SparseMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &[(usize, F)] {
        &self.data[c]
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        match self.data[c].binary_search_by_key(&r, |e| e.0) {
            Ok(k) => self.data[c][k].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &F)> + '_ {
        self.data.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn is_diagonal(&self) -> bool {
        self.rows == self.cols && self.data.iter().enumerate().all(|(c, col)| col.iter().all(|(r, _)| *r == c))
    }

    pub fn diagonal_entries(&self) -> Vec<F> {
        (0..self.cols.min(self.rows)).map(|i| self.get(i, i)).collect()
    }

    /// `Some(λ)` if the matrix is `λ·I`.
    pub fn as_scalar(&self) -> Option<F> {
        if !self.is_diagonal() || self.cols == 0 {
            return None;
        }
        let d = self.get(0, 0);
        (1..self.cols).all(|i| self.get(i, i) == d).then_some(d)
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![Vec::new(); self.rows];
        for (c, col) in self.data.iter().enumerate() {
            for (r, v) in col {
                data[*r].push((c, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|col| col.iter().map(|(r, v)| (*r, v.clone() * s.clone())).filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    fn combine(&self, o: &Self, sign: bool) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| {
                let (mut i, mut j, mut out) = (0, 0, Vec::with_capacity(a.len() + b.len()));
                while i < a.len() || j < b.len() {
                    let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
                    let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
                    if take_a {
                        out.push(a[i].clone());
                        i += 1;
                    } else if take_b {
                        let v = if sign { -b[j].1.clone() } else { b[j].1.clone() };
                        out.push((b[j].0, v));
                        j += 1;
                    } else {
                        let v = if sign { a[i].1.clone() - b[j].1.clone() } else { a[i].1.clone() + b[j].1.clone() };
                        if !v.is_zero() {
                            out.push((a[i].0, v));
                        }
                        i += 1;
                        j += 1;
                    }
                }
                out
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.combine(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.combine(o, true)
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut acc: Vec<F> = vec![F::zero(); self.rows];
        let mut touched: Vec<usize> = Vec::new();
        let mut data = Vec::with_capacity(o.cols);
        for col in &o.data {
            for (k, b) in col {
                for (r, a) in &self.data[*k] {
                    if acc[*r].is_zero() {
                        touched.push(*r);
                    }
                    acc[*r] = std::mem::replace(&mut acc[*r], F::zero()) + a.clone() * b.clone();
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut out = Vec::with_capacity(touched.len());
            for r in touched.drain(..) {
                let v = std::mem::replace(&mut acc[r], F::zero());
                if !v.is_zero() {
                    out.push((r, v));
                }
            }
            data.push(out);
        }
        SparseMatrix { rows: self.rows, cols: o.cols, data }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, a) in &self.data[c] {
                out[*r] = out[*r].clone() + a.clone() * x.clone();
            }
        }
        out
    }

    /// Submatrix on the given row and column index lists.
    pub fn restrict(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.rows];
        for (k, r) in rows.iter().enumerate() {
            pos[*r] = k;
        }
        let data = cols
            .iter()
            .map(|c| {
                let mut col: Vec<(usize, F)> =
                    self.data[*c].iter().filter(|(r, _)| pos[*r] != usize::MAX).map(|(r, v)| (pos[*r], v.clone())).collect();
                col.sort_by_key(|e| e.0);
                col
            })
            .collect();
        SparseMatrix { rows: rows.len(), cols: cols.len(), data }
    }

    /// Rows as sorted sparse vectors.
    pub fn row_vectors(&self) -> Vec<Vec<(usize, F)>> {
        self.transpose().data
    }

    pub fn rank(&self) -> usize {
        rank(self.row_vectors(), self.cols)
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Stack matrices with equal column counts vertically.
    pub fn vstack(parts: &[Self]) -> Self {
        let cols = parts.first().map_or(0, |m| m.cols);
        let mut offset = 0;
        let mut data: Vec<Vec<(usize, F)>> = vec![Vec::new(); cols];
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            for (c, col) in m.data.iter().enumerate() {
                data[c].extend(col.iter().map(|(r, v)| (r + offset, v.clone())));
            }
            offset += m.rows;
        }
        SparseMatrix { rows: offset, cols, data }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, o: &Self) -> Self {
        let mut data = self.data.clone();
        data.extend(o.data.iter().map(|col| col.iter().map(|(r, v)| (r + self.rows, v.clone())).collect()));
        SparseMatrix { rows: self.rows + o.rows, cols: self.cols + o.cols, data }
    }

    /// Kronecker product `self ⊗ o`, with index `i·o.rows + k`.
    pub fn kron(&self, o: &Self) -> Self {
        let mut trip = Vec::new();
        for (r1, c1, a) in self.triplets() {
            for (r2, c2, b) in o.triplets() {
                trip.push((r1 * o.rows + r2, c1 * o.cols + c2, a.clone() * b.clone()));
            }
        }
        Self::from_triplets(self.rows * o.rows, self.cols * o.cols, trip)
    }

    /// First position where `self` and `o` differ, with both entries.
    pub fn first_difference(&self, o: &Self) -> Option<(usize, usize, F, F)> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        for (c, (a, b)) in self.data.iter().zip(&o.data).enumerate() {
            if a == b {
                continue;
            }
            let (mut i, mut j) = (0, 0);
            while i < a.len() || j < b.len() {
                let ra = a.get(i).map_or(usize::MAX, |e| e.0);
                let rb = b.get(j).map_or(usize::MAX, |e| e.0);
                let (r, x, y) = match ra.cmp(&rb) {
                    std::cmp::Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (ra, a[i - 1].1.clone(), b[j - 1].1.clone())
                    }
                    std::cmp::Ordering::Less => {
                        i += 1;
                        (ra, a[i - 1].1.clone(), F::zero())
                    }
                    std::cmp::Ordering::Greater => {
                        j += 1;
                        (rb, F::zero(), b[j - 1].1.clone())
                    }
                };
                if x != y {
                    return Some((r, c, x, y));
                }
            }
        }
        None
    }
}

/// Exact rank of the span of sparse rows.
///
/// Pivots that can be inverted are normalized to one; otherwise rows are
/// combined without division, which keeps the procedure exact in fields
/// where only some elements have a cheap inverse.
pub fn rank<F: Field>(rows: Vec<Vec<(usize, F)>>, _ncols: usize) -> usize {
    let mut pivots: BTreeMap<usize, Vec<(usize, F)>> = BTreeMap::new();
    let mut pending: Vec<Vec<(usize, F)>> = rows;
    pending.sort_by_key(|r| (r.len(), r.iter().map(|(_, v)| v.cost()).sum::<usize>()));
    pending.reverse();
    while let Some(mut row) = pending.pop() {
        loop {
            let Some((lead, lead_val)) = row.first().cloned() else { break };
            match pivots.get(&lead) {
                None => {
                    if let Ok(inv) = lead_val.try_inv() {
                        for (_, v) in row.iter_mut() {
                            *v = v.clone() * inv.clone();
                        }
                    } else {
                        F::normalize_row(&mut row);
                    }
                    pivots.insert(lead, row);
                    break;
                }
                Some(piv) => {
                    let pv = &piv[0].1;
                    row = if pv.is_one() {
                        axpy(&row, &F::one(), piv, &lead_val)
                    } else {
                        axpy(&row, pv, piv, &lead_val)
                    };
                    F::normalize_row(&mut row);
                }
            }
        }
    }
    pivots.len()
}

/// `a·x − b·y` for sparse rows.
fn axpy<F: Field>(x: &[(usize, F)], a: &F, y: &[(usize, F)], b: &F) -> Vec<(usize, F)> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(x.len() + y.len());
    let a_one = a.is_one();
    while i < x.len() || j < y.len() {
        if j >= y.len() || (i < x.len() && x[i].0 < y[j].0) {
            let v = if a_one { x[i].1.clone() } else { a.clone() * x[i].1.clone() };
            out.push((x[i].0, v));
            i += 1;
        } else if i >= x.len() || y[j].0 < x[i].0 {
            out.push((y[j].0, -(b.clone() * y[j].1.clone())));
            j += 1;
        } else {
            let v = a.clone() * x[i].1.clone() - b.clone() * y[j].1.clone();
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};
    use crate::scalars::{Fp2, Quad};

    fn m(rows: usize, cols: usize, vals: &[i64]) -> SparseMatrix<Quad> {
        SparseMatrix::from_triplets(
            rows,
            cols,
            vals.iter().enumerate().map(|(k, v)| (k / cols, k % cols, Quad::from_int(*v))),
        )
    }

    /// Dense rank over the rationals by fraction-based elimination, used as an oracle.
    fn dense_rank(rows: usize, cols: usize, vals: &[i64]) -> usize {
        use crate::scalars::Rational;
        let mut a: Vec<Vec<Rational>> =
            (0..rows).map(|r| (0..cols).map(|c| Rational::from_integer(vals[r * cols + c] as i128)).collect()).collect();
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|r| a[*r][c] != Rational::zero()) else { continue };
            a.swap(rank, p);
            for r in 0..rows {
                if r != rank && a[r][c] != Rational::zero() {
                    let f = a[r][c] / a[rank][c];
                    for k in 0..cols {
                        let t = a[rank][k] * f;
                        a[r][k] -= t;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn product_matches_hand_computation() {
        let a = m(2, 2, &[1, 2, 3, 4]);
        let b = m(2, 2, &[0, 1, 1, 0]);
        assert_eq!(a.mul(&b), m(2, 2, &[2, 1, 4, 3]));
    }

    #[test]
    fn rank_agrees_with_dense_oracle() {
        let cases: [(usize, usize, Vec<i64>); 4] = [
            (3, 3, vec![1, 2, 3, 4, 5, 6, 7, 8, 9]),
            (2, 4, vec![0, 0, 1, 2, 0, 0, 2, 4]),
            (3, 2, vec![1, 0, 0, 1, 1, 1]),
            (4, 4, vec![2, -1, 0, 0, -1, 2, -1, 0, 0, -1, 2, -1, 0, 0, -1, 2]),
        ];
        for (r, c, v) in cases {
            assert_eq!(m(r, c, &v).rank(), dense_rank(r, c, &v));
        }
    }

    #[test]
    fn rank_with_irrational_pivots() {
        // Rows (√2+√3, 1) and (1, √3−√2) are proportional: the second is (√3−√2)× the first.
        let a = Quad::sqrt_int(2) + Quad::sqrt_int(3);
        let b = Quad::sqrt_int(3) - Quad::sqrt_int(2);
        let mat = SparseMatrix::from_triplets(
            2,
            2,
            [(0, 0, a), (0, 1, Quad::one()), (1, 0, Quad::one()), (1, 1, b)],
        );
        assert_eq!(mat.rank(), 1);
    }

    #[test]
    fn rank_over_finite_field() {
        // Singular mod 5 but not over the integers.
        let mat = SparseMatrix::<Fp2<5>>::from_triplets(
            2,
            2,
            [(0, 0, Fp2::from_int(1)), (0, 1, Fp2::from_int(2)), (1, 0, Fp2::from_int(3)), (1, 1, Fp2::from_int(1))],
        );
        assert_eq!(mat.rank(), 1);
    }

    #[test]
    fn scalar_detection_and_kron() {
        let two = SparseMatrix::<Quad>::scalar(3, Quad::from_int(2));
        assert_eq!(two.as_scalar(), Some(Quad::from_int(2)));
        let a = m(2, 2, &[0, 1, 1, 0]);
        let k = a.kron(&SparseMatrix::identity(2));
        assert_eq!(k.get(0, 2), Quad::one());
        assert_eq!(k.nnz(), 4);
    }
}
