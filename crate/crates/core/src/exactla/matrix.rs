//! Sparse row-major matrices over `Q`.
//!
//! Rows are stored as column-sorted `(col, value)` lists with no explicit
//! zeros. All operations have dense semantics.

use std::fmt;

use super::scalar::Q;

pub type SparseRow = Vec<(usize, Q)>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
}

/// `a + s * b` for sorted sparse rows.
pub(crate) fn axpy(a: &[(usize, Q)], s: &Q, b: &[(usize, Q)]) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, s * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + &(s * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let data = (0..n).map(|i| vec![(i, Q::one())]).collect();
        Matrix {
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn scalar(n: usize, s: &Q) -> Matrix {
        if s.is_zero() {
            return Matrix::zeros(n, n);
        }
        let data = (0..n).map(|i| vec![(i, s.clone())]).collect();
        Matrix {
            rows: n,
            cols: n,
            data,
        }
    }

    /// Builds from sorted-or-unsorted triplets; duplicate positions are summed.
    pub fn from_triplets<I>(rows: usize, cols: usize, entries: I) -> Matrix
    where
        I: IntoIterator<Item = (usize, usize, Q)>,
    {
        let mut data: Vec<SparseRow> = vec![Vec::new(); rows];
        for (i, j, v) in entries {
            assert!(
                i < rows && j < cols,
                "triplet ({i},{j}) outside {rows}x{cols}"
            );
            if !v.is_zero() {
                data[i].push((j, v));
            }
        }
        for row in &mut data {
            row.sort_by_key(|e| e.0);
            let mut merged: SparseRow = Vec::with_capacity(row.len());
            for (j, v) in row.drain(..) {
                match merged.last_mut() {
                    Some((lj, lv)) if *lj == j => *lv += &v,
                    _ => merged.push((j, v)),
                }
            }
            merged.retain(|e| !e.1.is_zero());
            *row = merged;
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(cols: usize, data: Vec<SparseRow>) -> Matrix {
        debug_assert!(data.iter().all(|r| r.windows(2).all(|w| w[0].0 < w[1].0)
            && r.iter().all(|e| e.0 < cols && !e.1.is_zero())));
        Matrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn from_dense(rows: usize, cols: usize, entries: &[Q]) -> Matrix {
        assert_eq!(entries.len(), rows * cols);
        Matrix::from_fn(rows, cols, |i, j| entries[i * cols + j].clone())
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_fn(rows.len(), cols, |i, j| Q::from_int(rows[i][j]))
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Matrix {
        let data = (0..rows)
            .map(|i| {
                (0..cols)
                    .filter_map(|j| {
                        let v = f(i, j);
                        (!v.is_zero()).then_some((j, v))
                    })
                    .collect()
            })
            .collect();
        Matrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Q>]) -> Matrix {
        Matrix::from_triplets(
            rows,
            columns.len(),
            columns
                .iter()
                .enumerate()
                .flat_map(|(j, c)| c.iter().enumerate().map(move |(i, v)| (i, j, v.clone()))),
        )
    }

    pub fn column_vector(v: &[Q]) -> Matrix {
        Matrix::from_columns(v.len(), &[v.to_vec()])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, i: usize) -> &[(usize, Q)] {
        &self.data[i]
    }

    pub fn row_data(&self) -> &[SparseRow] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<SparseRow> {
        self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        match self.data[i].binary_search_by_key(&j, |e| e.0) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    /// Iterates over nonzero entries as `(row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Q)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Q>> {
        let mut out = vec![vec![Q::zero(); self.rows]; self.cols];
        for (i, j, v) in self.entries() {
            out[j][i] = v.clone();
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let mut out = vec![vec![Q::zero(); self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            out[i][j] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut data: Vec<SparseRow> = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                data[*j].push((i, v.clone()));
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut acc = vec![Q::zero(); other.cols];
        let mut touched: Vec<usize> = Vec::new();
        let mut mark = vec![false; other.cols];
        let data = self
            .data
            .iter()
            .map(|row| {
                for (k, a) in row {
                    for (j, b) in &other.data[*k] {
                        if !mark[*j] {
                            mark[*j] = true;
                            touched.push(*j);
                        }
                        acc[*j] += &(a * b);
                    }
                }
                touched.sort_unstable();
                let mut out = Vec::with_capacity(touched.len());
                for &j in &touched {
                    let v = std::mem::take(&mut acc[j]);
                    mark[j] = false;
                    if !v.is_zero() {
                        out.push((j, v));
                    }
                }
                touched.clear();
                out
            })
            .collect();
        Matrix {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        self.data
            .iter()
            .map(|row| row.iter().fold(Q::zero(), |s, (j, a)| s + a * &v[*j]))
            .collect()
    }

    fn zip_rows(&self, other: &Matrix, s: &Q) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in addition");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| axpy(a, s, b))
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.zip_rows(other, &Q::one())
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.zip_rows(other, &-Q::one())
    }

    pub fn scale(&self, s: &Q) -> Matrix {
        if s.is_zero() {
            return Matrix::zeros(self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|r| r.iter().map(|(j, v)| (*j, v * s)).collect())
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&-Q::one())
    }

    /// Kronecker product; the left factor indexes the most significant digit.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (r2, c2) = other.shape();
        let mut data = Vec::with_capacity(self.rows * r2);
        for arow in &self.data {
            for brow in &other.data {
                let mut out = Vec::with_capacity(arow.len() * brow.len());
                for (ja, a) in arow {
                    for (jb, b) in brow {
                        out.push((ja * c2 + jb, a * b));
                    }
                }
                data.push(out);
            }
        }
        Matrix {
            rows: self.rows * r2,
            cols: self.cols * c2,
            data,
        }
    }

    pub fn hstack(blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.first().map_or(0, |b| b.rows);
        assert!(blocks.iter().all(|b| b.rows == rows), "hstack row mismatch");
        let mut data: Vec<SparseRow> = vec![Vec::new(); rows];
        let mut offset = 0;
        for b in blocks {
            for (i, row) in b.data.iter().enumerate() {
                data[i].extend(row.iter().map(|(j, v)| (j + offset, v.clone())));
            }
            offset += b.cols;
        }
        Matrix {
            rows,
            cols: offset,
            data,
        }
    }

    pub fn vstack(blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.first().map_or(0, |b| b.cols);
        assert!(
            blocks.iter().all(|b| b.cols == cols),
            "vstack column mismatch"
        );
        let data: Vec<SparseRow> = blocks.iter().flat_map(|b| b.data.iter().cloned()).collect();
        Matrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn block_diag(blocks: &[&Matrix]) -> Matrix {
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::new();
        let mut offset = 0;
        for b in blocks {
            for row in &b.data {
                data.push(row.iter().map(|(j, v)| (j + offset, v.clone())).collect());
            }
            offset += b.cols;
        }
        Matrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    /// 2x2 block matrix `[[a, b], [c, d]]`.
    pub fn block2(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
        Matrix::vstack(&[&Matrix::hstack(&[a, b]), &Matrix::hstack(&[c, d])])
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let data = idx.iter().map(|&i| self.data[i].clone()).collect();
        Matrix {
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut pos = vec![usize::MAX; self.cols];
        for (k, &j) in idx.iter().enumerate() {
            pos[j] = k;
        }
        if idx.windows(2).all(|w| w[0] < w[1]) {
            let data = self
                .data
                .iter()
                .map(|r| {
                    r.iter()
                        .filter(|(j, _)| pos[*j] != usize::MAX)
                        .map(|(j, v)| (pos[*j], v.clone()))
                        .collect()
                })
                .collect();
            return Matrix {
                rows: self.rows,
                cols: idx.len(),
                data,
            };
        }
        self.transpose().select_rows(idx).transpose()
    }

    /// Permutes rows and columns: entry `(i, j)` moves to `(p_row[i], p_col[j])`.
    pub fn permute(&self, p_row: &[usize], p_col: &[usize]) -> Matrix {
        Matrix::from_triplets(
            self.rows,
            self.cols,
            self.entries()
                .map(|(i, j, v)| (p_row[i], p_col[j], v.clone())),
        )
    }

    /// Permutation matrix sending basis vector `j` to `p[j]`.
    pub fn permutation(p: &[usize]) -> Matrix {
        Matrix::from_triplets(
            p.len(),
            p.len(),
            p.iter().enumerate().map(|(j, &i)| (i, j, Q::one())),
        )
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|q| q.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triplets_sum_duplicates_and_drop_zeros() {
        let m = Matrix::from_triplets(
            2,
            2,
            vec![
                (0, 1, Q::from_int(2)),
                (0, 1, Q::from_int(-2)),
                (1, 0, Q::one()),
                (1, 0, Q::one()),
            ],
        );
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 0), Q::from_int(2));
    }

    #[test]
    fn kron_is_row_major() {
        let a = Matrix::from_int_rows(&[&[1, 2], &[3, 4]]);
        let b = Matrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        let k = a.kron(&b);
        assert_eq!(k.get(0, 1), Q::from_int(1));
        assert_eq!(k.get(1, 2), Q::from_int(2));
        assert_eq!(k.get(3, 2), Q::from_int(4));
        assert_eq!(k.mul(&Matrix::identity(4)), k);
    }

    #[test]
    fn multiply_and_transpose_agree() {
        let a = Matrix::from_int_rows(&[&[1, 0, 2], &[0, -1, 3]]);
        let b = Matrix::from_int_rows(&[&[1, 1], &[2, 0], &[0, 5]]);
        let ab = a.mul(&b);
        assert_eq!(ab, Matrix::from_int_rows(&[&[1, 11], &[-2, 15]]));
        assert_eq!(ab.transpose(), b.transpose().mul(&a.transpose()));
    }

    #[test]
    fn select_and_permute() {
        let a = Matrix::from_int_rows(&[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(
            a.select_cols(&[2, 0]),
            Matrix::from_int_rows(&[&[3, 1], &[6, 4]])
        );
        let p = Matrix::permutation(&[1, 2, 0]);
        assert_eq!(a.mul(&p.transpose()), a.permute(&[0, 1], &[1, 2, 0]));
    }
}
