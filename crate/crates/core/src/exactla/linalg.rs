//! Gaussian elimination, kernels, linear solves and quotient spaces.

use super::matrix::{axpy, Matrix, SparseRow};
use super::scalar::Q;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("right-hand side is not in the column space")]
    NoSolution,
    #[error(
        "composition d_out * d_in is nonzero ({rows}x{cols} product has {nnz} nonzero entries)"
    )]
    CompositionNonzero {
        rows: usize,
        cols: usize,
        nnz: usize,
    },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

/// Row echelon form built by inserting one row at a time.
///
/// Stored rows have leading coefficient one and distinct leading columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    width: usize,
    pivot_row: Vec<Option<usize>>,
    rows: Vec<SparseRow>,
}

impl Echelon {
    pub fn new(width: usize) -> Echelon {
        Echelon {
            width,
            pivot_row: vec![None; width],
            rows: Vec::new(),
        }
    }

    pub fn from_matrix(m: &Matrix) -> Echelon {
        let mut e = Echelon::new(m.cols());
        for row in m.row_data() {
            e.insert(row.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Reduces `row` against the stored leading entries.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut start = 0;
        while start < row.len() {
            let (c, a) = row[start].clone();
            match self.pivot_row[c] {
                Some(k) => row = axpy(&row, &-a, &self.rows[k]),
                None => start += 1,
            }
        }
        row
    }

    /// Inserts a row; returns whether it increased the rank.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        loop {
            let Some((c, a)) = row.first().cloned() else {
                return false;
            };
            match self.pivot_row[c] {
                Some(k) => row = axpy(&row, &-a, &self.rows[k]),
                None => {
                    let inv = a.recip();
                    for e in row.iter_mut() {
                        e.1 *= &inv;
                    }
                    self.pivot_row[c] = Some(self.rows.len());
                    self.rows.push(row);
                    return true;
                }
            }
        }
    }

    /// Reduced row echelon form, rows ordered by leading column.
    pub fn into_rref(self) -> Rref {
        let width = self.width;
        let mut order: Vec<(usize, SparseRow)> =
            self.rows.into_iter().map(|r| (r[0].0, r)).collect();
        order.sort_by_key(|e| e.0);
        let mut is_pivot = vec![None; width];
        for (k, (c, _)) in order.iter().enumerate() {
            is_pivot[*c] = Some(k);
        }
        for k in (0..order.len()).rev() {
            let mut row = std::mem::take(&mut order[k].1);
            let mut pos = 1;
            while pos < row.len() {
                let (c, a) = row[pos].clone();
                match is_pivot[c] {
                    Some(other) => row = axpy(&row, &-a, &order[other].1),
                    None => pos += 1,
                }
            }
            order[k].1 = row;
        }
        let pivots = order.iter().map(|e| e.0).collect();
        let rows = order.into_iter().map(|e| e.1).collect();
        Rref {
            width,
            pivots,
            rows,
        }
    }
}

/// Reduced row echelon form of a matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub width: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<SparseRow>,
}

impl Rref {
    pub fn of(m: &Matrix) -> Rref {
        Echelon::from_matrix(m).into_rref()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.width];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.width).filter(|&c| !is_pivot[c]).collect()
    }

    /// Basis of the null space, one vector per free column, in increasing order.
    pub fn null_space(&self) -> Matrix {
        let free = self.free_columns();
        let mut free_pos = vec![usize::MAX; self.width];
        for (k, &f) in free.iter().enumerate() {
            free_pos[f] = k;
        }
        let mut trips: Vec<(usize, usize, Q)> = free
            .iter()
            .enumerate()
            .map(|(k, &f)| (f, k, Q::one()))
            .collect();
        for (r, row) in self.rows.iter().enumerate() {
            let p = self.pivots[r];
            for (c, v) in row.iter().skip(1) {
                trips.push((p, free_pos[*c], -v));
            }
        }
        Matrix::from_triplets(self.width, free.len(), trips)
    }

    pub fn as_matrix(&self) -> Matrix {
        Matrix::from_rows(self.width, self.rows.clone())
    }
}

/// A subspace of `Q^n` given by a basis of column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    /// Wraps columns that are already known to be independent.
    pub fn from_independent_columns(basis: Matrix) -> Subspace {
        debug_assert_eq!(rank(&basis), basis.cols());
        Subspace { basis }
    }

    /// Column span of `m`, with a canonical basis.
    pub fn span(m: &Matrix) -> Subspace {
        let r = Rref::of(&m.transpose());
        Subspace {
            basis: r.as_matrix().transpose(),
        }
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            basis: Matrix::zeros(ambient, 0),
        }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace {
            basis: Matrix::identity(ambient),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<Q>> {
        self.basis.columns()
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        let m = Matrix::hstack(&[&self.basis, &Matrix::column_vector(v)]);
        rank(&m) == self.dim()
    }

    pub fn contains_all(&self, m: &Matrix) -> bool {
        rank(&Matrix::hstack(&[&self.basis, m])) == self.dim()
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains_all(&other.basis)
    }

    /// Whether every matrix in `ops` maps the subspace into itself.
    pub fn is_invariant(&self, ops: &[Matrix]) -> bool {
        ops.iter().all(|a| self.contains_all(&a.mul(&self.basis)))
    }

    /// Coordinates, in this basis, of the columns of `m` (which must lie in the subspace).
    pub fn coordinates(&self, m: &Matrix) -> Result<Matrix, LinalgError> {
        solve_many(&self.basis, m)
    }

    /// Matrix of the restriction of `a` to this invariant subspace.
    pub fn restrict(&self, a: &Matrix) -> Result<Matrix, LinalgError> {
        self.coordinates(&a.mul(&self.basis))
    }
}

/// A chosen quotient `Q^n -> Q^n / U` with a linear section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    /// `dim(quot) x n`
    pub projection: Matrix,
    /// `n x dim(quot)`, with `projection * section = 1`.
    pub section: Matrix,
}

impl Quotient {
    /// Quotient by the column span of `sub`. Coordinates on the quotient are the
    /// non-pivot coordinates of the reduced row echelon form of `sub^T`.
    pub fn by_span(sub: &Matrix) -> Quotient {
        let n = sub.rows();
        let r = Rref::of(&sub.transpose());
        let free = r.free_columns();
        let mut free_pos = vec![usize::MAX; n];
        for (k, &f) in free.iter().enumerate() {
            free_pos[f] = k;
        }
        let mut trips: Vec<(usize, usize, Q)> = free
            .iter()
            .enumerate()
            .map(|(k, &f)| (k, f, Q::one()))
            .collect();
        for (row, &p) in r.rows.iter().zip(&r.pivots) {
            for (c, v) in row.iter().skip(1) {
                trips.push((free_pos[*c], p, -v));
            }
        }
        let projection = Matrix::from_triplets(free.len(), n, trips);
        let section = Matrix::from_triplets(
            n,
            free.len(),
            free.iter().enumerate().map(|(k, &f)| (f, k, Q::one())),
        );
        Quotient {
            projection,
            section,
        }
    }

    pub fn dim(&self) -> usize {
        self.projection.rows()
    }

    /// Induced action `P a S` of an operator preserving the subspace.
    pub fn induced(&self, a: &Matrix) -> Matrix {
        self.projection.mul(a).mul(&self.section)
    }
}

pub fn rank(m: &Matrix) -> usize {
    if m.rows() > 2 * m.cols() {
        Echelon::from_matrix(&m.transpose()).rank()
    } else {
        Echelon::from_matrix(m).rank()
    }
}

pub fn nullity(m: &Matrix) -> usize {
    m.cols() - rank(m)
}

pub fn kernel_basis(m: &Matrix) -> Subspace {
    Subspace {
        basis: Rref::of(m).null_space(),
    }
}

pub fn image(m: &Matrix) -> Subspace {
    Subspace::span(m)
}

/// Some `x` with `m x = b`: free variables are set to zero.
pub fn solve(m: &Matrix, b: &[Q]) -> Result<Vec<Q>, LinalgError> {
    if b.len() != m.rows() {
        return Err(LinalgError::ShapeMismatch(format!(
            "rhs length {} for {} rows",
            b.len(),
            m.rows()
        )));
    }
    Ok(solve_many(m, &Matrix::column_vector(b))?.column(0))
}

/// Some `X` with `m X = b`, column by column.
pub fn solve_many(m: &Matrix, b: &Matrix) -> Result<Matrix, LinalgError> {
    if b.rows() != m.rows() {
        return Err(LinalgError::ShapeMismatch(format!(
            "rhs has {} rows, matrix has {}",
            b.rows(),
            m.rows()
        )));
    }
    let n = m.cols();
    let aug = Matrix::hstack(&[m, b]);
    let r = Rref::of(&aug);
    if r.pivots.iter().any(|&p| p >= n) {
        return Err(LinalgError::NoSolution);
    }
    let mut trips = Vec::new();
    for (row, &p) in r.rows.iter().zip(&r.pivots) {
        for (c, v) in row {
            if *c >= n {
                trips.push((p, c - n, v.clone()));
            }
        }
    }
    Ok(Matrix::from_triplets(n, b.cols(), trips))
}

/// `ker(d_out) / im(d_in)` with chosen representatives.
#[derive(Debug, Clone)]
pub struct Homology {
    pub dim: usize,
    pub cycles: Subspace,
    /// `ambient x dim`: representative cycles of a basis of the quotient.
    pub representatives: Matrix,
    /// `dim x ambient`: sends a cycle to the coordinates of its class.
    pub class_of: Matrix,
}

pub fn quotient_homology(d_in: &Matrix, d_out: &Matrix) -> Result<Homology, LinalgError> {
    if d_out.cols() != d_in.rows() {
        return Err(LinalgError::ShapeMismatch(format!(
            "d_out has {} columns, d_in has {} rows",
            d_out.cols(),
            d_in.rows()
        )));
    }
    let prod = d_out.mul(d_in);
    if !prod.is_zero() {
        return Err(LinalgError::CompositionNonzero {
            rows: prod.rows(),
            cols: prod.cols(),
            nnz: prod.nnz(),
        });
    }
    let rref = Rref::of(d_out);
    let free = rref.free_columns();
    let cycles = Subspace {
        basis: rref.null_space(),
    };
    // A cycle's coordinates in the kernel basis are its free coordinates.
    let boundaries = d_in.select_rows(&free);
    let q = Quotient::by_span(&boundaries);
    let representatives = cycles.basis.mul(&q.section);
    let select = Matrix::from_triplets(
        free.len(),
        d_out.cols(),
        free.iter().enumerate().map(|(k, &f)| (k, f, Q::one())),
    );
    let class_of = q.projection.mul(&select);
    Ok(Homology {
        dim: q.dim(),
        cycles,
        representatives,
        class_of,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&Matrix::identity(2)), 2);
        assert_eq!(rank(&Matrix::zeros(2, 2)), 0);
        assert_eq!(rank(&Matrix::from_int_rows(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn kernels() {
        let k = kernel_basis(&Matrix::from_int_rows(&[&[1, 0], &[0, 0]]));
        assert_eq!(k.vectors(), vec![vec![q(0), q(1)]]);
        assert_eq!(kernel_basis(&Matrix::zeros(2, 2)).dim(), 2);
        let k = kernel_basis(&Matrix::from_int_rows(&[&[1, 2], &[2, 4]]));
        assert_eq!(k.dim(), 1);
        let v = &k.vectors()[0];
        assert_eq!(&v[0] * &q(-1), &v[1] * &q(2));
    }

    #[test]
    fn solves() {
        let b = vec![q(3), q(-7)];
        assert_eq!(solve(&Matrix::identity(2), &b).unwrap(), b);
        let m = Matrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(solve(&m, &[q(1), q(2)]).unwrap(), vec![q(1), q(0)]);
        assert_eq!(solve(&m, &[q(1), q(0)]), Err(LinalgError::NoSolution));
    }

    #[test]
    fn homology_examples() {
        let h = quotient_homology(&Matrix::zeros(3, 0), &Matrix::zeros(0, 3)).unwrap();
        assert_eq!(h.dim, 3);
        let h = quotient_homology(&Matrix::identity(3), &Matrix::zeros(0, 3)).unwrap();
        assert_eq!(h.dim, 0);
        let d_in = Matrix::from_int_rows(&[&[1], &[0]]);
        let d_out = Matrix::from_int_rows(&[&[1, 0]]);
        assert!(matches!(
            quotient_homology(&d_in, &d_out),
            Err(LinalgError::CompositionNonzero { .. })
        ));
        let d_out = Matrix::from_int_rows(&[&[0, 1]]);
        let h = quotient_homology(&d_in, &d_out).unwrap();
        assert_eq!(h.dim, 0);
    }

    #[test]
    fn homology_representatives_are_cycles_and_classes_invert() {
        // C_2 = Q --(1,1,0)^T--> C_1 = Q^3 --[1,-1,0]--> C_0 = Q
        let d_in = Matrix::from_int_rows(&[&[1], &[1], &[0]]);
        let d_out = Matrix::from_int_rows(&[&[1, -1, 0]]);
        let h = quotient_homology(&d_in, &d_out).unwrap();
        assert_eq!(h.dim, 1);
        assert!(d_out.mul(&h.representatives).is_zero());
        assert_eq!(h.class_of.mul(&h.representatives), Matrix::identity(1));
        assert!(h.class_of.mul(&d_in).is_zero());
    }

    #[test]
    fn quotient_section_splits() {
        let sub = Matrix::from_int_rows(&[&[1], &[1], &[2]]);
        let qt = Quotient::by_span(&sub);
        assert_eq!(qt.dim(), 2);
        assert_eq!(qt.projection.mul(&qt.section), Matrix::identity(2));
        assert!(qt.projection.mul(&sub).is_zero());
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..4, r * c).prop_map(move |v| {
                Matrix::from_fn(r, c, |i, j| {
                    let x = v[i * c + j];
                    if x.abs() == 3 {
                        Q::zero()
                    } else {
                        Q::new(x, 1 + (i + j) as i64 % 2)
                    }
                })
            })
        })
    }

    /// Dense fraction-free elimination, independent of the sparse code path.
    #[allow(clippy::needless_range_loop)]
    fn dense_rank(m: &Matrix) -> usize {
        let mut a = m.to_dense();
        let (rows, cols) = m.shape();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            for i in 0..rows {
                if i != r && !a[i][c].is_zero() {
                    let f = &a[i][c] / &a[r][c];
                    for j in 0..cols {
                        let t = &a[r][j] * &f;
                        a[i][j] -= &t;
                    }
                }
            }
            r += 1;
        }
        r
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let k = kernel_basis(&m);
            prop_assert_eq!(rank(&m) + k.dim(), m.cols());
            prop_assert!(m.mul(k.basis()).is_zero());
            prop_assert_eq!(rank(&m), dense_rank(&m));
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
        }

        #[test]
        fn solve_round_trip(m in small_matrix(), seed in proptest::collection::vec(-4i64..5, 6)) {
            let x: Vec<Q> = (0..m.cols()).map(|i| Q::from_int(seed[i])).collect();
            let b = m.mul_vec(&x);
            let y = solve(&m, &b).unwrap();
            prop_assert_eq!(m.mul_vec(&y), b);
        }

        #[test]
        fn homology_dim_matches_brute_force(d_in in small_matrix()) {
            let d_out = kernel_basis(&d_in.transpose()).basis().transpose();
            let h = quotient_homology(&d_in, &d_out).unwrap();
            prop_assert_eq!(h.dim, nullity(&d_out) - rank(&d_in));
        }
    }
}
