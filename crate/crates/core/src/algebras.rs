//! Finite-dimensional Leibniz algebras, Lie algebras and the Lie quotient.

use std::sync::OnceLock;

use crate::exactla::{Matrix, Quotient, Subspace, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("malformed structure constants: {0}")]
    Shape(String),
    #[error(
        "Leibniz identity fails on basis triple ({i},{j},{k}): x(yz) - (xy)z + (xz)y = {defect:?}"
    )]
    Violation {
        i: usize,
        j: usize,
        k: usize,
        defect: Vec<Q>,
    },
    #[error("bracket is not antisymmetric on ({i},{j})")]
    NotAntisymmetric { i: usize, j: usize },
    #[error("Jacobi identity fails on ({i},{j},{k})")]
    Jacobi { i: usize, j: usize, k: usize },
    #[error("internal error: {0}")]
    Internal(String),
}

/// Structure constants `c[i][j]` = coordinates of `b_i b_j`.
pub type StructureConstants = Vec<Vec<Vec<Q>>>;

fn check_shape(c: &StructureConstants, names: &[String]) -> Result<usize, AlgebraError> {
    let n = c.len();
    if names.len() != n {
        return Err(AlgebraError::Shape(format!(
            "{} basis names for dimension {n}",
            names.len()
        )));
    }
    for (i, row) in c.iter().enumerate() {
        if row.len() != n {
            return Err(AlgebraError::Shape(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        for (j, v) in row.iter().enumerate() {
            if v.len() != n {
                return Err(AlgebraError::Shape(format!(
                    "product ({i},{j}) has {} coordinates, expected {n}",
                    v.len()
                )));
            }
        }
    }
    Ok(n)
}

fn bilinear(c: &StructureConstants, x: &[Q], y: &[Q]) -> Vec<Q> {
    let n = c.len();
    let mut out = vec![Q::zero(); n];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let s = xi * yj;
            for (k, ck) in c[i][j].iter().enumerate() {
                if !ck.is_zero() {
                    out[k] += &(&s * ck);
                }
            }
        }
    }
    out
}

fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

/// A validated right Leibniz algebra: `x(yz) = (xy)z - (xz)y`.
#[derive(Debug)]
pub struct LeibnizAlgebra {
    names: Vec<String>,
    c: StructureConstants,
    quotient: OnceLock<LieQuotientData>,
}

impl Clone for LeibnizAlgebra {
    fn clone(&self) -> Self {
        LeibnizAlgebra {
            names: self.names.clone(),
            c: self.c.clone(),
            quotient: OnceLock::new(),
        }
    }
}

impl PartialEq for LeibnizAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.c == other.c
    }
}

impl Eq for LeibnizAlgebra {}

pub fn check_leibniz(
    names: Vec<String>,
    c: StructureConstants,
) -> Result<LeibnizAlgebra, AlgebraError> {
    let n = check_shape(&c, &names)?;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let yz = &c[j][k];
                let lhs = bilinear(&c, &unit(n, i), yz);
                let xy_z = bilinear(&c, &c[i][j], &unit(n, k));
                let xz_y = bilinear(&c, &c[i][k], &unit(n, j));
                let defect: Vec<Q> = (0..n).map(|t| &(&lhs[t] - &xy_z[t]) + &xz_y[t]).collect();
                if defect.iter().any(|q| !q.is_zero()) {
                    return Err(AlgebraError::Violation { i, j, k, defect });
                }
            }
        }
    }
    Ok(LeibnizAlgebra {
        names,
        c,
        quotient: OnceLock::new(),
    })
}

impl LeibnizAlgebra {
    /// The abelian algebra of dimension `n` with basis `x0, x1, ...`.
    pub fn abelian(n: usize) -> LeibnizAlgebra {
        let names = (0..n).map(|i| format!("x{i}")).collect();
        LeibnizAlgebra {
            names,
            c: vec![vec![vec![Q::zero(); n]; n]; n],
            quotient: OnceLock::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.c.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.c
    }

    pub fn product(&self, i: usize, j: usize) -> &[Q] {
        &self.c[i][j]
    }

    pub fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        bilinear(&self.c, x, y)
    }

    /// Matrix of `x -> b_i x`.
    pub fn left_mult(&self, i: usize) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(n, n, |k, j| self.c[i][j][k].clone())
    }

    /// Matrix of `x -> x b_i`.
    pub fn right_mult(&self, i: usize) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(n, n, |k, j| self.c[j][i][k].clone())
    }

    pub fn is_lie(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                self.c[i][j]
                    .iter()
                    .zip(&self.c[j][i])
                    .all(|(a, b)| (a + b).is_zero())
            }) && self.c[i][i].iter().all(Q::is_zero)
        })
    }

    /// Spanning vectors of the squares `b_i b_i` and `(b_i + b_j)(b_i + b_j)`.
    pub fn square_generators(&self) -> Vec<Vec<Q>> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            out.push(self.c[i][i].clone());
            for j in i + 1..n {
                let mut v = unit(n, i);
                v[j] = Q::one();
                out.push(self.mul(&v, &v));
            }
        }
        out
    }

    /// The Lie quotient, computed once and cached.
    pub fn lie(&self) -> &LieQuotientData {
        self.quotient
            .get_or_init(|| lie_quotient(self).expect("Lie quotient of a Leibniz algebra"))
    }

    /// Name of a vector in terms of the basis, e.g. `e + 2f`.
    pub fn format_vector(&self, v: &[Q]) -> String {
        format_combination(&self.names, v)
    }
}

pub fn format_combination(names: &[String], v: &[Q]) -> String {
    let mut out = String::new();
    for (q, name) in v.iter().zip(names) {
        if q.is_zero() {
            continue;
        }
        let neg = q.is_negative();
        let abs = if neg { -q } else { q.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !abs.is_one() {
            out.push_str(&abs.to_string());
        }
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A validated Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    names: Vec<String>,
    c: StructureConstants,
}

#[allow(clippy::needless_range_loop)]
pub fn check_lie(names: Vec<String>, c: StructureConstants) -> Result<LieAlgebra, AlgebraError> {
    let n = check_shape(&c, &names)?;
    for i in 0..n {
        for j in 0..n {
            if c[i][j]
                .iter()
                .zip(&c[j][i])
                .any(|(a, b)| !(a + b).is_zero())
                || (i == j && c[i][i].iter().any(|q| !q.is_zero()))
            {
                return Err(AlgebraError::NotAntisymmetric { i, j });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // [x,[y,z]] + [y,[z,x]] + [z,[x,y]]
                let a = bilinear(&c, &unit(n, i), &c[j][k]);
                let b = bilinear(&c, &unit(n, j), &c[k][i]);
                let d = bilinear(&c, &unit(n, k), &c[i][j]);
                if (0..n).any(|t| !(&(&a[t] + &b[t]) + &d[t]).is_zero()) {
                    return Err(AlgebraError::Jacobi { i, j, k });
                }
            }
        }
    }
    Ok(LieAlgebra { names, c })
}

impl LieAlgebra {
    pub fn dim(&self) -> usize {
        self.c.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn bracket(&self, i: usize, j: usize) -> &[Q] {
        &self.c[i][j]
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.c
    }

    /// Matrix of `x -> [x, b_i]`.
    pub fn right_ad(&self, i: usize) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(n, n, |k, j| self.c[j][i][k].clone())
    }
}

/// The surjection `g -> g_Lie = g / <x^2>` with a chosen linear section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieQuotientData {
    pub target: LieAlgebra,
    /// `dim g_Lie x dim g`
    pub projection: Matrix,
    /// `dim g x dim g_Lie`
    pub section: Matrix,
    pub kernel: Subspace,
}

impl LieQuotientData {
    pub fn dim(&self) -> usize {
        self.target.dim()
    }

    /// Coordinates of the image of basis vector `b_i` in `g_Lie`.
    pub fn image_of_basis(&self, i: usize) -> Vec<Q> {
        self.projection.column(i)
    }
}

pub fn lie_quotient(g: &LeibnizAlgebra) -> Result<LieQuotientData, AlgebraError> {
    let n = g.dim();
    let squares = Matrix::from_columns(n, &g.square_generators());
    let kernel = Subspace::span(&squares);
    let q = Quotient::by_span(&squares);
    let m = q.dim();
    let section_cols = q.section.columns();
    let names: Vec<String> = (0..m)
        .map(|a| {
            let i = section_cols[a]
                .iter()
                .position(|v| !v.is_zero())
                .expect("unit section");
            g.names()[i].clone()
        })
        .collect();
    let mut c = vec![vec![vec![Q::zero(); m]; m]; m];
    for a in 0..m {
        for b in 0..m {
            let prod = g.mul(&section_cols[a], &section_cols[b]);
            c[a][b] = q.projection.mul_vec(&prod);
        }
    }
    let target = check_lie(names, c)
        .map_err(|e| AlgebraError::Internal(format!("induced bracket on g_Lie: {e}")))?;
    Ok(LieQuotientData {
        target,
        projection: q.projection,
        section: q.section,
        kernel,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn constants(n: usize, products: &[(usize, usize, usize, i64)]) -> StructureConstants {
        let mut c = vec![vec![vec![Q::zero(); n]; n]; n];
        for &(i, j, k, v) in products {
            c[i][j][k] = Q::from_int(v);
        }
        c
    }

    #[test]
    fn e_algebra_is_leibniz_and_quotient_is_one_dimensional() {
        let g = check_leibniz(names(&["e", "f"]), constants(2, &[(1, 0, 1, 1)])).unwrap();
        let sq = g.mul(&[Q::one(), Q::one()], &[Q::one(), Q::one()]);
        assert_eq!(sq, vec![Q::zero(), Q::one()]);
        let lq = g.lie();
        assert_eq!(lq.dim(), 1);
        assert_eq!(lq.kernel.vectors(), vec![vec![Q::zero(), Q::one()]]);
        assert_eq!(lq.target.names(), &["e".to_string()]);
    }

    #[test]
    fn idempotent_line_violates() {
        let err = check_leibniz(names(&["e"]), constants(1, &[(0, 0, 0, 1)])).unwrap_err();
        assert_eq!(
            err,
            AlgebraError::Violation {
                i: 0,
                j: 0,
                k: 0,
                defect: vec![Q::one()]
            }
        );
    }

    #[test]
    fn lie_input_quotient_is_identity() {
        let g = check_leibniz(
            names(&["e", "f"]),
            constants(2, &[(0, 1, 1, 1), (1, 0, 1, -1)]),
        )
        .unwrap();
        assert!(g.is_lie());
        let lq = g.lie();
        assert_eq!(lq.projection, Matrix::identity(2));
        assert_eq!(lq.target.bracket(0, 1), &[Q::zero(), Q::one()]);
        let a = LeibnizAlgebra::abelian(3);
        assert_eq!(a.lie().projection, Matrix::identity(3));
    }

    #[test]
    fn left_leibniz_convention_is_rejected() {
        // ef = f alone satisfies the left identity, not the right one.
        assert!(check_leibniz(names(&["e", "f"]), constants(2, &[(0, 1, 1, 1)])).is_err());
    }

    #[test]
    fn formatting() {
        let n = names(&["e", "f"]);
        assert_eq!(format_combination(&n, &[Q::zero(), Q::one()]), "f");
        assert_eq!(
            format_combination(&n, &[Q::new(-1, 2), Q::from_int(3)]),
            "-1/2e + 3f"
        );
    }
}
