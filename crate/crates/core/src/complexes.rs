//! Bounded chain complexes, chain maps and double complexes.
//!
//! Everything is homological: `diff(n): C_n -> C_{n-1}`. A cochain complex
//! `C^p` is stored in degree `-p`. Complexes built from a truncated
//! resolution carry flags saying on which side the stored window was cut,
//! and homology is only reported where the window is honest.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactla::{nullity, quotient_homology, rank, Homology, LinalgError, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("degree {degree} is not computable: the complex is truncated at [{lo}, {hi}]")]
    Truncation { degree: i64, lo: i64, hi: i64 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("d^2 != 0 from degree {degree}")]
    Sign { degree: i64 },
    #[error("not a chain map in degree {degree}")]
    NotChainMap { degree: i64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Dimensions indexed by degree; `None` marks a degree outside the certified window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDims {
    pub dims: BTreeMap<i64, Option<usize>>,
}

impl GradedDims {
    pub fn get(&self, n: i64) -> Option<usize> {
        self.dims.get(&n).copied().flatten()
    }

    /// Dimensions for degrees `0..=top`, failing on any uncertified degree.
    pub fn series(&self, top: i64) -> Option<Vec<usize>> {
        (0..=top).map(|n| self.get(n)).collect()
    }
}

/// A bounded complex of finite-dimensional spaces in degrees `lo..=hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinComplex {
    lo: i64,
    dims: Vec<usize>,
    /// `diffs[k]` is the differential out of degree `lo + k + 1`.
    diffs: Vec<Matrix>,
    /// The true complex continues above `hi`.
    open_top: bool,
    /// The true complex continues below `lo`.
    open_bottom: bool,
}

impl FinComplex {
    /// `dims[k]` is the dimension in degree `lo + k`; `diffs[k]` maps degree
    /// `lo + k + 1` to `lo + k`. Checks shapes and `d^2 = 0`.
    pub fn new(lo: i64, dims: Vec<usize>, diffs: Vec<Matrix>) -> Result<FinComplex, ComplexError> {
        if dims.is_empty() && diffs.is_empty() {
            return Ok(FinComplex {
                lo,
                dims,
                diffs,
                open_top: false,
                open_bottom: false,
            });
        }
        if diffs.len() + 1 != dims.len() {
            return Err(ComplexError::ShapeMismatch(format!(
                "{} spaces need {} differentials, got {}",
                dims.len(),
                dims.len() - 1,
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.shape() != (dims[k], dims[k + 1]) {
                return Err(ComplexError::ShapeMismatch(format!(
                    "differential out of degree {} is {}x{}, expected {}x{}",
                    lo + k as i64 + 1,
                    d.rows(),
                    d.cols(),
                    dims[k],
                    dims[k + 1]
                )));
            }
        }
        let bad = (1..diffs.len())
            .into_par_iter()
            .find_first(|&k| !diffs[k - 1].mul(&diffs[k]).is_zero());
        if let Some(k) = bad {
            return Err(ComplexError::Sign {
                degree: lo + k as i64 + 1,
            });
        }
        Ok(FinComplex {
            lo,
            dims,
            diffs,
            open_top: false,
            open_bottom: false,
        })
    }

    /// A cochain complex `C^0 -> C^1 -> ...` with `deltas[p]: C^p -> C^{p+1}`.
    pub fn cochain(dims: Vec<usize>, deltas: Vec<Matrix>) -> Result<FinComplex, ComplexError> {
        let top = dims.len() as i64 - 1;
        let mut dims = dims;
        dims.reverse();
        let mut deltas = deltas;
        deltas.reverse();
        FinComplex::new(-top, dims, deltas)
    }

    pub fn with_truncation(mut self, open_top: bool, open_bottom: bool) -> FinComplex {
        self.open_top = open_top;
        self.open_bottom = open_bottom;
        self
    }

    pub fn zero() -> FinComplex {
        FinComplex {
            lo: 0,
            dims: vec![],
            diffs: vec![],
            open_top: false,
            open_bottom: false,
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn is_open_top(&self) -> bool {
        self.open_top
    }

    pub fn is_open_bottom(&self) -> bool {
        self.open_bottom
    }

    pub fn dim(&self, n: i64) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.dims[(n - self.lo) as usize]
        }
    }

    /// `d_n: C_n -> C_{n-1}`; zero outside the stored range.
    pub fn diff(&self, n: i64) -> Matrix {
        if n > self.lo && n <= self.hi() {
            self.diffs[(n - self.lo - 1) as usize].clone()
        } else {
            Matrix::zeros(self.dim(n - 1), self.dim(n))
        }
    }

    pub fn diff_ref(&self, n: i64) -> Option<&Matrix> {
        (n > self.lo && n <= self.hi()).then(|| &self.diffs[(n - self.lo - 1) as usize])
    }

    /// Cochain differential `C^p -> C^{p+1}`.
    pub fn codiff(&self, p: i64) -> Matrix {
        self.diff(-p)
    }

    pub fn is_computable(&self, n: i64) -> bool {
        if self.dims.is_empty() {
            return !(self.open_top || self.open_bottom);
        }
        (!self.open_top || n < self.hi()) && (!self.open_bottom || n > self.lo)
    }

    fn check_computable(&self, n: i64) -> Result<(), ComplexError> {
        if self.is_computable(n) {
            Ok(())
        } else {
            Err(ComplexError::Truncation {
                degree: n,
                lo: self.lo,
                hi: self.hi(),
            })
        }
    }

    /// `dim H_n`.
    pub fn homology(&self, n: i64) -> Result<usize, ComplexError> {
        self.check_computable(n)?;
        if self.dim(n) == 0 {
            return Ok(0);
        }
        let z = match self.diff_ref(n) {
            Some(d) => nullity(d),
            None => self.dim(n),
        };
        let b = self.diff_ref(n + 1).map_or(0, rank);
        Ok(z - b)
    }

    /// `dim H^p`.
    pub fn cohomology(&self, p: i64) -> Result<usize, ComplexError> {
        self.homology(-p)
    }

    /// Cycles, representatives and class coordinates in degree `n`.
    pub fn homology_data(&self, n: i64) -> Result<Homology, ComplexError> {
        self.check_computable(n)?;
        Ok(quotient_homology(&self.diff(n + 1), &self.diff(n))?)
    }

    /// Homology in every stored degree, computed in parallel.
    pub fn homology_dims(&self) -> GradedDims {
        if self.dims.is_empty() {
            return GradedDims {
                dims: BTreeMap::new(),
            };
        }
        let dims = (self.lo..=self.hi())
            .into_par_iter()
            .map(|n| (n, self.homology(n).ok()))
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        GradedDims { dims }
    }

    /// Cohomology dims `H^p` for `p = 0..=top`, keyed by `p`.
    pub fn cohomology_dims(&self, top: i64) -> GradedDims {
        let dims = (0..=top)
            .into_par_iter()
            .map(|p| (p, self.cohomology(p).ok()))
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        GradedDims { dims }
    }

    /// `C[k]_n = C_{n-k}` with differential `(-1)^k d`.
    pub fn shift(&self, k: i64) -> FinComplex {
        let diffs = if k.rem_euclid(2) == 0 {
            self.diffs.clone()
        } else {
            self.diffs.iter().map(Matrix::neg).collect()
        };
        FinComplex {
            lo: self.lo + k,
            dims: self.dims.clone(),
            diffs,
            ..*self
        }
    }

    /// `D_n = (C_{-n})^*` with transposed differentials.
    pub fn dualize(&self) -> FinComplex {
        if self.dims.is_empty() {
            return FinComplex::zero();
        }
        let mut dims = self.dims.clone();
        dims.reverse();
        let diffs = self.diffs.iter().rev().map(Matrix::transpose).collect();
        FinComplex {
            lo: -self.hi(),
            dims,
            diffs,
            open_top: self.open_bottom,
            open_bottom: self.open_top,
        }
    }

    pub fn direct_sum(&self, other: &FinComplex) -> FinComplex {
        if self.dims.is_empty() {
            return other.clone();
        }
        if other.dims.is_empty() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let dims = (lo..=hi).map(|n| self.dim(n) + other.dim(n)).collect();
        let diffs = (lo + 1..=hi)
            .map(|n| Matrix::block_diag(&[&self.diff(n), &other.diff(n)]))
            .collect();
        FinComplex {
            lo,
            dims,
            diffs,
            open_top: self.open_top || other.open_top,
            open_bottom: self.open_bottom || other.open_bottom,
        }
    }

    /// `sum (-1)^n dim C_n`, only meaningful when nothing is truncated.
    pub fn euler_characteristic(&self) -> i64 {
        (self.lo..=self.hi())
            .map(|n| sign(n) * self.dim(n) as i64)
            .sum()
    }
}

pub fn sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Degreewise maps `f_n: A_n -> B_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    pub maps: BTreeMap<i64, Matrix>,
}

impl ChainMap {
    pub fn map(&self, n: i64, a: &FinComplex, b: &FinComplex) -> Matrix {
        self.maps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(b.dim(n), a.dim(n)))
    }
}

/// Checks shapes and `d^B f = f d^A` in every degree where either side is nonzero.
pub fn check_chain_map(f: &ChainMap, a: &FinComplex, b: &FinComplex) -> Result<(), ComplexError> {
    for (n, m) in &f.maps {
        if m.shape() != (b.dim(*n), a.dim(*n)) {
            return Err(ComplexError::ShapeMismatch(format!("map in degree {n}")));
        }
    }
    let lo = a.lo().min(b.lo());
    let hi = a.hi().max(b.hi());
    for n in lo..=hi {
        if a.dim(n) == 0 && b.dim(n - 1) == 0 {
            continue;
        }
        let lhs = b.diff(n).mul(&f.map(n, a, b));
        let rhs = f.map(n - 1, a, b).mul(&a.diff(n));
        if lhs != rhs {
            return Err(ComplexError::NotChainMap { degree: n });
        }
    }
    Ok(())
}

/// Matrix of `H_n(f)` in the chosen homology bases.
pub fn induced_on_homology(
    f: &ChainMap,
    a: &FinComplex,
    b: &FinComplex,
    n: i64,
) -> Result<Matrix, ComplexError> {
    let ha = a.homology_data(n)?;
    let hb = b.homology_data(n)?;
    Ok(hb.class_of.mul(&f.map(n, a, b)).mul(&ha.representatives))
}

/// `rank H_n(f)` computed from ranks alone.
///
/// `rank H_n(f) = nullity(d^A_n) - nullity(G) + nullity(d^B_{n+1})` where
/// `G = [[d^A_n, 0], [f_n, -d^B_{n+1}]]`.
pub fn homology_map_rank(
    f: &ChainMap,
    a: &FinComplex,
    b: &FinComplex,
    n: i64,
) -> Result<usize, ComplexError> {
    a.check_computable(n)?;
    b.check_computable(n)?;
    let da = a.diff(n);
    let db = b.diff(n + 1);
    let fa = f.map(n, a, b);
    let g = Matrix::block2(&da, &Matrix::zeros(da.rows(), db.cols()), &fa, &db.neg());
    Ok(nullity(&da) + nullity(&db) - nullity(&g))
}

/// Degree bounds of one direction of a double complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Range {
    pub lo: i64,
    pub hi: i64,
    pub open_low: bool,
    pub open_high: bool,
}

impl Range {
    pub fn closed(lo: i64, hi: i64) -> Range {
        Range {
            lo,
            hi,
            open_low: false,
            open_high: false,
        }
    }

    fn len(&self) -> usize {
        (self.hi - self.lo + 1).max(0) as usize
    }
}

/// Spaces `C_{p,q}` with commuting `d_h: C_{p,q} -> C_{p-1,q}` and `d_v: C_{p,q} -> C_{p,q-1}`.
#[derive(Debug, Clone)]
pub struct DoubleComplex {
    p: Range,
    q: Range,
    dims: Vec<Vec<usize>>,
    dh: Vec<Vec<Matrix>>,
    dv: Vec<Vec<Matrix>>,
}

impl DoubleComplex {
    /// Builds from closures giving dimensions and the two face maps. `dh(p, q)`
    /// is only requested for `p > p.lo`, `dv(p, q)` for `q > q.lo`.
    pub fn new(
        p: Range,
        q: Range,
        dims: impl Fn(i64, i64) -> usize + Sync,
        dh: impl Fn(i64, i64) -> Matrix + Sync,
        dv: impl Fn(i64, i64) -> Matrix + Sync,
    ) -> Result<DoubleComplex, ComplexError> {
        let ps: Vec<i64> = (p.lo..=p.hi).collect();
        let qs: Vec<i64> = (q.lo..=q.hi).collect();
        let dim_table: Vec<Vec<usize>> = ps
            .iter()
            .map(|&a| qs.iter().map(|&b| dims(a, b)).collect())
            .collect();
        let at = |a: i64, b: i64| -> usize {
            if a < p.lo || a > p.hi || b < q.lo || b > q.hi {
                0
            } else {
                dim_table[(a - p.lo) as usize][(b - q.lo) as usize]
            }
        };
        let build = |horizontal: bool| -> Result<Vec<Vec<Matrix>>, ComplexError> {
            ps.par_iter()
                .map(|&a| {
                    qs.iter()
                        .map(|&b| {
                            let (ta, tb) = if horizontal { (a - 1, b) } else { (a, b - 1) };
                            let m = if (horizontal && a > p.lo) || (!horizontal && b > q.lo) {
                                if horizontal {
                                    dh(a, b)
                                } else {
                                    dv(a, b)
                                }
                            } else {
                                Matrix::zeros(0, at(a, b))
                            };
                            if m.shape() != (at(ta, tb), at(a, b)) {
                                return Err(ComplexError::ShapeMismatch(format!(
                                    "{} face at ({a},{b}) is {}x{}, expected {}x{}",
                                    if horizontal { "horizontal" } else { "vertical" },
                                    m.rows(),
                                    m.cols(),
                                    at(ta, tb),
                                    at(a, b)
                                )));
                            }
                            Ok(m)
                        })
                        .collect()
                })
                .collect()
        };
        let dc = DoubleComplex {
            p,
            q,
            dims: dim_table.clone(),
            dh: build(true)?,
            dv: build(false)?,
        };
        dc.check()?;
        Ok(dc)
    }

    fn check(&self) -> Result<(), ComplexError> {
        let cells: Vec<(i64, i64)> = (self.p.lo..=self.p.hi)
            .flat_map(|a| (self.q.lo..=self.q.hi).map(move |b| (a, b)))
            .collect();
        let bad = cells.par_iter().find_first(|&&(a, b)| {
            let hh = self.dh_at(a - 1, b).mul(&self.dh_at(a, b));
            let vv = self.dv_at(a, b - 1).mul(&self.dv_at(a, b));
            let hv = self.dh_at(a, b - 1).mul(&self.dv_at(a, b));
            let vh = self.dv_at(a - 1, b).mul(&self.dh_at(a, b));
            !hh.is_zero() || !vv.is_zero() || hv != vh
        });
        match bad {
            Some(&(a, b)) => Err(ComplexError::Sign { degree: a + b }),
            None => Ok(()),
        }
    }

    pub fn dim(&self, a: i64, b: i64) -> usize {
        if a < self.p.lo || a > self.p.hi || b < self.q.lo || b > self.q.hi {
            0
        } else {
            self.dims[(a - self.p.lo) as usize][(b - self.q.lo) as usize]
        }
    }

    fn inside(&self, a: i64, b: i64) -> bool {
        a >= self.p.lo && a <= self.p.hi && b >= self.q.lo && b <= self.q.hi
    }

    fn dh_at(&self, a: i64, b: i64) -> Matrix {
        if self.inside(a, b) && a > self.p.lo {
            self.dh[(a - self.p.lo) as usize][(b - self.q.lo) as usize].clone()
        } else {
            Matrix::zeros(self.dim(a - 1, b), self.dim(a, b))
        }
    }

    fn dv_at(&self, a: i64, b: i64) -> Matrix {
        if self.inside(a, b) && b > self.q.lo {
            self.dv[(a - self.p.lo) as usize][(b - self.q.lo) as usize].clone()
        } else {
            Matrix::zeros(self.dim(a, b - 1), self.dim(a, b))
        }
    }

    /// Whether every cell of total degree `n` outside the stored rectangle is truly zero.
    fn complete(&self, n: i64) -> bool {
        let (p, q) = (self.p, self.q);
        let needs_q_above = n - p.lo > q.hi;
        let needs_q_below = n - p.hi < q.lo;
        let needs_p_above = n - q.lo > p.hi;
        let needs_p_below = n - q.hi < p.lo;
        !(needs_q_above && q.open_high
            || needs_q_below && q.open_low
            || needs_p_above && p.open_high
            || needs_p_below && p.open_low)
    }

    /// Offsets of the cells `(p, n - p)` inside total degree `n`.
    fn pieces(&self, n: i64) -> Vec<(i64, usize)> {
        let mut off = 0;
        let mut out = Vec::new();
        for a in self.p.lo..=self.p.hi {
            let b = n - a;
            if b >= self.q.lo && b <= self.q.hi {
                out.push((a, off));
                off += self.dim(a, b);
            }
        }
        out
    }

    fn total_degrees(&self) -> Vec<i64> {
        if self.p.len() == 0 || self.q.len() == 0 {
            return vec![];
        }
        (self.p.lo + self.q.lo..=self.p.hi + self.q.hi)
            .filter(|&n| self.complete(n))
            .collect()
    }

    /// Chain map between totals induced by cellwise maps `cell(p, q)` that
    /// commute with both faces.
    pub fn total_map(
        &self,
        target: &DoubleComplex,
        cell: impl Fn(i64, i64) -> Matrix + Sync,
    ) -> ChainMap {
        let tgt_degrees = target.total_degrees();
        let maps = self
            .total_degrees()
            .into_par_iter()
            .filter(|n| tgt_degrees.contains(n))
            .map(|n| {
                let src = self.pieces(n);
                let tgt: BTreeMap<i64, usize> = target.pieces(n).into_iter().collect();
                let rows = target
                    .pieces(n)
                    .iter()
                    .map(|&(a, _)| target.dim(a, n - a))
                    .sum();
                let cols = src.iter().map(|&(a, _)| self.dim(a, n - a)).sum();
                let mut trips = Vec::new();
                for (a, col_off) in src {
                    if let Some(&row_off) = tgt.get(&a) {
                        for (i, j, v) in cell(a, n - a).entries() {
                            trips.push((row_off + i, col_off + j, v.clone()));
                        }
                    }
                }
                (n, Matrix::from_triplets(rows, cols, trips))
            })
            .collect::<Vec<_>>();
        ChainMap {
            maps: maps.into_iter().collect(),
        }
    }

    /// Total complex with `d = d_h + (-1)^p d_v`, over the degrees where it is complete.
    pub fn total(&self) -> Result<FinComplex, ComplexError> {
        if self.p.len() == 0 || self.q.len() == 0 {
            return Ok(FinComplex::zero());
        }
        let full_lo = self.p.lo + self.q.lo;
        let full_hi = self.p.hi + self.q.hi;
        let degrees = self.total_degrees();
        let (Some(&lo), Some(&hi)) = (degrees.first(), degrees.last()) else {
            return Ok(FinComplex::zero());
        };
        let pieces = |n: i64| self.pieces(n);
        let total_dim =
            |n: i64| -> usize { pieces(n).iter().map(|&(a, _)| self.dim(a, n - a)).sum() };
        let dims: Vec<usize> = (lo..=hi).map(total_dim).collect();
        let diffs: Vec<Matrix> = (lo + 1..=hi)
            .into_par_iter()
            .map(|n| {
                let src = pieces(n);
                let tgt: BTreeMap<i64, usize> = pieces(n - 1).into_iter().collect();
                let mut trips = Vec::new();
                for (a, col_off) in src {
                    let b = n - a;
                    if let Some(&row_off) = tgt.get(&(a - 1)) {
                        for (i, j, v) in self.dh_at(a, b).entries() {
                            trips.push((row_off + i, col_off + j, v.clone()));
                        }
                    }
                    if let Some(&row_off) = tgt.get(&a) {
                        let s = sign(a);
                        for (i, j, v) in self.dv_at(a, b).entries() {
                            let v = if s < 0 { -v } else { v.clone() };
                            trips.push((row_off + i, col_off + j, v));
                        }
                    }
                }
                Matrix::from_triplets(total_dim(n - 1), total_dim(n), trips)
            })
            .collect();
        let open_top = hi < full_hi || self.p.open_high || self.q.open_high;
        let open_bottom = lo > full_lo || self.p.open_low || self.q.open_low;
        Ok(FinComplex::new(lo, dims, diffs)?.with_truncation(open_top, open_bottom))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Q;

    #[test]
    fn zero_differentials_give_chain_dims() {
        let c = FinComplex::new(
            0,
            vec![1, 2, 4],
            vec![Matrix::zeros(1, 2), Matrix::zeros(2, 4)],
        )
        .unwrap();
        assert_eq!(c.homology_dims().series(2), Some(vec![1, 2, 4]));
    }

    #[test]
    fn identity_differential_is_acyclic() {
        let c = FinComplex::new(0, vec![1, 1], vec![Matrix::identity(1)]).unwrap();
        assert_eq!(c.homology_dims().series(1), Some(vec![0, 0]));
    }

    #[test]
    fn truncation_is_reported() {
        let c = FinComplex::new(
            0,
            vec![1, 1, 1],
            vec![Matrix::zeros(1, 1), Matrix::zeros(1, 1)],
        )
        .unwrap()
        .with_truncation(true, false);
        assert_eq!(c.homology(1), Ok(1));
        assert!(matches!(
            c.homology(2),
            Err(ComplexError::Truncation { .. })
        ));
        let cc = FinComplex::cochain(
            vec![1, 1, 1],
            vec![Matrix::zeros(1, 1), Matrix::zeros(1, 1)],
        )
        .unwrap()
        .with_truncation(false, true);
        assert_eq!(cc.cohomology(1), Ok(1));
        assert!(cc.cohomology(2).is_err());
    }

    #[test]
    fn nonzero_square_is_rejected() {
        let err = FinComplex::new(
            0,
            vec![1, 1, 1],
            vec![Matrix::identity(1), Matrix::identity(1)],
        )
        .unwrap_err();
        assert_eq!(err, ComplexError::Sign { degree: 2 });
    }

    #[test]
    fn shift_and_dualize() {
        let d = Matrix::from_int_rows(&[&[1, 1]]);
        let c = FinComplex::new(0, vec![1, 2], vec![d]).unwrap();
        assert_eq!(c.shift(0), c);
        assert_eq!(c.dualize().dualize(), c);
        assert_eq!(c.dualize().euler_characteristic(), c.euler_characteristic());
        let s = c.shift(1);
        assert_eq!(s.lo(), 1);
        assert_eq!(s.homology(2), c.homology(1));
    }

    #[test]
    fn one_column_and_one_row_totalize_to_themselves() {
        let d = Matrix::from_int_rows(&[&[1, -1]]);
        let col = DoubleComplex::new(
            Range::closed(0, 0),
            Range::closed(0, 1),
            |_, b| if b == 0 { 1 } else { 2 },
            |_, _| unreachable!(),
            |_, _| d.clone(),
        )
        .unwrap();
        let t = col.total().unwrap();
        assert_eq!(t.diff(1), d);
        let row = DoubleComplex::new(
            Range::closed(0, 1),
            Range::closed(0, 0),
            |a, _| if a == 0 { 1 } else { 2 },
            |_, _| d.clone(),
            |_, _| unreachable!(),
        )
        .unwrap();
        assert_eq!(row.total().unwrap().diff(1), d);
    }

    #[test]
    fn identity_square_is_acyclic() {
        let sq = DoubleComplex::new(
            Range::closed(0, 1),
            Range::closed(0, 1),
            |_, _| 1,
            |_, _| Matrix::identity(1),
            |_, _| Matrix::identity(1),
        )
        .unwrap();
        let t = sq.total().unwrap();
        assert_eq!(t.homology_dims().series(2), Some(vec![0, 0, 0]));
    }

    #[test]
    fn chain_maps_and_induced_ranks() {
        let c = FinComplex::new(0, vec![1, 1], vec![Matrix::zeros(1, 1)]).unwrap();
        let mut maps = BTreeMap::new();
        maps.insert(0, Matrix::scalar(1, &Q::from_int(2)));
        maps.insert(1, Matrix::zeros(1, 1));
        let f = ChainMap { maps };
        check_chain_map(&f, &c, &c).unwrap();
        assert_eq!(homology_map_rank(&f, &c, &c, 0), Ok(1));
        assert_eq!(homology_map_rank(&f, &c, &c, 1), Ok(0));
        assert_eq!(
            induced_on_homology(&f, &c, &c, 0).unwrap(),
            Matrix::scalar(1, &Q::from_int(2))
        );
    }
}
