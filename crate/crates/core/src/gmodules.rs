//! Modules over a Leibniz algebra `g` and over its Lie quotient `g_Lie`.
//!
//! A g-module is stored as the matrices `L_i: m -> b_i m` and `R_i: m -> m b_i`
//! acting on column vectors. A right `g_Lie`-module stores one matrix per basis
//! element of `g_Lie`. Tensor products use row-major bases (left factor most
//! significant) and `hom(A, B)` is identified with `B (x) A^*`.

use std::fmt;
use std::sync::Arc;

use crate::algebras::LeibnizAlgebra;
use crate::exactla::{kernel_basis, rank, solve, Matrix, Quotient, Subspace, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `m(xy) = (mx)y - (my)x`
    Mll,
    /// `x(my) = (xm)y - (xy)m`
    Lml,
    /// `x(ym) = (xy)m - (xm)y`
    Llm,
    /// `m[x,y] = (mx)y - (my)x` for right Lie modules
    LieRight,
    /// `[x,y]m = x(ym) - y(xm)` for left Lie modules
    LieLeft,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Relation::Mll => "MLL",
            Relation::Lml => "LML",
            Relation::Llm => "LLM",
            Relation::LieRight => "right Lie action",
            Relation::LieLeft => "left Lie action",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error("malformed module data: {0}")]
    Shape(String),
    #[error("relation {relation} fails for x = b{x}, y = b{y} on basis vector m{basis}")]
    Violation {
        relation: Relation,
        x: usize,
        y: usize,
        basis: usize,
    },
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("internal error: {0}")]
    Internal(String),
}

/// Anything given by a list of operators on a finite-dimensional space.
pub trait Representation {
    fn algebra(&self) -> &Arc<LeibnizAlgebra>;
    fn dim(&self) -> usize;
    fn operators(&self) -> Vec<&Matrix>;
}

fn first_difference(a: &Matrix, b: &Matrix) -> Option<usize> {
    let d = a.sub(b);
    (0..d.cols()).find(|&j| (0..d.rows()).any(|i| !d.get(i, j).is_zero()))
}

fn combination(coeffs: &[Q], mats: &[Matrix], dim: usize) -> Matrix {
    let mut out = Matrix::zeros(dim, dim);
    for (c, m) in coeffs.iter().zip(mats) {
        if !c.is_zero() {
            out = out.add(&m.scale(c));
        }
    }
    out
}

fn check_shapes(mats: &[Matrix], count: usize, dim: usize, what: &str) -> Result<(), ModuleError> {
    if mats.len() != count {
        return Err(ModuleError::Shape(format!(
            "{} {what} matrices, expected {count}",
            mats.len()
        )));
    }
    if let Some(m) = mats.iter().find(|m| m.shape() != (dim, dim)) {
        return Err(ModuleError::Shape(format!(
            "{what} matrix is {}x{}, expected {dim}x{dim}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// A module over a Leibniz algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeibModule {
    g: Arc<LeibnizAlgebra>,
    dim: usize,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

/// Validates left and right action matrices against (MLL), (LML), (LLM).
pub fn check_axioms(
    g: &Arc<LeibnizAlgebra>,
    dim: usize,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
) -> Result<LeibModule, ModuleError> {
    let n = g.dim();
    check_shapes(&left, n, dim, "left")?;
    check_shapes(&right, n, dim, "right")?;
    for x in 0..n {
        for y in 0..n {
            let xy = g.product(x, y);
            let r_xy = combination(xy, &right, dim);
            let l_xy = combination(xy, &left, dim);
            let (lx, ly, rx, ry) = (&left[x], &left[y], &right[x], &right[y]);
            let checks = [
                (Relation::Mll, r_xy, ry.mul(rx).sub(&rx.mul(ry))),
                (Relation::Lml, lx.mul(ry), ry.mul(lx).sub(&l_xy)),
                (Relation::Llm, lx.mul(ly), l_xy.sub(&ry.mul(lx))),
            ];
            for (relation, a, b) in checks {
                if let Some(basis) = first_difference(&a, &b) {
                    return Err(ModuleError::Violation {
                        relation,
                        x,
                        y,
                        basis,
                    });
                }
            }
        }
    }
    Ok(LeibModule {
        g: g.clone(),
        dim,
        left,
        right,
    })
}

impl LeibModule {
    pub(crate) fn new_unchecked(
        g: Arc<LeibnizAlgebra>,
        dim: usize,
        left: Vec<Matrix>,
        right: Vec<Matrix>,
    ) -> LeibModule {
        debug_assert!(check_axioms(&g, dim, left.clone(), right.clone()).is_ok());
        LeibModule {
            g,
            dim,
            left,
            right,
        }
    }

    pub fn trivial(g: &Arc<LeibnizAlgebra>) -> LeibModule {
        LeibModule::zero_actions(g, 1)
    }

    pub fn zero(g: &Arc<LeibnizAlgebra>) -> LeibModule {
        LeibModule::zero_actions(g, 0)
    }

    fn zero_actions(g: &Arc<LeibnizAlgebra>, dim: usize) -> LeibModule {
        let z = vec![Matrix::zeros(dim, dim); g.dim()];
        LeibModule {
            g: g.clone(),
            dim,
            left: z.clone(),
            right: z,
        }
    }

    /// `g` acting on itself by left and right multiplication.
    pub fn adjoint(g: &Arc<LeibnizAlgebra>) -> LeibModule {
        let n = g.dim();
        let left = (0..n).map(|i| g.left_mult(i)).collect();
        let right = (0..n).map(|i| g.right_mult(i)).collect();
        LeibModule {
            g: g.clone(),
            dim: n,
            left,
            right,
        }
    }

    pub fn left(&self) -> &[Matrix] {
        &self.left
    }

    pub fn right(&self) -> &[Matrix] {
        &self.right
    }

    pub fn is_symmetric(&self) -> bool {
        self.left
            .iter()
            .zip(&self.right)
            .all(|(l, r)| l.add(r).is_zero())
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.left.iter().all(Matrix::is_zero)
    }

    pub fn direct_sum(&self, other: &LeibModule) -> LeibModule {
        let bd = |a: &[Matrix], b: &[Matrix]| -> Vec<Matrix> {
            a.iter()
                .zip(b)
                .map(|(x, y)| Matrix::block_diag(&[x, y]))
                .collect()
        };
        LeibModule {
            g: self.g.clone(),
            dim: self.dim + other.dim,
            left: bd(&self.left, &other.left),
            right: bd(&self.right, &other.right),
        }
    }

    /// The same module in the basis given by the columns of the invertible `p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<LeibModule, ModuleError> {
        let inv =
            invert(p).ok_or_else(|| ModuleError::Shape("change of basis is singular".into()))?;
        let conj = |v: &[Matrix]| -> Vec<Matrix> { v.iter().map(|a| inv.mul(a).mul(p)).collect() };
        Ok(LeibModule {
            g: self.g.clone(),
            dim: self.dim,
            left: conj(&self.left),
            right: conj(&self.right),
        })
    }

    /// The submodule on an invariant subspace.
    pub fn submodule(&self, s: &Subspace) -> Result<LeibModule, ModuleError> {
        let res = |v: &[Matrix]| -> Result<Vec<Matrix>, ModuleError> {
            v.iter()
                .map(|a| {
                    s.restrict(a)
                        .map_err(|_| ModuleError::Internal("subspace is not invariant".into()))
                })
                .collect()
        };
        Ok(LeibModule {
            g: self.g.clone(),
            dim: s.dim(),
            left: res(&self.left)?,
            right: res(&self.right)?,
        })
    }

    pub fn flat(&self) -> LeftULModule {
        flat_kurdiani(self)
    }
}

impl Representation for LeibModule {
    fn algebra(&self) -> &Arc<LeibnizAlgebra> {
        &self.g
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn operators(&self) -> Vec<&Matrix> {
        self.left.iter().chain(&self.right).collect()
    }
}

/// Inverse of a square matrix, if it exists.
pub fn invert(p: &Matrix) -> Option<Matrix> {
    if p.rows() != p.cols() {
        return None;
    }
    crate::exactla::solve_many(p, &Matrix::identity(p.rows()))
        .ok()
        .filter(|_| rank(p) == p.rows())
}

/// A right module over `g_Lie`, one matrix per basis element of `g_Lie`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieRightModule {
    g: Arc<LeibnizAlgebra>,
    dim: usize,
    right: Vec<Matrix>,
}

fn check_lie_actions(
    g: &LeibnizAlgebra,
    dim: usize,
    acts: &[Matrix],
    relation: Relation,
) -> Result<(), ModuleError> {
    let lie = &g.lie().target;
    let n = lie.dim();
    check_shapes(acts, n, dim, "g_Lie action")?;
    for x in 0..n {
        for y in 0..n {
            let a = combination(lie.bracket(x, y), acts, dim);
            let b = match relation {
                Relation::LieRight => acts[y].mul(&acts[x]).sub(&acts[x].mul(&acts[y])),
                _ => acts[x].mul(&acts[y]).sub(&acts[y].mul(&acts[x])),
            };
            if let Some(basis) = first_difference(&a, &b) {
                return Err(ModuleError::Violation {
                    relation,
                    x,
                    y,
                    basis,
                });
            }
        }
    }
    Ok(())
}

impl LieRightModule {
    pub fn new(
        g: &Arc<LeibnizAlgebra>,
        dim: usize,
        right: Vec<Matrix>,
    ) -> Result<LieRightModule, ModuleError> {
        check_lie_actions(g, dim, &right, Relation::LieRight)?;
        Ok(LieRightModule {
            g: g.clone(),
            dim,
            right,
        })
    }

    /// Builds from one matrix per basis element of `g`; the actions must factor through `g_Lie`.
    pub fn from_g_actions(
        g: &Arc<LeibnizAlgebra>,
        dim: usize,
        actions: Vec<Matrix>,
    ) -> Result<LieRightModule, ModuleError> {
        check_shapes(&actions, g.dim(), dim, "g action")?;
        let lq = g.lie();
        let right = (0..lq.dim())
            .map(|a| combination(&lq.section.column(a), &actions, dim))
            .collect();
        let n = LieRightModule::new(g, dim, right)?;
        for (i, a) in actions.iter().enumerate() {
            if n.action_of_g(i) != *a {
                return Err(ModuleError::Shape(format!(
                    "action of b{i} does not factor through g_Lie"
                )));
            }
        }
        Ok(n)
    }

    pub fn trivial(g: &Arc<LeibnizAlgebra>) -> LieRightModule {
        LieRightModule {
            g: g.clone(),
            dim: 1,
            right: vec![Matrix::zeros(1, 1); g.lie().dim()],
        }
    }

    pub fn zero(g: &Arc<LeibnizAlgebra>) -> LieRightModule {
        LieRightModule {
            g: g.clone(),
            dim: 0,
            right: vec![Matrix::zeros(0, 0); g.lie().dim()],
        }
    }

    /// `g` as a right `g_Lie`-module, `x . ybar = xy`.
    pub fn gdown(g: &Arc<LeibnizAlgebra>) -> LieRightModule {
        restrict_down(&LeibModule::adjoint(g))
    }

    /// `g_Lie` acting on itself by the right adjoint action.
    pub fn glie_adjoint(g: &Arc<LeibnizAlgebra>) -> LieRightModule {
        let lie = &g.lie().target;
        let right = (0..lie.dim()).map(|i| lie.right_ad(i)).collect();
        LieRightModule {
            g: g.clone(),
            dim: lie.dim(),
            right,
        }
    }

    pub fn right(&self) -> &[Matrix] {
        &self.right
    }

    /// Action of the image of basis vector `b_i` of `g`.
    pub fn action_of_g(&self, i: usize) -> Matrix {
        combination(&self.g.lie().projection.column(i), &self.right, self.dim)
    }

    pub fn dual(&self) -> LieRightModule {
        let right = self.right.iter().map(|r| r.transpose().neg()).collect();
        LieRightModule {
            g: self.g.clone(),
            dim: self.dim,
            right,
        }
    }

    pub fn direct_sum(&self, other: &LieRightModule) -> LieRightModule {
        let right = self
            .right
            .iter()
            .zip(&other.right)
            .map(|(a, b)| Matrix::block_diag(&[a, b]))
            .collect();
        LieRightModule {
            g: self.g.clone(),
            dim: self.dim + other.dim,
            right,
        }
    }

    pub fn change_basis(&self, p: &Matrix) -> Result<LieRightModule, ModuleError> {
        let inv =
            invert(p).ok_or_else(|| ModuleError::Shape("change of basis is singular".into()))?;
        let right = self.right.iter().map(|a| inv.mul(a).mul(p)).collect();
        Ok(LieRightModule {
            g: self.g.clone(),
            dim: self.dim,
            right,
        })
    }

    pub fn submodule(&self, s: &Subspace) -> Result<LieRightModule, ModuleError> {
        let right = self
            .right
            .iter()
            .map(|a| {
                s.restrict(a)
                    .map_err(|_| ModuleError::Internal("subspace is not invariant".into()))
            })
            .collect::<Result<_, _>>()?;
        Ok(LieRightModule {
            g: self.g.clone(),
            dim: s.dim(),
            right,
        })
    }

    /// Quotient by an invariant subspace, using the chosen section.
    pub fn quotient(&self, q: &Quotient) -> LieRightModule {
        let right = self.right.iter().map(|a| q.induced(a)).collect();
        LieRightModule {
            g: self.g.clone(),
            dim: q.dim(),
            right,
        }
    }

    /// Left module via `x . n = -(n . x)`.
    pub fn to_left(&self) -> LieLeftModule {
        LieLeftModule {
            g: self.g.clone(),
            dim: self.dim,
            left: self.right.iter().map(Matrix::neg).collect(),
        }
    }

    pub fn to_symmetric(&self) -> LeibModule {
        to_symmetric(self)
    }

    pub fn to_antisymmetric(&self) -> LeibModule {
        to_antisymmetric(self)
    }
}

impl Representation for LieRightModule {
    fn algebra(&self) -> &Arc<LeibnizAlgebra> {
        &self.g
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn operators(&self) -> Vec<&Matrix> {
        self.right.iter().collect()
    }
}

/// A left module over `g_Lie`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieLeftModule {
    g: Arc<LeibnizAlgebra>,
    dim: usize,
    left: Vec<Matrix>,
}

impl LieLeftModule {
    pub fn new(
        g: &Arc<LeibnizAlgebra>,
        dim: usize,
        left: Vec<Matrix>,
    ) -> Result<LieLeftModule, ModuleError> {
        check_lie_actions(g, dim, &left, Relation::LieLeft)?;
        Ok(LieLeftModule {
            g: g.clone(),
            dim,
            left,
        })
    }

    pub fn trivial(g: &Arc<LeibnizAlgebra>) -> LieLeftModule {
        LieRightModule::trivial(g).to_left()
    }

    pub fn left(&self) -> &[Matrix] {
        &self.left
    }

    /// Right module via `n . x = -(x . n)`.
    pub fn to_right(&self) -> LieRightModule {
        LieRightModule {
            g: self.g.clone(),
            dim: self.dim,
            right: self.left.iter().map(Matrix::neg).collect(),
        }
    }
}

impl Representation for LieLeftModule {
    fn algebra(&self) -> &Arc<LeibnizAlgebra> {
        &self.g
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn operators(&self) -> Vec<&Matrix> {
        self.left.iter().collect()
    }
}

/// A linear map between modules, stored as its matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    pub matrix: Matrix,
}

/// Whether `f: A -> B` commutes with corresponding operators.
pub fn is_module_map<R: Representation>(f: &Matrix, a: &R, b: &R) -> bool {
    f.shape() == (b.dim(), a.dim())
        && a.operators()
            .iter()
            .zip(b.operators())
            .all(|(ta, tb)| tb.mul(f) == f.mul(ta))
}

/// Basis of the space of module maps `A -> B`.
pub fn hom_space<R: Representation>(a: &R, b: &R) -> Vec<ModuleMap> {
    let (da, db) = (a.dim(), b.dim());
    let (ia, ib) = (Matrix::identity(da), Matrix::identity(db));
    let blocks: Vec<Matrix> = a
        .operators()
        .iter()
        .zip(b.operators())
        .map(|(ta, tb)| tb.kron(&ia).sub(&ib.kron(&ta.transpose())))
        .collect();
    let refs: Vec<&Matrix> = blocks.iter().collect();
    let system = if refs.is_empty() {
        Matrix::zeros(0, da * db)
    } else {
        Matrix::vstack(&refs)
    };
    kernel_basis(&system)
        .vectors()
        .into_iter()
        .map(|v| ModuleMap {
            matrix: Matrix::from_dense(db, da, &v),
        })
        .collect()
}

/// `M^↓`: the right action pushed through the section of `g -> g_Lie`.
pub fn restrict_down(m: &LeibModule) -> LieRightModule {
    let lq = m.g.lie();
    let right = (0..lq.dim())
        .map(|a| combination(&lq.section.column(a), &m.right, m.dim))
        .collect();
    LieRightModule {
        g: m.g.clone(),
        dim: m.dim,
        right,
    }
}

/// `N^s`: left action is minus the right action.
pub fn to_symmetric(n: &LieRightModule) -> LeibModule {
    let right: Vec<Matrix> = (0..n.g.dim()).map(|i| n.action_of_g(i)).collect();
    let left = right.iter().map(Matrix::neg).collect();
    LeibModule::new_unchecked(n.g.clone(), n.dim, left, right)
}

/// `N^a`: left action is zero.
pub fn to_antisymmetric(n: &LieRightModule) -> LeibModule {
    let right: Vec<Matrix> = (0..n.g.dim()).map(|i| n.action_of_g(i)).collect();
    let left = vec![Matrix::zeros(n.dim, n.dim); n.g.dim()];
    LeibModule::new_unchecked(n.g.clone(), n.dim, left, right)
}

/// Span of the columns of all `R_i + L_i`, i.e. of `mx + xm`.
pub fn symmetric_defect(m: &LeibModule) -> Subspace {
    let sums: Vec<Matrix> = m.left.iter().zip(&m.right).map(|(l, r)| l.add(r)).collect();
    span_of_images(m.dim, &sums)
}

/// Span of the columns of all `L_i`, i.e. of `xm`.
pub fn left_image(m: &LeibModule) -> Subspace {
    span_of_images(m.dim, &m.left)
}

fn span_of_images(dim: usize, mats: &[Matrix]) -> Subspace {
    let refs: Vec<&Matrix> = mats.iter().collect();
    if refs.is_empty() {
        return Subspace::zero(dim);
    }
    Subspace::span(&Matrix::hstack(&refs))
}

fn quotient_functor(
    m: &LeibModule,
    sub: &Subspace,
) -> Result<(LieRightModule, ModuleMap), ModuleError> {
    if !sub.is_invariant(&m.operators().into_iter().cloned().collect::<Vec<_>>()) {
        return Err(ModuleError::Internal(
            "defect subspace is not a submodule".into(),
        ));
    }
    let q = Quotient::by_span(sub.basis());
    let n = restrict_down(m).quotient(&q);
    Ok((
        n,
        ModuleMap {
            matrix: q.projection,
        },
    ))
}

fn invariants_functor(
    m: &LeibModule,
    stacked: &[Matrix],
) -> Result<(LieRightModule, ModuleMap), ModuleError> {
    let refs: Vec<&Matrix> = stacked.iter().collect();
    let sub = if refs.is_empty() {
        Subspace::full(m.dim)
    } else {
        kernel_basis(&Matrix::vstack(&refs))
    };
    let n = restrict_down(m).submodule(&sub)?;
    Ok((
        n,
        ModuleMap {
            matrix: sub.basis().clone(),
        },
    ))
}

/// `sym M = M / M_0` with the unit `M -> (sym M)^s`.
pub fn sym_functor(m: &LeibModule) -> Result<(LieRightModule, ModuleMap), ModuleError> {
    quotient_functor(m, &symmetric_defect(m))
}

/// `asym M = M / M_1` with the unit `M -> (asym M)^a`.
pub fn asym_functor(m: &LeibModule) -> Result<(LieRightModule, ModuleMap), ModuleError> {
    quotient_functor(m, &left_image(m))
}

/// `{m : mx + xm = 0}` with its inclusion.
pub fn sinv(m: &LeibModule) -> Result<(LieRightModule, ModuleMap), ModuleError> {
    let sums: Vec<Matrix> = m.left.iter().zip(&m.right).map(|(l, r)| l.add(r)).collect();
    invariants_functor(m, &sums)
}

/// `{m : xm = 0}` with its inclusion.
pub fn asinv(m: &LeibModule) -> Result<(LieRightModule, ModuleMap), ModuleError> {
    invariants_functor(m, &m.left)
}

/// Diagonal action `(a (x) b)x = ax (x) b + a (x) bx`.
pub fn tensor_diag(a: &LieRightModule, b: &LieRightModule) -> LieRightModule {
    let (ia, ib) = (Matrix::identity(a.dim), Matrix::identity(b.dim));
    let right = a
        .right
        .iter()
        .zip(&b.right)
        .map(|(ra, rb)| ra.kron(&ib).add(&ia.kron(rb)))
        .collect();
    LieRightModule {
        g: a.g.clone(),
        dim: a.dim * b.dim,
        right,
    }
}

/// `hom(A, B)` with `(fh)(n) = f(n)h - f(nh)`; the map `F` sits at index `b * dim A + a`.
pub fn hom_diag(a: &LieRightModule, b: &LieRightModule) -> LieRightModule {
    let (ia, ib) = (Matrix::identity(a.dim), Matrix::identity(b.dim));
    let right = a
        .right
        .iter()
        .zip(&b.right)
        .map(|(ra, rb)| rb.kron(&ia).sub(&ib.kron(&ra.transpose())))
        .collect();
    LieRightModule {
        g: a.g.clone(),
        dim: a.dim * b.dim,
        right,
    }
}

/// Evaluation `hom(N, X) (x) N -> X`.
pub fn evaluation(n: &LieRightModule, x: &LieRightModule) -> Matrix {
    let (dn, dx) = (n.dim, x.dim);
    Matrix::from_triplets(
        dx,
        dx * dn * dn,
        (0..dx).flat_map(|xi| (0..dn).map(move |ni| (xi, (xi * dn + ni) * dn + ni, Q::one()))),
    )
}

/// Unit `X -> hom(N, X (x) N)`, `x -> (n -> x (x) n)`.
pub fn coevaluation(n: &LieRightModule, x: &LieRightModule) -> Matrix {
    let (dn, dx) = (n.dim, x.dim);
    Matrix::from_triplets(
        dx * dn * dn,
        dx,
        (0..dx).flat_map(|xi| (0..dn).map(move |ni| ((xi * dn + ni) * dn + ni, xi, Q::one()))),
    )
}

/// `M^♯`: the dual space with `R' = -R^T` and `L' = (R + L)^T`.
pub fn dual_sharp(m: &LeibModule) -> LeibModule {
    let right = m.right.iter().map(|r| r.transpose().neg()).collect();
    let left = m
        .left
        .iter()
        .zip(&m.right)
        .map(|(l, r)| r.add(l).transpose())
        .collect();
    LeibModule::new_unchecked(m.g.clone(), m.dim, left, right)
}

/// A left `UL(g)`-module: operators for the generators `r_x` and `l_x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftULModule {
    pub dim: usize,
    pub r: Vec<Matrix>,
    pub l: Vec<Matrix>,
    g: Arc<LeibnizAlgebra>,
}

impl LeftULModule {
    /// Back to a g-module through the same involution.
    pub fn flat(&self) -> LeibModule {
        let right = self.r.iter().map(Matrix::neg).collect();
        let left = self.r.iter().zip(&self.l).map(|(r, l)| r.add(l)).collect();
        LeibModule::new_unchecked(self.g.clone(), self.dim, left, right)
    }
}

/// The Kurdiani flip: `r_x` acts by `-R_x`, `l_x` by `R_x + L_x`.
pub fn flat_kurdiani(m: &LeibModule) -> LeftULModule {
    LeftULModule {
        dim: m.dim,
        r: m.right.iter().map(Matrix::neg).collect(),
        l: m.right.iter().zip(&m.left).map(|(r, l)| r.add(l)).collect(),
        g: m.g.clone(),
    }
}

/// A short exact sequence `0 -> sub -> total -> quot -> 0` of g-modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionSES {
    pub sub: LeibModule,
    pub total: LeibModule,
    pub quot: LeibModule,
    pub incl: ModuleMap,
    pub proj: ModuleMap,
}

impl ExtensionSES {
    pub fn verify(&self) -> Result<(), ModuleError> {
        let bad = |s: &str| Err(ModuleError::Internal(format!("extension: {s}")));
        if self.total.dim != self.sub.dim + self.quot.dim {
            return bad("dimensions do not add up");
        }
        if rank(&self.incl.matrix) != self.sub.dim || rank(&self.proj.matrix) != self.quot.dim {
            return bad("inclusion not injective or projection not surjective");
        }
        if !self.proj.matrix.mul(&self.incl.matrix).is_zero() {
            return bad("projection after inclusion is nonzero");
        }
        if !is_module_map(&self.incl.matrix, &self.sub, &self.total)
            || !is_module_map(&self.proj.matrix, &self.total, &self.quot)
        {
            return bad("structure maps are not module maps");
        }
        Ok(())
    }

    /// `0 -> quot^♯ -> total^♯ -> sub^♯ -> 0`.
    pub fn dual(&self) -> ExtensionSES {
        ExtensionSES {
            sub: dual_sharp(&self.quot),
            total: dual_sharp(&self.total),
            quot: dual_sharp(&self.sub),
            incl: ModuleMap {
                matrix: self.proj.matrix.transpose(),
            },
            proj: ModuleMap {
                matrix: self.incl.matrix.transpose(),
            },
        }
    }
}

fn unit_insert(dn: usize, dg: usize, z: usize) -> Matrix {
    Matrix::from_triplets(dn * dg, dn, (0..dn).map(|n| (n * dg + z, n, Q::one())))
}

/// `0 -> (N (x) g^↓)^a -> lext(N) -> N^s -> 0` on `(N (x) g) (+) N`.
pub fn lext(n: &LieRightModule) -> ExtensionSES {
    let g = &n.g;
    let (dn, dg) = (n.dim, g.dim());
    let gd = LieRightModule::gdown(g);
    let sub = to_antisymmetric(&tensor_diag(n, &gd));
    let quot = to_symmetric(n);
    let zero_nn = Matrix::zeros(dn * dg, dn * dg);
    let zero_bottom = Matrix::zeros(dn, dn * dg);
    let mut left = Vec::with_capacity(dg);
    let mut right = Vec::with_capacity(dg);
    for y in 0..dg {
        right.push(Matrix::block_diag(&[&sub.right[y], &quot.right[y]]));
        left.push(Matrix::block2(
            &zero_nn,
            &unit_insert(dn, dg, y),
            &zero_bottom,
            &quot.left[y],
        ));
    }
    let total = LeibModule::new_unchecked(g.clone(), dn * dg + dn, left, right);
    let incl = Matrix::vstack(&[&Matrix::identity(dn * dg), &Matrix::zeros(dn, dn * dg)]);
    let proj = Matrix::hstack(&[&Matrix::zeros(dn, dn * dg), &Matrix::identity(dn)]);
    ExtensionSES {
        sub,
        total,
        quot,
        incl: ModuleMap { matrix: incl },
        proj: ModuleMap { matrix: proj },
    }
}

/// `0 -> N^a -> rext(N) -> hom(g^↓, N)^s -> 0` on `N (+) hom(g, N)`.
pub fn rext(n: &LieRightModule) -> ExtensionSES {
    let g = &n.g;
    let (dn, dg) = (n.dim, g.dim());
    let gd = LieRightModule::gdown(g);
    let sub = to_antisymmetric(n);
    let quot = to_symmetric(&hom_diag(&gd, n));
    let zero_nn = Matrix::zeros(dn, dn);
    let zero_bottom = Matrix::zeros(dn * dg, dn);
    let mut left = Vec::with_capacity(dg);
    let mut right = Vec::with_capacity(dg);
    for z in 0..dg {
        right.push(Matrix::block_diag(&[&sub.right[z], &quot.right[z]]));
        let ev = unit_insert(dn, dg, z).transpose();
        left.push(Matrix::block2(&zero_nn, &ev, &zero_bottom, &quot.left[z]));
    }
    let total = LeibModule::new_unchecked(g.clone(), dn + dn * dg, left, right);
    let incl = Matrix::vstack(&[&Matrix::identity(dn), &Matrix::zeros(dn * dg, dn)]);
    let proj = Matrix::hstack(&[&Matrix::zeros(dn * dg, dn), &Matrix::identity(dn * dg)]);
    ExtensionSES {
        sub,
        total,
        quot,
        incl: ModuleMap { matrix: incl },
        proj: ModuleMap { matrix: proj },
    }
}

/// `0 -> M_0 -> M -> (sym M)^s -> 0`.
pub fn devissage(m: &LeibModule) -> Result<ExtensionSES, ModuleError> {
    let m0 = symmetric_defect(m);
    let sub = m.submodule(&m0)?;
    let (sym, proj) = sym_functor(m)?;
    Ok(ExtensionSES {
        sub,
        total: m.clone(),
        quot: to_symmetric(&sym),
        incl: ModuleMap {
            matrix: m0.basis().clone(),
        },
        proj,
    })
}

/// Looks for a morphism of extensions `(alpha, beta, gamma): e1 -> e2`.
///
/// Fixed outer components may be supplied; the others are solved for along
/// with `beta`. Returns `(alpha, beta, gamma)`.
pub fn find_extension_morphism(
    e1: &ExtensionSES,
    e2: &ExtensionSES,
    alpha: Option<&Matrix>,
    gamma: Option<&Matrix>,
) -> Option<(Matrix, Matrix, Matrix)> {
    let (s1, t1, q1) = (e1.sub.dim, e1.total.dim, e1.quot.dim);
    let (s2, t2, q2) = (e2.sub.dim, e2.total.dim, e2.quot.dim);
    let (nb, na, nc) = (t2 * t1, s2 * s1, q2 * q1);
    let mut eqs: Vec<Matrix> = Vec::new();
    let mut rhs: Vec<Matrix> = Vec::new();
    let zeros = |r: usize, c: usize| Matrix::zeros(r, c);
    // vec(X F Y) = (X (x) Y^T) vec(F) for row-major vec.
    let left_mul = |x: &Matrix, cols: usize| x.kron(&Matrix::identity(cols));
    let right_mul = |y: &Matrix, rows: usize| Matrix::identity(rows).kron(&y.transpose());
    for (a, b) in e1.total.operators().iter().zip(e2.total.operators()) {
        let block = left_mul(b, t1).sub(&right_mul(a, t2));
        eqs.push(Matrix::hstack(&[&block, &zeros(nb, na + nc)]));
        rhs.push(zeros(nb, 1));
    }
    // beta incl1 = incl2 alpha
    let r = t2 * s1;
    let b_part = right_mul(&e1.incl.matrix, t2);
    let a_part = left_mul(&e2.incl.matrix, s1).neg();
    eqs.push(Matrix::hstack(&[&b_part, &a_part, &zeros(r, nc)]));
    rhs.push(zeros(r, 1));
    // proj2 beta = gamma proj1
    let r = q2 * t1;
    let b_part = left_mul(&e2.proj.matrix, t1);
    let c_part = right_mul(&e1.proj.matrix, q2).neg();
    eqs.push(Matrix::hstack(&[&b_part, &zeros(r, na), &c_part]));
    rhs.push(zeros(r, 1));
    let flatten = |m: &Matrix| -> Matrix {
        Matrix::from_triplets(
            m.rows() * m.cols(),
            1,
            m.entries()
                .map(|(i, j, v)| (i * m.cols() + j, 0, v.clone())),
        )
    };
    if let Some(al) = alpha {
        eqs.push(Matrix::hstack(&[
            &zeros(na, nb),
            &Matrix::identity(na),
            &zeros(na, nc),
        ]));
        rhs.push(flatten(al));
    }
    if let Some(ga) = gamma {
        eqs.push(Matrix::hstack(&[
            &zeros(nc, nb + na),
            &Matrix::identity(nc),
        ]));
        rhs.push(flatten(ga));
    }
    let eq_refs: Vec<&Matrix> = eqs.iter().collect();
    let rhs_refs: Vec<&Matrix> = rhs.iter().collect();
    let system = Matrix::vstack(&eq_refs);
    let b = Matrix::vstack(&rhs_refs).column(0);
    let x = solve(&system, &b).ok()?;
    let reshape = |off: usize, r: usize, c: usize| Matrix::from_dense(r, c, &x[off..off + r * c]);
    Some((
        reshape(nb, s2, s1),
        reshape(0, t2, t1),
        reshape(nb + na, q2, q1),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::check_leibniz;

    fn e_algebra() -> Arc<LeibnizAlgebra> {
        let mut c = vec![vec![vec![Q::zero(); 2]; 2]; 2];
        c[1][0][1] = Q::one();
        Arc::new(check_leibniz(vec!["e".into(), "f".into()], c).unwrap())
    }

    #[test]
    fn adjoint_and_trivial_are_modules() {
        let g = e_algebra();
        let adj = LeibModule::adjoint(&g);
        assert!(check_axioms(&g, 2, adj.left.clone(), adj.right.clone()).is_ok());
        let k = LeibModule::trivial(&g);
        assert!(check_axioms(&g, 1, k.left.clone(), k.right.clone()).is_ok());
    }

    #[test]
    fn swapped_adjoint_violates() {
        let g = e_algebra();
        let adj = LeibModule::adjoint(&g);
        let err = check_axioms(&g, 2, adj.right.clone(), adj.left.clone()).unwrap_err();
        assert!(matches!(err, ModuleError::Violation { .. }));
    }

    #[test]
    fn functors_on_adjoint_of_e() {
        let g = e_algebra();
        let adj = LeibModule::adjoint(&g);
        let (s, _) = sym_functor(&adj).unwrap();
        assert_eq!(s.dim(), 1);
        let (a, p) = asym_functor(&adj).unwrap();
        assert_eq!(a.dim(), 1);
        assert_eq!(
            kernel_basis(&p.matrix).vectors(),
            vec![vec![Q::zero(), Q::one()]]
        );
        let (ai, incl) = asinv(&adj).unwrap();
        assert_eq!(ai.dim(), 1);
        assert_eq!(incl.matrix.column(0), vec![Q::zero(), Q::one()]);
        let gd = restrict_down(&adj);
        assert_eq!(gd.right()[0], Matrix::from_int_rows(&[&[0, 0], &[0, 1]]));
    }

    #[test]
    fn lifts_restrict_back() {
        let g = e_algebra();
        let gd = LieRightModule::gdown(&g);
        assert_eq!(restrict_down(&to_symmetric(&gd)), gd);
        assert_eq!(restrict_down(&to_antisymmetric(&gd)), gd);
        assert_eq!(dual_sharp(&to_antisymmetric(&gd)), to_symmetric(&gd.dual()));
        assert_eq!(dual_sharp(&to_symmetric(&gd)), to_antisymmetric(&gd.dual()));
    }

    #[test]
    fn extensions_are_valid_and_dual() {
        let g = e_algebra();
        for n in [
            LieRightModule::trivial(&g),
            LieRightModule::gdown(&g),
            LieRightModule::zero(&g),
        ] {
            let l = lext(&n);
            l.verify().unwrap();
            let r = rext(&n);
            r.verify().unwrap();
            assert!(
                check_axioms(&g, l.total.dim, l.total.left.clone(), l.total.right.clone()).is_ok()
            );
            assert!(
                check_axioms(&g, r.total.dim, r.total.left.clone(), r.total.right.clone()).is_ok()
            );
            let (_, beta, _) = find_extension_morphism(
                &l.dual(),
                &rext(&n.dual()),
                Some(&Matrix::identity(l.quot.dim)),
                Some(&Matrix::identity(l.sub.dim)),
            )
            .unwrap();
            assert!(invert(&beta).is_some());
        }
    }

    #[test]
    fn evaluation_is_a_module_map() {
        let g = e_algebra();
        let n = LieRightModule::gdown(&g);
        let src = tensor_diag(&hom_diag(&n, &n), &n);
        assert!(is_module_map(&evaluation(&n, &n), &src, &n));
        let tgt = hom_diag(&n, &tensor_diag(&n, &n));
        assert!(is_module_map(&coevaluation(&n, &n), &n, &tgt));
    }

    #[test]
    fn extension_morphism_finds_identity() {
        let g = e_algebra();
        let l = lext(&LieRightModule::trivial(&g));
        let (a, b, c) = find_extension_morphism(&l, &l, Some(&Matrix::identity(2)), None).unwrap();
        assert_eq!(a, Matrix::identity(2));
        assert!(is_module_map(&b, &l.total, &l.total));
        assert_eq!(c.shape(), (1, 1));
    }
}
